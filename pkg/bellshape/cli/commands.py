# Subcommand handlers - thin layer between the parsed job and the library.
# Each handler reads its payload, calls one library operation and returns a
# CommandResult: a JSON document, the CSV rows and the exit code to use.

import cmath
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..core.command_registry import register_command
from ..core.config.cli_config import EXIT_OK, EXIT_REJECT
from ..core.config.numerics_config import get_xi_grid
from ..core.errors import ConfigError
from ..core.utils.console import (
    print_info,
    print_separator,
    print_status_item,
    print_success,
    print_warning,
)
from ..core.utils.responses import success_response
from ..core.utils.validation import require_keys
from ..exact.derivatives import fp_scan, verdict_from_tables, zero_tables
from ..exact.families import CauchyProduct, Gaussian, PowerExpInverse, family_from_dict
from ..exact.zeromeasure import (
    cauchy_limit,
    compare_to_limit,
    figure3_data,
    gaussian_limit,
    levy_limit,
    limit_from_params,
    zero_measures,
)
from ..factors.amcm import AmCmFunction, amcm_eval, amcm_mass, amcm_transform
from ..factors.pff import PolyaFrequency, second_moment_sum
from ..factors.pff_density import pff_density_values
from ..post.approximant import post_table
from ..shape.factor import factorise
from ..shape.levels import crossing_table, is_ggc, validate_integrability, validate_level_crossing
from ..shape.params import BellParams, parse_real
from ..shape.regularity import check_regularity
from ..shape.transform import transform_grid
from ..whale.build import WhaleSpec, whale_build
from ..whale.certify import whale_certify


@dataclass(frozen=True)
class CommandResult:
    document: dict
    table: Optional[str] = None
    rows: list = field(default_factory=list)
    exit_code: int = EXIT_OK


# ----- payload helpers -----


def _params(payload: dict) -> BellParams:
    return BellParams.from_dict(payload.get('params', payload))


def _density(payload: dict):
    require_keys(payload, ['density'], 'payload')
    return family_from_dict(payload['density'])


def _floats(values, name: str) -> tuple:
    try:
        return tuple(parse_real(v, name) for v in values)
    except TypeError:
        raise ConfigError(f'{name} must be a list of numbers')


def _xis(job, payload: dict) -> tuple:
    if job.xis:
        return job.xis
    if 'xi' in payload:
        return _floats(payload['xi'], 'xi')
    lo, hi, count = get_xi_grid()
    return tuple(float(x) for x in np.geomspace(lo, hi, count))


# ----- shape -----


@register_command('validate')
def validate(job, payload):
    """Level crossing and tail integrability of phi; regularity when asked for"""
    params = _params(payload)
    crossing = validate_level_crossing(params.phi)
    integrability = validate_integrability(params.phi)
    document = {
        'level_crossing': crossing.to_dict(),
        'integrability': integrability.to_dict(),
        'ggc': is_ggc(params.phi),
    }
    print_status_item(crossing.accepted, 'level crossing')
    print_status_item(integrability.finite, 'tail integrability')
    if payload.get('regularity'):
        document['regularity'] = check_regularity(params, job.tol).to_dict()
        print_status_item(document['regularity']['passed'], 'regularity (numerical evidence)')
    print_separator()
    accepted = crossing.accepted and integrability.finite
    accepted = accepted and document.get('regularity', {}).get('passed', True)
    if accepted:
        print_success('phi passes level crossing')
        table = crossing_table(params.phi, min(job.k_max, 10))
        document['crossings'] = table.to_dict()
    else:
        print_warning(crossing.reason or 'rejected')
    return CommandResult(
        success_response({'verdict': 'accept' if accepted else 'reject', **document}),
        exit_code=EXIT_OK if accepted else EXIT_REJECT,
    )


@register_command('transform')
def transform(job, payload):
    params = _params(payload)
    xis = _xis(job, payload)
    logs = transform_grid(params, xis, job.tol, job.worker_threads)
    rows = []
    for xi, log_value in zip(xis, logs):
        value = cmath.exp(log_value)
        rows.append((xi, log_value.real, log_value.imag, value.real, value.imag))
    return CommandResult(success_response({'points': len(rows)}), 'transform', rows)


@register_command('factor')
def factor(job, payload):
    pair = factorise(_params(payload), job.k_max, job.tol)
    return CommandResult(success_response(pair.to_dict()))


# ----- factors -----


@register_command('pff')
def pff(job, payload):
    require_keys(payload, ['pff'], 'payload')
    h = PolyaFrequency.from_dict(payload['pff'])
    grid_spec = payload.get('grid', {})
    grid = np.linspace(
        parse_real(grid_spec.get('lo', -10.0), 'grid lo'),
        parse_real(grid_spec.get('hi', 10.0), 'grid hi'),
        int(grid_spec.get('count', 201)),
    )
    values = pff_density_values(h, grid, job.tol)
    rows = [(float(x), float(v)) for x, v in zip(grid, values)]
    document = {'pff': h.to_dict(), 'second_moment_sum': second_moment_sum(h)}
    return CommandResult(success_response(document), 'pff', rows)


@register_command('amcm')
def amcm(job, payload):
    require_keys(payload, ['amcm'], 'payload')
    g = AmCmFunction.from_dict(payload['amcm'])
    rows = [('value', x, amcm_eval(g, x), 0.0) for x in _floats(payload.get('points', []), 'x')]
    for xi in _xis(job, payload):
        value = amcm_transform(g, xi)
        rows.append(('transform', xi, value.real, value.imag))
    return CommandResult(success_response({'mass': amcm_mass(g)}), 'amcm', rows)


# ----- exact engines -----


def _default_limit(f, payload: dict, k_max: int):
    if 'limit_params' in payload:
        return limit_from_params(BellParams.from_dict(payload['limit_params']), k_max)
    if isinstance(f, Gaussian):
        return gaussian_limit(0.25)  # exp(-x^2) has transform sqrt(pi) exp(-xi^2 / 4)
    if isinstance(f, CauchyProduct) and f.scales == (1,):
        return cauchy_limit(k_max)
    if isinstance(f, PowerExpInverse) and f.p == PowerExpInverse.levy().p:
        return levy_limit(k_max)
    raise ConfigError('--limit needs limit_params for this density family')


@register_command('zeros')
def zeros(job, payload):
    """Certified zero tables; --figure3 scaled zeros; --limit convergence report"""
    f = _density(payload)
    n_max = job.n_max_or(10)
    if job.figure3:
        rows = figure3_data(f, n_max, job.worker_threads)
        print_info(f'{len(rows)} scaled zeros for n = 1..{n_max}')
        return CommandResult(success_response({'n_max': n_max}), 'figure3', rows)
    if job.limit:
        orders = job.orders or (10, 20, 40)
        measures = zero_measures(f, orders, job.worker_threads)
        limit = _default_limit(f, payload, job.k_max)
        report = compare_to_limit(measures, limit)
        document = {
            'report': report.to_dict(),
            'limit': limit.to_dict(),
            'masses': {str(m.n): m.total_mass for m in measures},
        }
        return CommandResult(success_response(document))
    tables = zero_tables(f, range(n_max + 1), job.worker_threads)
    rows = []
    for table in tables:
        for k, z in enumerate(table.zeros, start=1):
            rows.append((table.n, k, z.lower, z.upper, z.multiplicity))
    verdict = verdict_from_tables(tables)
    return CommandResult(success_response(verdict.to_dict()), 'zeros', rows)


@register_command('fp-scan')
def fp_scan_command(job, payload):
    f = _density(payload)
    p_values = job.p_values or tuple(payload.get('p', ()))
    if not p_values:
        raise ConfigError('fp-scan needs at least one p (--p or payload "p")')
    n_max = job.n_max_or(12)
    scan = fp_scan(f, p_values, n_max, job.worker_threads)
    rows = [
        (row.p, 'consistent' if row.verdict.consistent else 'violated', row.verdict.violating_n)
        for row in scan
    ]
    document = {'scan': [r.to_dict() for r in scan]}
    return CommandResult(success_response(document), 'fp_scan', rows)


@register_command('post')
def post(job, payload):
    f = _density(payload)
    orders = job.orders or tuple(int(n) for n in payload.get('n', (25, 50, 100, 200)))
    values = post_table(f, _xis(job, payload), orders, job.method, job.tol, job.worker_threads)
    return CommandResult(
        success_response({'count': len(values)}), 'post', [v.to_row() for v in values]
    )


@register_command('whale')
def whale(job, payload):
    require_keys(payload, ['whale'], 'payload')
    spec = WhaleSpec.from_dict(payload['whale'])
    f = whale_build(spec)
    m = int(payload.get('m', spec.order))
    verdict = whale_certify(f, m, job.n_max_or(10), job.worker_threads)
    document = {'density': f.to_dict(), **verdict.to_dict()}
    return CommandResult(
        success_response(document), 'whale', [row.to_row() for row in verdict.rows]
    )
