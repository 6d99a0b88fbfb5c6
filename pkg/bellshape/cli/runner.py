# Command-line runner: argument parsing, dispatch through the command
# registry, output writing and exit codes. Structured errors go to stderr.

import argparse
import sys
from typing import Optional

from ..core.command_registry import get_command, list_commands
from ..core.config.cli_config import COLUMNS, EXIT_BAD_CONFIG, OUTPUT_FORMATS
from ..core.config.numerics_config import get_all_numeric_defaults
from ..core.errors import BellshapeError, ConfigError
from ..core.parallel import resolve_threads
from ..core.utils.console import print_config_item, print_header, print_section
from ..core.utils.responses import error_from_exception
from ..shape.params import parse_real
from . import commands  # noqa: F401  (registers the subcommands)
from .io import dumps, load_payload, open_output, write_csv, write_json
from .job import JobConfig


def _numbers(text: str) -> tuple:
    return tuple(parse_real(part, 'list value') for part in text.split(',') if part.strip())


def _strings(text: str) -> tuple:
    return tuple(part.strip() for part in text.split(',') if part.strip())


def _orders(text: str) -> tuple:
    return tuple(int(part) for part in text.split(',') if part.strip())


class _Parser(argparse.ArgumentParser):
    """Usage errors are configuration errors (exit 64), not argparse's exit 2"""

    def error(self, message):
        raise ConfigError(f'{self.prog}: {message}')


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog='bellshape', description='Bell-shaped functions: validation, factors and zeros.'
    )
    parser.add_argument('command', choices=list_commands())
    parser.add_argument('--input', '-i', help="payload JSON: a file path, '-' or inline JSON")
    parser.add_argument('--tol', type=float, help='numerical tolerance, in (0, 1e-2]')
    parser.add_argument(
        '--threads', type=resolve_threads, help="worker threads or 'max' (default: all cores)"
    )
    parser.add_argument('--out', '-o', help='output file (default: stdout)')
    parser.add_argument('--format', choices=OUTPUT_FORMATS, help='csv or json')
    parser.add_argument('--n-max', type=int, dest='n_max', help='highest derivative order')
    parser.add_argument('--k-max', type=int, dest='k_max', help='deepest crossing level')
    parser.add_argument('--xi', type=_numbers, help='comma separated xi values')
    parser.add_argument('--n', type=_orders, dest='orders', help='comma separated orders')
    parser.add_argument(
        '--p', type=_strings, dest='p_values', help="comma separated p values, e.g. '1/pi'"
    )
    parser.add_argument('--method', choices=('auto', 'direct', 'moment'), default='auto')
    parser.add_argument('--figure3', action='store_true', help='zeros: scaled zero table')
    parser.add_argument('--limit', action='store_true', help='zeros: convergence report')
    parser.add_argument('--verbose', '-v', action='store_true', help='print numeric settings')
    return parser


def job_from_args(args) -> JobConfig:
    options = {
        'tol': args.tol,
        'threads': args.threads,
        'out': args.out,
        'format': args.format,
        'n_max': args.n_max,
        'k_max': args.k_max,
        'xis': args.xi or (),
        'orders': args.orders or (),
        'p_values': args.p_values or (),
        'figure3': args.figure3,
        'limit': args.limit,
        'method': args.method,
    }
    # unset options fall back to the configured defaults
    options = {k: v for k, v in options.items() if v is not None}
    return JobConfig(command=args.command, payload=load_payload(args.input), **options)


def run(job: JobConfig) -> int:
    """Dispatch one job and write its output; returns the exit code"""
    handler = get_command(job.command)
    result = handler(job, job.payload)
    with open_output(job.out) as stream:
        if job.format == 'csv' and result.table:
            write_csv(stream, COLUMNS[result.table], result.rows)
        else:
            document = dict(result.document)
            if result.table:
                document['columns'] = COLUMNS[result.table]
                document['rows'] = [list(row) for row in result.rows]
            write_json(stream, document)
    return result.exit_code


def main(argv: Optional[list] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        job = job_from_args(args)
        if args.verbose:
            print_header(f'bellshape {job.command}')
            print_section('Numeric settings')
            for key, value in get_all_numeric_defaults().items():
                print_config_item(key, value)
        return run(job)
    except BellshapeError as exc:
        sys.stderr.write(dumps(error_from_exception(exc)))
        return exc.exit_code
    except (ValueError, TypeError) as exc:
        payload = error_from_exception(exc)
        payload['kind'] = 'config'
        payload['exit_code'] = EXIT_BAD_CONFIG
        sys.stderr.write(dumps(payload))
        return EXIT_BAD_CONFIG
