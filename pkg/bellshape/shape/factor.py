# Canonical factorisation f = g * h: h a Polya frequency function carrying
# the integer staircase under phi, g an AM-CM function with phi_g in [0, 1].

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..core.config.numerics_config import (
    get_identity_tolerance,
    get_k_max,
    get_tolerance,
    get_xi_grid,
    get_xi_ref,
)
from ..core.errors import BellshapeRangeError, DomainError, NumericalError, UnsupportedError
from ..core.utils.console import print_info, print_warning
from ..factors.pff import PolyaFrequency, pff_log_transform
from .adapter import CallablePhi
from .levels import crossing_table
from .params import BellParams
from .phi import PhiFunction, Step
from .transform import log_transform, pin_drift


@dataclass(frozen=True)
class FactorPair:
    pff: PolyaFrequency
    amcm: BellParams
    b_correction: float
    c_correction: float
    residual: float
    flagged_levels: tuple = ()

    def to_dict(self):
        return {
            'pff': self.pff.to_dict(),
            'amcm': self.amcm.to_dict(),
            'b_correction': self.b_correction,
            'c_correction': self.c_correction,
            'residual': self.residual,
            'flagged_levels': list(self.flagged_levels),
        }


def staircase_steps(phi: PhiFunction, k_max: int) -> tuple:
    """Unit steps at the crossing points s_k, 1 <= |k| <= k_max, plus flagged levels"""
    if isinstance(phi, CallablePhi):
        raise UnsupportedError('factorisation needs a piecewise phi')
    _check_depth(phi, k_max)
    table = crossing_table(phi, k_max)
    steps = []
    for entry in table.finite_points():
        if entry.point == 0.0:
            raise DomainError(f'level {entry.level} is crossed at the origin')
        steps.append(Step(entry.point, 1.0))
    return tuple(steps), tuple(table.flagged_levels())


def split_phi(phi: PhiFunction, k_max: Optional[int] = None) -> tuple:
    """(phi_h, phi_g) with phi = phi_h + phi_g and phi_h an integer staircase"""
    steps, _ = staircase_steps(phi, k_max or get_k_max())
    phi_h = PhiFunction(knots=(0.0,), pieces=(), steps=steps)
    phi_g = phi.with_steps([Step(st.location, -st.height) for st in steps])
    return phi_h, phi_g


def factorise(
    params: BellParams, k_max: Optional[int] = None, tol: Optional[float] = None
) -> FactorPair:
    """
    Split Phi into an AM-CM factor and a PFF factor whose product reproduces
    Phi on the verification grid to within tol (default: the identity
    tolerance). Quadrature never runs looser than the numeric default. Drift
    between the two representations is pinned at xi_ref: a linear phase moved
    into the PFF's b, a constant into the AM-CM side's c.
    """
    k_max = k_max or get_k_max()
    tol = tol or get_identity_tolerance()
    quad_tol = min(tol, get_tolerance())
    steps, flagged = staircase_steps(params.phi, k_max)
    if flagged:
        print_warning(
            f'levels {list(flagged)} vanish on an interval; '
            'left ends used for k > 0, right ends for k < 0'
        )
    phi_g = params.phi.with_steps([Step(st.location, -st.height) for st in steps])
    atoms = tuple(1.0 / st.location for st in steps)

    pff = PolyaFrequency(params.a, 0.0, atoms)
    amcm = BellParams(0.0, params.b, params.c, phi_g)

    def residual(xi, pff=pff, amcm=amcm):
        return (
            log_transform(params, xi, quad_tol)
            - log_transform(amcm, xi, quad_tol)
            - pff_log_transform(pff, xi)
        )

    xi_ref = get_xi_ref()
    c_correction, b_correction = pin_drift(residual(xi_ref), xi_ref)
    pff = PolyaFrequency(params.a, b_correction, atoms)
    amcm = amcm.replace(c=params.c + c_correction)

    lo, hi, count = get_xi_grid()
    profile = []
    for xi in np.geomspace(lo, hi, count):
        r = residual(float(xi), pff, amcm)
        profile.append(abs(1.0 - cmath.exp(-r)))
    worst = float(max(profile))
    print_info(f'factor pair: {len(atoms)} atoms, worst relative residual {worst:.3g}')
    if worst > tol:
        raise NumericalError(
            'factor product does not reproduce the transform',
            residual=worst,
            tolerance=tol,
            profile=[float(v) for v in profile],
        )
    return FactorPair(pff, amcm, b_correction, c_correction, worst, flagged)


def _check_depth(phi: PhiFunction, k_max: int):
    """phi must stay within k_max + 1 of zero across the knot and step range"""
    bound = k_max + 1
    for seg in phi.segments:
        for end in (seg.left, seg.right):
            if math.isfinite(end) and abs(seg.limit(end)) > bound:
                raise BellshapeRangeError(
                    f"phi reaches {seg.limit(end):.6g} within its knot range; "
                    f"k_max = {k_max} is too small"
                )
