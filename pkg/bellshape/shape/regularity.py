# Regularity check: numerical evidence that Re Phi is integrable near 0 and
# that xi * Im Phi(xi) vanishes as xi -> 0.

import math
from dataclasses import dataclass, field
from typing import Optional

from ..core.config.numerics_config import (
    get_limit_probe_range,
    get_limit_threshold,
    get_regularity_cap,
    get_regularity_panels,
    get_regularity_stall,
    get_tolerance,
)
from ..core.utils.console import print_info
from .kernels import adaptive_quad
from .params import BellParams
from .transform import transform

# panel-to-panel ratio at or above which the dyadic contributions are not decaying
DIVERGENCE_RATIO = 0.95


@dataclass(frozen=True)
class RegularityVerdict:
    passed: bool
    reason: str = ''
    integral: Optional[float] = None
    limit_values: tuple = field(default_factory=tuple)
    evidence: str = 'numerical evidence'

    def to_dict(self):
        return {
            'passed': self.passed,
            'reason': self.reason,
            'integral': self.integral,
            'limit_values': [list(v) for v in self.limit_values],
            'evidence': self.evidence,
        }


def _re_integral(params: BellParams, tol: float):
    """(integral of Re Phi over [-1, 1] or None, failure reason)"""
    total = 0.0
    previous = None
    small_run = stall_run = 0
    stall = get_regularity_stall()
    for j in range(get_regularity_panels()):
        lo, hi = 2.0 ** (-j - 1), 2.0**-j
        piece = 2.0 * adaptive_quad(
            lambda xi: transform(params, xi, tol).real, lo, hi, tol, 'Re Phi panel'
        )
        total += piece
        if abs(total) > get_regularity_cap():
            return None, f'partial integral of Re Phi exceeded the cap after {j + 1} panels'
        if abs(piece) <= tol * max(1.0, abs(total)):
            small_run += 1
            if small_run >= stall:
                return total, ''
        else:
            small_run = 0
        if previous and abs(piece) >= DIVERGENCE_RATIO * abs(previous):
            stall_run += 1
            if stall_run >= stall:
                return None, 'dyadic panels of Re Phi near 0 stopped decaying'
        else:
            stall_run = 0
        previous = piece
    return total, ''


def check_regularity(params: BellParams, tol: Optional[float] = None) -> RegularityVerdict:
    """
    Evidence for both regularity conditions. The result is numerical evidence,
    not a proof.
    """
    tol = tol or get_tolerance()
    print_info('checking regularity near xi = 0')
    integral, reason = _re_integral(params, tol)
    if integral is None:
        return RegularityVerdict(False, reason)

    j_min, j_max = get_limit_probe_range()
    values = []
    for j in range(j_min, j_max + 1):
        xi = 2.0**-j
        values.append((xi, xi * transform(params, xi, tol).imag))
    first, last = abs(values[0][1]), abs(values[-1][1])
    if last > get_limit_threshold() or (last > tol and last > first):
        return RegularityVerdict(
            False,
            f'xi * Im Phi(xi) does not tend to 0 '
            f'(|value| = {last:.3g} at xi = {values[-1][0]:.3g})',
            integral,
            tuple(values),
        )
    if not math.isfinite(integral):
        return RegularityVerdict(False, 'integral of Re Phi is not finite', None, tuple(values))
    return RegularityVerdict(True, '', integral, tuple(values))
