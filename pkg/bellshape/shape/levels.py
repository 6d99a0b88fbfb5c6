# Level-crossing validation, integrability and crossing tables for phi.
# Piecewise inputs are decided exactly from their monotone segments; the
# callable adapter answers the same questions from a sampling grid.

import math
from dataclasses import dataclass
from typing import Optional

from scipy.integrate import quad

from ..core.config.numerics_config import get_level_range, get_quad_limit
from ..core.errors import StructuralError
from .adapter import CallablePhi
from .phi import PhiFunction, sign_of


@dataclass(frozen=True)
class LevelCrossingVerdict:
    accepted: bool
    level: Optional[int] = None
    witness: Optional[tuple] = None
    reason: str = ''
    heuristic: bool = False

    def to_dict(self):
        return {
            'accepted': self.accepted,
            'level': self.level,
            'witness': list(self.witness) if self.witness else None,
            'reason': self.reason,
            'heuristic': self.heuristic,
        }


@dataclass(frozen=True)
class IntegrabilityVerdict:
    finite: bool
    value: float
    heuristic: bool = False

    def to_dict(self):
        return {'finite': self.finite, 'value': self.value, 'heuristic': self.heuristic}


@dataclass(frozen=True)
class Crossing:
    level: int
    point: float
    flagged: bool = False  # phi - level vanished on an interval

    def to_dict(self):
        return {'level': self.level, 'point': self.point, 'flagged': self.flagged}


@dataclass(frozen=True)
class CrossingTable:
    k_max: int
    entries: tuple

    def point(self, level: int) -> float:
        return self.entries[level + self.k_max].point

    def finite_points(self, sign: int = 0) -> list:
        """Finite nonzero crossings (sign > 0: positive levels only, < 0: negative)"""
        out = []
        for entry in self.entries:
            if entry.level == 0 or not math.isfinite(entry.point):
                continue
            if sign == 0 or sign_of(entry.level) == sign:
                out.append(entry)
        return out

    def flagged_levels(self) -> list:
        return [e.level for e in self.entries if e.flagged]

    def to_dict(self):
        return {'k_max': self.k_max, 'entries': [e.to_dict() for e in self.entries]}


# ----- sign runs -----


def level_runs(phi: PhiFunction, level: float, merge: bool = True) -> list:
    """(left, right, sign of phi - level) runs covering the line in order"""
    runs = []
    for seg in phi.segments:
        if seg.is_constant:
            runs.append((seg.left, seg.right, sign_of(seg.intercept - level)))
            continue
        root = seg.level_root(level)
        first, second = (-1, 1) if seg.direction > 0 else (1, -1)
        if root > seg.left:
            runs.append((seg.left, root, first))
        if root < seg.right:
            runs.append((root, seg.right, second))
    if not merge:
        return runs
    merged = []
    for run in runs:
        if merged and merged[-1][2] == run[2]:
            merged[-1] = (merged[-1][0], run[1], run[2])
        else:
            merged.append(run)
    return merged


def sign_changes(runs) -> list:
    """(location, new sign) of every strict sign change along the runs"""
    changes = []
    previous = 0
    for left, _, sign in runs:
        if sign == 0:
            continue
        if previous and sign != previous:
            changes.append((left, sign))
        previous = sign
    return changes


def crossing_from_runs(runs, level: int = 1) -> tuple:
    """
    (s_k, flagged) for one level; +inf when never reached, -inf when always above.
    When phi - k vanishes on an interval the left end is taken for k > 0 and
    the right end for k < 0, the point where phi leaves the level.
    """
    for index, (left, _, sign) in enumerate(runs):
        if sign > 0:
            if index > 0 and runs[index - 1][2] == 0:
                return (runs[index - 1][0] if level > 0 else left), True
            return left, False
    if runs and runs[-1][2] == 0:
        return runs[-1][0], True
    return math.inf, False


# ----- public operations -----


def validate_level_crossing(phi, k_range: Optional[tuple] = None) -> LevelCrossingVerdict:
    """
    Check the sign condition at level 0 and that phi - k changes sign at most
    once for every integer k in k_range.
    """
    if isinstance(phi, CallablePhi):
        return phi.validate_level_crossing(k_range)
    lo, hi = k_range if k_range is not None else (-get_level_range(), get_level_range())
    if lo > hi:
        raise StructuralError(f'empty level range ({lo}, {hi})')

    for left, right, sign in level_runs(phi, 0.0, merge=False):
        if (left >= 0 and sign < 0) or (right <= 0 and sign > 0):
            return LevelCrossingVerdict(
                False, 0, (left, right), 'phi must be >= 0 for s > 0 and <= 0 for s < 0'
            )

    for level in range(int(lo), int(hi) + 1):
        if level == 0:
            continue
        changes = sign_changes(level_runs(phi, level))
        if len(changes) > 1:
            return LevelCrossingVerdict(
                False,
                level,
                (changes[0][0], changes[1][0]),
                f'phi - {level} changes sign {len(changes)} times',
            )
        if changes and changes[0][1] < 0:
            return LevelCrossingVerdict(
                False, level, (changes[0][0], changes[0][0]), f'phi - {level} falls through zero'
            )
    return LevelCrossingVerdict(True)


def validate_integrability(phi) -> IntegrabilityVerdict:
    """Integral of |phi(s)| / |s|**3 over |s| >= 1"""
    if isinstance(phi, CallablePhi):
        return phi.validate_integrability()
    total = 0.0
    for seg in phi.segments:
        for lo, hi, mirrored in _outer_parts(seg.left, seg.right):
            if seg.has_power:
                sgn = -1.0 if mirrored else 1.0
                value, _ = quad(
                    lambda t, seg=seg, sgn=sgn: abs(seg.value(sgn * t)) / t**3,
                    lo,
                    hi,
                    limit=get_quad_limit(),
                )
                total += value
            else:
                slope = -seg.slope if mirrored else seg.slope
                total += _abs_affine_over_cube(slope, seg.intercept, lo, hi)
    return IntegrabilityVerdict(math.isfinite(total), total)


def crossing_table(phi, k_max: int) -> CrossingTable:
    """Crossing points s_k for k in [-k_max, k_max] (s_0 = 0)"""
    if k_max < 0:
        raise StructuralError('k_max must be >= 0')
    if isinstance(phi, CallablePhi):
        return CrossingTable(k_max, tuple(phi.crossings(k_max)))
    entries = []
    for level in range(-k_max, k_max + 1):
        if level == 0:
            entries.append(Crossing(0, 0.0))
            continue
        point, flagged = crossing_from_runs(level_runs(phi, level), level)
        entries.append(Crossing(level, point, flagged))
    return CrossingTable(k_max, tuple(entries))


def is_ggc(phi) -> bool:
    """True when phi is non-decreasing on the whole line"""
    if isinstance(phi, CallablePhi):
        return phi.is_nondecreasing()
    segments = phi.segments
    for seg in segments:
        if seg.slope < 0 or seg.coefficient < 0:
            return False
    for before, after in zip(segments, segments[1:]):
        if before.limit(before.right) > after.limit(after.left):
            return False
    return True


# ----- helpers -----


def _outer_parts(left: float, right: float):
    """Pieces of (left, right) with |s| >= 1, mapped to positive t = |s|"""
    if right > 1.0:
        yield max(left, 1.0), right, False
    if left < -1.0:
        yield max(-right, 1.0), -left, True


def _abs_affine_over_cube(slope: float, intercept: float, lo: float, hi: float) -> float:
    """Integral over [lo, hi] (1 <= lo) of |slope*t + intercept| / t**3, exact"""

    def antiderivative(t):
        if math.isinf(t):
            return 0.0
        return -slope / t - intercept / (2.0 * t * t)

    cuts = [lo, hi]
    if slope:
        root = -intercept / slope
        if lo < root < hi:
            cuts = [lo, root, hi]
    total = 0.0
    for a, b in zip(cuts, cuts[1:]):
        probe = a + 1.0 if math.isinf(b) else 0.5 * (a + b)
        sign = sign_of(slope * probe + intercept)
        total += sign * (antiderivative(b) - antiderivative(a))
    return total
