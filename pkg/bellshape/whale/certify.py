# Certified sign-change profile of an exponential sum, read off the exact
# zero tables of its WhaleConv density.

from dataclasses import dataclass, field
from typing import Optional

from ..core.config.numerics_config import get_derivative_cap
from ..core.errors import BellshapeRangeError
from ..exact.derivatives import sign_changes, zero_tables
from .density import ExponentialSum, WhaleConv


@dataclass(frozen=True)
class WhaleRow:
    n: int
    count: int
    expected: int
    zeros: tuple  # (lower, upper) enclosures in x, largest first

    def to_row(self):
        midpoints = ' '.join(format(0.5 * (lo + hi), '.17g') for lo, hi in self.zeros)
        return (self.n, self.count, self.expected, midpoints)


@dataclass(frozen=True)
class WhaleVerdict:
    holds: bool
    m: int
    n_max: int
    boundary_flat: bool
    rows: tuple = field(default_factory=tuple)

    def to_dict(self):
        return {
            'verdict': 'whale' if self.holds else 'violated',
            'm': self.m,
            'n_max': self.n_max,
            'boundary_flat': self.boundary_flat,
            'counts': [row.count for row in self.rows],
            'expected': [row.expected for row in self.rows],
        }


def as_density(f) -> WhaleConv:
    return WhaleConv(f) if isinstance(f, ExponentialSum) else f


def _enclosures(table) -> tuple:
    return tuple((float(z.lower), float(z.upper)) for z in table.crossing_zeros)


def derivative_zeros(f, n: int, width: Optional[float] = None) -> tuple:
    """Sign-changing zeros of f^{(n)} on (0, inf) as x-enclosures, largest first"""
    return _enclosures(sign_changes(as_density(f), n, width))


def whale_certify(f, m: int, n_max: int, threads=None) -> WhaleVerdict:
    """
    Sign changes of f^{(n)} equal min(n, m) for n <= n_max, and f^{(j)}(0+) = 0
    exactly for j < m.
    """
    if n_max > get_derivative_cap():
        raise BellshapeRangeError(f'order {n_max} exceeds the cap {get_derivative_cap()}')
    f = as_density(f)
    boundary_flat = all(f.boundary_derivative(j) == 0 for j in range(m))
    rows = []
    for table in zero_tables(f, range(n_max + 1), threads):
        zeros = _enclosures(table)
        rows.append(WhaleRow(table.n, len(zeros), min(table.n, m), zeros))
    holds = boundary_flat and all(row.count == row.expected for row in rows)
    return WhaleVerdict(holds, m, n_max, boundary_flat, tuple(rows))
