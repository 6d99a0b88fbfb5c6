# Empirical zero measures sum_k alpha_{n,k}^2 delta_{alpha_{n,k}} built from
# the scaled zeros of f^{(n)}, and trend diagnostics against their limit
# 2a delta_0 + sum_k alpha_k^2 delta_{alpha_k} with alpha_k = 1 / s_k.

import math
from dataclasses import dataclass
from typing import Optional

from ..core.config.numerics_config import get_k_max
from ..core.errors import StructuralError
from ..shape.levels import crossing_table
from ..shape.params import BellParams
from .derivatives import sign_changes, zero_tables
from .families import ExactDensity
from .polynomials import ZeroTable


@dataclass(frozen=True)
class ZeroMeasure:
    """atoms are (location, weight = location^2), largest location first"""

    n: int
    atoms: tuple

    @classmethod
    def from_table(cls, table: ZeroTable) -> 'ZeroMeasure':
        n = table.n
        locations = [m / n for m in table.midpoints()] if n else []
        return cls(n, tuple((x, x * x) for x in locations))

    @property
    def locations(self) -> list:
        return [x for x, _ in self.atoms]

    @property
    def total_mass(self) -> float:
        return sum(w for _, w in self.atoms)

    @property
    def max_abs_location(self) -> float:
        return max((abs(x) for x in self.locations), default=0.0)

    def integrate(self, u) -> float:
        return sum(w * u(x) for x, w in self.atoms)

    def to_dict(self):
        return {'n': self.n, 'atoms': [list(a) for a in self.atoms]}


@dataclass(frozen=True)
class LimitMeasure:
    gaussian_mass: float
    atoms: tuple

    def __post_init__(self):
        if self.gaussian_mass < 0 or any(w < 0 for _, w in self.atoms):
            raise StructuralError('limit measure masses must be nonnegative')

    @property
    def total_mass(self) -> float:
        return self.gaussian_mass + sum(w for _, w in self.atoms)

    def integrate(self, u) -> float:
        return self.gaussian_mass * u(0.0) + sum(w * u(x) for x, w in self.atoms)

    def to_dict(self):
        return {'gaussian_mass': self.gaussian_mass, 'atoms': [list(a) for a in self.atoms]}


def _atoms_from_points(points) -> tuple:
    atoms = [(1.0 / s, 1.0 / (s * s)) for s in points]
    return tuple(sorted(atoms, key=lambda a: a[0], reverse=True))


def cauchy_limit(k_max: Optional[int] = None) -> LimitMeasure:
    """phi(s) = s / pi crosses level k at k pi"""
    k_max = k_max or get_k_max()
    points = [k * math.pi for k in range(1, k_max + 1)]
    points += [-s for s in points]
    return LimitMeasure(0.0, _atoms_from_points(points))


def levy_limit(k_max: Optional[int] = None) -> LimitMeasure:
    """phi(s) = (2/pi) sqrt(s) crosses level k at k^2 pi^2 / 4"""
    k_max = k_max or get_k_max()
    return LimitMeasure(
        0.0, _atoms_from_points([(k * math.pi) ** 2 / 4.0 for k in range(1, k_max + 1)])
    )


def gaussian_limit(a: float) -> LimitMeasure:
    return LimitMeasure(2.0 * a, ())


def limit_from_params(params: BellParams, k_max: Optional[int] = None) -> LimitMeasure:
    """Gaussian mass 2a plus atoms at the reciprocals of the crossing points"""
    table = crossing_table(params.phi, k_max or get_k_max())
    points = [entry.point for entry in table.finite_points()]
    return LimitMeasure(2.0 * params.a, _atoms_from_points(points))


def zero_measure(f: ExactDensity, n: int) -> ZeroMeasure:
    return ZeroMeasure.from_table(sign_changes(f, n))


def zero_measures(f: ExactDensity, orders, threads=None) -> list:
    return [ZeroMeasure.from_table(t) for t in zero_tables(f, orders, threads)]


# ----- test functions and the convergence report -----


@dataclass(frozen=True)
class HatFunction:
    """Piecewise-affine hat: 0 outside [left, right], 1 at the midpoint"""

    left: float
    right: float

    def __post_init__(self):
        if not self.left < self.right:
            raise StructuralError('hat function needs left < right')

    def __call__(self, x: float) -> float:
        if x <= self.left or x >= self.right:
            return 0.0
        mid = 0.5 * (self.left + self.right)
        half = 0.5 * (self.right - self.left)
        return 1.0 - abs(x - mid) / half

    def to_dict(self):
        return {'left': self.left, 'right': self.right}


def default_tests(limit: LimitMeasure, count: int = 4) -> list:
    """Hats bracketing the outermost limit atoms on each side"""
    tests = []
    positive = [x for x, _ in limit.atoms if x > 0][:count]
    negative = sorted((x for x, _ in limit.atoms if x < 0))[:count]
    for x in positive + negative:
        tests.append(HatFunction(min(0.75 * x, 1.25 * x), max(0.75 * x, 1.25 * x)))
    if limit.gaussian_mass and not tests:
        tests.append(HatFunction(-0.1, 0.1))
    return tests


@dataclass(frozen=True)
class ConvergenceReport:
    orders: tuple
    tests: tuple
    discrepancies: tuple  # discrepancies[i][j]: test i at orders[j]

    def decreasing(self, test_index: int) -> bool:
        row = self.discrepancies[test_index]
        return row[-1] < row[0] if len(row) > 1 else True

    def to_dict(self):
        return {
            'orders': list(self.orders),
            'tests': [t.to_dict() for t in self.tests],
            'discrepancies': [list(row) for row in self.discrepancies],
            'decreasing': [self.decreasing(i) for i in range(len(self.tests))],
        }


def compare_to_limit(measures, limit: LimitMeasure, tests=None) -> ConvergenceReport:
    """|int u d mu_n - int u d mu| for every test u and every measure"""
    tests = list(tests) if tests is not None else default_tests(limit)
    measures = sorted(measures, key=lambda m: m.n)
    rows = []
    for u in tests:
        target = limit.integrate(u)
        rows.append(tuple(abs(m.integrate(u) - target) for m in measures))
    return ConvergenceReport(tuple(m.n for m in measures), tuple(tests), tuple(rows))


def figure3_data(f: ExactDensity, n_max: int, threads=None) -> list:
    """Rows (n, k, alpha_{n,k}) for n = 1..n_max, k = 1 the largest zero"""
    rows = []
    for measure in zero_measures(f, range(1, n_max + 1), threads):
        for k, location in enumerate(measure.locations, start=1):
            rows.append((measure.n, k, location))
    return rows
