# Exact n-th derivatives, certified sign-change tables and the empirical
# bell-shape certifier built on them.

import math
from dataclasses import dataclass, field
from typing import Optional

import sympy as sp

from ..core.config.numerics_config import get_derivative_cap, get_root_width
from ..core.errors import BellshapeRangeError, DomainError
from ..core.parallel import parallel_map
from ..core.utils.console import print_info
from .families import DerivativeShift, ExactDensity
from .polynomials import X, ZeroTable


@dataclass(frozen=True)
class DerivativeForm:
    """f^{(n)} = numerator(argument) * weight"""

    n: int
    numerator: sp.Poly
    weight: sp.Expr
    argument: sp.Expr = X

    @property
    def expression(self):
        return self.numerator.as_expr().subs(self.numerator.gen, self.argument) * self.weight


@dataclass(frozen=True)
class BellshapeVerdict:
    consistent: bool
    n_max: int
    violating_n: Optional[int] = None
    violating_count: Optional[int] = None
    counts: tuple = field(default_factory=tuple)

    @property
    def label(self) -> str:
        if self.consistent:
            return f'consistent up to order {self.n_max}'
        return f'violated at n = {self.violating_n} ({self.violating_count} sign changes)'

    def to_dict(self):
        return {
            'verdict': 'consistent' if self.consistent else 'violated',
            'n_max': self.n_max,
            'violating_n': self.violating_n,
            'violating_count': self.violating_count,
            'counts': list(self.counts),
            'label': self.label,
        }


@dataclass(frozen=True)
class ScanRow:
    p: str
    verdict: BellshapeVerdict

    def to_dict(self):
        return {'p': self.p, **self.verdict.to_dict()}


@dataclass(frozen=True)
class TailDecay:
    n: int
    points: tuple
    values: tuple
    maximum: float
    decreasing: bool

    def to_dict(self):
        return {
            'n': self.n,
            'points': list(self.points),
            'values': list(self.values),
            'maximum': self.maximum,
            'decreasing': self.decreasing,
        }


def _check_order(n: int, cap: Optional[int] = None):
    cap = cap or get_derivative_cap()
    if int(n) != n or n < 0:
        raise DomainError(f'derivative order must be a nonnegative integer, got {n}')
    if n > cap:
        raise BellshapeRangeError(f'derivative order {n} exceeds the cap {cap}')


def nth_derivative(f: ExactDensity, n: int) -> DerivativeForm:
    _check_order(n)
    return DerivativeForm(n, f.numerator(n), f.weight_expr(n), f.numerator_argument)


def sign_changes(f: ExactDensity, n: int, width: Optional[float] = None) -> ZeroTable:
    """
    Certified real zeros of f^{(n)} on the support, largest first. Weights keep
    one sign on the support, so the zeros are those of the numerator.
    """
    _check_order(n)
    return ZeroTable(n, f.zero_enclosures(n, width or get_root_width()))


def zero_tables(f: ExactDensity, orders, threads=None) -> list:
    orders = list(orders)
    for n in orders:
        _check_order(n)
    f.numerator(max(orders, default=0))  # build the recursion once, sequentially
    return parallel_map(lambda n: sign_changes(f, n), orders, threads)


def certify_bellshape(f: ExactDensity, n_max: int, threads=None) -> BellshapeVerdict:
    """Sign-change count equals n for every n <= n_max; evidence, not a proof"""
    _check_order(n_max)
    return verdict_from_tables(zero_tables(f, range(n_max + 1), threads))


def verdict_from_tables(tables) -> BellshapeVerdict:
    """Verdict from the tables of orders 0..n_max"""
    n_max = len(tables) - 1
    counts = tuple(t.sign_change_count for t in tables)
    for n, count in enumerate(counts):
        if count != n:
            return BellshapeVerdict(False, n_max, n, count, counts)
    return BellshapeVerdict(True, n_max, counts=counts)


def fp_scan(f: ExactDensity, p_list, n_max: int, threads=None) -> list:
    """certify_bellshape of f + p f' for every p, in input order"""
    shifted = [DerivativeShift(f, p) for p in p_list]
    print_info(f'scanning {len(shifted)} values of p up to order {n_max}')
    verdicts = parallel_map(lambda g: certify_bellshape(g, n_max), shifted, threads)
    return [ScanRow(str(p), v) for p, v in zip(p_list, verdicts)]


def tail_decay_check(f: ExactDensity, n: int, xs, integrable: bool = False) -> TailDecay:
    """
    |x^n f^{(n)}(x)| (or |x^{n+1} f^{(n)}(x)| with integrable=True) along xs;
    for bell-shaped f it falls as |x| grows.
    """
    _check_order(n)
    power = n + 1 if integrable else n
    values = []
    for x in xs:
        x = float(x)
        sign, log_abs = f.derivative_sign_log(n, x)
        if sign == 0 or (x == 0.0 and power > 0):
            values.append(0.0)
            continue
        values.append(math.exp(min(log_abs + power * math.log(abs(x)), 709.0)))
    decreasing = all(b < a for a, b in zip(values, values[1:]))
    points = tuple(float(x) for x in xs)
    return TailDecay(n, points, tuple(values), max(values, default=0.0), decreasing)


def interlaces(lower_order: ZeroTable, higher_order: ZeroTable) -> bool:
    """Zeros of f^{(n+1)} strictly separate those of f^{(n)} and flank both ends"""
    a = lower_order.crossing_zeros
    b = higher_order.crossing_zeros
    if len(b) != len(a) + 1:
        return False
    for k, zero in enumerate(a):
        if not (b[k].lower > zero.upper and zero.lower > b[k + 1].upper):
            return False
    return True

