# Exact polynomial helpers on top of sympy: certified real-root isolation,
# exact sign / log-magnitude evaluation at float points, rational conversion.

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import sympy as sp

from ..core.config.numerics_config import get_root_width
from ..core.errors import StructuralError

X = sp.Symbol('x', real=True)


def to_fraction(value) -> Fraction:
    value = sp.Rational(value)
    return Fraction(int(value.p), int(value.q))


def to_rational(value, digits: int = 50) -> sp.Rational:
    """
    Exact rational for p values: integers, Fractions and decimal strings stay
    exact; symbolic strings ('1/pi', '4/pi**2') and floats are rounded to
    `digits` significant decimals.
    """
    if isinstance(value, Fraction):
        return sp.Rational(value.numerator, value.denominator)
    if isinstance(value, float):
        return sp.Rational(repr(value))
    try:
        expr = sp.sympify(value)
    except (sp.SympifyError, TypeError) as exc:
        raise StructuralError(f"cannot read a number from '{value}': {exc}")
    if expr.is_Rational:
        return sp.Rational(expr)
    if not expr.is_real:
        raise StructuralError(f"'{value}' is not a real number")
    return sp.Rational(str(sp.N(expr, digits)))


@dataclass(frozen=True)
class ZeroEnclosure:
    """Certified interval [lower, upper] holding one real zero"""

    lower: Fraction
    upper: Fraction
    multiplicity: int = 1

    @property
    def midpoint(self) -> float:
        return float((self.lower + self.upper) / 2)

    @property
    def width(self) -> float:
        return float(self.upper - self.lower)

    @property
    def changes_sign(self) -> bool:
        return self.multiplicity % 2 == 1

    def scaled(self, factor: Fraction) -> 'ZeroEnclosure':
        lo, hi = sorted((self.lower * factor, self.upper * factor))
        return ZeroEnclosure(lo, hi, self.multiplicity)

    def to_dict(self):
        return {
            'lower': float(self.lower),
            'upper': float(self.upper),
            'multiplicity': self.multiplicity,
        }


@dataclass(frozen=True)
class ZeroTable:
    """Real zeros of one derivative, largest first (k = 1 is the rightmost zero)"""

    n: int
    zeros: tuple

    @property
    def sign_change_count(self) -> int:
        return sum(1 for z in self.zeros if z.changes_sign)

    @property
    def crossing_zeros(self) -> tuple:
        return tuple(z for z in self.zeros if z.changes_sign)

    def midpoints(self) -> list:
        return [z.midpoint for z in self.crossing_zeros]

    def to_dict(self):
        return {
            'n': self.n,
            'sign_changes': self.sign_change_count,
            'zeros': [z.to_dict() for z in self.zeros],
        }


def isolate_real_roots(
    poly: sp.Poly, lower=None, upper=None, width: Optional[float] = None
) -> tuple:
    """Enclosures of the real roots of poly in (lower, upper), largest first"""
    if poly.is_zero:
        raise StructuralError('the zero polynomial has no isolated roots')
    if poly.degree() <= 0:
        return ()
    eps = sp.Rational(width if width is not None else get_root_width())
    kwargs = {'eps': eps}
    if lower is not None:
        kwargs['inf'] = sp.Rational(lower)
    if upper is not None:
        kwargs['sup'] = sp.Rational(upper)
    enclosures = []
    for (lo, hi), multiplicity in poly.intervals(**kwargs):
        lo_f, hi_f = to_fraction(lo), to_fraction(hi)
        if lo_f == hi_f and (
            (lower is not None and lo_f == to_fraction(lower))
            or (upper is not None and lo_f == to_fraction(upper))
        ):
            continue  # root sitting on an excluded boundary
        enclosures.append(ZeroEnclosure(lo_f, hi_f, int(multiplicity)))
    enclosures.sort(key=lambda z: z.lower, reverse=True)
    return tuple(enclosures)


class IntegerPolynomial:
    """poly = (sum c_j x^j) / denominator with integer c_j, for exact evaluation"""

    def __init__(self, poly: sp.Poly):
        denominator, primitive = poly.clear_denoms()
        self.coefficients = [int(c) for c in primitive.all_coeffs()]  # highest degree first
        self.denominator = int(denominator)
        self.degree = len(self.coefficients) - 1

    def _homogeneous(self, x: float) -> tuple:
        """(acc, den) with p(x) = acc / (den**degree * denominator)"""
        frac = Fraction(x)
        num, den = frac.numerator, frac.denominator
        acc = self.coefficients[0]
        den_power = 1
        for c in self.coefficients[1:]:
            den_power *= den
            acc = acc * num + c * den_power
        return acc, den

    def sign_log(self, x: float) -> tuple:
        """(sign, log |p(x)|) computed exactly at the float x"""
        acc, den = self._homogeneous(x)
        if acc == 0:
            return 0, -math.inf
        sign = 1 if acc > 0 else -1
        return sign, (
            math.log(abs(acc)) - self.degree * math.log(den) - math.log(self.denominator)
        )
