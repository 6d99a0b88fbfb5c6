# Exponential sums as exact densities. With L the common denominator of the
# rates, u = e^{-x/L} maps (0, inf) onto (0, 1) and f^{(n)} becomes
# u^low (u - 1)^d P_n(u) with P_n a rational polynomial, nonzero at 0 and 1.

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import sympy as sp

from ..core.errors import StructuralError, UnsupportedError
from ..exact.families import ExactDensity
from ..exact.polynomials import X, ZeroEnclosure, isolate_real_roots, to_fraction, to_rational

U = sp.Symbol('u', positive=True)

MAX_REFINEMENTS = 200


def _exact(value) -> Fraction:
    return to_fraction(to_rational(value))


def _sympy(value: Fraction) -> sp.Rational:
    return sp.Rational(value.numerator, value.denominator)


@dataclass(frozen=True)
class ExponentialSum:
    """f(x) = sum c_i e^{-lambda_i x} on (0, inf), zero on (-inf, 0]"""

    terms: tuple  # (coefficient, rate) as Fractions, rates increasing

    def __post_init__(self):
        merged = {}
        for coef, rate in self.terms:
            rate = _exact(rate)
            if rate <= 0:
                raise StructuralError('exponential-sum rates must be positive')
            merged[rate] = merged.get(rate, Fraction(0)) + _exact(coef)
        terms = tuple((c, r) for r, c in sorted(merged.items()) if c != 0)
        object.__setattr__(self, 'terms', terms)

    @property
    def rates(self) -> tuple:
        return tuple(r for _, r in self.terms)

    def boundary_derivative(self, n: int) -> Fraction:
        """f^{(n)}(0+) exactly"""
        return sum((c * (-r) ** n for c, r in self.terms), Fraction(0))

    def derivative_value(self, n: int, x: float) -> float:
        if x <= 0:
            return 0.0
        return math.fsum(float(c * (-r) ** n) * math.exp(-float(r) * x) for c, r in self.terms)

    def value(self, x: float) -> float:
        return self.derivative_value(0, x)

    def total_mass(self) -> Fraction:
        return sum((c / r for c, r in self.terms), Fraction(0))

    def fourier_transform(self, xi: float) -> complex:
        return sum(float(c) / complex(float(r), xi) for c, r in self.terms)

    def to_dict(self):
        return {'terms': [[str(c), str(r)] for c, r in self.terms]}


def u_form(f: ExponentialSum, scale: int, n: int) -> tuple:
    """(P_n, low, d) with f^{(n)} = u^low (u - 1)^d P_n(u)"""
    powers = [int(r * scale) for r in f.rates]
    low = min(powers)
    expr = sum(
        _sympy(c) * _sympy(-r) ** n * U ** (k - low) for (c, r), k in zip(f.terms, powers)
    )
    poly = sp.Poly(expr, U, domain='QQ')
    unit_root = sp.Poly(U - 1, U, domain='QQ')
    d = 0
    while poly.degree() > 0 and poly.eval(1) == 0:
        poly = poly.quo(unit_root)
        d += 1
    return poly, low, d


class WhaleConv(ExactDensity):
    """
    Exponential sum on (0, inf) in the exact-density interface. Numerators are
    polynomials in u = e^{-x/L}; zeros on (0, inf) are their roots in (0, 1).
    """

    family = 'whale'
    support_lower = 0.0

    def __init__(self, expsum: ExponentialSum, spec=None):
        if not expsum.terms:
            raise StructuralError('an exact density needs a nonzero exponential sum')
        self.expsum = expsum
        self.spec = spec
        self.scale = math.lcm(*(r.denominator for r in expsum.rates))
        self.numerator_argument = sp.exp(-X / self.scale)
        self._forms = {0: u_form(expsum, self.scale, 0)}
        super().__init__(self._forms[0][0])

    # --- exponential-sum view ---

    @property
    def terms(self) -> tuple:
        return self.expsum.terms

    @property
    def rates(self) -> tuple:
        return self.expsum.rates

    def boundary_derivative(self, n: int) -> Fraction:
        return self.expsum.boundary_derivative(n)

    # --- exact forms ---

    def form(self, n: int) -> tuple:
        with self._lock:
            if n not in self._forms:
                self._forms[n] = u_form(self.expsum, self.scale, n)
            return self._forms[n]

    def numerator(self, n: int) -> sp.Poly:
        return self.form(n)[0]

    @property
    def ratio(self):
        raise UnsupportedError('derivative shifts of exponential sums are not supported')

    def weight_expr(self, n: int):
        _, low, d = self.form(n)
        u = self.numerator_argument
        return u**low * (u - 1) ** d

    def log_weight(self, n: int, x: float) -> float:
        _, low, d = self.form(n)
        t = x / self.scale
        return -low * t + d * math.log(-math.expm1(-t))

    def weight_mp(self, ctx, n: int, x):
        _, low, d = self.form(n)
        u = ctx.exp(-ctx.mpf(x) / self.scale)
        return u**low * (u - 1) ** d

    def zero_enclosures(self, n: int, width: float) -> tuple:
        poly = self.numerator(n)
        if poly.is_zero or poly.degree() <= 0:
            return ()
        out = []
        for zero in isolate_real_roots(poly, 0, 1):
            lo, hi = self._refine(poly, zero.lower, zero.upper, Fraction(width))
            x_lo = -self.scale * math.log(float(hi))
            x_hi = -self.scale * math.log(float(lo))
            out.append(
                ZeroEnclosure(
                    Fraction(math.nextafter(x_lo, -math.inf)),
                    Fraction(math.nextafter(x_hi, math.inf)),
                    zero.multiplicity,
                )
            )
        out.sort(key=lambda z: z.lower, reverse=True)
        return tuple(out)

    def _refine(self, poly: sp.Poly, lo: Fraction, hi: Fraction, width: Fraction) -> tuple:
        """Shrink a u-enclosure off the ends of (0, 1) and to x-width below width"""
        for _ in range(MAX_REFINEMENTS):
            if lo == hi or (0 < lo and hi < 1 and (hi - lo) * self.scale <= width * lo):
                break
            s, t = poly.refine_root(
                _sympy(lo), _sympy(hi), eps=_sympy((hi - lo) / 8), check_sqf=True
            )
            lo, hi = to_fraction(s), to_fraction(t)
        return lo, hi

    # --- evaluation ---

    def derivative_sign_log(self, n: int, x: float) -> tuple:
        if not self.in_support(x):
            return 0, -math.inf
        ctx = mpmath.MPContext()
        ctx.dps = 50
        value = self.mp_evaluator(ctx, n)(ctx.mpf(x))
        if value == 0:
            return 0, -math.inf
        return (1 if value > 0 else -1), float(ctx.log(abs(value)))

    def mp_evaluator(self, ctx, n: int):
        terms = [
            (ctx.mpf(c.numerator) / c.denominator, ctx.mpf(r.numerator) / r.denominator)
            for c, r in self.terms
        ]

        def evaluate(y):
            return ctx.fsum(c * (-r) ** n * ctx.exp(-r * y) for c, r in terms)

        return evaluate

    def total_mass(self) -> float:
        return float(self.expsum.total_mass())

    def fourier_transform(self, xi: float) -> complex:
        return self.expsum.fourier_transform(xi)

    def to_dict(self) -> dict:
        document = {'family': self.family, **self.expsum.to_dict()}
        if self.spec is not None:
            document['whale'] = self.spec.to_dict()
        return document
