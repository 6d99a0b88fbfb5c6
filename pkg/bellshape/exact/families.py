# Model densities with exact derivatives of every order.
#
# Every family writes its n-th derivative as N_n(x) * w_n(x): N_n a polynomial
# with rational coefficients built by a recursion, w_n a positive weight with a
# closed form. Consecutive weights differ by a polynomial factor,
# w_n = w_{n+1} * ratio, which is what the derivative shift f + p f' needs.

import math
import threading

import mpmath
import numpy as np
import sympy as sp
from scipy.integrate import quad

from ..core.config.numerics_config import get_quad_limit
from ..core.errors import DomainError, NumericalError, StructuralError
from ..core.utils.validation import require_keys
from .polynomials import X, IntegerPolynomial, isolate_real_roots, to_rational


class ExactDensity:
    """Base class: cached numerator recursion plus weight bookkeeping"""

    family = 'exact'
    support_lower = None  # None = whole line
    numerator_argument = X  # numerators are polynomials in this expression of x

    def __init__(self, first_numerator: sp.Poly):
        self._numerators = [first_numerator]
        self._integer_forms = {}
        self._lock = threading.Lock()

    # --- recursion ---

    def _step(self, n: int, cache: list) -> sp.Poly:
        raise NotImplementedError

    def numerator(self, n: int) -> sp.Poly:
        with self._lock:
            while len(self._numerators) <= n:
                k = len(self._numerators) - 1
                self._numerators.append(self._step(k, self._numerators))
            return self._numerators[n]

    def integer_numerator(self, n: int) -> IntegerPolynomial:
        poly = self.numerator(n)
        with self._lock:
            if n not in self._integer_forms:
                self._integer_forms[n] = IntegerPolynomial(poly)
            return self._integer_forms[n]

    # --- weights ---

    @property
    def ratio(self) -> sp.Poly:
        raise NotImplementedError

    def weight_expr(self, n: int):
        raise NotImplementedError

    def log_weight(self, n: int, x: float) -> float:
        raise NotImplementedError

    def weight_mp(self, ctx, n: int, x):
        raise NotImplementedError

    # --- evaluation ---

    def in_support(self, x: float) -> bool:
        return self.support_lower is None or x > self.support_lower

    def expression(self, n: int = 0):
        """f^{(n)} as a sympy expression in x"""
        poly = self.numerator(n)
        return poly.as_expr().subs(poly.gen, self.numerator_argument) * self.weight_expr(n)

    def zero_enclosures(self, n: int, width: float) -> tuple:
        """Certified real zeros of f^{(n)} on the support, largest first"""
        return isolate_real_roots(self.numerator(n), lower=self.support_lower, width=width)

    def mp_evaluator(self, ctx, n: int):
        """y -> f^{(n)}(y) in the precision of ctx"""
        coefficients = [ctx.mpf(c.p) / c.q for c in self.numerator(n).all_coeffs()]

        def evaluate(y):
            return ctx.polyval(coefficients, y) * self.weight_mp(ctx, n, y)

        return evaluate

    def derivative_sign_log(self, n: int, x: float) -> tuple:
        """(sign, log |f^{(n)}(x)|), the polynomial part evaluated exactly"""
        if not self.in_support(x):
            return 0, -math.inf
        sign, log_poly = self.integer_numerator(n).sign_log(x)
        if sign == 0:
            return 0, -math.inf
        return sign, log_poly + self.log_weight(n, x)

    def derivative_value(self, n: int, x: float) -> float:
        sign, log_abs = self.derivative_sign_log(n, x)
        if sign == 0:
            return 0.0
        if log_abs > 709.0:
            raise NumericalError(f'f^({n}) overflows a float at x = {x:.6g}', log_magnitude=log_abs)
        return sign * math.exp(log_abs)

    def value(self, x: float) -> float:
        return self.derivative_value(0, x)

    def __call__(self, xs):
        return np.array([self.value(float(x)) for x in np.atleast_1d(xs)])

    # --- integrals ---

    def total_mass(self) -> float:
        lo = 0.0 if self.support_lower is not None else -np.inf
        value, _ = quad(self.value, lo, np.inf, epsabs=0.0, epsrel=1e-12, limit=get_quad_limit())
        return value

    def fourier_transform(self, xi: float) -> complex:
        raise NotImplementedError(f'{self.family} has no closed-form transform')

    def to_dict(self) -> dict:
        raise NotImplementedError

    def __repr__(self):
        return f'{type(self).__name__}({self.to_dict()})'


class Gaussian(ExactDensity):
    """f(x) = exp(-x^2); f^{(n)} = (-1)^n H_n(x) exp(-x^2)"""

    family = 'gaussian'

    def __init__(self):
        super().__init__(sp.Poly(1, X, domain='QQ'))
        self._hermite = [sp.Poly(1, X, domain='QQ'), sp.Poly(2 * X, X, domain='QQ')]

    def _hermite_poly(self, n: int) -> sp.Poly:
        while len(self._hermite) <= n:
            k = len(self._hermite) - 1
            self._hermite.append(2 * X * self._hermite[k] - 2 * k * self._hermite[k - 1])
        return self._hermite[n]

    def _step(self, n, cache):
        return (-1) ** (n + 1) * self._hermite_poly(n + 1)

    @staticmethod
    def direct_numerator(n: int) -> sp.Poly:
        """Same numerators from P_{n+1} = P' - 2xP, for cross-checking"""
        poly = sp.Poly(1, X, domain='QQ')
        for _ in range(n):
            poly = poly.diff(X) - 2 * X * poly
        return poly

    @property
    def ratio(self):
        return sp.Poly(1, X, domain='QQ')

    def weight_expr(self, n):
        return sp.exp(-(X**2))

    def log_weight(self, n, x):
        return -x * x

    def weight_mp(self, ctx, n, x):
        return ctx.exp(-x * x)

    def total_mass(self):
        return math.sqrt(math.pi)

    def fourier_transform(self, xi):
        return complex(math.sqrt(math.pi) * math.exp(-xi * xi / 4.0))

    def to_dict(self):
        return {'family': self.family}


class RationalDensity(ExactDensity):
    """f = N / q^m with q > 0 on the real line; f^{(n)} = N_n / q^{m+n}"""

    family = 'rational'

    def __init__(self, numerator, denominator, power: int = 1):
        top = sp.Poly(sp.sympify(numerator), X, domain='QQ')
        bottom = sp.Poly(sp.sympify(denominator), X, domain='QQ')
        power = int(power)
        if power < 1:
            raise StructuralError(f'denominator power must be >= 1, got {power}')
        if bottom.degree() < 1 or isolate_real_roots(bottom):
            raise StructuralError('denominator must be non-constant without real zeros')
        if bottom.LC() < 0:
            top, bottom = (-1) ** power * top, -bottom
        if top.is_zero or any(z.changes_sign for z in isolate_real_roots(top)) or top.LC() < 0:
            raise StructuralError('numerator must be nonnegative on the real line')
        if top.degree() >= power * bottom.degree():
            raise StructuralError('f must vanish at infinity: deg N < m deg q')
        super().__init__(top)
        self.denominator = bottom
        self.power = power
        self._bottom_int = IntegerPolynomial(bottom)

    def _step(self, n, cache):
        poly = cache[n]
        q = self.denominator
        return poly.diff(X) * q - (self.power + n) * poly * q.diff(X)

    @property
    def ratio(self):
        return self.denominator

    def weight_expr(self, n):
        return self.denominator.as_expr() ** -(self.power + n)

    def log_weight(self, n, x):
        return -(self.power + n) * self._bottom_int.sign_log(x)[1]

    def weight_mp(self, ctx, n, x):
        coefficients = [ctx.mpf(c.p) / c.q for c in self.denominator.all_coeffs()]
        return ctx.polyval(coefficients, x) ** -(self.power + n)

    def to_dict(self):
        return {
            'family': self.family,
            'numerator': str(self.numerator(0).as_expr()),
            'denominator': str(self.denominator.as_expr()),
            'power': self.power,
        }


class CauchyProduct(RationalDensity):
    """f = prod_j 1 / (s_j^2 + x^2) with distinct positive scales"""

    family = 'cauchy_product'

    def __init__(self, scales):
        scales = tuple(to_rational(s) for s in scales)
        if not scales or any(s <= 0 for s in scales) or len(set(scales)) != len(scales):
            raise StructuralError('Cauchy product needs distinct positive scales')
        self.scales = tuple(sorted(scales))
        super().__init__(1, sp.prod([X**2 + s**2 for s in self.scales]), 1)

    @classmethod
    def cauchy(cls) -> 'CauchyProduct':
        return cls((1,))

    def partial_fractions(self) -> list:
        """[(A_j, s_j)] with f = sum_j A_j / (s_j^2 + x^2)"""
        out = []
        for j, s in enumerate(self.scales):
            weight = sp.Integer(1)
            for i, t in enumerate(self.scales):
                if i != j:
                    weight /= t**2 - s**2
            out.append((weight, s))
        return out

    def total_mass(self):
        return float(sum(w * sp.pi / s for w, s in self.partial_fractions()))

    def fourier_transform(self, xi):
        total = 0.0
        for w, s in self.partial_fractions():
            s = float(s)
            total += float(w) * math.pi / s * math.exp(-s * abs(xi))
        return complex(total)

    def to_dict(self):
        if self.scales == (1,):
            return {'family': 'cauchy'}
        return {'family': self.family, 'scales': [str(s) for s in self.scales]}


class PowerExpInverse(ExactDensity):
    """
    f(x) = x^{-p} exp(-1/x) on (0, inf).

    f^{(n)} = R_n(x) x^{-p-2n} exp(-1/x) with R_0 = 1 and
    R_{n+1} = x^2 R_n' - (p + 2n) x R_n + R_n. p = 3/2 is the Levy density
    up to normalisation, p = 0 the function exp(-1/x).
    """

    family = 'power_exp_inverse'
    support_lower = 0.0

    def __init__(self, p=sp.Rational(3, 2)):
        self.p = to_rational(p)
        if self.p < 0:
            raise StructuralError(f'exponent p must be >= 0, got {self.p}')
        super().__init__(sp.Poly(1, X, domain='QQ'))

    @classmethod
    def levy(cls) -> 'PowerExpInverse':
        return cls(sp.Rational(3, 2))

    @classmethod
    def exp_inverse(cls) -> 'PowerExpInverse':
        return cls(0)

    def _step(self, n, cache):
        poly = cache[n]
        beta = self.p + 2 * n
        return X**2 * poly.diff(X) - beta * X * poly + poly

    def _beta(self, n):
        return self.p + 2 * n

    @property
    def ratio(self):
        return sp.Poly(X**2, X, domain='QQ')

    def weight_expr(self, n):
        return X ** (-self._beta(n)) * sp.exp(-1 / X)

    def log_weight(self, n, x):
        if x <= 0:
            return -math.inf
        return -float(self._beta(n)) * math.log(x) - 1.0 / x

    def weight_mp(self, ctx, n, x):
        if x <= 0:
            return ctx.zero
        beta = self._beta(n)
        return x ** -(ctx.mpf(beta.p) / beta.q) * ctx.exp(-1 / x)

    def _require_integrable(self):
        if self.p <= 1:
            raise DomainError(f'x^(-{self.p}) exp(-1/x) is not integrable on (0, inf)')

    def total_mass(self):
        # substitute u = 1/x: the integral is Gamma(p - 1)
        self._require_integrable()
        return math.gamma(float(self.p) - 1.0)

    def fourier_transform(self, xi):
        """2 z^{(p-1)/2} K_{1-p}(2 sqrt z) at z = i xi"""
        self._require_integrable()
        if xi == 0:
            return complex(self.total_mass())
        ctx = mpmath.MPContext()
        ctx.dps = 30
        z = ctx.mpc(0, xi)
        nu = 1 - ctx.mpf(self.p.p) / self.p.q
        value = 2 * z ** (-nu / 2) * ctx.besselk(nu, 2 * ctx.sqrt(z))
        return complex(value)

    def to_dict(self):
        if self.p == sp.Rational(3, 2):
            return {'family': 'levy'}
        if self.p == 0:
            return {'family': 'exp_inverse'}
        return {'family': self.family, 'p': str(self.p)}


class DerivativeShift(ExactDensity):
    """f_p = f + p f': numerator N_n * ratio + p N_{n+1} over the base weight w_{n+1}"""

    family = 'derivative_shift'

    def __init__(self, base: ExactDensity, p):
        self.base = base
        self.p = to_rational(p)
        if self.p == 0:
            raise DomainError('derivative shift needs p != 0')
        self.support_lower = base.support_lower
        super().__init__(self._combine(0))

    def _combine(self, n):
        return self.base.numerator(n) * self.base.ratio + self.p * self.base.numerator(n + 1)

    def _step(self, n, cache):
        return self._combine(n + 1)

    @property
    def ratio(self):
        return self.base.ratio

    def weight_expr(self, n):
        return self.base.weight_expr(n + 1)

    def log_weight(self, n, x):
        return self.base.log_weight(n + 1, x)

    def weight_mp(self, ctx, n, x):
        return self.base.weight_mp(ctx, n + 1, x)

    def total_mass(self):
        return self.base.total_mass()

    def fourier_transform(self, xi):
        return complex(1.0, float(self.p) * xi) * self.base.fourier_transform(xi)

    def to_dict(self):
        return {'family': self.family, 'base': self.base.to_dict(), 'p': str(self.p)}


def family_from_dict(payload: dict) -> ExactDensity:
    """Parse {'family': ..., ...} into a density"""
    require_keys(payload, ['family'], 'density')
    family = payload['family']
    if family == 'gaussian':
        return Gaussian()
    if family == 'cauchy':
        return CauchyProduct.cauchy()
    if family == 'cauchy_product':
        require_keys(payload, ['scales'], 'cauchy_product')
        return CauchyProduct(payload['scales'])
    if family == 'rational':
        require_keys(payload, ['numerator', 'denominator'], 'rational')
        return RationalDensity(
            payload['numerator'], payload['denominator'], payload.get('power', 1)
        )
    if family == 'levy':
        return PowerExpInverse.levy()
    if family == 'exp_inverse':
        return PowerExpInverse.exp_inverse()
    if family == 'power_exp_inverse':
        require_keys(payload, ['p'], 'power_exp_inverse')
        return PowerExpInverse(payload['p'])
    if family == 'derivative_shift':
        require_keys(payload, ['base', 'p'], 'derivative_shift')
        return DerivativeShift(family_from_dict(payload['base']), payload['p'])
    if family == 'whale':
        from ..whale.build import WhaleSpec, whale_build
        from ..whale.density import ExponentialSum, WhaleConv

        if 'whale' in payload:
            return whale_build(WhaleSpec.from_dict(payload['whale']))
        require_keys(payload, ['terms'], 'whale')
        return WhaleConv(ExponentialSum(tuple(tuple(term) for term in payload['terms'])))
    raise StructuralError(f"unknown density family '{family}'")

