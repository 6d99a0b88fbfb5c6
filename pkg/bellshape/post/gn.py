# The g_n construction:
#
#   g_n(x) = (-1)^n n^{n+1} / n! * f^{(n)}(n x) * prod_k (x - alpha_{n,k})
#
# with n alpha_{n,k} the zeros of f^{(n)}. g_n is nonnegative, carries the mass
# of f, and splits the order-n Post approximant into the PFF factor
# prod (1 + i alpha_{n,k} xi)^{-1} times the transform of an AM-CM function.

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..core.config.numerics_config import get_identity_tolerance, get_tolerance
from ..core.errors import ConsistencyError, PreconditionError
from ..exact.derivatives import sign_changes
from ..exact.families import ExactDensity
from ..factors.pff import PolyaFrequency, pff_phi, pff_transform
from ..shape.kernels import adaptive_quad
from .approximant import post_approximant


@dataclass(frozen=True)
class GnFunction:
    n: int
    base: ExactDensity
    zeros: tuple  # alpha_{n,k}, largest first

    @property
    def log_prefactor(self) -> float:
        n = self.n
        return (n + 1) * math.log(n) - math.lgamma(n + 1) if n else 0.0

    def __call__(self, x: float) -> float:
        x = float(x)
        n = self.n
        if n == 0:
            return self.base.value(x)
        sign, log_abs = self.base.derivative_sign_log(n, n * x)
        if sign == 0:
            return 0.0
        for alpha in self.zeros:
            gap = x - alpha
            if gap == 0:
                return 0.0
            if gap < 0:
                sign = -sign
            log_abs += math.log(abs(gap))
        if n % 2:
            sign = -sign
        return sign * math.exp(min(log_abs + self.log_prefactor, 709.0))

    def sample(self, xs) -> np.ndarray:
        return np.array([self(x) for x in xs])

    def panels(self) -> list:
        """Integration panels split at the zeros, with infinite outer panels"""
        inner = sorted(self.zeros)
        lo = inner[0] - 1.0 if inner else -1.0
        hi = inner[-1] + 1.0 if inner else 1.0
        if self.base.support_lower is not None:
            lo = max(lo, 0.0)
            hi = max(hi, 1.0)
            return [(0.0, hi, inner), (hi, math.inf, [])]
        return [(-math.inf, lo, []), (lo, hi, inner), (hi, math.inf, [])]

    def integrate(self, weight, tol: Optional[float] = None, what='g_n integral') -> float:
        tol = tol or get_tolerance()
        return math.fsum(
            adaptive_quad(lambda x: self(x) * weight(x), lo, hi, tol, what, points)
            for lo, hi, points in self.panels()
        )

    def mass(self, tol: Optional[float] = None) -> float:
        return self.integrate(lambda x: 1.0, tol, 'g_n mass')

    def pff_factor(self) -> PolyaFrequency:
        """prod (1 + i alpha xi)^{-1}: the linear phases cancel against b = sum alpha"""
        atoms = tuple(alpha for alpha in self.zeros if alpha != 0.0)
        return PolyaFrequency(0.0, math.fsum(atoms), atoms)

    def pff_phi(self):
        return pff_phi(self.pff_factor())

    def check_nonnegative(self, xs, tol: Optional[float] = None) -> tuple:
        """(min, max) of g_n over xs; ConsistencyError below -tol * max"""
        tol = tol or get_tolerance()
        values = self.sample(xs)
        low, high = float(values.min()), float(values.max())
        if low < -tol * max(high, 0.0):
            raise ConsistencyError(
                'g_n went negative; zeros and derivative disagree', minimum=low, maximum=high
            )
        return low, high


def default_grid(g: GnFunction, count: int = 2001) -> np.ndarray:
    inner = sorted(g.zeros) or [0.0]
    half = 2.0 * max(abs(inner[0]), abs(inner[-1]), 1.0)
    lo = 0.0 if g.base.support_lower is not None else -half
    return np.linspace(lo, half, count)


def gn_build(f: ExactDensity, n: int, verify: bool = True) -> GnFunction:
    """
    g_n from the certified zeros of f^{(n)}. With verify, nonnegativity on the
    default grid and the mass of f (within the identity tolerance) are enforced.
    """
    if n == 0:
        return GnFunction(0, f, ())
    table = sign_changes(f, n)
    if table.sign_change_count != n:
        raise PreconditionError(
            f'f^({n}) changes sign {table.sign_change_count} times; g_n needs exactly {n}'
        )
    g = GnFunction(n, f, tuple(m / n for m in table.midpoints()))
    if verify:
        g.check_nonnegative(default_grid(g))
        defect = mass_defect(g)
        if defect > get_identity_tolerance():
            raise ConsistencyError(f'g_{n} does not carry the mass of f', mass_defect=defect)
    return g


def mass_defect(g: GnFunction, tol: Optional[float] = None) -> float:
    """|int g_n - int f| / int f"""
    target = g.base.total_mass()
    return abs(g.mass(tol) - target) / abs(target)


def amcm_factor_transform(g: GnFunction, xi: float, tol: Optional[float] = None) -> complex:
    """int g_n(x) / (1 + i xi x) dx"""
    xi = float(xi)
    re = g.integrate(lambda x: 1.0 / (1.0 + (xi * x) ** 2), tol, 'AM-CM factor (re)')
    im = g.integrate(lambda x: -xi * x / (1.0 + (xi * x) ** 2), tol, 'AM-CM factor (im)')
    return complex(re, im)


def bernstein_transform(g: GnFunction, xi: float, tol: Optional[float] = None) -> complex:
    """
    Same transform through the Bernstein densities g_n(+-1/t) / t on (0, inf):
    int mu_plus(t) / (t + i xi) dt + int mu_minus(t) / (t - i xi) dt.
    """
    tol = tol or get_tolerance()
    xi = float(xi)
    sides = [1.0] if g.base.support_lower is not None else [1.0, -1.0]
    total = 0.0 + 0.0j
    for side in sides:
        breaks = sorted(1.0 / abs(a) for a in g.zeros if a * side > 0)

        def density(t, side=side):
            return g(side / t) / t if t > 0 else 0.0

        def re(t, side=side):
            return density(t) * t / (t * t + xi * xi)

        def im(t, side=side):
            return -side * density(t) * xi / (t * t + xi * xi)

        top = (breaks[-1] if breaks else 1.0) + 1.0
        for lo, hi in ((0.0, top), (top, math.inf)):
            pts = breaks if math.isfinite(hi) else None
            total += complex(
                adaptive_quad(re, lo, hi, tol, 'Bernstein form (re)', pts),
                adaptive_quad(im, lo, hi, tol, 'Bernstein form (im)', pts),
            )
    return total


def verify_factor_identity(
    f: ExactDensity, n: int, xi: float, tol: Optional[float] = None
) -> float:
    """
    Relative residual between the order-n Post approximant and
    prod (1 + i alpha xi)^{-1} * int g_n / (1 + i xi x). Exact identity, so the
    residual measures quadrature error only.
    """
    if n == 0:
        return 0.0
    g = gn_build(f, n, verify=False)
    left = post_approximant(f, xi, n, tol=tol)
    right = pff_transform(g.pff_factor(), xi) * amcm_factor_transform(g, xi, tol)
    return abs(left - right) / abs(left)


def identity_holds(f: ExactDensity, n: int, xi: float, tol: Optional[float] = None) -> bool:
    return verify_factor_identity(f, n, xi, tol) <= get_identity_tolerance()
