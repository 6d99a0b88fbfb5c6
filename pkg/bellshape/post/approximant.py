# Post-type approximants of the Fourier transform:
#
#   Phi_n(xi) = n^{n+1} / (n! (i xi)^n) * int f^{(n)}(n x) / (1 + i xi x) dx
#             = n * int f(n x) (1 + i xi x)^{-n-1} dx
#
# The two lines agree by n integrations by parts. The first (direct) form
# cancels catastrophically, so it runs in a private mpmath context with enough
# digits to absorb the prefactor; the second (moment) form is a plain
# oscillatory integral and takes over above the direct cap.

import math
from dataclasses import dataclass
from typing import Optional

import mpmath

from ..core.config.numerics_config import (
    get_derivative_cap,
    get_identity_tolerance,
    get_post_cap,
    get_post_direct_cap,
    get_post_guard_digits,
    get_tolerance,
)
from ..core.errors import BellshapeRangeError, DomainError, NumericalError, StructuralError
from ..core.parallel import parallel_map
from ..exact.derivatives import sign_changes
from ..exact.families import ExactDensity
from ..shape.kernels import adaptive_quad

METHODS = ('auto', 'direct', 'moment')


@dataclass(frozen=True)
class PostValue:
    n: int
    xi: float
    value: complex
    target: complex
    method: str

    @property
    def relative_error(self) -> float:
        return abs(self.value - self.target) / abs(self.target)

    def to_row(self):
        return (
            self.n,
            self.xi,
            self.value.real,
            self.value.imag,
            self.target.real,
            self.target.imag,
            self.relative_error,
        )


def _check(xi: float, n: int, method: str):
    if method not in METHODS:
        raise StructuralError(f"unknown method '{method}', expected one of {METHODS}")
    if xi == 0:
        raise DomainError('Post approximants are taken at xi != 0')
    if int(n) != n or n < 1:
        raise DomainError(f'Post approximants need an integer n >= 1, got {n}')
    if n > get_post_cap():
        raise BellshapeRangeError(f'order {n} exceeds the approximant cap {get_post_cap()}')


def _direct_digits(f: ExactDensity, n: int, xi: float, zeros: list) -> int:
    """Working precision covering the cancellation between integrand peaks and the result"""
    log_prefactor = (n + 1) * math.log(n) - math.lgamma(n + 1) - n * math.log(abs(xi))
    zeros = sorted(zeros)
    probes = [0.5 * (a + b) for a, b in zip(zeros, zeros[1:])]
    if zeros:
        low = 0.5 * zeros[0] if f.support_lower is not None else zeros[0] - 1.0
        probes += [low, zeros[-1] + 1.0]
    else:
        probes.append(1.0)
    log_peak = max(f.derivative_sign_log(n, y)[1] for y in probes)
    digits = max(log_prefactor + log_peak, 0.0) / math.log(10.0)
    return get_post_guard_digits() + int(math.ceil(digits))


def direct_form(f: ExactDensity, xi: float, n: int) -> complex:
    if n > min(get_post_direct_cap(), get_derivative_cap()):
        raise BellshapeRangeError(f'direct form is capped at n = {get_post_direct_cap()}')
    zeros = sign_changes(f, n).midpoints()
    ctx = mpmath.MPContext()
    ctx.dps = _direct_digits(f, n, xi, zeros)
    derivative = f.mp_evaluator(ctx, n)
    z = ctx.mpc(0, xi)

    def integrand(x):
        y = n * x
        if not f.in_support(float(y)):
            return ctx.zero
        return derivative(y) / (1 + z * x)

    start = ctx.zero if f.support_lower is not None else ctx.ninf
    points = [start] + [ctx.mpf(w) / n for w in sorted(zeros)] + [ctx.inf]
    integral, error = ctx.quad(integrand, points, error=True)
    prefactor = ctx.mpf(n) ** (n + 1) / ctx.factorial(n) / z**n
    value = complex(prefactor * integral)
    achieved = float(abs(prefactor) * error)
    if achieved > get_identity_tolerance() * max(abs(value), 1e-300):
        raise NumericalError('direct Post integral did not converge', achieved=achieved, n=n)
    return value


def moment_form(f: ExactDensity, xi: float, n: int, tol: Optional[float] = None) -> complex:
    """int f(y) (1 + i xi y / n)^{-n-1} dy, panels split at n / |xi|"""
    tol = tol or get_tolerance()
    scale = n / abs(xi)

    def kernel(y):
        t = xi * y / n
        log_modulus = -0.5 * (n + 1) * math.log1p(t * t)
        return math.exp(log_modulus), -(n + 1) * math.atan(t)

    def re(y):
        r, theta = kernel(y)
        return f.value(y) * r * math.cos(theta)

    def im(y):
        r, theta = kernel(y)
        return f.value(y) * r * math.sin(theta)

    panels = [(0.0, scale), (scale, math.inf)]
    if f.support_lower is None:
        panels += [(-scale, 0.0), (-math.inf, -scale)]
    total = 0.0 + 0.0j
    for lo, hi in panels:
        total += complex(
            adaptive_quad(re, lo, hi, tol, 'Post moment (re)'),
            adaptive_quad(im, lo, hi, tol, 'Post moment (im)'),
        )
    return total


def post_approximant(
    f: ExactDensity, xi: float, n: int, method: str = 'auto', tol: Optional[float] = None
) -> complex:
    """Order-n Post approximant of f's Fourier transform at xi"""
    xi = float(xi)
    _check(xi, n, method)
    if method == 'auto':
        method = 'direct' if n <= get_post_direct_cap() else 'moment'
    if method == 'direct':
        return direct_form(f, xi, n)
    return moment_form(f, xi, n, tol)


def post_table(f: ExactDensity, xis, orders, method='auto', tol=None, threads=None) -> list:
    """PostValue for every (n, xi), orders outer, rows in input order"""
    jobs = [(int(n), float(xi)) for n in orders for xi in xis]

    def run(job):
        n, xi = job
        value = post_approximant(f, xi, n, method, tol)
        used = method if method != 'auto' else (
            'direct' if n <= get_post_direct_cap() else 'moment'
        )
        return PostValue(n, xi, value, f.fourier_transform(xi), used)

    return parallel_map(run, jobs, threads)
