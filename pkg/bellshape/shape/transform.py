# Fourier transform of a bell-shaped function from its parameters, and the
# parameter algebra around it (convolution roots and powers, convolutions,
# derivative shifts, the integrable normalisation).

import cmath
import math
from typing import Optional

from ..core.config.numerics_config import get_tolerance
from ..core.errors import DomainError
from ..core.parallel import parallel_map
from .adapter import CallablePhi
from .kernels import phi_integrals
from .params import BellParams
from .phi import PhiFunction, Step


def log_transform(params: BellParams, xi: float, tol: Optional[float] = None) -> complex:
    """
    Continuous logarithm of Phi(xi): re = log|Phi|, im = arg Phi.

    Raises DomainError at xi = 0, NumericalError when a power-tail quadrature
    misses tol.
    """
    xi = float(xi)
    if xi == 0.0:
        raise DomainError('the representation is evaluated at xi != 0 only')
    tol = tol or get_tolerance()
    re_int, im_int = phi_integrals(params.phi, xi, tol)
    re_log = -params.a * xi * xi + params.c + re_int
    im_log = -params.b * xi - xi * im_int
    return complex(re_log, im_log)


def transform(params: BellParams, xi: float, tol: Optional[float] = None) -> complex:
    return cmath.exp(log_transform(params, xi, tol))


def transform_grid(params: BellParams, xis, tol=None, threads=None) -> list:
    """log_transform on many points, order preserved"""
    return parallel_map(lambda xi: log_transform(params, xi, tol), xis, threads)


# ----- parameter algebra -----


def convolution_root(params: BellParams, n: int) -> BellParams:
    """Parameters of the n-th convolution root: everything divided by n"""
    if int(n) != n or n < 1:
        raise DomainError(f'convolution root needs an integer n >= 1, got {n}')
    return BellParams(
        params.a / n, params.b / n, params.c / n, _scaled_phi(params.phi, 1.0 / n)
    )


def convolution_power(params: BellParams, n: int) -> BellParams:
    """Parameters of the n-fold convolution f * ... * f"""
    if int(n) != n or n < 1:
        raise DomainError(f'convolution power needs an integer n >= 1, got {n}')
    return BellParams(params.a * n, params.b * n, params.c * n, _scaled_phi(params.phi, float(n)))


def convolve(first: BellParams, second: BellParams) -> BellParams:
    """Parameters of f1 * f2; the summed phi may fail level crossing"""
    return BellParams(
        first.a + second.a, first.b + second.b, first.c + second.c, first.phi + second.phi
    )


def derivative_shift(params: BellParams, p: float) -> BellParams:
    """
    Parameters of f + p f', whose transform is (1 + i p xi) Phi(xi).

    phi loses a unit step at 1/p; (b, c) absorb the compensator terms of the
    step integral, which depend on whether |1/p| reaches the unit interval.
    """
    p = float(p)
    if p == 0.0:
        raise DomainError('derivative shift needs p != 0')
    if isinstance(params.phi, CallablePhi):
        raise DomainError('derivative shift needs a piecewise phi')
    location = 1.0 / p
    phi = params.phi.with_steps([Step(location, -1.0)])
    if abs(location) >= 1.0:
        return BellParams(params.a, params.b - p, params.c, phi)
    return BellParams(
        params.a, params.b - math.copysign(1.0, p), params.c + math.log(abs(p)), phi
    )


def pin_drift(residual: complex, xi_ref: float) -> tuple:
    """
    (c_correction, b_correction) absorbing a residual C - i B xi measured at xi_ref.
    """
    return residual.real, -residual.imag / xi_ref


# ----- integrable normalisation -----


def origin_integral(phi: PhiFunction) -> float:
    """Integral of phi(s)/s over (-1, 1), exact"""
    if isinstance(phi, CallablePhi):
        raise DomainError('origin integral needs a piecewise phi')
    total = 0.0
    for seg in phi.segments:
        lo, hi = max(seg.left, -1.0), min(seg.right, 1.0)
        if lo >= hi:
            continue
        if seg.intercept:
            if lo == 0.0 or hi == 0.0:
                raise DomainError('phi(s)/s is not integrable at 0; f is not integrable')
            total += seg.intercept * math.log(hi / lo)
        total += seg.slope * (hi - lo)
        if seg.has_power:
            a, b = abs(lo), abs(hi)
            total += seg.coefficient * abs(b**seg.exponent - a**seg.exponent) / seg.exponent
    return total


def from_integrable(a: float, b: float, c_int: float, phi: PhiFunction) -> BellParams:
    """Main-representation parameters from the integrable form's constant"""
    return BellParams(a, b, -c_int - origin_integral(phi), phi)


def to_integrable(params: BellParams) -> float:
    """The integrable form's constant for these parameters"""
    return -params.c - origin_integral(params.phi)


def total_mass(params: BellParams) -> float:
    """Integral of f, i.e. Phi(0) = exp(-c_int) for integrable f"""
    return math.exp(-to_integrable(params))


def _scaled_phi(phi, factor):
    if isinstance(phi, CallablePhi):
        return CallablePhi(
            lambda s, f=phi.func: factor * f(s), phi.left_exponent, phi.right_exponent, phi.ratio
        )
    return phi.scaled(factor)
