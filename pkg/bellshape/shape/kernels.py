# Kernel integrals of the representation formula.
#   re part: int (s/(xi^2+s^2) - 1{|s|>=1}/s) phi(s) ds
#   im part: int (1/(xi^2+s^2) - 1{|s|>=1}/s^2) phi(s) ds
# Affine parts integrate in closed form; power-law terms and callables use
# adaptive quadrature on panels split at +-1 and +-|xi|.

import math

import numpy as np
from scipy.integrate import quad

from ..core.config.numerics_config import get_quad_limit
from ..core.errors import NumericalError
from .adapter import CallablePhi

HALF_PI = 0.5 * math.pi


def adaptive_quad(func, lo, hi, tol, what='integral', points=None):
    """scipy quad with the achieved accuracy checked against tol"""
    kwargs = {'epsabs': tol * 1e-3, 'epsrel': tol, 'limit': get_quad_limit(), 'full_output': 1}
    if points and math.isfinite(lo) and math.isfinite(hi):
        kwargs['points'] = [p for p in points if lo < p < hi]
    result = quad(func, lo, hi, **kwargs)
    value, abserr = result[0], result[1]
    if len(result) > 3 and abserr > 1e3 * max(tol * abs(value), tol):
        raise NumericalError(
            f'{what} did not converge on [{lo}, {hi}]', achieved=abserr, value=value
        )
    return value


def _atan(s, w):
    if math.isinf(s):
        return math.copysign(HALF_PI, s)
    return math.atan(s / w)


def _affine_antiderivative(m, b, s, xi2, w, compensated):
    """(re, im) antiderivatives of the kernels against m*s + b"""
    if compensated:
        if math.isinf(s):
            return -m * w * _atan(s, w), (b / w) * _atan(s, w)
        lg = math.log1p(xi2 / (s * s))
        re = -m * w * _atan(s, w) + 0.5 * b * lg
        im = 0.5 * m * lg + (b / w) * _atan(s, w) + b / s
        return re, im
    lg = math.log(xi2 + s * s)
    re = m * (s - w * _atan(s, w)) + 0.5 * b * lg
    im = 0.5 * m * lg + (b / w) * _atan(s, w)
    return re, im


def _power_panel(coef, p, xi2, u_lo, u_hi, tol):
    """int over u of coef * t**p / (xi^2 + t^2) with t = e**u"""

    def integrand(u):
        if u > 0:
            return coef * math.exp((p - 2.0) * u) / (xi2 * math.exp(-2.0 * u) + 1.0)
        return coef * math.exp(p * u) / (xi2 + math.exp(2.0 * u))

    return adaptive_quad(integrand, u_lo, u_hi, tol, 'power-tail integral')


def _power_integrals(amplitude, gamma, lo, hi, xi2, tol, compensated):
    """Kernel integrals of amplitude * t**gamma over positive t in [lo, hi]"""
    u_lo = math.log(lo) if lo > 0 else -math.inf
    u_hi = math.log(hi) if math.isfinite(hi) else math.inf
    cuts = [u_lo]
    u_w = 0.5 * math.log(xi2)
    if u_lo < u_w < u_hi:
        cuts.append(u_w)
    cuts.append(u_hi)
    if compensated:
        terms = ((-xi2 * amplitude, gamma), (-xi2 * amplitude, gamma - 1.0))
    else:
        terms = ((amplitude, gamma + 2.0), (amplitude, gamma + 1.0))
    out = []
    for coef, p in terms:
        out.append(sum(_power_panel(coef, p, xi2, a, b, tol) for a, b in zip(cuts, cuts[1:])))
    return out[0], out[1]


def _split_at_unit(left, right):
    """Sub-intervals of (left, right) with their compensation flag"""
    cuts = [left] + [c for c in (-1.0, 1.0) if left < c < right] + [right]
    for a, b in zip(cuts, cuts[1:]):
        yield a, b, (b <= -1.0 or a >= 1.0)


def phi_integrals(phi, xi: float, tol: float):
    """(re, im) kernel integrals of phi at xi != 0"""
    if isinstance(phi, CallablePhi):
        return _callable_integrals(phi, xi, tol)
    xi2 = xi * xi
    w = abs(xi)
    re_total = 0.0
    im_total = 0.0
    for seg in phi.segments:
        for lo, hi, compensated in _split_at_unit(seg.left, seg.right):
            if seg.slope or seg.intercept:
                re_hi, im_hi = _affine_antiderivative(
                    seg.slope, seg.intercept, hi, xi2, w, compensated
                )
                re_lo, im_lo = _affine_antiderivative(
                    seg.slope, seg.intercept, lo, xi2, w, compensated
                )
                re_total += re_hi - re_lo
                im_total += im_hi - im_lo
            if seg.has_power:
                if lo >= 0:
                    re, im = _power_integrals(
                        seg.coefficient, seg.exponent, lo, hi, xi2, tol, compensated
                    )
                    re_total += re
                    im_total += im
                else:
                    re, im = _power_integrals(
                        seg.coefficient, seg.exponent, -hi, -lo, xi2, tol, compensated
                    )
                    re_total += re
                    im_total -= im
    return re_total, im_total


def _callable_integrals(phi: CallablePhi, xi: float, tol: float):
    xi2 = xi * xi
    w = abs(xi)

    def kernel_re(s, compensated):
        k = s / (xi2 + s * s)
        return k - 1.0 / s if compensated else k

    def kernel_im(s, compensated):
        k = 1.0 / (xi2 + s * s)
        return k - 1.0 / (s * s) if compensated else k

    pieces = [(-np.inf, -1.0, True), (-1.0, 0.0, False), (0.0, 1.0, False), (1.0, np.inf, True)]
    re_total = im_total = 0.0
    for lo, hi, comp in pieces:
        points = [w, -w]
        re_total += adaptive_quad(
            lambda s, c=comp: kernel_re(s, c) * phi.func(s), lo, hi, tol, 'kernel integral', points
        )
        im_total += adaptive_quad(
            lambda s, c=comp: kernel_im(s, c) * phi.func(s), lo, hi, tol, 'kernel integral', points
        )
    return re_total, im_total
