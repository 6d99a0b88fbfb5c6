# PFF densities on a grid and the variation-diminishing property.
#   pff_sample  - Fourier inversion of the PFF transform (oscillatory quadrature)
#   pff_kernel  - discrete kernel built from closed-form Gaussian / exponential factors
#   variation_diminishing_check - sign changes of test * h never exceed those of test

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import quad, trapezoid

from ..core.config.numerics_config import (
    get_kernel_leak_limit,
    get_kernel_scales,
    get_kernel_spacing,
    get_quad_limit,
    get_tolerance,
    get_vd_trials,
)
from ..core.errors import NumericalError, PreconditionError, StructuralError
from ..core.parallel import parallel_map
from .pff import PolyaFrequency


@dataclass(frozen=True)
class PffDensity:
    grid: np.ndarray
    values: np.ndarray
    mass: float


@dataclass(frozen=True)
class PiecewiseConstant:
    """values[i] on (breakpoints[i-1], breakpoints[i]); len(values) = len(breakpoints) + 1"""

    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        if len(self.values) != len(self.breakpoints) + 1:
            raise StructuralError('piecewise-constant test needs one more value than breakpoints')
        if any(b <= a for a, b in zip(self.breakpoints, self.breakpoints[1:])):
            raise StructuralError('breakpoints must be strictly increasing')

    def __call__(self, xs) -> np.ndarray:
        index = np.searchsorted(np.asarray(self.breakpoints, dtype=float), xs, side='right')
        return np.asarray(self.values, dtype=float)[index]

    def sign_changes(self) -> int:
        return count_sign_changes(np.asarray(self.values, dtype=float), 0.0)


@dataclass(frozen=True)
class VariationVerdict:
    holds: bool
    changes_before: int
    changes_after: int

    def to_dict(self):
        return {
            'holds': self.holds,
            'changes_before': self.changes_before,
            'changes_after': self.changes_after,
        }


def count_sign_changes(values: np.ndarray, zero_band: float) -> int:
    signs = np.sign(np.where(np.abs(values) <= zero_band, 0.0, values))
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


# ----- Fourier inversion -----


def _closed_form_single(h: PolyaFrequency, grid: np.ndarray) -> np.ndarray:
    alpha = h.atoms[0]
    y = (grid - h.b + alpha) / alpha
    with np.errstate(over='ignore'):
        return np.where(y > 0, np.exp(-np.where(y > 0, y, 0.0)) / abs(alpha), 0.0)


def pff_sample(h: PolyaFrequency, grid, tol: Optional[float] = None, threads=None) -> PffDensity:
    """
    Density of h on grid by Fourier inversion.

    The linear phase e^{i xi (sum alpha - b)} is factored out so the remaining
    transform is non-oscillating; each point is one cosine/sine Fourier
    integral on [0, inf). Needs a > 0 or at least two atoms.
    """
    if h.a == 0 and len(h.atoms) < 2:
        raise PreconditionError('Fourier inversion needs a > 0 or at least two atoms')
    tol = tol or get_tolerance()
    grid = np.asarray(grid, dtype=float)
    shift = float(np.sum(h.alphas)) - h.b
    alphas = h.alphas

    def reduced(xi):
        return np.exp(-h.a * xi * xi - np.sum(np.log1p(1j * alphas * xi)))

    def point(x):
        y = x + shift
        if y == 0:
            value = quad(lambda xi: reduced(xi).real, 0, np.inf, limit=get_quad_limit())[0]
        else:
            w = abs(y)
            cos_part = quad(
                lambda xi: reduced(xi).real, 0, np.inf, weight='cos', wvar=w, epsabs=tol
            )[0]
            sin_part = quad(
                lambda xi: reduced(xi).imag, 0, np.inf, weight='sin', wvar=w, epsabs=tol
            )[0]
            value = cos_part - math.copysign(1.0, y) * sin_part
        return value / math.pi

    values = np.array(parallel_map(point, grid, threads))
    if values.min() < -max(tol, 1e3 * tol * values.max()):
        raise NumericalError('inverted density went negative', minimum=float(values.min()))
    mass = float(trapezoid(values, grid))
    if abs(mass - 1.0) > get_kernel_leak_limit():
        raise NumericalError('grid does not cover the density', mass=mass)
    return PffDensity(grid, values, mass)


def pff_density_values(h: PolyaFrequency, grid, tol: Optional[float] = None) -> np.ndarray:
    """Density values on grid: closed form for a lone exponential, inversion otherwise"""
    grid = np.asarray(grid, dtype=float)
    if h.a == 0 and len(h.atoms) == 1:
        return _closed_form_single(h, grid)
    return pff_sample(h, grid, tol).values


# ----- discrete kernel -----


def _exponential_cells(alpha: float, edges: np.ndarray) -> np.ndarray:
    """Cell masses of alpha*E - alpha (E standard exponential)"""

    def cdf(x):
        y = (x + alpha) / alpha
        if alpha > 0:
            return np.where(y > 0, -np.expm1(-np.maximum(y, 0.0)), 0.0)
        return np.where(y > 0, np.exp(-np.maximum(y, 0.0)), 1.0)

    return np.diff(cdf(edges))


def pff_kernel(h: PolyaFrequency, spacing: Optional[float] = None):
    """
    (offsets, weights) of h on the lattice spacing * (-M..M), weights summing to
    the captured mass. Exponential factors use exact cell masses, the Gaussian
    factor point samples; the factors are combined by discrete convolution.
    """
    spacing = spacing or get_kernel_spacing()
    scales = get_kernel_scales()
    half_width = abs(h.b) + sum((scales + 1.0) * abs(alpha) for alpha in h.atoms)
    if h.a > 0:
        half_width += scales * math.sqrt(2.0 * h.a)
    m = int(math.ceil(half_width / spacing)) + 1
    offsets = spacing * np.arange(-m, m + 1)
    edges = np.concatenate([offsets - 0.5 * spacing, [offsets[-1] + 0.5 * spacing]])

    factors = []
    if h.a > 0:
        gauss = np.exp(-(offsets**2) / (4.0 * h.a))
        gauss *= spacing / math.sqrt(4.0 * math.pi * h.a)
        factors.append(gauss)
    for alpha in h.atoms:
        factors.append(_exponential_cells(alpha, edges))

    # the drift e^{-i b xi} shifts the density by b: a unit mass on the nearest node
    weights = np.zeros_like(offsets)
    weights[m + int(round(h.b / spacing))] = 1.0
    for factor in factors:
        weights = np.convolve(weights, factor)[m : m + 2 * m + 1]

    mass = float(weights.sum())
    if abs(mass - 1.0) > get_kernel_leak_limit():
        raise NumericalError('kernel grid too coarse or too short', mass=mass)
    return offsets, weights


def convolve_on_grid(test_values: np.ndarray, weights: np.ndarray) -> np.ndarray:
    m = (len(weights) - 1) // 2
    return np.convolve(test_values, weights)[m : m + len(test_values)]


def variation_diminishing_check(
    h: PolyaFrequency, test: PiecewiseConstant, grid, tol: Optional[float] = None
) -> VariationVerdict:
    """Sign changes of test * h against those of test, on a uniform grid"""
    grid = np.asarray(grid, dtype=float)
    steps = np.diff(grid)
    if grid.size < 2 or not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
        raise StructuralError('variation check needs a uniform grid')
    tol = tol or 1e-8
    _, weights = pff_kernel(h, float(steps[0]))
    smoothed = convolve_on_grid(test(grid), weights)
    before = test.sign_changes()
    after = count_sign_changes(smoothed, tol * float(np.max(np.abs(smoothed))))
    return VariationVerdict(after <= before, before, after)


def random_variation_trials(trials: Optional[int] = None, seed: int = 0) -> list:
    """Random PFFs against random piecewise-constant tests; every verdict should hold"""
    rng = np.random.default_rng(seed)
    grid = np.arange(-30.0, 30.0 + 1e-9, 0.02)
    verdicts = []
    for _ in range(trials or get_vd_trials()):
        count = int(rng.integers(1, 4))
        atoms = tuple(rng.choice([-1.0, 1.0]) * rng.uniform(0.3, 2.0) for _ in range(count))
        a = 0.0 if rng.random() < 0.5 else float(rng.uniform(0.05, 0.5))
        h = PolyaFrequency(a, float(rng.uniform(-1.0, 1.0)), atoms)
        pieces = int(rng.integers(2, 8))
        breakpoints = tuple(np.sort(rng.uniform(-10.0, 10.0, pieces - 1)))
        values = tuple(rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0) for _ in range(pieces))
        test = PiecewiseConstant(breakpoints, values)
        verdicts.append(variation_diminishing_check(h, test, grid))
    return verdicts
