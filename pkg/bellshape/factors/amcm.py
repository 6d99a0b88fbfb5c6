# AM-CM functions: completely monotone on (0, inf), absolutely monotone on
# (-inf, 0), described by Bernstein measures mu_plus / mu_minus plus an atom
# of mass m at the origin.

import math
from dataclasses import dataclass, field
from typing import Optional

import mpmath
import numpy as np
from scipy.integrate import quad

from ..core.config.numerics_config import get_quad_limit
from ..core.errors import DomainError, StructuralError, UnsupportedError
from ..core.utils.validation import require_finite, require_keys


@dataclass(frozen=True)
class PiecewiseDensity:
    """Piecewise-affine nonnegative density on [knots[0], knots[-1]], zero outside"""

    knots: tuple
    values: tuple

    def __post_init__(self):
        knots = tuple(require_finite(k, 'density knot') for k in self.knots)
        values = tuple(require_finite(v, 'density value') for v in self.values)
        if len(knots) != len(values) or len(knots) < 2:
            raise StructuralError('density needs matching knots and values (at least two)')
        if any(b <= a for a, b in zip(knots, knots[1:])):
            raise StructuralError('density knots must be strictly increasing')
        if knots[0] < 0:
            raise StructuralError('Bernstein densities live on [0, inf)')
        if any(v < 0 for v in values):
            raise StructuralError('negative mass in Bernstein density')
        object.__setattr__(self, 'knots', knots)
        object.__setattr__(self, 'values', values)

    def panels(self):
        for i in range(len(self.knots) - 1):
            lo, hi = self.knots[i], self.knots[i + 1]
            v0, v1 = self.values[i], self.values[i + 1]
            slope = (v1 - v0) / (hi - lo)
            yield lo, hi, (lambda s, lo=lo, v0=v0, slope=slope: v0 + slope * (s - lo))

    def integrate(self, weight) -> float:
        return math.fsum(
            quad(lambda s, d=density: d(s) * weight(s), lo, hi, limit=get_quad_limit())[0]
            for lo, hi, density in self.panels()
        )

    def to_dict(self):
        return {'knots': list(self.knots), 'values': list(self.values)}


@dataclass(frozen=True)
class BernsteinMeasure:
    atoms: tuple = ()
    density: Optional[PiecewiseDensity] = None

    def __post_init__(self):
        atoms = []
        for loc, mass in self.atoms:
            loc, mass = require_finite(loc, 'atom location'), require_finite(mass, 'atom mass')
            if loc < 0:
                raise StructuralError('Bernstein atoms live on [0, inf)')
            if mass < 0:
                raise StructuralError(f'negative mass {mass} at {loc}')
            atoms.append((loc, mass))
        object.__setattr__(self, 'atoms', tuple(sorted(atoms)))

    def laplace(self, x: float) -> float:
        """Integral of e^{-s x} against the measure (x >= 0)"""
        total = math.fsum(mass * math.exp(-loc * x) for loc, mass in self.atoms)
        if self.density is not None:
            total += self.density.integrate(lambda s: math.exp(-s * x))
        return total

    def stieltjes(self, z: complex) -> complex:
        """Integral of 1 / (z + s) against the measure"""
        if any(z + loc == 0 for loc, _ in self.atoms):
            raise DomainError(f'Stieltjes transform has a pole at z = {z}')
        total = sum(mass / (z + loc) for loc, mass in self.atoms)
        if self.density is not None:
            re = self.density.integrate(lambda s: ((z + s).conjugate() / abs(z + s) ** 2).real)
            im = self.density.integrate(lambda s: ((z + s).conjugate() / abs(z + s) ** 2).imag)
            total += complex(re, im)
        return complex(total)

    def to_dict(self):
        data = {'atoms': [list(a) for a in self.atoms]}
        if self.density is not None:
            data['density'] = self.density.to_dict()
        return data

    @classmethod
    def from_dict(cls, data: Optional[dict]) -> 'BernsteinMeasure':
        if not data:
            return cls()
        density = None
        if data.get('density'):
            require_keys(data['density'], ['knots', 'values'], 'density')
            density = PiecewiseDensity(
                tuple(float(k) for k in data['density']['knots']),
                tuple(float(v) for v in data['density']['values']),
            )
        return cls(tuple((float(a[0]), float(a[1])) for a in data.get('atoms', [])), density)


@dataclass(frozen=True)
class AmCmFunction:
    mu_plus: BernsteinMeasure = field(default_factory=BernsteinMeasure)
    mu_minus: BernsteinMeasure = field(default_factory=BernsteinMeasure)
    atom_mass: float = 0.0

    def __post_init__(self):
        if require_finite(self.atom_mass, 'atom_mass') < 0:
            raise StructuralError('atom mass at the origin must be >= 0')

    def to_dict(self):
        return {
            'atom_mass': self.atom_mass,
            'mu_plus': self.mu_plus.to_dict(),
            'mu_minus': self.mu_minus.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'AmCmFunction':
        return cls(
            BernsteinMeasure.from_dict(data.get('mu_plus')),
            BernsteinMeasure.from_dict(data.get('mu_minus')),
            float(data.get('atom_mass', 0.0)),
        )


@dataclass(frozen=True)
class SpotcheckVerdict:
    passed: bool
    checked: int
    failures: tuple = ()

    def to_dict(self):
        return {'passed': self.passed, 'checked': self.checked, 'failures': list(self.failures)}


def amcm_eval(g: AmCmFunction, x: float) -> float:
    """g(x): Laplace transform of mu_plus at x for x >= 0, of mu_minus at -x for x < 0"""
    x = float(x)
    if x >= 0:
        return g.mu_plus.laplace(x)
    return g.mu_minus.laplace(-x)


def amcm_transform(g: AmCmFunction, xi: float) -> complex:
    """m + int mu_plus(ds) / (i xi + s) - int mu_minus(ds) / (i xi - s)"""
    z = 1j * float(xi)
    return g.atom_mass + g.mu_plus.stieltjes(z) + g.mu_minus.stieltjes(-z)


def amcm_mass(g: AmCmFunction) -> float:
    """Integral of g (with the origin atom): the transform at 0"""
    return amcm_transform(g, 0.0).real


def cm_spotcheck(g, x_points, j_max: int, step: float = 0.05) -> SpotcheckVerdict:
    """
    Forward differences of the evaluated function: (-1)^j Delta_h^j G(t) >= 0
    at t = |x| for j <= j_max, with G(t) = g(t) for x > 0 and G(t) = g(-t) for
    x < 0. An AmCmFunction is evaluated from its atoms in extended precision;
    any other callable g is sampled as given.
    """
    if step <= 0:
        raise DomainError(f'difference step must be positive, got {step}')
    mp = mpmath.MPContext()
    mp.dps = 50
    evaluate = _atom_evaluator(g, mp) if isinstance(g, AmCmFunction) else _callable_evaluator(g, mp)
    h = mp.mpf(step)
    failures = []
    checked = 0
    for x in x_points:
        if x == 0:
            continue
        side = 1 if x > 0 else -1
        t = mp.mpf(abs(x))
        diffs = [evaluate(side, t + i * h) for i in range(j_max + 1)]
        for j in range(j_max + 1):
            if j:
                diffs = [b - a for a, b in zip(diffs, diffs[1:])]
            value = diffs[0] if j % 2 == 0 else -diffs[0]
            checked += 1
            if value < 0:
                failures.append((float(x), j, float(value)))
    return SpotcheckVerdict(not failures, checked, tuple(failures))


def _atom_evaluator(g: AmCmFunction, mp):
    if g.mu_plus.density is not None or g.mu_minus.density is not None:
        raise UnsupportedError('extended-precision spot checks use atom-only measures')

    def evaluate(side, t):
        measure = g.mu_plus if side > 0 else g.mu_minus
        return mp.fsum(mp.mpf(m) * mp.exp(-mp.mpf(s) * t) for s, m in measure.atoms)

    return evaluate


def _callable_evaluator(func, mp):
    def evaluate(side, t):
        return mp.mpf(float(func(side * float(t))))

    return evaluate


def sample_amcm(g: AmCmFunction, xs) -> np.ndarray:
    return np.array([amcm_eval(g, x) for x in xs])
