# Whale-shaped functions of order m: m exponential factors convolved with a
# completely monotone function given by a finite Bernstein measure. With
# distinct rates the convolution is an exponential sum on (0, inf) whose
# coefficients come from exact partial fractions.

import math
from dataclasses import dataclass
from fractions import Fraction

from ..core.errors import StructuralError, UnsupportedError
from ..core.utils.validation import require_keys
from ..exact.polynomials import to_fraction, to_rational
from ..factors.amcm import AmCmFunction, BernsteinMeasure, amcm_transform
from ..factors.pff import PolyaFrequency, pff_bell_params, pff_transform
from ..shape.params import BellParams
from .density import ExponentialSum, WhaleConv


def _exact(value) -> Fraction:
    return to_fraction(to_rational(value))


@dataclass(frozen=True)
class WhaleSpec:
    """rates: exponential factor scales alpha_j; cm_atoms: (location, mass) pairs"""

    rates: tuple
    cm_atoms: tuple

    def __post_init__(self):
        rates = tuple(_exact(r) for r in self.rates)
        atoms = tuple((_exact(loc), _exact(mass)) for loc, mass in self.cm_atoms)
        if any(r <= 0 for r in rates):
            raise StructuralError('exponential factor scales must be positive')
        if not atoms:
            raise StructuralError('the completely monotone part needs at least one atom')
        if any(loc <= 0 or mass <= 0 for loc, mass in atoms):
            raise StructuralError('completely monotone atoms need positive location and mass')
        object.__setattr__(self, 'rates', rates)
        object.__setattr__(self, 'cm_atoms', atoms)

    @property
    def order(self) -> int:
        return len(self.rates)

    @property
    def decay_rates(self) -> tuple:
        """1 / alpha_j, the exponents of the exponential factors"""
        return tuple(1 / r for r in self.rates)

    def pff_factor(self) -> PolyaFrequency:
        """prod (1 + i alpha_j xi)^{-1}"""
        atoms = tuple(float(r) for r in self.rates)
        return PolyaFrequency(0.0, math.fsum(atoms), atoms)

    def amcm_factor(self) -> AmCmFunction:
        measure = BernsteinMeasure(tuple((float(loc), float(m)) for loc, m in self.cm_atoms))
        return AmCmFunction(mu_plus=measure)

    def to_dict(self):
        return {
            'rates': [str(r) for r in self.rates],
            'cm_atoms': [[str(loc), str(m)] for loc, m in self.cm_atoms],
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'WhaleSpec':
        require_keys(data, ['cm_atoms'], 'whale')
        atoms = []
        for atom in data['cm_atoms']:
            if len(atom) != 2:
                raise StructuralError(f'cm atom must be [location, mass], got {atom}')
            atoms.append((atom[0], atom[1]))
        return cls(tuple(data.get('rates', [])), tuple(atoms))


def _inverse_of_simple_poles(poles) -> list:
    """[(w_k, rho_k)] with sum_k w_k e^{-rho_k x} the inverse of prod_k 1/(s + rho_k)"""
    out = []
    for k, rho in enumerate(poles):
        weight = Fraction(1)
        for j, other in enumerate(poles):
            if j != k:
                weight /= other - rho
        out.append((weight, rho))
    return out


def whale_build(spec: WhaleSpec) -> WhaleConv:
    """
    Closed form of E_1 * ... * E_m * g with E_j the exponential density of
    scale alpha_j and g(x) = sum mass e^{-location x}.
    """
    decay = spec.decay_rates
    if len(set(decay)) != len(decay):
        raise UnsupportedError('coinciding exponential rates need polynomial-exponential terms')
    locations = {loc for loc, _ in spec.cm_atoms}
    if locations & set(decay):
        raise UnsupportedError('an exponential rate coincides with a completely monotone atom')
    scale = Fraction(1)
    for r in decay:
        scale *= r
    terms = []
    for location, mass in spec.cm_atoms:
        for weight, rho in _inverse_of_simple_poles(decay + (location,)):
            terms.append((mass * scale * weight, rho))
    return WhaleConv(ExponentialSum(tuple(terms)), spec)


def whale_transform(spec: WhaleSpec, xi: float) -> complex:
    """PFF factor times AM-CM factor"""
    return pff_transform(spec.pff_factor(), xi) * amcm_transform(spec.amcm_factor(), xi)


def whale_params(spec: WhaleSpec, gaussian: float = 0.0) -> BellParams:
    """
    Bell parameters of the whale times the Gaussian transform factor
    e^{-gaussian xi^2}. A single completely monotone atom
    mass * e^{-s x} is (mass / s) times one more exponential factor of scale
    1 / s, so phi is a staircase with steps at 1 / alpha_j and at s.
    """
    if len(spec.cm_atoms) != 1:
        raise UnsupportedError('bell parameters are built for a single completely monotone atom')
    location, mass = spec.cm_atoms[0]
    atoms = tuple(float(r) for r in spec.rates) + (float(1 / location),)
    h = PolyaFrequency(gaussian, math.fsum(atoms), atoms)
    params = pff_bell_params(h)
    return params.replace(c=params.c + math.log(float(mass / location)))


def transform_residual(spec: WhaleSpec, xis) -> float:
    """Worst relative gap between the factor product and the built exponential sum"""
    f = whale_build(spec)
    worst = 0.0
    for xi in xis:
        exact = f.fourier_transform(float(xi))
        worst = max(worst, abs(whale_transform(spec, float(xi)) - exact) / abs(exact))
    return worst
