# Polya frequency functions: e^{-a xi^2 - i b xi} prod e^{i alpha xi} / (1 + i alpha xi)

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..core.config.numerics_config import get_xi_ref
from ..core.errors import StructuralError
from ..core.utils.validation import require_finite, require_keys
from ..shape.params import BellParams, parse_real
from ..shape.phi import PhiFunction, step_phi
from ..shape.transform import log_transform, pin_drift


@dataclass(frozen=True)
class PolyaFrequency:
    a: float = 0.0
    b: float = 0.0
    atoms: tuple = ()

    def __post_init__(self):
        require_finite(self.a, 'a')
        require_finite(self.b, 'b')
        if self.a < 0:
            raise StructuralError(f'a must be >= 0, got {self.a}')
        atoms = tuple(sorted(require_finite(alpha, 'atom') for alpha in self.atoms))
        if any(alpha == 0 for alpha in atoms):
            raise StructuralError('PFF atoms must be nonzero')
        object.__setattr__(self, 'atoms', atoms)

    @property
    def alphas(self) -> np.ndarray:
        return np.asarray(self.atoms, dtype=float)

    def to_dict(self):
        return {'a': self.a, 'b': self.b, 'atoms': list(self.atoms)}

    @classmethod
    def from_dict(cls, data: dict) -> 'PolyaFrequency':
        require_keys(data, ['atoms'], 'pff')
        return cls(
            a=parse_real(data.get('a', 0.0), 'a'),
            b=parse_real(data.get('b', 0.0), 'b'),
            atoms=tuple(parse_real(alpha, 'atom') for alpha in data['atoms']),
        )


def pff_log_transform(h: PolyaFrequency, xi: float) -> complex:
    """Sum of per-factor principal logs; continuous in xi since Re(1 + i alpha xi) = 1"""
    xi = float(xi)
    z = 1j * h.alphas * xi
    return complex(-h.a * xi * xi - 1j * h.b * xi + np.sum(z - np.log1p(z)))


def pff_transform(h: PolyaFrequency, xi: float) -> complex:
    """Transform of the PFF at xi (xi = 0 gives 1)"""
    return complex(np.exp(pff_log_transform(h, xi)))


def pff_phi(h: PolyaFrequency) -> PhiFunction:
    """Step function with a unit jump at 1/alpha for every atom"""
    return step_phi([1.0 / alpha for alpha in h.atoms])


def pff_bell_params(h: PolyaFrequency, xi_ref: Optional[float] = None) -> BellParams:
    """
    (a, adjusted b, c, phi) reproducing pff_transform through the general
    representation. Atoms with |alpha| > 1 put their step inside the unit
    interval, which costs a constant and a linear phase pinned at xi_ref.
    """
    xi_ref = xi_ref or get_xi_ref()
    base = BellParams(h.a, 0.0, 0.0, pff_phi(h))
    residual = pff_log_transform(h, xi_ref) - log_transform(base, xi_ref)
    c_correction, b_correction = pin_drift(residual, xi_ref)
    return base.replace(b=b_correction, c=c_correction)


def second_moment_sum(h: PolyaFrequency) -> float:
    return float(math.fsum(alpha * alpha for alpha in h.atoms))
