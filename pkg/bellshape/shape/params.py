# Parameter set (a, b, c, phi) of a bell-shaped function.

from dataclasses import dataclass
from typing import Union

import sympy as sp

from ..core.errors import StructuralError
from ..core.utils.validation import require_finite, require_keys
from .adapter import CallablePhi
from .phi import PhiFunction


def parse_real(value, name: str = 'value') -> float:
    """Float from a number or a symbolic string such as 'log(pi) - 2/pi'"""
    if isinstance(value, str):
        try:
            value = float(sp.sympify(value).evalf(30))
        except (sp.SympifyError, TypeError) as exc:
            raise StructuralError(f"cannot read {name} from '{value}': {exc}")
    return require_finite(value, name)


@dataclass(frozen=True)
class BellParams:
    a: float
    b: float
    c: float
    phi: Union[PhiFunction, CallablePhi]

    def __post_init__(self):
        for name in ('a', 'b', 'c'):
            object.__setattr__(self, name, require_finite(getattr(self, name), name))
        if self.a < 0:
            raise StructuralError(f'a must be >= 0, got {self.a}')

    def replace(self, **changes) -> 'BellParams':
        values = {'a': self.a, 'b': self.b, 'c': self.c, 'phi': self.phi}
        values.update(changes)
        return BellParams(**values)

    def to_dict(self):
        if isinstance(self.phi, CallablePhi):
            raise StructuralError('callable phi has no table form')
        return {'a': self.a, 'b': self.b, 'c': self.c, 'phi': self.phi.to_dict()}

    @classmethod
    def from_dict(cls, data: dict) -> 'BellParams':
        require_keys(data, ['phi'], 'params')
        return cls(
            a=parse_real(data.get('a', 0.0), 'a'),
            b=parse_real(data.get('b', 0.0), 'b'),
            c=parse_real(data.get('c', 0.0), 'c'),
            phi=PhiFunction.from_dict(data['phi']),
        )
