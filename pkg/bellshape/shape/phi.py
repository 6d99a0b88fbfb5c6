# Piecewise description of the representing function phi.
# A PhiFunction is affine between knots, has a constant / affine / power-law
# tail on each side and may carry unit-style steps (PhiFunction-with-steps).
# Everything downstream works on the Segment list it produces.

import bisect
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ..core.errors import StructuralError, UnsupportedError
from ..core.utils.validation import require_finite, require_keys

TAIL_KINDS = ('constant', 'affine', 'power')


@dataclass(frozen=True)
class AffinePiece:
    slope: float
    intercept: float

    def to_dict(self):
        return {'slope': self.slope, 'intercept': self.intercept}


@dataclass(frozen=True)
class Tail:
    """
    Tail beyond the outermost knot:
        slope * s + intercept + sign(s) * coefficient * |s| ** exponent
    The JSON kinds 'constant', 'affine' and 'power' are special cases.
    """

    slope: float = 0.0
    intercept: float = 0.0
    coefficient: float = 0.0
    exponent: float = 0.0

    def __post_init__(self):
        for name in ('slope', 'intercept', 'coefficient', 'exponent'):
            require_finite(getattr(self, name), f'tail {name}')
        if self.coefficient < 0:
            raise StructuralError('power tail coefficient must be >= 0 (sign follows sign(s))')
        if self.coefficient and not 0 <= self.exponent < 2:
            raise StructuralError(f'power tail exponent must lie in [0, 2), got {self.exponent}')

    @property
    def kind(self) -> str:
        if self.coefficient:
            return 'power'
        return 'affine' if self.slope else 'constant'

    @classmethod
    def constant(cls, value: float):
        return cls(intercept=value)

    @classmethod
    def affine(cls, slope: float, intercept: float = 0.0):
        return cls(slope=slope, intercept=intercept)

    @classmethod
    def power(cls, coefficient: float, exponent: float, intercept: float = 0.0):
        return cls(intercept=intercept, coefficient=coefficient, exponent=exponent)

    def to_dict(self):
        if self.kind == 'constant':
            return {'kind': 'constant', 'value': self.intercept}
        if self.kind == 'affine':
            return {'kind': 'affine', 'slope': self.slope, 'intercept': self.intercept}
        data = {'kind': 'power', 'coefficient': self.coefficient, 'exponent': self.exponent}
        if self.intercept:
            data['intercept'] = self.intercept
        if self.slope:
            data['slope'] = self.slope
        return data

    @classmethod
    def from_dict(cls, data: dict):
        require_keys(data, ['kind'], 'tail')
        kind = data['kind']
        if kind not in TAIL_KINDS:
            raise StructuralError(f"unknown tail kind '{kind}'")
        if kind == 'constant':
            return cls.constant(float(data.get('value', 0.0)))
        if kind == 'affine':
            require_keys(data, ['slope'], 'affine tail')
            return cls.affine(float(data['slope']), float(data.get('intercept', 0.0)))
        require_keys(data, ['coefficient', 'exponent'], 'power tail')
        return cls(
            slope=float(data.get('slope', 0.0)),
            intercept=float(data.get('intercept', 0.0)),
            coefficient=float(data['coefficient']),
            exponent=float(data['exponent']),
        )


@dataclass(frozen=True)
class Step:
    """+height * 1[location, inf) for location > 0, -height * 1(-inf, location] for location < 0"""

    location: float
    height: float = 1.0

    def __post_init__(self):
        require_finite(self.location, 'step location')
        require_finite(self.height, 'step height')
        if self.location == 0:
            raise StructuralError('steps cannot sit at the origin')

    def contribution(self, left: float, right: float) -> float:
        # value carried on the open interval (left, right)
        if self.location > 0:
            return self.height if left >= self.location else 0.0
        return -self.height if right <= self.location else 0.0

    def to_dict(self):
        return {'location': self.location, 'height': self.height}


@dataclass(frozen=True)
class Segment:
    """phi on (left, right): slope*s + intercept + sign(s)*coefficient*|s|**exponent"""

    left: float
    right: float
    slope: float = 0.0
    intercept: float = 0.0
    coefficient: float = 0.0
    exponent: float = 0.0

    @property
    def has_power(self) -> bool:
        return self.coefficient != 0.0

    @property
    def is_constant(self) -> bool:
        return self.slope == 0.0 and not self.has_power

    @property
    def direction(self) -> int:
        if self.is_constant:
            return 0
        if self.slope >= 0 and self.coefficient >= 0:
            return 1
        if self.slope <= 0 and self.coefficient <= 0:
            return -1
        raise UnsupportedError('segment mixes increasing and decreasing terms')

    @property
    def side(self) -> int:
        return 1 if self.left >= 0 else -1

    def value(self, s: float) -> float:
        out = self.slope * s + self.intercept
        if self.has_power and s != 0:
            out += math.copysign(self.coefficient * abs(s) ** self.exponent, s)
        return out

    def limit(self, at: float) -> float:
        """Value approached from inside the segment at one of its endpoints"""
        if math.isinf(at):
            if self.slope:
                return math.copysign(math.inf, self.slope * at)
            if self.has_power:
                return math.copysign(math.inf, self.coefficient * at)
            return self.intercept
        return self.value(at)

    def level_root(self, level: float) -> float:
        """Point z in [left, right] where a monotone segment passes `level`"""
        direction = self.direction
        lo_val, hi_val = self.limit(self.left), self.limit(self.right)
        if direction > 0:
            if lo_val >= level:
                return self.left
            if hi_val <= level:
                return self.right
        else:
            if lo_val <= level:
                return self.left
            if hi_val >= level:
                return self.right

        if not self.has_power:
            root = (level - self.intercept) / self.slope
        elif self.slope == 0.0:
            gap = (level - self.intercept) * self.side / self.coefficient
            root = self.side * gap ** (1.0 / self.exponent)
        else:
            root = self._bracketed_root(level)
        return min(max(root, self.left), self.right)

    def _bracketed_root(self, level: float) -> float:
        from scipy.optimize import brentq

        lo, hi = self.left, self.right
        width = 1.0
        while math.isinf(lo):
            candidate = min(hi, 0.0) - width
            if (self.value(candidate) - level) * self.direction < 0:
                lo = candidate
            width *= 2.0
        width = 1.0
        while math.isinf(hi):
            candidate = max(lo, 0.0) + width
            if (self.value(candidate) - level) * self.direction > 0:
                hi = candidate
            width *= 2.0
        return brentq(lambda s: self.value(s) - level, lo, hi, xtol=1e-15, rtol=1e-15)


@dataclass(frozen=True)
class PhiFunction:
    knots: tuple
    pieces: tuple
    left_tail: Tail = field(default_factory=Tail)
    right_tail: Tail = field(default_factory=Tail)
    steps: tuple = ()

    def __post_init__(self):
        knots = tuple(require_finite(k, 'knot') for k in self.knots)
        if any(b <= a for a, b in zip(knots, knots[1:])):
            raise StructuralError('knots must be strictly increasing')
        if 0.0 not in knots:
            raise StructuralError('knots must include 0')
        pieces = tuple(
            p if isinstance(p, AffinePiece) else AffinePiece(float(p[0]), float(p[1]))
            for p in self.pieces
        )
        if len(pieces) != len(knots) - 1:
            raise StructuralError(
                f'{len(knots)} knots need {len(knots) - 1} pieces, got {len(pieces)}'
            )
        object.__setattr__(self, 'knots', knots)
        object.__setattr__(self, 'pieces', pieces)
        object.__setattr__(self, 'steps', merge_steps(self.steps))

    # ----- evaluation -----

    @cached_property
    def segments(self) -> tuple:
        """Segments covering the real line, split at knots, steps and 0"""
        points = sorted(set(self.knots) | {st.location for st in self.steps} | {0.0})
        bounds = [-math.inf] + points + [math.inf]
        out = []
        for left, right in zip(bounds, bounds[1:]):
            slope, intercept, coefficient, exponent = self.base_on(left, right)
            intercept += sum(st.contribution(left, right) for st in self.steps)
            if coefficient and exponent == 0.0:
                intercept += coefficient if left >= 0 else -coefficient
                coefficient = 0.0
            out.append(Segment(left, right, slope, intercept, coefficient, exponent))
        return tuple(out)

    def base_on(self, left: float, right: float):
        """(slope, intercept, coefficient, exponent) of phi without steps on (left, right)"""
        if right <= self.knots[0]:
            tail = self.left_tail
        elif left >= self.knots[-1]:
            tail = self.right_tail
        else:
            index = bisect.bisect_right(self.knots, left) - 1
            if index < 0 or self.knots[index + 1] < right:
                raise StructuralError(f'interval ({left}, {right}) straddles a knot')
            piece = self.pieces[index]
            return piece.slope, piece.intercept, 0.0, 0.0
        return tail.slope, tail.intercept, tail.coefficient, tail.exponent

    @cached_property
    def _segment_lefts(self) -> list:
        return [seg.left for seg in self.segments]

    def segment_at(self, s: float) -> Segment:
        return self.segments[max(bisect.bisect_right(self._segment_lefts, s) - 1, 0)]

    def evaluate(self, s: float) -> float:
        return self.segment_at(s).value(float(s))

    def __call__(self, s):
        if np.ndim(s) == 0:
            return self.evaluate(float(s))
        return np.array([self.evaluate(float(v)) for v in np.ravel(s)]).reshape(np.shape(s))

    # ----- transformations -----

    def rescale(self, lam: float) -> 'PhiFunction':
        """phi(lam * s) for lam > 0"""
        if lam <= 0:
            raise StructuralError('rescale factor must be positive')

        def tail(t: Tail):
            return Tail(t.slope * lam, t.intercept, t.coefficient * lam**t.exponent, t.exponent)

        return PhiFunction(
            knots=tuple(k / lam for k in self.knots),
            pieces=tuple(AffinePiece(p.slope * lam, p.intercept) for p in self.pieces),
            left_tail=tail(self.left_tail),
            right_tail=tail(self.right_tail),
            steps=tuple(Step(st.location / lam, st.height) for st in self.steps),
        )

    def scaled(self, factor: float) -> 'PhiFunction':
        """factor * phi for factor > 0"""
        if factor <= 0:
            raise StructuralError('scale factor must be positive')

        def tail(t: Tail):
            return Tail(t.slope * factor, t.intercept * factor, t.coefficient * factor, t.exponent)

        return PhiFunction(
            knots=self.knots,
            pieces=tuple(AffinePiece(p.slope * factor, p.intercept * factor) for p in self.pieces),
            left_tail=tail(self.left_tail),
            right_tail=tail(self.right_tail),
            steps=tuple(Step(st.location, st.height * factor) for st in self.steps),
        )

    def with_steps(self, steps) -> 'PhiFunction':
        return PhiFunction(
            self.knots, self.pieces, self.left_tail, self.right_tail, self.steps + tuple(steps)
        )

    def __add__(self, other: 'PhiFunction') -> 'PhiFunction':
        knots = tuple(sorted(set(self.knots) | set(other.knots)))
        pieces = []
        for left, right in zip(knots, knots[1:]):
            terms = [self.base_on(left, right), other.base_on(left, right)]
            if any(t[2] for t in terms):
                raise UnsupportedError('sum would put a power law between knots')
            pieces.append(AffinePiece(terms[0][0] + terms[1][0], terms[0][1] + terms[1][1]))
        return PhiFunction(
            knots=knots,
            pieces=tuple(pieces),
            left_tail=_sum_tails(self.left_tail, other.left_tail),
            right_tail=_sum_tails(self.right_tail, other.right_tail),
            steps=self.steps + other.steps,
        )

    # ----- serialisation -----

    def to_dict(self):
        data = {
            'knots': list(self.knots),
            'pieces': [p.to_dict() for p in self.pieces],
            'left_tail': self.left_tail.to_dict(),
            'right_tail': self.right_tail.to_dict(),
        }
        if self.steps:
            data['steps'] = [st.to_dict() for st in self.steps]
        return data

    @classmethod
    def from_dict(cls, data: dict) -> 'PhiFunction':
        require_keys(data, ['knots'], 'phi')
        pieces = []
        for piece in data.get('pieces', []):
            if isinstance(piece, dict):
                require_keys(piece, ['slope', 'intercept'], 'piece')
                pieces.append(AffinePiece(float(piece['slope']), float(piece['intercept'])))
            else:
                pieces.append(AffinePiece(float(piece[0]), float(piece[1])))
        steps = []
        for st in data.get('steps', []):
            require_keys(st, ['location'], 'step')
            steps.append(Step(float(st['location']), float(st.get('height', 1.0))))
        return cls(
            knots=tuple(float(k) for k in data['knots']),
            pieces=tuple(pieces),
            left_tail=Tail.from_dict(data.get('left_tail', {'kind': 'constant'})),
            right_tail=Tail.from_dict(data.get('right_tail', {'kind': 'constant'})),
            steps=tuple(steps),
        )


def _sum_tails(first: Tail, second: Tail) -> Tail:
    if first.coefficient and second.coefficient and first.exponent != second.exponent:
        raise UnsupportedError('cannot add power tails with different exponents')
    exponent = first.exponent if first.coefficient else second.exponent
    return Tail(
        first.slope + second.slope,
        first.intercept + second.intercept,
        first.coefficient + second.coefficient,
        exponent,
    )


def merge_steps(steps) -> tuple:
    """Sorted steps with equal locations combined and zero heights dropped"""
    heights: dict[float, float] = {}
    for st in steps:
        if not isinstance(st, Step):
            st = Step(float(st[0]), float(st[1]) if len(st) > 1 else 1.0)
        heights[st.location] = heights.get(st.location, 0.0) + st.height
    return tuple(Step(loc, h) for loc, h in sorted(heights.items()) if h != 0.0)


def zero_phi() -> PhiFunction:
    return PhiFunction(knots=(0.0,), pieces=())


def step_phi(locations, height: float = 1.0) -> PhiFunction:
    """Zero phi plus unit steps: the representing function of a pure PFF"""
    return PhiFunction(
        knots=(0.0,), pieces=(), steps=tuple(Step(float(s), height) for s in locations)
    )


def linear_phi(slope: float) -> PhiFunction:
    return PhiFunction(
        knots=(0.0,), pieces=(), left_tail=Tail.affine(slope), right_tail=Tail.affine(slope)
    )


def one_sided_power_phi(coefficient: float, exponent: float) -> PhiFunction:
    """coefficient * s**exponent on s > 0, zero on s < 0"""
    return PhiFunction(
        knots=(0.0,), pieces=(), right_tail=Tail.power(coefficient, exponent)
    )


def cauchy_phi() -> PhiFunction:
    """phi(s) = s / pi, the representing function of 1 / (1 + x**2)"""
    return linear_phi(1.0 / math.pi)


def levy_phi() -> PhiFunction:
    """phi(s) = (2/pi) sqrt(s) on s > 0, the representing function of x**-1.5 e**(-1/x)"""
    return one_sided_power_phi(2.0 / math.pi, 0.5)


def sign_of(value: float, zero_band: float = 0.0) -> int:
    if value > zero_band:
        return 1
    if value < -zero_band:
        return -1
    return 0
