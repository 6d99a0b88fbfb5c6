# Generic callable adapter for phi functions that have no piecewise table.
# Answers are read off a symmetric geometric sampling grid, so every verdict
# it produces is marked heuristic.

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from ..core.config.numerics_config import (
    get_grid_bounds,
    get_grid_ratio,
    get_level_range,
    get_quad_limit,
)
from ..core.errors import StructuralError


@dataclass(frozen=True)
class CallablePhi:
    """
    phi given as a Python callable.

    left_exponent / right_exponent declare |phi(s)| = O(|s|**gamma) in each tail;
    both must be < 2 for the representation to make sense.
    """

    func: Callable[[float], float]
    left_exponent: float = 0.0
    right_exponent: float = 0.0
    ratio: float = field(default_factory=get_grid_ratio)

    def __post_init__(self):
        if self.ratio <= 1.0:
            raise StructuralError('sampling ratio must exceed 1')

    def __call__(self, s):
        if np.ndim(s) == 0:
            return float(self.func(float(s)))
        return np.array([float(self.func(float(v))) for v in np.ravel(s)]).reshape(np.shape(s))

    @cached_property
    def grid(self) -> np.ndarray:
        lo, hi = get_grid_bounds()
        count = int(math.ceil(math.log(hi / lo) / math.log(self.ratio))) + 1
        positive = lo * self.ratio ** np.arange(count)
        return np.concatenate([-positive[::-1], [0.0], positive])

    @cached_property
    def samples(self) -> np.ndarray:
        return self(self.grid)

    def _changes(self, level: float) -> list:
        signs = np.sign(self.samples - level)
        out = []
        previous, previous_index = 0, None
        for index, sign in enumerate(signs):
            if sign == 0:
                continue
            if previous and sign != previous:
                out.append((previous_index, index, int(sign)))
            previous, previous_index = sign, index
        return out

    def validate_level_crossing(self, k_range: Optional[tuple] = None):
        from .levels import LevelCrossingVerdict

        lo, hi = k_range if k_range is not None else (-get_level_range(), get_level_range())
        grid, values = self.grid, self.samples
        wrong = np.nonzero(((grid > 0) & (values < 0)) | ((grid < 0) & (values > 0)))[0]
        if wrong.size:
            s = float(grid[wrong[0]])
            return LevelCrossingVerdict(
                False, 0, (s, s), 'phi has the wrong sign on a sample point', heuristic=True
            )
        for level in range(int(lo), int(hi) + 1):
            if level == 0:
                continue
            changes = self._changes(level)
            if len(changes) > 1:
                return LevelCrossingVerdict(
                    False,
                    level,
                    (float(grid[changes[0][1]]), float(grid[changes[1][1]])),
                    f'phi - {level} changes sign {len(changes)} times on the grid',
                    heuristic=True,
                )
        return LevelCrossingVerdict(True, heuristic=True)

    def crossings(self, k_max: int) -> list:
        from .levels import Crossing

        entries = []
        for level in range(-k_max, k_max + 1):
            if level == 0:
                entries.append(Crossing(0, 0.0))
                continue
            changes = self._changes(level)
            if not changes:
                below = bool(np.all(self.samples < level))
                entries.append(Crossing(level, math.inf if below else -math.inf))
                continue
            i, j, _ = changes[0]
            a, b = float(self.grid[i]), float(self.grid[j])
            try:
                point = brentq(lambda s, lv=level: self.func(s) - lv, a, b, xtol=1e-14)
            except ValueError:
                point = b
            entries.append(Crossing(level, point, flagged=j - i > 1))
        return entries

    def validate_integrability(self):
        from .levels import IntegrabilityVerdict

        if self.left_exponent >= 2 or self.right_exponent >= 2:
            return IntegrabilityVerdict(False, math.inf, heuristic=True)
        right, _ = quad(lambda s: abs(self.func(s)) / s**3, 1.0, np.inf, limit=get_quad_limit())
        left, _ = quad(lambda t: abs(self.func(-t)) / t**3, 1.0, np.inf, limit=get_quad_limit())
        total = right + left
        return IntegrabilityVerdict(math.isfinite(total), total, heuristic=True)

    def is_nondecreasing(self) -> bool:
        return bool(np.all(np.diff(self.samples) >= 0))
