# Test Harness - shared fixtures for the offline suites
# The model parameter sets every suite reuses, plus a relative-closeness
# helper. Suites keep their own check() counters.

import math

from bellshape.shape.params import BellParams
from bellshape.shape.phi import AffinePiece, PhiFunction, Tail, cauchy_phi, levy_phi, zero_phi

CAUCHY_C = math.log(math.pi) - 2.0 / math.pi


def cauchy_params() -> BellParams:
    """1 / (1 + x^2): transform pi e^{-|xi|}"""
    return BellParams(0.0, 0.0, CAUCHY_C, cauchy_phi())


def gaussian_params(t: float = 0.25) -> BellParams:
    """Transform e^{-t xi^2}"""
    return BellParams(t, 0.0, 0.0, zero_phi())


def levy_params() -> BellParams:
    return BellParams(0.0, 0.0, 0.0, levy_phi())


def bump_phi() -> PhiFunction:
    """2 on (1, 2) and 0 elsewhere: phi - 1 changes sign twice"""
    return PhiFunction(
        knots=(0.0, 1.0, 2.0),
        pieces=(AffinePiece(0.0, 0.0), AffinePiece(0.0, 2.0)),
        left_tail=Tail.constant(0.0),
        right_tail=Tail.constant(0.0),
    )


def sagging_phi() -> PhiFunction:
    """Rises to 1/2, sags to 0.3 and stays: passes level crossing but is not monotone"""
    return PhiFunction(
        knots=(0.0, 1.0, 2.0),
        pieces=(AffinePiece(0.5, 0.0), AffinePiece(-0.2, 0.7)),
        left_tail=Tail.constant(0.0),
        right_tail=Tail.constant(0.3),
    )


def close(value, target, rel: float = 1e-9, abs_tol: float = 0.0) -> bool:
    return abs(value - target) <= max(rel * abs(target), abs_tol)
