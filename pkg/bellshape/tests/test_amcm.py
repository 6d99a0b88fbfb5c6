# AM-CM Tests - OFFLINE (pure numerics)
# Laplace-transform evaluation from Bernstein measures, the Stieltjes-form
# transform and complete-monotonicity spot checks.
#
# Usage: python -m bellshape.tests.test_amcm   (from project root)

import cmath
import math

PASSED = 0
FAILED = 0


def check(name: str, condition: bool, detail: str = ''):
    global PASSED, FAILED
    if condition:
        PASSED += 1
        print(f"  ✅ {name}")
    else:
        FAILED += 1
        print(f"  ❌ {name}{f' - {detail}' if detail else ''}")


def main():
    import numpy as np
    from scipy.integrate import quad

    from bellshape.core.errors import DomainError, StructuralError, UnsupportedError
    from bellshape.factors.amcm import (
        AmCmFunction,
        BernsteinMeasure,
        PiecewiseDensity,
        amcm_eval,
        amcm_mass,
        amcm_transform,
        cm_spotcheck,
        sample_amcm,
    )
    from bellshape.tests.harness import close

    print('🧪 AM-CM TESTS')
    print('=' * 50)

    unit = BernsteinMeasure(((1.0, 1.0),))
    g = AmCmFunction(mu_plus=unit, mu_minus=BernsteinMeasure(((2.0, 1.0),)))
    flat = AmCmFunction(mu_plus=BernsteinMeasure((), PiecewiseDensity((1.0, 2.0), (1.0, 1.0))))

    # ===== Evaluation =====
    print('\n-- amcm_eval --')
    check('point mass at 1 gives e^-1 at x = 1', close(amcm_eval(g, 1.0), math.exp(-1.0), 1e-15))
    check('mu_minus at 2 gives e^-2 at x = -1', close(amcm_eval(g, -1.0), math.exp(-2.0), 1e-15))
    check(
        'unit density on [1, 2] gives e^-1 - e^-2',
        close(amcm_eval(flat, 1.0), math.exp(-1.0) - math.exp(-2.0), 1e-10),
    )
    xs = np.linspace(0.05, 6.0, 60)
    right = sample_amcm(g, xs)
    left = sample_amcm(g, -xs[::-1])
    check('g >= 0 on both sides', right.min() >= 0 and left.min() >= 0)
    check('non-increasing on (0, inf)', bool(np.all(np.diff(right) <= 0)))
    check('non-decreasing on (-inf, 0)', bool(np.all(np.diff(left) >= 0)))

    # ===== Transform =====
    print('\n-- amcm_transform --')
    only_plus = AmCmFunction(mu_plus=unit)
    check(
        'point mass transform at 1 is (1 - i)/2',
        close(amcm_transform(only_plus, 1.0), 0.5 - 0.5j),
    )
    check('pure origin atom gives 1', amcm_transform(AmCmFunction(atom_mass=1.0), 3.0) == 1.0)

    re = quad(lambda x: math.exp(-x) * math.cos(x), 0.0, np.inf, epsabs=1e-13)[0]
    im = quad(lambda x: -math.exp(-x) * math.sin(x), 0.0, np.inf, epsabs=1e-13)[0]
    check(
        'matches the Fourier integral of e^-x',
        abs(amcm_transform(only_plus, 1.0) - complex(re, im)) < 1e-8,
    )
    check(
        'mu_minus side is 1 / (2 - i xi)',
        close(amcm_transform(g, 0.7) - amcm_transform(only_plus, 0.7), 1.0 / (2.0 - 0.7j), 1e-14),
    )
    check(
        'density part integrates the Stieltjes kernel',
        close(amcm_transform(flat, 1.0), cmath.log((2.0 + 1j) / (1.0 + 1j)), 1e-9),
    )
    check(
        'conjugate symmetric',
        all(
            abs(amcm_transform(g, -xi) - amcm_transform(g, xi).conjugate()) < 1e-14
            for xi in (0.2, 1.0, 5.0)
        ),
    )
    check('mass is the transform at 0', close(amcm_mass(g), 1.5, 1e-15))

    # ===== Spot checks =====
    print('\n-- cm_spotcheck --')
    pair = AmCmFunction(mu_plus=BernsteinMeasure(((1.0, 1.0), (3.0, 1.0))))
    verdict = cm_spotcheck(pair, [0.5, 1.0, 2.0], 8)
    check('delta_1 + delta_3 passes to order 8', verdict.passed and verdict.checked == 27)
    doubled = AmCmFunction(mu_plus=BernsteinMeasure(((0.5, 2.0),)))
    check('2 delta_0.5 passes to order 5', cm_spotcheck(doubled, [0.5, 1.0, 2.0], 5).passed)
    sampled = cm_spotcheck(lambda x: amcm_eval(pair, x), [0.5, 1.0, 2.0], 3)
    check('sampled delta_1 + delta_3 passes to order 3', sampled.passed and sampled.checked == 12)
    mirrored = cm_spotcheck(g, [-0.5, -2.0, 1.0], 6)
    check('absolutely monotone side passes to order 6', mirrored.passed)

    def mixed(x):
        return math.exp(-x) - 0.5 * math.exp(-3.0 * x)

    verdict = cm_spotcheck(mixed, [0.5], 3)
    check(
        'e^{-x} - e^{-3x} / 2 fails at orders 2 and 3',
        not verdict.passed and sorted(j for _, j, _ in verdict.failures) == [2, 3],
        f'failures={verdict.failures}',
    )
    try:
        cm_spotcheck(pair, [1.0], 3, step=0.0)
        check('zero difference step rejected', False)
    except DomainError:
        check('zero difference step rejected', True)
    try:
        cm_spotcheck(flat, [1.0], 3)
        check('density part is unsupported', False)
    except UnsupportedError:
        check('density part is unsupported', True)
    try:
        BernsteinMeasure(((1.0, -0.5),))
        check('negative mass rejected', False)
    except StructuralError:
        check('negative mass rejected', True)

    document = g.to_dict()
    check('JSON form round-trips', AmCmFunction.from_dict(document) == g)

    print(f'\n{PASSED} passed, {FAILED} failed')
    return FAILED


if __name__ == '__main__':
    raise SystemExit(main())
