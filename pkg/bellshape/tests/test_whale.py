# Whale Tests - OFFLINE (pure logic, exact fractions)
# Exponential-sum construction, its factor transform and the certified
# min(n, m) sign-change profile.
#
# Usage: python -m bellshape.tests.test_whale   (from project root)

import math
from fractions import Fraction

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
    from bellshape.core.errors import BellshapeRangeError, StructuralError, UnsupportedError
    from bellshape.exact.derivatives import certify_bellshape, nth_derivative, sign_changes
    from bellshape.exact.families import ExactDensity, family_from_dict
    from bellshape.exact.polynomials import X
    from bellshape.post.approximant import direct_form, moment_form
    from bellshape.shape.factor import factorise
    from bellshape.shape.transform import transform
    from bellshape.tests.harness import close
    from bellshape.whale.build import WhaleSpec, transform_residual, whale_build, whale_params
    from bellshape.whale.certify import derivative_zeros, whale_certify
    from bellshape.whale.density import ExponentialSum

    print('🧪 WHALE TESTS')
    print('=' * 50)

    order0 = WhaleSpec((), ((1, 1),))
    order1 = WhaleSpec((1,), ((2, 1),))
    order2 = WhaleSpec((1, '1/2'), ((3, 1),))

    # ===== Construction =====
    print('\n-- whale_build --')
    f = whale_build(order1)
    check(
        'order 1 builds e^-x - e^-2x',
        f.terms == ((Fraction(1), Fraction(1)), (Fraction(-1), Fraction(2))),
        f'terms={f.terms}',
    )
    check('order 0 is the CM part itself', whale_build(order0).terms == ((1, 1),))
    f2 = whale_build(order2)
    check(
        'order 2 builds e^-x (1 - e^-x)^2',
        f2.terms == ((1, 1), (-2, 2), (1, 3)),
        f'terms={f2.terms}',
    )
    check('exact mass of order 1 is 1/2', f.total_mass() == Fraction(1, 2))
    check(
        'value matches the closed form',
        abs(f2.value(0.7) - math.exp(-0.7) * (1 - math.exp(-0.7)) ** 2) < 1e-15,
    )
    check('zero left of the origin', f.value(-1.0) == 0.0)

    residual = transform_residual(order2, [0.25, 0.5, 1.0, 2.0, 8.0])
    check('factor product matches the built transform', residual < 1e-12, f'residual={residual}')
    check('order counts the exponential factors', order2.order == 2 and order0.order == 0)

    for label, call, error in (
        ('coinciding rates', lambda: whale_build(WhaleSpec((1, 1), ((3, 1),))), UnsupportedError),
        ('rate on a CM atom', lambda: whale_build(WhaleSpec(('1/2',), ((2, 1),))),
         UnsupportedError),
        ('negative rate', lambda: WhaleSpec((-1,), ((1, 1),)), StructuralError),
        ('empty CM part', lambda: WhaleSpec((1,), ()), StructuralError),
        ('zero CM mass', lambda: WhaleSpec((1,), ((2, 0),)), StructuralError),
    ):
        try:
            call()
            check(f'{label} rejected', False)
        except error:
            check(f'{label} rejected', True)

    check('WhaleSpec JSON form round-trips', WhaleSpec.from_dict(order2.to_dict()) == order2)

    # ===== Exact-density pipeline =====
    print('\n-- WhaleConv --')
    check('whale_build gives an exact density', isinstance(f, ExactDensity) and f.family == 'whale')
    check('value at 0.7 is e^-0.7 - e^-1.4', close(f.value(0.7), math.exp(-0.7) - math.exp(-1.4)))
    check('density mass is 1/2', f.total_mass() == 0.5)
    form = nth_derivative(f, 1)
    check(
        'exact first derivative is 2 e^-2x - e^-x',
        close(float(form.expression.subs(X, 0.7)), 2 * math.exp(-1.4) - math.exp(-0.7), 1e-14),
    )
    table = sign_changes(f, 3)
    check(
        'sign_changes finds the order 3 zero at 3 ln 2',
        table.sign_change_count == 1 and close(table.midpoints()[0], 3 * math.log(2.0), 1e-10),
    )
    verdict = certify_bellshape(f, 6)
    check(
        'order 1 whale fails the bell-shape certifier at n = 2',
        not verdict.consistent and verdict.violating_n == 2 and verdict.counts == (0,) + (1,) * 6,
        verdict.label,
    )
    gap = abs(direct_form(f2, 1.0, 6) - moment_form(f2, 1.0, 6))
    check('direct and moment Post forms agree on a whale', gap < 1e-7, f'gap={gap:.3g}')
    parsed = family_from_dict({'family': 'whale', 'whale': {'rates': [1], 'cm_atoms': [[2, 1]]}})
    check('whale family parses from a whale spec', parsed.terms == f.terms)
    check('whale family parses from terms', family_from_dict(f2.to_dict()).terms == f2.terms)

    # ===== Factor roundtrip =====
    print('\n-- whale_params --')
    for label, spec in (('order 1', order1), ('order 2', order2)):
        built = whale_build(spec)
        params = whale_params(spec, 0.25)
        gap = max(
            abs(transform(params, xi) - built.fourier_transform(xi) * math.exp(-0.25 * xi * xi))
            / abs(built.fourier_transform(xi))
            for xi in (0.25, 1.0, 3.0)
        )
        check(f'{label} bell parameters match the smoothed transform', gap < 1e-8, f'gap={gap:.3g}')
        pair = factorise(params, 5)
        expected = sorted([float(r) for r in spec.rates] + [float(1 / spec.cm_atoms[0][0])])
        check(
            f'{label} factorises back into its scales',
            len(pair.pff.atoms) == len(expected)
            and all(close(a, b, 1e-12) for a, b in zip(sorted(pair.pff.atoms), expected)),
            f'atoms={pair.pff.atoms}',
        )
        check(f'{label} keeps the Gaussian factor', pair.pff.a == 0.25)
        check(
            f'{label} leaves phi_g = 0',
            all(pair.amcm.phi(s) == 0.0 for s in (-1.0, 0.5, 1.5, 2.5, 10.0)),
        )
    try:
        whale_params(WhaleSpec((1,), ((2, 1), (3, 1))))
        check('several CM atoms rejected by whale_params', False)
    except UnsupportedError:
        check('several CM atoms rejected by whale_params', True)

    # ===== Certification =====
    print('\n-- whale_certify --')
    verdict = whale_certify(f, 1, 10)
    check('order 1 profile is min(n, 1)', verdict.holds, f'{verdict.to_dict()}')
    worst = max(
        abs(0.5 * (lo + hi) - n * math.log(2.0))
        for n, row in enumerate(verdict.rows)
        for lo, hi in row.zeros
    )
    check('order 1 zero of f^(n) sits at n ln 2', worst <= 1e-10, f'worst={worst:.3g}')
    check(
        'enclosures are narrow',
        all(hi - lo <= 1e-10 for row in verdict.rows for lo, hi in row.zeros),
    )

    verdict = whale_certify(whale_build(order0), 0, 10)
    check('order 0 never changes sign', verdict.holds and set(verdict.to_dict()['counts']) == {0})

    verdict = whale_certify(f2, 2, 10)
    check(
        'order 2 profile is 0, 1, 2, 2, ...',
        verdict.holds and verdict.to_dict()['counts'] == [0, 1] + [2] * 9,
        f'{verdict.to_dict()}',
    )
    check('order 2 starts flat at 0', verdict.boundary_flat and f2.boundary_derivative(1) == 0)
    zeros = derivative_zeros(f2, 1)
    check(
        'f\' of order 2 vanishes at ln 3',
        len(zeros) == 1 and abs(zeros[0][0] - math.log(3)) < 1e-10,
    )

    cm = ExponentialSum(((1, 1), (1, 3)))
    verdict = whale_certify(cm, 1, 5)
    check('CM sum fails the order 1 boundary', not verdict.holds and not verdict.boundary_flat)
    try:
        whale_certify(f, 1, 61)
        check('order above the cap rejected', False)
    except BellshapeRangeError:
        check('order above the cap rejected', True)

    print(f'\n{PASSED} passed, {FAILED} failed')
    return FAILED


if __name__ == '__main__':
    raise SystemExit(main())
