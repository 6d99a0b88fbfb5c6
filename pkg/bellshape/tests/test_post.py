# Post Approximant Tests - OFFLINE (pure numerics, mpmath)
# Convergence of the order-n approximants, agreement of the direct and moment
# forms, and the g_n mass / factor identities.
#
# Usage: python -m bellshape.tests.test_post   (from project root)

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
    from bellshape.core.errors import (
        BellshapeRangeError,
        ConsistencyError,
        DomainError,
        PreconditionError,
        StructuralError,
    )
    from bellshape.exact.derivatives import certify_bellshape
    from bellshape.exact.families import CauchyProduct, DerivativeShift, Gaussian
    from bellshape.factors.pff import pff_transform
    from bellshape.post.approximant import (
        direct_form,
        moment_form,
        post_approximant,
        post_table,
    )
    from bellshape.post.gn import (
        amcm_factor_transform,
        bernstein_transform,
        default_grid,
        gn_build,
        identity_holds,
        mass_defect,
        verify_factor_identity,
    )
    from bellshape.shape.levels import crossing_table
    from bellshape.tests.harness import close

    print('🧪 POST APPROXIMANT TESTS')
    print('=' * 50)

    cauchy = CauchyProduct.cauchy()
    gauss = Gaussian()

    # ===== Convergence =====
    print('\n-- post_approximant --')
    rows = post_table(cauchy, [1.0], [25, 50, 100, 200], threads=4)
    errors = [row.relative_error for row in rows]
    check(
        'Cauchy error at xi = 1 falls along n = 25, 50, 100, 200',
        all(a > b for a, b in zip(errors, errors[1:])),
        f'errors={errors}',
    )
    check('Cauchy error below 5% at n = 200', errors[-1] < 0.05, f'error={errors[-1]:.3g}')
    check('target is pi / e', close(rows[0].target.real, math.pi / math.e, 1e-12))
    check(
        'method switches to the moment form above the direct cap',
        [row.method for row in rows] == ['direct', 'direct', 'moment', 'moment'],
    )

    for f, label in ((cauchy, 'Cauchy'), (gauss, 'Gaussian')):
        direct = direct_form(f, 1.0, 10)
        moment = moment_form(f, 1.0, 10)
        check(
            f'{label} direct and moment forms agree',
            abs(direct - moment) <= 1e-7 * abs(moment),
            f'direct={direct} moment={moment}',
        )
    value = post_approximant(gauss, 0.7, 12)
    mirror = post_approximant(gauss, -0.7, 12)
    check('conjugate symmetric', abs(mirror - value.conjugate()) <= 1e-9 * abs(value))
    check(
        'Gaussian approximant approaches sqrt(pi) e^{-xi^2/4}',
        abs(post_approximant(gauss, 1.0, 40) - math.sqrt(math.pi) * math.exp(-0.25))
        < abs(post_approximant(gauss, 1.0, 10) - math.sqrt(math.pi) * math.exp(-0.25)),
    )

    for label, call, error in (
        ('xi = 0', lambda: post_approximant(cauchy, 0.0, 5), DomainError),
        ('n = 0', lambda: post_approximant(cauchy, 1.0, 0), DomainError),
        ('n above the cap', lambda: post_approximant(cauchy, 1.0, 401), BellshapeRangeError),
        ('direct above its cap', lambda: direct_form(cauchy, 1.0, 61), BellshapeRangeError),
        ('unknown method', lambda: post_approximant(cauchy, 1.0, 5, 'series'), StructuralError),
    ):
        try:
            call()
            check(f'{label} rejected', False)
        except error:
            check(f'{label} rejected', True)

    # ===== g_n =====
    print('\n-- gn_build --')
    g = gn_build(gauss, 1)
    check(
        'g_1 of the Gaussian is 2 x^2 e^{-x^2}',
        close(g(0.8), 2 * 0.64 * math.exp(-0.64), 1e-12),
    )
    check('g_0 is f itself', close(gn_build(cauchy, 0)(2.0), 0.2, 1e-14))

    failures = []
    for n in range(1, 21):
        g = gn_build(cauchy, n)
        low, high = g.check_nonnegative(default_grid(g))
        defect = mass_defect(g)
        residual = verify_factor_identity(cauchy, n, 1.0)
        if low < -1e-9 * high or defect > 1e-6 or residual > 1e-6:
            failures.append((n, low, defect, residual))
    check(
        'Cauchy g_n is nonnegative, carries mass pi and splits Post for every n <= 20',
        not failures,
        f'failures={failures}',
    )
    defects = [mass_defect(gn_build(gauss, n)) for n in (1, 5, 10, 20)]
    check('Gaussian g_n carries mass sqrt(pi)', max(defects) <= 1e-6, f'defects={defects}')

    g = gn_build(cauchy, 6)
    table = crossing_table(g.pff_phi(), 6)
    for side, label in ((1, 'positive'), (-1, 'negative')):
        crossings = sorted(entry.point for entry in table.finite_points(side))
        expected = sorted(1.0 / alpha for alpha in g.zeros if alpha * side > 0)
        check(
            f'g_6 factor phi crosses its {label} levels at 1/alpha',
            len(crossings) == 3 and all(close(a, b, 1e-12) for a, b in zip(crossings, expected)),
            f'crossings={crossings} expected={expected}',
        )

    class Overweight(Gaussian):
        def total_mass(self):
            return 2.0 * math.sqrt(math.pi)

    try:
        gn_build(Overweight(), 3)
        check('g_n with the wrong mass is caught at build time', False)
    except ConsistencyError:
        check('g_n with the wrong mass is caught at build time', True)
    check('unverified build skips the mass check', gn_build(Overweight(), 3, verify=False).n == 3)

    g = gn_build(cauchy, 4)
    check('g_n vanishes at its zeros', all(g(alpha) == 0.0 for alpha in g.zeros))
    check(
        'PFF factor removes the linear phase',
        abs(pff_transform(g.pff_factor(), 1.0)
            - math.prod(1 / complex(1, a) for a in g.zeros)) < 1e-12,
    )
    gap = abs(bernstein_transform(g, 1.0) - amcm_factor_transform(g, 1.0))
    check('Bernstein form matches the direct integral', gap < 1e-7, f'gap={gap:.3g}')

    shifted = DerivativeShift(cauchy, 0.5)
    verdict = certify_bellshape(shifted, 12)
    try:
        gn_build(shifted, verdict.violating_n)
        check('wrong sign-change count blocks g_n', False)
    except PreconditionError:
        check('wrong sign-change count blocks g_n', True)

    # ===== Factor identity =====
    print('\n-- verify_factor_identity --')
    worst = 0.0
    for f in (cauchy, gauss):
        for n in (2, 5, 12):
            for xi in (0.5, 1.0, 2.0):
                worst = max(worst, verify_factor_identity(f, n, xi))
    check('Post = PFF x AM-CM factor within 1e-6', worst <= 1e-6, f'worst={worst:.3g}')
    check('order 0 is trivially exact', verify_factor_identity(cauchy, 0, 1.0) == 0.0)
    check('identity_holds wraps the tolerance', identity_holds(cauchy, 3, 1.0))

    print(f'\n{PASSED} passed, {FAILED} failed')
    return FAILED


if __name__ == '__main__':
    raise SystemExit(main())
