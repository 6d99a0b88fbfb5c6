# Factorisation Tests - OFFLINE (pure numerics)
# Staircase split of phi and the PFF x AM-CM factor pair with its residual.
#
# Usage: python -m bellshape.tests.test_factor   (from project root)

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

    from bellshape.core.errors import BellshapeRangeError, NumericalError
    from bellshape.shape.factor import factorise, split_phi
    from bellshape.shape.levels import crossing_table
    from bellshape.shape.params import BellParams
    from bellshape.shape.phi import (
        AffinePiece,
        PhiFunction,
        Tail,
        cauchy_phi,
        levy_phi,
        step_phi,
        zero_phi,
    )
    from bellshape.tests.harness import cauchy_params, close, gaussian_params

    print('🧪 FACTORISATION TESTS')
    print('=' * 50)

    # ===== split_phi =====
    print('\n-- split_phi --')
    phi_h, phi_g = split_phi(cauchy_phi(), 50)
    check(
        'staircase jumps at k pi',
        [st.location for st in phi_h.steps if st.location > 0][:3]
        == [math.pi, 2 * math.pi, 3 * math.pi],
    )
    check('phi_g is the fractional part on s > 0', close(phi_g(4.0), 4.0 / math.pi - 1.0, 1e-12))
    check('phi_g mirrors on s < 0', close(phi_g(-4.0), -4.0 / math.pi + 1.0, 1e-12))

    grid = np.linspace(-150.0, 150.0, 3001) + 1e-3
    signed = phi_g(grid) * np.sign(grid)
    check('phi_g sign(s) stays in [0, 1]', signed.min() >= -1e-12 and signed.max() <= 1.0 + 1e-12)
    recombined = phi_g(grid) + phi_h(grid)
    check('phi_g + phi_h = phi', np.allclose(recombined, cauchy_phi()(grid), atol=1e-12))

    phi_h, phi_g = split_phi(zero_phi(), 5)
    check('zero phi has an empty staircase', phi_h.steps == () and phi_g(2.0) == 0.0)

    phi_h, _ = split_phi(levy_phi(), 4)
    check(
        'sqrt law steps at k^2 pi^2 / 4',
        all(
            close(st.location, (k * math.pi) ** 2 / 4.0, 1e-12)
            for k, st in enumerate(phi_h.steps, start=1)
        )
        and len(phi_h.steps) == 4,
    )

    steep = PhiFunction(
        knots=(0.0, 10.0),
        pieces=(AffinePiece(1.0, 0.0),),
        left_tail=Tail.constant(0.0),
        right_tail=Tail.constant(10.0),
    )
    try:
        split_phi(steep, 3)
        check('k_max below the knot range is a range error', False)
    except BellshapeRangeError:
        check('k_max below the knot range is a range error', True)

    # ===== factorise =====
    print('\n-- factorise --')
    pair = factorise(cauchy_params(), 50)
    check('Cauchy pair has 100 atoms', len(pair.pff.atoms) == 100)
    check(
        'Cauchy atoms are 1/(k pi)',
        close(max(pair.pff.atoms), 1.0 / math.pi, 1e-12)
        and close(min(pair.pff.atoms), -1.0 / math.pi, 1e-12),
    )
    check('Cauchy residual within 1e-6', pair.residual <= 1e-6, f'residual={pair.residual:.3g}')
    check('AM-CM side has a = 0', pair.amcm.a == 0.0)

    pair = factorise(gaussian_params(), 50)
    check('Gaussian pair is a pure Gaussian PFF', pair.pff.atoms == () and pair.pff.a == 0.25)
    check('Gaussian AM-CM side is trivial', pair.amcm.phi(3.0) == 0.0)
    check('Gaussian residual within 1e-10', pair.residual <= 1e-10, f'residual={pair.residual}')

    pair = factorise(BellParams(0.0, 0.0, 0.0, step_phi([1.0])), 10)
    check('single step becomes atom 1', pair.pff.atoms == (1.0,))
    check('single step leaves phi_g = 0', pair.amcm.phi(0.5) == 0.0 and pair.amcm.phi(2.0) == 0.0)
    check('vanishing level is flagged', pair.flagged_levels == (1,))

    staircase = step_phi([-7.0, -2.0, 3.0])
    table = crossing_table(staircase, 3)
    check(
        'negative levels cross where phi leaves them',
        (table.point(-2), table.point(-1), table.point(1)) == (-7.0, -2.0, 3.0),
    )
    phi_h, phi_g = split_phi(staircase, 3)
    points = (-10.0, -5.0, -1.0, 1.0, 5.0)
    check('pure staircase is its own phi_h', all(phi_h(s) == staircase(s) for s in points))
    check('pure staircase leaves phi_g = 0', all(phi_g(s) == 0.0 for s in points))
    pair = factorise(BellParams(0.0, 0.0, 0.0, staircase), 3)
    check(
        'staircase keeps every atom',
        sorted(pair.pff.atoms) == sorted([-1.0 / 7.0, -0.5, 1.0 / 3.0]),
        f'atoms={pair.pff.atoms}',
    )
    check('staircase AM-CM side is trivial', pair.amcm.phi(-10.0) == 0.0)
    check('flat runs on both sides are flagged', pair.flagged_levels == (-2, -1, 1))

    try:
        factorise(cauchy_params(), 10, tol=1e-18)
        check('caller tolerance governs the residual check', False)
    except NumericalError as exc:
        check('caller tolerance governs the residual check', exc.details['tolerance'] == 1e-18)
    check('default tolerance accepts Cauchy', factorise(cauchy_params(), 10).residual <= 1e-6)

    small = set(factorise(cauchy_params(), 10).pff.atoms)
    large = set(factorise(cauchy_params(), 20).pff.atoms)
    check('raising k_max keeps earlier atoms', small <= large)

    document = factorise(cauchy_params(), 5).to_dict()
    check(
        'factor pair serialises',
        set(document) >= {'pff', 'amcm', 'residual', 'b_correction', 'c_correction'},
    )

    print(f'\n{PASSED} passed, {FAILED} failed')
    return FAILED


if __name__ == '__main__':
    raise SystemExit(main())
