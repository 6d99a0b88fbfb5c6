# Zero Measure Tests - OFFLINE (pure logic, sympy)
# Scaled zero measures, their limits from crossing points and the trend
# report, plus the figure table emitter.
#
# Usage: python -m bellshape.tests.test_zeromeasure   (from project root)

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
    from bellshape.core.errors import StructuralError
    from bellshape.exact.families import CauchyProduct, Gaussian, PowerExpInverse
    from bellshape.exact.zeromeasure import (
        HatFunction,
        LimitMeasure,
        ZeroMeasure,
        cauchy_limit,
        compare_to_limit,
        default_tests,
        figure3_data,
        gaussian_limit,
        levy_limit,
        limit_from_params,
        zero_measure,
        zero_measures,
    )
    from bellshape.tests.harness import cauchy_params, close, gaussian_params, levy_params

    print('🧪 ZERO MEASURE TESTS')
    print('=' * 50)

    cauchy = CauchyProduct.cauchy()

    # ===== Single measures =====
    print('\n-- zero_measure --')
    measure = zero_measure(cauchy, 3)
    expected = ((1 / 3, 1 / 9), (0.0, 0.0), (-1 / 3, 1 / 9))
    check(
        'Cauchy order 3 atoms at 1/3, 0, -1/3',
        len(measure.atoms) == 3
        and all(close(x, ex, 1e-10, 1e-11) and close(w, ew, 1e-10, 1e-11)
                for (x, w), (ex, ew) in zip(measure.atoms, expected)),
        f'atoms={measure.atoms}',
    )
    measure = zero_measure(Gaussian(), 2)
    check(
        'Gaussian order 2 atoms at +-1/(2 sqrt 2) with weight 1/8',
        all(close(abs(x), 1 / (2 * math.sqrt(2)), 1e-11) and close(w, 0.125, 1e-10)
            for x, w in measure.atoms),
    )
    check('weights are squared locations', all(w == x * x for x, w in measure.atoms))

    measures = {m.n: m for m in zero_measures(cauchy, (10, 20, 40), threads=3)}
    check(
        'order 40 locations are cot(k pi / 41) / 40',
        all(close(x, 1 / math.tan(k * math.pi / 41) / 40, 1e-9, 1e-12)
            for k, x in enumerate(measures[40].locations, start=1)),
    )
    check(
        'Cauchy mass is (n - 1) / (3n)',
        all(close(measures[n].total_mass, (n - 1) / (3 * n), 1e-9) for n in (10, 20, 40)),
    )
    check(
        'Cauchy mass trends to 1/3',
        abs(measures[40].total_mass - 1 / 3) < abs(measures[10].total_mass - 1 / 3),
    )
    check(
        'locations stay uniformly bounded',
        measures[40].max_abs_location <= measures[10].max_abs_location + 1e-9,
    )
    gaps = [abs(measures[n].locations[0] - 1 / math.pi) for n in (10, 20, 40)]
    check(
        'outermost Cauchy atom approaches 1/pi',
        gaps[0] > gaps[1] > gaps[2] and gaps[2] <= 0.01,
        f'gaps={gaps}',
    )

    # ===== Limits =====
    print('\n-- limit measures --')
    limit = cauchy_limit(5)
    check(
        'Cauchy limit atoms at +-1/(k pi)',
        len(limit.atoms) == 10 and close(limit.atoms[0][0], 1 / math.pi)
        and close(limit.atoms[-1][0], -1 / math.pi),
    )
    check(
        'limit from params matches the closed form',
        all(close(a[0], b[0], 1e-12) and close(a[1], b[1], 1e-12)
            for a, b in zip(limit_from_params(cauchy_params(), 5).atoms, limit.atoms)),
    )
    check(
        'Levy limit atoms at 4/(k^2 pi^2)',
        all(close(x, 4 / (k * math.pi) ** 2, 1e-12)
            for k, (x, _) in enumerate(levy_limit(4).atoms, start=1)),
    )
    check(
        'Levy limit from params matches',
        close(limit_from_params(levy_params(), 3).atoms[0][0], 4 / math.pi**2, 1e-12),
    )
    params = gaussian_params(0.25)
    check('Gaussian limit is 2a at the origin', limit_from_params(params, 5).gaussian_mass == 0.5)
    check('gaussian_limit keeps no atoms', gaussian_limit(0.25).atoms == ())
    try:
        LimitMeasure(-1.0, ())
        check('negative Gaussian mass rejected', False)
    except StructuralError:
        check('negative Gaussian mass rejected', True)

    # ===== Convergence report =====
    print('\n-- compare_to_limit --')
    hat = HatFunction(0.2, 2 / math.pi - 0.2)
    report = compare_to_limit(measures.values(), cauchy_limit(), [hat])
    check('orders are sorted', report.orders == (10, 20, 40))
    check(
        'hat around 1/pi sees a shrinking discrepancy',
        report.decreasing(0),
        f'discrepancies={report.discrepancies[0]}',
    )
    report = compare_to_limit(measures.values(), cauchy_limit())
    check('default suite brackets eight atoms', len(report.tests) == 8)
    check(
        'outermost default hats shrink on both sides',
        report.decreasing(0) and report.decreasing(4),
        f'{report.to_dict()["discrepancies"]}',
    )
    check('default tests fall back to a hat at 0', len(default_tests(gaussian_limit(0.5))) == 1)

    report = compare_to_limit([ZeroMeasure(0, ())], LimitMeasure(0.0, ()), [HatFunction(-1, 1)])
    check('empty measure vs empty limit gives 0', report.discrepancies == ((0.0,),))

    gauss_measures = zero_measures(Gaussian(), (10, 20, 40), threads=3)
    spread = [m.max_abs_location for m in gauss_measures]
    check('Gaussian zeros accumulate at 0', spread[0] > spread[1] > spread[2], f'spread={spread}')

    try:
        HatFunction(1.0, 1.0)
        check('degenerate hat rejected', False)
    except StructuralError:
        check('degenerate hat rejected', True)

    # ===== Figure table =====
    print('\n-- figure3_data --')
    rows = figure3_data(cauchy, 40, threads=4)
    check('Cauchy to 40 gives 820 rows', len(rows) == 820)
    check(
        'row (40, 1) is cot(pi/41)/40',
        rows[780][:2] == (40, 1) and close(rows[780][2], 0.32563, 1e-4),
        f'row={rows[780]}',
    )
    check('rows ordered by n then k', rows == sorted(rows, key=lambda r: (r[0], r[1])))

    levy_rows = figure3_data(PowerExpInverse.levy(), 40, threads=4)
    outermost = {n: alpha for n, k, alpha in levy_rows if k == 1}
    target = 4 / math.pi**2
    gaps = [abs(outermost[n] - target) for n in (10, 20, 40)]
    check('Levy outermost atom approaches 4/pi^2', gaps[0] > gaps[1] > gaps[2], f'gaps={gaps}')
    check('Levy outermost atom within 15% at n = 40', gaps[2] <= 0.15 * target)

    print(f'\n{PASSED} passed, {FAILED} failed')
    return FAILED


if __name__ == '__main__':
    raise SystemExit(main())
