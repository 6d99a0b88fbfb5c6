# Code Health Tests - OFFLINE (repository layout)
# The file-size ceiling and the private-precision rule from
# tools/check_file_sizes.py, run as a suite.
#
# Usage: python -m bellshape.tests.test_code_health   (from project root)

import importlib.util
from pathlib import Path

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
    print('🧪 CODE HEALTH TESTS')
    print('=' * 50)

    root = Path(__file__).resolve().parents[2]
    script = root / 'tools' / 'check_file_sizes.py'
    check('size checker present', script.exists(), str(script))
    if script.exists():
        spec = importlib.util.spec_from_file_location('check_file_sizes', script)
        module = importlib.util.module_from_spec(spec)
        spec.loader.exec_module(module)
        print('\n-- file sizes --')
        check('no source file over the ceiling', module.oversized(root) == [])
        check('scan covers the package', len(module.source_files(root)) > 40)

        print('\n-- mpmath precision --')
        writes = module.global_precision_writes(root)
        check('no writes to the shared mpmath context', writes == [], f'{writes}')
        check(
            'the pattern catches a shared write',
            module.GLOBAL_PRECISION.search('mpmath.mp' + '.dps = 50') is not None,
        )
        check(
            'a private context is allowed',
            module.GLOBAL_PRECISION.search('ctx = mpmath.MPContext(); ctx.dps = 50') is None,
        )
        check('checker exits 0', module.main() == 0)

    print(f'\n{PASSED} passed, {FAILED} failed')
    return FAILED


if __name__ == '__main__':
    raise SystemExit(main())
