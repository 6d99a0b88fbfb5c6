#!/usr/bin/env python3
"""Code-health checks for the bellshape tree.

Two rules, both cheap to scan for:

- no source file over MAX_LINES lines (split the engine into a sibling
  module instead);
- no module touches the process-wide mpmath precision. Extended precision
  runs in a private ``mpmath.MPContext`` so thread pools never race on it.

    python tools/check_file_sizes.py
"""

import re
import sys
from pathlib import Path

if hasattr(sys.stdout, 'reconfigure'):
    sys.stdout.reconfigure(encoding='utf-8', errors='replace')

MAX_LINES = 500

SOURCE_GLOBS = (
    'bellshape/**/*.py',
    'tools/**/*.py',
)

# assignments to, or work contexts on, the shared mpmath.mp context
GLOBAL_PRECISION = re.compile(r'mpmath\.mp\.(?:dps|prec)\s*=|mpmath\.mp\.work(?:dps|prec)\(')


def source_files(root: Path) -> list:
    files = []
    for pattern in SOURCE_GLOBS:
        files.extend(sorted(root.glob(pattern)))
    return files


def oversized(root: Path) -> list:
    """(relative path, line count) for every file over the ceiling"""
    found = []
    for path in source_files(root):
        with open(path, encoding='utf-8', errors='replace') as f:
            lines = sum(1 for _ in f)
        if lines > MAX_LINES:
            found.append((path.relative_to(root).as_posix(), lines))
    return found


def global_precision_writes(root: Path) -> list:
    """(relative path, line number) of writes to the shared mpmath context"""
    found = []
    for path in source_files(root):
        if path.parts[-2] == 'tools':
            continue
        text = path.read_text(encoding='utf-8', errors='replace')
        for number, line in enumerate(text.splitlines(), start=1):
            if GLOBAL_PRECISION.search(line):
                found.append((path.relative_to(root).as_posix(), number))
    return found


def main() -> int:
    root = Path(__file__).resolve().parent.parent
    status = 0

    too_big = oversized(root)
    if too_big:
        print(f'❌ Files over {MAX_LINES} lines:')
        for rel, lines in too_big:
            print(f'   {lines:5} lines: {rel}')
        status = 1
    else:
        print(f'✅ {len(source_files(root))} source files, none over {MAX_LINES} lines')

    writes = global_precision_writes(root)
    if writes:
        print('❌ Writes to the shared mpmath precision (use a private MPContext):')
        for rel, number in writes:
            print(f'   {rel}:{number}')
        status = 1
    else:
        print('✅ mpmath precision is only set on private contexts')

    return status


if __name__ == '__main__':
    sys.exit(main())
