# Command-line entry point
# Usage: python -m bellshape.run <command> [options]
from bellshape.cli.runner import main

if __name__ == '__main__':
    raise SystemExit(main())
