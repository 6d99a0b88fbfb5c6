# CLI Configuration
# Exit codes, output schema versions and column layouts for the command line

import os

# === Exit codes ===
EXIT_OK = 0
EXIT_REJECT = 2  # mathematical verdict: reject / fail
EXIT_NUMERICAL = 3  # non-convergence or failed self-check
EXIT_BAD_CONFIG = 64

# === Output ===
SCHEMA_VERSION = 1
FLOAT_FORMAT = '.17g'
DEFAULT_FORMAT = 'csv'
OUTPUT_FORMATS = ('csv', 'json')

COLUMNS = {
    'transform': ['xi', 're_log', 'im_log', 're', 'im'],
    'pff': ['x', 'density'],
    'amcm': ['section', 'point', 're', 'im'],
    'zeros': ['n', 'k', 'lower', 'upper', 'multiplicity'],
    'figure3': ['n', 'k', 'alpha'],
    'fp_scan': ['p', 'verdict', 'violating_n'],
    'post': ['n', 'xi', 're', 'im', 'target_re', 'target_im', 'relative_error'],
    'whale': ['n', 'count', 'expected', 'zeros'],
}


def get_default_format():
    return os.getenv('BELLSHAPE_FORMAT', DEFAULT_FORMAT)
