# Numerics Configuration
# Default tolerances, caps and grid settings for every computation.
# Each value can be overridden through a BELLSHAPE_* variable (.env supported).

import os

# === Accuracy ===
DEFAULT_TOLERANCE = 1e-9
DEFAULT_IDENTITY_TOLERANCE = 1e-6  # product / factor identity residuals
DEFAULT_QUAD_LIMIT = 200  # subinterval limit for adaptive quadrature

# === Level crossing ===
DEFAULT_LEVEL_RANGE = 50  # levels -k..k checked when no k_range is given
DEFAULT_K_MAX = 50  # crossing table / split depth

# === Generic callable adapter sampling ===
DEFAULT_GRID_RATIO = 1.05
DEFAULT_GRID_MIN = 1e-6
DEFAULT_GRID_MAX = 1e6

# === Regularity check ===
DEFAULT_REGULARITY_PANELS = 40  # dyadic panels towards xi = 0
DEFAULT_REGULARITY_CAP = 1e8  # partial sum cap before divergence is declared
DEFAULT_REGULARITY_STALL = 3  # successive panels without decay => divergence
DEFAULT_LIMIT_PROBE_MIN = 4  # xi = 2**-j for j in [min, max]
DEFAULT_LIMIT_PROBE_MAX = 20
DEFAULT_LIMIT_THRESHOLD = 1e-3

# === Factorisation ===
DEFAULT_XI_REF = 1.0
DEFAULT_XI_GRID_MIN = 1e-2
DEFAULT_XI_GRID_MAX = 1e2
DEFAULT_XI_GRID_COUNT = 31

# === Exact derivatives ===
DEFAULT_DERIVATIVE_CAP = 60
DEFAULT_ROOT_WIDTH = 1e-12  # enclosure width for certified zeros

# === Post approximants ===
DEFAULT_POST_CAP = 400
DEFAULT_POST_DIRECT_CAP = 60  # above this order the moment form is used
DEFAULT_POST_GUARD_DIGITS = 30

# === PFF sampling ===
DEFAULT_KERNEL_LEAK_LIMIT = 1e-2  # allowed mass loss of a sampled kernel
DEFAULT_KERNEL_SPACING = 0.02
DEFAULT_KERNEL_SCALES = 25.0  # exponential scale lengths kept in a kernel
DEFAULT_VD_TRIALS = 100

# === Concurrency ===
DEFAULT_THREADS = os.cpu_count() or 1


def _float(name, default):
    return float(os.getenv(name, default))


def _int(name, default):
    return int(os.getenv(name, default))


def get_tolerance():
    """Absolute/relative tolerance used when a call gives none"""
    return _float('BELLSHAPE_TOLERANCE', DEFAULT_TOLERANCE)


def get_identity_tolerance():
    """Residual allowed in product and factor identities"""
    return _float('BELLSHAPE_IDENTITY_TOLERANCE', DEFAULT_IDENTITY_TOLERANCE)


def get_quad_limit():
    return _int('BELLSHAPE_QUAD_LIMIT', DEFAULT_QUAD_LIMIT)


def get_level_range():
    """Levels checked on each side of zero by validate_level_crossing"""
    return _int('BELLSHAPE_LEVEL_RANGE', DEFAULT_LEVEL_RANGE)


def get_k_max():
    return _int('BELLSHAPE_K_MAX', DEFAULT_K_MAX)


def get_grid_ratio():
    """Geometric ratio of the sampling grid for callable phi adapters"""
    return _float('BELLSHAPE_GRID_RATIO', DEFAULT_GRID_RATIO)


def get_grid_bounds():
    return (
        _float('BELLSHAPE_GRID_MIN', DEFAULT_GRID_MIN),
        _float('BELLSHAPE_GRID_MAX', DEFAULT_GRID_MAX),
    )


def get_regularity_panels():
    return _int('BELLSHAPE_REGULARITY_PANELS', DEFAULT_REGULARITY_PANELS)


def get_regularity_cap():
    return _float('BELLSHAPE_REGULARITY_CAP', DEFAULT_REGULARITY_CAP)


def get_regularity_stall():
    return _int('BELLSHAPE_REGULARITY_STALL', DEFAULT_REGULARITY_STALL)


def get_limit_probe_range():
    return (
        _int('BELLSHAPE_LIMIT_PROBE_MIN', DEFAULT_LIMIT_PROBE_MIN),
        _int('BELLSHAPE_LIMIT_PROBE_MAX', DEFAULT_LIMIT_PROBE_MAX),
    )


def get_limit_threshold():
    """Largest |xi * Im Phi(xi)| accepted at the smallest probe"""
    return _float('BELLSHAPE_LIMIT_THRESHOLD', DEFAULT_LIMIT_THRESHOLD)


def get_xi_ref():
    """Pinning point for the drift corrections of factor pairs"""
    return _float('BELLSHAPE_XI_REF', DEFAULT_XI_REF)


def get_xi_grid():
    """Log-spaced verification grid (min, max, count)"""
    return (
        _float('BELLSHAPE_XI_GRID_MIN', DEFAULT_XI_GRID_MIN),
        _float('BELLSHAPE_XI_GRID_MAX', DEFAULT_XI_GRID_MAX),
        _int('BELLSHAPE_XI_GRID_COUNT', DEFAULT_XI_GRID_COUNT),
    )


def get_derivative_cap():
    """Highest derivative order built exactly"""
    return _int('BELLSHAPE_DERIVATIVE_CAP', DEFAULT_DERIVATIVE_CAP)


def get_root_width():
    return _float('BELLSHAPE_ROOT_WIDTH', DEFAULT_ROOT_WIDTH)


def get_post_cap():
    return _int('BELLSHAPE_POST_CAP', DEFAULT_POST_CAP)


def get_post_direct_cap():
    return _int('BELLSHAPE_POST_DIRECT_CAP', DEFAULT_POST_DIRECT_CAP)


def get_post_guard_digits():
    return _int('BELLSHAPE_POST_GUARD_DIGITS', DEFAULT_POST_GUARD_DIGITS)


def get_kernel_leak_limit():
    return _float('BELLSHAPE_KERNEL_LEAK_LIMIT', DEFAULT_KERNEL_LEAK_LIMIT)


def get_kernel_spacing():
    return _float('BELLSHAPE_KERNEL_SPACING', DEFAULT_KERNEL_SPACING)


def get_kernel_scales():
    return _float('BELLSHAPE_KERNEL_SCALES', DEFAULT_KERNEL_SCALES)


def get_vd_trials():
    return _int('BELLSHAPE_VD_TRIALS', DEFAULT_VD_TRIALS)


def get_threads():
    return max(1, _int('BELLSHAPE_THREADS', DEFAULT_THREADS))


def get_all_numeric_defaults():
    """Every numeric setting in one dict (printed by the CLI in verbose mode)"""
    return {
        'tolerance': get_tolerance(),
        'identity_tolerance': get_identity_tolerance(),
        'quad_limit': get_quad_limit(),
        'level_range': get_level_range(),
        'k_max': get_k_max(),
        'grid_ratio': get_grid_ratio(),
        'grid_bounds': get_grid_bounds(),
        'regularity_panels': get_regularity_panels(),
        'regularity_cap': get_regularity_cap(),
        'xi_ref': get_xi_ref(),
        'xi_grid': get_xi_grid(),
        'derivative_cap': get_derivative_cap(),
        'root_width': get_root_width(),
        'post_cap': get_post_cap(),
        'post_direct_cap': get_post_direct_cap(),
        'kernel_leak_limit': get_kernel_leak_limit(),
        'threads': get_threads(),
    }
