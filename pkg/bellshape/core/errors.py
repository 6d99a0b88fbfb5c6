# Error hierarchy
# Every failure the library raises maps to one kind and one CLI exit code.
# Mathematical verdicts (reject / fail / violated) are returned, never raised.

from .config.cli_config import EXIT_BAD_CONFIG, EXIT_NUMERICAL


class BellshapeError(Exception):
    kind = 'error'
    exit_code = EXIT_BAD_CONFIG

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details


class StructuralError(BellshapeError):
    """Malformed table or payload (unsorted knots, bad tail exponent, ...)"""

    kind = 'structural'


class DomainError(BellshapeError):
    kind = 'domain'


class BellshapeRangeError(BellshapeError):
    """Requested depth or order lies outside what the call supports"""

    kind = 'range'


class PreconditionError(BellshapeError):
    kind = 'precondition'


class UnsupportedError(BellshapeError):
    kind = 'unsupported'


class ConfigError(BellshapeError):
    kind = 'config'


class NumericalError(BellshapeError):
    """Quadrature or inversion did not reach the requested tolerance"""

    kind = 'numerical'
    exit_code = EXIT_NUMERICAL


class ConsistencyError(BellshapeError):
    """An internal self-check failed (e.g. g_n took a negative value)"""

    kind = 'consistency'
    exit_code = EXIT_NUMERICAL
