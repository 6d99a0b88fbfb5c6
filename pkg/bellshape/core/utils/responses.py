# Response Utilities - Standardized Error/Success Payloads
# Used by the CLI to build the JSON documents it writes (data on stdout,
# structured errors on stderr)
from typing import Any

from .console import print_error


def success_response(data: dict[str, Any] = None, **kwargs) -> dict[str, Any]:
    """
    Document for a finished command

    Args:
        data (dict): Command results (verdicts, residuals, tables)
        **kwargs: Additional fields to include

    Returns:
        dict: {'success': True, ...data, ...kwargs}
    """
    response = {'success': True}
    response.update(data or {})
    response.update(kwargs)
    return response


def error_response(error: str, **kwargs) -> dict[str, Any]:
    """Document for a failed command; the message is also echoed to the console"""
    print_error(error)
    return {'success': False, 'error': error, **kwargs}


def error_from_exception(exc) -> dict[str, Any]:
    """
    Structured error payload for a BellshapeError (or any exception)

    kind and exit_code come from the exception class; anything else falls
    back to kind 'internal' and exit code 1. NumericalError details (achieved
    accuracy, residual profile) are carried under 'details'.
    """
    details = getattr(exc, 'details', None) or {}
    return error_response(
        str(exc),
        kind=getattr(exc, 'kind', 'internal'),
        exit_code=getattr(exc, 'exit_code', 1),
        **({'details': details} if details else {}),
    )
