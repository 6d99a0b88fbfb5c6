# Shared utilities - console output, response payloads, input checks
from .console import (
    print_config_item,
    print_error,
    print_header,
    print_info,
    print_section,
    print_separator,
    print_status_item,
    print_success,
    print_warning,
)
from .responses import error_response, success_response
from .validation import require_keys
