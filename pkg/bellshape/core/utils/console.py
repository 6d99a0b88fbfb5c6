# Console Output Utilities
# Decorative diagnostic output. Everything goes to stderr so that data
# written to stdout (CSV / JSON) stays machine readable.

import sys


def _emit(text: str = ''):
    print(text, file=sys.stderr)


def print_header(title: str):
    """Print a major header with decorative box"""
    _emit()
    _emit("=" * 60)
    _emit(f"                {title}")
    _emit("=" * 60)
    _emit()


def print_section(title: str):
    """Print a section header"""
    _emit()
    _emit(f"📋 {title}")
    _emit()


def print_success(message: str):
    _emit(f"✅ {message}")


def print_error(message: str):
    _emit(f"❌ {message}")


def print_warning(message: str):
    _emit(f"⚠️  {message}")


def print_info(message: str):
    _emit(f"ℹ️  {message}")


def print_separator():
    _emit("-" * 50)


def print_config_item(label: str, value):
    _emit(f"   {label}: {value}")


def print_status_item(status: bool, message: str):
    """Print a status item with success/failure indicator"""
    icon = "✅" if status else "❌"
    _emit(f"   {icon} {message}")
