# Command registry - maps CLI subcommand names to their handlers.
# Command modules register themselves with @register_command at import time.

import inspect
import threading
from typing import Callable, Optional

_COMMAND_REGISTRY: dict[str, Callable] = {}
_REGISTRY_LOCK = threading.Lock()


class CommandRegistrationError(Exception):
    pass


def register_command(name: Optional[str] = None):
    """
    Decorator to register a function as a CLI subcommand.

    Requirements enforced:
      - Callable takes exactly 2 parameters: job (JobConfig) and payload (dict)
      - Names are unique
    """

    def decorator(fn: Callable):
        command_name = name or fn.__name__.replace('_', '-')

        params = list(inspect.signature(fn).parameters.values())
        if len(params) != 2:
            raise CommandRegistrationError(
                f"{fn.__name__} must take exactly two arguments: job and payload."
            )
        if params[0].name != 'job':
            raise CommandRegistrationError(f"{fn.__name__} first param must be named 'job'.")
        if params[1].name != 'payload':
            raise CommandRegistrationError(f"{fn.__name__} second param must be named 'payload'.")

        with _REGISTRY_LOCK:
            if command_name in _COMMAND_REGISTRY:
                raise CommandRegistrationError(f"Command '{command_name}' already registered.")
            _COMMAND_REGISTRY[command_name] = fn

        return fn

    return decorator


def get_command(name: str) -> Optional[Callable]:
    return _COMMAND_REGISTRY.get(name)


def list_commands() -> list[str]:
    return sorted(_COMMAND_REGISTRY.keys())
