from collections.abc import Iterable

from ..errors import StructuralError


def require_keys(payload: dict, keys: Iterable[str], where: str = 'payload') -> None:
    if not isinstance(payload, dict):
        raise StructuralError(f"{where} must be a JSON object")
    missing = [k for k in keys if k not in payload]
    if missing:
        raise StructuralError(f"Missing required {where} keys: {', '.join(missing)}")


def require_finite(value: float, name: str) -> float:
    value = float(value)
    if value != value or value in (float('inf'), float('-inf')):
        raise StructuralError(f"{name} must be finite, got {value}")
    return value
