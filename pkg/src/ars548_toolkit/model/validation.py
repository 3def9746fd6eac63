"""
Invariant checks used by every model constructor.

Each helper raises FieldRangeError naming the offending field, so a value
rejected here reports the same way as a value rejected by the decoders.
"""

import math
from enum import IntEnum
from typing import TypeVar

from ..errors import FieldRangeError

# Binary32 rounding can push an angle just past its interval end
# (float32(pi) > pi); accept that much slack at the boundaries.
ANGLE_TOLERANCE = 1e-6

E = TypeVar("E", bound=IntEnum)


def check_finite(field: str, value: float) -> float:
    """Reject NaN and infinities."""
    if not math.isfinite(value):
        raise FieldRangeError(field, value)
    return value


def check_non_negative(field: str, value: float) -> float:
    """Require a finite value >= 0."""
    if not math.isfinite(value) or value < 0.0:
        raise FieldRangeError(field, value)
    return value


def check_positive(field: str, value: float) -> float:
    """Require a finite value > 0."""
    if not math.isfinite(value) or value <= 0.0:
        raise FieldRangeError(field, value)
    return value


def check_half_open_angle(field: str, value: float) -> float:
    """Require an angle in (-pi, pi]."""
    check_finite(field, value)
    if value <= -math.pi - ANGLE_TOLERANCE or value > math.pi + ANGLE_TOLERANCE:
        raise FieldRangeError(field, value)
    return value


def check_closed_angle(field: str, value: float, limit: float) -> float:
    """Require an angle in [-limit, limit]."""
    check_finite(field, value)
    if abs(value) > limit + ANGLE_TOLERANCE:
        raise FieldRangeError(field, value)
    return value


def check_int_range(field: str, value: int, low: int, high: int) -> int:
    """Require an integer in [low, high]."""
    if isinstance(value, bool) or not isinstance(value, int):
        raise FieldRangeError(field, value)
    if not low <= value <= high:
        raise FieldRangeError(field, value)
    return value


def check_unsigned(field: str, value: int, bits: int) -> int:
    """Require an unsigned integer that fits in ``bits`` bits."""
    return check_int_range(field, value, 0, (1 << bits) - 1)


def check_enum(field: str, enum_type: type[E], value: int) -> E:
    """Coerce a raw integer to ``enum_type`` or raise FIELD_RANGE."""
    try:
        return enum_type(value)
    except ValueError:
        raise FieldRangeError(field, value) from None
