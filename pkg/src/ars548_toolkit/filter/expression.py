"""
Filter expression mini-language used by the CLI.

Grammar::

    expression := clause ("&" clause)*
    clause     := key "=" value

Object keys: ``min_speed_kmh`` (number >= 0, strict "faster than"),
``class`` (class name or index, matched against the dominant class),
``moving_only`` (true/false). Detection keys: ``min_rcs_dbsm`` (number),
``valid_only`` (true/false, drops detections with the range or angle
invalid bit set).
"""

import math

from ..errors import FilterExpressionError
from ..model import ObjectClass
from .pipeline import FramePipeline
from .predicates import (
    DetectionPredicate,
    ObjectPredicate,
    class_predicate,
    compose_and,
    min_rcs_predicate,
    min_speed_predicate,
    moving_only_predicate,
    valid_only_predicate,
)

OBJECT_KEYS = ("min_speed_kmh", "class", "moving_only")
DETECTION_KEYS = ("min_rcs_dbsm", "valid_only")

_TRUE = ("true", "1", "yes", "on")
_FALSE = ("false", "0", "no", "off")


def _number(key: str, value: str) -> float:
    try:
        number = float(value)
    except ValueError:
        raise FilterExpressionError(f"{key} expects a number, got '{value}'") from None
    if not math.isfinite(number):
        raise FilterExpressionError(f"{key} expects a finite number, got '{value}'")
    return number


def _boolean(key: str, value: str) -> bool:
    lowered = value.lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise FilterExpressionError(f"{key} expects true or false, got '{value}'")


def _classification(value: str) -> ObjectClass:
    name = value.upper()
    if name in ObjectClass.__members__:
        return ObjectClass[name]
    if value.isdigit() and int(value) < len(ObjectClass):
        return ObjectClass(int(value))
    available = ", ".join(ObjectClass.__members__)
    raise FilterExpressionError(f"unknown class '{value}' (expected one of {available})")


def parse_filter_expression(text: str) -> FramePipeline:
    """Parse ``text`` into a frame pipeline.

    Raises:
        FilterExpressionError: On empty clauses, unknown or repeated keys and
            malformed values
    """
    object_preds: list[ObjectPredicate] = []
    detection_preds: list[DetectionPredicate] = []
    seen: set[str] = set()

    for clause in text.split("&"):
        key, sep, value = (part.strip() for part in clause.partition("="))
        if not sep or not key or not value:
            raise FilterExpressionError(f"expected key=value, got '{clause.strip()}'")
        if key in seen:
            raise FilterExpressionError(f"key '{key}' given more than once")
        seen.add(key)

        match key:
            case "min_speed_kmh":
                threshold = _number(key, value)
                if threshold < 0:
                    raise FilterExpressionError(f"{key} must be >= 0, got {value}")
                object_preds.append(min_speed_predicate(threshold))
            case "class":
                object_preds.append(class_predicate(_classification(value)))
            case "moving_only":
                if _boolean(key, value):
                    object_preds.append(moving_only_predicate())
            case "min_rcs_dbsm":
                detection_preds.append(min_rcs_predicate(_number(key, value)))
            case "valid_only":
                if _boolean(key, value):
                    detection_preds.append(valid_only_predicate())
            case _:
                known = ", ".join(OBJECT_KEYS + DETECTION_KEYS)
                raise FilterExpressionError(f"unknown key '{key}' (expected one of {known})")

    return FramePipeline(
        objects=compose_and(object_preds) if object_preds else None,
        detections=compose_and(detection_preds) if detection_preds else None,
    )
