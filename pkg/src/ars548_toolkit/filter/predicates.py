"""
Composable single-frame predicates over tracked objects and detections.

Predicates are immutable and pure, so one instance can be shared across
frames and threads. Combine them with ``&``, ``|`` and ``~`` or with the
``compose_*`` helpers.
"""

import math
from collections.abc import Callable, Iterable
from dataclasses import dataclass

from ..model import (
    Detection,
    DetectionInvalid,
    MovementStatus,
    ObjectClass,
    TrackedObject,
    kmh_to_mps,
    object_speed,
)


@dataclass(frozen=True)
class Predicate[T]:
    """A named decision function."""

    name: str
    fn: Callable[[T], bool]

    def __call__(self, item: T) -> bool:
        return bool(self.fn(item))

    def __and__(self, other: "Predicate[T]") -> "Predicate[T]":
        return compose_and([self, other])

    def __or__(self, other: "Predicate[T]") -> "Predicate[T]":
        return compose_or([self, other])

    def __invert__(self) -> "Predicate[T]":
        return negate(self)

    def __str__(self) -> str:
        return self.name


type ObjectPredicate = Predicate[TrackedObject]
type DetectionPredicate = Predicate[Detection]


def always[T](value: bool) -> Predicate[T]:
    return Predicate("true" if value else "false", lambda _item: value)


def compose_and[T](preds: Iterable[Predicate[T]]) -> Predicate[T]:
    """Conjunction; the empty conjunction accepts everything."""
    parts = tuple(preds)
    if not parts:
        return always(True)
    if len(parts) == 1:
        return parts[0]
    return Predicate(
        " & ".join(p.name for p in parts), lambda item: all(p(item) for p in parts)
    )


def compose_or[T](preds: Iterable[Predicate[T]]) -> Predicate[T]:
    """Disjunction; the empty disjunction rejects everything."""
    parts = tuple(preds)
    if not parts:
        return always(False)
    if len(parts) == 1:
        return parts[0]
    return Predicate(
        " | ".join(f"({p.name})" for p in parts),
        lambda item: any(p(item) for p in parts),
    )


def negate[T](pred: Predicate[T]) -> Predicate[T]:
    return Predicate(f"!({pred.name})", lambda item: not pred(item))


# Object predicates


def dominant_class(obj: TrackedObject) -> ObjectClass:
    """Class with the highest probability; ties go to the lower class index."""
    probabilities = obj.classification_probabilities
    return ObjectClass(max(range(len(probabilities)), key=lambda i: (probabilities[i], -i)))


def min_speed_predicate(threshold_kmh: float) -> ObjectPredicate:
    """Accept objects moving strictly faster than ``threshold_kmh``.

    Raises:
        ValueError: If the threshold is negative or not finite
    """
    if not math.isfinite(threshold_kmh) or threshold_kmh < 0:
        raise ValueError(f"speed threshold must be a non-negative number, got {threshold_kmh}")
    threshold_mps = kmh_to_mps(threshold_kmh)
    return Predicate(
        f"min_speed_kmh={threshold_kmh:g}",
        lambda obj: object_speed(obj) > threshold_mps,
    )


def class_predicate(classification: ObjectClass) -> ObjectPredicate:
    """Accept objects whose dominant class is ``classification``."""
    target = ObjectClass(classification)
    return Predicate(f"class={target.name}", lambda obj: dominant_class(obj) == target)


def moving_only_predicate() -> ObjectPredicate:
    return Predicate(
        "moving_only=true", lambda obj: obj.status_movement == MovementStatus.MOVING
    )


# Detection predicates


def valid_only_predicate(
    mask: int = DetectionInvalid.RANGE | DetectionInvalid.ANGLE,
) -> DetectionPredicate:
    """Accept detections with none of the ``mask`` bits set in invalid_flags."""
    return Predicate(
        f"valid_only(mask=0x{mask:02x})", lambda det: not det.invalid_flags & mask
    )


def min_rcs_predicate(min_rcs_dbsm: float) -> DetectionPredicate:
    """Accept detections with RCS at or above ``min_rcs_dbsm``."""
    return Predicate(f"min_rcs_dbsm={min_rcs_dbsm:g}", lambda det: det.rcs >= min_rcs_dbsm)


def detection_class_predicate(classification: ObjectClass) -> DetectionPredicate:
    target = ObjectClass(classification)
    return Predicate(
        f"detection_class={target.name}", lambda det: det.classification == target
    )
