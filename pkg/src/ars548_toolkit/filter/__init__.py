"""
Filter module - predicate pipeline over object and detection lists.
"""

from .expression import DETECTION_KEYS, OBJECT_KEYS, parse_filter_expression
from .pipeline import FramePipeline, filter_detections, filter_objects
from .predicates import (
    DetectionPredicate,
    ObjectPredicate,
    Predicate,
    always,
    class_predicate,
    compose_and,
    compose_or,
    detection_class_predicate,
    dominant_class,
    min_rcs_predicate,
    min_speed_predicate,
    moving_only_predicate,
    negate,
    valid_only_predicate,
)

__all__ = [
    "DETECTION_KEYS",
    "OBJECT_KEYS",
    "DetectionPredicate",
    "FramePipeline",
    "ObjectPredicate",
    "Predicate",
    "always",
    "class_predicate",
    "compose_and",
    "compose_or",
    "detection_class_predicate",
    "dominant_class",
    "filter_detections",
    "filter_objects",
    "min_rcs_predicate",
    "min_speed_predicate",
    "moving_only_predicate",
    "negate",
    "parse_filter_expression",
    "valid_only_predicate",
]
