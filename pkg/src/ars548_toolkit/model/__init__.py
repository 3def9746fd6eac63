"""
Model module - domain types, units and kinematic helpers.
"""

from .frames import (
    Endpoint,
    Frame,
    FrameKind,
    FramePayload,
    RecvTime,
    StampPolicy,
    apply_configuration,
    apply_stamp_policy,
)
from .kinematics import (
    EPS_SPEED,
    KMH_PER_MPS,
    kmh_to_mps,
    mps_to_kmh,
    object_heading,
    object_speed,
    radial_velocity,
    wrap_angle,
)
from .types import (
    CLASS_COUNT,
    MAX_DETECTIONS,
    MAX_OBJECTS,
    UNASSOCIATED_OBJECT_ID,
    Blockage,
    Detection,
    DetectionInvalid,
    DetectionList,
    FrequencySlot,
    MeasurementStatus,
    MountingPose,
    MovementStatus,
    ObjectClass,
    ObjectList,
    PlugOrientation,
    RadarParameters,
    SensorConfiguration,
    SensorStatus,
    SyncStatus,
    Timestamp,
    TrackedObject,
    VehicleDimensions,
)

__all__ = [
    "CLASS_COUNT",
    "EPS_SPEED",
    "KMH_PER_MPS",
    "MAX_DETECTIONS",
    "MAX_OBJECTS",
    "UNASSOCIATED_OBJECT_ID",
    "Blockage",
    "Detection",
    "DetectionInvalid",
    "DetectionList",
    "Endpoint",
    "Frame",
    "FrameKind",
    "FramePayload",
    "FrequencySlot",
    "MeasurementStatus",
    "MountingPose",
    "MovementStatus",
    "ObjectClass",
    "ObjectList",
    "PlugOrientation",
    "RadarParameters",
    "RecvTime",
    "SensorConfiguration",
    "SensorStatus",
    "StampPolicy",
    "SyncStatus",
    "Timestamp",
    "TrackedObject",
    "VehicleDimensions",
    "apply_configuration",
    "apply_stamp_policy",
    "kmh_to_mps",
    "mps_to_kmh",
    "object_heading",
    "object_speed",
    "radial_velocity",
    "wrap_angle",
]
