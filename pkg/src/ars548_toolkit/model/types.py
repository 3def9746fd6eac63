"""
Domain types for ARS 548 sensor data and configuration.

All types are frozen dataclasses validated on construction: angles in
radians, distances in meters, speeds in meters/second, sensor frame
x forward / y left / z up.
"""

import math
from dataclasses import dataclass
from enum import IntEnum, IntFlag
from ipaddress import IPv4Address

from ..errors import (
    CountOverflowError,
    FieldRangeError,
    InvalidConfigurationError,
)
from .validation import (
    check_closed_angle,
    check_enum,
    check_finite,
    check_half_open_angle,
    check_int_range,
    check_non_negative,
    check_positive,
    check_unsigned,
)

MAX_DETECTIONS = 800
MAX_OBJECTS = 50
CLASS_COUNT = 8

MIN_DETECTION_DISTANCE_M = 99
MAX_DETECTION_DISTANCE_M = 1500
MIN_CYCLE_TIME_MS = 50
MAX_CYCLE_TIME_MS = 100

UNASSOCIATED_OBJECT_ID = 0xFFFF


class SyncStatus(IntEnum):
    SYNC_OK = 1
    SYNC_NEVER = 2
    SYNC_LOST = 3


class ObjectClass(IntEnum):
    UNKNOWN = 0
    CAR = 1
    TRUCK = 2
    MOTORCYCLE = 3
    PEDESTRIAN = 4
    BICYCLE = 5
    ANIMAL = 6
    HAZARD = 7


class DetectionInvalid(IntFlag):
    """Bits of Detection.invalid_flags."""

    RANGE = 0x01
    ANGLE = 0x02
    RANGE_RATE = 0x04


class MeasurementStatus(IntEnum):
    MEASURED = 0
    PREDICTED = 1
    NEW = 2


class MovementStatus(IntEnum):
    MOVING = 0
    STATIONARY = 1


class PlugOrientation(IntEnum):
    LEFT = 0
    RIGHT = 1


class FrequencySlot(IntEnum):
    LOW = 0
    MID = 1
    HIGH = 2


class Blockage(IntEnum):
    NONE = 0
    PARTIAL = 1
    FULL = 2


def _set(obj: object, name: str, value: object) -> None:
    # frozen dataclasses normalise their own fields in __post_init__
    object.__setattr__(obj, name, value)


def _as_ipv4(field: str, value: IPv4Address | str | int) -> IPv4Address:
    try:
        return IPv4Address(value)
    except ValueError:
        raise FieldRangeError(field, value) from None


@dataclass(frozen=True, slots=True)
class Timestamp:
    """Sensor time stamp with gPTP synchronisation state."""

    seconds: int
    nanoseconds: int
    sync_status: SyncStatus = SyncStatus.SYNC_OK

    def __post_init__(self) -> None:
        check_unsigned("stamp.seconds", self.seconds, 32)
        check_int_range("stamp.nanoseconds", self.nanoseconds, 0, 999_999_999)
        _set(self, "sync_status", check_enum("sync_status", SyncStatus, self.sync_status))

    @classmethod
    def from_ns(
        cls, total_ns: int, sync_status: SyncStatus = SyncStatus.SYNC_OK
    ) -> "Timestamp":
        """Build a stamp from nanoseconds since the epoch."""
        seconds, nanoseconds = divmod(total_ns, 1_000_000_000)
        return cls(seconds, nanoseconds, sync_status)

    def to_ns(self) -> int:
        return self.seconds * 1_000_000_000 + self.nanoseconds

    def to_seconds(self) -> float:
        return self.seconds + self.nanoseconds * 1e-9


@dataclass(frozen=True, slots=True)
class Detection:
    """One raw radar return in sensor spherical coordinates."""

    azimuth: float
    azimuth_std: float
    elevation: float
    elevation_std: float
    range: float
    range_std: float
    range_rate: float
    range_rate_std: float
    rcs: int
    measurement_id: int
    object_id: int = UNASSOCIATED_OBJECT_ID
    classification: ObjectClass = ObjectClass.UNKNOWN
    invalid_flags: int = 0

    def __post_init__(self) -> None:
        check_half_open_angle("azimuth", self.azimuth)
        check_non_negative("azimuth_std", self.azimuth_std)
        check_closed_angle("elevation", self.elevation, math.pi / 2)
        check_non_negative("elevation_std", self.elevation_std)
        check_non_negative("range", self.range)
        check_non_negative("range_std", self.range_std)
        check_finite("range_rate", self.range_rate)
        check_non_negative("range_rate_std", self.range_rate_std)
        check_int_range("rcs", self.rcs, -128, 127)
        check_unsigned("measurement_id", self.measurement_id, 16)
        check_unsigned("object_id", self.object_id, 16)
        check_unsigned("invalid_flags", self.invalid_flags, 8)
        _set(
            self,
            "classification",
            check_enum("classification", ObjectClass, self.classification),
        )

    @property
    def has_valid_position(self) -> bool:
        """True when neither the range nor the angle bit is set."""
        return not self.invalid_flags & (DetectionInvalid.RANGE | DetectionInvalid.ANGLE)


@dataclass(frozen=True, slots=True)
class DetectionList:
    stamp: Timestamp
    sequence_counter: int
    origin_x: float
    origin_y: float
    origin_z: float
    detections: tuple[Detection, ...] = ()

    def __post_init__(self) -> None:
        check_unsigned("sequence_counter", self.sequence_counter, 32)
        check_finite("origin_x", self.origin_x)
        check_finite("origin_y", self.origin_y)
        check_finite("origin_z", self.origin_z)
        _set(self, "detections", tuple(self.detections))
        if len(self.detections) > MAX_DETECTIONS:
            raise CountOverflowError(len(self.detections), MAX_DETECTIONS)


@dataclass(frozen=True, slots=True)
class TrackedObject:
    """One object hypothesis tracked by the sensor."""

    id: int
    age: int
    status_measurement: MeasurementStatus
    status_movement: MovementStatus
    position_x: float
    position_y: float
    position_z: float
    position_std_x: float
    position_std_y: float
    position_std_z: float
    orientation_yaw: float
    orientation_yaw_std: float
    velocity_rel_x: float
    velocity_rel_y: float
    velocity_std_x: float
    velocity_std_y: float
    acceleration_rel_x: float
    acceleration_rel_y: float
    acceleration_std_x: float
    acceleration_std_y: float
    yaw_rate: float
    shape_length: float
    shape_width: float
    classification_probabilities: tuple[int, ...] = (100, 0, 0, 0, 0, 0, 0, 0)

    def __post_init__(self) -> None:
        check_unsigned("id", self.id, 32)
        check_unsigned("age", self.age, 16)
        _set(
            self,
            "status_measurement",
            check_enum("status_measurement", MeasurementStatus, self.status_measurement),
        )
        _set(
            self,
            "status_movement",
            check_enum("status_movement", MovementStatus, self.status_movement),
        )
        for name in ("position_x", "position_y", "position_z"):
            check_finite(name, getattr(self, name))
        for name in ("position_std_x", "position_std_y", "position_std_z"):
            check_non_negative(name, getattr(self, name))
        check_half_open_angle("orientation_yaw", self.orientation_yaw)
        check_non_negative("orientation_yaw_std", self.orientation_yaw_std)
        for name in (
            "velocity_rel_x",
            "velocity_rel_y",
            "acceleration_rel_x",
            "acceleration_rel_y",
            "yaw_rate",
        ):
            check_finite(name, getattr(self, name))
        for name in (
            "velocity_std_x",
            "velocity_std_y",
            "acceleration_std_x",
            "acceleration_std_y",
            "shape_length",
            "shape_width",
        ):
            check_non_negative(name, getattr(self, name))
        probabilities = tuple(self.classification_probabilities)
        if len(probabilities) != CLASS_COUNT:
            raise FieldRangeError("classification_probabilities", probabilities)
        for probability in probabilities:
            check_int_range("classification_probabilities", probability, 0, 100)
        _set(self, "classification_probabilities", probabilities)


@dataclass(frozen=True, slots=True)
class ObjectList:
    stamp: Timestamp
    sequence_counter: int
    objects: tuple[TrackedObject, ...] = ()

    def __post_init__(self) -> None:
        check_unsigned("sequence_counter", self.sequence_counter, 32)
        _set(self, "objects", tuple(self.objects))
        if len(self.objects) > MAX_OBJECTS:
            raise CountOverflowError(len(self.objects), MAX_OBJECTS)
        seen: set[int] = set()
        for obj in self.objects:
            if obj.id in seen:
                raise FieldRangeError("objects.id", obj.id)
            seen.add(obj.id)


@dataclass(frozen=True, slots=True)
class MountingPose:
    """Sensor pose relative to the vehicle front axle."""

    longitudinal: float
    lateral: float
    vertical: float
    yaw: float
    pitch: float
    plug_orientation: PlugOrientation = PlugOrientation.LEFT

    def __post_init__(self) -> None:
        check_finite("longitudinal", self.longitudinal)
        check_finite("lateral", self.lateral)
        check_finite("vertical", self.vertical)
        check_half_open_angle("yaw", self.yaw)
        check_closed_angle("pitch", self.pitch, math.pi / 2)
        _set(
            self,
            "plug_orientation",
            check_enum("plug_orientation", PlugOrientation, self.plug_orientation),
        )


@dataclass(frozen=True, slots=True)
class VehicleDimensions:
    length: float
    width: float
    height: float
    wheelbase: float

    def __post_init__(self) -> None:
        check_positive("length", self.length)
        check_positive("width", self.width)
        check_positive("height", self.height)
        check_positive("wheelbase", self.wheelbase)
        if self.wheelbase > self.length:
            raise FieldRangeError("wheelbase", self.wheelbase)


@dataclass(frozen=True, slots=True)
class RadarParameters:
    """Operating configuration of the radar."""

    max_detection_distance: int
    frequency_slot: FrequencySlot
    cycle_time_ms: int
    sensor_ipv4: IPv4Address
    powersave_standstill: bool = False

    def __post_init__(self) -> None:
        check_int_range(
            "max_detection_distance",
            self.max_detection_distance,
            MIN_DETECTION_DISTANCE_M,
            MAX_DETECTION_DISTANCE_M,
        )
        _set(
            self,
            "frequency_slot",
            check_enum("frequency_slot", FrequencySlot, self.frequency_slot),
        )
        check_int_range(
            "cycle_time_ms", self.cycle_time_ms, MIN_CYCLE_TIME_MS, MAX_CYCLE_TIME_MS
        )
        _set(self, "sensor_ipv4", _as_ipv4("sensor_ipv4", self.sensor_ipv4))
        _set(self, "powersave_standstill", bool(self.powersave_standstill))


@dataclass(frozen=True, slots=True)
class SensorStatus:
    """Status echo periodically sent by the sensor."""

    stamp: Timestamp
    software_version_major: int
    software_version_minor: int
    software_version_patch: int
    mounting: MountingPose
    vehicle: VehicleDimensions
    radar: RadarParameters
    blockage: Blockage = Blockage.NONE
    defective: bool = False

    def __post_init__(self) -> None:
        check_unsigned("software_version_major", self.software_version_major, 8)
        check_unsigned("software_version_minor", self.software_version_minor, 8)
        check_unsigned("software_version_patch", self.software_version_patch, 8)
        _set(self, "blockage", check_enum("blockage", Blockage, self.blockage))
        _set(self, "defective", bool(self.defective))

    @property
    def is_healthy(self) -> bool:
        return not self.defective and self.blockage == Blockage.NONE


@dataclass(frozen=True, slots=True)
class SensorConfiguration:
    """Write-side configuration request; absent groups stay untouched."""

    mounting: MountingPose | None = None
    vehicle: VehicleDimensions | None = None
    radar: RadarParameters | None = None
    new_sensor_ipv4: IPv4Address | None = None

    def __post_init__(self) -> None:
        if self.new_sensor_ipv4 is not None:
            _set(
                self,
                "new_sensor_ipv4",
                _as_ipv4("new_sensor_ipv4", self.new_sensor_ipv4),
            )
        if (
            self.mounting is None
            and self.vehicle is None
            and self.radar is None
            and self.new_sensor_ipv4 is None
        ):
            raise InvalidConfigurationError("configuration has no parameter group")
