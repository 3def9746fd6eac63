"""
Kinematic scenarios driving the sensor simulator.
"""

import math
from dataclasses import dataclass, field
from ipaddress import IPv4Address

from ..config.settings import Config
from ..errors import FieldRangeError
from ..model import (
    MAX_DETECTIONS,
    MAX_OBJECTS,
    FrequencySlot,
    MountingPose,
    ObjectClass,
    RadarParameters,
    VehicleDimensions,
)
from ..model.validation import (
    check_enum,
    check_finite,
    check_int_range,
    check_non_negative,
    check_positive,
    check_unsigned,
)

MAX_DETECTIONS_PER_OBJECT = 16
MIN_CYCLE_RATE_HZ = 1.0
MAX_CYCLE_RATE_HZ = 50.0

Vector = tuple[float, float, float]


@dataclass(frozen=True, slots=True)
class ScenarioObject:
    """A point target moving with constant acceleration in the sensor frame."""

    x: float
    y: float
    z: float = 0.0
    vx: float = 0.0
    vy: float = 0.0
    ax: float = 0.0
    ay: float = 0.0
    classification: ObjectClass = ObjectClass.CAR
    length: float = 4.5
    width: float = 1.8
    detections_per_cycle: int = 1

    def __post_init__(self) -> None:
        for name in ("x", "y", "z", "vx", "vy", "ax", "ay"):
            check_finite(name, getattr(self, name))
        check_non_negative("length", self.length)
        check_non_negative("width", self.width)
        check_int_range(
            "detections_per_cycle",
            self.detections_per_cycle,
            0,
            MAX_DETECTIONS_PER_OBJECT,
        )
        object.__setattr__(
            self,
            "classification",
            check_enum("classification", ObjectClass, self.classification),
        )


@dataclass(frozen=True, slots=True)
class DetectionNoise:
    """Standard deviations of the Gaussian noise added to detections."""

    range_std: float = 0.0
    azimuth_std: float = 0.0
    elevation_std: float = 0.0
    range_rate_std: float = 0.0

    def __post_init__(self) -> None:
        check_non_negative("range_std", self.range_std)
        check_non_negative("azimuth_std", self.azimuth_std)
        check_non_negative("elevation_std", self.elevation_std)
        check_non_negative("range_rate_std", self.range_rate_std)


def _default_radar() -> RadarParameters:
    return RadarParameters(
        max_detection_distance=Config.DEFAULT_MAX_DISTANCE_M,
        frequency_slot=FrequencySlot.MID,
        cycle_time_ms=Config.DEFAULT_CYCLE_TIME_MS,
        sensor_ipv4=IPv4Address(Config.SENSOR_ADDRESS),
    )


@dataclass(frozen=True, slots=True)
class SensorSetup:
    """Initial state echoed by the simulated sensor's Status frames."""

    software_version: tuple[int, int, int] = (5, 0, 0)
    mounting: MountingPose = field(
        default_factory=lambda: MountingPose(0.0, 0.0, 0.5, 0.0, 0.0)
    )
    vehicle: VehicleDimensions = field(
        default_factory=lambda: VehicleDimensions(4.8, 1.9, 1.5, 2.8)
    )
    radar: RadarParameters = field(default_factory=_default_radar)


@dataclass(frozen=True, slots=True)
class Scenario:
    """Everything needed to synthesize a deterministic frame sequence.

    ``epoch_ns`` anchors the sensor stamps; ``None`` lets the emitter anchor
    them to its start time. ``stamp_offset_s`` shifts all sensor stamps,
    emulating a sensor clock that disagrees with the host.
    """

    duration: float
    cycle_rate: float = 20.0
    objects: tuple[ScenarioObject, ...] = ()
    noise: DetectionNoise = field(default_factory=DetectionNoise)
    seed: int = 0
    stamp_offset_s: float = 0.0
    epoch_ns: int | None = None
    sensor: SensorSetup = field(default_factory=SensorSetup)

    def __post_init__(self) -> None:
        check_positive("duration", self.duration)
        if not MIN_CYCLE_RATE_HZ <= self.cycle_rate <= MAX_CYCLE_RATE_HZ:
            raise FieldRangeError("cycle_rate", self.cycle_rate)
        check_unsigned("seed", self.seed, 64)
        check_finite("stamp_offset_s", self.stamp_offset_s)
        object.__setattr__(self, "objects", tuple(self.objects))
        if len(self.objects) > MAX_OBJECTS:
            raise FieldRangeError("objects", len(self.objects))
        if self.detections_per_cycle > MAX_DETECTIONS:
            raise FieldRangeError("detections_per_cycle", self.detections_per_cycle)

    @property
    def detections_per_cycle(self) -> int:
        return sum(obj.detections_per_cycle for obj in self.objects)

    @property
    def cycle_count(self) -> int:
        """Number of cycles whose time cycle/rate lies inside the duration."""
        return max(1, math.floor(self.duration * self.cycle_rate + 1e-9))

    def cycle_time(self, cycle: int) -> float:
        return cycle / self.cycle_rate


def propagate(obj: ScenarioObject, t: float) -> tuple[Vector, Vector]:
    """Constant-acceleration state of ``obj`` at time ``t``.

    Returns:
        ``((x, y, z), (vx, vy, 0))``; the vertical coordinate is constant.

    Raises:
        FieldRangeError: If ``t`` is negative
    """
    if t < 0:
        raise FieldRangeError("t", t)
    half_t2 = 0.5 * t * t
    position = (
        obj.x + obj.vx * t + obj.ax * half_t2,
        obj.y + obj.vy * t + obj.ay * half_t2,
        obj.z,
    )
    velocity = (obj.vx + obj.ax * t, obj.vy + obj.ay * t, 0.0)
    return position, velocity
