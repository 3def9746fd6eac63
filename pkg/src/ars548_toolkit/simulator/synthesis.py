"""
Per-cycle frame synthesis.

Objects are emitted noise-free, detections carry seeded Gaussian noise.
Every float goes through binary32 before it lands in a model value, so the
synthesized frames survive an encode/decode round trip unchanged and the
ground truth equals what a receiver decodes.
"""

import json
import math
from dataclasses import dataclass
from typing import Any, NamedTuple

import numpy as np

from ..errors import FieldRangeError
from ..model import (
    EPS_SPEED,
    Detection,
    DetectionList,
    MeasurementStatus,
    MovementStatus,
    ObjectClass,
    ObjectList,
    SensorStatus,
    Timestamp,
    TrackedObject,
    radial_velocity,
    wrap_angle,
)
from .scenario import Scenario, ScenarioObject, Vector, propagate

NS_PER_S = 1_000_000_000
HALF_PI = math.pi / 2

# Typical radar cross-sections per class, dBsm
CLASS_RCS_DBSM: dict[ObjectClass, int] = {
    ObjectClass.UNKNOWN: 0,
    ObjectClass.CAR: 10,
    ObjectClass.TRUCK: 20,
    ObjectClass.MOTORCYCLE: 5,
    ObjectClass.PEDESTRIAN: -5,
    ObjectClass.BICYCLE: 0,
    ObjectClass.ANIMAL: -3,
    ObjectClass.HAZARD: 0,
}


def _f32(value: float) -> float:
    return float(np.float32(value))


@dataclass(frozen=True, slots=True)
class GroundTruthObject:
    id: int
    position: Vector
    velocity: tuple[float, float]


@dataclass(frozen=True, slots=True)
class GroundTruth:
    """True kinematic state of every scenario object in one cycle."""

    cycle: int
    time: float
    objects: tuple[GroundTruthObject, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "cycle": self.cycle,
            "time": self.time,
            "objects": [
                {"id": obj.id, "p": list(obj.position), "v": list(obj.velocity)}
                for obj in self.objects
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


class CycleFrames(NamedTuple):
    objects: ObjectList
    detections: DetectionList
    ground_truth: GroundTruth


def noise_generator(seed: int, cycle: int) -> np.random.Generator:
    """Independent Philox stream for one cycle, keyed ``(cycle << 64) | seed``."""
    return np.random.Generator(np.random.Philox(key=(cycle << 64) | seed))


def cycle_stamp(scenario: Scenario, cycle: int) -> Timestamp:
    """Sensor stamp of ``cycle``: the epoch plus cycle/rate, floored to ns."""
    epoch_ns = scenario.epoch_ns or 0
    offset_ns = round(scenario.stamp_offset_s * NS_PER_S)
    elapsed_ns = int((cycle * NS_PER_S) // scenario.cycle_rate)
    return Timestamp.from_ns(max(0, epoch_ns + offset_ns + elapsed_ns))


def initial_status(scenario: Scenario) -> SensorStatus:
    """Status echo of a freshly started simulated sensor."""
    setup = scenario.sensor
    major, minor, patch = setup.software_version
    return SensorStatus(
        stamp=cycle_stamp(scenario, 0),
        software_version_major=major,
        software_version_minor=minor,
        software_version_patch=patch,
        mounting=setup.mounting,
        vehicle=setup.vehicle,
        radar=setup.radar,
    )


def _tracked_object(
    index: int,
    obj: ScenarioObject,
    cycle: int,
    position: Vector,
    velocity: Vector,
    scenario: Scenario,
) -> TrackedObject:
    vx, vy, _ = velocity
    speed = math.hypot(vx, vy)
    moving = speed > EPS_SPEED
    heading = wrap_angle(math.atan2(vy, vx)) if moving else 0.0
    # turn rate of a constant-acceleration path: (v x a) / |v|^2
    yaw_rate = (vx * obj.ay - vy * obj.ax) / (speed * speed) if moving else 0.0
    noise = scenario.noise
    probabilities = [0] * len(ObjectClass)
    probabilities[obj.classification] = 100
    return TrackedObject(
        id=index,
        age=min(cycle, 0xFFFF),
        status_measurement=MeasurementStatus.NEW if cycle == 0 else MeasurementStatus.MEASURED,
        status_movement=MovementStatus.MOVING if moving else MovementStatus.STATIONARY,
        position_x=_f32(position[0]),
        position_y=_f32(position[1]),
        position_z=_f32(position[2]),
        position_std_x=_f32(noise.range_std),
        position_std_y=_f32(noise.range_std),
        position_std_z=_f32(noise.range_std),
        orientation_yaw=_f32(heading),
        orientation_yaw_std=_f32(noise.azimuth_std),
        velocity_rel_x=_f32(vx),
        velocity_rel_y=_f32(vy),
        velocity_std_x=_f32(noise.range_rate_std),
        velocity_std_y=_f32(noise.range_rate_std),
        acceleration_rel_x=_f32(obj.ax),
        acceleration_rel_y=_f32(obj.ay),
        acceleration_std_x=0.0,
        acceleration_std_y=0.0,
        yaw_rate=_f32(yaw_rate),
        shape_length=_f32(obj.length),
        shape_width=_f32(obj.width),
        classification_probabilities=tuple(probabilities),
    )


def synthesize_cycle(scenario: Scenario, cycle: int) -> CycleFrames:
    """Build the ObjectList, DetectionList and ground truth of one cycle.

    A pure function of ``(scenario, cycle)``: the noise stream of each cycle
    is keyed by the cycle index, so cycles can be synthesized in any order.

    Raises:
        FieldRangeError: If the cycle lies outside the scenario duration
    """
    t = scenario.cycle_time(cycle)
    if cycle < 0 or t > scenario.duration + 1e-9:
        raise FieldRangeError("cycle", cycle)

    stamp = cycle_stamp(scenario, cycle)
    sequence = cycle & 0xFFFFFFFF
    mounting = scenario.sensor.mounting
    noise = scenario.noise
    stds = np.array(
        [noise.range_std, noise.azimuth_std, noise.elevation_std, noise.range_rate_std]
    )
    samples = noise_generator(scenario.seed, cycle).standard_normal(
        (scenario.detections_per_cycle, 4)
    ) * stds

    tracked: list[TrackedObject] = []
    truth: list[GroundTruthObject] = []
    detections: list[Detection] = []
    for index, obj in enumerate(scenario.objects):
        position, velocity = propagate(obj, t)
        track = _tracked_object(index, obj, cycle, position, velocity, scenario)
        tracked.append(track)
        truth.append(
            GroundTruthObject(
                id=track.id,
                position=(track.position_x, track.position_y, track.position_z),
                velocity=(track.velocity_rel_x, track.velocity_rel_y),
            )
        )

        x, y, z = position
        true_range = math.sqrt(x * x + y * y + z * z)
        true_azimuth = math.atan2(y, x)
        true_elevation = math.asin(z / true_range) if true_range > 0 else 0.0
        true_rate = radial_velocity(x, y, z, velocity[0], velocity[1])
        for _ in range(obj.detections_per_cycle):
            d_range, d_azimuth, d_elevation, d_rate = samples[len(detections)]
            elevation = min(HALF_PI, max(-HALF_PI, true_elevation + d_elevation))
            detections.append(
                Detection(
                    azimuth=_f32(wrap_angle(true_azimuth + d_azimuth)),
                    azimuth_std=_f32(noise.azimuth_std),
                    elevation=_f32(elevation),
                    elevation_std=_f32(noise.elevation_std),
                    range=_f32(max(0.0, true_range + d_range)),
                    range_std=_f32(noise.range_std),
                    range_rate=_f32(true_rate + d_rate),
                    range_rate_std=_f32(noise.range_rate_std),
                    rcs=CLASS_RCS_DBSM[obj.classification],
                    measurement_id=len(detections),
                    object_id=index,
                    classification=obj.classification,
                )
            )

    return CycleFrames(
        objects=ObjectList(stamp=stamp, sequence_counter=sequence, objects=tuple(tracked)),
        detections=DetectionList(
            stamp=stamp,
            sequence_counter=sequence,
            origin_x=_f32(mounting.longitudinal),
            origin_y=_f32(mounting.lateral),
            origin_z=_f32(mounting.vertical),
            detections=tuple(detections),
        ),
        ground_truth=GroundTruth(cycle=cycle, time=t, objects=tuple(truth)),
    )
