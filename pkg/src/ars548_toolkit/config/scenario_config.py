"""Pydantic models for simulator scenario files."""

import os
import re
from ipaddress import IPv4Address
from typing import Any

from pydantic import BaseModel, Field, field_validator

from ..model import (
    MAX_DETECTIONS,
    MAX_OBJECTS,
    FrequencySlot,
    MountingPose,
    ObjectClass,
    PlugOrientation,
    RadarParameters,
    VehicleDimensions,
)
from ..simulator.scenario import (
    MAX_DETECTIONS_PER_OBJECT,
    DetectionNoise,
    Scenario,
    ScenarioObject,
    SensorSetup,
)
from .settings import Config


class ScenarioObjectDefinition(BaseModel):
    """One simulated target.

    Attributes:
        x, y, z: Initial position in meters (sensor frame)
        vx, vy: Initial velocity in m/s
        ax, ay: Constant acceleration in m/s²
        classification: Object class name (CAR, PEDESTRIAN, ...)
        length, width: Shape in meters
        detections_per_cycle: Raw detections generated per cycle
    """

    x: float = Field(..., description="Initial x position (m)")
    y: float = Field(..., description="Initial y position (m)")
    z: float = Field(default=0.0, description="Height (m)")
    vx: float = Field(default=0.0, description="Initial x velocity (m/s)")
    vy: float = Field(default=0.0, description="Initial y velocity (m/s)")
    ax: float = Field(default=0.0, description="x acceleration (m/s²)")
    ay: float = Field(default=0.0, description="y acceleration (m/s²)")
    classification: str = Field(default="CAR", description="Object class name")
    length: float = Field(default=4.5, ge=0.0, description="Shape length (m)")
    width: float = Field(default=1.8, ge=0.0, description="Shape width (m)")
    detections_per_cycle: int = Field(
        default=1,
        ge=0,
        le=MAX_DETECTIONS_PER_OBJECT,
        description="Raw detections generated per cycle",
    )

    @field_validator("classification")
    @classmethod
    def validate_classification(cls, v: str) -> str:
        """Accept class names case-insensitively."""
        name = v.strip().upper()
        if name not in ObjectClass.__members__:
            available = ", ".join(ObjectClass.__members__)
            raise ValueError(f"Unknown class '{v}'. Available classes: {available}")
        return name

    def to_object(self) -> ScenarioObject:
        return ScenarioObject(
            x=self.x,
            y=self.y,
            z=self.z,
            vx=self.vx,
            vy=self.vy,
            ax=self.ax,
            ay=self.ay,
            classification=ObjectClass[self.classification],
            length=self.length,
            width=self.width,
            detections_per_cycle=self.detections_per_cycle,
        )


class NoiseDefinition(BaseModel):
    """Gaussian detection noise, one standard deviation per channel."""

    range_std: float = Field(default=0.0, ge=0.0, description="Range noise (m)")
    azimuth_std: float = Field(default=0.0, ge=0.0, description="Azimuth noise (rad)")
    elevation_std: float = Field(default=0.0, ge=0.0, description="Elevation noise (rad)")
    range_rate_std: float = Field(
        default=0.0, ge=0.0, description="Range rate noise (m/s)"
    )


class MountingDefinition(BaseModel):
    longitudinal: float = 0.0
    lateral: float = 0.0
    vertical: float = 0.5
    yaw: float = 0.0
    pitch: float = 0.0
    plug_orientation: int = Field(default=0, ge=0, le=1)


class VehicleDefinition(BaseModel):
    length: float = Field(default=4.8, gt=0.0)
    width: float = Field(default=1.9, gt=0.0)
    height: float = Field(default=1.5, gt=0.0)
    wheelbase: float = Field(default=2.8, gt=0.0)


class SensorDefinition(BaseModel):
    """Initial state of the simulated sensor (echoed in Status frames)."""

    software_version: tuple[int, int, int] = (5, 0, 0)
    max_detection_distance: int = Field(
        default_factory=lambda: Config.DEFAULT_MAX_DISTANCE_M, ge=99, le=1500
    )
    frequency_slot: int = Field(default=1, ge=0, le=2)
    cycle_time_ms: int = Field(
        default_factory=lambda: Config.DEFAULT_CYCLE_TIME_MS, ge=50, le=100
    )
    sensor_ip: IPv4Address = Field(
        default_factory=lambda: IPv4Address(Config.SENSOR_ADDRESS)
    )
    powersave_standstill: bool = False
    mounting: MountingDefinition = Field(default_factory=MountingDefinition)
    vehicle: VehicleDefinition = Field(default_factory=VehicleDefinition)

    def to_setup(self) -> SensorSetup:
        return SensorSetup(
            software_version=self.software_version,
            mounting=MountingPose(
                longitudinal=self.mounting.longitudinal,
                lateral=self.mounting.lateral,
                vertical=self.mounting.vertical,
                yaw=self.mounting.yaw,
                pitch=self.mounting.pitch,
                plug_orientation=PlugOrientation(self.mounting.plug_orientation),
            ),
            vehicle=VehicleDimensions(
                length=self.vehicle.length,
                width=self.vehicle.width,
                height=self.vehicle.height,
                wheelbase=self.vehicle.wheelbase,
            ),
            radar=RadarParameters(
                max_detection_distance=self.max_detection_distance,
                frequency_slot=FrequencySlot(self.frequency_slot),
                cycle_time_ms=self.cycle_time_ms,
                sensor_ipv4=self.sensor_ip,
                powersave_standstill=self.powersave_standstill,
            ),
        )


class ScenarioDefinition(BaseModel):
    """A scenario file as written by users.

    Attributes:
        name: Free-form label
        duration: Scenario length in seconds
        cycle_rate: Sensor cycles per second
        seed: Noise generator seed (64-bit unsigned)
        stamp_offset_s: Offset added to every sensor stamp
        noise: Detection noise
        sensor: Initial sensor state
        objects: Simulated targets
    """

    name: str = Field(default="", description="Free-form label")
    duration: float = Field(..., gt=0.0, description="Scenario length (s)")
    cycle_rate: float = Field(default=20.0, ge=1.0, le=50.0, description="Hz")
    seed: int = Field(default=0, ge=0, lt=2**64, description="Noise seed")
    stamp_offset_s: float = Field(default=0.0, description="Sensor clock offset (s)")
    noise: NoiseDefinition = Field(default_factory=NoiseDefinition)
    sensor: SensorDefinition = Field(default_factory=SensorDefinition)
    objects: list[ScenarioObjectDefinition] = Field(
        default_factory=list, max_length=MAX_OBJECTS
    )

    @field_validator("objects")
    @classmethod
    def validate_detection_budget(
        cls, v: list[ScenarioObjectDefinition]
    ) -> list[ScenarioObjectDefinition]:
        """A cycle cannot carry more detections than one DetectionList holds."""
        total = sum(obj.detections_per_cycle for obj in v)
        if total > MAX_DETECTIONS:
            raise ValueError(
                f"{total} detections per cycle exceed the limit of {MAX_DETECTIONS}"
            )
        return v

    def to_scenario(self, seed: int | None = None) -> Scenario:
        """Build the simulator scenario, optionally overriding the seed."""
        return Scenario(
            duration=self.duration,
            cycle_rate=self.cycle_rate,
            objects=tuple(obj.to_object() for obj in self.objects),
            noise=DetectionNoise(
                range_std=self.noise.range_std,
                azimuth_std=self.noise.azimuth_std,
                elevation_std=self.noise.elevation_std,
                range_rate_std=self.noise.range_rate_std,
            ),
            seed=self.seed if seed is None else seed,
            stamp_offset_s=self.stamp_offset_s,
            sensor=self.sensor.to_setup(),
        )


def resolve_env_vars(value: str) -> str:
    """Resolve environment variables in a string.

    Supports ${VAR_NAME} and ${VAR_NAME:-default} syntax.
    """
    pattern = r"\$\{([^}]+)\}"

    def replace_match(match: re.Match[str]) -> str:
        expr = match.group(1)
        if ":-" in expr:
            var_name, default = expr.split(":-", 1)
            return os.getenv(var_name, default)
        return os.getenv(expr, "")

    return re.sub(pattern, replace_match, value)


def resolve_config_env_vars(config: Any) -> Any:
    """Recursively resolve environment variables in a parsed YAML document."""
    if isinstance(config, str):
        return resolve_env_vars(config)
    if isinstance(config, dict):
        return {key: resolve_config_env_vars(value) for key, value in config.items()}
    if isinstance(config, list):
        return [resolve_config_env_vars(item) for item in config]
    return config
