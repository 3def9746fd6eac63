"""
Decoded frames, reception metadata and the time stamp policy.
"""

import time
from dataclasses import dataclass, replace
from enum import StrEnum

from .types import (
    DetectionList,
    ObjectList,
    RadarParameters,
    SensorConfiguration,
    SensorStatus,
    Timestamp,
)

FramePayload = SensorStatus | ObjectList | DetectionList | SensorConfiguration


class FrameKind(StrEnum):
    STATUS = "status"
    OBJECT_LIST = "objects"
    DETECTION_LIST = "detections"
    CONFIGURATION = "configuration"


class StampPolicy(StrEnum):
    """How delivered frames are stamped.

    KEEP_ORIGINAL trusts the sensor clock (gPTP-synchronised setups);
    OVERRIDE_LOCAL replaces it with the host reception time.
    """

    KEEP_ORIGINAL = "keep"
    OVERRIDE_LOCAL = "local"


@dataclass(frozen=True, slots=True)
class RecvTime:
    """Host reception time: wall clock for stamping, monotonic for pacing."""

    wall_ns: int
    monotonic_ns: int

    @classmethod
    def now(cls) -> "RecvTime":
        return cls(wall_ns=time.time_ns(), monotonic_ns=time.monotonic_ns())


@dataclass(frozen=True, slots=True)
class Endpoint:
    address: str
    port: int

    def __str__(self) -> str:
        return f"{self.address}:{self.port}"


@dataclass(frozen=True, slots=True)
class Frame:
    """One decoded datagram with its reception metadata."""

    payload: FramePayload
    recv_time: RecvTime
    source: Endpoint

    @property
    def kind(self) -> FrameKind:
        match self.payload:
            case SensorStatus():
                return FrameKind.STATUS
            case ObjectList():
                return FrameKind.OBJECT_LIST
            case DetectionList():
                return FrameKind.DETECTION_LIST
            case _:
                return FrameKind.CONFIGURATION

    @property
    def stamp(self) -> Timestamp | None:
        """Payload stamp; configuration requests carry none."""
        if isinstance(self.payload, SensorConfiguration):
            return None
        return self.payload.stamp

    @property
    def sequence_counter(self) -> int | None:
        if isinstance(self.payload, (ObjectList, DetectionList)):
            return self.payload.sequence_counter
        return None


def apply_stamp_policy(frame: Frame, policy: StampPolicy) -> Frame:
    """Return ``frame`` stamped according to ``policy``.

    Only the payload stamp changes; the sync status reported by the sensor
    is kept as is.
    """
    if policy == StampPolicy.KEEP_ORIGINAL or frame.stamp is None:
        return frame
    local = Timestamp.from_ns(frame.recv_time.wall_ns, frame.stamp.sync_status)
    # mypy cannot narrow the union through the stamp property
    payload = replace(frame.payload, stamp=local)  # type: ignore[call-arg]
    return replace(frame, payload=payload)


def apply_configuration(status: SensorStatus, conf: SensorConfiguration) -> SensorStatus:
    """Return the status a sensor would echo after applying ``conf``."""
    radar: RadarParameters = conf.radar or status.radar
    if conf.new_sensor_ipv4 is not None:
        radar = replace(radar, sensor_ipv4=conf.new_sensor_ipv4)
    return replace(
        status,
        mounting=conf.mounting or status.mounting,
        vehicle=conf.vehicle or status.vehicle,
        radar=radar,
    )
