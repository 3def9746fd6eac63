"""
Frame to point cloud conversion.

Detections are projected from sensor spherical coordinates; objects become
one point each, with the radial projection of their relative velocity as
the doppler channel, plus a pose carrying the direction of motion.
"""

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from ..model import (
    DetectionList,
    Frame,
    FrameKind,
    ObjectList,
    Timestamp,
    object_heading,
    radial_velocity,
)
from ..model.validation import check_finite, check_half_open_angle

DEFAULT_FRAME_LABEL = "ars548"


@dataclass(frozen=True, slots=True)
class RadarPoint:
    x: float
    y: float
    z: float
    doppler: float
    intensity: float
    source_id: int

    def __post_init__(self) -> None:
        check_finite("x", self.x)
        check_finite("y", self.y)
        check_finite("z", self.z)


@dataclass(frozen=True, slots=True)
class PointCloud:
    """Middleware-free point cloud of one frame."""

    stamp: Timestamp
    points: tuple[RadarPoint, ...] = ()
    frame_label: str = DEFAULT_FRAME_LABEL
    kind: FrameKind = FrameKind.DETECTION_LIST
    sequence_counter: int | None = None

    def __len__(self) -> int:
        return len(self.points)

    def as_array(self) -> npt.NDArray[np.float64]:
        """Points as an (n, 5) array of x, y, z, doppler, intensity."""
        return np.array(
            [(p.x, p.y, p.z, p.doppler, p.intensity) for p in self.points],
            dtype=np.float64,
        ).reshape(-1, 5)


@dataclass(frozen=True, slots=True)
class Pose:
    x: float
    y: float
    z: float
    yaw: float
    source_id: int = 0

    def __post_init__(self) -> None:
        check_half_open_angle("yaw", self.yaw)


@dataclass(frozen=True, slots=True)
class PoseSet:
    stamp: Timestamp
    poses: tuple[Pose, ...] = ()
    frame_label: str = DEFAULT_FRAME_LABEL


def spherical_to_cartesian(
    azimuth: float, elevation: float, range_m: float
) -> tuple[float, float, float]:
    """Convert sensor spherical coordinates to x forward, y left, z up.

    Raises:
        ValueError: If ``range_m`` is negative
    """
    if range_m < 0:
        raise ValueError(f"range must be non-negative, got {range_m}")
    horizontal = range_m * math.cos(elevation)
    return (
        horizontal * math.cos(azimuth),
        horizontal * math.sin(azimuth),
        range_m * math.sin(elevation),
    )


def spherical_to_cartesian_array(
    azimuth: npt.ArrayLike, elevation: npt.ArrayLike, range_m: npt.ArrayLike
) -> npt.NDArray[np.float64]:
    """Vectorised ``spherical_to_cartesian``; returns an (n, 3) array."""
    az = np.asarray(azimuth, dtype=np.float64)
    el = np.asarray(elevation, dtype=np.float64)
    r = np.asarray(range_m, dtype=np.float64)
    horizontal = r * np.cos(el)
    return np.column_stack((horizontal * np.cos(az), horizontal * np.sin(az), r * np.sin(el)))


def detections_to_cloud(
    detection_list: DetectionList, frame_label: str = DEFAULT_FRAME_LABEL
) -> PointCloud:
    """One point per detection with valid range and angle."""
    valid = [d for d in detection_list.detections if d.has_valid_position]
    xyz = spherical_to_cartesian_array(
        [d.azimuth for d in valid],
        [d.elevation for d in valid],
        [d.range for d in valid],
    )
    points = tuple(
        RadarPoint(
            x=float(x),
            y=float(y),
            z=float(z),
            doppler=d.range_rate,
            intensity=float(d.rcs),
            source_id=d.measurement_id,
        )
        for d, (x, y, z) in zip(valid, xyz, strict=True)
    )
    return PointCloud(
        stamp=detection_list.stamp,
        points=points,
        frame_label=frame_label,
        kind=FrameKind.DETECTION_LIST,
        sequence_counter=detection_list.sequence_counter,
    )


def objects_to_cloud(
    object_list: ObjectList, frame_label: str = DEFAULT_FRAME_LABEL
) -> PointCloud:
    points = tuple(
        RadarPoint(
            x=obj.position_x,
            y=obj.position_y,
            z=obj.position_z,
            doppler=radial_velocity(
                obj.position_x,
                obj.position_y,
                obj.position_z,
                obj.velocity_rel_x,
                obj.velocity_rel_y,
            ),
            intensity=0.0,
            source_id=obj.id,
        )
        for obj in object_list.objects
    )
    return PointCloud(
        stamp=object_list.stamp,
        points=points,
        frame_label=frame_label,
        kind=FrameKind.OBJECT_LIST,
        sequence_counter=object_list.sequence_counter,
    )


def objects_to_poses(
    object_list: ObjectList, frame_label: str = DEFAULT_FRAME_LABEL
) -> PoseSet:
    poses = tuple(
        Pose(
            x=obj.position_x,
            y=obj.position_y,
            z=obj.position_z,
            yaw=object_heading(obj),
            source_id=obj.id,
        )
        for obj in object_list.objects
    )
    return PoseSet(stamp=object_list.stamp, poses=poses, frame_label=frame_label)


def frame_to_cloud(frame: Frame, frame_label: str = DEFAULT_FRAME_LABEL) -> PointCloud:
    """Cloud of any frame; Status and configuration frames give an empty one."""
    payload = frame.payload
    if isinstance(payload, DetectionList):
        return detections_to_cloud(payload, frame_label)
    if isinstance(payload, ObjectList):
        return objects_to_cloud(payload, frame_label)
    return PointCloud(
        stamp=frame.stamp or Timestamp(0, 0),
        frame_label=frame_label,
        kind=frame.kind,
    )
