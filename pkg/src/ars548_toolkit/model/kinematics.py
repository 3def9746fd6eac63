"""
Pure kinematic helpers shared by the filter, cloud and simulator modules.
"""

import math

from .types import TrackedObject

KMH_PER_MPS = 3.6
EPS_SPEED = 1e-6
EPS_RANGE = 1e-9


def kmh_to_mps(speed_kmh: float) -> float:
    return speed_kmh / KMH_PER_MPS


def mps_to_kmh(speed_mps: float) -> float:
    return speed_mps * KMH_PER_MPS


def object_speed(obj: TrackedObject) -> float:
    """Magnitude of the object's relative velocity in m/s."""
    return math.hypot(obj.velocity_rel_x, obj.velocity_rel_y)


def object_heading(obj: TrackedObject) -> float:
    """Direction of motion in (-pi, pi].

    Falls back to the tracked orientation when the object is (nearly) at
    rest, since the velocity direction is undefined there.
    """
    if object_speed(obj) < EPS_SPEED:
        return obj.orientation_yaw
    heading = math.atan2(obj.velocity_rel_y, obj.velocity_rel_x)
    # atan2 yields -pi for (-x, -0.0); fold onto the closed end
    return math.pi if heading == -math.pi else heading


def radial_velocity(
    x: float, y: float, z: float, vx: float, vy: float, vz: float = 0.0
) -> float:
    """Signed projection of a velocity onto the line of sight, (p.v)/|p|.

    Returns 0 for a point at the sensor origin.
    """
    norm = math.sqrt(x * x + y * y + z * z)
    if norm < EPS_RANGE:
        return 0.0
    return (x * vx + y * vy + z * vz) / norm


def wrap_angle(angle: float) -> float:
    """Wrap an angle onto (-pi, pi]."""
    wrapped = math.remainder(angle, math.tau)
    return math.pi if wrapped == -math.pi else wrapped
