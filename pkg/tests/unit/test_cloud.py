"""
Tests for point cloud conversion.
"""

import math
import random

import numpy as np
import pytest

from ars548_toolkit.cloud import (
    DEFAULT_FRAME_LABEL,
    PointCloud,
    Pose,
    RadarPoint,
    detections_to_cloud,
    frame_to_cloud,
    objects_to_cloud,
    objects_to_poses,
    spherical_to_cartesian,
    spherical_to_cartesian_array,
)
from ars548_toolkit.errors import FieldRangeError
from ars548_toolkit.model import (
    DetectionInvalid,
    Endpoint,
    Frame,
    FrameKind,
    RecvTime,
    object_speed,
)
from tests.builders import (
    make_detection,
    make_detection_list,
    make_object,
    make_object_list,
    make_status,
    make_timestamp,
    spherical_oracle,
)


class TestSphericalToCartesian:
    """Test the spherical projection."""

    @pytest.mark.parametrize(
        ("spherical", "expected"),
        [
            ((0.0, 0.0, 10.0), (10.0, 0.0, 0.0)),
            ((math.pi / 2, 0.0, 5.0), (0.0, 5.0, 0.0)),
            ((math.pi / 6, math.pi / 4, 2.0), (1.2247449, 0.7071068, 1.4142136)),
        ],
    )
    def test_examples(self, spherical, expected):
        """Test boresight, pure azimuth and a mixed direction."""
        assert spherical_to_cartesian(*spherical) == pytest.approx(expected, abs=1e-6)

    def test_random_against_oracle(self):
        """Test 1000 random directions against an independent oracle and the norm."""
        rng = random.Random(42)
        for _ in range(1000):
            az = rng.uniform(-math.pi, math.pi)
            el = rng.uniform(-math.pi / 2, math.pi / 2)
            r = rng.uniform(0.0, 1500.0)
            xyz = spherical_to_cartesian(az, el, r)
            assert xyz == pytest.approx(spherical_oracle(az, el, r), abs=1e-6)
            assert math.hypot(*xyz) == pytest.approx(r, rel=1e-9, abs=1e-12)

    def test_negative_range(self):
        """Test a negative range is rejected."""
        with pytest.raises(ValueError):
            spherical_to_cartesian(0.0, 0.0, -1.0)

    def test_vectorised_matches_scalar(self):
        """Test the array form agrees with the scalar form."""
        rng = np.random.default_rng(7)
        az = rng.uniform(-np.pi, np.pi, 100)
        el = rng.uniform(-np.pi / 2, np.pi / 2, 100)
        r = rng.uniform(0.0, 300.0, 100)
        xyz = spherical_to_cartesian_array(az, el, r)
        assert xyz.shape == (100, 3)
        for i in range(100):
            assert tuple(xyz[i]) == pytest.approx(spherical_to_cartesian(az[i], el[i], r[i]))

    def test_vectorised_empty(self):
        """Test the array form of no detections."""
        assert spherical_to_cartesian_array([], [], []).shape == (0, 3)


class TestDetectionsToCloud:
    """Test detection clouds."""

    def test_empty_list(self):
        """Test an empty list keeps its stamp."""
        dl = make_detection_list(sequence_counter=3)
        cloud = detections_to_cloud(dl)
        assert len(cloud) == 0
        assert cloud.stamp == dl.stamp
        assert cloud.sequence_counter == 3
        assert cloud.kind == FrameKind.DETECTION_LIST
        assert cloud.frame_label == DEFAULT_FRAME_LABEL

    def test_single_detection(self):
        """Test one valid detection becomes one point."""
        dl = make_detection_list(make_detection(range=10.0, range_rate=-5.0, rcs=12, measurement_id=4))
        (point,) = detections_to_cloud(dl).points
        assert (point.x, point.y, point.z) == pytest.approx((10.0, 0.0, 0.0))
        assert point.doppler == -5.0
        assert point.intensity == 12.0
        assert point.source_id == 4

    def test_invalid_detections_dropped(self):
        """Test range or angle invalid detections are excluded."""
        dl = make_detection_list(
            make_detection(measurement_id=0),
            make_detection(measurement_id=1, invalid_flags=DetectionInvalid.RANGE),
            make_detection(measurement_id=2, invalid_flags=DetectionInvalid.ANGLE),
            make_detection(measurement_id=3, invalid_flags=DetectionInvalid.RANGE_RATE),
        )
        cloud = detections_to_cloud(dl)
        assert [p.source_id for p in cloud.points] == [0, 3]

    def test_as_array(self):
        """Test the numpy view of a cloud."""
        dl = make_detection_list(make_detection(range=2.0), make_detection(range=3.0, measurement_id=1))
        array = detections_to_cloud(dl).as_array()
        assert array.shape == (2, 5)
        assert array[:, 0].tolist() == pytest.approx([2.0, 3.0])

    def test_empty_as_array(self):
        """Test an empty cloud gives an empty array."""
        assert PointCloud(make_timestamp()).as_array().shape == (0, 5)


class TestObjectsToCloud:
    """Test object clouds and poses."""

    @pytest.mark.parametrize(
        ("position", "velocity", "doppler"),
        [
            ((10.0, 0.0, 0.0), (-5.0, 0.0), -5.0),
            ((0.0, 10.0, 0.0), (-5.0, 0.0), 0.0),
            ((3.0, 4.0, 0.0), (1.0, 2.0), 2.2),
        ],
    )
    def test_doppler(self, position, velocity, doppler):
        """Test the radial projection of the relative velocity."""
        obj = make_object(
            position_x=position[0],
            position_y=position[1],
            position_z=position[2],
            velocity_rel_x=velocity[0],
            velocity_rel_y=velocity[1],
        )
        (point,) = objects_to_cloud(make_object_list(obj)).points
        assert point.doppler == pytest.approx(doppler)
        assert point.intensity == 0.0
        assert (point.x, point.y, point.z) == position

    def test_doppler_at_origin(self):
        """Test an object at the sensor origin has zero doppler."""
        obj = make_object(position_x=0.0, velocity_rel_x=3.0)
        (point,) = objects_to_cloud(make_object_list(obj)).points
        assert point.doppler == 0.0

    def test_doppler_bounded_by_speed(self):
        """Test |doppler| never exceeds the object speed."""
        rng = random.Random(3)
        for i in range(200):
            obj = make_object(
                id=i,
                position_x=rng.uniform(-100, 100),
                position_y=rng.uniform(-100, 100),
                position_z=rng.uniform(-5, 5),
                velocity_rel_x=rng.uniform(-40, 40),
                velocity_rel_y=rng.uniform(-40, 40),
            )
            (point,) = objects_to_cloud(make_object_list(obj)).points
            assert abs(point.doppler) <= object_speed(obj) + 1e-9

    def test_poses(self):
        """Test one pose per object with the direction of motion."""
        objects = make_object_list(
            make_object(id=1, velocity_rel_x=0.0, velocity_rel_y=3.0),
            make_object(id=2, orientation_yaw=0.5),
        )
        poses = objects_to_poses(objects)
        assert [p.source_id for p in poses.poses] == [1, 2]
        assert poses.poses[0].yaw == pytest.approx(math.pi / 2)
        assert poses.poses[1].yaw == 0.5
        assert poses.stamp == objects.stamp

    def test_pose_yaw_checked(self):
        """Test a pose outside (-pi, pi] is rejected."""
        with pytest.raises(FieldRangeError):
            Pose(0.0, 0.0, 0.0, yaw=4.0)

    def test_point_must_be_finite(self):
        """Test non-finite coordinates are rejected."""
        with pytest.raises(FieldRangeError):
            RadarPoint(math.nan, 0.0, 0.0, 0.0, 0.0, 0)


class TestFrameToCloud:
    """Test dispatch on frame kind."""

    def _frame(self, payload):
        return Frame(payload, RecvTime(0, 0), Endpoint("127.0.0.1", 1))

    def test_status_gives_empty_cloud(self):
        """Test Status frames convert to an empty cloud of kind status."""
        status = make_status()
        cloud = frame_to_cloud(self._frame(status))
        assert len(cloud) == 0
        assert cloud.kind == FrameKind.STATUS
        assert cloud.stamp == status.stamp

    def test_objects_dispatch(self):
        """Test object frames become object clouds."""
        cloud = frame_to_cloud(self._frame(make_object_list(make_object())), frame_label="radar_front")
        assert cloud.kind == FrameKind.OBJECT_LIST
        assert cloud.frame_label == "radar_front"
        assert len(cloud) == 1
