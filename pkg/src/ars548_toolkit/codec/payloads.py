"""
Per-kind payload codecs.

Decoders either return a fully validated model value or raise a WireError;
model constructors raise FIELD_RANGE themselves, so a decoded value always
satisfies the model invariants.
"""

import struct
from ipaddress import IPv4Address

from ..errors import (
    BadLengthError,
    CountOverflowError,
    FieldRangeError,
    TruncatedError,
)
from ..model import (
    MAX_DETECTIONS,
    MAX_OBJECTS,
    Detection,
    DetectionList,
    MountingPose,
    ObjectList,
    RadarParameters,
    SensorConfiguration,
    SensorStatus,
    Timestamp,
    TrackedObject,
    VehicleDimensions,
)
from .layout import (
    CONFIGURATION_MASK,
    DETECTION_PREFIX,
    DETECTION_RECORD,
    MOUNTING_GROUP,
    NEW_IP_GROUP,
    OBJECT_PREFIX,
    OBJECT_RECORD,
    RADAR_GROUP,
    STATUS_PREFIX,
    STATUS_SIZE,
    STATUS_TAIL,
    VEHICLE_GROUP,
    ConfigurationGroup,
)

Buffer = bytes | bytearray | memoryview


def _require(payload: Buffer, size: int) -> None:
    if len(payload) < size:
        raise TruncatedError(size, len(payload))


def _require_exact(payload: Buffer, size: int) -> None:
    _require(payload, size)
    if len(payload) != size:
        raise BadLengthError(size, len(payload))


def _pack(layout: struct.Struct, field: str, *values: object) -> bytes:
    try:
        return layout.pack(*values)
    except (struct.error, OverflowError) as exc:
        raise FieldRangeError(field, str(exc)) from None


def _flag(field: str, raw: int) -> bool:
    if raw not in (0, 1):
        raise FieldRangeError(field, raw)
    return bool(raw)


def _stamp(seconds: int, nanoseconds: int, sync_status: int) -> Timestamp:
    return Timestamp(seconds, nanoseconds, sync_status)  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# DetectionList
# ---------------------------------------------------------------------------


def decode_detection_list(payload: Buffer) -> DetectionList:
    """Parse a DetectionList payload."""
    _require(payload, DETECTION_PREFIX.size)
    seconds, nanos, sync, sequence, ox, oy, oz, count = DETECTION_PREFIX.unpack_from(
        payload
    )
    if count > MAX_DETECTIONS:
        raise CountOverflowError(count, MAX_DETECTIONS)
    end = DETECTION_PREFIX.size + count * DETECTION_RECORD.size
    _require_exact(payload, end)

    detections = tuple(
        Detection(
            azimuth=az,
            azimuth_std=az_std,
            elevation=el,
            elevation_std=el_std,
            range=rng,
            range_std=rng_std,
            range_rate=rr,
            range_rate_std=rr_std,
            rcs=rcs,
            invalid_flags=flags,
            measurement_id=measurement_id,
            object_id=object_id,
            classification=classification,
        )
        for (
            az,
            az_std,
            el,
            el_std,
            rng,
            rng_std,
            rr,
            rr_std,
            rcs,
            flags,
            measurement_id,
            object_id,
            classification,
        ) in DETECTION_RECORD.iter_unpack(memoryview(payload)[DETECTION_PREFIX.size : end])
    )
    return DetectionList(
        stamp=_stamp(seconds, nanos, sync),
        sequence_counter=sequence,
        origin_x=ox,
        origin_y=oy,
        origin_z=oz,
        detections=detections,
    )


def encode_detection_list(dl: DetectionList) -> bytes:
    if len(dl.detections) > MAX_DETECTIONS:
        raise CountOverflowError(len(dl.detections), MAX_DETECTIONS)
    parts = [
        _pack(
            DETECTION_PREFIX,
            "detection_list",
            dl.stamp.seconds,
            dl.stamp.nanoseconds,
            dl.stamp.sync_status,
            dl.sequence_counter,
            dl.origin_x,
            dl.origin_y,
            dl.origin_z,
            len(dl.detections),
        )
    ]
    for d in dl.detections:
        parts.append(
            _pack(
                DETECTION_RECORD,
                "detection",
                d.azimuth,
                d.azimuth_std,
                d.elevation,
                d.elevation_std,
                d.range,
                d.range_std,
                d.range_rate,
                d.range_rate_std,
                d.rcs,
                d.invalid_flags,
                d.measurement_id,
                d.object_id,
                d.classification,
            )
        )
    return b"".join(parts)


# ---------------------------------------------------------------------------
# ObjectList
# ---------------------------------------------------------------------------


def _decode_object(record: tuple) -> TrackedObject:
    return TrackedObject(
        id=record[0],
        age=record[1],
        status_measurement=record[2],
        status_movement=record[3],
        position_x=record[4],
        position_y=record[5],
        position_z=record[6],
        position_std_x=record[7],
        position_std_y=record[8],
        position_std_z=record[9],
        orientation_yaw=record[10],
        orientation_yaw_std=record[11],
        velocity_rel_x=record[12],
        velocity_rel_y=record[13],
        velocity_std_x=record[14],
        velocity_std_y=record[15],
        acceleration_rel_x=record[16],
        acceleration_rel_y=record[17],
        acceleration_std_x=record[18],
        acceleration_std_y=record[19],
        yaw_rate=record[20],
        shape_length=record[21],
        shape_width=record[22],
        classification_probabilities=record[23:31],
    )


def decode_object_list(payload: Buffer) -> ObjectList:
    """Parse an ObjectList payload."""
    _require(payload, OBJECT_PREFIX.size)
    seconds, nanos, sync, sequence, count = OBJECT_PREFIX.unpack_from(payload)
    if count > MAX_OBJECTS:
        raise CountOverflowError(count, MAX_OBJECTS)
    end = OBJECT_PREFIX.size + count * OBJECT_RECORD.size
    _require_exact(payload, end)

    objects = tuple(
        _decode_object(record)
        for record in OBJECT_RECORD.iter_unpack(memoryview(payload)[OBJECT_PREFIX.size : end])
    )
    return ObjectList(
        stamp=_stamp(seconds, nanos, sync),
        sequence_counter=sequence,
        objects=objects,
    )


def encode_object_list(ol: ObjectList) -> bytes:
    if len(ol.objects) > MAX_OBJECTS:
        raise CountOverflowError(len(ol.objects), MAX_OBJECTS)
    parts = [
        _pack(
            OBJECT_PREFIX,
            "object_list",
            ol.stamp.seconds,
            ol.stamp.nanoseconds,
            ol.stamp.sync_status,
            ol.sequence_counter,
            len(ol.objects),
        )
    ]
    for o in ol.objects:
        parts.append(
            _pack(
                OBJECT_RECORD,
                "object",
                o.id,
                o.age,
                o.status_measurement,
                o.status_movement,
                o.position_x,
                o.position_y,
                o.position_z,
                o.position_std_x,
                o.position_std_y,
                o.position_std_z,
                o.orientation_yaw,
                o.orientation_yaw_std,
                o.velocity_rel_x,
                o.velocity_rel_y,
                o.velocity_std_x,
                o.velocity_std_y,
                o.acceleration_rel_x,
                o.acceleration_rel_y,
                o.acceleration_std_x,
                o.acceleration_std_y,
                o.yaw_rate,
                o.shape_length,
                o.shape_width,
                *o.classification_probabilities,
            )
        )
    return b"".join(parts)


# ---------------------------------------------------------------------------
# Parameter groups (shared by Status and Configuration)
# ---------------------------------------------------------------------------


def _decode_mounting(payload: Buffer, offset: int) -> MountingPose:
    longitudinal, lateral, vertical, yaw, pitch, plug = MOUNTING_GROUP.unpack_from(
        payload, offset
    )
    return MountingPose(
        longitudinal=longitudinal,
        lateral=lateral,
        vertical=vertical,
        yaw=yaw,
        pitch=pitch,
        plug_orientation=plug,
    )


def _encode_mounting(m: MountingPose) -> bytes:
    return _pack(
        MOUNTING_GROUP,
        "mounting",
        m.longitudinal,
        m.lateral,
        m.vertical,
        m.yaw,
        m.pitch,
        m.plug_orientation,
    )


def _decode_vehicle(payload: Buffer, offset: int) -> VehicleDimensions:
    length, width, height, wheelbase = VEHICLE_GROUP.unpack_from(payload, offset)
    return VehicleDimensions(length=length, width=width, height=height, wheelbase=wheelbase)


def _encode_vehicle(v: VehicleDimensions) -> bytes:
    return _pack(VEHICLE_GROUP, "vehicle", v.length, v.width, v.height, v.wheelbase)


def _decode_radar(payload: Buffer, offset: int) -> RadarParameters:
    distance, slot, cycle_time, ipv4, powersave = RADAR_GROUP.unpack_from(payload, offset)
    return RadarParameters(
        max_detection_distance=distance,
        frequency_slot=slot,
        cycle_time_ms=cycle_time,
        sensor_ipv4=IPv4Address(ipv4),
        powersave_standstill=_flag("powersave_standstill", powersave),
    )


def _encode_radar(r: RadarParameters) -> bytes:
    return _pack(
        RADAR_GROUP,
        "radar",
        r.max_detection_distance,
        r.frequency_slot,
        r.cycle_time_ms,
        int(r.sensor_ipv4),
        int(r.powersave_standstill),
    )


# ---------------------------------------------------------------------------
# Status
# ---------------------------------------------------------------------------


def decode_status(payload: Buffer) -> SensorStatus:
    """Parse a Status payload."""
    _require_exact(payload, STATUS_SIZE)
    seconds, nanos, sync, major, minor, patch = STATUS_PREFIX.unpack_from(payload)
    offset = STATUS_PREFIX.size
    mounting = _decode_mounting(payload, offset)
    offset += MOUNTING_GROUP.size
    vehicle = _decode_vehicle(payload, offset)
    offset += VEHICLE_GROUP.size
    radar = _decode_radar(payload, offset)
    offset += RADAR_GROUP.size
    blockage, defective = STATUS_TAIL.unpack_from(payload, offset)
    return SensorStatus(
        stamp=_stamp(seconds, nanos, sync),
        software_version_major=major,
        software_version_minor=minor,
        software_version_patch=patch,
        mounting=mounting,
        vehicle=vehicle,
        radar=radar,
        blockage=blockage,
        defective=_flag("defective", defective),
    )


def encode_status(status: SensorStatus) -> bytes:
    return b"".join(
        (
            _pack(
                STATUS_PREFIX,
                "status",
                status.stamp.seconds,
                status.stamp.nanoseconds,
                status.stamp.sync_status,
                status.software_version_major,
                status.software_version_minor,
                status.software_version_patch,
            ),
            _encode_mounting(status.mounting),
            _encode_vehicle(status.vehicle),
            _encode_radar(status.radar),
            _pack(STATUS_TAIL, "status", status.blockage, int(status.defective)),
        )
    )


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------


def decode_configuration(payload: Buffer) -> SensorConfiguration:
    """Parse a Configuration payload (the simulator's receive side)."""
    _require(payload, CONFIGURATION_MASK.size)
    (raw_mask,) = CONFIGURATION_MASK.unpack_from(payload)
    if raw_mask == 0 or raw_mask & ~0x0F:
        raise FieldRangeError("presence_mask", raw_mask)
    mask = ConfigurationGroup(raw_mask)

    expected = CONFIGURATION_MASK.size
    for group, layout in (
        (ConfigurationGroup.MOUNTING, MOUNTING_GROUP),
        (ConfigurationGroup.VEHICLE, VEHICLE_GROUP),
        (ConfigurationGroup.RADAR, RADAR_GROUP),
        (ConfigurationGroup.NEW_IP, NEW_IP_GROUP),
    ):
        if group in mask:
            expected += layout.size
    _require_exact(payload, expected)

    offset = CONFIGURATION_MASK.size
    mounting = vehicle = radar = new_ip = None
    if ConfigurationGroup.MOUNTING in mask:
        mounting = _decode_mounting(payload, offset)
        offset += MOUNTING_GROUP.size
    if ConfigurationGroup.VEHICLE in mask:
        vehicle = _decode_vehicle(payload, offset)
        offset += VEHICLE_GROUP.size
    if ConfigurationGroup.RADAR in mask:
        radar = _decode_radar(payload, offset)
        offset += RADAR_GROUP.size
    if ConfigurationGroup.NEW_IP in mask:
        (raw_ip,) = NEW_IP_GROUP.unpack_from(payload, offset)
        new_ip = IPv4Address(raw_ip)
    return SensorConfiguration(
        mounting=mounting, vehicle=vehicle, radar=radar, new_sensor_ipv4=new_ip
    )


def presence_mask(conf: SensorConfiguration) -> ConfigurationGroup:
    """Bitmask of the groups present in ``conf``."""
    mask = ConfigurationGroup(0)
    if conf.mounting is not None:
        mask |= ConfigurationGroup.MOUNTING
    if conf.vehicle is not None:
        mask |= ConfigurationGroup.VEHICLE
    if conf.radar is not None:
        mask |= ConfigurationGroup.RADAR
    if conf.new_sensor_ipv4 is not None:
        mask |= ConfigurationGroup.NEW_IP
    return mask


def encode_configuration_payload(conf: SensorConfiguration) -> bytes:
    parts = [CONFIGURATION_MASK.pack(presence_mask(conf))]
    if conf.mounting is not None:
        parts.append(_encode_mounting(conf.mounting))
    if conf.vehicle is not None:
        parts.append(_encode_vehicle(conf.vehicle))
    if conf.radar is not None:
        parts.append(_encode_radar(conf.radar))
    if conf.new_sensor_ipv4 is not None:
        parts.append(NEW_IP_GROUP.pack(int(conf.new_sensor_ipv4)))
    return b"".join(parts)
