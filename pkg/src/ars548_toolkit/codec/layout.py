"""
Frozen byte layouts of the ARS 548 frames.

Every struct is big-endian with no padding. Offsets below are relative to
the start of the payload (right after the 10-byte header).

Header (10 bytes):
    service_id u16 | method_id u16 | payload_length u32 | crc16 u16

DetectionList payload (29-byte prefix + count x 39-byte records):
    stamp.seconds u32 @0 | stamp.nanoseconds u32 @4 | sync_status u8 @8 |
    sequence_counter u32 @9 | origin x/y/z f32 @13/@17/@21 |
    detection_count u32 @25 | records @29
    record: azimuth, azimuth_std, elevation, elevation_std, range,
    range_std, range_rate, range_rate_std (8 x f32) | rcs i8 @32 |
    invalid_flags u8 @33 | measurement_id u16 @34 | object_id u16 @36 |
    classification u8 @38

ObjectList payload (17-byte prefix + count x 92-byte records):
    stamp (9) | sequence_counter u32 @9 | object_count u32 @13 | records @17
    record: id u32 @0 | age u16 @4 | status_measurement u8 @6 |
    status_movement u8 @7 | position x/y/z, std x/y/z (6 x f32) @8 |
    orientation_yaw, orientation_yaw_std (2 x f32) @32 |
    velocity x/y, std x/y (4 x f32) @40 | acceleration x/y, std x/y
    (4 x f32) @56 | yaw_rate f32 @72 | shape_length, shape_width
    (2 x f32) @76 | classification_probabilities 8 x u8 @84

Status payload (60 bytes):
    stamp (9) | sw version 3 x u8 @9 | mounting @12 | vehicle @33 |
    radar @49 | blockage u8 @58 | defective u8 @59

Configuration payload:
    presence bitmask u8 | present groups in order mounting, vehicle,
    radar, new_ip

Groups:
    mounting (21): longitudinal, lateral, vertical, yaw, pitch (5 x f32) |
                   plug u8
    vehicle (16):  length, width, height, wheelbase (4 x f32)
    radar (9):     max_detection_distance u16 | frequency_slot u8 |
                   cycle_time_ms u8 | sensor_ipv4 u32 | powersave u8
    new_ip (4):    u32
"""

import struct
from enum import IntEnum, IntFlag


class MethodId(IntEnum):
    OBJECT_LIST = 329
    DETECTION_LIST = 336
    STATUS = 380
    CONFIGURATION = 390


class ConfigurationGroup(IntFlag):
    """Presence bits of the configuration payload."""

    MOUNTING = 0x01
    VEHICLE = 0x02
    RADAR = 0x04
    NEW_IP = 0x08


SERVICE_ID = 0

HEADER = struct.Struct(">HHIH")
STAMP = struct.Struct(">IIB")

DETECTION_PREFIX = struct.Struct(">IIBI3fI")
DETECTION_RECORD = struct.Struct(">8fbBHHB")

OBJECT_PREFIX = struct.Struct(">IIBII")
OBJECT_RECORD = struct.Struct(">IHBB6f2f4f4ff2f8B")

MOUNTING_GROUP = struct.Struct(">5fB")
VEHICLE_GROUP = struct.Struct(">4f")
RADAR_GROUP = struct.Struct(">HBBIB")
NEW_IP_GROUP = struct.Struct(">I")

STATUS_PREFIX = struct.Struct(">IIB3B")
STATUS_TAIL = struct.Struct(">BB")
STATUS_SIZE = (
    STATUS_PREFIX.size
    + MOUNTING_GROUP.size
    + VEHICLE_GROUP.size
    + RADAR_GROUP.size
    + STATUS_TAIL.size
)

CONFIGURATION_MASK = struct.Struct(">B")

HEADER_SIZE = HEADER.size
MAX_DATAGRAM_SIZE = 65535
