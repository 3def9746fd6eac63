"""
Codec module - bit-exact translation between datagrams and model types.
"""

from .crc import crc16_ccitt_false
from .frames import (
    FrameHeader,
    canonical_configuration,
    decode_frame,
    decode_payload,
    encode_configuration,
    encode_frame,
    encode_payload,
    peek_method,
)
from .layout import (
    DETECTION_PREFIX,
    DETECTION_RECORD,
    HEADER_SIZE,
    MAX_DATAGRAM_SIZE,
    OBJECT_PREFIX,
    OBJECT_RECORD,
    STATUS_SIZE,
    ConfigurationGroup,
    MethodId,
)
from .payloads import (
    decode_configuration,
    decode_detection_list,
    decode_object_list,
    decode_status,
    encode_configuration_payload,
    encode_detection_list,
    encode_object_list,
    encode_status,
    presence_mask,
)

__all__ = [
    "DETECTION_PREFIX",
    "DETECTION_RECORD",
    "HEADER_SIZE",
    "MAX_DATAGRAM_SIZE",
    "OBJECT_PREFIX",
    "OBJECT_RECORD",
    "STATUS_SIZE",
    "ConfigurationGroup",
    "FrameHeader",
    "MethodId",
    "canonical_configuration",
    "crc16_ccitt_false",
    "decode_configuration",
    "decode_detection_list",
    "decode_frame",
    "decode_object_list",
    "decode_payload",
    "decode_status",
    "encode_configuration",
    "encode_configuration_payload",
    "encode_detection_list",
    "encode_frame",
    "encode_object_list",
    "encode_payload",
    "encode_status",
    "peek_method",
    "presence_mask",
]
