"""
Frame-level codec: header validation, dispatch and encoding.

A datagram carries exactly one frame: a 10-byte header followed by the
payload. Validation order is header length, service/method id, payload
length, CRC, payload layout.
"""

from collections.abc import Callable
from dataclasses import dataclass, replace

from ..errors import (
    BadCrcError,
    BadLengthError,
    TruncatedError,
    UnknownMethodError,
)
from ..model import (
    DetectionList,
    Endpoint,
    Frame,
    FramePayload,
    ObjectList,
    RecvTime,
    SensorConfiguration,
    SensorStatus,
)
from .crc import crc16_ccitt_false
from .layout import HEADER, HEADER_SIZE, SERVICE_ID, MethodId
from .payloads import (
    Buffer,
    decode_configuration,
    decode_detection_list,
    decode_object_list,
    decode_status,
    encode_configuration_payload,
    encode_detection_list,
    encode_object_list,
    encode_status,
)

UNKNOWN_SOURCE = Endpoint("0.0.0.0", 0)  # nosec: B104

_DECODERS: dict[MethodId, Callable[[Buffer], FramePayload]] = {
    MethodId.STATUS: decode_status,
    MethodId.OBJECT_LIST: decode_object_list,
    MethodId.DETECTION_LIST: decode_detection_list,
    MethodId.CONFIGURATION: decode_configuration,
}


@dataclass(frozen=True, slots=True)
class FrameHeader:
    service_id: int
    method_id: int
    payload_length: int
    crc16: int

    def pack(self) -> bytes:
        return HEADER.pack(self.service_id, self.method_id, self.payload_length, self.crc16)

    @classmethod
    def unpack(cls, data: Buffer) -> "FrameHeader":
        if len(data) < HEADER_SIZE:
            raise TruncatedError(HEADER_SIZE, len(data))
        return cls(*HEADER.unpack_from(data))

    @classmethod
    def for_payload(cls, method_id: MethodId, payload: bytes) -> "FrameHeader":
        return cls(SERVICE_ID, method_id, len(payload), crc16_ccitt_false(payload))


def peek_method(data: Buffer) -> int:
    """Return the method id of a datagram without decoding it."""
    return FrameHeader.unpack(data).method_id


def _method_for(payload: FramePayload) -> MethodId:
    match payload:
        case SensorStatus():
            return MethodId.STATUS
        case ObjectList():
            return MethodId.OBJECT_LIST
        case DetectionList():
            return MethodId.DETECTION_LIST
        case SensorConfiguration():
            return MethodId.CONFIGURATION
    raise TypeError(f"not a frame payload: {type(payload).__name__}")


def decode_payload(data: Buffer) -> FramePayload:
    """Validate a datagram and decode its payload."""
    header = FrameHeader.unpack(data)
    if header.service_id != SERVICE_ID:
        raise UnknownMethodError(header.method_id, header.service_id)
    try:
        method = MethodId(header.method_id)
    except ValueError:
        raise UnknownMethodError(header.method_id) from None

    payload = memoryview(data)[HEADER_SIZE:]
    if header.payload_length != len(payload):
        raise BadLengthError(header.payload_length, len(payload))
    computed = crc16_ccitt_false(payload)
    if computed != header.crc16:
        raise BadCrcError(header.crc16, computed)
    return _DECODERS[method](payload)


def decode_frame(
    data: Buffer,
    recv_time: RecvTime | None = None,
    source: Endpoint | None = None,
) -> Frame:
    """Decode one datagram into a Frame.

    Args:
        data: Raw datagram bytes
        recv_time: Host reception time; defaults to now
        source: Sender endpoint

    Returns:
        The fully validated Frame

    Raises:
        WireError: Any validation failure; nothing partial is returned
    """
    payload = decode_payload(data)
    return Frame(
        payload=payload,
        recv_time=recv_time or RecvTime.now(),
        source=source or UNKNOWN_SOURCE,
    )


def encode_payload(payload: FramePayload) -> bytes:
    """Encode a payload with its header."""
    method = _method_for(payload)
    match payload:
        case SensorStatus():
            body = encode_status(payload)
        case ObjectList():
            body = encode_object_list(payload)
        case DetectionList():
            body = encode_detection_list(payload)
        case _:
            body = encode_configuration_payload(payload)
    return FrameHeader.for_payload(method, body).pack() + body


def encode_frame(frame: Frame | FramePayload) -> bytes:
    """Encode a frame (or a bare payload) into datagram bytes."""
    payload = frame.payload if isinstance(frame, Frame) else frame
    return encode_payload(payload)


def encode_configuration(conf: SensorConfiguration) -> bytes:
    """Encode a configuration request as a CONFIGURATION frame (method 390).

    Present groups are re-validated first, so a request assembled without
    going through the constructors still fails with FIELD_RANGE before any
    byte is produced.
    """
    for group in (conf.mounting, conf.vehicle, conf.radar):
        if group is not None:
            replace(group)
    return encode_payload(conf)


def canonical_configuration(conf: SensorConfiguration) -> SensorConfiguration:
    """Return ``conf`` as the sensor will see it after binary32 rounding."""
    payload = decode_payload(encode_configuration(conf))
    assert isinstance(payload, SensorConfiguration)
    return payload
