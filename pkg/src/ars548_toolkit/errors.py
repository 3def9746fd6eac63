"""
Exception taxonomy shared by every module of the toolkit.

Wire errors carry a ``kind`` so the receiver can count them per variant
without inspecting the concrete class.
"""

from enum import StrEnum
from typing import Any


class Ars548Error(Exception):
    """Root of all toolkit errors."""


class WireErrorKind(StrEnum):
    """Variants of a wire decoding/encoding failure."""

    TRUNCATED = "TRUNCATED"
    UNKNOWN_METHOD = "UNKNOWN_METHOD"
    BAD_CRC = "BAD_CRC"
    BAD_LENGTH = "BAD_LENGTH"
    FIELD_RANGE = "FIELD_RANGE"
    COUNT_OVERFLOW = "COUNT_OVERFLOW"


class WireError(Ars548Error):
    """Base class for errors raised while translating bytes <-> model types."""

    kind: WireErrorKind

    def context(self) -> dict[str, Any]:
        """Return the offending values for logging."""
        return {}

    def __str__(self) -> str:
        details = ", ".join(f"{k}={v!r}" for k, v in self.context().items())
        return f"{self.kind}({details})"


class TruncatedError(WireError):
    """Fewer bytes than the layout requires."""

    kind = WireErrorKind.TRUNCATED

    def __init__(self, expected: int, got: int) -> None:
        super().__init__(expected, got)
        self.expected = expected
        self.got = got

    def context(self) -> dict[str, Any]:
        return {"expected": self.expected, "got": self.got}


class UnknownMethodError(WireError):
    """Header names a service or method id the toolkit does not know."""

    kind = WireErrorKind.UNKNOWN_METHOD

    def __init__(self, method_id: int, service_id: int = 0) -> None:
        super().__init__(method_id, service_id)
        self.method_id = method_id
        self.service_id = service_id

    def context(self) -> dict[str, Any]:
        return {"service_id": self.service_id, "method_id": self.method_id}


class BadCrcError(WireError):
    """Header CRC does not match the payload."""

    kind = WireErrorKind.BAD_CRC

    def __init__(self, expected: int, got: int) -> None:
        super().__init__(expected, got)
        self.expected = expected
        self.got = got

    def context(self) -> dict[str, Any]:
        return {"expected": f"0x{self.expected:04X}", "got": f"0x{self.got:04X}"}


class BadLengthError(WireError):
    """Declared payload length disagrees with the bytes present."""

    kind = WireErrorKind.BAD_LENGTH

    def __init__(self, declared: int, actual: int) -> None:
        super().__init__(declared, actual)
        self.declared = declared
        self.actual = actual

    def context(self) -> dict[str, Any]:
        return {"declared": self.declared, "actual": self.actual}


class FieldRangeError(WireError, ValueError):
    """A field value lies outside its documented range or enumeration.

    Raised both by the decoders and by model constructors, so invalid
    values are rejected identically on every path.
    """

    kind = WireErrorKind.FIELD_RANGE

    def __init__(self, field: str, value: Any) -> None:
        super().__init__(field, value)
        self.field = field
        self.value = value

    def context(self) -> dict[str, Any]:
        return {"field": self.field, "value": self.value}


class CountOverflowError(WireError, ValueError):
    """A list is longer than its fixed capacity."""

    kind = WireErrorKind.COUNT_OVERFLOW

    def __init__(self, declared: int, maximum: int) -> None:
        super().__init__(declared, maximum)
        self.declared = declared
        self.maximum = maximum

    def context(self) -> dict[str, Any]:
        return {"declared": self.declared, "max": self.maximum}


class InvalidConfigurationError(Ars548Error, ValueError):
    """A sensor configuration request that cannot be sent."""


class TransportError(Ars548Error):
    """Socket setup failed (bind, multicast join, ...)."""


class LogFormatError(Ars548Error):
    """A datagram log file is malformed."""

    def __init__(self, offset: int, reason: str) -> None:
        super().__init__(f"{reason} at byte offset {offset}")
        self.offset = offset
        self.reason = reason


class TruncatedLogError(LogFormatError):
    """A datagram log ends in the middle of a record."""

    def __init__(self, offset: int, last_complete_index: int) -> None:
        super().__init__(offset, "truncated record")
        self.last_complete_index = last_complete_index


class ExportError(Ars548Error):
    """Writing an export file failed."""

    def __init__(self, path: str, cause: OSError) -> None:
        super().__init__(f"cannot write {path}: {cause}")
        self.path = path
        self.cause = cause


class FilterExpressionError(Ars548Error, ValueError):
    """A filter expression could not be parsed."""


class RecordingError(Ars548Error):
    """Writing a datagram log failed part way."""

    def __init__(self, path: str, records_written: int, cause: OSError) -> None:
        super().__init__(f"cannot write {path} after {records_written} records: {cause}")
        self.path = path
        self.records_written = records_written
        self.cause = cause
