"""
Datagram log files.

Layout (all integers big-endian)::

    file header   magic "ARS548LOG\\0" (10 bytes), version u16 = 1
    record        recv_time_ns u64, source IPv4 u32, source port u16,
                  length u32, payload (length bytes)

Records are appended in arrival order, so a truncated file still yields
every record written before the cut.
"""

import logging
import struct
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from ipaddress import IPv4Address
from pathlib import Path
from typing import BinaryIO

from ..codec import MAX_DATAGRAM_SIZE, decode_frame
from ..errors import LogFormatError, RecordingError, TruncatedLogError
from ..model import Endpoint, Frame, RecvTime
from ..model.validation import check_unsigned

logger = logging.getLogger(__name__)

LOG_MAGIC = b"ARS548LOG\x00"
LOG_VERSION = 1
FILE_HEADER = struct.Struct(">10sH")
RECORD_HEADER = struct.Struct(">QIHI")


@dataclass(frozen=True, slots=True)
class LogRecord:
    """One captured datagram."""

    recv_time_ns: int
    source: Endpoint
    payload: bytes

    def __post_init__(self) -> None:
        check_unsigned("recv_time_ns", self.recv_time_ns, 64)
        check_unsigned("source.port", self.source.port, 16)
        check_unsigned("length", len(self.payload), 32)

    @property
    def length(self) -> int:
        return len(self.payload)

    def pack(self) -> bytes:
        return (
            RECORD_HEADER.pack(
                self.recv_time_ns,
                int(IPv4Address(self.source.address)),
                self.source.port,
                len(self.payload),
            )
            + self.payload
        )

    def to_frame(self) -> Frame:
        """Decode the payload as if it had just been received.

        Raises:
            WireError: If the payload is not a valid frame
        """
        recv_time = RecvTime(wall_ns=self.recv_time_ns, monotonic_ns=self.recv_time_ns)
        return decode_frame(self.payload, recv_time, self.source)


class LogWriter:
    """Appends datagrams to a log file.

    Instances are callable with ``(data, recv_time, source)`` so they can be
    used directly as the raw sink of a receiver.
    """

    def __init__(self, path: str | Path) -> None:
        self.path = Path(path)
        self.records_written = 0
        try:
            self._file: BinaryIO = open(self.path, "wb")
            self._file.write(FILE_HEADER.pack(LOG_MAGIC, LOG_VERSION))
        except OSError as e:
            raise RecordingError(str(self.path), 0, e) from e

    def write_record(self, record: LogRecord) -> None:
        try:
            self._file.write(record.pack())
        except OSError as e:
            raise RecordingError(str(self.path), self.records_written, e) from e
        self.records_written += 1

    def write(self, payload: bytes, recv_time: RecvTime | int, source: Endpoint) -> None:
        recv_time_ns = recv_time.wall_ns if isinstance(recv_time, RecvTime) else recv_time
        self.write_record(LogRecord(recv_time_ns, source, bytes(payload)))

    __call__ = write

    def close(self) -> None:
        if self._file.closed:
            return
        try:
            self._file.flush()
        finally:
            self._file.close()
        logger.info(f"Recorded {self.records_written} datagrams to {self.path}")

    def __enter__(self) -> "LogWriter":
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()


class LogReader:
    """Iterates the records of a log file.

    Raises ``LogFormatError`` for a bad header or an impossible record, and
    ``TruncatedLogError`` when the file ends inside a record; both carry the
    byte offset where the problem starts.
    """

    def __init__(self, path: str | Path) -> None:
        self.path = Path(path)
        self.records_read = 0

    def _read_header(self, f: BinaryIO) -> None:
        header = f.read(FILE_HEADER.size)
        if len(header) < FILE_HEADER.size:
            raise LogFormatError(0, "truncated file header")
        magic, version = FILE_HEADER.unpack(header)
        if magic != LOG_MAGIC:
            raise LogFormatError(0, f"bad magic {magic!r}")
        if version != LOG_VERSION:
            raise LogFormatError(len(LOG_MAGIC), f"unsupported version {version}")

    def __iter__(self) -> Iterator[LogRecord]:
        self.records_read = 0
        with open(self.path, "rb") as f:
            self._read_header(f)
            offset = FILE_HEADER.size
            while True:
                head = f.read(RECORD_HEADER.size)
                if not head:
                    return
                if len(head) < RECORD_HEADER.size:
                    raise TruncatedLogError(offset, self.records_read - 1)
                recv_time_ns, ipv4, port, length = RECORD_HEADER.unpack(head)
                if length > MAX_DATAGRAM_SIZE:
                    raise LogFormatError(offset, f"record length {length} too large")
                payload = f.read(length)
                if len(payload) < length:
                    raise TruncatedLogError(offset, self.records_read - 1)
                yield LogRecord(recv_time_ns, Endpoint(str(IPv4Address(ipv4)), port), payload)
                self.records_read += 1
                offset += RECORD_HEADER.size + length


@dataclass
class LogContents:
    records: list[LogRecord] = field(default_factory=list)
    truncation: TruncatedLogError | None = None

    @property
    def truncated(self) -> bool:
        return self.truncation is not None


def read_log(path: str | Path) -> LogContents:
    """Read every complete record, recovering from a truncated tail.

    Raises:
        LogFormatError: For a corrupt header or record (truncation excepted)
    """
    contents = LogContents()
    try:
        for record in LogReader(path):
            contents.records.append(record)
    except TruncatedLogError as e:
        logger.warning(
            f"{path} is truncated at byte {e.offset}; "
            f"last complete record is #{e.last_complete_index}"
        )
        contents.truncation = e
    return contents


def record(
    datagrams: Iterable[LogRecord | tuple[bytes, RecvTime | int, Endpoint]],
    destination: str | Path,
) -> int:
    """Write ``datagrams`` to a new log; returns the number of records.

    Raises:
        RecordingError: On I/O failure, with the count written so far
    """
    with LogWriter(destination) as writer:
        for item in datagrams:
            if isinstance(item, LogRecord):
                writer.write_record(item)
            else:
                writer.write(*item)
        return writer.records_written
