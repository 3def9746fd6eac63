"""
Tests for datagram logs and timed replay.
"""

import asyncio
import math

import pytest

from ars548_toolkit.codec import encode_frame
from ars548_toolkit.errors import LogFormatError, RecordingError, TruncatedLogError
from ars548_toolkit.model import Endpoint, ObjectList, RecvTime
from ars548_toolkit.recorder import (
    FILE_HEADER,
    LOG_MAGIC,
    RECORD_HEADER,
    LogReader,
    LogRecord,
    LogWriter,
    check_speed,
    read_log,
    record,
    replay,
)
from tests.builders import make_object, make_object_list

SOURCE = Endpoint("10.13.1.113", 42102)
BASE_NS = 1_700_000_000_000_000_000


def sample_records(count=3, spacing_ns=100_000_000):
    return [
        LogRecord(
            BASE_NS + i * spacing_ns,
            SOURCE,
            encode_frame(make_object_list(make_object(id=i), sequence_counter=i)),
        )
        for i in range(count)
    ]


class TestLogFile:
    """Test writing and reading logs."""

    def test_header_only(self, tmp_path):
        """Test an empty recording is just the 12-byte header."""
        path = tmp_path / "empty.log"
        assert record([], path) == 0
        assert path.read_bytes() == LOG_MAGIC + b"\x00\x01"
        assert FILE_HEADER.size == 12
        assert list(LogReader(path)) == []

    def test_records_in_order(self, tmp_path):
        """Test records come back byte-exact in write order."""
        path = tmp_path / "a.log"
        records = sample_records()
        assert record(records, path) == 3
        assert list(LogReader(path)) == records
        assert path.stat().st_size == 12 + sum(RECORD_HEADER.size + r.length for r in records)

    def test_writer_as_sink(self, tmp_path):
        """Test the writer accepts receiver-style calls."""
        path = tmp_path / "sink.log"
        with LogWriter(path) as writer:
            writer(b"\x01\x02", RecvTime(wall_ns=5, monotonic_ns=9), SOURCE)
            writer.write(b"", 6, Endpoint("127.0.0.1", 1))
        records = list(LogReader(path))
        assert records[0] == LogRecord(5, SOURCE, b"\x01\x02")
        assert records[1].length == 0
        assert writer.records_written == 2

    def test_record_to_frame(self):
        """Test a record decodes into a frame with its capture metadata."""
        frame = sample_records(1)[0].to_frame()
        assert isinstance(frame.payload, ObjectList)
        assert frame.recv_time.wall_ns == BASE_NS
        assert frame.source == SOURCE

    def test_truncated_tail(self, tmp_path):
        """Test a cut file yields the complete records and the cut offset."""
        path = tmp_path / "cut.log"
        records = sample_records()
        record(records, path)
        path.write_bytes(path.read_bytes()[:-1])

        contents = read_log(path)
        assert contents.records == records[:2]
        assert contents.truncated
        assert contents.truncation.offset == 12 + 2 * (RECORD_HEADER.size + records[0].length)
        assert contents.truncation.last_complete_index == 1

    def test_truncated_inside_record_header(self, tmp_path):
        """Test a cut inside the first record header."""
        path = tmp_path / "cut.log"
        record(sample_records(1), path)
        path.write_bytes(path.read_bytes()[:15])
        with pytest.raises(TruncatedLogError) as exc_info:
            list(LogReader(path))
        assert exc_info.value.offset == 12
        assert exc_info.value.last_complete_index == -1

    def test_bad_magic(self, tmp_path):
        """Test a foreign file is rejected at offset 0."""
        path = tmp_path / "bad.log"
        path.write_bytes(b"NOTALOG\x00\x00\x00\x00\x01")
        with pytest.raises(LogFormatError) as exc_info:
            read_log(path)
        assert exc_info.value.offset == 0
        assert "magic" in exc_info.value.reason

    def test_unsupported_version(self, tmp_path):
        """Test an unknown version is reported at the version field."""
        path = tmp_path / "v2.log"
        path.write_bytes(LOG_MAGIC + b"\x00\x02")
        with pytest.raises(LogFormatError) as exc_info:
            read_log(path)
        assert exc_info.value.offset == 10

    def test_oversized_record(self, tmp_path):
        """Test a record longer than a datagram is corrupt, not truncated."""
        path = tmp_path / "huge.log"
        path.write_bytes(
            FILE_HEADER.pack(LOG_MAGIC, 1) + RECORD_HEADER.pack(0, 0, 0, 70_000)
        )
        with pytest.raises(LogFormatError) as exc_info:
            read_log(path)
        assert not isinstance(exc_info.value, TruncatedLogError)
        assert exc_info.value.offset == 12

    def test_unwritable(self, tmp_path):
        """Test I/O failures raise RecordingError."""
        with pytest.raises(RecordingError) as exc_info:
            record(sample_records(), tmp_path / "missing" / "a.log")
        assert exc_info.value.records_written == 0


class TestReplay:
    """Test timed replay."""

    @pytest.mark.parametrize("speed", [0.0, -1.0, math.nan])
    def test_bad_speed(self, speed):
        """Test non-positive speeds are rejected."""
        with pytest.raises(ValueError):
            check_speed(speed)

    async def test_bad_speed_before_reading(self, tmp_path):
        """Test replay validates the speed first."""
        with pytest.raises(ValueError):
            await replay(tmp_path / "does-not-matter.log", lambda rec: None, speed=0)

    async def test_callable_sink_in_order(self, tmp_path):
        """Test a callable sink sees every record in order."""
        path = tmp_path / "a.log"
        records = sample_records(5, spacing_ns=1_000_000)
        record(records, path)
        seen = []
        summary = await replay(path, seen.append, speed=math.inf)
        assert seen == records
        assert summary.records == 5
        assert summary.bytes_sent == sum(r.length for r in records)

    async def test_async_sink(self, tmp_path):
        """Test awaitable sinks are awaited."""
        path = tmp_path / "a.log"
        record(sample_records(2), path)
        seen = []

        async def sink(rec):
            await asyncio.sleep(0)
            seen.append(rec.recv_time_ns)

        await replay(path, sink, speed=math.inf)
        assert seen == [BASE_NS, BASE_NS + 100_000_000]

    async def test_speed_scales_spacing(self, tmp_path):
        """Test 200 ms of capture replays in about 100 ms at speed 2."""
        path = tmp_path / "a.log"
        record(sample_records(3, spacing_ns=100_000_000), path)
        loop = asyncio.get_running_loop()
        times = []
        summary = await replay(path, lambda rec: times.append(loop.time()), speed=2.0)
        assert summary.records == 3
        assert times[2] - times[0] == pytest.approx(0.1, abs=0.04)
        assert summary.elapsed_s < 0.5

    async def test_truncated_log_replays_prefix(self, tmp_path):
        """Test records before the damage are replayed before the error."""
        path = tmp_path / "cut.log"
        record(sample_records(), path)
        path.write_bytes(path.read_bytes()[:-1])
        seen = []
        with pytest.raises(TruncatedLogError):
            await replay(path, seen.append, speed=math.inf)
        assert len(seen) == 2
