"""
Tests for datagram handling of the receiver and status matching of the sender.
"""

import asyncio
from ipaddress import IPv4Address

import pytest

from ars548_toolkit.errors import RecordingError, TransportError, WireErrorKind
from ars548_toolkit.model import (
    Endpoint,
    FrameKind,
    RecvTime,
    SensorConfiguration,
    SyncStatus,
    Timestamp,
)
from ars548_toolkit.transport import RadarReceiver, open_data_socket, status_matches
from tests.builders import (
    free_udp_port,
    golden_detection_list,
    loopback_transport,
    make_radar,
    make_status,
    read_fixture,
)

SOURCE = Endpoint("10.13.1.113", 42102)
RECV = RecvTime(wall_ns=1_800_000_000_250_000_000, monotonic_ns=5)


@pytest.fixture
def delivered():
    return []


@pytest.fixture
def receiver(delivered):
    return RadarReceiver(loopback_transport(42102), delivered.append)


class TestHandleDatagram:
    """Test per-datagram decoding, stamping and counting."""

    def test_valid_frame(self, receiver, delivered):
        """Test a golden datagram is delivered with its metadata."""
        data = read_fixture("detection_list.hex")
        receiver.handle_datagram(data, RECV, SOURCE)
        (frame,) = delivered
        assert frame.payload == golden_detection_list()
        assert frame.source == SOURCE
        assert frame.recv_time == RECV
        assert receiver.stats.frames_ok[FrameKind.DETECTION_LIST] == 1
        assert receiver.stats.bytes_received == len(data)

    def test_corrupt_frame_counted(self, receiver, delivered):
        """Test a flipped byte is counted as BAD_CRC and not delivered."""
        data = bytearray(read_fixture("object_list.hex"))
        data[20] ^= 0xFF
        receiver.handle_datagram(bytes(data), RECV, SOURCE)
        assert delivered == []
        assert receiver.stats.frames_error[WireErrorKind.BAD_CRC] == 1
        assert receiver.stats.bytes_received == len(data)

    def test_raw_sink_sees_everything(self, delivered):
        """Test the raw sink receives valid and invalid datagrams alike."""
        raw = []
        receiver = RadarReceiver(
            loopback_transport(42102), delivered.append, lambda *args: raw.append(args)
        )
        receiver.handle_datagram(b"junk", RECV, SOURCE)
        receiver.handle_datagram(read_fixture("status.hex"), RECV, SOURCE)
        assert [args[0][:4] for args in raw] == [b"junk", read_fixture("status.hex")[:4]]
        assert len(delivered) == 1

    def test_local_stamp_policy(self, delivered):
        """Test the local policy replaces the stamp and keeps the sync status."""
        receiver = RadarReceiver(
            loopback_transport(42102, stamp_policy="local"), delivered.append
        )
        receiver.handle_datagram(read_fixture("detection_list.hex"), RECV, SOURCE)
        assert delivered[0].payload.stamp == Timestamp(
            1_800_000_000, 250_000_000, SyncStatus.SYNC_OK
        )

    def test_sink_failure_contained(self, receiver):
        """Test an exception in the sink does not escape the loop."""

        def broken(frame):
            raise RuntimeError("boom")

        receiver.sink = broken
        receiver.handle_datagram(read_fixture("status.hex"), RECV, SOURCE)
        assert receiver.stats.frames_ok[FrameKind.STATUS] == 1

    def test_not_started(self, receiver):
        """Test an unstarted receiver has no local address."""
        assert receiver.local_address is None


class TestStatusMatches:
    """Test comparing a Status echo with a request."""

    def test_radar_group(self):
        """Test a radar request matches only the echoed parameters."""
        conf = SensorConfiguration(radar=make_radar(max_detection_distance=1500))
        assert not status_matches(make_status(), conf)
        assert status_matches(make_status(radar=make_radar(max_detection_distance=1500)), conf)

    def test_new_ip(self):
        """Test an address change is confirmed by the echoed sensor address."""
        conf = SensorConfiguration(new_sensor_ipv4=IPv4Address("10.13.1.200"))
        echoed = make_status(radar=make_radar(sensor_ipv4=IPv4Address("10.13.1.200")))
        assert status_matches(echoed, conf)
        assert not status_matches(make_status(), conf)

    def test_untouched_groups_ignored(self):
        """Test groups absent from the request never cause a mismatch."""
        conf = SensorConfiguration(radar=make_radar())
        assert status_matches(make_status(blockage=2, defective=True), conf)


class TestRawSinkFailure:
    """Test a failing raw sink stops the receiver without losing counts."""

    @staticmethod
    def failing_on_second_call():
        calls = []

        def raw_sink(data, recv_time, source):
            calls.append(data)
            if len(calls) == 2:
                raise RecordingError("capture.log", 1, OSError(28, "No space left on device"))

        return raw_sink, calls

    def test_error_kept_and_receiver_stopped(self, delivered):
        """Test the sink error is stored and the stop event is set."""
        raw_sink, calls = self.failing_on_second_call()
        receiver = RadarReceiver(loopback_transport(42102), delivered.append, raw_sink)
        receiver.handle_datagram(read_fixture("status.hex"), RECV, SOURCE)
        assert receiver.error is None
        assert not receiver.stopped.is_set()

        receiver.handle_datagram(read_fixture("detection_list.hex"), RECV, SOURCE)
        assert isinstance(receiver.error, RecordingError)
        assert receiver.error.records_written == 1
        assert receiver.stopped.is_set()

        receiver.handle_datagram(read_fixture("object_list.hex"), RECV, SOURCE)
        assert len(calls) == 2

    def test_every_datagram_still_counted(self, delivered):
        """Test ok plus error counts still equal the datagrams handled."""
        raw_sink, _ = self.failing_on_second_call()
        receiver = RadarReceiver(loopback_transport(42102), delivered.append, raw_sink)
        datagrams = [read_fixture("status.hex"), read_fixture("detection_list.hex"), b"junk"]
        for data in datagrams:
            receiver.handle_datagram(data, RECV, SOURCE)
        assert receiver.stats.total_ok + receiver.stats.total_errors == len(datagrams)
        assert receiver.stats.bytes_received == sum(len(d) for d in datagrams)
        assert len(delivered) == 2

    async def test_serve_raises_sink_error(self, delivered):
        """Test serve closes the socket and re-raises the sink error."""
        raw_sink, _ = self.failing_on_second_call()
        receiver = RadarReceiver(
            loopback_transport(free_udp_port()), delivered.append, raw_sink
        )
        serving = asyncio.create_task(receiver.serve())
        await asyncio.sleep(0)
        for _ in range(2):
            receiver.handle_datagram(read_fixture("status.hex"), RECV, SOURCE)
        with pytest.raises(RecordingError):
            await serving
        assert receiver.local_address is None


class TestDataSocket:
    """Test binding of the data port."""

    def test_unicast_port_is_exclusive(self):
        """Test a second unicast socket on a bound port is refused."""
        cfg = loopback_transport(free_udp_port())
        first = open_data_socket(cfg)
        try:
            with pytest.raises(TransportError, match="Cannot listen"):
                open_data_socket(cfg)
        finally:
            first.close()

    async def test_second_unicast_receiver_refused(self, delivered):
        """Test a second receiver cannot steal datagrams from a running one."""
        cfg = loopback_transport(free_udp_port())
        async with RadarReceiver(cfg, delivered.append) as running:
            with pytest.raises(TransportError):
                await RadarReceiver(cfg, delivered.append).start()
            assert running.local_address is not None
