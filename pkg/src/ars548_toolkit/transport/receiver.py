"""
UDP receive loop of the driver.
"""

import asyncio
import logging
import socket
import struct
from collections.abc import Callable

from ..codec import decode_frame
from ..errors import TransportError, WireError
from ..model import Endpoint, Frame, RecvTime, apply_stamp_policy
from .config import TransportConfig
from .stats import DriverStats

logger = logging.getLogger(__name__)

FrameSink = Callable[[Frame], None]
RawSink = Callable[[bytes, RecvTime, Endpoint], None]

SOCKET_RCVBUF_BYTES = 4 * 1024 * 1024


def open_data_socket(cfg: TransportConfig) -> socket.socket:
    """Bind the data port and join the multicast group, if any.

    Port sharing (``SO_REUSEPORT``) is only enabled for multicast, where
    every member gets a copy of each datagram. A unicast port is exclusive.

    Raises:
        TransportError: If binding or joining fails
    """
    sock = socket.socket(socket.AF_INET, socket.SOCK_DGRAM, socket.IPPROTO_UDP)
    try:
        sock.setsockopt(socket.SOL_SOCKET, socket.SO_RCVBUF, SOCKET_RCVBUF_BYTES)
        if cfg.multicast_group:
            sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
            if hasattr(socket, "SO_REUSEPORT"):
                sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEPORT, 1)
            # bind the group port on all interfaces, membership picks the NIC
            sock.bind(("", cfg.listen_port))
            membership = struct.pack(
                "4s4s",
                socket.inet_aton(cfg.multicast_group),
                socket.inet_aton(cfg.interface_address or "0.0.0.0"),  # nosec: B104
            )
            sock.setsockopt(socket.IPPROTO_IP, socket.IP_ADD_MEMBERSHIP, membership)
        else:
            sock.bind((cfg.interface_address or "", cfg.listen_port))
        sock.setblocking(False)
    except OSError as e:
        sock.close()
        where = cfg.multicast_group or cfg.interface_address or "*"
        raise TransportError(f"Cannot listen on {where}:{cfg.listen_port}: {e}") from e
    return sock


class _ReceiverProtocol(asyncio.DatagramProtocol):
    def __init__(self, receiver: "RadarReceiver") -> None:
        self._receiver = receiver

    def datagram_received(self, data: bytes, addr: tuple[str, int]) -> None:
        # stamp first, before any decoding work
        recv_time = RecvTime.now()
        self._receiver.handle_datagram(data, recv_time, Endpoint(addr[0], addr[1]))

    def error_received(self, exc: Exception) -> None:
        logger.warning(f"Socket error on data port: {exc}")


class RadarReceiver:
    """Receives, decodes and stamps sensor datagrams.

    Frames reach ``sink`` in arrival order on the event loop thread. A
    datagram that fails to decode is counted and logged; it never stops the
    loop. ``raw_sink`` sees every datagram, valid or not, before decoding.
    If the raw sink raises, the datagram is still decoded, the exception is
    kept in ``error``, the raw sink is dropped and the receiver stops.
    """

    def __init__(
        self,
        cfg: TransportConfig,
        sink: FrameSink,
        raw_sink: RawSink | None = None,
    ) -> None:
        self.cfg = cfg
        self.sink = sink
        self.raw_sink = raw_sink
        self.stats = DriverStats()
        self.error: Exception | None = None
        self.stopped = asyncio.Event()
        self._transport: asyncio.DatagramTransport | None = None

    @property
    def local_address(self) -> Endpoint | None:
        if self._transport is None:
            return None
        host, port = self._transport.get_extra_info("sockname")[:2]
        return Endpoint(host, port)

    def handle_datagram(self, data: bytes, recv_time: RecvTime, source: Endpoint) -> None:
        self.stats.record_bytes(len(data))
        if self.raw_sink is not None:
            try:
                self.raw_sink(data, recv_time, source)
            except Exception as e:
                logger.error(f"❌ Raw sink failed, stopping receiver: {e}")
                self.error = e
                self.raw_sink = None
                self.stop()
        try:
            frame = decode_frame(data, recv_time, source)
        except WireError as e:
            self.stats.record_error(e.kind)
            logger.warning(f"Dropped {len(data)}-byte datagram from {source}: {e}")
            return

        frame = apply_stamp_policy(frame, self.cfg.stamp_policy)
        self.stats.record_frame(frame)
        try:
            self.sink(frame)
        except Exception:
            logger.exception(f"Frame sink failed on {frame.kind} from {source}")

    async def start(self) -> Endpoint:
        """Open the socket; returns the bound address."""
        if self._transport is None:
            sock = open_data_socket(self.cfg)
            loop = asyncio.get_running_loop()
            self._transport, _ = await loop.create_datagram_endpoint(
                lambda: _ReceiverProtocol(self), sock=sock
            )
            logger.info(f"🚀 Listening for sensor data on {self.local_address}")
        address = self.local_address
        assert address is not None
        return address

    def stop(self) -> None:
        self.stopped.set()

    def close(self) -> None:
        if self._transport is not None:
            self._transport.close()
            self._transport = None

    async def wait(self, stop: asyncio.Event | None = None) -> None:
        """Block until ``stop()`` is called or ``stop`` is set."""
        waiters = [asyncio.ensure_future(self.stopped.wait())]
        if stop is not None:
            waiters.append(asyncio.ensure_future(stop.wait()))
        try:
            await asyncio.wait(waiters, return_when=asyncio.FIRST_COMPLETED)
        finally:
            for waiter in waiters:
                waiter.cancel()

    async def serve(self) -> DriverStats:
        """Receive until ``stop()``; returns the final counters.

        Raises:
            Exception: Whatever the raw sink raised, after the socket is closed
        """
        await self.start()
        try:
            await self.wait()
        finally:
            self.close()
            logger.info(f"Receiver stopped: {self.stats.summary_line()}")
        if self.error is not None:
            raise self.error
        return self.stats

    async def __aenter__(self) -> "RadarReceiver":
        await self.start()
        return self

    async def __aexit__(self, *exc_info: object) -> None:
        self.close()


async def run_receiver(
    cfg: TransportConfig,
    sink: FrameSink,
    stop: asyncio.Event | None = None,
    raw_sink: RawSink | None = None,
) -> DriverStats:
    """Run a receive loop until ``stop`` is set (or the task is cancelled).

    Raises:
        TransportError: If the socket cannot be bound or the group joined
        Exception: Whatever the raw sink raised; the loop stops at that point
    """
    receiver = RadarReceiver(cfg, sink, raw_sink)
    await receiver.start()
    try:
        await receiver.wait(stop)
    finally:
        receiver.close()
    if receiver.error is not None:
        raise receiver.error
    return receiver.stats
