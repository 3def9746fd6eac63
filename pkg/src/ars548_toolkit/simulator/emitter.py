"""
UDP emitter of the simulated sensor.

Frames are paced at the scenario cycle rate (scaled by ``time_scale``), and
a configuration listener applies CONFIGURATION frames to the status echo.
"""

import asyncio
import logging
import math
import socket
import threading
import time
from dataclasses import dataclass, replace
from ipaddress import IPv4Address
from pathlib import Path
from typing import Any, TextIO

from ..codec import decode_payload, encode_frame
from ..config.settings import Config
from ..errors import TransportError, WireError
from ..model import (
    Endpoint,
    FramePayload,
    SensorConfiguration,
    SensorStatus,
    apply_configuration,
)
from .scenario import Scenario
from .synthesis import initial_status, synthesize_cycle

logger = logging.getLogger(__name__)


@dataclass
class EmissionSummary:
    """What a simulator run put on the wire."""

    cycles: int = 0
    detection_lists: int = 0
    object_lists: int = 0
    statuses: int = 0
    bytes_sent: int = 0
    configurations_applied: int = 0
    configurations_rejected: int = 0
    error: str | None = None

    @property
    def frames_sent(self) -> int:
        return self.detection_lists + self.object_lists + self.statuses


class _ConfigurationProtocol(asyncio.DatagramProtocol):
    def __init__(self, simulator: "SensorSimulator") -> None:
        self._simulator = simulator

    def datagram_received(self, data: bytes, addr: tuple[str, int]) -> None:
        self._simulator.handle_configuration(data, Endpoint(str(addr[0]), addr[1]))


class SensorSimulator:
    """Protocol-conformant stand-in for an ARS 548 on the network.

    Args:
        scenario: Scenario to play
        target: Where data frames are sent (unicast or multicast)
        config_bind: Address of the configuration listener; ``None``
            disables it. Port 0 binds an ephemeral port, see
            ``config_address``.
        time_scale: Pacing multiplier; ``math.inf`` emits as fast as
            possible while yielding to the event loop between cycles.
        ground_truth_path: Optional JSONL file receiving one record per cycle
        status_every: Status frame period in cycles
    """

    def __init__(
        self,
        scenario: Scenario,
        target: Endpoint,
        *,
        config_bind: Endpoint | None = None,
        time_scale: float = 1.0,
        ground_truth_path: Path | None = None,
        status_every: int | None = None,
    ) -> None:
        if not time_scale > 0:
            raise ValueError(f"time_scale must be positive, got {time_scale}")
        self.scenario = scenario
        self.target = target
        self.config_bind = config_bind
        self.time_scale = time_scale
        self.ground_truth_path = ground_truth_path
        self.status_every = max(1, status_every or Config.STATUS_EVERY_CYCLES)
        self.summary = EmissionSummary()

        self._lock = threading.Lock()
        self._status = initial_status(scenario)
        self._stopping = asyncio.Event()
        self._sock: socket.socket | None = None
        self._config_transport: asyncio.DatagramTransport | None = None

    @property
    def current_status(self) -> SensorStatus:
        with self._lock:
            return self._status

    @property
    def config_address(self) -> Endpoint | None:
        """Bound address of the configuration listener, once started."""
        if self._config_transport is None:
            return None
        host, port = self._config_transport.get_extra_info("sockname")[:2]
        return Endpoint(host, port)

    def handle_configuration(self, data: bytes, source: Endpoint) -> bool:
        """Apply one configuration datagram; returns whether it was accepted."""
        try:
            payload = decode_payload(data)
        except WireError as e:
            self.summary.configurations_rejected += 1
            logger.warning(f"Rejected configuration from {source}: {e}")
            return False
        if not isinstance(payload, SensorConfiguration):
            self.summary.configurations_rejected += 1
            logger.warning(f"Ignoring non-configuration frame on config port from {source}")
            return False

        with self._lock:
            self._status = apply_configuration(self._status, payload)
        self.summary.configurations_applied += 1
        logger.info(f"✅ Applied configuration from {source}")
        return True

    async def start(self) -> None:
        """Open the data socket and the configuration listener."""
        if self._sock is not None:
            return
        loop = asyncio.get_running_loop()
        try:
            sock = socket.socket(socket.AF_INET, socket.SOCK_DGRAM, socket.IPPROTO_UDP)
            if IPv4Address(self.target.address).is_multicast:
                sock.setsockopt(socket.IPPROTO_IP, socket.IP_MULTICAST_TTL, 1)
                sock.setsockopt(socket.IPPROTO_IP, socket.IP_MULTICAST_LOOP, 1)
            sock.setblocking(False)
            self._sock = sock
            if self.config_bind is not None:
                self._config_transport, _ = await loop.create_datagram_endpoint(
                    lambda: _ConfigurationProtocol(self),
                    local_addr=(self.config_bind.address, self.config_bind.port),
                )
        except OSError as e:
            self.close()
            raise TransportError(f"Cannot open simulator sockets: {e}") from e
        logger.info(f"🚀 Simulator sending to {self.target}, config on {self.config_address}")

    def stop(self) -> None:
        """Ask a running ``run()`` to finish after the current cycle."""
        self._stopping.set()

    def close(self) -> None:
        if self._config_transport is not None:
            self._config_transport.close()
            self._config_transport = None
        if self._sock is not None:
            self._sock.close()
            self._sock = None

    async def _send(self, payload: FramePayload) -> None:
        assert self._sock is not None
        data = encode_frame(payload)
        await asyncio.get_running_loop().sock_sendto(
            self._sock, data, (self.target.address, self.target.port)
        )
        self.summary.bytes_sent += len(data)

    async def run(self) -> EmissionSummary:
        """Emit every cycle of the scenario, then close the sockets.

        Socket or ground-truth file errors end the run early; the summary
        then carries the error and the cycles emitted so far.
        """
        await self.start()
        loop = asyncio.get_running_loop()
        scenario = self.scenario
        if scenario.epoch_ns is None:
            scenario = replace(scenario, epoch_ns=time.time_ns())
        period = 0.0 if math.isinf(self.time_scale) else 1.0 / (
            scenario.cycle_rate * self.time_scale
        )
        ground_truth: TextIO | None = None
        started = loop.time()
        try:
            if self.ground_truth_path is not None:
                ground_truth = open(self.ground_truth_path, "w", encoding="utf-8")
            for cycle in range(scenario.cycle_count):
                if self._stopping.is_set():
                    logger.info(f"Simulator stopped after {cycle} cycles")
                    break
                delay = started + cycle * period - loop.time()
                await asyncio.sleep(max(0.0, delay))

                frames = synthesize_cycle(scenario, cycle)
                await self._send(frames.detections)
                self.summary.detection_lists += 1
                await self._send(frames.objects)
                self.summary.object_lists += 1
                if cycle % self.status_every == 0:
                    with self._lock:
                        self._status = replace(self._status, stamp=frames.objects.stamp)
                        status = self._status
                    await self._send(status)
                    self.summary.statuses += 1

                if ground_truth is not None:
                    ground_truth.write(frames.ground_truth.to_json() + "\n")
                self.summary.cycles += 1
        except OSError as e:
            self.summary.error = str(e)
            logger.error(f"❌ Simulator aborted after {self.summary.cycles} cycles: {e}")
        finally:
            if ground_truth is not None:
                ground_truth.close()
            self.close()

        logger.info(
            f"Simulator done: {self.summary.cycles} cycles, "
            f"{self.summary.frames_sent} frames, {self.summary.bytes_sent} bytes"
        )
        return self.summary


async def run_emitter(
    scenario: Scenario, endpoint: Endpoint, **options: Any
) -> EmissionSummary:
    """Play ``scenario`` towards ``endpoint``; see ``SensorSimulator`` for options."""
    return await SensorSimulator(scenario, endpoint, **options).run()
