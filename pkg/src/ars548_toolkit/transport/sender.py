"""
Configuration requests and their confirmation through the Status stream.
"""

import asyncio
import logging
import socket
import time
from dataclasses import dataclass
from enum import StrEnum

from ..codec import canonical_configuration, encode_configuration
from ..errors import TransportError
from ..model import (
    Frame,
    SensorConfiguration,
    SensorStatus,
    apply_configuration,
)
from .config import TransportConfig
from .receiver import RadarReceiver

logger = logging.getLogger(__name__)


class AckOutcome(StrEnum):
    CONFIRMED = "CONFIRMED"
    UNCONFIRMED = "UNCONFIRMED"
    MISMATCH = "MISMATCH"


@dataclass(frozen=True, slots=True)
class AckResult:
    outcome: AckOutcome
    status: SensorStatus | None
    elapsed_s: float
    statuses_seen: int = 0


def status_matches(status: SensorStatus, conf: SensorConfiguration) -> bool:
    """True when ``status`` already reflects every group present in ``conf``."""
    return apply_configuration(status, conf) == status


async def send_configuration(
    cfg: TransportConfig,
    conf: SensorConfiguration,
    timeout_s: float | None = None,
) -> AckResult:
    """Send ``conf`` to the sensor and watch its Status frames for the echo.

    The data port is opened before the request goes out so an immediate
    Status reply is not missed. The first matching Status confirms; at the
    deadline the result is MISMATCH if some Status disagreed, UNCONFIRMED
    if none arrived.

    Raises:
        FieldRangeError: If a group is out of range (nothing is sent)
        TransportError: If the sockets cannot be opened or the send fails
    """
    datagram = encode_configuration(conf)
    expected = canonical_configuration(conf)
    timeout = cfg.ack_timeout_s if timeout_s is None else timeout_s

    statuses: asyncio.Queue[SensorStatus] = asyncio.Queue()

    def on_frame(frame: Frame) -> None:
        if isinstance(frame.payload, SensorStatus):
            statuses.put_nowait(frame.payload)

    loop = asyncio.get_running_loop()
    started = time.monotonic()
    deadline = loop.time() + timeout
    last: SensorStatus | None = None
    seen = 0

    async with RadarReceiver(cfg, on_frame):
        with socket.socket(socket.AF_INET, socket.SOCK_DGRAM, socket.IPPROTO_UDP) as sock:
            sock.setblocking(False)
            try:
                await loop.sock_sendto(
                    sock, datagram, (cfg.sensor_address, cfg.config_port)
                )
            except OSError as e:
                raise TransportError(
                    f"Cannot send configuration to {cfg.sensor_endpoint}: {e}"
                ) from e
        logger.info(f"Sent {len(datagram)}-byte configuration to {cfg.sensor_endpoint}")

        while (remaining := deadline - loop.time()) > 0:
            try:
                status = await asyncio.wait_for(statuses.get(), remaining)
            except TimeoutError:
                break
            seen += 1
            last = status
            if status_matches(status, expected):
                elapsed = time.monotonic() - started
                logger.info(f"✅ Configuration confirmed after {elapsed:.3f}s")
                return AckResult(AckOutcome.CONFIRMED, status, elapsed, seen)

    elapsed = time.monotonic() - started
    outcome = AckOutcome.MISMATCH if seen else AckOutcome.UNCONFIRMED
    logger.warning(f"Configuration {outcome} after {elapsed:.3f}s ({seen} status frames)")
    return AckResult(outcome, last, elapsed, seen)
