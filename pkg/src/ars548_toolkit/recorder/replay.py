"""
Timed replay of datagram logs.
"""

import asyncio
import inspect
import logging
import math
import socket
from collections.abc import Awaitable, Callable
from dataclasses import dataclass
from pathlib import Path

from ..model import Endpoint
from .logfile import LogReader, LogRecord

logger = logging.getLogger(__name__)

RecordSink = Callable[[LogRecord], Awaitable[None] | None]


@dataclass
class ReplaySummary:
    records: int = 0
    bytes_sent: int = 0
    elapsed_s: float = 0.0


def check_speed(speed: float) -> float:
    """Validate a replay speed factor; ``math.inf`` means as fast as possible."""
    if math.isnan(speed) or speed <= 0:
        raise ValueError(f"speed must be > 0, got {speed}")
    return speed


async def replay(
    source: str | Path,
    sink: RecordSink | Endpoint,
    speed: float = 1.0,
) -> ReplaySummary:
    """Replay the records of ``source`` in order.

    Records are delayed by their original spacing divided by ``speed``;
    absolute capture times do not matter. An ``Endpoint`` sink receives the
    payloads as UDP datagrams, a callable sink receives the records.

    Raises:
        ValueError: If ``speed`` is not positive
        LogFormatError: On a corrupt or truncated log, after replaying the
            records before the damage
    """
    check_speed(speed)
    loop = asyncio.get_running_loop()
    summary = ReplaySummary()

    sock: socket.socket | None = None
    if isinstance(sink, Endpoint):
        sock = socket.socket(socket.AF_INET, socket.SOCK_DGRAM, socket.IPPROTO_UDP)
        sock.setblocking(False)

    started = loop.time()
    first_ns: int | None = None
    try:
        for rec in LogReader(source):
            if first_ns is None:
                first_ns = rec.recv_time_ns
            if math.isinf(speed):
                await asyncio.sleep(0)
            else:
                due = started + (rec.recv_time_ns - first_ns) / 1e9 / speed
                await asyncio.sleep(max(0.0, due - loop.time()))

            if sock is not None:
                assert isinstance(sink, Endpoint)
                await loop.sock_sendto(sock, rec.payload, (sink.address, sink.port))
            else:
                assert callable(sink)
                result = sink(rec)
                if inspect.isawaitable(result):
                    await result
            summary.records += 1
            summary.bytes_sent += rec.length
    finally:
        if sock is not None:
            sock.close()
        summary.elapsed_s = loop.time() - started

    logger.info(
        f"Replayed {summary.records} records from {source} in {summary.elapsed_s:.3f}s"
    )
    return summary
