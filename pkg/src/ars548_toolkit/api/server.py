"""
FastAPI server exposing the listener's counters on demand.
"""

import logging
import threading
from dataclasses import asdict
from ipaddress import IPv4Address
from typing import Any

import uvicorn
from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse

from ..config.settings import Config
from ..model import Frame, SensorStatus
from ..transport.stats import DriverStats

logger = logging.getLogger(__name__)

app = FastAPI(title="ARS548 Toolkit API", version="0.1.0")


class ListenerMonitor:
    """Read-side view of a running listener, shared with the API thread."""

    def __init__(self, stats: DriverStats) -> None:
        self.stats = stats
        self._lock = threading.Lock()
        self._last_status: SensorStatus | None = None

    def observe(self, frame: Frame) -> None:
        if isinstance(frame.payload, SensorStatus):
            with self._lock:
                self._last_status = frame.payload

    @property
    def last_status(self) -> SensorStatus | None:
        with self._lock:
            return self._last_status


monitor: ListenerMonitor | None = None


def set_monitor(listener_monitor: ListenerMonitor | None) -> None:
    """Set the listener the API reports on."""
    global monitor
    monitor = listener_monitor


def _get_monitor() -> ListenerMonitor:
    if monitor is None:
        raise HTTPException(status_code=503, detail="No listener attached")
    return monitor


def status_to_dict(status: SensorStatus) -> dict[str, Any]:
    """JSON-ready view of a Status frame."""

    def convert(value: Any) -> Any:
        if isinstance(value, IPv4Address):
            return str(value)
        if isinstance(value, dict):
            return {key: convert(item) for key, item in value.items()}
        return value

    return convert(asdict(status))  # type: ignore[no-any-return]


@app.get("/api/health")
async def health_check() -> dict[str, str]:
    """Health check endpoint."""
    return {"status": "healthy"}


@app.get("/api/stats", response_class=PlainTextResponse)
async def get_stats() -> str:
    """Driver counters as ``key=value`` lines."""
    return _get_monitor().stats.to_text()


@app.get("/api/status")
async def get_status() -> dict[str, Any]:
    """Most recent Status echo of the sensor."""
    status = _get_monitor().last_status
    if status is None:
        raise HTTPException(status_code=404, detail="No status frame received yet")
    return status_to_dict(status)


def start_api_server(
    host: str | None = None,
    port: int = 8548,
    listener_monitor: ListenerMonitor | None = None,
) -> None:
    """Start the API server in the current thread."""
    if listener_monitor is not None:
        set_monitor(listener_monitor)

    bind_host = host or Config.API_HOST
    logger.info(f"🌐 Starting API server on {bind_host}:{port}")
    uvicorn.run(app, host=bind_host, port=port, log_level="warning")


def start_api_thread(port: int, listener_monitor: ListenerMonitor) -> threading.Thread:
    """Run the API server in a background daemon thread."""
    api_thread = threading.Thread(
        target=start_api_server,
        kwargs={"port": port, "listener_monitor": listener_monitor},
        daemon=True,
        name="api-server",
    )
    api_thread.start()
    logger.info("✅ API server started in background thread")
    return api_thread
