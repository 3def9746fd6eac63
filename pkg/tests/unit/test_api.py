"""
Tests for the listener stats API.
"""

import pytest
from fastapi.testclient import TestClient

from ars548_toolkit.api.server import ListenerMonitor, app, set_monitor
from ars548_toolkit.errors import WireErrorKind
from ars548_toolkit.model import Endpoint, Frame, RecvTime
from ars548_toolkit.transport import DriverStats
from tests.builders import make_object_list, make_status


def frame_of(payload):
    return Frame(payload, RecvTime(0, 0), Endpoint("127.0.0.1", 1))


@pytest.fixture
def client():
    """Test client with no listener attached."""
    set_monitor(None)
    yield TestClient(app)
    set_monitor(None)


class TestApi:
    """Test API endpoints."""

    def test_health(self, client):
        """Test the health endpoint."""
        response = client.get("/api/health")
        assert response.status_code == 200
        assert response.json() == {"status": "healthy"}

    def test_stats_without_listener(self, client):
        """Test stats are unavailable before a listener attaches."""
        assert client.get("/api/stats").status_code == 503

    def test_stats(self, client):
        """Test stats are served as key=value lines."""
        stats = DriverStats()
        stats.record_frame(frame_of(make_object_list(sequence_counter=4)))
        stats.record_error(WireErrorKind.BAD_CRC)
        set_monitor(ListenerMonitor(stats))

        response = client.get("/api/stats")
        assert response.status_code == 200
        assert response.headers["content-type"].startswith("text/plain")
        lines = response.text.splitlines()
        assert "frames_ok.objects=1" in lines
        assert "frames_error.BAD_CRC=1" in lines
        assert "last_sequence.objects=4" in lines

    def test_status_not_yet_received(self, client):
        """Test the status endpoint before any Status frame."""
        set_monitor(ListenerMonitor(DriverStats()))
        assert client.get("/api/status").status_code == 404

    def test_status(self, client):
        """Test the latest Status frame is served as JSON."""
        monitor = ListenerMonitor(DriverStats())
        monitor.observe(frame_of(make_object_list()))
        monitor.observe(frame_of(make_status()))
        set_monitor(monitor)

        data = client.get("/api/status").json()
        assert data["software_version_major"] == 5
        assert data["radar"]["sensor_ipv4"] == "10.13.1.113"
        assert data["radar"]["max_detection_distance"] == 300
        assert data["mounting"]["plug_orientation"] == 1
        assert data["defective"] is False
