"""
End-to-end tests of the ars548 command against the simulated sensor.
"""

import asyncio
import csv
import json
from dataclasses import replace

import pytest

from ars548_toolkit.config.scenario_loader import load_scenario
from ars548_toolkit.errors import RecordingError
from ars548_toolkit.main import EXIT_OK, EXIT_RUNTIME_ERROR, run
from ars548_toolkit.model import Endpoint, FrameKind
from ars548_toolkit.recorder import LogWriter
from ars548_toolkit.simulator import SensorSimulator
from ars548_toolkit.transport import RadarReceiver

pytestmark = pytest.mark.slow

LISTENER_STARTUP_S = 0.5


def output_values(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line)


def loopback_args(port):
    return ["--port", str(port), "--group", "none", "--iface", "127.0.0.1"]


async def test_listen_exports_jsonl(mock_config, noiseless_scenario, data_port, tmp_path, capsys):
    """Test listen counts and exports every frame of a one-second scenario."""
    out = tmp_path / "frames"
    argv = [
        "listen", *loopback_args(data_port), "--stamp", "keep",
        "--export", "jsonl", "--out", str(out), "--duration", "2", "--stats-every", "10",
    ]
    listener = asyncio.create_task(asyncio.to_thread(run, argv))
    await asyncio.sleep(LISTENER_STARTUP_S)
    summary = await SensorSimulator(
        noiseless_scenario, Endpoint("127.0.0.1", data_port), time_scale=20.0, status_every=10
    ).run()

    assert await listener == EXIT_OK
    assert summary.frames_sent == 42
    values = output_values(capsys.readouterr().out)
    assert values["frames_ok.detections"] == "20"
    assert values["frames_ok.objects"] == "20"
    assert values["frames_ok.status"] == "2"
    assert values["sequence_gaps"] == "0"
    lines = (out / "frames.jsonl").read_text().splitlines()
    assert len(lines) == 42
    assert sum(json.loads(line)["kind"] == FrameKind.STATUS for line in lines) == 2


async def test_listen_filters_csv_export(mock_config, data_port, tmp_path, capsys, monkeypatch):
    """Test listen --filter leaves only the fast car in the object CSV files."""
    monkeypatch.delenv("ARS548_SCENARIO_SEED", raising=False)
    scenario = replace(load_scenario("two_cars"), duration=1.0)
    out = tmp_path / "clouds"
    argv = [
        "listen", *loopback_args(data_port), "--filter", "min_speed_kmh=10",
        "--export", "csv", "--out", str(out), "--duration", "2", "--stats-every", "10",
    ]
    listener = asyncio.create_task(asyncio.to_thread(run, argv))
    await asyncio.sleep(LISTENER_STARTUP_S)
    await SensorSimulator(
        scenario, Endpoint("127.0.0.1", data_port), time_scale=20.0, status_every=10
    ).run()

    assert await listener == EXIT_OK
    assert output_values(capsys.readouterr().out)["frames_ok.objects"] == "20"
    object_files = sorted(out.glob("objects_*.csv"))
    assert len(object_files) == 20
    for path in object_files:
        with open(path, newline="") as f:
            rows = list(csv.DictReader(f))
        assert [row["source_id"] for row in rows] == ["1"]
    # detections are not touched by an object filter
    assert len(list(out.glob("detections_*.csv"))) == 20


async def test_listen_records_then_export_matches(
    mock_config, noiseless_scenario, data_port, tmp_path, capsys
):
    """Test a log written by listen --record exports one JSONL line per frame."""
    log_path = tmp_path / "capture.log"
    argv = [
        "listen", *loopback_args(data_port), "--record", str(log_path),
        "--duration", "2", "--stats-every", "10",
    ]
    listener = asyncio.create_task(asyncio.to_thread(run, argv))
    await asyncio.sleep(LISTENER_STARTUP_S)
    await SensorSimulator(
        noiseless_scenario, Endpoint("127.0.0.1", data_port), time_scale=20.0, status_every=10
    ).run()
    assert await listener == EXIT_OK
    capsys.readouterr()

    out = tmp_path / "export"
    assert run(["export", "--in", str(log_path), "--out", str(out), "--format", "jsonl"]) == EXIT_OK
    values = output_values(capsys.readouterr().out)
    assert values["records"] == "42"
    assert values["frames_exported"] == "42"
    assert len((out / "frames.jsonl").read_text().splitlines()) == 42

    assert run(["info", "--in", str(log_path)]) == EXIT_OK
    info = output_values(capsys.readouterr().out)
    assert info["frames.objects"] == "20"
    assert info["decode_errors"] == "0"
    assert info["sequence_gaps"] == "0"


async def test_simulate_command(mock_config, loopback_config, data_port, tmp_path, capsys):
    """Test the simulate command plays a scenario file with ground truth."""
    scenario_path = tmp_path / "scenario.yaml"
    scenario_path.write_text(
        "duration: 1.0\ncycle_rate: 10\nseed: 3\n"
        "objects:\n  - {x: 15, y: 1, vx: -2, detections_per_cycle: 3}\n"
    )
    truth_path = tmp_path / "truth.jsonl"
    argv = [
        "simulate", "--scenario", str(scenario_path), "--target", f"127.0.0.1:{data_port}",
        "--time-scale", "inf", "--no-config", "--ground-truth", str(truth_path),
    ]
    frames = []
    async with RadarReceiver(loopback_config, frames.append) as receiver:
        code = await asyncio.to_thread(run, argv)
        await asyncio.sleep(0.2)

    assert code == EXIT_OK
    values = output_values(capsys.readouterr().out)
    assert values["cycles"] == "10"
    assert values["detection_lists"] == "10"
    assert receiver.stats.frames_ok[FrameKind.DETECTION_LIST] == 10
    assert all(
        len(f.payload.detections) == 3 for f in frames if f.kind == FrameKind.DETECTION_LIST
    )
    assert len(truth_path.read_text().splitlines()) == 10


async def test_configure_command(mock_config, noiseless_scenario, data_port, capsys):
    """Test configure exits 0 once the simulated sensor echoes the change."""
    simulator = SensorSimulator(
        replace(noiseless_scenario, duration=10.0),
        Endpoint("127.0.0.1", data_port),
        config_bind=Endpoint("127.0.0.1", 0),
        status_every=1,
    )
    await simulator.start()
    task = asyncio.create_task(simulator.run())
    argv = [
        "configure", *loopback_args(data_port),
        "--sensor-ip", "127.0.0.1", "--config-port", str(simulator.config_address.port),
        "--max-distance", "1500", "--frequency-slot", "2", "--timeout", "2",
    ]
    try:
        code = await asyncio.to_thread(run, argv)
    finally:
        simulator.stop()
        await task

    assert code == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "CONFIRMED"
    assert lines[1] == "max_distance=1500 slot=2 cycle_time_ms=50 sensor_ip=127.0.0.1"


async def test_configure_command_unconfirmed(mock_config, data_port, capsys):
    """Test configure exits 1 when no sensor answers."""
    argv = [
        "configure", *loopback_args(data_port),
        "--sensor-ip", "127.0.0.1", "--config-port", "9", "--powersave", "on", "--timeout", "0.3",
    ]
    assert await asyncio.to_thread(run, argv) == EXIT_RUNTIME_ERROR
    assert capsys.readouterr().out.splitlines()[0] == "UNCONFIRMED"


async def test_record_aborts_on_write_failure(
    mock_config, noiseless_scenario, data_port, tmp_path, capsys, monkeypatch
):
    """Test record exits 1 with the count so far when the log cannot be written."""
    original = LogWriter.write_record

    def fail_after_first(self, record):
        if self.records_written >= 1:
            raise RecordingError(str(self.path), self.records_written, OSError(28, "disk full"))
        original(self, record)

    monkeypatch.setattr(LogWriter, "write_record", fail_after_first)
    argv = [
        "record", *loopback_args(data_port), "--out", str(tmp_path / "capture.log"),
        "--duration", "5", "--stats-every", "10",
    ]
    recorder = asyncio.create_task(asyncio.to_thread(run, argv))
    await asyncio.sleep(LISTENER_STARTUP_S)
    await SensorSimulator(
        noiseless_scenario, Endpoint("127.0.0.1", data_port), time_scale=20.0, status_every=10
    ).run()

    assert await recorder == EXIT_RUNTIME_ERROR
    captured = capsys.readouterr()
    assert output_values(captured.out)["records"] == "1"
    assert "after 1 records" in captured.err
