"""
Subcommand implementations of the ars548 command line tool.

Each ``cmd_*`` takes the parsed arguments and returns an exit code. Output on
stdout is line-oriented; logs go to stderr.
"""

import argparse
import asyncio
import contextlib
import logging
import signal
import sys
from collections import Counter
from dataclasses import replace
from ipaddress import IPv4Address

import yaml  # type: ignore
from pydantic import ValidationError

from .api.server import ListenerMonitor, start_api_thread
from .cloud import FrameExporter
from .config.scenario_loader import load_scenario
from .config.settings import Config
from .errors import ExportError, FieldRangeError, WireError
from .filter import FramePipeline
from .model import (
    Endpoint,
    Frame,
    FrameKind,
    FrequencySlot,
    MountingPose,
    PlugOrientation,
    RadarParameters,
    RecvTime,
    SensorConfiguration,
    StampPolicy,
    VehicleDimensions,
    apply_stamp_policy,
)
from .recorder import LogRecord, LogWriter, read_log, replay
from .simulator import SensorSimulator
from .transport import (
    AckOutcome,
    DriverStats,
    RadarReceiver,
    RawSink,
    TransportConfig,
    send_configuration,
)

logger = logging.getLogger(__name__)


class UsageError(Exception):
    """Arguments parsed but do not form a valid request (exit code 2)."""


def _install_stop_handlers(stop: asyncio.Event) -> None:
    loop = asyncio.get_running_loop()
    for sig in (signal.SIGINT, signal.SIGTERM):
        # only possible from the main thread on Unix
        with contextlib.suppress(NotImplementedError, RuntimeError, ValueError):
            loop.add_signal_handler(sig, stop.set)


def _transport_config(args: argparse.Namespace, **overrides: object) -> TransportConfig:
    return TransportConfig(
        listen_port=args.port,
        multicast_group=args.group or None,
        interface_address=args.iface,
        **overrides,  # type: ignore[arg-type]
    )


class ListenSink:
    """Frame sink of the listener: monitor, filter, export.

    An export failure sets ``error`` and stops the receive loop.
    """

    def __init__(
        self,
        pipeline: FramePipeline | None = None,
        exporter: FrameExporter | None = None,
    ) -> None:
        self.pipeline = pipeline
        self.exporter = exporter
        self.monitor: ListenerMonitor | None = None
        self.stop = asyncio.Event()
        self.error: ExportError | None = None

    def __call__(self, frame: Frame) -> None:
        if self.monitor is not None:
            self.monitor.observe(frame)
        if self.pipeline is not None:
            frame = self.pipeline.apply(frame)
        if self.exporter is None or self.error is not None:
            return
        try:
            self.exporter.export(frame)
        except ExportError as e:
            logger.error(f"❌ Export failed: {e}")
            self.error = e
            self.stop.set()


async def _print_stats(stats: DriverStats, every_s: float) -> None:
    while True:
        await asyncio.sleep(every_s)
        print(stats.summary_line(), flush=True)


async def _receive(
    cfg: TransportConfig,
    sink: ListenSink,
    raw_sink: RawSink | None,
    duration: float | None,
    stats_every: float,
    api_port: int | None = None,
) -> RadarReceiver:
    receiver = RadarReceiver(cfg, sink, raw_sink)
    await receiver.start()

    if api_port is not None:
        sink.monitor = ListenerMonitor(receiver.stats)
        start_api_thread(api_port, sink.monitor)

    _install_stop_handlers(sink.stop)
    if duration is not None:
        asyncio.get_running_loop().call_later(duration, sink.stop.set)
    printer = asyncio.create_task(_print_stats(receiver.stats, stats_every))
    try:
        await receiver.wait(sink.stop)
    finally:
        printer.cancel()
        receiver.close()
    return receiver


def cmd_listen(args: argparse.Namespace) -> int:
    """Receive, stamp, filter and export, printing counters periodically."""
    cfg = _transport_config(args, stamp_policy=StampPolicy(args.stamp))
    exporter = FrameExporter(args.out, args.export) if args.export else None
    writer = LogWriter(args.record) if args.record else None
    if args.filter is not None:
        logger.info(f"Filtering with {args.filter}")

    async def listen() -> tuple[RadarReceiver, ListenSink]:
        sink = ListenSink(args.filter, exporter)
        receiver = await _receive(
            cfg, sink, writer, args.duration, args.stats_every, args.api_port
        )
        return receiver, sink

    try:
        receiver, sink = asyncio.run(listen())
    finally:
        if exporter is not None:
            exporter.close()
        if writer is not None:
            writer.close()

    if writer is not None:
        print(f"records={writer.records_written}")
    print(receiver.stats.to_text(), end="", flush=True)
    if receiver.error is not None:
        raise receiver.error
    if sink.error is not None:
        raise sink.error
    return 0


def cmd_record(args: argparse.Namespace) -> int:
    """Capture raw datagrams to a log file until stopped."""
    cfg = _transport_config(args)

    async def capture(writer: LogWriter) -> RadarReceiver:
        return await _receive(cfg, ListenSink(), writer, args.duration, args.stats_every)

    with LogWriter(args.out) as writer:
        receiver = asyncio.run(capture(writer))
        records = writer.records_written
    print(f"records={records}")
    print(receiver.stats.to_text(), end="", flush=True)
    if receiver.error is not None:
        raise receiver.error
    return 0


def decode_record(
    rec: LogRecord,
    stats: DriverStats,
    policy: StampPolicy,
    recv_time: RecvTime | None = None,
) -> Frame | None:
    """Decode a logged datagram the way the receiver would; None on error."""
    stats.record_bytes(rec.length)
    try:
        frame = rec.to_frame()
    except WireError as e:
        stats.record_error(e.kind)
        logger.warning(f"Undecodable record from {rec.source}: {e}")
        return None
    if recv_time is not None:
        frame = replace(frame, recv_time=recv_time)
    frame = apply_stamp_policy(frame, policy)
    stats.record_frame(frame)
    return frame


def cmd_replay(args: argparse.Namespace) -> int:
    """Replay a log to a UDP target, or through the decoder in-process."""
    if args.target is not None:
        summary = asyncio.run(replay(args.input, args.target, args.speed))
        print(f"records={summary.records}")
        print(f"bytes_sent={summary.bytes_sent}")
        print(f"elapsed_s={summary.elapsed_s:.3f}")
        return 0

    stats = DriverStats()
    policy = StampPolicy(args.stamp)

    def on_record(rec: LogRecord) -> None:
        decode_record(rec, stats, policy, RecvTime.now())

    summary = asyncio.run(replay(args.input, on_record, args.speed))
    print(f"records={summary.records}")
    print(f"elapsed_s={summary.elapsed_s:.3f}")
    print(stats.to_text(), end="", flush=True)
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    """Decode a log offline and export every frame."""
    contents = read_log(args.input)
    stats = DriverStats()
    policy = StampPolicy(args.stamp)
    pipeline: FramePipeline | None = args.filter

    with FrameExporter(args.out, args.format) as exporter:
        for rec in contents.records:
            frame = decode_record(rec, stats, policy)
            if frame is None:
                continue
            if pipeline is not None:
                frame = pipeline.apply(frame)
            exporter.export(frame)
        exported = exporter.frames_written

    print(f"records={len(contents.records)}")
    print(f"frames_exported={exported}")
    print(f"decode_errors={stats.total_errors}")
    if contents.truncation is not None:
        print(f"truncated_at={contents.truncation.offset}")
    return 0


def cmd_info(args: argparse.Namespace) -> int:
    """Print a key=value summary of a log file."""
    contents = read_log(args.input)
    stats = DriverStats()
    for rec in contents.records:
        decode_record(rec, stats, StampPolicy.KEEP_ORIGINAL)

    records = contents.records
    span_s = (records[-1].recv_time_ns - records[0].recv_time_ns) / 1e9 if records else 0.0
    sources = Counter(str(rec.source) for rec in records)
    print(f"records={len(records)}")
    for kind in FrameKind:
        print(f"frames.{kind}={stats.frames_ok[kind]}")
    print(f"decode_errors={stats.total_errors}")
    print(f"sequence_gaps={stats.sequence_gaps}")
    print(f"span_s={span_s:.3f}")
    print(f"sources={','.join(sorted(sources))}")
    print(f"truncated={'true' if contents.truncated else 'false'}")
    return 0


def build_configuration(args: argparse.Namespace) -> SensorConfiguration:
    """Assemble the request from the configure flags.

    Radar fields that were not given take their defaults (slot MID,
    ``Config`` distance and cycle time, powersave off).

    Raises:
        UsageError: If no parameter flag is given or a value is out of range
    """
    radar_flags = (args.max_distance, args.frequency_slot, args.cycle_time, args.powersave)
    if all(flag is None for flag in radar_flags) and not (
        args.mounting or args.vehicle or args.new_ip
    ):
        raise UsageError("at least one parameter flag is required")

    try:
        radar = None
        if any(flag is not None for flag in radar_flags):
            radar = RadarParameters(
                max_detection_distance=(
                    args.max_distance
                    if args.max_distance is not None
                    else Config.DEFAULT_MAX_DISTANCE_M
                ),
                frequency_slot=(
                    FrequencySlot(args.frequency_slot)
                    if args.frequency_slot is not None
                    else FrequencySlot.MID
                ),
                cycle_time_ms=args.cycle_time or Config.DEFAULT_CYCLE_TIME_MS,
                sensor_ipv4=IPv4Address(args.sensor_ip),
                powersave_standstill=args.powersave == "on",
            )
        mounting = None
        if args.mounting:
            longitudinal, lateral, vertical, yaw, pitch, plug = args.mounting
            if plug not in (0, 1):
                raise FieldRangeError("plug_orientation", plug)
            mounting = MountingPose(
                longitudinal, lateral, vertical, yaw, pitch, PlugOrientation(int(plug))
            )
        vehicle = VehicleDimensions(*args.vehicle) if args.vehicle else None
        return SensorConfiguration(
            mounting=mounting,
            vehicle=vehicle,
            radar=radar,
            new_sensor_ipv4=IPv4Address(args.new_ip) if args.new_ip else None,
        )
    except FieldRangeError as e:
        raise UsageError(f"invalid value: {e}") from e


def cmd_configure(args: argparse.Namespace) -> int:
    """Send a configuration request; exit 0 only when it is confirmed."""
    conf = build_configuration(args)
    cfg = _transport_config(
        args,
        sensor_address=args.sensor_ip,
        config_port=args.config_port,
        ack_timeout_s=args.timeout,
    )
    result = asyncio.run(send_configuration(cfg, conf))
    print(result.outcome)
    if result.status is not None:
        radar = result.status.radar
        print(
            f"max_distance={radar.max_detection_distance} "
            f"slot={int(radar.frequency_slot)} cycle_time_ms={radar.cycle_time_ms} "
            f"sensor_ip={radar.sensor_ipv4}"
        )
    return 0 if result.outcome == AckOutcome.CONFIRMED else 1


def cmd_simulate(args: argparse.Namespace) -> int:
    """Play a scenario towards the target until it ends or is interrupted."""
    try:
        scenario = load_scenario(args.scenario, seed=args.seed)
    except (ValidationError, yaml.YAMLError, ValueError) as e:
        print(f"Error: invalid scenario {args.scenario}: {e}", file=sys.stderr)
        return 1
    if args.duration is not None:
        scenario = replace(scenario, duration=args.duration)

    config_bind = None
    if not args.no_config:
        config_bind = Endpoint("0.0.0.0", args.config_port)  # nosec: B104

    async def simulate() -> int:
        simulator = SensorSimulator(
            scenario,
            args.target,
            config_bind=config_bind,
            time_scale=args.time_scale,
            ground_truth_path=args.ground_truth,
        )
        stop = asyncio.Event()
        _install_stop_handlers(stop)
        stopper = asyncio.create_task(stop.wait())
        stopper.add_done_callback(lambda _: simulator.stop())
        try:
            summary = await simulator.run()
        finally:
            stopper.cancel()
        print(f"cycles={summary.cycles}")
        print(f"detection_lists={summary.detection_lists}")
        print(f"object_lists={summary.object_lists}")
        print(f"statuses={summary.statuses}")
        print(f"configurations_applied={summary.configurations_applied}")
        print(f"configurations_rejected={summary.configurations_rejected}")
        if summary.error is not None:
            print(f"Error: {summary.error}", file=sys.stderr)
            return 1
        return 0

    return asyncio.run(simulate())
