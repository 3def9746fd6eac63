"""
Main entry point for the ars548 command line tool.

Exit codes: 0 success, 1 runtime error, 2 usage error.
"""

import argparse
import logging
import math
import sys
from collections.abc import Callable, Sequence
from ipaddress import IPv4Address
from pathlib import Path

from . import commands
from .cloud import ExportFormat
from .config.settings import MULTICAST_NETWORK, STAMP_POLICIES, Config
from .errors import Ars548Error, FilterExpressionError
from .filter import FramePipeline, parse_filter_expression
from .model import Endpoint
from .model.types import (
    MAX_CYCLE_TIME_MS,
    MAX_DETECTION_DISTANCE_M,
    MIN_CYCLE_TIME_MS,
    MIN_DETECTION_DISTANCE_M,
)
from .utils.logging import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUNTIME_ERROR = 1
EXIT_USAGE_ERROR = 2


# Argument types


def _int_in(name: str, low: int, high: int) -> Callable[[str], int]:
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer, got '{text}'") from None
        if not low <= value <= high:
            raise argparse.ArgumentTypeError(f"{name} must be in {low}..{high}, got {value}")
        return value

    return parse


port_type = _int_in("port", 1, 65535)
distance_type = _int_in("max distance", MIN_DETECTION_DISTANCE_M, MAX_DETECTION_DISTANCE_M)
slot_type = _int_in("frequency slot", 0, 2)
cycle_time_type = _int_in("cycle time", MIN_CYCLE_TIME_MS, MAX_CYCLE_TIME_MS)
seed_type = _int_in("seed", 0, 2**64 - 1)


def positive_float(text: str) -> float:
    """A number > 0; ``inf`` is accepted."""
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got '{text}'") from None
    if math.isnan(value) or value <= 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
    return value


def finite_positive_float(text: str) -> float:
    value = positive_float(text)
    if math.isinf(value):
        raise argparse.ArgumentTypeError(f"must be finite, got {text}")
    return value


def ipv4_type(text: str) -> str:
    try:
        return str(IPv4Address(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an IPv4 address: '{text}'") from None


def group_type(text: str) -> str:
    """Multicast group, or ``none``/empty for unicast reception."""
    if text.strip().lower() in ("", "none"):
        return ""
    address = ipv4_type(text)
    if IPv4Address(address) not in MULTICAST_NETWORK:
        raise argparse.ArgumentTypeError(f"{address} is not a multicast address")
    return address


def endpoint_type(text: str) -> Endpoint:
    host, sep, port = text.rpartition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected addr:port, got '{text}'")
    return Endpoint(ipv4_type(host), port_type(port))


def filter_type(text: str) -> FramePipeline:
    try:
        return parse_filter_expression(text)
    except FilterExpressionError as e:
        raise argparse.ArgumentTypeError(f"bad filter expression: {e}") from None


# Parser


def _add_network_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--port", type=port_type, default=Config.LISTEN_PORT, help="UDP data port"
    )
    parser.add_argument(
        "--group",
        type=group_type,
        default=Config.MULTICAST_GROUP,
        help="Multicast group to join ('none' for unicast)",
    )
    parser.add_argument(
        "--iface",
        type=ipv4_type,
        default=Config.INTERFACE_ADDRESS or None,
        help="Local interface address",
    )


def _add_stamp_argument(parser: argparse.ArgumentParser, default: str) -> None:
    parser.add_argument(
        "--stamp",
        choices=STAMP_POLICIES,
        default=default,
        help="keep the sensor stamps or replace them with the local receive time",
    )


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with all subcommands."""
    parser = argparse.ArgumentParser(
        prog="ars548",
        description="Driver, simulator and tools for the ARS 548 RDI radar",
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="Enable debug logging"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    # subcommand: listen
    listen = subparsers.add_parser("listen", help="Receive and decode sensor data")
    _add_network_arguments(listen)
    _add_stamp_argument(listen, Config.STAMP_POLICY)
    listen.add_argument("--filter", type=filter_type, help="e.g. 'min_speed_kmh=10&class=CAR'")
    listen.add_argument("--export", choices=[f.value for f in ExportFormat])
    listen.add_argument("--out", type=Path, default=Path("frames"), help="Export directory")
    listen.add_argument(
        "--stats-every", type=finite_positive_float, default=5.0, help="Seconds"
    )
    listen.add_argument("--duration", type=finite_positive_float, help="Stop after N s")
    listen.add_argument("--record", type=Path, help="Also record raw datagrams to a log")
    listen.add_argument("--api-port", type=port_type, help="Serve /api/stats on this port")
    listen.set_defaults(func=commands.cmd_listen)

    # subcommand: record
    record = subparsers.add_parser("record", help="Record raw datagrams to a log file")
    _add_network_arguments(record)
    record.add_argument("--out", type=Path, required=True, help="Log file")
    record.add_argument("--duration", type=finite_positive_float, help="Stop after N s")
    record.add_argument(
        "--stats-every", type=finite_positive_float, default=5.0, help="Seconds"
    )
    record.set_defaults(func=commands.cmd_record)

    # subcommand: replay
    replay = subparsers.add_parser("replay", help="Replay a log with original timing")
    replay.add_argument("--in", dest="input", type=Path, required=True, help="Log file")
    replay.add_argument(
        "--speed", type=positive_float, default=1.0, help="Speed factor ('inf' = max)"
    )
    replay.add_argument(
        "--target", type=endpoint_type, help="Send to addr:port instead of decoding"
    )
    _add_stamp_argument(replay, Config.STAMP_POLICY)
    replay.set_defaults(func=commands.cmd_replay)

    # subcommand: export
    export = subparsers.add_parser("export", help="Convert a log to point cloud files")
    export.add_argument("--in", dest="input", type=Path, required=True, help="Log file")
    export.add_argument(
        "--format", choices=[f.value for f in ExportFormat], required=True
    )
    export.add_argument("--out", type=Path, required=True, help="Export directory")
    export.add_argument("--filter", type=filter_type)
    _add_stamp_argument(export, "keep")
    export.set_defaults(func=commands.cmd_export)

    # subcommand: configure
    configure = subparsers.add_parser("configure", help="Change sensor parameters")
    configure.add_argument("--sensor-ip", type=ipv4_type, default=Config.SENSOR_ADDRESS)
    configure.add_argument("--config-port", type=port_type, default=Config.CONFIG_PORT)
    _add_network_arguments(configure)
    configure.add_argument("--max-distance", type=distance_type, help="Meters, 99..1500")
    configure.add_argument("--frequency-slot", type=slot_type, help="0 low, 1 mid, 2 high")
    configure.add_argument("--cycle-time", type=cycle_time_type, help="Milliseconds")
    configure.add_argument(
        "--powersave", choices=("on", "off"), help="Power saving at standstill"
    )
    configure.add_argument(
        "--mounting",
        nargs=6,
        type=float,
        metavar=("LONG", "LAT", "VERT", "YAW", "PITCH", "PLUG"),
        help="Mounting pose: meters, radians, plug orientation 0/1",
    )
    configure.add_argument(
        "--vehicle",
        nargs=4,
        type=float,
        metavar=("LENGTH", "WIDTH", "HEIGHT", "WHEELBASE"),
        help="Vehicle dimensions in meters",
    )
    configure.add_argument("--new-ip", type=ipv4_type, help="New sensor IPv4 address")
    configure.add_argument(
        "--timeout", type=finite_positive_float, default=Config.ACK_TIMEOUT_S
    )
    configure.set_defaults(func=commands.cmd_configure)

    # subcommand: simulate
    simulate = subparsers.add_parser("simulate", help="Emulate a sensor from a scenario")
    simulate.add_argument("--scenario", required=True, help="Scenario YAML file")
    simulate.add_argument(
        "--target",
        type=endpoint_type,
        default=f"{Config.MULTICAST_GROUP or '127.0.0.1'}:{Config.LISTEN_PORT}",
        help="Data destination addr:port",
    )
    simulate.add_argument("--seed", type=seed_type, help="Override the scenario seed")
    simulate.add_argument("--ground-truth", type=Path, help="Ground truth JSONL file")
    simulate.add_argument(
        "--time-scale", type=positive_float, default=1.0, help="Pacing factor ('inf' = max)"
    )
    simulate.add_argument("--duration", type=finite_positive_float, help="Override seconds")
    simulate.add_argument(
        "--config-port",
        type=port_type,
        default=Config.CONFIG_PORT,
        help="Port of the configuration listener",
    )
    simulate.add_argument(
        "--no-config", action="store_true", help="Do not listen for configuration"
    )
    simulate.set_defaults(func=commands.cmd_simulate)

    # subcommand: info
    info = subparsers.add_parser("info", help="Summarize a log file")
    info.add_argument("--in", dest="input", type=Path, required=True, help="Log file")
    info.set_defaults(func=commands.cmd_info)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv`` and run the subcommand; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on bad usage and 0 after --help
        return e.code if isinstance(e.code, int) else EXIT_USAGE_ERROR

    # Setup logging
    setup_logging("debug" if args.verbose else None)

    # Validate configuration
    if not Config.validate_config():
        print("Error: Configuration validation failed", file=sys.stderr)
        return EXIT_RUNTIME_ERROR

    try:
        return int(args.func(args))
    except commands.UsageError as e:
        print(f"{parser.prog} {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE_ERROR
    except KeyboardInterrupt:
        print("Cancelled", file=sys.stderr)
        return EXIT_RUNTIME_ERROR
    except (Ars548Error, OSError) as e:
        logger.debug("Command failed", exc_info=True)
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_RUNTIME_ERROR


def main() -> None:
    """Main entry point for the ars548 command."""
    sys.exit(run())


if __name__ == "__main__":
    main()
