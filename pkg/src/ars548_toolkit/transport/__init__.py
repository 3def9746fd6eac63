"""
Transport module - UDP reception and configuration transmission.
"""

from .config import TransportConfig
from .receiver import FrameSink, RadarReceiver, RawSink, open_data_socket, run_receiver
from .sender import AckOutcome, AckResult, send_configuration, status_matches
from .stats import DriverStats

__all__ = [
    "AckOutcome",
    "AckResult",
    "DriverStats",
    "FrameSink",
    "RadarReceiver",
    "RawSink",
    "TransportConfig",
    "open_data_socket",
    "run_receiver",
    "send_configuration",
    "status_matches",
]
