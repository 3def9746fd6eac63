"""
Recorder module - datagram logs and timed replay.
"""

from .logfile import (
    FILE_HEADER,
    LOG_MAGIC,
    LOG_VERSION,
    RECORD_HEADER,
    LogContents,
    LogReader,
    LogRecord,
    LogWriter,
    read_log,
    record,
)
from .replay import ReplaySummary, check_speed, replay

__all__ = [
    "FILE_HEADER",
    "LOG_MAGIC",
    "LOG_VERSION",
    "RECORD_HEADER",
    "LogContents",
    "LogReader",
    "LogRecord",
    "LogWriter",
    "ReplaySummary",
    "check_speed",
    "read_log",
    "record",
    "replay",
]
