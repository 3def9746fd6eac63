"""
Driver counters.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field

from ..errors import WireErrorKind
from ..model import Frame, FrameKind

logger = logging.getLogger(__name__)

SEQUENCE_MODULUS = 1 << 32


@dataclass
class DriverStats:
    """Monotone counters of one receive loop.

    ``sequence_gaps`` counts gap events: a delivered list frame whose
    sequence counter is not the previous one of its kind plus one (mod 2^32).
    """

    frames_ok: Counter[FrameKind] = field(default_factory=Counter)
    frames_error: Counter[WireErrorKind] = field(default_factory=Counter)
    last_sequence: dict[FrameKind, int] = field(default_factory=dict)
    sequence_gaps: int = 0
    bytes_received: int = 0

    @property
    def datagrams(self) -> int:
        return self.total_ok + self.total_errors

    @property
    def total_ok(self) -> int:
        return sum(self.frames_ok.values())

    @property
    def total_errors(self) -> int:
        return sum(self.frames_error.values())

    def record_bytes(self, count: int) -> None:
        self.bytes_received += count

    def record_error(self, kind: WireErrorKind) -> None:
        self.frames_error[kind] += 1

    def record_frame(self, frame: Frame) -> bool:
        """Count a delivered frame; returns True when it follows a gap."""
        kind = frame.kind
        self.frames_ok[kind] += 1
        sequence = frame.sequence_counter
        if sequence is None:
            return False
        previous = self.last_sequence.get(kind)
        self.last_sequence[kind] = sequence
        if previous is None or sequence == (previous + 1) % SEQUENCE_MODULUS:
            return False
        self.sequence_gaps += 1
        logger.info(f"Sequence gap on {kind}: {previous} -> {sequence}")
        return True

    def to_text(self) -> str:
        """Line-oriented ``key=value`` dump covering every kind and error."""
        lines = [f"frames_ok.{kind}={self.frames_ok[kind]}" for kind in FrameKind]
        lines += [
            f"frames_error.{kind}={self.frames_error[kind]}" for kind in WireErrorKind
        ]
        lines += [
            f"last_sequence.{kind}={self.last_sequence[kind]}"
            for kind in FrameKind
            if kind in self.last_sequence
        ]
        lines.append(f"sequence_gaps={self.sequence_gaps}")
        lines.append(f"bytes_received={self.bytes_received}")
        return "\n".join(lines) + "\n"

    def summary_line(self) -> str:
        """One-line per-kind counters for periodic CLI output."""
        counts = " ".join(f"{kind}={self.frames_ok[kind]}" for kind in FrameKind)
        return f"{counts} errors={self.total_errors} gaps={self.sequence_gaps}"
