"""
CSV, ASCII PCD and JSONL writers.

Numbers are written with 6 significant digits, points in input order, so
identical clouds give byte-identical files.
"""

import json
from collections.abc import Iterable, Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Any, TextIO

from ..errors import ExportError
from .conversion import PointCloud

CSV_HEADER = "x,y,z,doppler,intensity,source_id"
PCD_FIELDS = ("x", "y", "z", "doppler", "intensity")

Destination = str | Path | TextIO


def format_number(value: float) -> str:
    return f"{value:.6g}"


def _round(value: float) -> float:
    return float(format_number(value))


@contextmanager
def _open(destination: Destination, mode: str = "w") -> Iterator[TextIO]:
    if isinstance(destination, (str, Path)):
        path = Path(destination)
        try:
            with open(path, mode, encoding="utf-8", newline="\n") as f:
                yield f
        except OSError as e:
            raise ExportError(str(path), e) from e
    else:
        yield destination


def write_csv(cloud: PointCloud, destination: Destination) -> None:
    """Write ``x,y,z,doppler,intensity,source_id`` rows under a header line."""
    with _open(destination) as f:
        f.write(CSV_HEADER + "\n")
        for p in cloud.points:
            f.write(
                ",".join(
                    format_number(v) for v in (p.x, p.y, p.z, p.doppler, p.intensity)
                )
                + f",{p.source_id}\n"
            )


def pcd_header(point_count: int) -> str:
    fields = len(PCD_FIELDS)
    return (
        "# .PCD v0.7 - Point Cloud Data file format\n"
        "VERSION 0.7\n"
        f"FIELDS {' '.join(PCD_FIELDS)}\n"
        f"SIZE {' '.join(['4'] * fields)}\n"
        f"TYPE {' '.join(['F'] * fields)}\n"
        f"COUNT {' '.join(['1'] * fields)}\n"
        f"WIDTH {point_count}\n"
        "HEIGHT 1\n"
        "VIEWPOINT 0 0 0 1 0 0 0\n"
        f"POINTS {point_count}\n"
        "DATA ascii\n"
    )


def write_pcd(cloud: PointCloud, destination: Destination) -> None:
    """Write one cloud as an ASCII PCD 0.7 file."""
    with _open(destination) as f:
        f.write(pcd_header(len(cloud.points)))
        for p in cloud.points:
            f.write(
                " ".join(
                    format_number(v) for v in (p.x, p.y, p.z, p.doppler, p.intensity)
                )
                + "\n"
            )


def cloud_to_dict(cloud: PointCloud) -> dict[str, Any]:
    """JSON-ready view of a cloud with numbers rounded to 6 significant digits."""
    return {
        "kind": str(cloud.kind),
        "frame_label": cloud.frame_label,
        "sequence_counter": cloud.sequence_counter,
        "stamp": {
            "seconds": cloud.stamp.seconds,
            "nanoseconds": cloud.stamp.nanoseconds,
            "sync_status": int(cloud.stamp.sync_status),
        },
        "points": [
            {
                "x": _round(p.x),
                "y": _round(p.y),
                "z": _round(p.z),
                "doppler": _round(p.doppler),
                "intensity": _round(p.intensity),
                "source_id": p.source_id,
            }
            for p in cloud.points
        ],
    }


class JsonlWriter:
    """Streams clouds to a JSON Lines file, one frame per line."""

    def __init__(self, destination: str | Path) -> None:
        self.path = Path(destination)
        self.lines_written = 0
        try:
            self._file: TextIO = open(self.path, "w", encoding="utf-8", newline="\n")
        except OSError as e:
            raise ExportError(str(self.path), e) from e

    def write(self, cloud: PointCloud) -> None:
        try:
            self._file.write(json.dumps(cloud_to_dict(cloud), separators=(",", ":")) + "\n")
        except OSError as e:
            raise ExportError(str(self.path), e) from e
        self.lines_written += 1

    def close(self) -> None:
        self._file.close()

    def __enter__(self) -> "JsonlWriter":
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()


def write_jsonl(clouds: Iterable[PointCloud], destination: str | Path) -> int:
    """Write every cloud as one JSON line; returns the number of lines."""
    with JsonlWriter(destination) as writer:
        for cloud in clouds:
            writer.write(cloud)
        return writer.lines_written
