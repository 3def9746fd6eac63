"""
Frame stream exporter used by ``listen --export`` and ``export``.
"""

import logging
from enum import StrEnum
from pathlib import Path

from ..errors import ExportError
from ..model import DetectionList, Frame, ObjectList
from .conversion import frame_to_cloud
from .writers import JsonlWriter, write_csv, write_pcd

logger = logging.getLogger(__name__)

JSONL_FILE_NAME = "frames.jsonl"


def unused_path(path: Path) -> Path:
    """Return ``path``, or the first ``<stem>_<n><suffix>`` not on disk."""
    candidate = path
    index = 0
    while candidate.exists():
        index += 1
        candidate = path.with_name(f"{path.stem}_{index}{path.suffix}")
    return candidate


class ExportFormat(StrEnum):
    CSV = "csv"
    PCD = "pcd"
    JSONL = "jsonl"


class FrameExporter:
    """Writes frames to ``out_dir``.

    CSV and PCD produce one file per DetectionList/ObjectList frame, named
    ``detections_<seq>.<ext>`` or ``objects_<seq>.<ext>`` with the sequence
    counter zero-padded to 10 digits; Status frames are skipped. JSONL
    appends every frame, Status included, to ``frames.jsonl``.

    Existing files are never overwritten: a name already on disk (an earlier
    export into the same directory, or a sequence counter that restarted)
    gets the first free ``_<n>`` suffix, e.g. ``objects_0000000005_1.csv``.
    """

    def __init__(self, out_dir: str | Path, fmt: ExportFormat | str) -> None:
        self.out_dir = Path(out_dir)
        self.format = ExportFormat(fmt)
        self.frames_written = 0
        self.files_written = 0
        try:
            self.out_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ExportError(str(self.out_dir), e) from e
        self._jsonl: JsonlWriter | None = None
        if self.format == ExportFormat.JSONL:
            self._jsonl = JsonlWriter(unused_path(self.out_dir / JSONL_FILE_NAME))
            self.files_written = 1

    def path_for(self, frame: Frame) -> Path | None:
        payload = frame.payload
        if isinstance(payload, DetectionList):
            prefix = "detections"
        elif isinstance(payload, ObjectList):
            prefix = "objects"
        else:
            return None
        name = f"{prefix}_{payload.sequence_counter:010d}.{self.format}"
        return unused_path(self.out_dir / name)

    def export(self, frame: Frame) -> Path | None:
        """Export one frame; returns the file written to, if any."""
        cloud = frame_to_cloud(frame)
        if self._jsonl is not None:
            self._jsonl.write(cloud)
            self.frames_written += 1
            return self._jsonl.path

        path = self.path_for(frame)
        if path is None:
            return None
        if self.format == ExportFormat.CSV:
            write_csv(cloud, path)
        else:
            write_pcd(cloud, path)
        self.frames_written += 1
        self.files_written += 1
        logger.debug(f"Exported {frame.kind} #{frame.sequence_counter} to {path}")
        return path

    def close(self) -> None:
        if self._jsonl is not None:
            self._jsonl.close()
        logger.info(f"Exported {self.frames_written} frames to {self.out_dir}")

    def __enter__(self) -> "FrameExporter":
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()
