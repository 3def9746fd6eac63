"""
Cloud module - point clouds, pose sets and interchange file formats.
"""

from .conversion import (
    DEFAULT_FRAME_LABEL,
    PointCloud,
    Pose,
    PoseSet,
    RadarPoint,
    detections_to_cloud,
    frame_to_cloud,
    objects_to_cloud,
    objects_to_poses,
    spherical_to_cartesian,
    spherical_to_cartesian_array,
)
from .exporter import JSONL_FILE_NAME, ExportFormat, FrameExporter, unused_path
from .writers import (
    CSV_HEADER,
    JsonlWriter,
    cloud_to_dict,
    format_number,
    pcd_header,
    write_csv,
    write_jsonl,
    write_pcd,
)

__all__ = [
    "CSV_HEADER",
    "DEFAULT_FRAME_LABEL",
    "JSONL_FILE_NAME",
    "ExportFormat",
    "FrameExporter",
    "JsonlWriter",
    "PointCloud",
    "Pose",
    "PoseSet",
    "RadarPoint",
    "cloud_to_dict",
    "detections_to_cloud",
    "format_number",
    "frame_to_cloud",
    "objects_to_cloud",
    "objects_to_poses",
    "pcd_header",
    "spherical_to_cartesian",
    "spherical_to_cartesian_array",
    "unused_path",
    "write_csv",
    "write_jsonl",
    "write_pcd",
]
