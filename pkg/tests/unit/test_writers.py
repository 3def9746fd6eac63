"""
Tests for CSV/PCD/JSONL writers and the frame exporter.
"""

import csv
import io
import json

import pytest

from ars548_toolkit.cloud import (
    CSV_HEADER,
    JSONL_FILE_NAME,
    ExportFormat,
    FrameExporter,
    PointCloud,
    RadarPoint,
    cloud_to_dict,
    format_number,
    pcd_header,
    unused_path,
    write_csv,
    write_jsonl,
    write_pcd,
)
from ars548_toolkit.errors import ExportError
from ars548_toolkit.model import Endpoint, Frame, FrameKind, RecvTime
from tests.builders import (
    make_detection,
    make_detection_list,
    make_object,
    make_object_list,
    make_status,
    make_timestamp,
)


@pytest.fixture
def cloud():
    """Three points with awkward decimals."""
    return PointCloud(
        stamp=make_timestamp(1_700_000_000, 5),
        points=(
            RadarPoint(1.23456789, -2.5, 0.0, -5.0, 12.0, 0),
            RadarPoint(100.0, 0.001234567, 1e-7, 0.25, -3.0, 1),
            RadarPoint(-0.5, 1234567.0, 3.0, 0.0, 0.0, 65535),
        ),
        sequence_counter=8,
    )


def frame_of(payload):
    return Frame(payload, RecvTime(0, 0), Endpoint("127.0.0.1", 1))


class TestFormatting:
    """Test number formatting."""

    @pytest.mark.parametrize(
        ("value", "text"),
        [(1.23456789, "1.23457"), (-2.5, "-2.5"), (0.0, "0"), (1234567.0, "1.23457e+06"), (1e-7, "1e-07")],
    )
    def test_six_significant_digits(self, value, text):
        """Test values are written with 6 significant digits."""
        assert format_number(value) == text


class TestCsv:
    """Test the CSV writer."""

    def test_empty_cloud(self):
        """Test an empty cloud yields only the header line."""
        out = io.StringIO()
        write_csv(PointCloud(make_timestamp()), out)
        assert out.getvalue() == "x,y,z,doppler,intensity,source_id\n"

    def test_parse_back(self, cloud):
        """Test re-reading the CSV reproduces the points to 6 significant digits."""
        out = io.StringIO()
        write_csv(cloud, out)
        rows = list(csv.DictReader(io.StringIO(out.getvalue())))
        assert list(rows[0]) == CSV_HEADER.split(",")
        assert len(rows) == 3
        for row, point in zip(rows, cloud.points, strict=True):
            assert float(row["x"]) == pytest.approx(point.x, rel=1e-5)
            assert float(row["y"]) == pytest.approx(point.y, rel=1e-5)
            assert float(row["doppler"]) == pytest.approx(point.doppler, rel=1e-5)
            assert int(row["source_id"]) == point.source_id

    def test_deterministic_files(self, cloud, tmp_path):
        """Test identical clouds give byte-identical files."""
        write_csv(cloud, tmp_path / "a.csv")
        write_csv(cloud, tmp_path / "b.csv")
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()

    def test_unwritable_path(self, cloud, tmp_path):
        """Test I/O failures carry the path."""
        target = tmp_path / "missing" / "cloud.csv"
        with pytest.raises(ExportError) as exc_info:
            write_csv(cloud, target)
        assert exc_info.value.path == str(target)


class TestPcd:
    """Test the ASCII PCD writer."""

    def test_header(self):
        """Test the fixed header lines."""
        header = pcd_header(3).splitlines()
        assert header[1:] == [
            "VERSION 0.7",
            "FIELDS x y z doppler intensity",
            "SIZE 4 4 4 4 4",
            "TYPE F F F F F",
            "COUNT 1 1 1 1 1",
            "WIDTH 3",
            "HEIGHT 1",
            "VIEWPOINT 0 0 0 1 0 0 0",
            "POINTS 3",
            "DATA ascii",
        ]

    def test_points_match_rows(self, cloud):
        """Test the POINTS value equals the number of data rows."""
        out = io.StringIO()
        write_pcd(cloud, out)
        lines = out.getvalue().splitlines()
        data_start = lines.index("DATA ascii") + 1
        assert len(lines[data_start:]) == 3
        assert "POINTS 3" in lines
        assert lines[data_start] == "1.23457 -2.5 0 -5 12"

    def test_empty_cloud(self):
        """Test an empty cloud has no data rows."""
        out = io.StringIO()
        write_pcd(PointCloud(make_timestamp()), out)
        assert out.getvalue().endswith("POINTS 0\nDATA ascii\n")


class TestJsonl:
    """Test the JSON Lines writer."""

    def test_cloud_to_dict(self, cloud):
        """Test the JSON view carries kind, stamp and rounded points."""
        data = cloud_to_dict(cloud)
        assert data["kind"] == "detections"
        assert data["sequence_counter"] == 8
        assert data["stamp"] == {"seconds": 1_700_000_000, "nanoseconds": 5, "sync_status": 1}
        assert data["points"][0]["x"] == 1.23457
        assert data["points"][2]["source_id"] == 65535

    def test_one_line_per_cloud(self, cloud, tmp_path):
        """Test each cloud becomes one parseable line."""
        path = tmp_path / "frames.jsonl"
        count = write_jsonl([cloud, PointCloud(make_timestamp())], path)
        lines = path.read_text().splitlines()
        assert count == 2
        assert len(lines) == 2
        assert len(json.loads(lines[0])["points"]) == 3
        assert json.loads(lines[1])["points"] == []


class TestFrameExporter:
    """Test exporting frame streams."""

    def test_csv_file_per_frame(self, tmp_path):
        """Test CSV writes one file per list frame, named by sequence counter."""
        with FrameExporter(tmp_path, "csv") as exporter:
            exporter.export(frame_of(make_detection_list(make_detection(), sequence_counter=5)))
            exporter.export(frame_of(make_object_list(make_object(), sequence_counter=5)))
            assert exporter.export(frame_of(make_status())) is None
        assert sorted(p.name for p in tmp_path.iterdir()) == [
            "detections_0000000005.csv",
            "objects_0000000005.csv",
        ]
        assert exporter.frames_written == 2
        assert exporter.files_written == 2

    def test_pcd_format(self, tmp_path):
        """Test the PCD extension and content."""
        with FrameExporter(tmp_path, ExportFormat.PCD) as exporter:
            path = exporter.export(frame_of(make_object_list(make_object(), sequence_counter=1)))
        assert path == tmp_path / "objects_0000000001.pcd"
        assert "POINTS 1" in path.read_text()

    def test_jsonl_includes_status(self, tmp_path):
        """Test JSONL appends every frame, Status included, to one file."""
        with FrameExporter(tmp_path / "out", "jsonl") as exporter:
            exporter.export(frame_of(make_detection_list(make_detection())))
            exporter.export(frame_of(make_status()))
            exporter.export(frame_of(make_object_list()))
        lines = (tmp_path / "out" / JSONL_FILE_NAME).read_text().splitlines()
        assert [json.loads(line)["kind"] for line in lines] == [
            FrameKind.DETECTION_LIST,
            FrameKind.STATUS,
            FrameKind.OBJECT_LIST,
        ]
        assert exporter.frames_written == 3
        assert exporter.files_written == 1

    def test_restarted_sequence_not_overwritten(self, tmp_path):
        """Test a repeated sequence counter gets a suffixed file name."""
        with FrameExporter(tmp_path, "csv") as exporter:
            first = exporter.export(frame_of(make_object_list(make_object(), sequence_counter=5)))
            second = exporter.export(
                frame_of(make_object_list(make_object(), make_object(id=2), sequence_counter=5))
            )
        assert first == tmp_path / "objects_0000000005.csv"
        assert second == tmp_path / "objects_0000000005_1.csv"
        assert len(first.read_text().splitlines()) == 2
        assert len(second.read_text().splitlines()) == 3

    def test_second_export_keeps_first(self, tmp_path):
        """Test exporting twice into one directory keeps both runs."""
        for _ in range(2):
            with FrameExporter(tmp_path, "jsonl") as exporter:
                exporter.export(frame_of(make_status()))
        assert sorted(p.name for p in tmp_path.iterdir()) == ["frames.jsonl", "frames_1.jsonl"]

    def test_unused_path(self, tmp_path):
        """Test suffixes count up past every taken name."""
        (tmp_path / "a.csv").write_text("")
        (tmp_path / "a_1.csv").write_text("")
        assert unused_path(tmp_path / "a.csv") == tmp_path / "a_2.csv"
        assert unused_path(tmp_path / "b.csv") == tmp_path / "b.csv"

    def test_unknown_format(self, tmp_path):
        """Test unknown formats are rejected."""
        with pytest.raises(ValueError):
            FrameExporter(tmp_path, "ply")

    def test_out_dir_is_a_file(self, tmp_path):
        """Test an unusable output directory raises ExportError."""
        blocker = tmp_path / "blocker"
        blocker.write_text("")
        with pytest.raises(ExportError):
            FrameExporter(blocker, "csv")
