"""CLI contract tests: flags, exit codes, byte-stable JSON."""

import json

import numpy as np
import pytest

from objdetect.cli import run_cli
from objdetect.imgcore import ImageKind, RasterImage, load_image, save_image
from tests.conftest import render_disk, rgb_from_gray, textured_patch


@pytest.fixture
def disk_ppm(tmp_path):
    path = tmp_path / "disk.ppm"
    save_image(render_disk(100, 100, 50, 50, 20), path)
    return path


class TestColorCommand:
    def test_green_swatch_reports_one_region(self, green_swatch_ppm, tmp_path):
        out = tmp_path / "a.ppm"
        js = tmp_path / "r.json"
        code = run_cli(
            [
                "color",
                "--image", str(green_swatch_ppm),
                "--colors", "Green",
                "--sigma", "1.0",
                "--out", str(out),
                "--json", str(js),
            ]
        )
        assert code == 0
        doc = json.loads(js.read_text())
        assert doc["schema_version"] == 1 and doc["pipeline"] == "color"
        (entry,) = [c for c in doc["colors"] if c["name"] == "Green"]
        assert len(entry["regions"]) == 1
        annotated = load_image(out)
        assert annotated.width == 100

    def test_case_insensitive_color_canonical_output(self, green_swatch_ppm, tmp_path):
        js = tmp_path / "r.json"
        assert run_cli(
            ["color", "--image", str(green_swatch_ppm), "--colors", "gReEn", "--json", str(js)]
        ) == 0
        doc = json.loads(js.read_text())
        assert doc["colors"][0]["name"] == "Green"

    def test_unknown_color_exit_3(self, green_swatch_ppm, tmp_path, capsys):
        code = run_cli(
            ["color", "--image", str(green_swatch_ppm), "--colors", "Chartreuse",
             "--json", str(tmp_path / "r.json")]
        )
        assert code == 3
        assert "Chartreuse" in capsys.readouterr().err

    def test_missing_file_exit_3(self, tmp_path, capsys):
        code = run_cli(
            ["color", "--image", str(tmp_path / "none.ppm"), "--colors", "Green",
             "--json", str(tmp_path / "r.json")]
        )
        assert code == 3
        assert "none.ppm" in capsys.readouterr().err

    def test_table_env_fallback(self, green_swatch_ppm, tmp_path, monkeypatch):
        table = tmp_path / "table.json"
        table.write_text(
            json.dumps(
                [{"name": "Everything", "min": [0, 0, 0], "max": [255, 255, 255],
                  "highlight": [255, 0, 255]}]
            )
        )
        monkeypatch.setenv("OBJDETECT_TABLE", str(table))
        js = tmp_path / "r.json"
        assert run_cli(
            ["color", "--image", str(green_swatch_ppm), "--colors", "Everything",
             "--json", str(js)]
        ) == 0
        doc = json.loads(js.read_text())
        assert doc["colors"][0]["name"] == "Everything"


class TestShapeCommand:
    def test_circle_detection(self, disk_ppm, tmp_path):
        js = tmp_path / "r.json"
        assert run_cli(
            ["shape", "--image", str(disk_ppm), "--shapes", "Circle", "--json", str(js)]
        ) == 0
        doc = json.loads(js.read_text())
        (det,) = doc["detections"]
        assert det["type"] == "circle"
        assert abs(det["cx"] - 50) <= 2 and abs(det["r"] - 20) <= 2

    def test_missing_outputs_usage_error(self, disk_ppm):
        with pytest.raises(SystemExit) as exc:
            run_cli(["shape", "--image", str(disk_ppm), "--shapes", "Circle,Square"])
        assert exc.value.code == 2

    def test_unknown_shape_exit_3(self, disk_ppm, tmp_path):
        code = run_cli(
            ["shape", "--image", str(disk_ppm), "--shapes", "Blob", "--json", str(tmp_path / "r.json")]
        )
        assert code == 3

    def test_unknown_flag_usage_error(self, disk_ppm, tmp_path):
        with pytest.raises(SystemExit) as exc:
            run_cli(
                ["shape", "--image", str(disk_ppm), "--shapes", "Circle",
                 "--json", str(tmp_path / "r.json"), "--bogus", "1"]
            )
        assert exc.value.code == 2


class TestMatchCommand:
    @pytest.fixture
    def images(self, tmp_path):
        obj = rgb_from_gray(textured_patch(80, 80, seed=10, block=8))
        scene = rgb_from_gray(textured_patch(200, 200, seed=99, block=1))
        op, sp = tmp_path / "obj.ppm", tmp_path / "noise.ppm"
        save_image(obj, op)
        save_image(scene, sp)
        return op, sp

    def test_self_match_exit_0(self, images, tmp_path):
        op, _ = images
        js = tmp_path / "r.json"
        code = run_cli(["match", "--object", str(op), "--scene", str(op), "--json", str(js)])
        assert code == 0
        doc = json.loads(js.read_text())
        assert doc["found"] is True
        assert len(doc["polygon"]) == 4

    def test_noise_scene_exit_4_with_reason(self, images, tmp_path):
        op, sp = images
        js = tmp_path / "r.json"
        code = run_cli(["match", "--object", str(op), "--scene", str(sp), "--json", str(js)])
        assert code == 4
        doc = json.loads(js.read_text())
        assert doc["found"] is False
        assert doc["reason"]

    def test_byte_identical_across_runs(self, images, tmp_path):
        op, sp = images
        j1, j2 = tmp_path / "r1.json", tmp_path / "r2.json"
        run_cli(["match", "--object", str(op), "--scene", str(sp), "--seed", "3", "--json", str(j1)])
        run_cli(["match", "--object", str(op), "--scene", str(sp), "--seed", "3", "--json", str(j2)])
        assert j1.read_bytes() == j2.read_bytes()
