"""Exit codes and artifacts of the command-line tool."""

import json
import os
import pathlib
import subprocess

import pytest

CLI = os.environ.get("POTKIT_CLI", "potkit")
SCENES = pathlib.Path(__file__).resolve().parents[2] / "scenes"


def run(*args, env=None):
    full = dict(os.environ)
    full.pop("POTKIT_SEED", None)
    full.update(env or {})
    return subprocess.run([CLI, *args], capture_output=True, text=True, env=full, timeout=300)


def test_success_writes_report(tmp_path):
    out = tmp_path / "wolff"
    res = run("--scene", str(SCENES / "wolff-atom.json"), "--out", str(out), "wolff")
    assert res.returncode == 0, res.stderr
    report = json.loads((out / "report.json").read_text())
    assert set(report["tasks"]) == {"wolff-atom", "wolff-atom-critical"}
    assert not any(p.name.startswith(".staging") for p in out.iterdir())


def test_runs_are_reproducible(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert run("--scene", str(SCENES / "cones.json"), "--out", str(d), "cones", "include").returncode == 0
    for f in a.iterdir():
        assert f.read_bytes() == (b / f.name).read_bytes()


def test_failed_check_exits_two(tmp_path):
    res = run("--scene", str(SCENES / "cones-bad-range.json"), "--out", str(tmp_path / "o"), "cones", "include")
    assert res.returncode == 2


@pytest.mark.parametrize(
    "content",
    ["{", '{"dimension": 3}', '{"dimension": 3, "tasks": [{"type": "wolff", "name": "w", "measure": "none"}]}'],
)
def test_bad_scene_exits_one_without_output(tmp_path, content):
    scene = tmp_path / "bad.json"
    scene.write_text(content)
    out = tmp_path / "o"
    res = run("--scene", str(scene), "--out", str(out), "wolff")
    assert res.returncode == 1
    assert "schema" in res.stderr
    assert not out.exists()


def test_missing_subcommand_exits_one():
    assert run().returncode == 1
