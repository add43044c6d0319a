"""The published scene schema accepts every bundled scene and rejects malformed ones."""

import json
import pathlib

import jsonschema
import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]
SCHEMA = json.loads((ROOT / "docs" / "scene-schema.json").read_text())


@pytest.mark.parametrize("path", sorted((ROOT / "scenes").glob("*.json")), ids=lambda p: p.stem)
def test_bundled_scenes_validate(path):
    jsonschema.validate(json.loads(path.read_text()), SCHEMA)


@pytest.mark.parametrize(
    "scene",
    [
        {"tasks": []},
        {"dimension": 1, "tasks": [{"type": "wolff", "name": "w"}]},
        {"dimension": 3, "tasks": [{"type": "wolff", "name": "w", "p": 2, "x0": [0, 0, 0]}]},
        {"dimension": 3, "tasks": [{"type": "cones", "name": "c", "verb": "sample"}]},
        {"dimension": 3, "measures": {"m": {"atoms": [{"at": [0, 0, 0], "mass": -1}]}}, "tasks": [{"type": "density", "name": "d", "ladder": {"r0": 1, "q": 0.5, "count": 4}}]},
    ],
)
def test_malformed_scenes_rejected(scene):
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(scene, SCHEMA)
