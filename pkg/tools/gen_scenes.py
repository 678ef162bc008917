"""Regenerate the scenes/ corpus in canonical form.

Each document is built as a plain dict, pushed through the strict parser
and re-serialised, so the files on disk are exactly the canonical text the
round-trip tests expect.  The bad_* documents are intentionally invalid
and are written verbatim.
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from pblab import parse_scene, scene_to_json   # noqa: E402

ROOT = Path(__file__).resolve().parents[1] / "scenes"

GOOD = {
    "triangle_right_spherical.json": {
        "schema": 1,
        "numeric_mode": "exact",
        "table": {
            "family": "right_spherical",
            "vertices": [["0", "0"], ["1", "0"], ["0", "1"]],
        },
        "chord": {"t0": "1/2", "t1": "1/2"},
        "run": {"period": 3},
    },
    "square_central.json": {
        "schema": 1,
        "numeric_mode": "exact",
        "table": {
            "family": "centrally_projective",
            "origin": ["0", "0"],
            "vertices": [["-1", "-1"], ["-1", "1"], ["1", "1"], ["1", "-1"]],
        },
        "chord": {"t0": "1/2", "t1": "1/2"},
        "run": {"period": 4},
    },
    "triangle_central.json": {
        "schema": 1,
        "numeric_mode": "exact",
        "table": {
            "family": "centrally_projective",
            "origin": ["1/10", "1/7"],
            "vertices": [["0", "0"], ["1", "0"], ["0", "1"]],
        },
        "chord": {"t0": "1/3", "t1": "2/5"},
        "run": {"period": 6},
    },
    "pentagon_central.json": {
        "schema": 1,
        "numeric_mode": "exact",
        "table": {
            "family": "centrally_projective",
            "origin": ["1/10", "1/7"],
            "vertices": [["-2", "0"], ["-1", "2"], ["1", "2"], ["2", "0"], ["0", "-2"]],
        },
        "chord": {"t0": "1/3", "t1": "2/5"},
        "run": {"period": 10},
    },
    "square_regular_exact.json": {
        "schema": 1,
        "numeric_mode": "exact",
        "table": {"family": "regular_polygon", "n": 4, "radius": "1"},
        "chord": {"t0": "1/3", "t1": "2/7"},
        "run": {"period": 4, "grid": 20},
    },
    "hexagon_regular_exact.json": {
        "schema": 1,
        "numeric_mode": "exact",
        "table": {"family": "regular_polygon", "n": 6, "radius": "1"},
        "chord": {"t0": "1/3", "t1": "2/7"},
        "run": {"period": 6, "grid": 20},
    },
    "octagon_regular_float.json": {
        "schema": 1,
        "numeric_mode": "float",
        "table": {"family": "regular_polygon", "n": 8, "radius": 1.0},
        "chord": {"t0": 0.3, "t1": 0.45},
        "run": {"period": 8, "grid": 20},
    },
    "decagon_regular_float.json": {
        "schema": 1,
        "numeric_mode": "float",
        "table": {"family": "regular_polygon", "n": 10, "radius": 1.0},
        "chord": {"t0": 0.3, "t1": 0.45},
        "run": {"period": 10, "grid": 20},
    },
    "mirrors_exact.json": {
        "schema": 1,
        "numeric_mode": "exact",
        "table": {"family": "converging_mirrors", "gap": "1", "offset": "0"},
        "chord": {"t0": "1/3", "t1": "2/7"},
        "run": {"period": 4, "grid": 20},
    },
    "custom_mixed.json": {
        "schema": 1,
        "numeric_mode": "exact",
        "table": {
            "family": "custom",
            "vertices": [["0", "0"], ["4", "0"], ["0", "4"]],
            "fields": [
                {"type": "apex", "point": ["0", "4"]},
                {"type": "central", "point": ["1", "1"]},
                {"type": "apex", "point": ["4", "0"]},
            ],
        },
        "chord": {"t0": "1/2", "t1": "1/3"},
    },
}

BAD = {
    "bad_origin_on_edge.json": {
        "schema": 1,
        "numeric_mode": "exact",
        "table": {
            "family": "centrally_projective",
            "origin": ["-1", "0"],
            "vertices": [["-1", "-1"], ["-1", "1"], ["1", "1"], ["1", "-1"]],
        },
    },
    "bad_collinear_triangle.json": {
        "schema": 1,
        "numeric_mode": "exact",
        "table": {
            "family": "right_spherical",
            "vertices": [["0", "0"], ["1", "1"], ["2", "2"]],
        },
    },
    "bad_schema_float_in_exact.json": {
        "schema": 1,
        "numeric_mode": "exact",
        "table": {
            "family": "right_spherical",
            "vertices": [[0.5, "0"], ["1", "0"], ["0", "1"]],
        },
    },
    "bad_schema_unknown_field.json": {
        "schema": 1,
        "numeric_mode": "exact",
        "comment": "top-level keys are closed",
        "table": {
            "family": "right_spherical",
            "vertices": [["0", "0"], ["1", "0"], ["0", "1"]],
        },
    },
}


def main():
    ROOT.mkdir(exist_ok=True)
    for name, doc in GOOD.items():
        scene = parse_scene(doc)
        text = scene_to_json(scene)
        assert scene_to_json(parse_scene(text)) == text, name
        (ROOT / name).write_text(text, encoding="utf-8")
        print(f"wrote {name}")
    for name, doc in BAD.items():
        (ROOT / name).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
        print(f"wrote {name}")


if __name__ == "__main__":
    main()
