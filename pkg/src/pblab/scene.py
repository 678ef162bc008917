"""Scene documents: the JSON exchange format of the CLI, service and UI.

A scene pins a numeric mode, a table, an optional starting chord and
optional default run parameters.  Exact scenes carry every scalar as an
integer or a string ("p/q", or "a+b*sqrt(3)" over rationals a, b); float
scenes carry plain JSON numbers.  Parsing is strict: unknown keys,
mis-typed fields and mode violations raise SchemaError with the offending
path, while well-formed documents that violate a geometric requirement
raise ValidationError.  Serialisation is canonical, so parse followed by
serialise is a fixed point on any already-canonical document.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from .dynamics import ChordParam
from .errors import SchemaError, TableError, ValidationError
from .projective import ProjPoint
from .scalars import Scalar, Sqrt3, is_exact_scalar, scalar_sign
from .tables import (
    ApexField,
    CentralField,
    Table,
    centrally_projective,
    converging_mirrors,
    custom_table,
    regular_polygon_vertices,
    right_spherical,
)

SCHEMA_VERSION = 1

_RAT = r"-?\d+(?:/[1-9]\d*)?"
_PLAIN_RE = re.compile(rf"^{_RAT}$")
_ROOT_ONLY_RE = re.compile(rf"^({_RAT})\*sqrt\(3\)$")
_MIXED_RE = re.compile(rf"^({_RAT})([+-]\d+(?:/[1-9]\d*)?)\*sqrt\(3\)$")

_FAMILIES = (
    "right_spherical",
    "centrally_projective",
    "regular_polygon",
    "converging_mirrors",
    "custom",
)


@dataclass
class RunSpec:
    """Default run parameters a scene may carry; all optional."""

    steps: Optional[int] = None
    period: Optional[int] = None
    grid: Optional[int] = None


@dataclass
class Scene:
    numeric_mode: str
    family: str
    table_fields: dict
    table: Table
    chord: Optional[ChordParam]
    run: RunSpec

    @property
    def is_exact(self) -> bool:
        return self.numeric_mode == "exact"


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------

def parse_scalar(value, mode: str, path: str) -> Scalar:
    """One JSON scalar under the scene's numeric mode."""
    if isinstance(value, bool):
        raise SchemaError(path, "expected a scalar, got a boolean")
    if mode == "float":
        if isinstance(value, (int, float)):
            return float(value)
        raise SchemaError(path, "float scenes carry scalars as JSON numbers")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise SchemaError(
            path, "exact scenes may not contain JSON floats; use 'p/q' strings"
        )
    if isinstance(value, str):
        s = value.strip()
        if _PLAIN_RE.match(s):
            return Fraction(s)
        m = _ROOT_ONLY_RE.match(s)
        if m:
            return Sqrt3(0, Fraction(m.group(1)))
        m = _MIXED_RE.match(s)
        if m:
            return Sqrt3(Fraction(m.group(1)), Fraction(m.group(2)))
        raise SchemaError(path, f"unreadable exact scalar {value!r}")
    raise SchemaError(path, "expected an exact scalar (integer or string)")


def scalar_to_json(value, mode: str):
    """Canonical JSON form of a scalar: string in exact mode, number in float."""
    if value is None:
        return None
    if mode == "float" or isinstance(value, float):
        return float(value)
    if isinstance(value, Sqrt3):
        if value.b == 0:
            return str(value.a)
        if value.a == 0:
            return f"{value.b}*sqrt(3)"
        sign = "+" if value.b > 0 else "-"
        return f"{value.a}{sign}{abs(value.b)}*sqrt(3)"
    return str(Fraction(value))


def _parse_affine_pair(value, mode: str, path: str) -> Tuple[Scalar, Scalar]:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise SchemaError(path, "expected an affine point as a two-entry array")
    return (
        parse_scalar(value[0], mode, f"{path}[0]"),
        parse_scalar(value[1], mode, f"{path}[1]"),
    )


def _pair_to_json(pair, mode: str) -> list:
    return [scalar_to_json(pair[0], mode), scalar_to_json(pair[1], mode)]


def triple_to_json(obj, mode: str) -> list:
    """Canonical JSON form of a homogeneous coordinate triple."""
    return [scalar_to_json(v, mode) for v in obj.coords]


# ---------------------------------------------------------------------------
# structural helpers
# ---------------------------------------------------------------------------

def _expect_dict(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise SchemaError(path, "expected an object")
    return value


def _expect_list(value, path: str, length: Optional[int] = None, minimum: Optional[int] = None) -> list:
    if not isinstance(value, list):
        raise SchemaError(path, "expected an array")
    if length is not None and len(value) != length:
        raise SchemaError(path, f"expected exactly {length} entries, got {len(value)}")
    if minimum is not None and len(value) < minimum:
        raise SchemaError(path, f"expected at least {minimum} entries, got {len(value)}")
    return value


def _expect_int(value, path: str, minimum: Optional[int] = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(path, "expected an integer")
    if minimum is not None and value < minimum:
        raise SchemaError(path, f"expected an integer >= {minimum}")
    return value


def _check_keys(d: dict, allowed: Sequence[str], required: Sequence[str], path: str):
    for key in d:
        if key not in allowed:
            raise SchemaError(f"{path}.{key}", "unknown field")
    for key in required:
        if key not in d:
            raise SchemaError(f"{path}.{key}", "missing required field")


def _positive(value, path: str):
    if is_exact_scalar(value):
        ok = scalar_sign(value) > 0
    else:
        ok = value > 0
    if not ok:
        raise ValidationError(path, "must be positive")


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

def _point(pair) -> ProjPoint:
    return ProjPoint.affine(pair[0], pair[1])


def _zero(mode: str):
    return 0.0 if mode == "float" else 0


def _parse_table(spec, mode: str) -> Tuple[str, dict, Table]:
    spec = _expect_dict(spec, "table")
    if "family" not in spec:
        raise SchemaError("table.family", "missing required field")
    family = spec["family"]
    if family not in _FAMILIES:
        raise SchemaError("table.family", f"unknown family {family!r}")
    try:
        if family == "right_spherical":
            _check_keys(spec, ("family", "vertices"), ("vertices",), "table")
            raw = _expect_list(spec["vertices"], "table.vertices", length=3)
            verts = [
                _parse_affine_pair(v, mode, f"table.vertices[{i}]")
                for i, v in enumerate(raw)
            ]
            table = right_spherical(*(_point(v) for v in verts))
            return family, {"vertices": verts}, table
        if family == "centrally_projective":
            _check_keys(spec, ("family", "origin", "vertices"), ("origin", "vertices"), "table")
            origin = _parse_affine_pair(spec["origin"], mode, "table.origin")
            raw = _expect_list(spec["vertices"], "table.vertices", minimum=3)
            verts = [
                _parse_affine_pair(v, mode, f"table.vertices[{i}]")
                for i, v in enumerate(raw)
            ]
            table = centrally_projective(
                _point(origin), [_point(v) for v in verts]
            )
            return family, {"origin": origin, "vertices": verts}, table
        if family == "regular_polygon":
            _check_keys(spec, ("family", "n", "radius"), ("n", "radius"), "table")
            n = _expect_int(spec["n"], "table.n", minimum=3)
            radius = parse_scalar(spec["radius"], mode, "table.radius")
            _positive(radius, "table.radius")
            verts = regular_polygon_vertices(n, radius)
            zero = _zero(mode)
            table = centrally_projective(ProjPoint.affine(zero, zero), verts)
            return family, {"n": n, "radius": radius}, table
        if family == "converging_mirrors":
            _check_keys(spec, ("family", "gap", "offset"), ("gap", "offset"), "table")
            gap = parse_scalar(spec["gap"], mode, "table.gap")
            offset = parse_scalar(spec["offset"], mode, "table.offset")
            table = converging_mirrors(gap, offset)
            return family, {"gap": gap, "offset": offset}, table
        # custom
        _check_keys(spec, ("family", "vertices", "fields"), ("vertices", "fields"), "table")
        raw = _expect_list(spec["vertices"], "table.vertices", minimum=3)
        verts = [
            _parse_affine_pair(v, mode, f"table.vertices[{i}]")
            for i, v in enumerate(raw)
        ]
        raw_fields = _expect_list(spec["fields"], "table.fields", length=len(verts))
        fields = []
        parsed_fields = []
        for i, f in enumerate(raw_fields):
            fpath = f"table.fields[{i}]"
            f = _expect_dict(f, fpath)
            _check_keys(f, ("type", "point"), ("type", "point"), fpath)
            kind = f["type"]
            if kind not in ("central", "apex"):
                raise SchemaError(f"{fpath}.type", "expected 'central' or 'apex'")
            pair = _parse_affine_pair(f["point"], mode, f"{fpath}.point")
            pivot = _point(pair)
            fields.append(CentralField(pivot) if kind == "central" else ApexField(pivot))
            parsed_fields.append({"type": kind, "point": pair})
        table = custom_table([_point(v) for v in verts], fields)
        return family, {"vertices": verts, "fields": parsed_fields}, table
    except TableError as exc:
        raise ValidationError("table", str(exc)) from exc


def _table_to_json(family: str, fields: dict, mode: str) -> dict:
    out = {"family": family}
    if family == "right_spherical":
        out["vertices"] = [_pair_to_json(v, mode) for v in fields["vertices"]]
    elif family == "centrally_projective":
        out["origin"] = _pair_to_json(fields["origin"], mode)
        out["vertices"] = [_pair_to_json(v, mode) for v in fields["vertices"]]
    elif family == "regular_polygon":
        out["n"] = fields["n"]
        out["radius"] = scalar_to_json(fields["radius"], mode)
    elif family == "converging_mirrors":
        out["gap"] = scalar_to_json(fields["gap"], mode)
        out["offset"] = scalar_to_json(fields["offset"], mode)
    else:
        out["vertices"] = [_pair_to_json(v, mode) for v in fields["vertices"]]
        out["fields"] = [
            {"type": f["type"], "point": _pair_to_json(f["point"], mode)}
            for f in fields["fields"]
        ]
    return out


# ---------------------------------------------------------------------------
# scenes
# ---------------------------------------------------------------------------

def parse_scene(source: Union[str, bytes, dict]) -> Scene:
    """Parse and validate a scene document (JSON text or decoded object)."""
    if isinstance(source, (str, bytes)):
        try:
            doc = json.loads(source)
        except json.JSONDecodeError as exc:
            raise SchemaError("$", f"invalid JSON: {exc}") from exc
    else:
        doc = source
    doc = _expect_dict(doc, "$")
    _check_keys(
        doc,
        ("schema", "numeric_mode", "table", "chord", "run"),
        ("schema", "numeric_mode", "table"),
        "$",
    )
    if doc["schema"] != SCHEMA_VERSION:
        raise SchemaError("schema", f"unsupported schema version {doc['schema']!r}")
    mode = doc["numeric_mode"]
    if mode not in ("exact", "float"):
        raise SchemaError("numeric_mode", "expected 'exact' or 'float'")
    family, fields, table = _parse_table(doc["table"], mode)

    chord = None
    if "chord" in doc:
        cspec = _expect_dict(doc["chord"], "chord")
        _check_keys(cspec, ("t0", "t1"), ("t0", "t1"), "chord")
        t0 = parse_scalar(cspec["t0"], mode, "chord.t0")
        t1 = parse_scalar(cspec["t1"], mode, "chord.t1")
        try:
            chord = ChordParam(t0, t1)
        except ValueError as exc:
            raise ValidationError("chord", str(exc)) from exc

    run = RunSpec()
    if "run" in doc:
        rspec = _expect_dict(doc["run"], "run")
        _check_keys(rspec, ("steps", "period", "grid"), (), "run")
        if "steps" in rspec:
            run.steps = _expect_int(rspec["steps"], "run.steps", minimum=1)
        if "period" in rspec:
            run.period = _expect_int(rspec["period"], "run.period", minimum=1)
        if "grid" in rspec:
            run.grid = _expect_int(rspec["grid"], "run.grid", minimum=2)

    return Scene(
        numeric_mode=mode,
        family=family,
        table_fields=fields,
        table=table,
        chord=chord,
        run=run,
    )


def scene_to_dict(scene: Scene) -> dict:
    """Canonical plain-object form of a scene."""
    out = {
        "schema": SCHEMA_VERSION,
        "numeric_mode": scene.numeric_mode,
        "table": _table_to_json(scene.family, scene.table_fields, scene.numeric_mode),
    }
    if scene.chord is not None:
        out["chord"] = {
            "t0": scalar_to_json(scene.chord.t0, scene.numeric_mode),
            "t1": scalar_to_json(scene.chord.t1, scene.numeric_mode),
        }
    run = {}
    if scene.run.steps is not None:
        run["steps"] = scene.run.steps
    if scene.run.period is not None:
        run["period"] = scene.run.period
    if scene.run.grid is not None:
        run["grid"] = scene.run.grid
    if run:
        out["run"] = run
    return out


def scene_to_json(scene: Scene) -> str:
    """Canonical JSON text of a scene (two-space indent, trailing newline)."""
    return json.dumps(scene_to_dict(scene), indent=2) + "\n"
