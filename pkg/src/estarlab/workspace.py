"""JSON workspace documents: a space, named operations and named functions.

Subsets are always written as lists of point names.  A document looks like::

    {
      "points": ["a", "b", "c"],
      "opens": [[], ["a"], ["a", "b", "c"]],
      "operations": {
        "g": {"kind": "piecewise", "if": {"contains": "c"},
              "then": {"kind": "closure"}, "else": {"kind": "constant_x"}}
      },
      "functions": {"f": {"table": {"a": "b", "b": "a", "c": "c"}}}
    }

Operation kinds are ``identity``, ``constant_x``, ``closure``, ``table``
(``images``: list of ``{"set": [...], "image": [...]}``) and ``piecewise``
(``if`` / ``then`` / ``else``); conditions are ``{"contains": p}``,
``{"equals": [...]}`` and ``{"member_of": [[...], ...]}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from jsonschema import Draft202012Validator

from .morphisms import FiniteFunction
from .operations import (
    BoundOperation,
    ClosureOp,
    ConstantX,
    ContainsPoint,
    EqualsSet,
    Identity,
    MemberOfList,
    OperationError,
    Piecewise,
    Table,
    bind_operation,
)
from .space import DuplicatePoint, FiniteSpace, SpaceError, WidthExceeded, validate_topology

_NAMES = {"type": "array", "items": {"type": "string"}}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["points", "opens"],
    "additionalProperties": False,
    "properties": {
        "points": {"type": "array", "items": {"type": "string", "minLength": 1}, "minItems": 1, "maxItems": 16},
        "opens": {"type": "array", "items": _NAMES},
        "complete": {"type": "boolean"},
        "operations": {"type": "object", "additionalProperties": {"$ref": "#/$defs/op"}},
        "functions": {"type": "object", "additionalProperties": {"$ref": "#/$defs/fn"}},
    },
    "$defs": {
        "op": {
            "type": "object",
            "required": ["kind"],
            "properties": {"kind": {"enum": ["identity", "constant_x", "closure", "table", "piecewise"]}},
            "allOf": [
                {"if": {"properties": {"kind": {"const": "table"}}},
                 "then": {"required": ["images"], "properties": {"images": {
                     "type": "array", "items": {
                         "type": "object", "required": ["set", "image"], "additionalProperties": False,
                         "properties": {"set": _NAMES, "image": _NAMES}}}}}},
                {"if": {"properties": {"kind": {"const": "piecewise"}}},
                 "then": {"required": ["if", "then", "else"], "properties": {
                     "if": {"$ref": "#/$defs/cond"}, "then": {"$ref": "#/$defs/op"}, "else": {"$ref": "#/$defs/op"}}}},
            ],
        },
        "cond": {
            "type": "object", "minProperties": 1, "maxProperties": 1, "additionalProperties": False,
            "properties": {
                "contains": {"type": "string"},
                "equals": _NAMES,
                "member_of": {"type": "array", "items": _NAMES, "minItems": 1},
            },
        },
        "fn": {
            "type": "object", "required": ["table"], "additionalProperties": False,
            "properties": {
                "codomain": {"type": "string"},
                "table": {"type": "object", "additionalProperties": {"type": "string"}},
            },
        },
    },
}

_VALIDATOR = Draft202012Validator(SCHEMA)


class WorkspaceError(ValueError):
    """Invalid document; ``pointer`` is a JSON pointer to the offending value."""

    def __init__(self, message: str, pointer: str = ""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer
        self.detail = message


def _pointer(parts) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in parts)


@dataclass(frozen=True)
class FunctionDoc:
    table: tuple  # sorted (point, image) pairs
    codomain: str | None = None  # path of the codomain document; None means this space


@dataclass(frozen=True)
class Workspace:
    space: FiniteSpace
    operations: dict = field(default_factory=dict)  # name -> OperationSpec
    functions: dict = field(default_factory=dict)  # name -> FunctionDoc
    source: str | None = field(default=None, compare=False)

    def operation(self, name: str) -> BoundOperation:
        if name not in self.operations:
            raise WorkspaceError(f"unknown operation {name!r}", _pointer(["operations", name]))
        try:
            return bind_operation(self.space, self.operations[name], name)
        except OperationError as e:
            raise WorkspaceError(str(e), _pointer(["operations", name])) from None

    def function(self, name: str, codomain: FiniteSpace | None = None) -> FiniteFunction:
        if name not in self.functions:
            raise WorkspaceError(f"unknown function {name!r}", _pointer(["functions", name]))
        doc = self.functions[name]
        cod = codomain if codomain is not None else self.space
        try:
            return FiniteFunction.from_names(self.space, cod, dict(doc.table), name)
        except (SpaceError, ValueError) as e:
            raise WorkspaceError(str(e), _pointer(["functions", name, "table"])) from None


# ---------------------------------------------------------------------------
# parsing


def _parse_cond(raw, path, points):
    if "contains" in raw:
        p = raw["contains"]
        if p not in points:
            raise WorkspaceError(f"unknown point {p!r}", _pointer(path + ["contains"]))
        return ContainsPoint(p)
    if "equals" in raw:
        return EqualsSet(_names(raw["equals"], path + ["equals"], points))
    return MemberOfList(tuple(_names(s, path + ["member_of", i], points) for i, s in enumerate(raw["member_of"])))


def _names(raw, path, points) -> frozenset:
    for i, p in enumerate(raw):
        if p not in points:
            raise WorkspaceError(f"unknown point {p!r}", _pointer(path + [i]))
    return frozenset(raw)


def _parse_op(raw, path, points):
    kind = raw["kind"]
    if kind == "identity":
        return Identity()
    if kind == "constant_x":
        return ConstantX()
    if kind == "closure":
        return ClosureOp()
    if kind == "table":
        images = {}
        for i, item in enumerate(raw["images"]):
            key = _names(item["set"], path + ["images", i, "set"], points)
            if key in images:
                raise WorkspaceError(f"duplicate table key {sorted(key)}", _pointer(path + ["images", i, "set"]))
            images[key] = _names(item["image"], path + ["images", i, "image"], points)
        return Table.of(images)
    return Piecewise(
        _parse_cond(raw["if"], path + ["if"], points),
        _parse_op(raw["then"], path + ["then"], points),
        _parse_op(raw["else"], path + ["else"], points),
    )


def parse(raw: dict, source: str | None = None) -> Workspace:
    errors = sorted(_VALIDATOR.iter_errors(raw), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        e = errors[0]
        raise WorkspaceError(e.message, _pointer(e.absolute_path))
    points = tuple(raw["points"])
    try:
        space = validate_topology(points, raw["opens"], complete=raw.get("complete", False))
    except SpaceError as e:
        where = "/points" if isinstance(e, (DuplicatePoint, WidthExceeded)) else "/opens"
        raise WorkspaceError(str(e), where) from None
    names = set(points)
    ops = {k: _parse_op(v, ["operations", k], names) for k, v in raw.get("operations", {}).items()}
    fns = {}
    for k, v in raw.get("functions", {}).items():
        fns[k] = FunctionDoc(tuple(sorted(v["table"].items())), v.get("codomain"))
    ws = Workspace(space, ops, fns, source)
    for k in ops:
        ws.operation(k)  # bind eagerly so errors surface at load time
    for k, fd in fns.items():
        if fd.codomain is None:
            ws.function(k)
    return ws


def load(path) -> Workspace:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise WorkspaceError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    return parse(raw, str(path))


def resolve_codomain(ws: Workspace, name: str) -> Workspace:
    """The workspace a function maps into (loaded relative to the document's own path)."""
    ref = ws.functions[name].codomain
    if ref is None:
        return ws
    base = Path(ws.source).parent if ws.source else Path(".")
    return load(base / ref)


# ---------------------------------------------------------------------------
# serialization


def _ordered(space: FiniteSpace, names) -> list[str]:
    return space.names(space.mask(names))


def _dump_cond(cond, space):
    if isinstance(cond, ContainsPoint):
        return {"contains": cond.point}
    if isinstance(cond, EqualsSet):
        return {"equals": _ordered(space, cond.members)}
    return {"member_of": [_ordered(space, s) for s in cond.sets]}


def dump_op(spec, space: FiniteSpace) -> dict:
    if isinstance(spec, Identity):
        return {"kind": "identity"}
    if isinstance(spec, ConstantX):
        return {"kind": "constant_x"}
    if isinstance(spec, ClosureOp):
        return {"kind": "closure"}
    if isinstance(spec, Table):
        items = sorted(spec.mapping, key=lambda kv: space.mask(kv[0]))
        return {"kind": "table", "images": [{"set": _ordered(space, k), "image": _ordered(space, v)} for k, v in items]}
    return {"kind": "piecewise", "if": _dump_cond(spec.cond, space),
            "then": dump_op(spec.then, space), "else": dump_op(spec.otherwise, space)}


def serialize(ws: Workspace) -> dict:
    s = ws.space
    out = {"points": list(s.points), "opens": [s.names(o) for o in s.open_list]}
    if ws.operations:
        out["operations"] = {k: dump_op(v, s) for k, v in sorted(ws.operations.items())}
    if ws.functions:
        fns = {}
        for k, fd in sorted(ws.functions.items()):
            entry = {"table": dict(fd.table)}
            if fd.codomain is not None:
                entry["codomain"] = fd.codomain
            fns[k] = entry
        out["functions"] = fns
    return out


def dumps(ws: Workspace) -> str:
    return json.dumps(serialize(ws), indent=2, ensure_ascii=False)
