"""Lattice exchange format (JSON) and Graphviz DOT rendering."""
from __future__ import annotations

import json
from pathlib import Path

from .core import Lattice, from_covers
from .errors import LatticeFormatError


def loads(text: str) -> Lattice:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LatticeFormatError(f"not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise LatticeFormatError("lattice file must hold a single JSON object")
    for key in ("elements", "covers"):
        if key not in obj:
            raise LatticeFormatError(f"missing field {key!r}")
    if not isinstance(obj["elements"], list) or not all(isinstance(x, str) for x in obj["elements"]):
        raise LatticeFormatError("'elements' must be an array of strings")
    if not isinstance(obj["covers"], list):
        raise LatticeFormatError("'covers' must be an array of [lower, upper] pairs")
    return from_covers(obj["elements"], obj["covers"], name=str(obj.get("name", "")))


def read_lattice(path) -> Lattice:
    return loads(Path(path).read_text(encoding="utf-8"))


def to_dict(L: Lattice) -> dict:
    return {
        "name": L.name,
        "elements": list(L.labels),
        "covers": [[L.labels[a], L.labels[b]] for a, b in L.covers],
    }


def dumps(L: Lattice) -> str:
    # one cover pair per line; json.dumps(indent=...) would split every pair
    d = to_dict(L)

    def enc(v):
        return json.dumps(v, ensure_ascii=False)

    if d["covers"]:
        covers = "[\n" + ",\n".join(f"    {enc(pair)}" for pair in d["covers"]) + "\n  ]"
    else:
        covers = "[]"
    return (f'{{\n  "name": {enc(d["name"])},\n  "elements": {enc(d["elements"])},\n'
            f'  "covers": {covers}\n}}\n')


def write_lattice(L: Lattice, path) -> None:
    Path(path).write_text(dumps(L), encoding="utf-8")


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(L: Lattice) -> str:
    """Hasse diagram as a DOT digraph, edges from lower cover to upper cover."""
    lines = [f"digraph {_quote(L.name or 'lattice')} {{", "  rankdir=BT;"]
    for lab in L.labels:
        lines.append(f"  {_quote(lab)};")
    for a, b in L.covers:
        lines.append(f"  {_quote(L.labels[a])} -> {_quote(L.labels[b])};")
    lines.append("}")
    return "\n".join(lines) + "\n"
