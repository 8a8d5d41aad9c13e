"""Wire formats: structure JSON, amalgam JSON, tree JSON and DOT.

Structure JSON::

    {"points": [{"id": 0, "color": 0}, ...],        # increasing order
     "f": [[i, j, "p/q"], ...]}                     # i before j

Rationals are always reduced ``"p/q"`` strings.  Output is compact and
key-ordered so the same structure always serializes to the same bytes.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from .amalgam import Amalgam
from .analysis import FiniteTree, TreeOrder
from .core import LexError, LexStructure, pair
from .generic import SaturationLog
from .rational import RationalFormatError, from_wire, to_wire


class FormatError(LexError):
    """Input that does not follow the wire format."""


def dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"))


def structure_to_json(s: LexStructure) -> dict:
    ids = s.ids
    f = []
    for a in range(len(ids)):
        for b in range(a + 1, len(ids)):
            v = s.fvals.get(pair(ids[a], ids[b]))
            if v is not None:
                f.append([ids[a], ids[b], to_wire(v)])
    return {"points": [{"id": i, "color": c} for i, c in s.points], "f": f}


def _int(v, what):
    if isinstance(v, bool) or not isinstance(v, int):
        raise FormatError(f"{what} must be an integer, got {v!r}")
    return v


def structure_from_json(obj: Any) -> LexStructure:
    """Strict reader; validity (min-law, totality) is left to ``validate``."""
    if not isinstance(obj, Mapping) or "points" not in obj or "f" not in obj:
        raise FormatError("expected an object with 'points' and 'f'")
    if set(obj) - {"points", "f"}:
        raise FormatError(f"unexpected keys {sorted(set(obj) - {'points', 'f'})}")
    if not isinstance(obj["points"], list) or not isinstance(obj["f"], list):
        raise FormatError("'points' and 'f' must be lists")
    pts = []
    for p in obj["points"]:
        if not isinstance(p, Mapping) or set(p) != {"id", "color"}:
            raise FormatError(f"bad point entry {p!r}")
        pts.append((_int(p["id"], "id"), _int(p["color"], "color")))
    fv = {}
    for e in obj["f"]:
        if not isinstance(e, list) or len(e) != 3:
            raise FormatError(f"bad f entry {e!r}")
        i, j = _int(e[0], "id"), _int(e[1], "id")
        try:
            v = from_wire(e[2])
        except RationalFormatError as exc:
            raise FormatError(str(exc)) from None
        k = pair(i, j)
        if k in fv and fv[k] != v:
            raise FormatError(f"conflicting values for pair {k}")
        fv[k] = v
    return LexStructure(tuple(pts), fv)


def dump_structure(s: LexStructure) -> str:
    return dumps(structure_to_json(s))


def load_structure(text: str) -> LexStructure:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON: {exc}") from None
    return structure_from_json(unwrap(obj))


def unwrap(obj: Any) -> Any:
    """Accept a bare structure or any document carrying one under ``"structure"``."""
    if isinstance(obj, Mapping) and "structure" in obj:
        return obj["structure"]
    return obj


def _idmap(m: Mapping) -> list:
    return [[k, m[k]] for k in sorted(m)]


def amalgam_to_json(am: Amalgam) -> dict:
    return {
        "b": structure_to_json(am.emb_b.source),
        "c": structure_to_json(am.emb_c.source),
        "result": structure_to_json(am.result),
        "emb_b": _idmap(am.emb_b.map),
        "emb_c": _idmap(am.emb_c.map),
    }


def saturation_to_json(s: LexStructure, log: SaturationLog) -> dict:
    return {"structure": structure_to_json(s), "log": log.to_json()}


def births_from_json(obj: Any) -> dict[int, int]:
    if not isinstance(obj, Mapping) or "log" not in obj:
        raise FormatError("document has no saturation log")
    return {_int(p, "id"): _int(b, "birth") for p, b in obj["log"]["births"]}


def tree_from_json(obj: Any) -> FiniteTree:
    def check(t):
        if not isinstance(t, list):
            raise FormatError(f"tree nodes are lists of children, got {t!r}")
        for c in t:
            check(c)
    check(obj)
    return FiniteTree.from_nested(obj)


def tree_order_to_json(t: FiniteTree, to: TreeOrder) -> dict:
    return {
        "tree": t.to_nested(),
        "leaves": to.leaves,
        "structure": structure_to_json(to.structure),
        "branches": [[list(b), k] for b, k in to.branch_cut.items()],
    }


def structure_to_dot(s: LexStructure, name: str = "lex") -> str:
    """Points left to right; edges between neighbours carry f."""
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for i, c in s.points:
        style = ', style=filled, fillcolor="gray80"' if c == 1 else ""
        lines.append(f'  p{i} [label="{i}"{style}];')
    ids = s.ids
    for x, y in zip(ids, ids[1:]):
        lines.append(f'  p{x} -> p{y} [label="{to_wire(s.f(x, y))}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_to_dot(t: FiniteTree, name: str = "tree") -> str:
    lines = [f"digraph {name} {{"]
    for v in range(len(t)):
        lines.append(f'  n{v} [label="{v}"];')
    for v, kids in enumerate(t.children):
        for c in kids:
            lines.append(f"  n{v} -> n{c};")
    lines.append("}")
    return "\n".join(lines) + "\n"
