"""Deterministic text/JSON rendering of characters and coefficient matrices."""

from __future__ import annotations

import json

from .characters import CoeffMatrix
from .group_ring import GroupRingElement


def character_to_json(xi: GroupRingElement, cartan_type: str, p: int, lam, kind: str) -> dict:
    return {
        "type": cartan_type,
        "p": p,
        "lambda": list(lam),
        "kind": kind,
        "terms": [{"weight": list(mu), "mult": c} for mu, c in xi.sorted_terms()],
        "dimension": xi.dimension(),
    }


def character_from_json(obj: dict | str) -> GroupRingElement:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return GroupRingElement((tuple(t["weight"]), t["mult"]) for t in obj["terms"])


def matrix_to_json(m: CoeffMatrix, cartan_type: str, p: int, lam) -> dict:
    return {
        "type": cartan_type,
        "p": p,
        "lambda": list(lam),
        "kind": m.kind,
        "weights": [list(w) for w in m.weights],
        "matrix": [list(row) for row in m.matrix],
    }


def matrix_from_json(obj: dict | str) -> CoeffMatrix:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return CoeffMatrix(obj["kind"], tuple(tuple(w) for w in obj["weights"]),
                       tuple(tuple(r) for r in obj["matrix"]))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=False, separators=(",", ":"))


def weight_str(w) -> str:
    return "(" + ",".join(map(str, w)) + ")"


def matrix_text(m: CoeffMatrix) -> str:
    labels = [weight_str(w) for w in m.weights]
    cells = [[str(x) for x in row] for row in m.matrix]
    width = max([len(s) for s in labels] + [len(c) for row in cells for c in row])
    lines = [" " * width + " " + " ".join(s.rjust(width) for s in labels)]
    for lab, row in zip(labels, cells):
        lines.append(lab.rjust(width) + " " + " ".join(c.rjust(width) for c in row))
    return "\n".join(lines)
