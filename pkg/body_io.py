#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Body I/O — documenti JSON dei corpi e dei report

BodyDocument:
    {"dim": 2, "kind": "polytope", "coords": "klein", "vertices": [[...], ...]}
    {"dim": 2, "kind": "ball_intersection", "coords": "hyperboloid",
     "centers": [[...], ...], "radius": 1.0}

coords = "klein" (default, dim componenti con |y| < 1) oppure "hyperboloid"
(dim+1 componenti). I float vengono scritti con 17 cifre significative.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np

from body_model import BallIntersection, Polytope
from lorentz_core import HPoint, Hyperplane, UnitTangent, from_klein, to_klein

KINDS = ("polytope", "ball_intersection")
COORDS = ("hyperboloid", "klein")


class DocumentError(ValueError):
    """Documento JSON malformato o incoerente (exit code 2)."""


# -----------------------------
# Lettura
# -----------------------------

def _point(raw: Any, dim: int, coords: str) -> HPoint:
    arr = np.asarray(raw, dtype=float)
    expected = dim if coords == "klein" else dim + 1
    if arr.shape != (expected,):
        raise DocumentError(f"Coordinate di lunghezza {arr.size}, attese {expected} ({coords})")
    if coords == "klein":
        if float(arr @ arr) >= 1.0:
            raise DocumentError(f"Punto di Klein fuori dal disco: |y| ≥ 1 ({raw})")
        return from_klein(arr)
    return HPoint(arr)


def body_from_dict(doc: Dict[str, Any]) -> Union[Polytope, BallIntersection]:
    try:
        dim = int(doc["dim"])
        kind = doc["kind"]
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"Campo obbligatorio mancante o non valido: {exc}") from exc
    coords = doc.get("coords", "klein")
    if kind not in KINDS:
        raise DocumentError(f"kind non valido: {kind!r} (ammessi: {', '.join(KINDS)})")
    if coords not in COORDS:
        raise DocumentError(f"coords non valido: {coords!r} (ammessi: {', '.join(COORDS)})")
    if dim < 2:
        raise DocumentError(f"dim deve essere ≥ 2, ricevuto {dim}")

    if kind == "polytope":
        if "radius" in doc:
            raise DocumentError("radius ammesso solo per kind = ball_intersection")
        points = doc.get("vertices")
        if not points:
            raise DocumentError("Politopo senza 'vertices'")
        return Polytope(tuple(_point(p, dim, coords) for p in points))

    points = doc.get("centers")
    if not points:
        raise DocumentError("Intersezione di palle senza 'centers'")
    if "radius" not in doc:
        raise DocumentError("Intersezione di palle senza 'radius'")
    return BallIntersection(tuple(_point(p, dim, coords) for p in points), float(doc["radius"]))


def load_body(path: Union[str, Path]) -> Union[Polytope, BallIntersection]:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DocumentError(f"JSON non valido in {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise DocumentError(f"{path}: atteso un oggetto JSON")
    return body_from_dict(doc)


# -----------------------------
# Scrittura
# -----------------------------

def _rows(points, coords: str) -> list:
    if coords == "klein":
        return [to_klein(p).tolist() for p in points]
    return [p.coords.tolist() for p in points]


def body_to_dict(body: Union[Polytope, BallIntersection], coords: str = "hyperboloid") -> Dict[str, Any]:
    if isinstance(body, Polytope):
        return {"dim": body.dim, "kind": "polytope", "coords": coords,
                "vertices": _rows(body.vertices, coords)}
    return {"dim": body.dim, "kind": "ball_intersection", "coords": coords,
            "centers": _rows(body.centers, coords), "radius": float(body.radius)}


def witness_to_dict(obj: Any) -> Any:
    """Testimoni nei due sistemi di coordinate."""
    if isinstance(obj, HPoint):
        return {"hyperboloid": obj.coords.tolist(), "klein": to_klein(obj).tolist()}
    if isinstance(obj, Hyperplane):
        return {"normal": obj.n.coords.tolist()}
    if isinstance(obj, UnitTangent):
        return {"base": witness_to_dict(obj.base), "tangent": obj.u.coords.tolist()}
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    return obj


def _encode(obj: Any, indent: int, level: int) -> str:
    pad = "\n" + " " * (indent * (level + 1)) if indent else ""
    end = "\n" + " " * (indent * level) if indent else ""
    sep = "," + pad if indent else ", "
    obj = witness_to_dict(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{json.dumps(str(k), ensure_ascii=False)}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{" + pad + sep.join(items) + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        return "[" + pad + sep.join(_encode(v, indent, level + 1) for v in obj) + end + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "null"
        return format(obj, ".17g")
    return json.dumps(obj, ensure_ascii=False)


def dumps(obj: Any, indent: int = 2) -> str:
    """JSON con float a 17 cifre significative (round-trip esatto dei double)."""
    return _encode(obj, indent, 0) + "\n"


def save_body(body: Union[Polytope, BallIntersection], path: Union[str, Path], coords: str = "hyperboloid",
              indent: int = 2) -> None:
    Path(path).write_text(dumps(body_to_dict(body, coords), indent), encoding="utf-8")
