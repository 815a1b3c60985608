#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Rendering — corpi di ℍ² nel disco di Poincaré (SVG 1.1)

Le geodetiche e i cerchi iperbolici sono archi di cerchi euclidei nel disco: ogni arco
si disegna dal cerchio per tre suoi punti (inizio, punto interno, fine); con tre punti
allineati l'arco degenera in un segmento.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np
from scipy.linalg import null_space

from body_model import BallIntersection, Polytope, arc_points, boundary_arcs
from lorentz_core import (
    HPoint,
    Hyperplane,
    UnitTangent,
    geodesic_point,
    midpoint,
    project_ph,
    to_poincare,
)

SVG_NS = "http://www.w3.org/2000/svg"
VIEWBOX = "-1.05 -1.05 2.1 2.1"
IDEAL_REACH = 18.0   # parametro geodetico usato come "punto all'infinito"


class UnsupportedDimension(ValueError):
    """Rendering disponibile solo per d=2 (exit code 4)."""


def _svg_xy(p: np.ndarray) -> np.ndarray:
    """Punto di Poincaré → coordinate SVG (asse y verso il basso)."""
    return np.array([p[0], -p[1]])


def _poincare(x: np.ndarray) -> np.ndarray:
    return _svg_xy(to_poincare(HPoint(x)))


def _fmt(v: float) -> str:
    return f"{v:.9f}".rstrip("0").rstrip(".") if v != 0 else "0"


def _arc_command(a: np.ndarray, m: np.ndarray, b: np.ndarray) -> str:
    """Comando di path da a a b lungo il cerchio per a, m, b (segmento se allineati)."""
    M = np.array([b - a, m - a])
    det = 2.0 * (M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0])
    if abs(det) < 1e-12:
        return f"L {_fmt(b[0])} {_fmt(b[1])}"
    rhs = np.array([b @ b - a @ a, m @ m - a @ a])
    center = np.linalg.solve(2.0 * M, rhs)
    r = float(np.linalg.norm(a - center))
    ang = [np.arctan2(*(p - center)[::-1]) for p in (a, m, b)]
    to_m = (ang[1] - ang[0]) % (2.0 * np.pi)
    to_b = (ang[2] - ang[0]) % (2.0 * np.pi)
    if to_m < to_b:
        sweep, span = 1, to_b
    else:
        sweep, span = 0, 2.0 * np.pi - to_b
    large = 1 if span > np.pi else 0
    return f"A {_fmt(r)} {_fmt(r)} 0 {large} {sweep} {_fmt(b[0])} {_fmt(b[1])}"


def _path(points: List[Tuple[np.ndarray, np.ndarray, np.ndarray]], closed: bool) -> str:
    start = points[0][0]
    parts = [f"M {_fmt(start[0])} {_fmt(start[1])}"]
    parts += [_arc_command(a, m, b) for a, m, b in points]
    if closed:
        parts.append("Z")
    return " ".join(parts)


def _geodesic_triplet(p: np.ndarray, q: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    m = midpoint(HPoint(p), HPoint(q)).coords
    return _poincare(p), _poincare(m), _poincare(q)


def polytope_outline(P: Polytope) -> str:
    order = P.boundary_order
    V = P.array
    segments = [_geodesic_triplet(V[i], V[j]) for i, j in zip(order, order[1:] + order[:1])]
    return _path(segments, closed=True)


def ball_intersection_outline(B: BallIntersection) -> List[ET.Element]:
    """Un elemento per arco di bordo (un <circle> per una palla singola)."""
    elements = []
    for i, phi0, span in boundary_arcs(B):
        if span >= 2.0 * np.pi - 1e-12:
            pts = np.array([_poincare(x) for x in arc_points(B, i, phi0 + np.array([0.0, 2.0, 4.0]) * np.pi / 3.0)])
            M = np.array([pts[1] - pts[0], pts[2] - pts[0]])
            rhs = np.array([pts[1] @ pts[1] - pts[0] @ pts[0], pts[2] @ pts[2] - pts[0] @ pts[0]])
            center = np.linalg.solve(2.0 * M, rhs)
            r = float(np.linalg.norm(pts[0] - center))
            elements.append(ET.Element("circle", {"cx": _fmt(center[0]), "cy": _fmt(center[1]), "r": _fmt(r),
                                                  "class": "body"}))
            continue
        a, m, b = (_poincare(x) for x in arc_points(B, i, phi0 + np.array([0.0, 0.5, 1.0]) * span))
        elements.append(ET.Element("path", {"d": _path([(a, m, b)], closed=False), "class": "body"}))
    return elements


def hyperplane_path(H: Hyperplane) -> str:
    """La retta H da un estremo ideale all'altro."""
    h = project_ph(HPoint.origin(2), H)
    J = np.diag([1.0, 1.0, -1.0])
    t = null_space(np.vstack([J @ H.n.coords, J @ h.coords]))[:, 0]
    direction = UnitTangent(h, t)
    ends = [geodesic_point(direction, s).coords for s in (-IDEAL_REACH, IDEAL_REACH)]
    return _path([(_poincare(ends[0]), _poincare(h.coords), _poincare(ends[1]))], closed=False)


def render_svg(body: Union[Polytope, BallIntersection], out: Optional[Union[str, Path]] = None,
               hyperplane: Optional[Hyperplane] = None,
               width_segment: Optional[Tuple[HPoint, HPoint]] = None) -> str:
    if body.dim != 2:
        raise UnsupportedDimension("render supports d=2 only")
    root = ET.Element("svg", {"xmlns": SVG_NS, "version": "1.1", "viewBox": VIEWBOX,
                              "width": "600", "height": "600"})
    style = ET.SubElement(root, "style")
    style.text = (".disk{fill:none;stroke:#444;stroke-width:0.004}"
                  ".body{fill:none;stroke:#1f5fa8;stroke-width:0.006}"
                  ".hyperplane{fill:none;stroke:#b33;stroke-width:0.004;stroke-dasharray:0.02 0.01}"
                  ".width{fill:none;stroke:#2a2;stroke-width:0.005}")
    ET.SubElement(root, "circle", {"cx": "0", "cy": "0", "r": "1", "class": "disk"})

    if isinstance(body, Polytope):
        ET.SubElement(root, "path", {"d": polytope_outline(body), "class": "body"})
    else:
        group = ET.SubElement(root, "g", {"class": "body"})
        group.extend(ball_intersection_outline(body))

    if hyperplane is not None:
        ET.SubElement(root, "path", {"d": hyperplane_path(hyperplane), "class": "hyperplane"})
    if width_segment is not None:
        p, q = width_segment
        triplet = _geodesic_triplet(p.coords, q.coords)
        ET.SubElement(root, "path", {"d": _path([triplet], closed=False), "class": "width",
                                     "data-from": " ".join(_fmt(v) for v in triplet[0]),
                                     "data-to": " ".join(_fmt(v) for v in triplet[2])})

    text = ET.tostring(root, encoding="unicode")
    svg = '<?xml version="1.0" encoding="UTF-8"?>\n' + text + "\n"
    if out is not None:
        Path(out).write_text(svg, encoding="utf-8")
    return svg
