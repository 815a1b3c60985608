#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Constructions — corpi di riferimento e formule chiuse

Corpi (tutti centrati in o = (0,…,0,1)):
- triangolo regolare di lato 2x, tetraedro regolare S₂ₓ di spigolo 2x
- palla, parte 1/2^d di una palla (tagliata dagli iperpiani coordinati)
- poligoni di Reuleaux (k dispari) come intersezione di k palle di raggio δ
- il corpo del controesempio con arco equidistante (proiezioni fuori da C ∩ H)
- politopi casuali per le suite di proprietà

Formule:
- altezza del triangolo η_x, circumraggio, larghezze di S₂ₓ per faccetta e per spigolo,
  lato di Lambert, polinomio del confronto tra le due larghezze
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import brentq

from body_model import BallIntersection, Polytope, polytope_from_rows
from lorentz_core import (
    Ball,
    GeometryError,
    HPoint,
    Hyperplane,
    midpoint,
    unit_tangent_towards,
)

TETRA_DIRECTIONS = np.array([
    [1.0, 1.0, 1.0],
    [1.0, -1.0, -1.0],
    [-1.0, 1.0, -1.0],
    [-1.0, -1.0, 1.0],
]) / np.sqrt(3.0)


@dataclass(frozen=True)
class SimplexSpec:
    x: float      # metà dello spigolo
    d: int = 3

    def __post_init__(self):
        if not self.x > 0.0:
            raise ValueError(f"x deve essere > 0, ricevuto {self.x}")
        if self.d not in (2, 3):
            raise ValueError(f"Simplesso regolare supportato solo per d=2,3 (d={self.d})")

    def build(self) -> Polytope:
        return make_regular_triangle(self.x) if self.d == 2 else make_regular_tetrahedron(self.x)


def _require_positive(name: str, value: float) -> None:
    if not value > 0.0:
        raise ValueError(f"{name} deve essere > 0, ricevuto {value}")


def _point_at(radius: float, direction: np.ndarray) -> np.ndarray:
    """Punto a distanza `radius` da o nella direzione euclidea unitaria `direction`."""
    return np.append(np.sinh(radius) * direction, np.cosh(radius))


# -----------------------------
# Formule chiuse
# -----------------------------

def triangle_height(x: float) -> float:
    """η_x: altezza del triangolo regolare di lato 2x (cosh 2x = cosh x · cosh η_x)."""
    _require_positive("x", x)
    return float(np.arccosh(np.cosh(2.0 * x) / np.cosh(x)))


def triangle_circumradius(x: float) -> float:
    _require_positive("x", x)
    return float(np.arcsinh(np.sqrt(4.0 / 3.0) * np.sinh(x)))


def tetrahedron_circumradius(x: float) -> float:
    """r con 1 + (4/3)·sinh²r = cosh 2x (direzioni a prodotto scalare −1/3)."""
    _require_positive("x", x)
    return float(np.arcsinh(np.sqrt(1.5) * np.sinh(x)))


def simplex_facet_width(x: float) -> float:
    """Larghezza di S₂ₓ rispetto al piano di una faccetta: altezza dal vertice opposto."""
    return float(np.arccosh(np.cosh(2.0 * x) / np.cosh(triangle_circumradius(x))))


def simplex_edge_width(x: float) -> float:
    """Larghezza di S₂ₓ rispetto all'iperpiano per uno spigolo ortogonale alla perpendicolare comune."""
    _require_positive("x", x)
    mn = np.arccosh(np.cosh(2.0 * x) / np.cosh(x) ** 2)
    return lambert_side(float(mn), x)


def lambert_side(mn: float, nz: float) -> float:
    """Quadrilatero di Lambert: sinh |zh| = sinh |mn| · cosh |nz|."""
    _require_positive("mn", mn)
    if nz < 0.0:
        raise ValueError(f"nz deve essere ≥ 0, ricevuto {nz}")
    return float(np.arcsinh(np.sinh(mn) * np.cosh(nz)))


REMARK2_COEFFS = (29.0, -36.0, 7.0)


def remark2_polynomial(lam: float) -> float:
    a, b, c = REMARK2_COEFFS
    return a * lam * lam + b * lam + c


def remark2_roots() -> Tuple[float, float]:
    a, b, c = REMARK2_COEFFS
    disc = np.sqrt(b * b - 4.0 * a * c)
    r1, r2 = (-b - disc) / (2.0 * a), (-b + disc) / (2.0 * a)
    return float(min(r1, r2)), float(max(r1, r2))


# -----------------------------
# Simplessi regolari
# -----------------------------

def make_regular_triangle(x: float) -> Polytope:
    """Vertici sul cerchio di raggio circoscritto, agli angoli 90° + 120°·k."""
    R = triangle_circumradius(x)
    angles = np.pi / 2.0 + 2.0 * np.pi * np.arange(3) / 3.0
    V = np.array([_point_at(R, np.array([np.cos(a), np.sin(a)])) for a in angles])
    return polytope_from_rows(V)


def make_regular_tetrahedron(x: float) -> Polytope:
    r = tetrahedron_circumradius(x)
    return polytope_from_rows(np.array([_point_at(r, dvec) for dvec in TETRA_DIRECTIONS]))


def hyperplane_spanned(points: np.ndarray, towards: HPoint) -> Hyperplane:
    """Iperpiano per d punti (righe), orientato verso `towards`: normale n = J·ker(V)."""
    K = null_space(np.atleast_2d(points))
    if K.shape[1] != 1:
        raise GeometryError("Punti degeneri: l'iperpiano non è determinato")
    n = K[:, 0].copy()
    n[-1] = -n[-1]
    return Hyperplane(n).oriented_towards(towards)


def simplex_facet_hyperplane(S: Polytope, facet: Tuple[int, ...] = (0, 1, 2)) -> Hyperplane:
    """Piano della faccetta (per il triangolo: retta di un lato), orientato verso il corpo."""
    V = S.array
    rest = [i for i in range(len(V)) if i not in facet]
    return hyperplane_spanned(V[list(facet)], S.vertices[rest[0]])


def simplex_edge_hyperplane(S: Polytope, edge: Tuple[int, int] = (0, 1)) -> Hyperplane:
    """
    Iperpiano per lo spigolo uv ortogonale al segmento mn che unisce i punti medi di uv
    e dello spigolo opposto wz (mn è la perpendicolare comune per simmetria).
    """
    u, v = (S.vertices[i] for i in edge)
    w, z = (S.vertices[i] for i in range(len(S.vertices)) if i not in edge)
    m, n = midpoint(u, v), midpoint(w, z)
    return Hyperplane(unit_tangent_towards(m, n).u.coords)


# -----------------------------
# Palle e parti di palla
# -----------------------------

def make_ball(c: HPoint, rho: float) -> BallIntersection:
    return BallIntersection.from_ball(Ball(c, rho))


def _orthant_cap_directions(d: int, n: int) -> np.ndarray:
    if d == 2:
        phi = np.linspace(0.0, np.pi / 2.0, n)
        return np.column_stack([np.cos(phi), np.sin(phi)])
    # reticolo baricentrico a + b + c = n sul triangolo sferico positivo
    rows = [(a, b, n - a - b) for a in range(n + 1) for b in range(n + 1 - a)]
    W = np.array(rows, dtype=float)
    return W / np.linalg.norm(W, axis=1)[:, None]


def make_ball_orthant(rho: float, d: int = 2, n: Optional[int] = None) -> Polytope:
    """
    Parte di palla nell'ortante positivo: inviluppo del centro, dei punti a distanza ρ sui
    semiassi positivi e dei campioni della calotta (200 sull'arco per d=2, reticolo di
    passo 1/40 per d=3).
    """
    _require_positive("rho", rho)
    if d not in (2, 3):
        raise ValueError(f"Parte di palla supportata solo per d=2,3 (d={d})")
    n = n or (200 if d == 2 else 40)
    dirs = np.vstack([np.eye(d), _orthant_cap_directions(d, n)])
    rows = [np.append(np.zeros(d), 1.0)] + [_point_at(rho, w) for w in dirs]
    return polytope_from_rows(np.unique(np.round(np.array(rows), 15), axis=0))


# -----------------------------
# Poligoni di Reuleaux
# -----------------------------

def reuleaux_circumradius(k: int, delta: float) -> float:
    """
    Raggio R del cerchio per cui i punti i e i + (k−1)/2 distano δ:
    cosh δ = cosh²R − sinh²R · cos(π(k−1)/k), risolto con brentq.
    """
    alpha = np.pi * (k - 1) / k

    def gap(R):
        return np.cosh(R) ** 2 - np.sinh(R) ** 2 * np.cos(alpha) - np.cosh(delta)

    return float(brentq(gap, 0.0, delta, xtol=1e-14, rtol=1e-14))


def reuleaux_vertices(k: int, delta: float) -> np.ndarray:
    if k < 3 or k % 2 == 0:
        raise ValueError(f"k deve essere dispari e ≥ 3, ricevuto {k}")
    _require_positive("delta", delta)
    R = reuleaux_circumradius(k, delta)
    angles = 2.0 * np.pi * np.arange(k) / k + np.pi / 2.0
    return np.array([_point_at(R, np.array([np.cos(a), np.sin(a)])) for a in angles])


def make_reuleaux(k: int, delta: float) -> BallIntersection:
    V = reuleaux_vertices(k, delta)
    return BallIntersection(tuple(HPoint(v) for v in V), delta)


# -----------------------------
# Corpo con arco equidistante
# -----------------------------

def example1_default_theta(rho: float) -> float:
    """Semiapertura per cui l'angolo bac vale 2π/3: sinh θ = √3 · tanh ρ."""
    return float(np.arcsinh(np.sqrt(3.0) * np.tanh(rho)))


def example1_arc_point(rho: float, s: float) -> np.ndarray:
    """Punto dell'equidistante a distanza ρ dalla retta H = {⟨e₂,p⟩ = 0}, parametro d'arco s."""
    return np.array([np.cosh(rho) * np.sinh(s), np.sinh(rho), np.cosh(rho) * np.cosh(s)])


def example1_line() -> Hyperplane:
    return Hyperplane(np.array([0.0, 1.0, 0.0]))


def example1_arc_params(rho: float, theta: float, n: int) -> np.ndarray:
    s = np.linspace(-theta, theta, n)
    return np.unique(np.append(s, 0.0))


def make_example1(rho: float = 1.0, theta: Optional[float] = None, n: int = 200) -> Polytope:
    """
    Inviluppo di a = o ∈ H e di n campioni dell'arco equidistante tra b e c, simmetrici
    rispetto alla perpendicolare ad H in a. Serve un angolo bac retto o ottuso:
    cos∠bac ≤ 0 ⇔ sinh θ ≥ tanh ρ.
    """
    _require_positive("rho", rho)
    theta = example1_default_theta(rho) if theta is None else theta
    if n < 2:
        raise ValueError(f"Servono almeno 2 campioni d'arco, ricevuti {n}")
    if not np.sinh(theta) >= np.tanh(rho) - 1e-15:
        raise GeometryError("angle condition violated: l'angolo bac deve essere retto o ottuso")
    rows = [np.array([0.0, 0.0, 1.0])]
    rows += [example1_arc_point(rho, s) for s in example1_arc_params(rho, theta, n)]
    return polytope_from_rows(np.array(rows))


def example1_angle(rho: float, theta: float) -> float:
    """Angolo bac in a = o."""
    b = np.array([np.cosh(rho) * np.sinh(theta), np.sinh(rho)])
    c = np.array([-b[0], b[1]])
    return float(np.arccos(np.clip(b @ c / (b @ b), -1.0, 1.0)))


# -----------------------------
# Politopi casuali
# -----------------------------

def random_polytope(d: int, m: int, rng: np.random.Generator, max_radius: float = 1.5) -> Polytope:
    """m punti con direzione uniforme e raggio uniforme in (0.2, max_radius]; estremi via inviluppo."""
    if m < d + 1:
        raise ValueError(f"Servono almeno d+1 = {d + 1} punti, ricevuti {m}")
    while True:
        W = rng.normal(size=(m, d))
        W /= np.linalg.norm(W, axis=1)[:, None]
        r = rng.uniform(0.2, max_radius, size=m)
        V = np.column_stack([np.sinh(r)[:, None] * W, np.cosh(r)])
        try:
            return polytope_from_rows(V)
        except GeometryError:
            continue
