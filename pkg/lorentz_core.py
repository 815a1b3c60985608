#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Lorentz core — primitive del modello dell'iperboloide per ℍ^d

Cosa fa:
- Forma bilineare di Minkowski ⟨u,v⟩ = Σ_{i≤d} uᵢvᵢ − u_{d+1}v_{d+1}
- Punti sul foglio superiore (⟨p,p⟩ = −1, ultima coordinata ≥ 1)
- Vettori tangenti unitari, iperpiani (normale spacelike unitaria), strisce equidistanti, palle
- Distanze punto-punto, punto-iperpiano (con segno), iperpiano-iperpiano
- Geodetiche, proiezione ortogonale su un iperpiano
- Fascio di iperpiani ortogonali a una geodetica e parametro di fascio di un punto
- Conversioni Klein / Poincaré
- Isometrie di Lorentz (boost, rotazioni) per i frame tangenti e i test di equivarianza

Convenzioni:
- Ogni costruttore rinormalizza (proiezione sul foglio / sulla shell di de Sitter),
  un piccolo drift numerico non è mai un errore.
- Orientazione: un iperpiano passato alle operazioni sui corpi ha il corpo in {p : ⟨n,p⟩ ≥ 0}.
- Tutti i tipi sono immutabili: le funzioni sono pure e thread-safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

# -----------------------------
# Costanti numeriche
# -----------------------------

EPS_NORM = 1e-10   # invarianti sul foglio / shell unitaria (relativa)
EPS_CLASS = 1e-9   # classificazione intersecanti / parallele / ultraparallele
_UNIT_SLACK = 8.0 * np.finfo(float).eps   # scarto di arrotondamento ammesso su ⟨x,x⟩ = ±1

INTERSECTING = "intersecting"
BOUNDARY_PARALLEL = "boundary_parallel"
ULTRAPARALLEL = "ultraparallel"


class GeometryError(ValueError):
    """Precondizione geometrica violata (punto fuori dal foglio, iperpiano che taglia il corpo, ...)."""


# -----------------------------
# Forma bilineare
# -----------------------------

def _coords(x) -> np.ndarray:
    """Estrae l'array di coordinate da LorentzVector / HPoint / Hyperplane / array."""
    if isinstance(x, LorentzVector):
        return x.coords
    if isinstance(x, HPoint):
        return x.v.coords
    if isinstance(x, Hyperplane):
        return x.n.coords
    return np.asarray(x, dtype=float)


def mink(u, v) -> float:
    """⟨u,v⟩ di Minkowski. Errore se le dimensioni non coincidono."""
    a, b = _coords(u), _coords(v)
    if a.shape != b.shape:
        raise ValueError(f"Dimensioni diverse: {a.shape} vs {b.shape}")
    return float(np.dot(a[:-1], b[:-1]) - a[-1] * b[-1])


def mink_rows(A: np.ndarray, b) -> np.ndarray:
    """⟨Aᵢ, b⟩ per ogni riga di A."""
    b = _coords(b)
    return A[:, :-1] @ b[:-1] - A[:, -1] * b[-1]


def mink_matrix(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Matrice ⟨Aᵢ, Bⱼ⟩."""
    return A[:, :-1] @ B[:, :-1].T - np.outer(A[:, -1], B[:, -1])


# -----------------------------
# Tipi
# -----------------------------

@dataclass(frozen=True, eq=False)
class LorentzVector:
    coords: np.ndarray  # d+1 coordinate del modello

    def __post_init__(self):
        a = np.array(self.coords, dtype=float).reshape(-1)
        if a.size < 3:
            raise ValueError(f"Servono almeno 3 coordinate (d ≥ 2), ricevute {a.size}")
        if not np.all(np.isfinite(a)):
            raise ValueError(f"Coordinate non finite: {a}")
        a.setflags(write=False)
        object.__setattr__(self, "coords", a)

    @property
    def dim(self) -> int:
        return self.coords.size - 1


@dataclass(frozen=True, eq=False)
class HPoint:
    v: LorentzVector

    def __post_init__(self):
        v = self.v if isinstance(self.v, LorentzVector) else LorentzVector(self.v)
        x = v.coords
        q = -(np.dot(x[:-1], x[:-1]) - x[-1] * x[-1])
        if q <= 0.0 or x[-1] <= 0.0:
            raise GeometryError(f"Vettore non sul foglio superiore: {x}")
        # già normalizzato: nessuna divisione, la rinormalizzazione è idempotente
        object.__setattr__(self, "v", LorentzVector(x if abs(q - 1.0) <= _UNIT_SLACK * x[-1] * x[-1] else x / np.sqrt(q)))

    @property
    def coords(self) -> np.ndarray:
        return self.v.coords

    @property
    def dim(self) -> int:
        return self.v.dim

    @classmethod
    def origin(cls, d: int) -> "HPoint":
        o = np.zeros(d + 1)
        o[-1] = 1.0
        return cls(o)

    @classmethod
    def lift(cls, spatial) -> "HPoint":
        """Punto con le prime d coordinate assegnate: x_{d+1} = √(1 + |x|²)."""
        x = np.asarray(spatial, dtype=float)
        return cls(np.append(x, np.sqrt(1.0 + x @ x)))


@dataclass(frozen=True, eq=False)
class UnitTangent:
    base: HPoint
    u: LorentzVector

    def __post_init__(self):
        b = self.base.coords
        u = _coords(self.u)
        # proiezione sul tangente in base: u + ⟨u,b⟩ b
        u = u + mink(u, b) * b
        q = mink(u, u)
        if q <= EPS_NORM:
            raise GeometryError("Vettore tangente nullo o non spacelike")
        object.__setattr__(self, "u", LorentzVector(u / np.sqrt(q)))

    def reversed(self) -> "UnitTangent":
        return UnitTangent(self.base, -self.u.coords)


@dataclass(frozen=True, eq=False)
class Hyperplane:
    n: LorentzVector  # normale spacelike unitaria

    def __post_init__(self):
        n = _coords(self.n)
        q = mink(n, n)
        if q <= EPS_NORM:
            raise GeometryError(f"Normale non spacelike: ⟨n,n⟩ = {q}")
        object.__setattr__(self, "n", LorentzVector(n if abs(q - 1.0) <= _UNIT_SLACK * float(n @ n) else n / np.sqrt(q)))

    def flipped(self) -> "Hyperplane":
        return Hyperplane(-self.n.coords)

    def oriented_towards(self, p: HPoint) -> "Hyperplane":
        """Stesso iperpiano, orientato in modo che p stia dal lato ⟨n,p⟩ ≥ 0."""
        return self if mink(self.n, p) >= 0.0 else self.flipped()


@dataclass(frozen=True)
class EquidistantStrip:
    h: Hyperplane
    rho: float

    def __post_init__(self):
        if not self.rho >= 0.0:
            raise ValueError(f"rho deve essere ≥ 0, ricevuto {self.rho}")


@dataclass(frozen=True)
class Ball:
    center: HPoint
    radius: float

    def __post_init__(self):
        if not self.radius > 0.0:
            raise ValueError(f"Raggio deve essere > 0, ricevuto {self.radius}")

    def contains(self, p: HPoint, tol: float = EPS_NORM) -> bool:
        return dist_pp(self.center, p) <= self.radius + tol


Transformable = Union[HPoint, Hyperplane, UnitTangent, np.ndarray]


# -----------------------------
# Distanze e geodetiche
# -----------------------------

def dist_pp(p: HPoint, q: HPoint) -> float:
    """
    d(p,q) = arccosh(−⟨p,q⟩), calcolata come 2·arcsinh(‖p−q‖/2) che è stabile per
    punti vicini (cosh d = 1 + ‖p−q‖²/2). Punti coincidenti danno esattamente 0.
    """
    diff = p.coords - q.coords
    s2 = mink(diff, diff)
    if s2 < 0.0:
        scale = max(1.0, abs(mink(p, q)))
        if s2 >= -EPS_NORM * scale:
            return 0.0
        raise GeometryError("Punti non sul foglio: ⟨p−q,p−q⟩ < 0")
    return float(2.0 * np.arcsinh(np.sqrt(s2) / 2.0))


def pairwise_dist(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Matrice delle distanze tra righe di A e righe di B (punti sul foglio)."""
    return np.arccosh(np.maximum(-mink_matrix(A, B), 1.0))


def geodesic_point(direction: UnitTangent, t: float) -> HPoint:
    """γ(t) = cosh t · base + sinh t · u."""
    return HPoint(np.cosh(t) * direction.base.coords + np.sinh(t) * direction.u.coords)


def unit_tangent_towards(p: HPoint, q: HPoint) -> UnitTangent:
    """Direzione in p della geodetica verso q."""
    if dist_pp(p, q) == 0.0:
        raise GeometryError("Direzione indefinita: punti coincidenti")
    return UnitTangent(p, q.coords + mink(p, q) * p.coords)


def midpoint(p: HPoint, q: HPoint) -> HPoint:
    """Punto medio del segmento geodetico pq."""
    return HPoint(p.coords + q.coords)


# -----------------------------
# Iperpiani
# -----------------------------

def signed_dist_ph(p: HPoint, H: Hyperplane) -> float:
    """Distanza con segno: arcsinh(⟨n,p⟩), positiva dal lato orientato."""
    return float(np.arcsinh(mink(H.n, p)))


def hyperplane_through(p: HPoint, u) -> Hyperplane:
    """Iperpiano per p ortogonale alla direzione u in p; u punta verso il lato positivo."""
    return Hyperplane(UnitTangent(p, u).u.coords)


def project_ph(p: HPoint, H: Hyperplane) -> HPoint:
    """Piede della perpendicolare: h = (p − ⟨n,p⟩n)/√(1+⟨n,p⟩²)."""
    s = mink(H.n, p)
    return HPoint((p.coords - s * H.n.coords) / np.sqrt(1.0 + s * s))


def hyperplane_relation(H1: Hyperplane, H2: Hyperplane) -> str:
    c = abs(mink(H1.n, H2.n))
    if c > 1.0 + EPS_CLASS:
        return ULTRAPARALLEL
    if c >= 1.0 - EPS_CLASS:
        return BOUNDARY_PARALLEL
    return INTERSECTING


def dist_hh(H1: Hyperplane, H2: Hyperplane) -> float:
    """Lunghezza della perpendicolare comune di due iperpiani ultraparalleli."""
    relation = hyperplane_relation(H1, H2)
    if relation != ULTRAPARALLEL:
        raise GeometryError(f"Iperpiani non ultraparalleli ({relation})")
    return float(np.arccosh(abs(mink(H1.n, H2.n))))


def hyperplane_angle(H1: Hyperplane, H2: Hyperplane) -> float:
    """Angolo tra le normali di due iperpiani intersecanti."""
    c = mink(H1.n, H2.n)
    if abs(c) >= 1.0 - EPS_CLASS:
        raise GeometryError("Angolo definito solo per iperpiani intersecanti")
    return float(np.arccos(np.clip(c, -1.0, 1.0)))


def pencil_hyperplane(direction: UnitTangent, t: float) -> Hyperplane:
    """
    Iperpiano del fascio ortogonale alla geodetica di `direction` in γ(t):
    n(t) = sinh t · base + cosh t · u.
    Orientazione grezza: γ(s) con s < t sta dal lato negativo (i chiamanti invertono).
    """
    return Hyperplane(np.sinh(t) * direction.base.coords + np.cosh(t) * direction.u.coords)


def pencil_param(direction: UnitTangent, p: HPoint) -> float:
    """L'unico t con p ∈ pencil_hyperplane(direction, t)."""
    return float(pencil_params(direction.base.coords, direction.u.coords[None, :], p.coords[None, :])[0, 0])


def pencil_params(base: np.ndarray, U: np.ndarray, V: np.ndarray) -> np.ndarray:
    """
    Parametri di fascio t[i, j] dei punti V[j] lungo le direzioni U[i] (tangenti in base).
    t = artanh(−⟨u,p⟩/⟨b,p⟩) = ½ ln(⟨b−u,p⟩/⟨b+u,p⟩); b±u sono vettori nulli futuri,
    quindi entrambi i prodotti sono < 0 per ogni p sul foglio.
    """
    a = mink_rows(V, base)          # ⟨b,p⟩ < 0
    c = mink_matrix(U, V)           # ⟨u,p⟩
    return 0.5 * np.log((a[None, :] - c) / (a[None, :] + c))


def in_strip(p: HPoint, strip: EquidistantStrip) -> bool:
    """0 ≤ ⟨n,p⟩ ≤ sinh(rho), con tolleranza EPS_NORM."""
    s = mink(strip.h.n, p)
    top = np.sinh(strip.rho)
    return bool(-EPS_NORM <= s <= top + EPS_NORM * max(1.0, top))


# -----------------------------
# Modelli di Klein e Poincaré
# -----------------------------

def to_klein(p: HPoint) -> np.ndarray:
    x = p.coords
    return x[:-1] / x[-1]


def from_klein(y) -> HPoint:
    y = np.asarray(y, dtype=float)
    r2 = float(y @ y)
    if r2 >= 1.0:
        raise GeometryError(f"Punto ideale o ultra-ideale: |y|² = {r2}")
    return HPoint(np.append(y, 1.0) / np.sqrt(1.0 - r2))


def to_poincare(p: HPoint) -> np.ndarray:
    x = p.coords
    return x[:-1] / (1.0 + x[-1])


def from_poincare(y) -> HPoint:
    y = np.asarray(y, dtype=float)
    r2 = float(y @ y)
    if r2 >= 1.0:
        raise GeometryError(f"Punto ideale o ultra-ideale: |y|² = {r2}")
    return HPoint(np.append(2.0 * y, 1.0 + r2) / (1.0 - r2))


def klein_rows(V: np.ndarray) -> np.ndarray:
    return V[:, :-1] / V[:, -1:]


# -----------------------------
# Isometrie di Lorentz
# -----------------------------

def boost_to(p: HPoint) -> np.ndarray:
    """Boost puro B con B·o = p (o = (0,…,0,1)); le prime d colonne sono un frame tangente in p."""
    x = p.coords[:-1]
    x0 = p.coords[-1]
    d = x.size
    B = np.empty((d + 1, d + 1))
    B[:d, :d] = np.eye(d) + np.outer(x, x) / (1.0 + x0)
    B[:d, d] = x
    B[d, :d] = x
    B[d, d] = x0
    return B


def tangent_frame(p: HPoint) -> np.ndarray:
    """d vettori tangenti ortonormali in p (righe)."""
    return boost_to(p)[:, :-1].T.copy()


def random_isometry(d: int, rng: np.random.Generator, max_shift: float = 1.0) -> np.ndarray:
    """Isometria casuale di SO⁺(d,1): rotazione attorno a o seguita da un boost."""
    Q, R = np.linalg.qr(rng.normal(size=(d, d)))
    Q = Q * np.sign(np.diag(R))
    if np.linalg.det(Q) < 0:
        Q[:, 0] = -Q[:, 0]
    rot = np.eye(d + 1)
    rot[:d, :d] = Q
    w = rng.normal(size=d)
    w /= np.linalg.norm(w)
    target = geodesic_point(UnitTangent(HPoint.origin(d), np.append(w, 0.0)), rng.uniform(0.0, max_shift))
    return boost_to(target) @ rot


def apply_isometry(M: np.ndarray, obj: Transformable):
    """Applica M a punti, iperpiani, direzioni o righe di coordinate."""
    if isinstance(obj, HPoint):
        return HPoint(M @ obj.coords)
    if isinstance(obj, Hyperplane):
        return Hyperplane(M @ obj.n.coords)
    if isinstance(obj, UnitTangent):
        return UnitTangent(HPoint(M @ obj.base.coords), M @ obj.u.coords)
    return np.asarray(obj, dtype=float) @ M.T
