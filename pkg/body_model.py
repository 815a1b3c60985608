#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Body model — rappresentazioni dei corpi convessi in ℍ^d

Cosa fa:
- Polytope: inviluppo convesso iperbolico di un elenco finito di vertici
  (foglio ∩ cono convesso euclideo dei vettori dei vertici). In costruzione la
  rappresentazione viene resa minimale: l'inviluppo iperbolico, letto nel modello
  di Klein, è un inviluppo euclideo, quindi i punti estremi vengono da ConvexHull.
- BallIntersection: intersezione di palle chiuse di raggio comune δ
- Appartenenza (fattibilità di una combinazione non negativa, via NNLS)
- Punto di riferimento interno, supporti nel fascio di una direzione
- Punto più lontano da un iperpiano di supporto
- Discretizzazione delle intersezioni di palle e campionamento del bordo

Tutti i corpi sono immutabili dopo la costruzione.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import List, Tuple

import numpy as np
from scipy.optimize import minimize, nnls
from scipy.spatial import ConvexHull, cKDTree

from lorentz_core import (
    EPS_NORM,
    Ball,
    GeometryError,
    HPoint,
    Hyperplane,
    UnitTangent,
    boost_to,
    klein_rows,
    mink_matrix,
    mink_rows,
    pairwise_dist,
    pencil_hyperplane,
    pencil_params,
    tangent_frame,
    unit_tangent_towards,
)

EPS_CONTACT = 1e-8   # appartenenza all'insieme di contatto
EPS_HULL = 1e-9      # residuo NNLS relativo per l'appartenenza
ARC_MIN_STEP = 1e-7  # passo angolare minimo tra campioni dello stesso arco


# -----------------------------
# Griglie di direzioni
# -----------------------------

def fibonacci_sphere(n: int) -> np.ndarray:
    """n direzioni quasi uniformi su S² (reticolo di Fibonacci)."""
    k = np.arange(n) + 0.5
    z = 1.0 - 2.0 * k / n
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    phi = np.pi * (3.0 - np.sqrt(5.0)) * k
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def direction_grid(d: int, n: int) -> np.ndarray:
    """Direzioni unitarie in ℝ^d: angoli equispaziati per d=2, Fibonacci per d=3."""
    if n < 1:
        raise ValueError(f"Griglia vuota: n = {n}")
    if d == 2:
        theta = 2.0 * np.pi * np.arange(n) / n
        return np.column_stack([np.cos(theta), np.sin(theta)])
    if d == 3:
        return fibonacci_sphere(n)
    raise ValueError(f"Griglia di direzioni supportata solo per d=2,3 (d={d})")


def lorentz_inverse(M: np.ndarray) -> np.ndarray:
    """Inversa di una trasformazione di Lorentz: J Mᵀ J."""
    J = np.ones(M.shape[0])
    J[-1] = -1.0
    return (M.T * J).T * J


def _normalized_mean(V: np.ndarray) -> HPoint:
    return HPoint(V.sum(axis=0))


def _to_sheet(X: np.ndarray) -> np.ndarray:
    """Rinormalizza righe timelike future sul foglio."""
    q = X[:, -1] ** 2 - np.einsum("ij,ij->i", X[:, :-1], X[:, :-1])
    return X / np.sqrt(q)[:, None]


def _dedupe_rows(X: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Elimina i punti a distanza (euclidea, di modello) ≤ tol da uno precedente."""
    pairs = cKDTree(X).query_pairs(r=tol, output_type="ndarray")
    if len(pairs) == 0:
        return X
    drop = np.unique(pairs.max(axis=1))
    return np.delete(X, drop, axis=0)


# -----------------------------
# Polytope
# -----------------------------

@dataclass(frozen=True, eq=False)
class Polytope:
    vertices: Tuple[HPoint, ...]
    # Per i corpi discretizzati: distanza di Hausdorff garantita dal corpo esatto
    # e lunghezza massima degli spigoli di campionamento (0 per i politopi esatti).
    discretization_bound: float = 0.0
    sample_spacing: float = 0.0

    def __post_init__(self):
        pts = [v if isinstance(v, HPoint) else HPoint(v) for v in self.vertices]
        if not pts:
            raise GeometryError("Politopo senza vertici")
        d = pts[0].dim
        if any(p.dim != d for p in pts):
            raise ValueError("Vertici di dimensioni diverse")
        if len(pts) < d + 1:
            raise GeometryError(f"Servono almeno d+1 = {d + 1} vertici, ricevuti {len(pts)}")
        V = np.array([p.coords for p in pts])
        if np.linalg.matrix_rank(V, tol=1e-9 * np.abs(V).max()) < d + 1:
            raise GeometryError("Insieme di vertici degenere (interno vuoto)")
        keep = _extreme_indices(V)
        object.__setattr__(self, "vertices", tuple(pts[i] for i in keep))

    @property
    def dim(self) -> int:
        return self.vertices[0].dim

    @cached_property
    def array(self) -> np.ndarray:
        V = np.array([p.coords for p in self.vertices])
        V.setflags(write=False)
        return V

    @cached_property
    def reference(self) -> HPoint:
        return _normalized_mean(self.array)

    @cached_property
    def _hull(self) -> ConvexHull:
        Binv = lorentz_inverse(boost_to(self.reference))
        return ConvexHull(klein_rows(self.array @ Binv.T))

    @cached_property
    def facet_normals(self) -> np.ndarray:
        """
        Normali di Lorentz unitarie delle faccette, orientate verso l'interno.
        Faccetta di Klein a·y + b ≤ 0  ↔  ⟨n,x⟩ ≥ 0 con n = (−a, b), riportata nel frame globale.
        """
        eq = self._hull.equations
        local = np.hstack([-eq[:, :-1], eq[:, -1:]])
        local /= np.sqrt(np.einsum("ij,ij->i", eq[:, :-1], eq[:, :-1]) - eq[:, -1] ** 2)[:, None]
        N = local @ boost_to(self.reference).T
        N.setflags(write=False)
        return N

    @cached_property
    def facets(self) -> np.ndarray:
        """Indici dei vertici di ogni faccetta (simplessi di qhull)."""
        return self._hull.simplices

    @cached_property
    def edges(self) -> List[Tuple[int, int]]:
        out = set()
        for simplex in self._hull.simplices:
            s = sorted(int(i) for i in simplex)
            for a in range(len(s)):
                for b in range(a + 1, len(s)):
                    out.add((s[a], s[b]))
        return sorted(out)

    @cached_property
    def boundary_order(self) -> List[int]:
        """Vertici in ordine ciclico antiorario (d=2)."""
        if self.dim != 2:
            raise ValueError("Ordine ciclico definito solo per d=2")
        return [int(i) for i in self._hull.vertices]

    def facet_hyperplanes(self) -> List[Hyperplane]:
        return [Hyperplane(n) for n in self.facet_normals]

    def clearance(self, X: np.ndarray) -> np.ndarray:
        """min_f ⟨n_f, x⟩ per ogni riga: ≥ 0 dentro, < 0 fuori."""
        return mink_matrix(np.atleast_2d(X), self.facet_normals).min(axis=1)

    def transformed(self, M: np.ndarray) -> "Polytope":
        return Polytope(tuple(HPoint(M @ p.coords) for p in self.vertices),
                        self.discretization_bound, self.sample_spacing)


def _extreme_indices(V: np.ndarray) -> List[int]:
    """Indici dei punti estremi (pass di contenimento via inviluppo di Klein)."""
    Binv = lorentz_inverse(boost_to(_normalized_mean(V)))
    try:
        hull = ConvexHull(klein_rows(V @ Binv.T))
    except Exception as exc:  # QhullError: insieme piatto o degenere
        raise GeometryError(f"Insieme di vertici degenere: {exc}") from exc
    return sorted(int(i) for i in set(hull.vertices))


def polytope_from_rows(V: np.ndarray, **kwargs) -> Polytope:
    return Polytope(tuple(HPoint(row) for row in np.atleast_2d(V)), **kwargs)


# -----------------------------
# Intersezione di palle
# -----------------------------

@dataclass(frozen=True, eq=False)
class BallIntersection:
    centers: Tuple[HPoint, ...]
    radius: float

    def __post_init__(self):
        pts = tuple(c if isinstance(c, HPoint) else HPoint(c) for c in self.centers)
        if not pts:
            raise GeometryError("Intersezione di palle senza centri")
        if not self.radius > 0.0:
            raise ValueError(f"Raggio deve essere > 0, ricevuto {self.radius}")
        d = pts[0].dim
        if any(p.dim != d for p in pts):
            raise ValueError("Centri di dimensioni diverse")
        C = np.array([p.coords for p in pts])
        if len(pts) > 1 and pairwise_dist(C, C).max() > 2.0 * self.radius + EPS_NORM:
            raise GeometryError("Distanza tra centri > 2δ: interno vuoto")
        object.__setattr__(self, "centers", pts)

    @property
    def dim(self) -> int:
        return self.centers[0].dim

    @cached_property
    def array(self) -> np.ndarray:
        C = np.array([p.coords for p in self.centers])
        C.setflags(write=False)
        return C

    def contains_rows(self, X: np.ndarray, tol: float = EPS_NORM) -> np.ndarray:
        X = np.atleast_2d(X)
        return (-mink_matrix(X, self.array)).max(axis=1) <= np.cosh(self.radius) * (1.0 + tol)

    @classmethod
    def from_ball(cls, ball: Ball) -> "BallIntersection":
        return cls((ball.center,), ball.radius)

    @property
    def balls(self) -> Tuple[Ball, ...]:
        return tuple(Ball(c, self.radius) for c in self.centers)

    def transformed(self, M: np.ndarray) -> "BallIntersection":
        return BallIntersection(tuple(HPoint(M @ c.coords) for c in self.centers), self.radius)


@dataclass(frozen=True)
class PencilSupport:
    t_minus: float
    t_plus: float
    contact_minus: List[int]
    contact_plus: List[int]
    H_minus: Hyperplane
    H_plus: Hyperplane


# -----------------------------
# Operazioni
# -----------------------------

def hull_contains(P: Polytope, p: HPoint) -> bool:
    """p ∈ conv(P) ⇔ p = Σ λᵢ vᵢ con λᵢ ≥ 0 (cono dei vertici ∩ foglio)."""
    x = p.coords
    _, residual = nnls(P.array.T, x)
    return bool(residual <= EPS_HULL * max(1.0, float(np.linalg.norm(x))))


def interior_reference(P: Polytope) -> HPoint:
    """Media di Minkowski normalizzata dei vertici: o = w/√(−⟨w,w⟩), w = Σ vᵢ."""
    return P.reference


def _require_interior(P: Polytope, p: HPoint) -> None:
    if P.clearance(p.coords)[0] <= EPS_NORM or not hull_contains(P, p):
        raise GeometryError("La base della direzione non è interna al corpo")


def pencil_support(P: Polytope, direction: UnitTangent, eps_contact: float = EPS_CONTACT) -> PencilSupport:
    """I due iperpiani di supporto del fascio ortogonale alla geodetica di `direction`."""
    _require_interior(P, direction.base)
    t = pencil_params(direction.base.coords, direction.u.coords[None, :], P.array)[0]
    i_min, i_max = int(np.argmin(t)), int(np.argmax(t))
    t_minus, t_plus = float(t[i_min]), float(t[i_max])
    return PencilSupport(
        t_minus=t_minus,
        t_plus=t_plus,
        contact_minus=[int(i) for i in np.flatnonzero(t - t_minus <= eps_contact)],
        contact_plus=[int(i) for i in np.flatnonzero(t_plus - t <= eps_contact)],
        H_minus=pencil_hyperplane(direction, t_minus),
        H_plus=pencil_hyperplane(direction, t_plus).flipped(),
    )


def farthest_from_hyperplane(P: Polytope, H: Hyperplane) -> Tuple[HPoint, float]:
    """
    Punto di P più lontano da H e la sua distanza arcsinh(max_v ⟨n,v⟩).
    La distanza da un iperpiano è geodeticamente convessa: il massimo è in un vertice.
    """
    s = mink_rows(P.array, H.n)
    if s.min() < -EPS_CONTACT:
        raise GeometryError("L'iperpiano taglia il corpo")
    i = int(np.argmax(s))
    return P.vertices[i], float(np.arcsinh(s[i]))


def contact_indices(P: Polytope, H: Hyperplane, tol: float = EPS_CONTACT) -> List[int]:
    """Vertici sull'iperpiano (distanza ≤ tol)."""
    return [int(i) for i in np.flatnonzero(np.abs(np.arcsinh(mink_rows(P.array, H.n))) <= tol)]


def boundary_sample(P: Polytope, n: int) -> List[HPoint]:
    """n punti di bordo: raggi geodetici dal riferimento interno fino all'uscita dal politopo."""
    return [HPoint(x) for x in boundary_rows(P, n)]


def boundary_rows(P: Polytope, n: int) -> np.ndarray:
    """
    Come boundary_sample, in righe di coordinate. Lungo γ(s) = cosh s·o + sinh s·u la
    faccetta f viene attraversata dove tanh s = ⟨n_f,o⟩ / (−⟨n_f,u⟩): l'uscita è il minimo
    su f, in forma chiusa.
    """
    o = P.reference
    U = direction_grid(P.dim, n) @ tangent_frame(o)
    a = mink_rows(P.facet_normals, o)                 # > 0: o interno
    c = mink_matrix(U, P.facet_normals)               # (n, F)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(c < 0.0, a[None, :] / -c, np.inf)
        s = np.where(ratio < 1.0, np.arctanh(np.minimum(ratio, 1.0 - 1e-16)), np.inf)
    s_exit = s.min(axis=1)
    return np.cosh(s_exit)[:, None] * o.coords[None, :] + np.sinh(s_exit)[:, None] * U


def truncate_vertex(P: Polytope, i: int, offset: float) -> Polytope:
    """
    Taglia il vertice i con l'iperpiano ortogonale alla geodetica verso il riferimento,
    a distanza `offset` dal vertice. Restituisce conv(P ∩ semispazio lontano dal vertice).
    """
    direction = unit_tangent_towards(P.vertices[i], P.reference)
    n = pencil_hyperplane(direction, offset).n.coords
    V = P.array
    s = mink_rows(V, n)
    pos, neg = np.flatnonzero(s >= 0.0), np.flatnonzero(s < 0.0)
    # punto di ab su G: ⟨n,b⟩·a − ⟨n,a⟩·b, coefficienti entrambi positivi
    cuts = [s[b] * V[a] - s[a] * V[b] for a in neg for b in pos]
    rows = np.vstack([V[pos]] + ([np.array(cuts)] if cuts else []))
    return polytope_from_rows(_dedupe_rows(_to_sheet(rows)))


# -----------------------------
# Discretizzazione
# -----------------------------

def _allowed_arcs(start: np.ndarray, length: np.ndarray) -> List[Tuple[float, float]]:
    """
    Complementare in [0, 2π) dell'unione di archi proibiti aperti (start, start+length).
    Restituisce archi consentiti (inizio, lunghezza); un cerchio intero è (0, 2π).
    """
    two_pi = 2.0 * np.pi
    if start.size == 0:
        return [(0.0, two_pi)]
    if np.any(length >= two_pi):
        return []
    s = np.mod(start, two_pi)
    # ogni arco e la sua copia traslata di −2π coprono la finestra [0, 2π]
    lo = np.concatenate([s, s - two_pi])
    hi = np.concatenate([s + length, s + length - two_pi])
    order = np.argsort(lo, kind="stable")
    lo, hi = lo[order], hi[order]
    cursor = np.maximum(np.concatenate([[0.0], np.maximum.accumulate(hi)[:-1]]), 0.0)
    open_gap = (lo > cursor) & (cursor < two_pi)
    gaps = [(float(a), float(min(b, two_pi))) for a, b in zip(cursor[open_gap], lo[open_gap])]
    end = max(float(hi.max()), 0.0)
    if end < two_pi:
        gaps.append((end, two_pi))
    gaps = [(a, b) for a, b in gaps if b - a > 1e-15]
    # fusione dell'arco che attraversa 0
    if len(gaps) >= 2 and gaps[0][0] == 0.0 and gaps[-1][1] == two_pi:
        a_last, _ = gaps.pop()
        _, b_first = gaps.pop(0)
        gaps.append((a_last, b_first + two_pi))
    return [(a, b - a) for a, b in gaps]


def _sag(radius: float, chord: float) -> float:
    """Distanza massima tra un arco di cerchio di raggio `radius` e la sua corda."""
    return float(radius - np.arccosh(np.cosh(radius) / np.cosh(chord / 2.0)))


def boundary_arcs(B: BallIntersection) -> List[Tuple[int, float, float]]:
    """
    Archi di bordo di un'intersezione di palle in ℍ²: (indice del centro, φ₀, ampiezza),
    con φ misurato nel frame tangente del centro. Il punto φ del cerchio i è in B_j
    se cos(φ − ψ_j) ≤ κ_j = cosh δ·(1 − A_j)/(sinh δ·R_j).
    """
    if B.dim != 2:
        raise ValueError(f"Archi di bordo definiti solo per d=2 (d={B.dim})")
    ch, sh = np.cosh(B.radius), np.sinh(B.radius)
    C = B.array
    out = []
    for i, c in enumerate(B.centers):
        E = tangent_frame(c)
        others = np.delete(C, i, axis=0)
        A = -mink_rows(others, c)
        P = -mink_rows(others, E[0])
        Q = -mink_rows(others, E[1])
        R = np.hypot(P, Q)
        moving = R > 1e-14
        if np.any(~moving & (A > 1.0 + 1e-12)):
            continue
        kappa = ch * (1.0 - A[moving]) / (sh * R[moving])
        if np.any(kappa < -1.0):
            continue
        alpha = np.arccos(np.clip(kappa, -1.0, 1.0))
        psi = np.arctan2(Q[moving], P[moving])
        out.extend((i, phi0, span) for phi0, span in _allowed_arcs(psi - alpha, 2.0 * alpha))
    return out


def arc_points(B: BallIntersection, i: int, phi: np.ndarray) -> np.ndarray:
    """Punti φ del cerchio di bordo centrato nel centro i."""
    c = B.centers[i]
    E = tangent_frame(c)
    return (np.cosh(B.radius) * c.coords[None, :]
            + np.sinh(B.radius) * (np.cos(phi)[:, None] * E[0] + np.sin(phi)[:, None] * E[1]))


def _discretize_plane(B: BallIntersection, n: int) -> Tuple[np.ndarray, float, float]:
    delta = B.radius
    sh = np.sinh(delta)
    rows, bound, spacing = [], 0.0, 0.0
    for i, phi0, span in boundary_arcs(B):
        if span < ARC_MIN_STEP:
            # arco degenere (il cerchio tocca l'intersezione in un punto)
            rows.append(arc_points(B, i, np.array([phi0 + span / 2.0])))
            continue
        full = span >= 2.0 * np.pi - 1e-15
        k = max(int(n), 2 if not full else 3)
        k = min(k, int(span / ARC_MIN_STEP) + 1)
        phi = phi0 + (np.arange(k) * span / k if full else np.linspace(0.0, span, k))
        step = span / k if full else span / (k - 1)
        rows.append(arc_points(B, i, phi))
        chord = 2.0 * np.arcsinh(sh * np.sin(step / 2.0))
        spacing = max(spacing, chord)
        bound = max(bound, _sag(delta, chord))
    if not rows:
        raise GeometryError("Intersezione di palle vuota o degenere")
    return _dedupe_rows(np.vstack(rows)), bound, spacing


def _ray_exit(B: BallIntersection, o: HPoint, U: np.ndarray) -> np.ndarray:
    """
    Parametro d'uscita di γ(s) = cosh s·o + sinh s·u da ogni palla:
    a·cosh s + b·sinh s = cosh δ con a = −⟨o,c⟩, b = −⟨u,c⟩, radice positiva in e^s.
    """
    a = -mink_rows(B.array, o)                  # (m,)
    b = -mink_matrix(U, B.array)                # (k, m)
    C = np.cosh(B.radius)
    disc = np.sqrt(np.maximum(C * C - a[None, :] ** 2 + b ** 2, 0.0))
    s = np.log((C + disc) / (a[None, :] + b))
    return s.min(axis=1)


def _chebyshev_center(B: BallIntersection) -> HPoint:
    """
    Punto che minimizza la distanza massima dai centri: min t con t ≥ −⟨c,p⟩ per ogni centro
    (SLSQP sull'epigrafo, p sollevato dalle coordinate spaziali). Parte dal centro medio
    e lo tiene se l'ottimizzatore non fa meglio.
    """
    C = B.array
    mean = HPoint(C.sum(axis=0))

    def lift(y):
        return np.append(y, np.sqrt(1.0 + y @ y))

    def worst(p):
        return float((-mink_rows(C, p)).max())

    if len(C) == 1:
        return mean
    z0 = np.append(mean.coords[:-1], worst(mean.coords))
    res = minimize(lambda z: z[-1], z0, method="SLSQP",
                   constraints=[{"type": "ineq", "fun": lambda z: z[-1] + mink_rows(C, lift(z[:-1]))}],
                   options={"ftol": 1e-12, "maxiter": 200})
    best = lift(res.x[:-1])
    return HPoint(best) if worst(best) < worst(mean.coords) else mean


def _discretize_space(B: BallIntersection, n: int) -> Tuple[np.ndarray, float, float]:
    o = _chebyshev_center(B)
    if (-mink_rows(B.array, o)).max() >= np.cosh(B.radius):
        raise GeometryError("Intersezione di palle vuota o degenere")
    U = direction_grid(B.dim, n) @ tangent_frame(o)
    s = _ray_exit(B, o, U)
    X = np.cosh(s)[:, None] * o.coords[None, :] + np.sinh(s)[:, None] * U
    D = pairwise_dist(X, X)
    np.fill_diagonal(D, np.inf)
    spacing = float(D.min(axis=1).max())
    # stima: freccia di una calotta con apertura pari alla spaziatura
    bound = _sag(float(s.max()), spacing)
    return X, bound, spacing


def discretize(B: BallIntersection, n: int) -> Polytope:
    """
    Politopo inscritto con vertici su bd(B).
    d=2: n punti per ogni arco di bordo (estremi inclusi; n punti per un cerchio intero),
         limite di Hausdorff esatto = freccia massima delle corde.
    d=3: n raggi di Fibonacci dal punto interno più lontano dal bordo delle palle (centro di
         Chebyshev dei centri), limite stimato dalla spaziatura.
    """
    if n < 1:
        raise ValueError(f"n deve essere ≥ 1, ricevuto {n}")
    if B.dim == 2:
        X, bound, spacing = _discretize_plane(B, n)
    elif B.dim == 3:
        X, bound, spacing = _discretize_space(B, n)
    else:
        raise ValueError(f"Discretizzazione supportata solo per d=2,3 (d={B.dim})")
    return polytope_from_rows(X, discretization_bound=bound, sample_spacing=spacing)
