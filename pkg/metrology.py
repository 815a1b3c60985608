#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Metrology — larghezza, spessore, diametro e verifiche sui corpi convessi di ℍ^d

Cosa fa:
- width_H(C): distanza massima tra H e un punto di C (massimo sui vertici)
- larghezza nella direzione di un fascio (lato plus/minus)
- diametro (coppia di vertici più lontana)
- larghezza massima e spessore: griglia di direzioni + compass search + rifinitura Nelder–Mead;
  lo spessore considera anche candidati esatti (iperpiani delle faccette e, per piccoli
  politopi in d=3, iperpiani per uno spigolo ortogonali alla perpendicolare comune con
  uno spigolo opposto)
- verifiche: larghezza costante, diametro costante, completezza, stretta convessità,
  falsificatore di riducibilità (solo unilaterale), completamento greedy
- verifiche dei risultati: striscia del diametro, striscia equidistante, proiezione del
  punto più lontano sull'iperpiano di spessore minimo

Tolleranze: i corpi discretizzati (BallIntersection) portano il loro limite di Hausdorff,
che viene sommato alla tolleranza richiesta nelle verifiche.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import minimize, nnls

from body_model import (
    EPS_CONTACT,
    BallIntersection,
    Polytope,
    boundary_rows,
    discretize,
    direction_grid,
    farthest_from_hyperplane,
    pencil_support,
    polytope_from_rows,
    truncate_vertex,
)
from lorentz_core import (
    EPS_NORM,
    EquidistantStrip,
    GeometryError,
    HPoint,
    Hyperplane,
    UnitTangent,
    in_strip,
    mink,
    mink_matrix,
    mink_rows,
    pairwise_dist,
    pencil_params,
    project_ph,
    tangent_frame,
    unit_tangent_towards,
)

Body = Union[Polytope, BallIntersection]

CHUNK = 256            # direzioni per blocco di valutazione
TOP_CELLS = 4          # celle della griglia da cui parte la rifinitura
STEP_MIN = 1e-7        # passo minimo della compass search (radianti)
EDGE_PAIR_MAX_VERTICES = 24


class TheoremInapplicable(GeometryError):
    """Ipotesi di unicità del punto più lontano non soddisfatta: verdetto 'inapplicable'."""


# -----------------------------
# Config
# -----------------------------

def _threads_from_env() -> int:
    try:
        return max(0, int(os.environ.get("HYPWIDTH_THREADS", "0") or 0))
    except ValueError:
        return 0


@dataclass
class MetrologyConfig:
    tol: float = 1e-3
    grid: Optional[int] = None          # None -> 720 (d=2) / 4096 (d=3)
    refine_iters: int = 40              # dimezzamenti massimi del passo della compass search
    threads: int = field(default_factory=_threads_from_env)   # 0 = auto
    eps_contact: float = EPS_CONTACT
    n_arc: int = 500                    # punti per arco (discretizzazione d=2)
    n_rays: int = 2000                  # raggi (discretizzazione d=3)
    n_boundary: int = 2000              # campioni di bordo per le verifiche

    def grid_for(self, d: int) -> int:
        if self.grid:
            return int(self.grid)
        return 720 if d == 2 else 4096

    def discretization_n(self, d: int) -> int:
        return self.n_arc if d == 2 else self.n_rays


DEFAULT_CONFIG = MetrologyConfig()


# -----------------------------
# Report
# -----------------------------

@dataclass(frozen=True)
class WidthReport:
    value: float
    hyperplane: Hyperplane
    far_point: HPoint
    far_hyperplane: Hyperplane


@dataclass(frozen=True)
class ThicknessReport:
    value: float
    direction: UnitTangent
    hyperplane: Hyperplane
    grid_size: int
    refined: bool
    source: str = "grid"   # grid | facet | edge_pair


@dataclass(frozen=True)
class CheckReport:
    passed: bool
    target: float
    spread: float
    worst_witness: object
    tolerance: float
    details: Dict[str, object] = field(default_factory=dict)


# -----------------------------
# Helpers
# -----------------------------

def as_polytope(body: Body, cfg: MetrologyConfig = DEFAULT_CONFIG) -> Polytope:
    """I corpi BallIntersection vengono discretizzati prima di ogni misura."""
    if isinstance(body, BallIntersection):
        return discretize(body, cfg.discretization_n(body.dim))
    return body


def _effective_tol(P: Polytope, tol: float) -> float:
    return tol + 2.0 * P.discretization_bound


def _chunked(fn: Callable[[np.ndarray], np.ndarray], X: np.ndarray, threads: int) -> np.ndarray:
    """Valuta fn su blocchi di righe, in parallelo se threads != 1 (numpy rilascia il GIL)."""
    blocks = [X[i:i + CHUNK] for i in range(0, len(X), CHUNK)]
    if len(blocks) <= 1 or threads == 1:
        return np.concatenate([fn(b) for b in blocks])
    workers = threads if threads > 0 else min(8, os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return np.concatenate(list(pool.map(fn, blocks)))


def _widths_plus(V: np.ndarray, o: np.ndarray, U: np.ndarray) -> np.ndarray:
    """Larghezze determinate da H⁺(u) (supporto al parametro massimo) per ogni riga u di U."""
    t = pencil_params(o, U, V).max(axis=1)
    N = -(np.sinh(t)[:, None] * o[None, :] + np.cosh(t)[:, None] * U)
    return np.arcsinh(mink_matrix(N, V).max(axis=1))


def _plus_hyperplane(V: np.ndarray, direction: UnitTangent) -> Hyperplane:
    t = pencil_params(direction.base.coords, direction.u.coords[None, :], V).max()
    return Hyperplane(-(np.sinh(t) * direction.base.coords + np.cosh(t) * direction.u.coords))


def _perp_basis(w: np.ndarray) -> np.ndarray:
    """Base ortonormale (righe) del complemento ortogonale di w in ℝ^d."""
    Q, _ = np.linalg.qr(np.column_stack([w, np.eye(w.size)]))
    return Q[:, 1:w.size].T


def _poll_directions(w: np.ndarray) -> np.ndarray:
    E = _perp_basis(w)
    if len(E) == 1:
        return np.vstack([E[0], -E[0]])
    angles = np.arange(8) * np.pi / 4.0
    return np.cos(angles)[:, None] * E[0] + np.sin(angles)[:, None] * E[1]


def _compass(f: Callable[[np.ndarray], float], w0: np.ndarray, step0: float,
             sign: float, max_halvings: int, budget: int = 5000) -> Tuple[np.ndarray, float]:
    """Compass search sulla sfera delle direzioni; sign=+1 massimizza, −1 minimizza."""
    w = w0 / np.linalg.norm(w0)
    best = f(w)
    step, halvings, evals = step0, 0, 0
    while step >= STEP_MIN and halvings <= max_halvings and evals < budget:
        moved = False
        for e in _poll_directions(w):
            cand = w + step * e
            cand /= np.linalg.norm(cand)
            val = f(cand)
            evals += 1
            if sign * val > sign * best + 1e-15:
                w, best, moved = cand, val, True
                break
        if not moved:
            step /= 2.0
            halvings += 1
    return w, best


def _polish(f: Callable[[np.ndarray], float], w0: np.ndarray, sign: float) -> Tuple[np.ndarray, float]:
    """Rifinitura Nelder–Mead nelle coordinate locali del piano tangente alla sfera."""
    E = _perp_basis(w0)

    def lift(xi):
        w = w0 + xi @ E
        return w / np.linalg.norm(w)

    res = minimize(lambda xi: -sign * f(lift(xi)), np.zeros(len(E)), method="Nelder-Mead",
                   options={"xatol": 1e-10, "fatol": 1e-13, "maxiter": 400})
    w = lift(res.x)
    return w, f(w)


def _optimize_direction(P: Polytope, sign: float, cfg: MetrologyConfig) -> Tuple[np.ndarray, float, int]:
    """
    Ottimo della larghezza sulla sfera delle direzioni in o: griglia su entrambi i lati
    del fascio, poi compass search + Nelder–Mead dalle migliori celle.
    Restituisce (direzione in ℝ^d, valore, dimensione della griglia).
    """
    d = P.dim
    o = P.reference.coords
    F = tangent_frame(P.reference)
    V = P.array
    n = cfg.grid_for(d)
    W = direction_grid(d, n)
    W2 = np.vstack([W, -W])                 # lato plus e lato minus (H⁻(u) = H⁺(−u))
    values = _chunked(lambda B: _widths_plus(V, o, B @ F), W2, cfg.threads)

    def f(w):
        return float(_widths_plus(V, o, (w @ F)[None, :])[0])

    order = np.argsort(-sign * values, kind="stable")[:TOP_CELLS]
    best_w, best_val = W2[order[0]], float(values[order[0]])
    step0 = 2.0 * np.pi / n if d == 2 else np.sqrt(4.0 * np.pi / n)   # passo della griglia
    for k in order:
        w, val = _compass(f, W2[k], step0, sign, cfg.refine_iters)
        w2, val2 = _polish(f, w, sign)
        if sign * val2 > sign * val:
            w, val = w2, val2
        if sign * val > sign * best_val:
            best_w, best_val = w, val
    return best_w, best_val, n


def _direction_to(P: Polytope, H: Hyperplane) -> UnitTangent:
    """Direzione in o verso il piede su H: H è il supporto H⁺ del fascio di questa direzione."""
    o = P.reference
    return unit_tangent_towards(o, project_ph(o, H))


# -----------------------------
# Larghezza e diametro
# -----------------------------

def width_h(C: Polytope, H: Hyperplane, contact_tol: float = 1e-8) -> WidthReport:
    """
    width_H(C) = distanza massima tra H e un punto di C. far_hyperplane è l'iperpiano per il
    punto più lontano j ortogonale alla perpendicolare da j ad H (supporta C in j).
    La normale di H viene orientata verso il corpo: si rifiutano solo gli iperpiani che lo tagliano.
    """
    H = H.oriented_towards(C.reference)
    s = mink_rows(C.array, H.n)
    if np.arcsinh(s.min()) < -contact_tol or np.arcsinh(s.min()) > contact_tol:
        raise GeometryError("L'iperpiano non supporta il corpo")
    j, w = farthest_from_hyperplane(C, H)
    h = project_ph(j, H)
    far = Hyperplane(-(np.sinh(w) * h.coords + np.cosh(w) * H.n.coords))
    return WidthReport(value=w, hyperplane=H, far_point=j, far_hyperplane=far)


def width_in_direction(C: Polytope, direction: UnitTangent, side: str = "plus") -> WidthReport:
    if side not in ("plus", "minus"):
        raise ValueError(f"Lato non valido: {side!r} (plus|minus)")
    support = pencil_support(C, direction)
    return width_h(C, support.H_plus if side == "plus" else support.H_minus)


def farthest_supporting_hyperplane(C: Polytope, H: Hyperplane) -> Hyperplane:
    """Iperpiano ultraparallelo ad H che supporta C il più lontano possibile da H."""
    return width_h(C, H).far_hyperplane


def _pairwise_max(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """max_j d(Aᵢ, Bⱼ) per ogni riga di A, a blocchi."""
    out = np.empty(len(A))
    for i in range(0, len(A), 1024):
        out[i:i + 1024] = pairwise_dist(A[i:i + 1024], B).max(axis=1)
    return out


def diameter(C: Polytope) -> Tuple[float, HPoint, HPoint]:
    """Massimo sulle coppie di vertici; coppia con gli indici più bassi in caso di parità."""
    V = C.array
    best, pair = -1.0, (0, 1)
    for i in range(0, len(V), 1024):
        D = pairwise_dist(V[i:i + 1024], V)
        k = int(np.argmax(D))
        r, c = divmod(k, D.shape[1])
        if D[r, c] > best + 1e-15:
            best, pair = float(D[r, c]), (i + r, c)
    a, b = sorted(pair)
    return best, C.vertices[a], C.vertices[b]


def max_width(C: Polytope, grid: Optional[int] = None, cfg: MetrologyConfig = DEFAULT_CONFIG) -> float:
    if grid is not None:
        cfg = MetrologyConfig(**{**cfg.__dict__, "grid": grid})
    _, value, _ = _optimize_direction(C, +1.0, cfg)
    return value


# -----------------------------
# Spessore
# -----------------------------

def _facet_candidates(C: Polytope) -> Tuple[np.ndarray, np.ndarray]:
    N = C.facet_normals
    widths = np.arcsinh(mink_matrix(N, C.array).max(axis=1))
    return widths, N


def _common_perpendicular(a: np.ndarray, b: np.ndarray, c: np.ndarray, e: np.ndarray
                          ) -> Optional[Tuple[np.ndarray, np.ndarray]]:
    """
    Piedi della perpendicolare comune delle rette ab e ce.
    Con basi ortonormali (e0,e1), (f0,f1) dei piani delle due rette e G_ij = −⟨e_i,f_j⟩,
    il piede X (X0² − X1² = 1) è autovettore di ηGηGᵀ (η = diag(1,−1)) e Y ∝ ηGᵀX.
    """
    pa, pc = HPoint(a), HPoint(c)
    E = np.vstack([pa.coords, unit_tangent_towards(pa, HPoint(b)).u.coords])
    F = np.vstack([pc.coords, unit_tangent_towards(pc, HPoint(e)).u.coords])
    G = -mink_matrix(E, F)
    eta = np.diag([1.0, -1.0])
    vals, vecs = np.linalg.eig(eta @ G @ eta @ G.T)
    best = None
    for lam, X in zip(vals, vecs.T):
        if abs(lam.imag) > 1e-12:
            return None
        X = X.real
        q = X[0] ** 2 - X[1] ** 2
        if q <= 1e-12:
            continue
        X = X / np.sqrt(q) * np.sign(X[0])
        Y = eta @ G.T @ X
        qy = Y[0] ** 2 - Y[1] ** 2
        if qy <= 1e-12:
            continue
        Y = Y / np.sqrt(qy) * np.sign(Y[0])
        if best is None or lam.real < best[0]:
            best = (lam.real, X @ E, Y @ F)
    if best is None:
        return None
    return best[1], best[2]


def _edge_pair_candidates(C: Polytope) -> List[Tuple[float, Hyperplane]]:
    """Iperpiani per uno spigolo, ortogonali alla perpendicolare comune con uno spigolo disgiunto."""
    V = C.array
    edges = C.edges
    out = []
    for i, (a, b) in enumerate(edges):
        for c, e in edges[i + 1:]:
            if len({a, b, c, e}) < 4:
                continue
            feet = _common_perpendicular(V[a], V[b], V[c], V[e])
            if feet is None:
                continue
            m, q = HPoint(feet[0]), HPoint(feet[1])
            if -mink(m, q) < 1.0 + 1e-12:
                continue
            for p, r in ((m, q), (q, m)):
                H = Hyperplane(unit_tangent_towards(p, r).u.coords)
                s = mink_rows(V, H.n)
                if s.min() >= -1e-12:
                    out.append((float(np.arcsinh(s.max())), H))
    return out


def thickness(C: Polytope, grid: Optional[int] = None, refine_iters: Optional[int] = None,
              cfg: MetrologyConfig = DEFAULT_CONFIG) -> ThicknessReport:
    """
    Δ(C) = inf di width_H(C) sugli iperpiani di supporto. Ogni iperpiano di supporto è
    H⁺(u) per la direzione u in o verso il suo piede, quindi la sfera delle direzioni in o
    copre tutti i supporti; i candidati esatti possono solo abbassare il minimo.
    """
    overrides = {}
    if grid is not None:
        overrides["grid"] = grid
    if refine_iters is not None:
        overrides["refine_iters"] = refine_iters
    if overrides:
        cfg = MetrologyConfig(**{**cfg.__dict__, **overrides})

    w, value, n = _optimize_direction(C, -1.0, cfg)
    direction = UnitTangent(C.reference, w @ tangent_frame(C.reference))
    H = _plus_hyperplane(C.array, direction)
    source = "grid"

    widths, N = _facet_candidates(C)
    k = int(np.argmin(widths))
    # a parità di valore si preferisce il candidato esatto
    if widths[k] <= value + 1e-12:
        value, H, source = float(widths[k]), Hyperplane(N[k]), "facet"
    if C.dim == 3 and len(C.vertices) <= EDGE_PAIR_MAX_VERTICES:
        for val, Hc in _edge_pair_candidates(C):
            if val < value - 1e-12 or (source == "grid" and val <= value + 1e-12):
                value, H, source = val, Hc, "edge_pair"
    if source != "grid":
        direction = _direction_to(C, H)
    return ThicknessReport(value=float(value), direction=direction, hyperplane=H,
                           grid_size=n, refined=True, source=source)


# -----------------------------
# Distanze da un politopo
# -----------------------------

def _outside_distance(P: Polytope, X: np.ndarray) -> np.ndarray:
    """
    Distanza esatta da P di punti esterni: minimo su faccette (piede interno alla faccetta),
    spigoli (piede interno al segmento) e vertici. Il punto più vicino sta nell'interno
    relativo di una di queste facce.
    """
    V = P.array
    N = P.facet_normals
    S = mink_matrix(X, N)                                        # (k, F)
    # piede su ogni faccetta, a meno di un fattore positivo: p − ⟨n,p⟩·n
    feet = X[:, None, :] - S[:, :, None] * N[None, :, :]
    bary = np.einsum("fij,kfj->kfi", np.linalg.pinv(np.transpose(V[P.facets], (0, 2, 1))), feet)
    on_facet = (bary >= -1e-12).all(axis=2)
    best = np.where(on_facet, np.arcsinh(np.abs(S)), np.inf).min(axis=1)

    E = np.array(P.edges)
    A, B = V[E[:, 0]], V[E[:, 1]]
    ab = np.einsum("ij,ij->i", A[:, :-1], B[:, :-1]) - A[:, -1] * B[:, -1]
    pa, pb = mink_matrix(X, A), mink_matrix(X, B)                # (k, E)
    # proiezione di Lorentz sul piano span(a,b): G·(α,β) = (⟨p,a⟩,⟨p,b⟩), G = [[−1, ab], [ab, −1]]
    det = 1.0 - ab ** 2
    alpha = (-pa - ab * pb) / det
    beta = (-ab * pa - pb) / det
    q = -(alpha ** 2) - beta ** 2 + 2.0 * alpha * beta * ab
    on_edge = (alpha >= 0.0) & (beta >= 0.0) & (q < 0.0)
    cosh = -(alpha * pa + beta * pb) / np.sqrt(np.where(on_edge, -q, 1.0))
    best = np.minimum(best, np.where(on_edge, np.arccosh(np.maximum(cosh, 1.0)), np.inf).min(axis=1))
    return np.minimum(best, pairwise_dist(X, V).min(axis=1))


def distance_to_polytope(P: Polytope, X: np.ndarray) -> np.ndarray:
    """Distanza delle righe X da P (0 dentro), a blocchi di righe."""
    X = np.atleast_2d(X)
    out = np.zeros(len(X))
    for i in range(0, len(X), CHUNK):
        block = X[i:i + CHUNK]
        outside = np.flatnonzero(P.clearance(block) < 0.0)
        if len(outside):
            out[i + outside] = _outside_distance(P, block[outside])
    return out


def hausdorff_distance(P: Polytope, Q: Polytope) -> float:
    return float(max(distance_to_polytope(P, Q.array).max(), distance_to_polytope(Q, P.array).max()))


def _dist_point_segment(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    """Distanza di p dal segmento geodetico ab (proiezione di Lorentz sul piano span(a,b))."""
    G = np.array([[mink(a, a), mink(a, b)], [mink(a, b), mink(b, b)]])
    alpha, beta = np.linalg.solve(G, np.array([mink(p, a), mink(p, b)]))
    if alpha >= 0.0 and beta >= 0.0:
        foot = HPoint(alpha * a + beta * b).coords
        return float(np.arccosh(max(1.0, -mink(p, foot))))
    return float(np.arccosh(max(1.0, min(-mink(p, a), -mink(p, b)))))


def _distance_to_face(p: np.ndarray, F: np.ndarray) -> float:
    """Distanza di p da conv(F) (faccia di al più qualche vertice)."""
    if len(F) == 1:
        return float(np.arccosh(max(1.0, -mink(p, F[0]))))
    _, residual = nnls(F.T, p)
    if residual <= 1e-9 * max(1.0, float(np.linalg.norm(p))):
        return 0.0
    return min(_dist_point_segment(p, F[i], F[j]) for i in range(len(F)) for j in range(i + 1, len(F)))


def _distance_to_hull(X: np.ndarray, centers: np.ndarray) -> np.ndarray:
    try:
        return distance_to_polytope(polytope_from_rows(centers), X)
    except GeometryError:
        # inviluppo degenere (due punti, punti allineati): distanza dai segmenti
        out = np.full(len(X), np.inf)
        for i in range(len(centers)):
            for j in range(i + 1, len(centers)):
                seg = np.array([_dist_point_segment(x, centers[i], centers[j]) for x in X])
                out = np.minimum(out, seg)
        if len(centers) == 1:
            out = pairwise_dist(X, centers)[:, 0]
        return out


# -----------------------------
# Verifiche
# -----------------------------

def check_constant_width(C: Body, delta: float, tol: float = 1e-3, grid: Optional[int] = None,
                         cfg: MetrologyConfig = DEFAULT_CONFIG) -> CheckReport:
    P = as_polytope(C, cfg)
    d = P.dim
    n = grid or cfg.grid_for(d)
    W = direction_grid(d, n)
    W2 = np.vstack([W, -W])
    F = tangent_frame(P.reference)
    values = _chunked(lambda B: _widths_plus(P.array, P.reference.coords, B @ F), W2, cfg.threads)
    mean = float(values.mean())
    # escursione delle larghezze e scarto della media da δ
    spread = float(max(values.max() - values.min(), abs(mean - delta)))
    worst = int(np.argmax(np.abs(values - delta)))
    tol_eff = _effective_tol(P, tol)
    return CheckReport(
        passed=bool(spread <= tol_eff),
        target=delta,
        spread=spread,
        worst_witness=UnitTangent(P.reference, W2[worst] @ F),
        tolerance=tol_eff,
        details={"min_width": float(values.min()), "max_width": float(values.max()),
                 "mean_width": mean, "grid_size": n},
    )


def _require_diameter(P: Polytope, delta: float, tol_eff: float) -> float:
    diam, _, _ = diameter(P)
    if abs(diam - delta) > tol_eff:
        raise GeometryError(f"Diametro {diam:.9f} diverso da δ = {delta} oltre la tolleranza {tol_eff:.3g}")
    return diam


def check_constant_diameter(C: Body, delta: float, tol: float = 1e-3, samples: Optional[int] = None,
                            cfg: MetrologyConfig = DEFAULT_CONFIG) -> CheckReport:
    """Ogni punto di bordo campionato ha un partner di bordo a distanza ≥ δ − tol."""
    P = as_polytope(C, cfg)
    tol_eff = _effective_tol(P, tol)
    _require_diameter(P, delta, tol_eff)
    S = boundary_rows(P, samples or cfg.n_boundary)
    partners = np.vstack([S, P.array])
    reach = _pairwise_max(S, partners)
    deficit = delta - reach
    worst = int(np.argmax(deficit))
    spread = float(max(0.0, deficit[worst]))
    return CheckReport(
        passed=bool(spread <= tol_eff),
        target=delta,
        spread=spread,
        worst_witness=HPoint(S[worst]),
        tolerance=tol_eff,
        details={"samples": len(S), "worst_partner_distance": float(reach[worst])},
    )


def ball_hull(P: Polytope, delta: float) -> BallIntersection:
    """∩ delle palle di raggio δ centrate nei punti di P = ∩ su i soli vertici (convessità)."""
    return BallIntersection(P.vertices, delta)


def check_complete(C: Body, delta: float, tol: float = 1e-3, arc_samples: int = 9,
                   cfg: MetrologyConfig = DEFAULT_CONFIG) -> CheckReport:
    """
    C completo di diametro δ ⇔ C coincide con l'intersezione delle palle di raggio δ centrate
    nei suoi punti. Si misura quanto l'intersezione (campionata sul bordo) sporge da C.
    """
    P = as_polytope(C, cfg)
    tol_eff = _effective_tol(P, tol)
    diam = _require_diameter(P, delta, tol_eff)
    n = arc_samples if P.dim == 2 else cfg.n_rays
    K = discretize(ball_hull(P, delta), n)
    bulge = distance_to_polytope(P, K.array)
    worst = int(np.argmax(bulge))
    spread = float(max(bulge[worst], diam - delta, 0.0))
    x = K.vertices[worst]
    diam_with_x = max(diam, float(pairwise_dist(x.coords[None, :], P.array).max()))
    return CheckReport(
        passed=bool(spread <= tol_eff),
        target=delta,
        spread=spread,
        worst_witness=x,
        tolerance=tol_eff,
        details={"ball_hull_vertices": len(K.vertices), "diam_with_witness": diam_with_x},
    )


def check_strict_convexity(C: Body, tol: float = 1e-3, grid: Optional[int] = None,
                           cfg: MetrologyConfig = DEFAULT_CONFIG) -> CheckReport:
    """
    Per ogni iperpiano di supporto campionato (faccette + griglia del fascio) l'insieme di
    contatto è fatto dai punti di bordo entro eps_contact; spread = diametro massimo.
    Per i corpi discretizzati la tolleranza include la lunghezza delle corde.
    """
    P = as_polytope(C, cfg)
    d = P.dim
    n = grid or cfg.grid_for(d)
    pts = np.vstack([P.array, boundary_rows(P, cfg.n_boundary)])
    F = tangent_frame(P.reference)
    o = P.reference
    W = direction_grid(d, n)
    grid_normals = np.array([_plus_hyperplane(P.array, UnitTangent(o, w @ F)).n.coords for w in W])
    normals = np.vstack([P.facet_normals, grid_normals])
    spread, worst = 0.0, normals[0]
    for i in range(0, len(normals), CHUNK):
        block = normals[i:i + CHUNK]
        S = np.abs(np.arcsinh(mink_matrix(block, pts)))
        for k, row in enumerate(S):
            idx = np.flatnonzero(row <= cfg.eps_contact)
            if len(idx) < 2:
                continue
            diam = float(pairwise_dist(pts[idx], pts[idx]).max())
            if diam > spread + 1e-15:
                spread, worst = diam, block[k]
    tol_eff = tol + P.sample_spacing
    return CheckReport(
        passed=bool(spread <= tol_eff),
        target=0.0,
        spread=spread,
        worst_witness=Hyperplane(worst),
        tolerance=tol_eff,
        details={"hyperplanes": len(normals), "boundary_points": len(pts)},
    )


def reducedness_falsifier(C: Polytope, offsets: int = 16, max_vertices: int = 12, slack: Optional[float] = None,
                          cfg: MetrologyConfig = DEFAULT_CONFIG) -> Optional[Polytope]:
    """
    Cerca un troncamento Z ⊊ C di un solo vertice con Δ(Z) ≥ Δ(C) − slack (default cfg.eps_contact):
    testimone numerico che C non è ridotto. None non certifica la riducibilità.
    Il taglio è ortogonale alla geodetica dal vertice al riferimento; sui simplessi regolari S₂ₓ
    ogni taglio di questo tipo abbassa lo spessore, quindi lì il risultato è None.
    Offset logaritmici in (0, 0.3·Δ(C)], dal più piccolo: Δ è monotono per inclusione, quindi
    al primo offset che abbassa lo spessore ci si ferma e si restituisce il taglio più
    profondo che lo conserva.
    """
    slack = cfg.eps_contact if slack is None else slack
    base = thickness(C, cfg=cfg).value
    grid = np.geomspace(0.3 * base * 1e-3, 0.3 * base, offsets)
    m = len(C.vertices)
    candidates = np.unique(np.linspace(0, m - 1, min(m, max_vertices)).round().astype(int))
    for i in candidates:
        witness = None
        for s in grid:
            try:
                Z = truncate_vertex(C, int(i), float(s))
            except GeometryError:
                break
            if thickness(Z, cfg=cfg).value < base - slack:
                break
            witness = Z
        if witness is not None:
            return witness
    return None


def complete_hull(S: Sequence[HPoint], delta: float, iters: int = 200, tol: float = 1e-3,
                  pool: int = 512, cfg: MetrologyConfig = DEFAULT_CONFIG) -> BallIntersection:
    """
    Completamento greedy: ai centri si aggiunge il punto di bordo dell'intersezione di palle
    corrente più lontano dall'inviluppo dei centri, finché lo scarto supera tol.
    """
    pts = [p if isinstance(p, HPoint) else HPoint(p) for p in S]
    if not pts:
        raise ValueError("Insieme vuoto")
    if len(pts) == 1:
        return BallIntersection((pts[0],), delta / 2.0)
    centers = np.array([p.coords for p in pts])
    if pairwise_dist(centers, centers).max() > delta + EPS_NORM:
        raise GeometryError("Diametro dell'insieme maggiore di δ")
    d = pts[0].dim
    for _ in range(iters):
        K = BallIntersection(tuple(HPoint(c) for c in centers), delta)
        n = max(5, (pool // len(centers)) | 1) if d == 2 else pool
        X = discretize(K, n).array
        gap = _distance_to_hull(X, centers)
        k = int(np.argmax(gap))
        if gap[k] < tol:
            break
        centers = np.vstack([centers, X[k]])
    return BallIntersection(tuple(HPoint(c) for c in centers), delta)


# -----------------------------
# Verifiche dei risultati
# -----------------------------

def verify_diameter_strip(C: Polytope, eps: float = 1e-9) -> bool:
    """C sta nella striscia tra gli iperpiani ortogonali al diametro ab nei suoi estremi."""
    length, a, b = diameter(C)
    direction = unit_tangent_towards(a, b)
    t = pencil_params(a.coords, direction.u.coords[None, :], C.array)[0]
    return bool(t.min() >= -eps and t.max() <= length + eps)


def verify_equidistant_strip(C: Polytope, H: Hyperplane, margin: float = 1e-6) -> bool:
    """C sta nella striscia equidistante di H a distanza width_H(C), non in una più sottile."""
    w = width_h(C, H).value
    inside = all(in_strip(v, EquidistantStrip(H, w)) for v in C.vertices)
    thinner = all(in_strip(v, EquidistantStrip(H, max(0.0, w - margin))) for v in C.vertices)
    return bool(inside and not thinner)


def theorem1_report(C: Polytope, cfg: MetrologyConfig = DEFAULT_CONFIG) -> CheckReport:
    mw = max_width(C, cfg=cfg)
    diam, a, b = diameter(C)
    gap = abs(mw - diam)
    return CheckReport(passed=bool(gap <= cfg.tol), target=diam, spread=gap, worst_witness=a,
                       tolerance=cfg.tol, details={"max_width": mw, "diameter": diam})


def claim1_report(C: Polytope) -> CheckReport:
    diam, a, b = diameter(C)
    ok = verify_diameter_strip(C)
    return CheckReport(passed=ok, target=diam, spread=0.0 if ok else float("inf"),
                       worst_witness=b, tolerance=1e-9)


def theorem2_report(C: Body, tol: float = 1e-3, cfg: MetrologyConfig = DEFAULT_CONFIG) -> CheckReport:
    """
    Con H di spessore minimo e un unico punto j più lontano da H, il piede di j su H sta in C ∩ H.
    Più punti più lontani (entro eps_contact) → TheoremInapplicable, a meno che non siano
    vertici contigui di un corpo discretizzato (un solo punto del corpo esatto).
    """
    P = as_polytope(C, cfg)
    report = thickness(P, cfg=cfg)
    H = report.hyperplane
    dist = np.arcsinh(mink_rows(P.array, H.n))
    far = np.flatnonzero(dist >= dist.max() - cfg.eps_contact)
    if len(far) > 1 and pairwise_dist(P.array[far], P.array[far]).max() > tol + P.sample_spacing:
        raise TheoremInapplicable(f"Punto più lontano non unico ({len(far)} vertici)")
    face = P.array[np.abs(dist) <= tol]
    gaps = [(_distance_to_face(project_ph(P.vertices[i], H).coords, face), int(i)) for i in far]
    gap, i = min(gaps)
    j = P.vertices[i]
    return CheckReport(passed=bool(gap <= tol), target=report.value, spread=gap,
                       worst_witness=project_ph(j, H), tolerance=tol,
                       details={"far_point": j, "contact_vertices": len(face),
                                "thickness_source": report.source})


def theorem2_check(C: Body, tol: float = 1e-3, cfg: MetrologyConfig = DEFAULT_CONFIG) -> bool:
    return theorem2_report(C, tol, cfg).passed
