#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Test dei corpi convessi (body_model.py): politopi, intersezioni di palle, supporti nel
fascio, troncamenti e discretizzazione.
"""

import os
import sys

import numpy as np

# Aggiungi path del progetto
sys.path.insert(0, os.path.dirname(__file__))

from body_model import (
    BallIntersection,
    Polytope,
    boundary_arcs,
    boundary_rows,
    boundary_sample,
    contact_indices,
    discretize,
    farthest_from_hyperplane,
    hull_contains,
    interior_reference,
    pencil_support,
    truncate_vertex,
)
from constructions import hyperplane_spanned, make_ball, make_regular_triangle, make_reuleaux, random_polytope
from lorentz_core import (
    GeometryError,
    HPoint,
    Hyperplane,
    UnitTangent,
    dist_pp,
    geodesic_point,
    mink,
    mink_rows,
    pairwise_dist,
    tangent_frame,
    unit_tangent_towards,
)


def _direction(P, rng):
    return UnitTangent(P.reference, rng.normal(size=P.dim) @ tangent_frame(P.reference))


# ============================================================
# Politopi
# ============================================================

def test_punti_interni_eliminati():
    T = make_regular_triangle(1.0)
    extra = HPoint.origin(2)
    P = Polytope(tuple(T.vertices) + (extra,))
    assert len(P.vertices) == 3


def test_politopi_degeneri():
    o = HPoint.origin(2)
    for pts in ((o, HPoint.lift([0.5, 0.0])),
                (o, HPoint.lift([0.5, 0.0]), HPoint.lift([1.0, 0.0]))):
        try:
            Polytope(pts)
        except GeometryError:
            continue
        raise AssertionError(f"Politopo degenere accettato ({len(pts)} punti)")


def test_normali_delle_faccette_verso_interno():
    rng = np.random.default_rng(2)
    for d in (2, 3):
        for _ in range(20):
            P = random_polytope(d, 10, rng)
            assert P.clearance(P.reference.coords)[0] > 0.0
            assert P.clearance(P.array).min() >= -1e-12
            # ogni faccetta passa per d vertici
            for n, simplex in zip(P.facet_normals, P.facets):
                assert np.abs(mink_rows(P.array[simplex], n)).max() <= 1e-9


def test_appartenenza():
    T = make_regular_triangle(1.0)
    assert hull_contains(T, HPoint.origin(2))
    assert all(hull_contains(T, v) for v in T.vertices)
    assert not hull_contains(T, HPoint.lift([3.0, 3.0]))


def _on_segment(p, q, t):
    return geodesic_point(unit_tangent_towards(p, q), t * dist_pp(p, q))


def test_appartenenza_sui_segmenti_geodetici():
    # punti di segmenti tra un vertice e un punto di un segmento tra altri due vertici
    rng = np.random.default_rng(6)
    for d in (2, 3):
        for _ in range(10):
            P = random_polytope(d, 9, rng)
            V = P.vertices
            for _ in range(30):
                a, b, c = rng.choice(len(V), 3, replace=False)
                x = _on_segment(V[a], _on_segment(V[b], V[c], rng.random()), rng.random())
                assert hull_contains(P, x)
            for v in V:
                beyond = geodesic_point(unit_tangent_towards(P.reference, v), dist_pp(P.reference, v) + 0.05)
                assert not hull_contains(P, beyond)


def test_appartenenza_contro_le_rette_dei_lati():
    rng = np.random.default_rng(7)
    for _ in range(20):
        P = random_polytope(2, 8, rng)
        order = P.boundary_order
        sides = [hyperplane_spanned(P.array[[a, b]], towards=P.reference)
                 for a, b in zip(order, order[1:] + order[:1])]
        for _ in range(50):
            x = HPoint.lift(rng.normal(size=2))
            margin = min(mink(H.n, x) for H in sides)
            if abs(margin) < 1e-6:
                continue
            assert hull_contains(P, x) == (margin > 0.0)


def test_riferimento_interno():
    rng = np.random.default_rng(3)
    for d in (2, 3):
        for _ in range(20):
            P = random_polytope(d, 9, rng)
            o = interior_reference(P)
            w = P.array.sum(axis=0)
            assert np.allclose(o.coords, w / np.sqrt(-mink(w, w)), atol=1e-12)
            assert hull_contains(P, o)
            assert P.clearance(o.coords)[0] > 0.0


def test_ordine_di_bordo():
    rng = np.random.default_rng(4)
    P = random_polytope(2, 12, rng)
    order = P.boundary_order
    assert sorted(order) == list(range(len(P.vertices)))
    # antiorario in Klein attorno al riferimento
    Y = P.array[order, :2] / P.array[order, 2:]
    c = Y.mean(axis=0)
    angles = np.unwrap(np.arctan2(Y[:, 1] - c[1], Y[:, 0] - c[0]))
    assert np.all(np.diff(angles) > 0.0)


# ============================================================
# Supporti nel fascio
# ============================================================

def test_supporti_nel_fascio():
    rng = np.random.default_rng(6)
    for d in (2, 3):
        P = random_polytope(d, 9, rng)
        for _ in range(20):
            direction = _direction(P, rng)
            s = pencil_support(P, direction)
            assert s.t_minus < 0.0 < s.t_plus
            for H, contact in ((s.H_plus, s.contact_plus), (s.H_minus, s.contact_minus)):
                values = mink_rows(P.array, H.n)
                assert values.min() >= -1e-12
                assert contact and all(abs(values[i]) <= 1e-8 for i in contact)


def test_fascio_della_direzione_opposta():
    rng = np.random.default_rng(8)
    P = random_polytope(2, 8, rng)
    for _ in range(20):
        direction = _direction(P, rng)
        s, r = pencil_support(P, direction), pencil_support(P, direction.reversed())
        assert abs(s.t_plus + r.t_minus) <= 1e-12
        assert abs(s.t_minus + r.t_plus) <= 1e-12
        assert np.allclose(s.H_plus.n.coords, r.H_minus.n.coords, atol=1e-12)


def test_base_non_interna():
    T = make_regular_triangle(0.5)
    outside = HPoint.lift([2.0, 2.0])
    try:
        pencil_support(T, UnitTangent(outside, np.array([1.0, 0.0, 0.0])))
    except GeometryError:
        return
    raise AssertionError("Base esterna accettata")


def test_punto_piu_lontano_e_contatto():
    T = make_regular_triangle(1.0)
    side = hyperplane_spanned(T.array[[0, 1]], towards=T.vertices[2])
    j, w = farthest_from_hyperplane(T, side)
    assert dist_pp(j, T.vertices[2]) <= 1e-12
    assert sorted(contact_indices(T, side)) == [0, 1]
    try:
        farthest_from_hyperplane(T, Hyperplane(np.array([1.0, 0.0, 0.0])))
    except GeometryError:
        pass
    else:
        raise AssertionError("Iperpiano che taglia il corpo accettato")


# ============================================================
# Campionamento del bordo e troncamento
# ============================================================

def test_campioni_di_bordo():
    rng = np.random.default_rng(10)
    for d in (2, 3):
        P = random_polytope(d, 10, rng)
        X = boundary_rows(P, 500)
        assert X.shape == (500, d + 1)
        assert np.abs(P.clearance(X)).max() <= 1e-9
    T = make_regular_triangle(0.5)
    pts = boundary_sample(T, 60)
    assert len(pts) == 60
    assert all(hull_contains(T, p) for p in pts)


def test_troncamento_di_un_vertice():
    rng = np.random.default_rng(12)
    P = random_polytope(3, 8, rng)
    for i in range(len(P.vertices)):
        Z = truncate_vertex(P, i, 0.05)
        assert not hull_contains(Z, P.vertices[i])
        assert all(hull_contains(P, v) for v in Z.vertices)


# ============================================================
# Intersezioni di palle e discretizzazione
# ============================================================

def test_centri_troppo_lontani():
    o = HPoint.origin(2)
    try:
        BallIntersection((o, HPoint.lift([np.sinh(2.5), 0.0])), 1.0)
    except GeometryError:
        return
    raise AssertionError("Intersezione vuota accettata")


def test_palla_discretizzata_d2():
    c = HPoint.lift([0.2, -0.3])
    P = discretize(make_ball(c, 1.0), 360)
    assert len(P.vertices) == 360
    d = pairwise_dist(P.array, c.coords[None, :])[:, 0]
    assert np.abs(d - 1.0).max() <= 1e-9
    assert 0.0 < P.discretization_bound < 1e-4


def test_palla_discretizzata_d3():
    P = discretize(make_ball(HPoint.origin(3), 0.8), 1500)
    d = pairwise_dist(P.array, HPoint.origin(3).coords[None, :])[:, 0]
    assert np.abs(d - 0.8).max() <= 1e-9
    assert P.sample_spacing > 0.0


def test_limite_di_discretizzazione_decrescente():
    R = make_reuleaux(3, 1.0)
    bounds = [discretize(R, n).discretization_bound for n in (10, 20, 40, 80, 160)]
    assert all(b1 > b2 for b1, b2 in zip(bounds, bounds[1:])), bounds
    B = make_ball(HPoint.origin(3), 0.8)
    bounds = [discretize(B, n).discretization_bound for n in (100, 400, 1600)]
    assert all(b1 > b2 for b1, b2 in zip(bounds, bounds[1:])), bounds


def test_discretizzazione_d3_con_centri_sbilanciati():
    # dieci centri vicini all'origine e uno a distanza 1.6: il centro medio sta fuori dall'ultima palla
    rng = np.random.default_rng(12)
    dirs = rng.normal(size=(10, 3))
    cluster = [HPoint.lift(0.009 * v / np.linalg.norm(v)) for v in dirs]
    far = HPoint.lift([np.sinh(1.6), 0.0, 0.0])
    B = BallIntersection(tuple(cluster) + (far,), 1.0)
    P = discretize(B, 500)
    assert len(P.vertices) > 100
    D = pairwise_dist(P.array, B.array)
    assert D.max() <= 1.0 + 1e-9
    assert np.abs(D.max(axis=1) - 1.0).max() <= 1e-9


def test_reuleaux_tre_archi():
    R = make_reuleaux(3, 1.0)
    arcs = boundary_arcs(R)
    assert len(arcs) == 3
    assert sorted(i for i, _, _ in arcs) == [0, 1, 2]
    P = discretize(R, 100)
    D = pairwise_dist(P.array, R.array)
    assert D.max() <= 1.0 + 1e-9
    # ogni punto di bordo sta su almeno un cerchio
    assert np.abs(D.max(axis=1) - 1.0).max() <= 1e-9


def test_contenimento_intersezione_di_palle():
    R = make_reuleaux(5, 1.0)
    assert R.contains_rows(R.array).all()
    far = HPoint.lift([3.0, 0.0]).coords[None, :]
    assert not R.contains_rows(far).any()


if __name__ == "__main__":
    from verifica import esegui
    sys.exit(esegui(globals(), "body_model"))
