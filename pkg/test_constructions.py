#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Test dei corpi di riferimento e delle formule chiuse (constructions.py).
"""

import os
import sys

import numpy as np

# Aggiungi path del progetto
sys.path.insert(0, os.path.dirname(__file__))

from constructions import (
    SimplexSpec,
    example1_angle,
    example1_arc_params,
    example1_default_theta,
    hyperplane_spanned,
    lambert_side,
    make_ball,
    make_ball_orthant,
    make_example1,
    make_regular_tetrahedron,
    make_regular_triangle,
    make_reuleaux,
    random_polytope,
    remark2_polynomial,
    remark2_roots,
    reuleaux_vertices,
    simplex_edge_hyperplane,
    simplex_edge_width,
    simplex_facet_hyperplane,
    simplex_facet_width,
    triangle_circumradius,
    triangle_height,
)
from lorentz_core import GeometryError, HPoint, mink_rows, pairwise_dist


def _off_diagonal(D):
    return D[~np.eye(len(D), dtype=bool)]


# ============================================================
# Formule chiuse
# ============================================================

def test_altezza_e_circumraggio_del_triangolo():
    assert abs(triangle_height(1.0) - 1.53944) <= 1e-4
    assert abs(triangle_circumradius(1.0) - 1.11283) <= 1e-4


def test_larghezze_del_simplesso_in_x_uno():
    assert abs(simplex_facet_width(1.0) - 1.442) <= 1e-3
    assert abs(simplex_edge_width(1.0) - 1.392) <= 1e-3


def test_spigolo_minore_della_faccetta():
    for x in (0.25, 0.5, 1.0, 2.0, 4.0):
        assert simplex_edge_width(x) < simplex_facet_width(x), f"x = {x}"


def test_andamento_asintotico():
    x = 8.0
    facet, edge = simplex_facet_width(x), simplex_edge_width(x)
    assert abs(facet - (x + np.log(np.sqrt(3.0)))) <= 5e-3
    assert abs(edge / facet - 1.0) <= 0.05


def test_lato_di_lambert():
    assert abs(lambert_side(0.7, 0.0) - 0.7) <= 1e-15
    assert lambert_side(0.7, 1.0) > 0.7
    for bad in ((0.0, 1.0), (0.5, -1.0)):
        try:
            lambert_side(*bad)
        except ValueError:
            continue
        raise AssertionError(f"lambert_side{bad} doveva fallire")


def test_polinomio_del_confronto():
    r1, r2 = remark2_roots()
    assert abs(r1 - 7.0 / 29.0) <= 1e-12
    assert abs(r2 - 1.0) <= 1e-12
    for lam in (1.01, 2.0, 10.0):
        assert remark2_polynomial(lam) > 0.0
    assert remark2_polynomial(0.5) < 0.0


# ============================================================
# Simplessi regolari
# ============================================================

def test_triangolo_regolare():
    for x in (0.25, 1.0, 2.0):
        T = make_regular_triangle(x)
        assert len(T.vertices) == 3
        assert np.abs(_off_diagonal(pairwise_dist(T.array, T.array)) - 2.0 * x).max() <= 1e-9


def test_tetraedro_regolare():
    for x in (0.25, 0.5, 1.0, 1.5):
        S = make_regular_tetrahedron(x)
        assert len(S.vertices) == 4
        assert np.abs(_off_diagonal(pairwise_dist(S.array, S.array)) - 2.0 * x).max() <= 1e-9


def test_iperpiani_del_simplesso():
    S = SimplexSpec(1.0).build()
    F = simplex_facet_hyperplane(S)
    E = simplex_edge_hyperplane(S)
    for H, on in ((F, [0, 1, 2]), (E, [0, 1])):
        values = mink_rows(S.array, H.n)
        assert values.min() >= -1e-10
        assert np.abs(values[on]).max() <= 1e-10
    try:
        SimplexSpec(-1.0)
    except ValueError:
        pass
    else:
        raise AssertionError("x negativo accettato")


def test_iperpiano_per_punti_degeneri():
    o = HPoint.origin(2)
    try:
        hyperplane_spanned(np.vstack([o.coords, o.coords]), towards=HPoint.lift([0.1, 0.1]))
    except GeometryError:
        return
    raise AssertionError("Iperpiano per punti coincidenti accettato")


# ============================================================
# Palle, Reuleaux, corpo con arco equidistante
# ============================================================

def test_palla_singola():
    c = HPoint.lift([0.3, 0.1])
    B = make_ball(c, 0.8)
    assert B.balls[0].contains(c) and B.balls[0].radius == 0.8
    for bad in (0.0, -1.0):
        try:
            make_ball(c, bad)
        except ValueError:
            continue
        raise AssertionError(f"Raggio {bad} accettato")


def test_parte_di_palla_nell_ortante():
    for d in (2, 3):
        P = make_ball_orthant(1.0, d)
        r = pairwise_dist(P.array, HPoint.origin(d).coords[None, :])[:, 0]
        assert r.max() <= 1.0 + 1e-9
        assert abs(r.min()) <= 1e-12   # il centro è un vertice
        assert P.array[:, :-1].min() >= -1e-12


def test_vertici_di_reuleaux():
    for k in (3, 5, 7):
        V = reuleaux_vertices(k, 1.0)
        D = pairwise_dist(V, V)
        for i in range(k):
            assert abs(D[i, (i + (k - 1) // 2) % k] - 1.0) <= 1e-9
        assert _off_diagonal(D).max() <= 1.0 + 1e-9
    for bad in (4, 1):
        try:
            make_reuleaux(bad, 1.0)
        except ValueError:
            continue
        raise AssertionError(f"k = {bad} accettato")


def test_corpo_con_arco_equidistante():
    rho = 1.0
    theta = example1_default_theta(rho)
    assert abs(example1_angle(rho, theta) - 2.0 * np.pi / 3.0) <= 1e-12
    C = make_example1(rho, theta, 200)
    params = example1_arc_params(rho, theta, 200)
    assert 0.0 in params
    assert len(C.vertices) == len(params) + 1
    # tutti i punti dell'arco a distanza ρ dalla retta y = 0
    arc = C.array[C.array[:, 1] > 1e-12]
    assert np.abs(np.arcsinh(arc[:, 1]) - rho).max() <= 1e-12


def test_condizione_sull_angolo():
    rho = 1.0
    small = 0.5 * np.arcsinh(np.tanh(rho))
    try:
        make_example1(rho, small)
    except GeometryError as exc:
        assert "angle condition violated" in str(exc)
        return
    raise AssertionError("Angolo acuto accettato")


def test_politopo_casuale():
    rng = np.random.default_rng(31)
    P = random_polytope(3, 10, rng, max_radius=1.2)
    r = pairwise_dist(P.array, HPoint.origin(3).coords[None, :])[:, 0]
    assert r.max() <= 1.2 + 1e-9
    try:
        random_polytope(3, 3, rng)
    except ValueError:
        return
    raise AssertionError("Troppi pochi punti accettati")


if __name__ == "__main__":
    from verifica import esegui
    sys.exit(esegui(globals(), "constructions"))
