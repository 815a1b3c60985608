#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Report di riproduzione — tabelle e verifiche sui corpi di riferimento

- simplex_table: per ogni x, larghezze di S₂ₓ dalle formule chiuse e misurate direttamente
- remark2_report: radici del polinomio 29λ² − 36λ + 7, verifica del segno per λ > 1 e confronto
  spigolo < faccetta; l'esito del falsificatore su S₂ₓ è solo informativo
- example1_report: spessore e larghezza del corpo con arco equidistante, piedi delle proiezioni
- theorem3_chain: batteria larghezza costante → diametro costante → completezza sui corpi
  di larghezza costante di riferimento
"""

from __future__ import annotations

from typing import Dict, Iterable, List

import numpy as np
import pandas as pd

from constructions import (
    example1_arc_params,
    example1_arc_point,
    example1_default_theta,
    example1_line,
    make_ball,
    make_example1,
    make_regular_tetrahedron,
    make_reuleaux,
    remark2_polynomial,
    remark2_roots,
    simplex_edge_hyperplane,
    simplex_edge_width,
    simplex_facet_hyperplane,
    simplex_facet_width,
)
from lorentz_core import HPoint, dist_pp, project_ph
from metrology import (
    DEFAULT_CONFIG,
    MetrologyConfig,
    check_complete,
    check_constant_diameter,
    check_constant_width,
    check_strict_convexity,
    reducedness_falsifier,
    thickness,
    width_h,
)

SIMPLEX_X = (0.25, 0.5, 1.0, 1.5)


def simplex_table(xs: Iterable[float] = SIMPLEX_X) -> pd.DataFrame:
    rows = []
    for x in xs:
        S = make_regular_tetrahedron(x)
        facet_formula = simplex_facet_width(x)
        edge_formula = simplex_edge_width(x)
        facet_measured = width_h(S, simplex_facet_hyperplane(S)).value
        edge_measured = width_h(S, simplex_edge_hyperplane(S)).value
        rows.append({
            "x": x,
            "EQ1_FACET": facet_formula,
            "EQ2_EDGE": edge_formula,
            "FACET_MISURATA": facet_measured,
            "EDGE_MISURATA": edge_measured,
            "DELTA_FACET": abs(facet_formula - facet_measured),
            "DELTA_EDGE": abs(edge_formula - edge_measured),
            "RAPPORTO_EDGE_FACET": edge_formula / facet_formula,
            "EDGE_MINORE": bool(edge_formula < facet_formula),
        })
    return pd.DataFrame(rows)


def remark2_report(lambdas: Iterable[float] = (1.01, 2.0, 10.0), falsify: bool = True,
                   cfg: MetrologyConfig = DEFAULT_CONFIG) -> Dict[str, object]:
    r1, r2 = remark2_roots()
    values = {float(lam): remark2_polynomial(lam) for lam in lambdas}
    positive = all(v > 0.0 for v in values.values())
    edge_below = all(simplex_edge_width(x) < simplex_facet_width(x) for x in (0.25, 0.5, 1.0, 2.0, 4.0))
    report: Dict[str, object] = {
        "roots": [r1, r2],
        "roots_expected": [7.0 / 29.0, 1.0],
        "polynomial_values": values,
        "never_negative_for_lambda_gt_1": positive,
        "edge_width_below_facet_width": edge_below,
        "passed": positive and edge_below and abs(r1 - 7.0 / 29.0) <= 1e-12 and abs(r2 - 1.0) <= 1e-12,
    }
    if falsify:
        # informativo: i troncamenti di un vertice di S₂ₓ abbassano tutti lo spessore
        S = make_regular_tetrahedron(1.0)
        witness = reducedness_falsifier(S, cfg=cfg)
        report["s2x_truncation_witness"] = witness is not None
        if witness is not None:
            report["witness_vertices"] = len(witness.vertices)
            report["witness_thickness"] = thickness(witness, cfg=cfg).value
    return report


def example1_report(rho: float = 1.0, n: int = 200, cfg: MetrologyConfig = DEFAULT_CONFIG) -> Dict[str, object]:
    theta = example1_default_theta(rho)
    C = make_example1(rho, theta, n)
    H = example1_line()
    a = HPoint.origin(2)
    width = width_h(C, H).value
    thick = thickness(C, cfg=cfg).value
    offsets = []
    midpoint_offset = None
    for s in example1_arc_params(rho, theta, n):
        foot = project_ph(HPoint(example1_arc_point(rho, s)), H)
        gap = dist_pp(foot, a)
        if s == 0.0:
            midpoint_offset = gap
        else:
            offsets.append(gap)
    min_offset = float(min(offsets))
    passed = (abs(width - rho) <= cfg.tol and abs(thick - rho) <= cfg.tol
              and min_offset > 10.0 * cfg.eps_contact and midpoint_offset <= 1e-9)
    return {
        "rho": rho, "theta": theta, "arc_samples": n,
        "width_H": width, "thickness": thick,
        "min_foot_offset_non_midpoint": min_offset,
        "midpoint_foot_offset": midpoint_offset,
        "passed": bool(passed),
    }


def theorem3_chain(delta: float = 1.0, tol: float = 2e-3, cfg: MetrologyConfig = DEFAULT_CONFIG) -> pd.DataFrame:
    fixtures = {
        "ball": make_ball(HPoint.origin(2), delta / 2.0),
        "reuleaux_3": make_reuleaux(3, delta),
        "reuleaux_5": make_reuleaux(5, delta),
    }
    rows: List[Dict[str, object]] = []
    for name, body in fixtures.items():
        cw = check_constant_width(body, delta, tol, cfg=cfg)
        cd = check_constant_diameter(body, delta, tol, cfg=cfg)
        cc = check_complete(body, delta, tol, cfg=cfg)
        sc = check_strict_convexity(body, tol, cfg=cfg)
        rows.append({
            "CORPO": name,
            "LARGHEZZA_COSTANTE": cw.passed, "SPREAD_LARGHEZZA": cw.spread,
            "DIAMETRO_COSTANTE": cd.passed, "SPREAD_DIAMETRO": cd.spread,
            "COMPLETO": cc.passed, "SPREAD_COMPLETO": cc.spread,
            "STRETTAMENTE_CONVESSO": sc.passed, "SPREAD_CONVESSITA": sc.spread,
        })
    return pd.DataFrame(rows)


def frame_records(df: pd.DataFrame) -> List[Dict[str, object]]:
    """Righe del DataFrame come dict con tipi Python nativi (per il JSON)."""
    out = []
    for rec in df.to_dict(orient="records"):
        out.append({k: (v.item() if isinstance(v, np.generic) else v) for k, v in rec.items()})
    return out
