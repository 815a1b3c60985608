#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
hypwidth — riga di comando per larghezza, spessore e diametro dei corpi convessi di ℍ^d

Sottocomandi:
    measure BODY {width|thickness|diameter|maxwidth}
    check   BODY {constant-width|constant-diameter|complete|strictly-convex|
                  reduced-falsify|theorem1|theorem2|claim1}
    make    {ball|orthant|triangle|tetrahedron|reuleaux|example1|random}
    paper   {simplex-table|remark2|example1|theorem3-chain} [--xlsx OUT.xlsx]
    render  BODY OUT.svg

Il report JSON va su stdout, i messaggi di stato su stderr (--quiet per silenziarli).

Exit code: 0 ok/pass, 1 verifica fallita, 2 input non valido, 3 precondizione geometrica,
4 operazione non supportata.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from body_io import DocumentError, body_to_dict, dumps, load_body, witness_to_dict
from body_model import Polytope
from constructions import (
    make_ball,
    make_ball_orthant,
    make_example1,
    make_regular_tetrahedron,
    make_regular_triangle,
    make_reuleaux,
    random_polytope,
)
from lorentz_core import GeometryError, HPoint, Hyperplane, UnitTangent, from_klein, project_ph, tangent_frame
from metrology import (
    CheckReport,
    MetrologyConfig,
    TheoremInapplicable,
    as_polytope,
    check_complete,
    check_constant_diameter,
    check_constant_width,
    check_strict_convexity,
    claim1_report,
    diameter,
    max_width,
    reducedness_falsifier,
    theorem1_report,
    theorem2_report,
    thickness,
    width_h,
    width_in_direction,
)
from paper_reports import SIMPLEX_X, example1_report, frame_records, remark2_report, simplex_table, theorem3_chain
from rendering import UnsupportedDimension, render_svg
from report_excel import write_report_excel

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_GEOMETRY, EXIT_UNSUPPORTED = 0, 1, 2, 3, 4

_QUIET = False


def _status(msg: str) -> None:
    if not _QUIET:
        print(msg, file=sys.stderr)


def _config(args: argparse.Namespace) -> MetrologyConfig:
    kwargs: Dict[str, Any] = {"tol": args.tol, "grid": args.grid, "refine_iters": args.refine_iters}
    return MetrologyConfig(**kwargs)


def _emit(report: Dict[str, Any], args: argparse.Namespace) -> None:
    sys.stdout.write(dumps(report, args.json_indent))


def _check_document(name: str, rep: CheckReport, args, cfg: MetrologyConfig) -> Dict[str, Any]:
    return {
        "command": f"check {name}",
        "inputs": {"body": str(args.body), "delta": getattr(args, "delta", None)},
        "values": {"target": rep.target, "spread": rep.spread, **rep.details},
        "tolerances": {"tol": cfg.tol, "effective": rep.tolerance},
        "witnesses": {"worst": witness_to_dict(rep.worst_witness)},
        "grid": {"size": args.grid, "refine_iters": cfg.refine_iters},
        "passed": rep.passed,
    }


# -----------------------------
# measure
# -----------------------------

def _hyperplane_for_width(C: Polytope, args) -> Hyperplane:
    if args.normal:
        return Hyperplane(np.asarray(args.normal, dtype=float))
    if args.pencil_dir:
        w = np.asarray(args.pencil_dir, dtype=float)
        if w.size != C.dim:
            raise DocumentError(f"--pencil-dir richiede {C.dim} componenti")
        direction = UnitTangent(C.reference, w @ tangent_frame(C.reference))
        support = width_in_direction(C, direction, args.side)
        return support.hyperplane
    raise DocumentError("measure width richiede --normal oppure --pencil-dir")


def cmd_measure(args) -> int:
    cfg = _config(args)
    body = load_body(args.body)
    C = as_polytope(body, cfg)
    report: Dict[str, Any] = {"command": f"measure {args.measure}",
                              "inputs": {"body": str(args.body), "dim": C.dim, "vertices": len(C.vertices)},
                              "tolerances": {"tol": cfg.tol, "discretization_bound": C.discretization_bound},
                              "grid": {"size": cfg.grid_for(C.dim), "refine_iters": cfg.refine_iters}}
    _status(f"📏 {args.measure} su {len(C.vertices)} vertici (d={C.dim})")

    if args.measure == "diameter":
        value, a, b = diameter(C)
        report.update(values={"diameter": value}, witnesses={"a": witness_to_dict(a), "b": witness_to_dict(b)})
    elif args.measure == "maxwidth":
        report.update(values={"max_width": max_width(C, cfg=cfg)}, witnesses={})
    elif args.measure == "thickness":
        rep = thickness(C, cfg=cfg)
        report.update(values={"thickness": rep.value, "source": rep.source},
                      witnesses={"direction": witness_to_dict(rep.direction),
                                 "hyperplane": witness_to_dict(rep.hyperplane)})
    else:
        rep = width_h(C, _hyperplane_for_width(C, args))
        report.update(values={"width": rep.value},
                      witnesses={"hyperplane": witness_to_dict(rep.hyperplane),
                                 "far_point": witness_to_dict(rep.far_point),
                                 "far_hyperplane": witness_to_dict(rep.far_hyperplane)})
    report["passed"] = True
    _emit(report, args)
    return EXIT_OK


# -----------------------------
# check
# -----------------------------

def _require_delta(args) -> float:
    if args.delta is None:
        raise DocumentError(f"check {args.check} richiede --delta")
    return float(args.delta)


def cmd_check(args) -> int:
    cfg = _config(args)
    body = load_body(args.body)
    name = args.check
    _status(f"🔍 check {name}")

    if name == "theorem2":
        try:
            rep = theorem2_report(body, cfg.tol, cfg)
        except TheoremInapplicable as exc:
            _status(f"ℹ️  {exc}")
            _emit({"command": "check theorem2", "inputs": {"body": str(args.body)},
                   "verdict": "inapplicable", "reason": str(exc), "passed": None}, args)
            return EXIT_OK
    elif name == "reduced-falsify":
        P = as_polytope(body, cfg)
        witness = reducedness_falsifier(P, cfg=cfg)
        doc = {"command": "check reduced-falsify", "inputs": {"body": str(args.body)},
               "values": {"thickness": thickness(P, cfg=cfg).value},
               "witnesses": {"truncation": body_to_dict(witness) if witness is not None else None},
               "verdict": "not reduced" if witness is not None else "no witness (one-sided search)",
               "passed": witness is None}
        _emit(doc, args)
        return EXIT_OK if witness is None else EXIT_FAILED
    elif name == "theorem1":
        rep = theorem1_report(as_polytope(body, cfg), cfg)
    elif name == "claim1":
        rep = claim1_report(as_polytope(body, cfg))
    elif name == "strictly-convex":
        rep = check_strict_convexity(body, cfg.tol, args.grid, cfg)
    else:
        delta = _require_delta(args)
        if name == "constant-width":
            rep = check_constant_width(body, delta, cfg.tol, args.grid, cfg)
        elif name == "constant-diameter":
            rep = check_constant_diameter(body, delta, cfg.tol, args.samples, cfg)
        else:
            rep = check_complete(body, delta, cfg.tol, cfg=cfg)

    _emit(_check_document(name, rep, args, cfg), args)
    _status("✅ PASS" if rep.passed else f"❌ FAIL (spread {rep.spread:.3g} > {rep.tolerance:.3g})")
    return EXIT_OK if rep.passed else EXIT_FAILED


# -----------------------------
# make
# -----------------------------

def _center(args) -> HPoint:
    if args.center is None:
        return HPoint.origin(args.d)
    return from_klein(np.asarray(args.center, dtype=float))


def cmd_make(args) -> int:
    shape = args.shape
    if shape == "ball":
        body = make_ball(_center(args), args.rho)
    elif shape == "orthant":
        body = make_ball_orthant(args.rho, args.d, args.n)
    elif shape == "triangle":
        body = make_regular_triangle(args.x)
    elif shape == "tetrahedron":
        body = make_regular_tetrahedron(args.x)
    elif shape == "reuleaux":
        body = make_reuleaux(args.k, args.delta if args.delta is not None else 1.0)
    elif shape == "example1":
        body = make_example1(args.rho, args.theta, args.n or 200)
    else:
        body = random_polytope(args.d, args.m, np.random.default_rng(args.seed))
    doc = body_to_dict(body, args.coords)
    text = dumps(doc, args.json_indent)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        _status(f"✅ Corpo scritto in {args.output}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -----------------------------
# paper
# -----------------------------

def cmd_paper(args) -> int:
    cfg = _config(args)
    table: Any = None
    if args.report == "simplex-table":
        df = simplex_table(args.x or SIMPLEX_X)
        table = df
        passed = bool(df["EDGE_MINORE"].all() and (df["DELTA_FACET"] <= 1e-6).all() and (df["DELTA_EDGE"] <= 1e-6).all())
        doc = {"command": "paper simplex-table", "rows": frame_records(df), "passed": passed}
    elif args.report == "remark2":
        doc = {"command": "paper remark2", **remark2_report(cfg=cfg)}
    elif args.report == "example1":
        doc = {"command": "paper example1", **example1_report(cfg=cfg)}
    else:
        df = theorem3_chain(tol=max(cfg.tol, 2e-3), cfg=cfg)
        table = df
        passed = bool(df[["DIAMETRO_COSTANTE", "COMPLETO"]].all().all())
        doc = {"command": "paper theorem3-chain", "rows": frame_records(df), "passed": passed}
    if args.xlsx:
        sheet = args.report.replace("-", "_")
        write_report_excel(args.xlsx, sheet, table if table is not None else {k: v for k, v in doc.items() if k != "command"})
        _status(f"📊 Report Excel scritto in {args.xlsx}")
    _emit(doc, args)
    return EXIT_OK if doc["passed"] else EXIT_FAILED


# -----------------------------
# render
# -----------------------------

def cmd_render(args) -> int:
    cfg = _config(args)
    body = load_body(args.body)
    if body.dim != 2:
        raise UnsupportedDimension("render supports d=2 only")
    H, segment = None, None
    if args.show_hyperplane or args.show_width_segment:
        P = as_polytope(body, cfg)
        H = Hyperplane(np.asarray(args.normal, dtype=float)) if args.normal else thickness(P, cfg=cfg).hyperplane
        if args.show_width_segment:
            rep = width_h(P, H)
            segment = (rep.far_point, project_ph(rep.far_point, H))
    render_svg(body, args.out, H if args.show_hyperplane else None, segment)
    _status(f"🖼️  SVG scritto in {args.out}")
    return EXIT_OK


# -----------------------------
# parser
# -----------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-3, help="Tolleranza delle verifiche (default 1e-3)")
    common.add_argument("--grid", type=int, default=None, help="Direzioni della griglia (default 720 / 4096)")
    common.add_argument("--refine-iters", type=int, default=40, help="Dimezzamenti della compass search")
    common.add_argument("--seed", type=int, default=0, help="Seme per i corpi casuali")
    common.add_argument("--json-indent", type=int, default=2, help="Indentazione del JSON (0 = compatto)")
    common.add_argument("--quiet", action="store_true", help="Nessun messaggio di stato su stderr")

    parser = argparse.ArgumentParser(prog="hypwidth", description="Larghezza, spessore e diametro in ℍ^d")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", parents=[common], help="Misure su un corpo")
    p.add_argument("body")
    p.add_argument("measure", choices=["width", "thickness", "diameter", "maxwidth"])
    p.add_argument("--normal", nargs="+", type=float, help="Normale dell'iperpiano (coordinate dell'iperboloide)")
    p.add_argument("--pencil-dir", nargs="+", type=float, help="Direzione nel frame tangente del riferimento interno")
    p.add_argument("--side", choices=["plus", "minus"], default="plus")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("check", parents=[common], help="Verifiche su un corpo")
    p.add_argument("body")
    p.add_argument("check", choices=["constant-width", "constant-diameter", "complete", "strictly-convex",
                                     "reduced-falsify", "theorem1", "theorem2", "claim1"])
    p.add_argument("--delta", type=float)
    p.add_argument("--samples", type=int, default=None, help="Campioni di bordo (constant-diameter)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("make", parents=[common], help="Costruisce un corpo di riferimento")
    p.add_argument("shape", choices=["ball", "orthant", "triangle", "tetrahedron", "reuleaux", "example1", "random"])
    p.add_argument("--x", type=float, default=1.0)
    p.add_argument("--rho", type=float, default=1.0)
    p.add_argument("--delta", type=float)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, default=10, help="Punti del politopo casuale")
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--center", nargs="+", type=float, help="Centro della palla (coordinate di Klein)")
    p.add_argument("--coords", choices=["hyperboloid", "klein"], default="hyperboloid")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_make)

    p = sub.add_parser("paper", parents=[common], help="Report di riproduzione")
    p.add_argument("report", choices=["simplex-table", "remark2", "example1", "theorem3-chain"])
    p.add_argument("--x", nargs="+", type=float)
    p.add_argument("--xlsx", help="Esporta anche il report in un file Excel")
    p.set_defaults(func=cmd_paper)

    p = sub.add_parser("render", parents=[common], help="SVG nel disco di Poincaré (d=2)")
    p.add_argument("body")
    p.add_argument("out")
    p.add_argument("--show-hyperplane", action="store_true")
    p.add_argument("--show-width-segment", action="store_true")
    p.add_argument("--normal", nargs="+", type=float, help="Iperpiano da mostrare (default: quello di spessore)")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: Optional[list] = None) -> int:
    global _QUIET
    args = build_parser().parse_args(argv)
    _QUIET = args.quiet
    try:
        return args.func(args)
    except UnsupportedDimension as exc:
        print(f"❌ {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except GeometryError as exc:
        print(f"❌ Precondizione geometrica: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except (DocumentError, json.JSONDecodeError, OSError, ValueError) as exc:
        print(f"❌ Input non valido: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
