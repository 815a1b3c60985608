#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Test della riga di comando hypwidth (cli.py), dei documenti JSON (body_io.py),
del rendering SVG (rendering.py) e dell'export Excel (report_excel.py).
"""

import io
import json
import os
import sys
import tempfile
import xml.etree.ElementTree as ET
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import numpy as np
import pandas as pd

# Aggiungi path del progetto
sys.path.insert(0, os.path.dirname(__file__))

from body_io import DocumentError, body_from_dict, body_to_dict, dumps, load_body, save_body
from cli import main
from constructions import hyperplane_spanned, make_regular_tetrahedron, make_regular_triangle
from lorentz_core import project_ph
from paper_reports import simplex_table
from rendering import UnsupportedDimension, render_svg
from report_excel import write_output_excel

SVG = "{http://www.w3.org/2000/svg}"


def _run(*argv):
    """Esegue la CLI catturando stdout; restituisce (exit code, stdout)."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main([str(a) for a in argv])
    return code, out.getvalue()


def _make(tmp, shape, *extra):
    path = Path(tmp) / f"{shape}.json"
    code, _ = _run("make", shape, *extra, "-o", path, "--quiet")
    assert code == 0
    return path


# ============================================================
# Documenti JSON
# ============================================================

def test_round_trip_esatto_del_documento():
    with tempfile.TemporaryDirectory() as tmp:
        for shape, extra in (("triangle", ("--x", "0.7")), ("tetrahedron", ()), ("reuleaux", ("--k", "5")),
                             ("random", ("--d", "3", "--m", "12", "--seed", "4"))):
            path = _make(tmp, shape, *extra)
            text = path.read_text(encoding="utf-8")
            again = Path(tmp) / "again.json"
            save_body(load_body(path), again)
            assert again.read_text(encoding="utf-8") == text, shape


def test_coordinate_di_klein():
    doc = {"dim": 2, "kind": "ball_intersection", "coords": "klein", "centers": [[0.2, 0.1]], "radius": 0.5}
    body = body_from_dict(doc)
    assert abs(body.centers[0].coords[-1] - 1.0 / np.sqrt(1.0 - 0.05)) <= 1e-15
    out = body_to_dict(body, coords="klein")
    assert np.allclose(out["centers"][0], [0.2, 0.1], atol=1e-15)


def test_documenti_non_validi():
    bad_docs = [
        {"kind": "polytope", "vertices": [[0.0, 0.0]]},
        {"dim": 2, "kind": "simplex", "vertices": [[0.0, 0.0]]},
        {"dim": 2, "kind": "polytope", "coords": "klein", "vertices": [[1.2, 0.0], [0.0, 0.1], [0.1, 0.0]]},
        {"dim": 2, "kind": "polytope", "radius": 1.0, "vertices": [[0.0, 0.0], [0.1, 0.0], [0.0, 0.1]]},
        {"dim": 2, "kind": "ball_intersection", "centers": [[0.0, 0.0]]},
        {"dim": 2, "kind": "polytope", "coords": "hyperboloid", "vertices": [[0.0, 0.0]]},
    ]
    for doc in bad_docs:
        try:
            body_from_dict(doc)
        except DocumentError:
            continue
        raise AssertionError(f"Documento non valido accettato: {doc}")


def test_float_a_diciassette_cifre():
    text = dumps({"x": 0.1, "n": float("nan"), "flag": True, "k": 3}, indent=0)
    assert json.loads(text) == {"x": 0.1, "n": None, "flag": True, "k": 3}
    assert "0.10000000000000001" in text


# ============================================================
# Sottocomandi
# ============================================================

def test_measure_diametro_e_larghezza():
    with tempfile.TemporaryDirectory() as tmp:
        path = _make(tmp, "triangle", "--x", "1.0")
        code, out = _run("measure", path, "diameter", "--quiet")
        assert code == 0
        assert abs(json.loads(out)["values"]["diameter"] - 2.0) <= 1e-9

        T = make_regular_triangle(1.0)
        n = hyperplane_spanned(T.array[[0, 1]], towards=T.vertices[2]).n.coords
        code, out = _run("measure", path, "width", "--normal", *[repr(float(v)) for v in n], "--quiet")
        assert code == 0
        doc = json.loads(out)
        assert abs(doc["values"]["width"] - 1.5394) <= 1e-3
        assert set(doc["witnesses"]) == {"hyperplane", "far_point", "far_hyperplane"}

        # stessa retta con la normale opposta
        code, out = _run("measure", path, "width", "--normal", *[repr(float(-v)) for v in n], "--quiet")
        assert code == 0
        assert abs(json.loads(out)["values"]["width"] - doc["values"]["width"]) <= 1e-12


def test_check_con_esito_e_exit_code():
    with tempfile.TemporaryDirectory() as tmp:
        reuleaux = _make(tmp, "reuleaux", "--k", "3", "--delta", "1.0")
        code, out = _run("check", reuleaux, "constant-width", "--delta", "1.0", "--tol", "2e-3", "--quiet")
        assert code == 0 and json.loads(out)["passed"] is True

        triangle = _make(tmp, "triangle", "--x", "1.0")
        code, out = _run("check", triangle, "constant-width", "--delta", "2.0", "--quiet")
        assert code == 1 and json.loads(out)["passed"] is False


def test_errori_di_input():
    with tempfile.TemporaryDirectory() as tmp:
        triangle = _make(tmp, "triangle")
        assert _run("check", triangle, "constant-width", "--quiet")[0] == 2        # manca --delta
        broken = Path(tmp) / "broken.json"
        broken.write_text("{ non json", encoding="utf-8")
        assert _run("measure", broken, "diameter", "--quiet")[0] == 2
        assert _run("measure", Path(tmp) / "missing.json", "diameter", "--quiet")[0] == 2
        outside = Path(tmp) / "outside.json"
        outside.write_text(json.dumps({"dim": 2, "kind": "polytope", "coords": "klein",
                                       "vertices": [[1.5, 0.0], [0.0, 0.2], [-0.2, 0.0]]}), encoding="utf-8")
        assert _run("measure", outside, "diameter", "--quiet")[0] == 2


def test_precondizione_geometrica():
    with tempfile.TemporaryDirectory() as tmp:
        triangle = _make(tmp, "triangle")
        code, _ = _run("measure", triangle, "width", "--normal", "1", "0", "0", "--quiet")
        assert code == 3


def test_teorema_non_applicabile():
    with tempfile.TemporaryDirectory() as tmp:
        square = Path(tmp) / "square.json"
        square.write_text(json.dumps({"dim": 2, "kind": "polytope", "coords": "klein",
                                      "vertices": [[-0.5, -0.5], [0.5, -0.5], [0.5, 0.5], [-0.5, 0.5]]}),
                          encoding="utf-8")
        code, out = _run("check", square, "theorem2", "--quiet")
        assert code == 0
        assert json.loads(out)["verdict"] == "inapplicable"


def test_report_tabella_simplesso():
    code, out = _run("paper", "simplex-table", "--quiet")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] is True
    assert [row["x"] for row in doc["rows"]] == [0.25, 0.5, 1.0, 1.5]


def test_report_remark2():
    code, out = _run("paper", "remark2", "--quiet")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] is True
    assert doc["edge_width_below_facet_width"] is True
    assert abs(doc["roots"][0] - 7.0 / 29.0) <= 1e-12
    assert doc["s2x_truncation_witness"] is False


# ============================================================
# Rendering
# ============================================================

def test_render_reuleaux_tre_archi():
    with tempfile.TemporaryDirectory() as tmp:
        body = _make(tmp, "reuleaux", "--k", "3")
        out = Path(tmp) / "reuleaux.svg"
        assert _run("render", body, out, "--quiet")[0] == 0
        root = ET.fromstring(out.read_text(encoding="utf-8"))
        assert root.get("viewBox") == "-1.05 -1.05 2.1 2.1"
        group = root.find(f"{SVG}g")
        arcs = group.findall(f"{SVG}path")
        assert len(arcs) == 3
        assert all(" A " in p.get("d") for p in arcs)


def test_render_segmento_di_larghezza():
    T = make_regular_triangle(1.0)
    H = hyperplane_spanned(T.array[[0, 1]], towards=T.vertices[2])
    svg = render_svg(T, hyperplane=H, width_segment=(T.vertices[2], project_ph(T.vertices[2], H)))
    root = ET.fromstring(svg)
    classes = [p.get("class") for p in root.iter(f"{SVG}path")]
    assert classes.count("hyperplane") == 1 and classes.count("width") == 1
    with tempfile.TemporaryDirectory() as tmp:
        body = _make(tmp, "triangle")
        out = Path(tmp) / "t.svg"
        assert _run("render", body, out, "--show-hyperplane", "--show-width-segment", "--quiet")[0] == 0
        width = [p for p in ET.parse(out).getroot().iter(f"{SVG}path") if p.get("class") == "width"][0]
        a = np.array([float(v) for v in width.get("data-from").split()])
        assert np.linalg.norm(a) < 1.0


def test_render_solo_piano():
    with tempfile.TemporaryDirectory() as tmp:
        body = _make(tmp, "tetrahedron")
        assert _run("render", body, Path(tmp) / "t.svg", "--quiet")[0] == 4
    try:
        render_svg(make_regular_tetrahedron(0.5))
    except UnsupportedDimension as exc:
        assert str(exc) == "render supports d=2 only"
        return
    raise AssertionError("Rendering d=3 accettato")


# ============================================================
# Export Excel
# ============================================================

def test_export_excel():
    simplex = simplex_table([1.0])
    chain = pd.DataFrame([{"CORPO": "ball", "LARGHEZZA_COSTANTE": True, "SPREAD_LARGHEZZA": 1e-5}])
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "report.xlsx"
        write_output_excel(str(path), simplex, chain, remark2={"passed": True, "roots": [7 / 29, 1.0]})
        sheets = pd.read_excel(path, sheet_name=None)
        assert set(sheets) == {"TabellaSimplesso", "CatenaTeorema3", "Remark2"}
        assert bool(sheets["TabellaSimplesso"]["EDGE_MINORE"].iloc[0]) is True


def test_paper_con_export_excel():
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "tabella.xlsx"
        code, _ = _run("paper", "simplex-table", "--x", "1.0", "--xlsx", path, "--quiet")
        assert code == 0
        sheets = pd.read_excel(path, sheet_name=None)
        assert list(sheets) == ["simplex_table"]
        assert list(sheets["simplex_table"]["x"]) == [1.0]


if __name__ == "__main__":
    from verifica import esegui
    sys.exit(esegui(globals(), "cli / body_io / rendering / report_excel"))
