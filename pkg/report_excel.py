#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Report Excel — esporta le tabelle di riproduzione in un unico file .xlsx

Fogli:
- TabellaSimplesso: formule chiuse vs misure dirette per S₂ₓ
- CatenaTeorema3: verdetti e spread dei controlli sui corpi di larghezza costante
- Remark2 / Esempio1: report chiave-valore

Uso:
    python3 report_excel.py -o report_hypwidth.xlsx [--x 0.25 0.5 1 1.5] [--no-falsify]
"""

from __future__ import annotations

import argparse
import sys
from typing import Dict, Optional, Union

import pandas as pd

from paper_reports import SIMPLEX_X, example1_report, remark2_report, simplex_table, theorem3_chain


def _key_value_frame(report: Dict[str, object]) -> pd.DataFrame:
    return pd.DataFrame([{"CHIAVE": k, "VALORE": str(v) if isinstance(v, (dict, list)) else v}
                         for k, v in report.items()])


def _autosize_columns(writer) -> None:
    for sheet in writer.book.worksheets:
        for col_cells in sheet.columns:
            col_letter = col_cells[0].column_letter
            max_len = max((len(str(c.value)) for c in col_cells[:500] if c.value is not None), default=0)
            if max_len > 0:
                sheet.column_dimensions[col_letter].width = min(max_len + 2, 50)


def write_output_excel(output_path: str, simplex_df: pd.DataFrame, chain_df: pd.DataFrame,
                       remark2: Optional[Dict[str, object]] = None,
                       example1: Optional[Dict[str, object]] = None) -> None:
    """Scrive file Excel di output"""
    with pd.ExcelWriter(output_path, engine="openpyxl") as writer:
        simplex_df.to_excel(writer, sheet_name="TabellaSimplesso", index=False)
        if not chain_df.empty:
            chain_df.to_excel(writer, sheet_name="CatenaTeorema3", index=False)
        else:
            pd.DataFrame(columns=["CORPO"]).to_excel(writer, sheet_name="CatenaTeorema3", index=False)
        if remark2 is not None:
            _key_value_frame(remark2).to_excel(writer, sheet_name="Remark2", index=False)
        if example1 is not None:
            _key_value_frame(example1).to_excel(writer, sheet_name="Esempio1", index=False)

        _autosize_columns(writer)


def write_report_excel(output_path: str, sheet_name: str, report: Union[pd.DataFrame, Dict[str, object]]) -> None:
    """Scrive un singolo report (tabella o chiave-valore) su un foglio"""
    df = report if isinstance(report, pd.DataFrame) else _key_value_frame(report)
    with pd.ExcelWriter(output_path, engine="openpyxl") as writer:
        df.to_excel(writer, sheet_name=sheet_name[:31], index=False)
        _autosize_columns(writer)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Report Excel delle riproduzioni hypwidth")
    parser.add_argument("-o", "--output", required=True, help="File Excel output")
    parser.add_argument("--x", nargs="+", type=float, default=list(SIMPLEX_X), help="Valori di x per S₂ₓ")
    parser.add_argument("--no-falsify", action="store_true", help="Salta il falsificatore su S₂ₓ")
    args = parser.parse_args(argv)

    try:
        print("📐 Tabella del simplesso...")
        simplex_df = simplex_table(args.x)
        print("🔁 Catena larghezza costante / diametro costante / completezza...")
        chain_df = theorem3_chain()
        remark2 = remark2_report(falsify=not args.no_falsify)
        example1 = example1_report()
        write_output_excel(args.output, simplex_df, chain_df, remark2, example1)
    except Exception as e:
        print(f"❌ Errore durante la generazione del report: {e}")
        return 1
    print(f"✅ File generato con successo: {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
