#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Runner dei test senza pytest: `python3 test_metrology.py` esegue le funzioni test_* del
modulo e stampa il riepilogo. Con pytest gli stessi file vengono raccolti normalmente.
"""

import time
from typing import Any, Dict


def esegui(namespace: Dict[str, Any], titolo: str) -> int:
    """Esegue le funzioni test_* in ordine di definizione; exit code 1 se qualcosa fallisce."""
    passed = failed = 0
    print("\n" + "=" * 60)
    print(f"TEST: {titolo}")
    print("=" * 60)
    for name, fn in list(namespace.items()):
        if not name.startswith("test_") or not callable(fn):
            continue
        start = time.perf_counter()
        try:
            fn()
        except Exception as exc:
            print(f"  ❌ {name}: {type(exc).__name__}: {exc}")
            failed += 1
        else:
            print(f"  ✅ {name} ({time.perf_counter() - start:.1f}s)")
            passed += 1

    print("\n" + "=" * 60)
    print(f"RISULTATI: {passed}/{passed + failed} test passati, {failed} falliti")
    print("=" * 60)
    if failed:
        print("\n⚠️  Ci sono test falliti! Verificare le implementazioni.")
        return 1
    print("\n✅ Tutti i test passati!")
    return 0
