#!/usr/bin/env python3
"""
Golden Builder for kktlab
Regenerates data/golden/octonion_table.json and data/golden/fingerprints.json.

    python tools/golden_builder.py              # octonion table + H2(K) towers
    python tools/golden_builder.py --with-h3    # also H3(K), con H3(O) takes minutes
"""

import argparse
import json
import logging
import os
import sys

# Add parent directory to path to import from core
sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'core'))
from kktlab.config.settings import (DEFAULT_GOLDEN_DIR, GOLDEN_FINGERPRINTS,
                                    GOLDEN_OCTONION_TABLE, SCHEMA)
from kktlab.logic.compalg import CompositionKind, table_as_strings
from kktlab.logic.jordan import build_jordan
from kktlab.logic.kkt import kkt_construct
from kktlab.logic.liealg import fingerprint

logger = logging.getLogger("golden_builder")

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), '..')
CONVENTION = "(a, b)(c, d) = (ac - conj(d) b, da + b conj(c)); e_{4+m} = (0, e_m)"


def octonion_table() -> dict:
    kind = CompositionKind("O")
    return {"schema": SCHEMA, "kind": kind.tag, "basis": [f"e{i}" for i in range(kind.dim)],
            "convention": CONVENTION, "table": table_as_strings(kind)}


def tower_fingerprints(sizes) -> dict:
    prints = {}
    for n in sizes:
        for tag in ("R", "C", "H", "O"):
            tower = kkt_construct(build_jordan(n, tag))
            for L in (tower.der, tower.str_reduced, tower.str, tower.con):
                prints[L.name] = fingerprint(L).to_dict()
            print(f"Fingerprinted the tower of {tower.jordan.name}: {tower.dims()}")
    return prints


def write(path: str, data: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")
    print(f"Wrote {path}")


def main() -> int:
    parser = argparse.ArgumentParser(description="Regenerate the golden artifacts.")
    parser.add_argument("--with-h3", action="store_true", help="include the H3(K) towers")
    parser.add_argument("--out", default=os.path.join(ROOT, DEFAULT_GOLDEN_DIR))
    args = parser.parse_args()
    logging.basicConfig(level=logging.INFO, stream=sys.stderr)

    os.makedirs(args.out, exist_ok=True)
    write(os.path.join(args.out, GOLDEN_OCTONION_TABLE), octonion_table())

    fingerprints_path = os.path.join(args.out, GOLDEN_FINGERPRINTS)
    existing = {}
    if os.path.isfile(fingerprints_path):
        with open(fingerprints_path, "r", encoding="utf-8") as fh:
            existing = json.load(fh).get("fingerprints", {})
    existing.update(tower_fingerprints((2, 3) if args.with_h3 else (2,)))
    write(fingerprints_path, {
        "schema": SCHEMA,
        "description": "Fingerprints of der, str', str and con of H2(K) and H3(K); "
                       "regenerate with tools/golden_builder.py",
        "fingerprints": existing,
    })
    return 0


if __name__ == "__main__":
    sys.exit(main())
