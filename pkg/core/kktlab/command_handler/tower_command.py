import json
import logging
from typing import Any, Dict, List, Optional

from kktlab.base_classes.base_command import BaseCommand
from kktlab.config.settings import (CON_BLACK_NODES, H2_CON_TYPES, MAGIC_ROWS,
                                    SCHEMA)
from kktlab.logic.chevalley import build_chevalley, cartan_type, graded_chevalley
from kktlab.logic.kkt import KKTTower, expected_h2_dims, kkt_construct
from kktlab.logic.liealg import (Fingerprint, StructureLieAlgebra,
                                 fingerprint, fingerprint_equal)
from kktlab.logic.parsing import parse_jordan
from kktlab.logic.report import CheckReport
from kktlab.logic.triplesys import jts_tensor

logger = logging.getLogger(__name__)

TOWER_ROWS = ("der", "str_reduced", "str", "con")


def compare_fingerprints(name: str, ours: Fingerprint, expected: Fingerprint, against: str) -> CheckReport:
    equal = fingerprint_equal(ours, expected)
    witness = None if equal else {"computed": ours.to_dict(), "expected": expected.to_dict()}
    return CheckReport(name=name, passed=equal, checked=1, witness=witness, details={"against": against})


def named_fingerprint(type_name: str, node: Optional[int] = None) -> Fingerprint:
    """Fingerprint of a named Chevalley algebra, graded by node when one is given."""
    gcm = cartan_type(type_name)
    if node is None:
        L, _ = build_chevalley(gcm)
    else:
        L, _ = graded_chevalley(gcm, node)
    return fingerprint(L)


class TowerCommand(BaseCommand):
    name = "tower"

    def _members(self, tower: KKTTower) -> Dict[str, StructureLieAlgebra]:
        return {"der": tower.der, "str_reduced": tower.str_reduced, "str": tower.str, "con": tower.con}

    def _named_checks(self, tower: KKTTower, prints: Dict[str, Fingerprint]) -> List[CheckReport]:
        J = tower.jordan
        tag = J.kind.tag
        checks = []
        if J.n == 2:
            expected = expected_h2_dims(tag)
            dims = tower.dims()
            mismatched = {row: [dims[row], value] for row, value in expected.items() if dims[row] != value}
            checks.append(CheckReport(name=f"h2_dims[{J.name}]", passed=not mismatched, checked=len(expected),
                                      witness=mismatched or None, details={"expected": expected}))
            type_name, node = H2_CON_TYPES[tag]
            checks.append(compare_fingerprints(f"con_type[{J.name}]", prints["con"],
                                               named_fingerprint(type_name, node), f"{type_name} node {node}"))
        elif J.n == 3:
            for row in ("der", "str_reduced", "con"):
                type_name = MAGIC_ROWS[row][tag]
                node = CON_BLACK_NODES[type_name] if row == "con" else None
                against = type_name if node is None else f"{type_name} node {node}"
                checks.append(compare_fingerprints(f"{row}_type[{J.name}]", prints[row],
                                                   named_fingerprint(type_name, node), against))
        return checks

    def _golden_checks(self, members: Dict[str, StructureLieAlgebra],
                       prints: Dict[str, Fingerprint]) -> List[CheckReport]:
        golden = self.lab.golden_fingerprints()
        checks = []
        for row, L in members.items():
            if L.name in golden:
                checks.append(compare_fingerprints(f"golden[{L.name}]", prints[row],
                                                   Fingerprint.from_dict(golden[L.name]), "golden"))
        return checks

    def export(self, tower: KKTTower, path: str) -> None:
        data = {"schema": SCHEMA, "jordan": tower.jordan.name, "triple": jts_tensor(tower.jordan).to_json(),
                "algebras": {row: L.to_json() for row, L in self._members(tower).items()}}
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(data, fh, separators=(",", ":"))
        logger.info(f"exported the tower of {tower.jordan.name} to {path}")

    def run(self, jordan: str, export: Optional[str] = None, **options) -> Dict[str, Any]:
        J = parse_jordan(jordan)
        tower = kkt_construct(J)
        members = self._members(tower)
        prints = {row: fingerprint(L) for row, L in members.items()}

        checks = list(tower.checks)
        checks.extend(self._named_checks(tower, prints))
        checks.extend(self._golden_checks(members, prints))

        results = {
            "jordan": J.name,
            "jordan_dim": J.dim,
            "dims": tower.dims(),
            "con_graded_dims": tower.con.graded_dims(),
            "fingerprints": {row: fp.to_dict() for row, fp in prints.items()},
        }
        if J.n == 2:
            results["expected_dims"] = expected_h2_dims(J.kind.tag)
        if export:
            self.export(tower, export)
            results["export"] = export
        return self.report({"jordan": jordan}, results, checks)
