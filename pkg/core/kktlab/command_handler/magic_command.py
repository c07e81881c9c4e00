import logging
from typing import Any, Dict, List, Optional, Tuple

from kktlab.base_classes.base_command import BaseCommand
from kktlab.command_handler.extend_command import describe_extension
from kktlab.command_handler.tower_command import (compare_fingerprints,
                                                  named_fingerprint)
from kktlab.config.settings import CON_BLACK_NODES, MAGIC_ROWS
from kktlab.logic.chevalley import cartan_type, verify_extension_isomorphism
from kktlab.logic.jordan import build_jordan
from kktlab.logic.kkt import kkt_construct
from kktlab.logic.liealg import fingerprint
from kktlab.logic.report import CheckReport

logger = logging.getLogger(__name__)

CORNER_FIELDS = ("C", "H", "O")
CORNER_ROWS = ("str_reduced", "con", "last")
ALL_FIELDS = ("R", "C", "H", "O")
ALL_ROWS = ("der", "str_reduced", "con", "last")

# the black node of the con row extended by one node is 7-graded
LAST_ROW_DEPTH = 7


class MagicCommand(BaseCommand):
    """
    Rows der, str', con of H3(K) against the named Chevalley algebras, and the last row as the
    con-row diagram extended at its black node, whose g_-1 is checked against H3(K)^2.
    """
    name = "magic"

    def _tower_cells(self, tag: str, rows) -> List[Tuple[Optional[str], CheckReport]]:
        tower = kkt_construct(build_jordan(3, tag))
        members = {"der": tower.der, "str_reduced": tower.str_reduced, "con": tower.con}
        cells = [(None, c) for c in tower.checks if not c.passed]
        for row in rows:
            if row not in members:
                continue
            type_name = MAGIC_ROWS[row][tag]
            node = CON_BLACK_NODES[type_name] if row == "con" else None
            check = compare_fingerprints(f"magic[{row},{tag}]", fingerprint(members[row]),
                                         named_fingerprint(type_name, node), type_name)
            check.details["dim"] = members[row].dim
            cells.append((row, check))
        return cells

    def _last_cell(self, tag: str, isomorphism: bool) -> List[Tuple[Optional[str], CheckReport]]:
        con_type = MAGIC_ROWS["con"][tag]
        black = CON_BLACK_NODES[con_type]
        h = cartan_type(con_type)
        entry = describe_extension(h, black, 2)
        expected = MAGIC_ROWS["last"][tag]
        passed = entry.get("type") == expected and entry.get("depth") == LAST_ROW_DEPTH
        check = CheckReport(name=f"magic[last,{tag}]", passed=passed, checked=1,
                            witness=None if passed else {"type": entry.get("type"), "depth": entry.get("depth")},
                            details={"against": expected, "dim": entry.get("dim"), "depth": entry.get("depth")})
        cells = [("last", check)]
        if isomorphism:
            cells.append((None, verify_extension_isomorphism(h, black, 2)))
        return cells

    def run(self, full: bool = False, isomorphism: bool = True, **options) -> Dict[str, Any]:
        fields = ALL_FIELDS if full else CORNER_FIELDS
        rows = ALL_ROWS if full else CORNER_ROWS
        checks: List[CheckReport] = []
        table: Dict[str, Dict[str, Any]] = {row: {} for row in rows}
        for tag in fields:
            cells = self._tower_cells(tag, rows)
            if "last" in rows:
                cells += self._last_cell(tag, isomorphism)
            for row, check in cells:
                if row is not None:
                    table[row][tag] = {"type": MAGIC_ROWS[row][tag], "dim": check.details.get("dim"),
                                       "passed": check.passed}
            checks.extend(check for _, check in cells)
            logger.info(f"magic square column {tag}: {sum(c.passed for _, c in cells)}/{len(cells)} checks passed")
        results = {"fields": list(fields), "rows": list(rows), "table": table}
        return self.report({"full": full, "isomorphism": isomorphism}, results, checks)
