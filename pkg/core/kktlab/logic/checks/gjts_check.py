from typing import List

from kktlab.base_classes.base_check import BaseCheck
from kktlab.logic.parsing import parse_triple
from kktlab.logic.report import CheckReport
from kktlab.logic.triplesys import check_gjts, check_outer_symmetry


class GJTSCheck(BaseCheck):
    """
    The generalized Jordan triple identity. Outer symmetry is reported in the details only,
    since the slotted products are not expected to have it.
    """
    target_kind = "triple"

    def check(self, target: str) -> List[CheckReport]:
        t, name = parse_triple(target)
        symmetry = check_outer_symmetry(t, name=f"outer_symmetry[{name}]")
        self.details = {"triple_system": name, "dim": t.dim, "nonzero_entries": t.nonzero_count(),
                        "outer_symmetric": symmetry.passed}
        if not symmetry.passed:
            self.details["outer_symmetry_witness"] = symmetry.witness
        return [check_gjts(t, mode=self.lab.mode, seed=self.lab.seed, threads=self.lab.threads,
                           name=f"gjts[{name}]")]
