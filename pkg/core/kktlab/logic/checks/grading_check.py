from typing import List

from kktlab.base_classes.base_check import BaseCheck
from kktlab.exceptions import UsageError
from kktlab.logic.liealg import check_graded_involution, check_grading
from kktlab.logic.parsing import parse_algebra
from kktlab.logic.report import CheckReport


class GradingCheck(BaseCheck):
    """Grading compatibility, plus the graded involution when the target carries one."""
    target_kind = "algebra"

    def check(self, target: str) -> List[CheckReport]:
        L = parse_algebra(target)
        if L.grading is None:
            raise UsageError(f"{target!r} builds an algebra without a grading")
        self.details = {"algebra": L.name, "dim": L.dim, "graded_dims": L.graded_dims(),
                        "degrees": L.degrees(), "involution": L.involution is not None}
        reports = [check_grading(L)]
        if L.involution is not None:
            reports.append(check_graded_involution(L))
        return reports
