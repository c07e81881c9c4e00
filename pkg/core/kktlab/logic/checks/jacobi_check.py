from typing import List

from kktlab.base_classes.base_check import BaseCheck
from kktlab.logic.liealg import check_jacobi
from kktlab.logic.parsing import parse_algebra
from kktlab.logic.report import CheckReport


class JacobiCheck(BaseCheck):
    target_kind = "algebra"

    def check(self, target: str) -> List[CheckReport]:
        L = parse_algebra(target)
        self.details = {"algebra": L.name, "dim": L.dim}
        return [check_jacobi(L, mode=self.lab.mode, seed=self.lab.seed, threads=self.lab.threads)]
