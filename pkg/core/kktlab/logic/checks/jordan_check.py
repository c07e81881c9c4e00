from typing import List

from kktlab.base_classes.base_check import BaseCheck
from kktlab.config.settings import DEFAULT_JORDAN_TRIALS
from kktlab.logic.jordan import check_jordan_identity
from kktlab.logic.parsing import parse_jordan
from kktlab.logic.report import CheckReport


class JordanCheck(BaseCheck):
    target_kind = "jordan"

    def check(self, target: str) -> List[CheckReport]:
        alg = parse_jordan(target)
        # the basis scan is always exhaustive, a sampled mode only sets the random trials
        mode = self.lab.mode
        trials = mode.samples if mode is not None and not mode.full else DEFAULT_JORDAN_TRIALS
        self.details = {"algebra": alg.name, "dim": alg.dim}
        return [check_jordan_identity(alg, trials=trials, seed=self.lab.seed, threads=self.lab.threads)]
