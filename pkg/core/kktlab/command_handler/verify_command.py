from typing import Any, Dict

from kktlab.base_classes.base_check import get_check
from kktlab.base_classes.base_command import BaseCommand


class VerifyCommand(BaseCommand):
    name = "verify"

    def run(self, check: str, target: str, **options) -> Dict[str, Any]:
        check_cls = get_check(check)
        runner = check_cls(self.lab)
        reports = runner.check(target)
        results = dict(runner.details)
        results["target_kind"] = check_cls.target_kind
        return self.report({"check": check, "target": target}, results, reports)
