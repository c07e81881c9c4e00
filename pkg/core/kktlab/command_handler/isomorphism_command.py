from typing import Any, Dict

from kktlab.base_classes.base_command import BaseCommand
from kktlab.exceptions import NotFiniteTypeError, UsageError
from kktlab.logic.chevalley import verify_extension_isomorphism
from kktlab.logic.parsing import parse_count, parse_node, parse_type_or_gcm


class IsomorphismCommand(BaseCommand):
    """(h_-1)^n with the slotted product against g_-1 of the diagram extended by n - 1 nodes."""
    name = "isomorphism"

    def run(self, diagram: str, node: str, n: str = "2", **options) -> Dict[str, Any]:
        h = parse_type_or_gcm(diagram)
        black = parse_node(h, node)
        count = parse_count(n, "n")
        try:
            check = verify_extension_isomorphism(h, black, count)
        except NotFiniteTypeError as e:
            raise UsageError(str(e))
        results = {key: value for key, value in check.details.items() if key != "isomorphism"}
        results["isomorphism"] = check.details.get("isomorphism")
        return self.report({"type": diagram, "node": node, "n": count}, results, [check])
