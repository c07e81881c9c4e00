import json
import logging
from typing import Any, Dict, Optional

from kktlab.base_classes.base_command import BaseCommand
from kktlab.config.settings import SCHEMA
from kktlab.exceptions import UsageError
from kktlab.logic.chevalley import (FINITE, check_serre, classify_gcm,
                                    graded_chevalley, graded_slice,
                                    identify_type, node_grading)
from kktlab.logic.liealg import check_graded_involution, check_grading
from kktlab.logic.parsing import parse_node, parse_type_or_gcm

logger = logging.getLogger(__name__)


class GradeCommand(BaseCommand):
    name = "grade"

    def run(self, diagram: str, node: str, export: Optional[str] = None, **options) -> Dict[str, Any]:
        gcm = parse_type_or_gcm(diagram)
        number = parse_node(gcm, node)
        kind = classify_gcm(gcm)
        if kind != FINITE:
            raise UsageError(f"{gcm.name or diagram} is {kind}; gradings are computed for finite types only")
        L, rd = graded_chevalley(gcm, number)
        grading = node_grading(rd, number)
        slice_data = graded_slice(rd, number)

        checks = [check_serre(rd), check_grading(L), check_graded_involution(L)]
        results = {
            "type": identify_type(gcm) or gcm.name,
            "node": number,
            "node_label": gcm.labels[number - 1],
            "dim": L.dim,
            "graded_dims": grading.graded_dims,
            "depth": grading.depth,
            "dim_minus1": slice_data.dim,
            "form_normalization": rd.simple_norms[number - 1],
        }
        if export:
            data = {"schema": SCHEMA, "algebra": L.to_json(), "triple_minus1": slice_data.triple.to_json()}
            with open(export, "w", encoding="utf-8") as fh:
                json.dump(data, fh, separators=(",", ":"))
            logger.info(f"exported {L.name} graded at node {number} to {export}")
            results["export"] = export
        return self.report({"type": diagram, "node": node}, results, checks)
