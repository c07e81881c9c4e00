from typing import Any, Dict, List, Optional

from kktlab.base_classes.base_command import BaseCommand
from kktlab.config.settings import SWEEP_RANGE
from kktlab.logic.chevalley import (FINITE, GCM, classify_gcm, extend_diagram,
                                    gcm_corank, gcm_determinant,
                                    identify_type, positive_roots)
from kktlab.logic.parsing import parse_count, parse_node, parse_type_or_gcm
from kktlab.logic.report import CheckReport


def _minus1_dim(gcm: GCM, black: int) -> Optional[int]:
    """dim g_-1 of the black-node grading, read off the positive roots; None off finite type."""
    if classify_gcm(gcm) != FINITE:
        return None
    k = gcm.node(black)
    return sum(1 for root in positive_roots(gcm) if root[k] == 1)


def describe_extension(h: GCM, black: int, n: int) -> Dict[str, Any]:
    g = extend_diagram(h, black, n)
    kind = classify_gcm(g)
    entry = {
        "n": n,
        "rank": g.rank,
        "matrix": g.entries.tolist(),
        "labels": g.labels,
        "classification": kind,
        "determinant": gcm_determinant(g),
        "corank": gcm_corank(g),
    }
    if kind == FINITE:
        roots = positive_roots(g)
        k = g.node(black)
        entry["type"] = identify_type(g)
        entry["dim"] = 2 * len(roots) + g.rank
        entry["depth"] = 2 * max(root[k] for root in roots) + 1
        entry["dim_minus1"] = sum(1 for root in roots if root[k] == 1)
    return entry


class ExtendCommand(BaseCommand):
    name = "extend"

    def run(self, diagram: str, node: str, n: Optional[str] = None, sweep: bool = False,
            **options) -> Dict[str, Any]:
        h = parse_type_or_gcm(diagram)
        black = parse_node(h, node)
        if sweep:
            counts = list(range(SWEEP_RANGE[0], SWEEP_RANGE[1] + 1))
        else:
            counts = [parse_count(n if n is not None else "2", "n")]

        base = _minus1_dim(h, black)
        extensions: List[Dict[str, Any]] = [describe_extension(h, black, count) for count in counts]
        checks = []
        for entry in extensions:
            if base is not None and "dim_minus1" in entry:
                expected = entry["n"] * base
                passed = entry["dim_minus1"] == expected
                checks.append(CheckReport(
                    name=f"minus1_dims[{h.name or 'GCM'},node {black},n={entry['n']}]", passed=passed, checked=1,
                    witness=None if passed else {"dim_minus1": entry["dim_minus1"], "expected": expected}))

        results = {"base": identify_type(h) or h.name, "black": black, "h_dim_minus1": base,
                   "extensions": extensions}
        if not sweep:
            results.update(extensions[0])
        inputs = {"type": diagram, "node": node, "n": None if sweep else counts[0], "sweep": sweep}
        return self.report(inputs, results, checks)
