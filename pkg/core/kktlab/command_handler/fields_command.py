import json
import logging
from typing import Any, Dict, List, Optional

from kktlab.base_classes.base_command import BaseCommand
from kktlab.config.settings import H2_SPACETIME_DIMS, SCHEMA
from kktlab.exceptions import UsageError
from kktlab.logic.kantorvf import (check_five_grading, conformal_algebra,
                                   expected_generalized_dims,
                                   generalized_algebra, kantor_operators)
from kktlab.logic.liealg import (StructureLieAlgebra, check_graded_involution,
                                 check_grading, check_jacobi, fingerprint,
                                 fingerprint_equal)
from kktlab.logic.parsing import parse_count, parse_jordan, parse_signature
from kktlab.logic.report import CheckReport
from kktlab.logic.triplesys import slotted_jordan_tensor

logger = logging.getLogger(__name__)

FAMILIES = ("conformal", "generalized", "kantor")


def _dims_check(name: str, L: StructureLieAlgebra, dim: int, graded: Optional[List[int]] = None) -> CheckReport:
    computed = {"dim": L.dim, "graded_dims": L.graded_dims()}
    expected = {"dim": dim, "graded_dims": graded if graded is not None else computed["graded_dims"]}
    passed = computed == expected
    return CheckReport(name=name, passed=passed, checked=1, witness=None if passed else computed,
                       details={"expected": expected})


class FieldsCommand(BaseCommand):
    name = "fields"

    def _build(self, family: str, p: int, q: int, n: int) -> StructureLieAlgebra:
        if family == "conformal":
            return conformal_algebra(p, q)
        return generalized_algebra(p, q, n)

    def _expected(self, family: str, d: int, n: int):
        if family == "conformal":
            return (d + 2) * (d + 1) // 2, None
        m = d + 2 * n
        return m * (m - 1) // 2, expected_generalized_dims(d, n)

    def _signature_sweep(self, family: str, d: int, n: int, reference) -> CheckReport:
        """Fingerprints of every signature p + q = d agree with the requested one."""
        prints = {}
        differing = []
        for p in range(d + 1):
            fp = fingerprint(self._build(family, p, d - p, n))
            prints[f"{p},{d - p}"] = fp.to_dict()
            if not fingerprint_equal(fp, reference):
                differing.append(f"{p},{d - p}")
        return CheckReport(name=f"signature_independence[{family},d={d},n={n}]", passed=not differing,
                           checked=d + 1, witness=differing or None, details={"fingerprints": prints})

    def _kantor(self, jordan: str, n: int, signature: Optional[str]) -> Dict[str, Any]:
        J = parse_jordan(jordan)
        if J.n != 2:
            raise UsageError("the Kantor family is built on H2(K)^n")
        d = H2_SPACETIME_DIMS[J.kind.tag]
        p, q = parse_signature(signature) if signature else (1, d - 1)
        if p + q != d:
            raise UsageError(f"{J.name} pairs with signatures p + q = {d}, got {p},{q}")
        K = kantor_operators(slotted_jordan_tensor(J, n), name=f"kantor {J.name}^{n}")
        G = generalized_algebra(p, q, n)
        ours, theirs = fingerprint(K), fingerprint(G)
        checks = [
            check_jacobi(K, seed=self.lab.seed, threads=self.lab.threads),
            check_grading(K),
            check_graded_involution(K),
            CheckReport(name=f"kantor_vs_fields[{J.name}^{n},{p},{q}]", passed=fingerprint_equal(ours, theirs),
                        checked=1, witness=None if fingerprint_equal(ours, theirs) else
                        {"kantor": ours.to_dict(), "fields": theirs.to_dict()}),
        ]
        if n > 1:
            checks.append(check_five_grading(K))
        results = {"algebra": K.name, "dim": K.dim, "graded_dims": K.graded_dims(), "fingerprint": ours.to_dict(),
                   "fields_fingerprint": theirs.to_dict(), "pair_space_dim": K.pair_space.k_dim}
        return {"algebra": K, "results": results, "checks": checks}

    def run(self, family: str, signature: Optional[str] = None, n: str = "1", jordan: Optional[str] = None,
            sweep: bool = False, export: Optional[str] = None, **options) -> Dict[str, Any]:
        if family not in FAMILIES:
            raise UsageError(f"unknown field family {family!r}, expected one of {', '.join(FAMILIES)}")
        count = parse_count(n, "n")
        inputs = {"family": family, "signature": signature, "n": count, "jordan": jordan, "sweep": sweep}

        if family == "kantor":
            if not jordan:
                raise UsageError("the Kantor family needs --jordan H2:<K>")
            built = self._kantor(jordan, count, signature)
            L, results, checks = built["algebra"], built["results"], built["checks"]
        else:
            if not signature:
                raise UsageError(f"the {family} family needs --signature p,q")
            p, q = parse_signature(signature)
            d = p + q
            L = self._build(family, p, q, count)
            dim, graded = self._expected(family, d, count)
            fp = fingerprint(L)
            checks = [
                _dims_check(f"dims[{L.name}]", L, dim, graded),
                check_jacobi(L, seed=self.lab.seed, threads=self.lab.threads),
                check_grading(L),
            ]
            if family == "generalized" and count > 1:
                checks.append(check_five_grading(L))
            if sweep:
                checks.append(self._signature_sweep(family, d, count, fp))
            results = {"algebra": L.name, "dim": L.dim, "expected_dim": dim, "graded_dims": L.graded_dims(),
                       "fingerprint": fp.to_dict(), "generators": [f.label for f in L.fields]}

        if export:
            data = {"schema": SCHEMA, "algebra": L.to_json(), "fields": [f.to_json() for f in L.fields]}
            with open(export, "w", encoding="utf-8") as fh:
                json.dump(data, fh, separators=(",", ":"))
            logger.info(f"exported {L.name} to {export}")
            results["export"] = export
        return self.report(inputs, results, checks)
