"""
Spec strings of the command line.

    jordan     H3:O                 H_n(K), n in 2..4, K in R, C, H, O
    triple     H3:O | H2:R^2        JTS of a Jordan algebra, or the slotted product on n copies
    type       E6 | A2xA2 | [[2,-1],[-1,2]] | path/to/gcm.json
    algebra    E7 | E7@black | der:H3:O | str:H3:O | str':H3:O | con:H3:O | kantor:H2:R^2
               | conformal:1,3 | generalized:1,3:2 | path/to/algebra.json
    mode       full | sampled=<count>
    signature  p,q
"""
import json
import logging
import os
import re
from typing import Optional, Tuple

from kktlab.exceptions import GCMError, UsageError
from kktlab.logic import kkt
from kktlab.logic.chevalley import GCM, cartan_type, graded_chevalley, resolve_node
from kktlab.logic.jordan import JordanAlgebra, build_jordan
from kktlab.logic.kantorvf import (conformal_algebra, generalized_algebra,
                                   kantor_operators)
from kktlab.logic.liealg import StructureLieAlgebra
from kktlab.logic.report import Mode
from kktlab.logic.triplesys import TripleTensor, jts_tensor, slotted_jordan_tensor

logger = logging.getLogger(__name__)

_JORDAN_PATTERN = re.compile(r"^H(\d+):([RCHOrcho])$")
_SLOTTED_PATTERN = re.compile(r"^(H\d+:[RCHOrcho])\^(\d+)$")
_MODE_PATTERN = re.compile(r"^sampled=(\d+)$")
_SIGNATURE_PATTERN = re.compile(r"^\s*(\d+)\s*,\s*(\d+)\s*$")


def parse_jordan(spec: str) -> JordanAlgebra:
    match = _JORDAN_PATTERN.match(spec.strip())
    if not match:
        raise UsageError(f"malformed Jordan algebra {spec!r}, expected e.g. H3:O")
    return build_jordan(int(match.group(1)), match.group(2).upper())


def parse_triple(spec: str) -> Tuple[TripleTensor, str]:
    """
    :return: the tabulated triple system and a display name.
    """
    spec = spec.strip()
    match = _SLOTTED_PATTERN.match(spec)
    if match:
        n = parse_count(match.group(2), "number of copies")
        alg = parse_jordan(match.group(1))
        return slotted_jordan_tensor(alg, n), f"{alg.name}^{n}"
    alg = parse_jordan(spec)
    return jts_tensor(alg), alg.name


def parse_count(value: str, what: str = "count", minimum: int = 1) -> int:
    try:
        count = int(value)
    except (TypeError, ValueError):
        raise UsageError(f"{what} must be an integer, got {value!r}")
    if count < minimum:
        raise UsageError(f"{what} must be at least {minimum}, got {count}")
    return count


def parse_type_or_gcm(spec: str) -> GCM:
    """
    A named Cartan type, an inline JSON matrix or a path to a GCM JSON file.

    :raises UsageError: the string is none of these or the matrix violates the GCM axioms.
    """
    spec = spec.strip()
    try:
        if spec.startswith("["):
            return GCM.from_json(json.loads(spec))
        if spec.endswith(".json") or os.path.isfile(spec):
            return GCM.load(spec)
        return cartan_type(spec)
    except (ValueError, OSError, GCMError) as e:
        raise UsageError(f"cannot read diagram {spec!r}: {e}")


def parse_node(gcm: GCM, node: str) -> int:
    try:
        return resolve_node(gcm, node)
    except GCMError as e:
        raise UsageError(str(e))


def parse_mode(spec: Optional[str]) -> Optional[Mode]:
    """None leaves the choice to the check's size threshold."""
    if spec is None or spec == "auto":
        return None
    if spec == "full":
        return Mode(full=True)
    match = _MODE_PATTERN.match(spec)
    if not match:
        raise UsageError(f"malformed mode {spec!r}, expected full or sampled=<count>")
    return Mode(full=False, samples=parse_count(match.group(1), "sample count"))


def parse_signature(spec: str) -> Tuple[int, int]:
    match = _SIGNATURE_PATTERN.match(spec)
    if not match:
        raise UsageError(f"malformed signature {spec!r}, expected p,q")
    p, q = int(match.group(1)), int(match.group(2))
    if p + q < 1:
        raise UsageError("signature needs p + q >= 1")
    return p, q


def parse_algebra(spec: str) -> StructureLieAlgebra:
    """
    Builds the Lie algebra named by an algebra spec. Chevalley algebras come graded by the
    node after "@" (default 1) with the Chevalley involution attached; tower members carry
    whatever structure their construction gives them.
    """
    spec = spec.strip()
    if spec.endswith(".json") and os.path.isfile(spec):
        try:
            with open(spec, "r", encoding="utf-8") as fh:
                return StructureLieAlgebra.from_json(json.load(fh))
        except (ValueError, KeyError) as e:
            raise UsageError(f"cannot read algebra {spec!r}: {e}")

    head, _, rest = spec.partition(":")
    if not rest:
        diagram, _, node = spec.partition("@")
        gcm = parse_type_or_gcm(diagram)
        L, _ = graded_chevalley(gcm, parse_node(gcm, node) if node else 1)
        return L
    if head == "der":
        return kkt.derivation_algebra(parse_jordan(rest))
    if head == "str":
        return kkt.structure_algebra(parse_jordan(rest))
    if head == "str'":
        return kkt.reduced_structure(parse_jordan(rest))
    if head == "con":
        return kkt.kkt_construct(parse_jordan(rest)).con
    if head == "kantor":
        t, name = parse_triple(rest)
        return kantor_operators(t, name=f"kantor {name}")
    if head == "conformal":
        return conformal_algebra(*parse_signature(rest))
    if head == "generalized":
        signature, _, n = rest.rpartition(":")
        return generalized_algebra(*parse_signature(signature), parse_count(n, "n"))
    raise UsageError(f"unknown algebra spec {spec!r}")

