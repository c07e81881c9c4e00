"""
The Kantor-Koecher-Tits tower of a Jordan algebra: der J, str' J, str J and con J.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from typing import Dict, List, Optional

from kktlab.config.settings import H2_SPACETIME_DIMS
from kktlab.exceptions import ClosureError, MissingStructureError
from kktlab.logic.exactnum import (ONE, ZERO, Rational, SparseVector,
                                   SpanReducer, mat_apply, mat_flatten,
                                   mat_from_dod, mat_identity, mat_kernel,
                                   vec_iadd)
from kktlab.logic.jordan import JordanAlgebra
from kktlab.logic.kantorvf import kantor_operators
from kktlab.logic.liealg import (StructureLieAlgebra, center, lie_closure,
                                 quotient_by_ideal)
from kktlab.logic.report import CheckReport
from kktlab.logic.triplesys import TripleTensor, jts_tensor

logger = logging.getLogger(__name__)


def multiplication_operators(J: JordanAlgebra, t: Optional[TripleTensor] = None) -> List:
    """Matrices of L(u, v): x -> (uvx) for all basis pairs, row-major in (u, v)."""
    t = t or jts_tensor(J)
    ops = []
    for u in range(J.dim):
        for v in range(J.dim):
            dod: Dict[int, Dict[int, Rational]] = {}
            for x in range(J.dim):
                for l, c in t.basis(u, v, x).items():
                    dod.setdefault(l, {})[x] = c
            ops.append(mat_from_dod(dod, (J.dim, J.dim)))
    return ops


def structure_algebra(J: JordanAlgebra, t: Optional[TripleTensor] = None) -> StructureLieAlgebra:
    """
    str J: the matrix Lie algebra generated by the operators x -> (uvx).

    :return: algebra with its operator matrices in ``.matrices``.
    """
    S = lie_closure(multiplication_operators(J, t), name=f"str {J.name}")
    logger.info(f"str {J.name}: dim {S.dim}")
    return S


def _check_unit(J: JordanAlgebra) -> SparseVector:
    unit = J.unit()
    for i in range(J.dim):
        if J.mul(unit, {i: ONE}) != {i: ONE}:
            raise MissingStructureError(f"{J.name} has no identity element")
    return unit


def scalar_ideal(S: StructureLieAlgebra) -> SparseVector:
    """
    Coordinates of the identity operator in str J, checked to lie in the center.

    :raises MissingStructureError: the identity is not a central element of str J.
    """
    reducer = SpanReducer()
    for m in S.matrices:
        reducer.add(mat_flatten(m))
    size = S.matrices[0].shape[0] if S.matrices else 0
    coords = reducer.coordinates(mat_flatten(mat_identity(size)))
    if coords is None:
        raise MissingStructureError(f"{S.name}: scalar multiplications are not structure operators")
    central = SpanReducer()
    for vec in center(S):
        central.add(vec)
    if not central.contains(coords):
        raise MissingStructureError(f"{S.name}: scalar multiplications are not central")
    return coords


def reduced_structure(J: JordanAlgebra, S: Optional[StructureLieAlgebra] = None) -> StructureLieAlgebra:
    """
    str' J = str J modulo the one-dimensional ideal of scalar multiplications.

    :raises MissingStructureError: J has no identity element.
    """
    _check_unit(J)
    S = S or structure_algebra(J)
    reduced = quotient_by_ideal(S, [scalar_ideal(S)])
    reduced = reduced.renamed(f"str' {J.name}")
    logger.info(f"{reduced.name}: dim {reduced.dim}")
    return reduced


def derivation_system(J: JordanAlgebra):
    """
    Linear conditions D(e_i o e_j) = D(e_i) o e_j + e_i o D(e_j) on the entries D[l, k]
    (variable l * dim + k), one row per (i <= j, output coordinate l).
    """
    n = J.dim
    rows: Dict[int, Dict[int, Rational]] = {}
    count = 0
    for i, j in combinations_with_replacement(range(n), 2):
        eqs: Dict[int, Dict[int, Rational]] = {}
        for k, c in J.mul_basis(i, j).items():
            for l in range(n):
                row = eqs.setdefault(l, {})
                row[l * n + k] = row.get(l * n + k, ZERO) + c
        for k in range(n):
            for l, c in J.mul_basis(k, j).items():
                row = eqs.setdefault(l, {})
                row[k * n + i] = row.get(k * n + i, ZERO) - c
            for l, c in J.mul_basis(i, k).items():
                row = eqs.setdefault(l, {})
                row[k * n + j] = row.get(k * n + j, ZERO) - c
        for l in sorted(eqs):
            row = {var: c for var, c in eqs[l].items() if c}
            if row:
                rows[count] = row
                count += 1
    return mat_from_dod(rows, (count, n * n))


def derivation_algebra(J: JordanAlgebra) -> StructureLieAlgebra:
    """
    der J from the kernel of the derivation conditions; the kernel is checked to be closed
    under the commutator.

    :raises ClosureError: the commutator closure is larger than the kernel.
    """
    n = J.dim
    kernel = mat_kernel(derivation_system(J))
    mats = []
    for vec in kernel:
        dod: Dict[int, Dict[int, Rational]] = {}
        for var, c in vec.items():
            l, k = divmod(var, n)
            dod.setdefault(l, {})[k] = c
        mats.append(mat_from_dod(dod, (n, n)))
    D = lie_closure(mats, name=f"der {J.name}")
    if D.dim != len(kernel):
        raise ClosureError(f"der {J.name}: derivations of dim {len(kernel)} close to dim {D.dim}")
    logger.info(f"der {J.name}: dim {D.dim}")
    return D


def check_derivations(J: JordanAlgebra, D: StructureLieAlgebra) -> CheckReport:
    """Every derivation kills the identity and is skew for the trace form."""
    unit = J.unit()
    checked = 0
    for a, m in enumerate(D.matrices):
        checked += 1
        if mat_apply(m, unit):
            return CheckReport(name=f"derivations[{J.name}]", passed=False, checked=checked,
                               witness={"derivation": a, "property": "identity"})
        images = [mat_apply(m, {i: ONE}) for i in range(J.dim)]
        for x, y in combinations_with_replacement(range(J.dim), 2):
            checked += 1
            if J.trace(images[x], {y: ONE}) + J.trace({x: ONE}, images[y]):
                return CheckReport(name=f"derivations[{J.name}]", passed=False, checked=checked,
                                   witness={"derivation": a, "property": "trace form", "pair": [x, y]})
    return CheckReport(name=f"derivations[{J.name}]", passed=True, checked=checked)


@dataclass
class KKTTower:
    jordan: JordanAlgebra
    der: StructureLieAlgebra
    str_reduced: StructureLieAlgebra
    str: StructureLieAlgebra
    con: StructureLieAlgebra
    scalars: SparseVector
    checks: List[CheckReport] = field(default_factory=list)

    def dims(self) -> Dict[str, int]:
        return {"jordan": self.jordan.dim, "der": self.der.dim, "str_reduced": self.str_reduced.dim,
                "str": self.str.dim, "con": self.con.dim}


def check_inclusions(tower: KKTTower) -> List[CheckReport]:
    """
    der J inside str J with compatible brackets, and injective modulo the scalars,
    so der J embeds in str' J.
    """
    S, D = tower.str, tower.der
    reducer = SpanReducer()
    for m in S.matrices:
        reducer.add(mat_flatten(m))
    name = tower.jordan.name
    images = []
    for a, m in enumerate(D.matrices):
        coords = reducer.coordinates(mat_flatten(m))
        if coords is None:
            return [CheckReport(name=f"der_in_str[{name}]", passed=False, checked=a + 1,
                                witness={"derivation": a, "label": D.labels[a]})]
        images.append(coords)
    reports = [CheckReport(name=f"der_in_str[{name}]", passed=True, checked=len(images))]

    checked = 0
    compatible = None
    for i, j in combinations(range(D.dim), 2):
        checked += 1
        mapped: SparseVector = {}
        for k, c in D.bracket_basis(i, j).items():
            vec_iadd(mapped, images[k], c)
        if mapped != S.bracket(images[i], images[j]):
            compatible = [i, j]
            break
    reports.append(CheckReport(name=f"der_bracket_compatible[{name}]", passed=compatible is None,
                               checked=checked, witness=compatible and {"pair": compatible}))

    quotient = SpanReducer()
    quotient.add(tower.scalars)
    independent = all(quotient.add(vec) is not None for vec in images)
    reports.append(CheckReport(name=f"der_in_str_reduced[{name}]", passed=independent, checked=len(images)))
    return reports


def kkt_construct(J: JordanAlgebra) -> KKTTower:
    """
    der J, str' J, str J and con J = g_-1 + g_0 + g_1 realized by the polynomial maps
    u (constant), (uvz) (linear) and -1/2 (zuz) (quadratic) on J.

    :raises ClosureError: con J would exceed 2 dim J + dim str J.
    """
    t = jts_tensor(J)
    S = structure_algebra(J, t)
    reduced = reduced_structure(J, S)
    D = derivation_algebra(J)
    con = kantor_operators(t, name=f"con {J.name}", max_dim=2 * J.dim + S.dim)
    tower = KKTTower(J, D, reduced, S, con, scalar_ideal(S))
    expected = 2 * J.dim + S.dim
    tower.checks.append(CheckReport(name=f"con_dim[{J.name}]", passed=con.dim == expected, checked=1,
                                    witness=None if con.dim == expected else {"dim": con.dim, "expected": expected}))
    tower.checks.extend(check_inclusions(tower))
    tower.checks.append(check_derivations(J, D))
    logger.info(f"KKT tower of {J.name}: {tower.dims()}")
    return tower


def expected_h2_dims(kind_tag: str) -> Dict[str, int]:
    """(der, str', con) H_2(K) = so(d-1), so(1, d-1), so(2, d) with d = 3, 4, 6, 10."""
    d = H2_SPACETIME_DIMS[kind_tag]
    return {"der": (d - 1) * (d - 2) // 2, "str_reduced": d * (d - 1) // 2, "con": (d + 2) * (d + 1) // 2}
