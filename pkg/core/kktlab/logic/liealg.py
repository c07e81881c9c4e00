"""
Finite-dimensional Lie algebras given by exact structure constants.
"""
import json
import logging
from dataclasses import asdict, dataclass
from itertools import combinations
from typing import Any, Callable, Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from kktlab.config.settings import (DEFAULT_JACOBI_SAMPLES, DEFAULT_SEED,
                                    FP_CENTER_DIM, FP_DERIVED_DIMS, FP_DIM,
                                    FP_GRADED_DIMS, FP_KILLING_DET,
                                    FP_KILLING_RANK, FULL_JACOBI_MAX_DIM,
                                    SCHEMA)
from kktlab.exceptions import (AlgebraMismatchError, ClosureError,
                               MissingStructureError, NotAnIdealError)
from kktlab.logic.exactnum import (ONE, ZERO, Rational, SparseVector,
                                   SpanReducer, mat_commutator, mat_flatten,
                                   mat_from_dod, mat_kernel, mat_rank, rat,
                                   rat_to_str, vec_iadd, vec_scale)
from kktlab.logic.report import CheckReport, Mode
from kktlab.logic.workers import chunked, scan_chunks

logger = logging.getLogger(__name__)

Brackets = Dict[Tuple[int, int], SparseVector]


def _bracket_basis(brackets: Brackets, i: int, j: int) -> SparseVector:
    if i < j:
        return brackets.get((i, j), {})
    if i > j:
        vec = brackets.get((j, i))
        return {k: -x for k, x in vec.items()} if vec else {}
    return {}


def _bracket_vec_basis(brackets: Brackets, u: SparseVector, j: int) -> SparseVector:
    out: SparseVector = {}
    for i, c in u.items():
        vec_iadd(out, _bracket_basis(brackets, i, j), c)
    return out


class StructureLieAlgebra:
    """
    Lie algebra on basis e_0..e_{dim-1} with [e_i, e_j] = brackets[(i, j)] for i < j.

    Optional grading is one integer degree per basis element; optional involution maps
    basis index -> sparse image vector.
    """

    def __init__(self, dim: int, brackets: Brackets, labels: Optional[List[str]] = None,
                 grading: Optional[List[int]] = None, involution: Optional[List[SparseVector]] = None,
                 name: str = ""):
        self.dim = dim
        self.brackets = {}
        for (i, j), vec in brackets.items():
            if not vec or i == j:
                continue
            if i < j:
                self.brackets[(i, j)] = dict(vec)
            else:
                self.brackets[(j, i)] = {k: -x for k, x in vec.items()}
        self.labels = labels if labels is not None else [f"x{i}" for i in range(dim)]
        self.grading = list(grading) if grading is not None else None
        self.involution = involution
        self.name = name

    def __repr__(self):
        return f"StructureLieAlgebra({self.name or 'anonymous'}, dim={self.dim})"

    def bracket_basis(self, i: int, j: int) -> SparseVector:
        return _bracket_basis(self.brackets, i, j)

    def bracket(self, u: SparseVector, v: SparseVector) -> SparseVector:
        out: SparseVector = {}
        for i, a in u.items():
            for j, b in v.items():
                if i != j:
                    vec_iadd(out, _bracket_basis(self.brackets, i, j), a * b)
        return out

    def ad(self, i: int) -> Dict[int, SparseVector]:
        """Columns of ad e_i: k -> [e_i, e_k]."""
        cols = {}
        for k in range(self.dim):
            vec = self.bracket_basis(i, k)
            if vec:
                cols[k] = vec
        return cols

    def with_grading(self, grading: Optional[Sequence[int]]) -> "StructureLieAlgebra":
        return StructureLieAlgebra(self.dim, self.brackets, self.labels, grading, self.involution, self.name)

    def with_involution(self, involution: Optional[List[SparseVector]]) -> "StructureLieAlgebra":
        return StructureLieAlgebra(self.dim, self.brackets, self.labels, self.grading, involution, self.name)

    def renamed(self, name: str) -> "StructureLieAlgebra":
        return StructureLieAlgebra(self.dim, self.brackets, self.labels, self.grading, self.involution, name)

    def perturbed(self, i: int, j: int, k: int, delta: Rational = ONE) -> "StructureLieAlgebra":
        """Copy with f_ij^k shifted by delta (antisymmetry is kept)."""
        brackets = {key: dict(vec) for key, vec in self.brackets.items()}
        if i > j:
            i, j, delta = j, i, -delta
        vec = brackets.setdefault((i, j), {})
        new = vec.get(k, ZERO) + delta
        if new:
            vec[k] = new
        else:
            vec.pop(k, None)
        return StructureLieAlgebra(self.dim, brackets, self.labels, self.grading, self.involution, self.name)

    def permuted(self, order: Sequence[int]) -> "StructureLieAlgebra":
        """Same algebra with new basis element p equal to old basis element order[p]."""
        position = {old: new for new, old in enumerate(order)}
        brackets = {}
        for (i, j), vec in self.brackets.items():
            brackets[(position[i], position[j])] = {position[k]: x for k, x in vec.items()}
        labels = [self.labels[o] for o in order]
        grading = [self.grading[o] for o in order] if self.grading is not None else None
        involution = None
        if self.involution is not None:
            involution = [{position[k]: x for k, x in self.involution[o].items()} for o in order]
        return StructureLieAlgebra(self.dim, brackets, labels, grading, involution, self.name)

    def graded_dims(self) -> Optional[List[int]]:
        if self.grading is None:
            return None
        if not self.grading:
            return []
        lo, hi = min(self.grading), max(self.grading)
        return [self.grading.count(k) for k in range(lo, hi + 1)]

    def degrees(self) -> Optional[Tuple[int, int]]:
        if not self.grading:
            return None
        return min(self.grading), max(self.grading)

    def to_json(self) -> Dict[str, Any]:
        entries = [[i, j, k, rat_to_str(x)] for (i, j), vec in sorted(self.brackets.items())
                   for k, x in sorted(vec.items())]
        data = {"schema": SCHEMA, "name": self.name, "dim": self.dim, "labels": self.labels,
                "grading": self.grading, "brackets": entries}
        if self.involution is not None:
            data["involution"] = [[[k, rat_to_str(x)] for k, x in sorted(col.items())] for col in self.involution]
        return data

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "StructureLieAlgebra":
        brackets: Brackets = {}
        for i, j, k, x in data["brackets"]:
            brackets.setdefault((i, j), {})[k] = rat(x)
        involution = None
        if data.get("involution") is not None:
            involution = [{k: rat(x) for k, x in col} for col in data["involution"]]
        return cls(data["dim"], brackets, data.get("labels"), data.get("grading"), involution, data.get("name", ""))

    def dump(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, separators=(",", ":"))


def abelian(dim: int) -> StructureLieAlgebra:
    return StructureLieAlgebra(dim, {}, name=f"abelian{dim}")


def so3() -> StructureLieAlgebra:
    """[x1, x2] = x3 and cyclic."""
    one = ONE
    return StructureLieAlgebra(3, {(0, 1): {2: one}, (1, 2): {0: one}, (0, 2): {1: -one}}, name="so3")


# Jacobi identity

def jacobi_defect(brackets: Brackets, i: int, j: int, k: int) -> SparseVector:
    """[[e_i, e_j], e_k] + [[e_j, e_k], e_i] + [[e_k, e_i], e_j]"""
    out = _bracket_vec_basis(brackets, _bracket_basis(brackets, i, j), k)
    vec_iadd(out, _bracket_vec_basis(brackets, _bracket_basis(brackets, j, k), i))
    vec_iadd(out, _bracket_vec_basis(brackets, _bracket_basis(brackets, k, i), j))
    return out


def _jacobi_full_chunk(payload, chunk):
    brackets, dim = payload
    checked = 0
    for i, j in chunk:
        for k in range(j + 1, dim):
            checked += 1
            if jacobi_defect(brackets, i, j, k):
                return checked, (i, j, k)
    return checked, None


def _jacobi_sampled_chunk(payload, chunk):
    brackets, _ = payload
    checked = 0
    for index, i, j, k in chunk:
        checked += 1
        if jacobi_defect(brackets, i, j, k):
            return checked, (index, (i, j, k))
    return checked, None


def default_jacobi_mode(dim: int) -> Mode:
    if dim <= FULL_JACOBI_MAX_DIM:
        return Mode(full=True)
    return Mode(full=False, samples=DEFAULT_JACOBI_SAMPLES)


def check_jacobi(L: StructureLieAlgebra, mode: Optional[Mode] = None, seed: int = DEFAULT_SEED,
                 threads: int = 1) -> CheckReport:
    """
    Checks the Jacobi identity on basis triples, exactly.

    :param L: the algebra.
    :param mode: full (all i < j < k) or sampled(count); defaults by dimension.
    :param seed: seed for sampled mode.
    :param threads: worker processes.
    :return: report with the first violating triple.
    """
    mode = mode or default_jacobi_mode(L.dim)
    payload = (L.brackets, L.dim)
    if mode.full:
        pairs = list(combinations(range(L.dim), 2))
        results = scan_chunks(_jacobi_full_chunk, payload, chunked(pairs, 256), threads)
    else:
        rng = np.random.default_rng(seed)
        draws = rng.integers(0, max(L.dim, 1), size=(mode.samples, 3))
        rows = [(n, *map(int, row)) for n, row in enumerate(draws)]
        results = scan_chunks(_jacobi_sampled_chunk, payload, chunked(rows, 20_000), threads)
    checked, witness = 0, None
    for count, w in results:
        checked += count
        if w is not None and (witness is None or w < witness):
            witness = w
    report_witness = None
    if witness is not None:
        triple = witness if mode.full else witness[1]
        report_witness = {"triple": list(triple), "labels": [L.labels[t] for t in triple],
                          "defect": jacobi_defect(L.brackets, *triple)}
        if not mode.full:
            report_witness["sample"] = witness[0]
    passed = witness is None
    logger.info(f"Jacobi on {L.name or 'algebra'} (dim {L.dim}): {'pass' if passed else 'fail'} ({mode})")
    return CheckReport(name=f"jacobi[{L.name}]", passed=passed, checked=checked, mode=str(mode),
                       seed=None if mode.full else seed, witness=report_witness)


def check_grading(L: StructureLieAlgebra) -> CheckReport:
    """Every nonzero f_ij^k must satisfy deg k = deg i + deg j."""
    if L.grading is None:
        raise MissingStructureError(f"{L.name or 'algebra'} carries no grading")
    deg = L.grading
    checked = 0
    for (i, j), vec in sorted(L.brackets.items()):
        for k in sorted(vec):
            checked += 1
            if deg[k] != deg[i] + deg[j]:
                witness = {"bracket": [i, j, k], "labels": [L.labels[i], L.labels[j], L.labels[k]],
                           "degrees": [deg[i], deg[j], deg[k]]}
                return CheckReport(name=f"grading[{L.name}]", passed=False, checked=checked, witness=witness)
    return CheckReport(name=f"grading[{L.name}]", passed=True, checked=checked,
                       details={"graded_dims": L.graded_dims()})


def check_graded_involution(L: StructureLieAlgebra) -> CheckReport:
    """
    Checks tau[x, y] = [tau x, tau y] on basis pairs, tau^2 = id and tau(g_k) in g_-k.
    """
    if L.involution is None:
        raise MissingStructureError(f"{L.name or 'algebra'} carries no involution")
    tau = L.involution
    name = f"graded_involution[{L.name}]"

    def apply(vec):
        out: SparseVector = {}
        for k, x in vec.items():
            vec_iadd(out, tau[k], x)
        return out

    checked = 0
    for i in range(L.dim):
        checked += 1
        if apply(tau[i]) != {i: ONE}:
            return CheckReport(name=name, passed=False, checked=checked,
                               witness={"property": "square", "basis": i, "label": L.labels[i]})
    if L.grading is not None:
        for i in range(L.dim):
            checked += 1
            bad = [k for k in tau[i] if L.grading[k] != -L.grading[i]]
            if bad:
                return CheckReport(name=name, passed=False, checked=checked,
                                   witness={"property": "degree", "basis": i, "label": L.labels[i],
                                            "image_degrees": [L.grading[k] for k in bad]})
    for i, j in combinations(range(L.dim), 2):
        checked += 1
        lhs = apply(L.bracket_basis(i, j))
        rhs = L.bracket(tau[i], tau[j])
        if lhs != rhs:
            return CheckReport(name=name, passed=False, checked=checked,
                               witness={"property": "automorphism", "pair": [i, j],
                                        "labels": [L.labels[i], L.labels[j]]})
    return CheckReport(name=name, passed=True, checked=checked)


# invariants

def killing_form(L: StructureLieAlgebra):
    """
    K(e_i, e_j) = tr(ad e_i ad e_j) as a DomainMatrix.
    """
    ads = [L.ad(i) for i in range(L.dim)]
    dod: Dict[int, Dict[int, Rational]] = {}
    for i in range(L.dim):
        adi = ads[i]
        for j in range(i, L.dim):
            adj = ads[j]
            acc = ZERO
            # sum_k sum_m (ad_i)_{m k} (ad_j)_{k m}
            for k, col in adi.items():
                for m, x in col.items():
                    y = adj.get(m, {}).get(k)
                    if y:
                        acc += x * y
            if acc:
                dod.setdefault(i, {})[j] = acc
                dod.setdefault(j, {})[i] = acc
    return mat_from_dod(dod, (L.dim, L.dim))


def span_of_brackets(L: StructureLieAlgebra, vectors: Sequence[SparseVector]) -> List[SparseVector]:
    """Independent subset of the brackets [u, v] for u, v in vectors, stopping once the span is full."""
    limit = len(vectors)
    reducer = SpanReducer()
    basis = []
    for a, b in combinations(range(len(vectors)), 2):
        vec = L.bracket(vectors[a], vectors[b])
        if vec and reducer.add(vec) is not None:
            basis.append(vec)
            if len(basis) == limit:
                break
    return basis


def derived_subalgebra(L: StructureLieAlgebra) -> List[SparseVector]:
    return span_of_brackets(L, [{i: ONE} for i in range(L.dim)])


def derived_series_dims(L: StructureLieAlgebra) -> List[int]:
    """Dimensions of L', L'', ... until the series stabilizes (the stable value listed once)."""
    dims: List[int] = []
    current = [{i: ONE} for i in range(L.dim)]
    while True:
        nxt = span_of_brackets(L, current) if current else []
        if dims and len(nxt) == dims[-1]:
            return dims
        dims.append(len(nxt))
        if not nxt:
            return dims
        current = nxt


def center(L: StructureLieAlgebra) -> List[SparseVector]:
    """
    Kernel of c -> ([sum c_i e_i, e_j])_j, i.e. of the stacked ad maps.
    """
    row_of: Dict[Tuple[int, int], int] = {}
    dod: Dict[int, Dict[int, Rational]] = {}
    for i in range(L.dim):
        for j in range(L.dim):
            for m, x in L.bracket_basis(i, j).items():
                r = row_of.setdefault((j, m), len(row_of))
                dod.setdefault(r, {})[i] = x
    return mat_kernel(mat_from_dod(dod, (len(row_of), L.dim)))


def quotient_by_ideal(L: StructureLieAlgebra, ideal: Sequence[SparseVector]) -> StructureLieAlgebra:
    """
    Quotient on the complement spanned by the basis elements that are not pivots of the ideal.

    :param L: the algebra.
    :param ideal: spanning vectors of an ideal.
    :return: the quotient algebra, grading kept when the ideal is spanned by homogeneous pieces.
    :raises NotAnIdealError: with the first bracket leaving the ideal.
    """
    reducer = SpanReducer()
    for v in ideal:
        reducer.add(v)
    gens = [v for v in ideal if v]
    for a, v in enumerate(gens):
        for j in range(L.dim):
            w = _bracket_vec_basis(L.brackets, v, j)
            if w and not reducer.contains(w):
                raise NotAnIdealError(f"[ideal vector {a}, {L.labels[j]}] leaves the subspace", witness=(a, j))
    pivots = set(reducer.pivots())
    complement = [i for i in range(L.dim) if i not in pivots]
    position = {old: new for new, old in enumerate(complement)}
    brackets: Brackets = {}
    for a, b in combinations(range(len(complement)), 2):
        rest = reducer.normal_form(L.bracket_basis(complement[a], complement[b]))
        if rest:
            brackets[(a, b)] = {position[k]: x for k, x in rest.items()}
    grading = [L.grading[i] for i in complement] if L.grading is not None else None
    name = f"{L.name}/ideal" if L.name else ""
    return StructureLieAlgebra(len(complement), brackets, [L.labels[i] for i in complement], grading, None, name)


def close_under_bracket(generators: Sequence[Any], bracket: Callable[[Any, Any], Any],
                        flatten: Callable[[Any], SparseVector], max_dim: Optional[int] = None,
                        name: str = "") -> Tuple[List[Any], Brackets]:
    """
    Smallest bracket-closed span containing the generators.

    :param generators: objects in some ambient Lie algebra (matrices, vector fields, ...).
    :param bracket: their Lie bracket.
    :param flatten: sparse coordinates of an object in the ambient space.
    :param max_dim: hard ceiling on the closure dimension.
    :return: the chosen basis (independent generators first, then new brackets) and the
        structure constants in that basis.
    """
    reducer = SpanReducer()
    basis = []
    for g in generators:
        if reducer.add(flatten(g)) is not None:
            basis.append(g)
    if max_dim is not None and len(basis) > max_dim:
        raise ClosureError(f"{name}: generators span {len(basis)} > {max_dim} dimensions")
    table: Brackets = {}
    j = 0
    while j < len(basis):
        for i in range(j):
            res = bracket(basis[i], basis[j])
            coords, added = reducer.absorb(flatten(res))
            if added:
                basis.append(res)
                if max_dim is not None and len(basis) > max_dim:
                    raise ClosureError(f"{name}: closure exceeded {max_dim} dimensions")
            if coords:
                table[(i, j)] = coords
        j += 1
        if j % 50 == 0:
            logger.debug(f"{name}: closure at element {j}/{len(basis)}")
    logger.debug(f"{name}: closed at dimension {len(basis)}")
    return basis, table


def lie_closure(ops: Sequence, name: str = "") -> StructureLieAlgebra:
    """
    Smallest matrix Lie algebra containing the given square matrices.

    :param ops: DomainMatrix operators of a common size.
    :return: algebra whose basis matrices are kept in ``.matrices``.
    """
    basis, table = close_under_bracket(list(ops), mat_commutator, mat_flatten, name=name)
    L = StructureLieAlgebra(len(basis), table, name=name)
    L.matrices = basis
    return L


def basis_change(L: StructureLieAlgebra, columns: Sequence[SparseVector]) -> StructureLieAlgebra:
    """
    Structure constants in the basis f_i = sum_a columns[i][a] e_a.

    :param columns: images of the new basis in old coordinates; must be invertible.
    """
    reducer = SpanReducer()
    for col in columns:
        if reducer.add(col) is None:
            raise AlgebraMismatchError("basis change is not invertible")
    if len(columns) != L.dim:
        raise AlgebraMismatchError(f"need {L.dim} basis vectors, got {len(columns)}")
    brackets: Brackets = {}
    for i, j in combinations(range(L.dim), 2):
        vec = L.bracket(columns[i], columns[j])
        if vec:
            brackets[(i, j)] = reducer.coordinates(vec)
    return StructureLieAlgebra(L.dim, brackets, name=f"{L.name}'")


# fingerprints

@dataclass
class Fingerprint:
    dim: int
    graded_dims: Optional[List[int]]
    killing_rank: int
    killing_det: str
    derived_dims: List[int]
    center_dim: int

    def to_dict(self) -> Dict[str, Any]:
        return {FP_DIM: self.dim, FP_GRADED_DIMS: self.graded_dims, FP_KILLING_RANK: self.killing_rank,
                FP_KILLING_DET: self.killing_det, FP_DERIVED_DIMS: self.derived_dims,
                FP_CENTER_DIM: self.center_dim}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Fingerprint":
        return cls(**{k: data[k] for k in asdict(cls(0, None, 0, "", [], 0))})


def fingerprint(L: StructureLieAlgebra) -> Fingerprint:
    """
    Isomorphism invariants: dim, graded dims, Killing rank and determinant class,
    derived series dims and center dim.
    """
    rank = mat_rank(killing_form(L)) if L.dim else 0
    fp = Fingerprint(
        dim=L.dim,
        graded_dims=L.graded_dims(),
        killing_rank=rank,
        killing_det="nonzero" if rank == L.dim else "zero",
        derived_dims=derived_series_dims(L),
        center_dim=len(center(L)) if L.dim else 0,
    )
    logger.info(f"fingerprint of {L.name or 'algebra'}: {fp.to_dict()}")
    return fp


def fingerprint_equal(a: Fingerprint, b: Fingerprint) -> bool:
    return a.to_dict() == b.to_dict()
