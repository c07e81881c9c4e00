"""
Hermitian matrix Jordan algebras H_n(K) with the symmetrized product a o b = (ab + ba)/2.

Basis order: diagonal units E_1..E_n, then the off-diagonal slots (1,2), (1,3), ... in
lexicographic order, each sweeping the K basis. F_ij(e) has e at (i,j) and conj(e) at (j,i).
"""
import logging
from itertools import combinations, combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from kktlab.config.settings import DEFAULT_JORDAN_TRIALS, DEFAULT_SEED, JORDAN_SIZES
from kktlab.exceptions import AlgebraMismatchError, UsageError
from kktlab.logic.compalg import (CompositionElement, CompositionKind, ca_conj,
                                  ca_mul)
from kktlab.logic.exactnum import (ONE, ZERO, Rational, SparseVector, rat,
                                   random_vector, vec_iadd, vec_scale, vec_sub)
from kktlab.logic.report import CheckReport
from kktlab.logic.workers import chunked, scan_chunks

logger = logging.getLogger(__name__)

HALF = rat(1, 2)

ProductTensor = Dict[Tuple[int, int], SparseVector]


def _mat_mul(a, b, kind):
    n = len(a)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for k in range(n):
            acc = CompositionElement.zero(kind)
            for j in range(n):
                if a[i][j].is_zero() or b[j][k].is_zero():
                    continue
                acc = acc + ca_mul(a[i][j], b[j][k])
            out[i][k] = acc
    return out


class JordanAlgebra:
    """
    H_n(K) as a basis plus the structure tensor of the Jordan product.
    """

    def __init__(self, n: int, kind: CompositionKind, product_tensor: Optional[ProductTensor] = None,
                 note: str = ""):
        self.n = n
        self.kind = kind
        self.slots = list(combinations(range(n), 2))
        self.labels = [f"E{i + 1}" for i in range(n)] + [
            f"F{i + 1}{j + 1}(e{k})" for i, j in self.slots for k in range(kind.dim)
        ]
        self.dim = len(self.labels)
        self.note = note
        self.product_tensor = product_tensor if product_tensor is not None else self._tabulate()

    @property
    def name(self) -> str:
        return f"H{self.n}:{self.kind.tag}{self.note}"

    def __repr__(self):
        return f"JordanAlgebra({self.name}, dim={self.dim})"

    # basis matrices and coordinates

    def basis_matrix(self, index: int) -> List[List[CompositionElement]]:
        kind, n = self.kind, self.n
        mat = [[CompositionElement.zero(kind) for _ in range(n)] for _ in range(n)]
        if index < n:
            mat[index][index] = CompositionElement.basis(kind, 0)
            return mat
        slot, k = divmod(index - n, kind.dim)
        i, j = self.slots[slot]
        e = CompositionElement.basis(kind, k)
        mat[i][j] = e
        mat[j][i] = ca_conj(e)
        return mat

    def coords_of_matrix(self, mat) -> SparseVector:
        n, d = self.n, self.kind.dim
        out: SparseVector = {}
        for i in range(n):
            x = mat[i][i].coords[0]
            if x:
                out[i] = x
        for s, (i, j) in enumerate(self.slots):
            for k, x in enumerate(mat[i][j].coords):
                if x:
                    out[n + s * d + k] = x
        return out

    def _tabulate(self) -> ProductTensor:
        mats = [self.basis_matrix(i) for i in range(self.dim)]
        tensor: ProductTensor = {}
        for p, q in combinations_with_replacement(range(self.dim), 2):
            ab = _mat_mul(mats[p], mats[q], self.kind)
            ba = _mat_mul(mats[q], mats[p], self.kind)
            sym = [[(ab[i][k] + ba[i][k]).scale(HALF) for k in range(self.n)] for i in range(self.n)]
            vec = self.coords_of_matrix(sym)
            tensor[(p, q)] = vec
            tensor[(q, p)] = vec
        logger.debug(f"tabulated Jordan product of {self.name}")
        return tensor

    # sparse arithmetic

    def mul_basis(self, p: int, q: int) -> SparseVector:
        return self.product_tensor.get((p, q), {})

    def mul(self, u: SparseVector, v: SparseVector) -> SparseVector:
        out: SparseVector = {}
        for p, a in u.items():
            for q, b in v.items():
                vec_iadd(out, self.product_tensor.get((p, q), {}), a * b)
        return out

    def trace(self, u: SparseVector, v: SparseVector) -> Rational:
        prod = self.mul(u, v)
        return sum((prod.get(i, ZERO) for i in range(self.n)), ZERO)

    def jts(self, u: SparseVector, v: SparseVector, w: SparseVector) -> SparseVector:
        out = self.mul(self.mul(u, v), w)
        vec_iadd(out, self.mul(u, self.mul(v, w)))
        vec_iadd(out, self.mul(v, self.mul(u, w)), -ONE)
        return out

    def unit(self) -> SparseVector:
        return {i: ONE for i in range(self.n)}

    def basis_vector(self, index: int) -> SparseVector:
        return {index: ONE}

    def element(self, coords) -> "JordanElement":
        return JordanElement(self, coords)

    def basis_element(self, index: int) -> "JordanElement":
        return JordanElement(self, {index: ONE})

    def index_of(self, label: str) -> int:
        return self.labels.index(label)

    def perturbed(self, p: int, q: int, k: int, delta: Rational = ONE) -> "JordanAlgebra":
        """
        Copy with the structure constant c_pq^k (and c_qp^k) shifted by delta.
        """
        tensor = {key: dict(vec) for key, vec in self.product_tensor.items()}
        for key in {(p, q), (q, p)}:
            vec = tensor.setdefault(key, {})
            new = vec.get(k, ZERO) + delta
            if new:
                vec[k] = new
            else:
                vec.pop(k, None)
        return JordanAlgebra(self.n, self.kind, tensor, note=f"~c[{p},{q}][{k}]")


class JordanElement:
    """Element of a JordanAlgebra; coordinates are kept sparse."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: JordanAlgebra, coords):
        self.algebra = algebra
        if isinstance(coords, dict):
            self.coords = {k: rat(v) for k, v in coords.items() if v}
        else:
            if len(coords) != algebra.dim:
                raise ValueError(f"{algebra.name} has dimension {algebra.dim}, got {len(coords)} coordinates")
            self.coords = {i: rat(v) for i, v in enumerate(coords) if v}

    def dense(self) -> List[Rational]:
        return [self.coords.get(i, ZERO) for i in range(self.algebra.dim)]

    def __eq__(self, other):
        return isinstance(other, JordanElement) and other.algebra is self.algebra and other.coords == self.coords

    def __add__(self, other):
        _same_algebra(self, other)
        out = dict(self.coords)
        vec_iadd(out, other.coords)
        return JordanElement(self.algebra, out)

    def __sub__(self, other):
        _same_algebra(self, other)
        return JordanElement(self.algebra, vec_sub(self.coords, other.coords))

    def scale(self, c) -> "JordanElement":
        return JordanElement(self.algebra, vec_scale(self.coords, rat(c)))

    def is_zero(self) -> bool:
        return not self.coords

    def __repr__(self):
        labels = self.algebra.labels
        terms = [f"{v}*{labels[k]}" for k, v in sorted(self.coords.items())]
        return " + ".join(terms) or "0"


def _same_algebra(*elements: JordanElement) -> None:
    first = elements[0].algebra
    for e in elements[1:]:
        if e.algebra is not first:
            raise AlgebraMismatchError(f"elements of {first.name} and {e.algebra.name} cannot be combined")


def build_jordan(n: int, kind) -> JordanAlgebra:
    """
    Builds H_n(K) with its product tensor.

    :param n: matrix size, 2 or 3 (4 only as the non-Jordan negative control).
    :param kind: CompositionKind or its tag.
    :return: the algebra.
    """
    if n not in JORDAN_SIZES:
        raise UsageError(f"unsupported matrix size {n}, expected one of {JORDAN_SIZES}")
    if not isinstance(kind, CompositionKind):
        kind = CompositionKind(kind)
    alg = JordanAlgebra(n, kind)
    logger.info(f"built {alg.name} of dimension {alg.dim}")
    return alg


def jordan_product(x: JordanElement, y: JordanElement) -> JordanElement:
    _same_algebra(x, y)
    return JordanElement(x.algebra, x.algebra.mul(x.coords, y.coords))


def trace_form(x: JordanElement, y: JordanElement) -> Rational:
    _same_algebra(x, y)
    return x.algebra.trace(x.coords, y.coords)


def jts_product(x: JordanElement, y: JordanElement, z: JordanElement) -> JordanElement:
    """(xyz) = (x o y) o z + x o (y o z) - y o (x o z)"""
    _same_algebra(x, y, z)
    return JordanElement(x.algebra, x.algebra.jts(x.coords, y.coords, z.coords))


def jordan_defect(alg: JordanAlgebra, a: SparseVector, b: SparseVector) -> SparseVector:
    """a^2 o (b o a) - (a^2 o b) o a"""
    a2 = alg.mul(a, a)
    return vec_sub(alg.mul(a2, alg.mul(b, a)), alg.mul(alg.mul(a2, b), a))


def linearized_defect(alg_tensor: ProductTensor, x: int, y: int, z: int, b: int) -> SparseVector:
    """
    Full linearization of the Jordan identity in its cubic variable, on basis elements:
    sum over the cyclic rotations (p, q, r) of (x, y, z) of ((p o q) o b) o r - (p o q) o (b o r).
    """
    out: SparseVector = {}

    def mul(u, v):
        res: SparseVector = {}
        for i, s in u.items():
            for j, t in v.items():
                vec_iadd(res, alg_tensor.get((i, j), {}), s * t)
        return res

    for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
        pq = alg_tensor.get((p, q), {})
        if not pq:
            continue
        er, eb = {r: ONE}, {b: ONE}
        vec_iadd(out, mul(mul(pq, eb), er))
        vec_iadd(out, mul(pq, mul(eb, er)), -ONE)
    return out


def _linearized_chunk(payload, chunk):
    tensor, dim, stop = payload
    checked = 0
    witness = None
    for x, y, z in chunk:
        for b in range(dim):
            checked += 1
            defect = linearized_defect(tensor, x, y, z, b)
            if defect:
                if witness is None:
                    witness = (x, y, z, b)
                if stop:
                    return checked, witness
    return checked, witness


def check_jordan_identity(alg: JordanAlgebra, trials: int = DEFAULT_JORDAN_TRIALS, seed: int = DEFAULT_SEED,
                          stop_at_first: bool = False, threads: int = 1) -> CheckReport:
    """
    Checks a^2 o (b o a) = (a^2 o b) o a on random rational pairs and, exhaustively, its
    linearization over all basis quadruples (x <= y <= z, any b).

    :param alg: the algebra to test.
    :param trials: random element pairs.
    :param seed: seed of the random generator.
    :param stop_at_first: stop the basis scan at the first violation.
    :param threads: worker processes for the basis scan.
    :return: report with the first violating tuple as witness.
    """
    rng = np.random.default_rng(seed)
    random_witness = None
    for t in range(trials):
        a = random_vector(rng, alg.dim)
        b = random_vector(rng, alg.dim)
        if jordan_defect(alg, a, b):
            random_witness = {"trial": t, "a": a, "b": b}
            break

    triples = list(combinations_with_replacement(range(alg.dim), 3))
    chunks = chunked(triples)
    payload = (alg.product_tensor, alg.dim, stop_at_first)
    checked, witness = 0, None
    if stop_at_first:
        for chunk in chunks:
            count, w = _linearized_chunk(payload, chunk)
            checked += count
            if w is not None:
                witness = w
                break
    else:
        for count, w in scan_chunks(_linearized_chunk, payload, chunks, threads):
            checked += count
            if w is not None and (witness is None or w < witness):
                witness = w

    labelled = None
    if witness is not None:
        labelled = {"basis": [alg.labels[i] for i in witness], "indices": list(witness),
                    "defect": linearized_defect(alg.product_tensor, *witness)}
    elif random_witness is not None:
        labelled = random_witness
    passed = witness is None and random_witness is None
    logger.info(f"Jordan identity on {alg.name}: {'pass' if passed else 'fail'} after {checked} quadruples")
    return CheckReport(name=f"jordan_identity[{alg.name}]", passed=passed, checked=checked + trials,
                       mode="full", seed=seed, witness=labelled,
                       details={"random_trials": trials, "linearized_quadruples": checked})
