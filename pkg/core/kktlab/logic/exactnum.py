"""
Exact rational scalars and linear algebra.

Scalars are elements of sympy's ``QQ`` domain (gmpy2 ``mpq`` when available), dense work is
done with ``DomainMatrix`` and sparse vectors are plain dicts ``key -> QQ`` without zero entries.
"""
import heapq
import logging
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from kktlab.config.settings import RANDOM_DENOMINATOR, RANDOM_NUMERATOR

logger = logging.getLogger(__name__)

Rational = type(QQ(0))
SparseVector = Dict[Hashable, Rational]

# Returned by mat_solve for an inconsistent system.
NO_SOLUTION = None

ZERO = QQ(0)
ONE = QQ(1)


def rat(value: Union[int, str, Rational], denominator: int = 1) -> Rational:
    """
    Coerces ints, "p/q" strings and rationals into a reduced QQ element.

    :param value: integer, rational or string in the "p/q" / "p" serialization.
    :param denominator: optional denominator when value is an integer.
    :return: the rational value.
    """
    if isinstance(value, str):
        if "/" in value:
            num, den = value.split("/")
            return QQ(int(num), int(den))
        return QQ(int(value))
    if isinstance(value, int):
        return QQ(value, denominator)
    return QQ.convert(value) if denominator == 1 else QQ.convert(value) / denominator


def rat_to_str(value: Rational) -> str:
    num, den = int(value.numerator), int(value.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def is_integer(value: Rational) -> bool:
    return int(value.denominator) == 1


# SPARSE VECTORS

def vec_add(u: SparseVector, v: SparseVector, scale: Rational = ONE) -> SparseVector:
    """Returns u + scale * v as a new sparse vector."""
    out = dict(u)
    vec_iadd(out, v, scale)
    return out


def vec_iadd(u: SparseVector, v: SparseVector, scale: Rational = ONE) -> None:
    """In-place u += scale * v, pruning zeros."""
    if not scale:
        return
    for key, val in v.items():
        new = u.get(key, ZERO) + scale * val
        if new:
            u[key] = new
        else:
            u.pop(key, None)


def vec_scale(v: SparseVector, scale: Rational) -> SparseVector:
    if not scale:
        return {}
    return {k: scale * x for k, x in v.items()}


def vec_sub(u: SparseVector, v: SparseVector) -> SparseVector:
    return vec_add(u, v, -ONE)


def random_vector(rng, dim: int, numerator: int = RANDOM_NUMERATOR, denominator: int = RANDOM_DENOMINATOR) -> SparseVector:
    """
    Random rational vector with entries p/q, |p| <= numerator, 1 <= q <= denominator.

    :param rng: numpy Generator.
    :param dim: vector length.
    :return: sparse vector.
    """
    nums = rng.integers(-numerator, numerator + 1, size=dim)
    dens = rng.integers(1, denominator + 1, size=dim)
    return {i: QQ(int(p), int(q)) for i, (p, q) in enumerate(zip(nums, dens)) if p}


def vec_from_dense(values: Sequence[Rational]) -> SparseVector:
    return {i: rat(x) for i, x in enumerate(values) if x}


def vec_to_dense(v: SparseVector, dim: int) -> List[Rational]:
    out = [ZERO] * dim
    for k, x in v.items():
        out[k] = x
    return out


# DENSE MATRICES

def mat_from_rows(rows: Sequence[Sequence[Union[int, Rational]]], cols: Optional[int] = None) -> DomainMatrix:
    """
    Builds a RatMatrix from a list of rows; an empty row list needs the column count.
    """
    ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
    dod = {}
    for i, row in enumerate(rows):
        entries = {j: rat(x) for j, x in enumerate(row) if x}
        if entries:
            dod[i] = entries
    return DomainMatrix.from_dod(dod, (len(rows), ncols), QQ)


def mat_from_dod(dod: Dict[int, Dict[int, Rational]], shape: Tuple[int, int]) -> DomainMatrix:
    return DomainMatrix.from_dod({i: dict(r) for i, r in dod.items() if r}, shape, QQ)


def mat_identity(n: int) -> DomainMatrix:
    return DomainMatrix.eye(n, QQ).to_sparse()


def mat_zeros(rows: int, cols: int) -> DomainMatrix:
    return DomainMatrix.zeros((rows, cols), QQ)


def mat_columns(vectors: Sequence[SparseVector], rows: int) -> DomainMatrix:
    """Stacks sparse vectors as the columns of a rows x len(vectors) matrix."""
    dod: Dict[int, Dict[int, Rational]] = {}
    for j, v in enumerate(vectors):
        for i, x in v.items():
            dod.setdefault(i, {})[j] = x
    return mat_from_dod(dod, (rows, len(vectors)))


def mat_rank(m: DomainMatrix) -> int:
    """
    Exact rank over the rationals.

    :param m: matrix over QQ.
    :return: the rank.
    """
    if 0 in m.shape:
        return 0
    _, pivots = m.rref()
    return len(pivots)


def mat_kernel(m: DomainMatrix) -> List[SparseVector]:
    """
    Canonical kernel basis read off the reduced row echelon form: one vector per free
    column f, with a 1 in position f and minus the f-th rref column on the pivots.

    :param m: matrix over QQ.
    :return: list of sparse column vectors, independent and annihilated by m.
    """
    rows, cols = m.shape
    if cols == 0:
        return []
    if rows == 0:
        return [{j: ONE} for j in range(cols)]
    rref, pivots = m.rref()
    rref_dod = rref.to_sparse().to_dod()
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        vec = {free: ONE}
        for r, p in enumerate(pivots):
            x = rref_dod.get(r, {}).get(free)
            if x:
                vec[p] = -x
        basis.append(vec)
    return basis


def mat_solve(m: DomainMatrix, b: Sequence[Rational]) -> Optional[List[Rational]]:
    """
    Solves m x = b exactly; free variables are set to zero.

    :param m: coefficient matrix.
    :param b: right-hand side, one entry per row.
    :return: a solution vector, or NO_SOLUTION when the system is inconsistent.
    """
    rows, cols = m.shape
    if len(b) != rows:
        raise ValueError(f"right-hand side has {len(b)} entries, matrix has {rows} rows")
    if rows == 0:
        return [ZERO] * cols
    column = mat_from_rows([[x] for x in b], cols=1)
    augmented = m.to_sparse().hstack(column.to_sparse())
    rref, pivots = augmented.rref()
    if pivots and pivots[-1] == cols:
        return NO_SOLUTION
    rref_dod = rref.to_sparse().to_dod()
    x = [ZERO] * cols
    for r, p in enumerate(pivots):
        x[p] = rref_dod.get(r, {}).get(cols, ZERO)
    return x


def mat_det(m: DomainMatrix) -> Rational:
    if m.shape == (0, 0):
        return ONE
    return m.to_dense().det()


def mat_to_rows(m: DomainMatrix) -> List[List[Rational]]:
    return m.to_dense().to_list()


def mat_apply(m: DomainMatrix, v: SparseVector) -> SparseVector:
    """Sparse matrix-vector product m v."""
    out: SparseVector = {}
    for i, row in m.to_sparse().to_dod().items():
        acc = ZERO
        for j, x in row.items():
            y = v.get(j)
            if y:
                acc += x * y
        if acc:
            out[i] = acc
    return out


def mat_flatten(m: DomainMatrix) -> SparseVector:
    """Sparse vector keyed by (row, col)."""
    return {(i, j): x for i, row in m.to_sparse().to_dod().items() for j, x in row.items()}


def mat_commutator(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    a, b = a.to_sparse(), b.to_sparse()
    return a * b - b * a


class SpanReducer:
    """
    Incremental row echelon form over sparse vectors with sortable keys.

    Every stored row has its smallest key as pivot with coefficient 1 and remembers which
    combination of the accepted input vectors produced it, so membership tests also yield
    coordinates in the basis of accepted vectors.
    """

    def __init__(self):
        self._rows: Dict[Hashable, Tuple[SparseVector, Dict[int, Rational]]] = {}
        self._size = 0

    def __len__(self) -> int:
        return self._size

    def _reduce(self, vec: SparseVector) -> Tuple[SparseVector, Dict[int, Rational]]:
        rest = dict(vec)
        combo: Dict[int, Rational] = {}
        heap = list(rest.keys())
        heapq.heapify(heap)
        seen = set()
        while heap:
            key = heapq.heappop(heap)
            if key in seen:
                continue
            seen.add(key)
            coeff = rest.get(key)
            if not coeff or key not in self._rows:
                continue
            row, row_combo = self._rows[key]
            for k, x in row.items():
                new = rest.get(k, ZERO) - coeff * x
                if new:
                    if k not in rest and k not in seen:
                        heapq.heappush(heap, k)
                    rest[k] = new
                else:
                    rest.pop(k, None)
            vec_iadd(combo, row_combo, coeff)
        return rest, combo

    def add(self, vec: SparseVector) -> Optional[int]:
        """
        Adds a vector when it is independent of the accepted ones.

        :param vec: sparse vector.
        :return: its index among the accepted vectors, or None when it lies in the span.
        """
        coords, added = self.absorb(vec)
        if not added:
            return None
        return next(iter(coords))

    def absorb(self, vec: SparseVector) -> Tuple[Dict[int, Rational], bool]:
        """
        Coordinates of vec, accepting it as a new basis vector when it is independent.

        :return: (coordinates, True when vec was added).
        """
        rest, combo = self._reduce(vec)
        if not rest:
            return combo, False
        index = self._size
        self._size += 1
        pivot = min(rest)
        inv = ONE / rest[pivot]
        row_combo = vec_scale(combo, -inv)
        row_combo[index] = inv
        self._rows[pivot] = (vec_scale(rest, inv), row_combo)
        return {index: ONE}, True

    def normal_form(self, vec: SparseVector) -> SparseVector:
        """Remainder of vec after eliminating every pivot key; zero exactly on the span."""
        rest, _ = self._reduce(vec)
        return rest

    def pivots(self) -> List[Hashable]:
        return sorted(self._rows)

    def contains(self, vec: SparseVector) -> bool:
        rest, _ = self._reduce(vec)
        return not rest

    def coordinates(self, vec: SparseVector) -> Optional[Dict[int, Rational]]:
        """
        Coordinates of vec in the basis of accepted vectors.

        :param vec: sparse vector.
        :return: index -> coefficient, or None when vec is outside the span.
        """
        rest, combo = self._reduce(vec)
        if rest:
            return None
        return combo


def span_basis(vectors: Iterable[SparseVector]) -> Tuple[List[int], SpanReducer]:
    """
    Greedy independent subset in input order.

    :return: indices of the kept vectors and the reducer holding their span.
    """
    reducer = SpanReducer()
    kept = []
    for i, v in enumerate(vectors):
        if reducer.add(v) is not None:
            kept.append(i)
    return kept, reducer
