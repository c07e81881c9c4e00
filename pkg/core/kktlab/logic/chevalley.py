"""
Simple Lie algebras from generalized Cartan matrices.

Conventions: a_ij = <alpha_i^vee, alpha_j> (Bourbaki numbering for the named types, nodes are
1-based in the public functions), long roots have squared length 2, positive roots are ordered
by height and then by descending coefficient tuple so the simple roots come first in node order.
The Chevalley basis is e_alpha (positive roots), then f_alpha = e_-alpha, then h_1..h_rank, with
[e_alpha, f_alpha] = h_alpha the coroot and signs fixed by N = +(p + 1) on extraspecial pairs.
"""
import json
import logging
import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components
from sympy import factorint, integer_nthroot, multiplicity

from kktlab.config.settings import NAMED_NODES
from kktlab.exceptions import GCMError, NotFiniteTypeError, UsageError
from kktlab.logic.exactnum import (NO_SOLUTION, ONE, ZERO, Rational,
                                   SparseVector, is_integer, mat_det,
                                   mat_from_rows, mat_rank, mat_solve, rat,
                                   vec_iadd)
from kktlab.logic.liealg import StructureLieAlgebra
from kktlab.logic.report import CheckReport
from kktlab.logic.triplesys import (SlottedBasisIndex, TripleTensor,
                                    slotted_index, slotted_slice_tensor)

logger = logging.getLogger(__name__)

Root = Tuple[int, ...]

FINITE = "finite"
AFFINE = "affine"
HYPERBOLIC = "hyperbolic"
INDEFINITE = "indefinite"


class GCM:
    """
    Generalized Cartan matrix: a_ii = 2, a_ij <= 0 off the diagonal, a_ij = 0 iff a_ji = 0.
    """

    def __init__(self, entries: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None, name: str = ""):
        matrix = np.array(entries, dtype=np.int64)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] == 0:
            raise GCMError(f"a generalized Cartan matrix must be square and nonempty, got shape {matrix.shape}")
        rank = matrix.shape[0]
        for i in range(rank):
            if matrix[i, i] != 2:
                raise GCMError(f"diagonal entry a[{i + 1},{i + 1}] = {matrix[i, i]}, expected 2")
            for j in range(rank):
                if i == j:
                    continue
                if matrix[i, j] > 0:
                    raise GCMError(f"off-diagonal entry a[{i + 1},{j + 1}] = {matrix[i, j]} is positive")
                if (matrix[i, j] == 0) != (matrix[j, i] == 0):
                    raise GCMError(f"a[{i + 1},{j + 1}] and a[{j + 1},{i + 1}] must vanish together")
        self.entries = matrix
        self.entries.setflags(write=False)
        self.rank = rank
        self.labels = list(labels) if labels is not None else [str(i + 1) for i in range(rank)]
        self.name = name

    def __repr__(self):
        return f"GCM({self.name or self.entries.tolist()})"

    def __eq__(self, other):
        return isinstance(other, GCM) and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(self.key())

    def key(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(int(x) for x in row) for row in self.entries)

    def a(self, i: int, j: int) -> int:
        return int(self.entries[i, j])

    def neighbours(self, i: int) -> List[int]:
        return [j for j in range(self.rank) if j != i and self.entries[i, j] != 0]

    def node(self, node: int) -> int:
        """0-based index of a 1-based node number."""
        if not 1 <= node <= self.rank:
            raise GCMError(f"node {node} outside 1..{self.rank} for {self.name or 'GCM'}")
        return node - 1

    def submatrix(self, nodes: Sequence[int]) -> np.ndarray:
        idx = list(nodes)
        return self.entries[np.ix_(idx, idx)]

    def symmetrizer(self) -> List[Rational]:
        """
        s_i with s_i a_ij = s_j a_ji, scaled so the largest s in each component is 1.
        s_i = |alpha_i|^2 / 2.
        """
        s: List[Optional[Rational]] = [None] * self.rank
        for start in range(self.rank):
            if s[start] is not None:
                continue
            s[start] = ONE
            component = [start]
            queue = deque([start])
            while queue:
                i = queue.popleft()
                for j in self.neighbours(i):
                    value = s[i] * rat(self.a(i, j)) / rat(self.a(j, i))
                    if s[j] is None:
                        s[j] = value
                        component.append(j)
                        queue.append(j)
                    elif s[j] != value:
                        raise GCMError(f"{self.name or 'GCM'} is not symmetrizable")
            top = max(s[i] for i in component)
            for i in component:
                s[i] = s[i] / top
        return s

    def to_json(self) -> Dict[str, Any]:
        return {"name": self.name, "matrix": self.entries.tolist(), "labels": self.labels}

    @classmethod
    def from_json(cls, data: Union[Dict[str, Any], List[List[int]]]) -> "GCM":
        if isinstance(data, list):
            return cls(data)
        if "matrix" not in data:
            raise UsageError("GCM JSON needs a 'matrix' entry")
        return cls(data["matrix"], data.get("labels"), data.get("name", ""))

    @classmethod
    def load(cls, path: str) -> "GCM":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


# named types

def _chain(rank: int) -> np.ndarray:
    m = 2 * np.eye(rank, dtype=np.int64)
    for i in range(rank - 1):
        m[i, i + 1] = m[i + 1, i] = -1
    return m


def _simple_type(family: str, rank: int) -> np.ndarray:
    if family == "A" and rank >= 1:
        return _chain(rank)
    if family == "B" and rank >= 2:
        m = _chain(rank)
        m[rank - 1, rank - 2] = -2
        return m
    if family == "C" and rank >= 2:
        m = _chain(rank)
        m[rank - 2, rank - 1] = -2
        return m
    if family == "D" and rank >= 4:
        m = _chain(rank)
        m[rank - 1, rank - 2] = m[rank - 2, rank - 1] = 0
        m[rank - 1, rank - 3] = m[rank - 3, rank - 1] = -1
        return m
    if family == "E" and rank in (6, 7, 8):
        m = 2 * np.eye(rank, dtype=np.int64)
        # 1-3-4-5-6-7-8 with 2 attached to 4
        edges = [(1, 3), (3, 4), (4, 5), (2, 4)] + [(k, k + 1) for k in range(5, rank)]
        for i, j in edges:
            m[i - 1, j - 1] = m[j - 1, i - 1] = -1
        return m
    if family == "F" and rank == 4:
        m = _chain(4)
        m[2, 1] = -2
        return m
    if family == "G" and rank == 2:
        return np.array([[2, -3], [-1, 2]], dtype=np.int64)
    raise UsageError(f"no Cartan type {family}{rank}")


_TYPE_PATTERN = re.compile(r"^([A-G])(\d+)$")


def cartan_type(name: str) -> GCM:
    """
    GCM of a named finite type such as "E6", "B3" or a product "A2xA2" (block diagonal).

    :param name: type name, case-insensitive.
    :return: the GCM, with node labels "1".."rank" per factor.
    :raises UsageError: unknown name.
    """
    blocks = []
    for part in name.upper().split("X"):
        match = _TYPE_PATTERN.match(part.strip())
        if not match:
            raise UsageError(f"cannot parse Cartan type {name!r}")
        blocks.append(_simple_type(match.group(1), int(match.group(2))))
    rank = sum(b.shape[0] for b in blocks)
    matrix = np.zeros((rank, rank), dtype=np.int64)
    labels = []
    offset = 0
    for factor, b in enumerate(blocks, start=1):
        r = b.shape[0]
        matrix[offset:offset + r, offset:offset + r] = b
        labels.extend(str(i + 1) if len(blocks) == 1 else f"{factor}.{i + 1}" for i in range(r))
        offset += r
    return GCM(matrix, labels, name.upper().replace("X", "x"))


def resolve_node(gcm: GCM, node: Union[int, str]) -> int:
    """
    1-based node number for an integer or a named node ("black", "trivalent", ...).

    :raises UsageError: the name is not known for this type.
    """
    if isinstance(node, int) or (isinstance(node, str) and node.isdigit()):
        number = int(node)
        gcm.node(number)
        return number
    match = _TYPE_PATTERN.match(gcm.name or "")
    if not match:
        raise UsageError(f"named nodes need a named simple type, got {gcm.name or 'an explicit matrix'}")
    family, rank = match.group(1), int(match.group(2))
    table = NAMED_NODES.get(gcm.name) or NAMED_NODES.get(family) or {}
    if node not in table:
        raise UsageError(f"{gcm.name} has no node named {node!r}; known: {', '.join(sorted(table)) or 'none'}")
    value = table[node]
    if value == "rank":
        value = rank
    elif value == "half":
        value = (rank + 1) // 2
    gcm.node(value)
    return value


def gcm_isomorphism(a: GCM, b: GCM) -> Optional[List[int]]:
    """
    Node bijection p with a[i, j] = b[p(i), p(j)], found by backtracking.

    :return: p as a list (0-based), or None when the matrices are not isomorphic.
    """
    if a.rank != b.rank:
        return None

    def signature(m, i):
        return tuple(sorted(int(x) for x in m[i])), tuple(sorted(int(x) for x in m[:, i]))

    sig_a = [signature(a.entries, i) for i in range(a.rank)]
    sig_b = [signature(b.entries, i) for i in range(b.rank)]
    if sorted(sig_a) != sorted(sig_b):
        return None

    # breadth-first order keeps assigned nodes adjacent, which prunes early
    order, seen = [], set()
    for start in range(a.rank):
        if start in seen:
            continue
        queue = deque([start])
        seen.add(start)
        while queue:
            i = queue.popleft()
            order.append(i)
            for j in a.neighbours(i):
                if j not in seen:
                    seen.add(j)
                    queue.append(j)

    perm: Dict[int, int] = {}
    used = set()

    def extend(depth):
        if depth == len(order):
            return True
        i = order[depth]
        for j in range(b.rank):
            if j in used or sig_a[i] != sig_b[j]:
                continue
            if all(a.entries[i, k] == b.entries[j, pk] and a.entries[k, i] == b.entries[pk, j]
                   for k, pk in perm.items()):
                perm[i] = j
                used.add(j)
                if extend(depth + 1):
                    return True
                del perm[i]
                used.discard(j)
        return False

    if not extend(0):
        return None
    return [perm[i] for i in range(a.rank)]


def _candidate_names(rank: int) -> List[str]:
    names = [f"A{rank}"]
    if rank >= 2:
        names += [f"B{rank}", f"C{rank}"]
    if rank >= 4:
        names.append(f"D{rank}")
    names += {6: ["E6"], 7: ["E7"], 8: ["E8"], 4: ["F4"], 2: ["G2"]}.get(rank, [])
    return names


def identify_type(gcm: GCM) -> Optional[str]:
    """
    Name of the finite type a GCM is isomorphic to, e.g. "E6" or "A1xA2", or None.
    """
    parts = []
    for component in gcm_components(gcm):
        sub = GCM(gcm.submatrix(component))
        for name in _candidate_names(sub.rank):
            if gcm_isomorphism(sub, cartan_type(name)) is not None:
                parts.append(name)
                break
        else:
            return None
    return "x".join(sorted(parts, key=lambda p: (p[0], int(p[1:]))))


# classification

def gcm_components(gcm: GCM, nodes: Optional[Sequence[int]] = None) -> List[List[int]]:
    """Connected components of the Dynkin diagram restricted to nodes (0-based, sorted)."""
    nodes = sorted(nodes) if nodes is not None else list(range(gcm.rank))
    if not nodes:
        return []
    sub = gcm.submatrix(nodes)
    adjacency = csr_matrix((sub != 0) & ~np.eye(len(nodes), dtype=bool))
    count, labels = connected_components(adjacency, directed=False)
    groups = [[] for _ in range(count)]
    for pos, label in enumerate(labels):
        groups[label].append(nodes[pos])
    return sorted(groups)


class _MinorTable:
    """Principal minors and connected-subdiagram kinds of one GCM, memoized by node set."""

    def __init__(self, gcm: GCM):
        self.gcm = gcm
        self.minors: Dict[FrozenSet[int], Rational] = {}
        self.kinds: Dict[FrozenSet[int], str] = {}

    def det(self, nodes: FrozenSet[int]) -> Rational:
        if nodes not in self.minors:
            self.minors[nodes] = mat_det(mat_from_rows(self.gcm.submatrix(sorted(nodes)).tolist()))
        return self.minors[nodes]

    def connected_subsets(self, nodes: FrozenSet[int]) -> List[FrozenSet[int]]:
        found = {frozenset([v]) for v in nodes}
        frontier = list(found)
        while frontier:
            grown = []
            for subset in frontier:
                for v in subset:
                    for w in self.gcm.neighbours(v):
                        if w in nodes and w not in subset:
                            bigger = subset | {w}
                            if bigger not in found:
                                found.add(bigger)
                                grown.append(bigger)
            frontier = grown
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def kind(self, nodes: FrozenSet[int]) -> str:
        """Kind of a connected diagram."""
        if nodes in self.kinds:
            return self.kinds[nodes]
        # a minor of a disconnected subset factors over components, so connected subsets suffice
        proper_positive = all(self.det(s) > 0 for s in self.connected_subsets(nodes) if s != nodes)
        d = self.det(nodes)
        if proper_positive and d > 0:
            result = FINITE
        elif proper_positive and d == 0:
            result = AFFINE
        else:
            result = HYPERBOLIC if self._is_hyperbolic(nodes) else INDEFINITE
        self.kinds[nodes] = result
        return result

    def _is_hyperbolic(self, nodes: FrozenSet[int]) -> bool:
        for v in sorted(nodes):
            for component in gcm_components(self.gcm, nodes - {v}):
                if self.kind(frozenset(component)) not in (FINITE, AFFINE):
                    return False
        return True


_SEVERITY = [FINITE, AFFINE, HYPERBOLIC, INDEFINITE]


def classify_gcm(gcm: GCM) -> str:
    """
    finite, affine, hyperbolic or indefinite.

    A decomposable matrix takes the worst kind among its components, except that several
    non-finite components make it indefinite.
    """
    table = _MinorTable(gcm)
    kinds = [table.kind(frozenset(c)) for c in gcm_components(gcm)]
    result = max(kinds, key=_SEVERITY.index)
    if len(kinds) > 1 and sum(k != FINITE for k in kinds) > 1:
        result = INDEFINITE
    logger.debug(f"{gcm.name or 'GCM'} classified as {result}")
    return result


def gcm_determinant(gcm: GCM) -> Rational:
    return mat_det(mat_from_rows(gcm.entries.tolist()))


def gcm_corank(gcm: GCM) -> int:
    return gcm.rank - mat_rank(mat_from_rows(gcm.entries.tolist()))


def extend_diagram(h: GCM, black: int, n: int) -> GCM:
    """
    Attaches a simply laced chain of n - 1 new nodes to the black node.

    :param h: the diagram.
    :param black: 1-based node number; it stays the black node of the result.
    :param n: number of copies, n >= 1; n = 1 returns h.
    :return: GCM of rank h.rank + n - 1, new nodes numbered after the old ones along the chain.
    """
    b = h.node(black)
    if n < 1:
        raise UsageError(f"number of copies must be at least 1, got {n}")
    if n == 1:
        return h
    rank = h.rank + n - 1
    matrix = 2 * np.eye(rank, dtype=np.int64)
    matrix[:h.rank, :h.rank] = h.entries
    previous = b
    for k in range(h.rank, rank):
        matrix[previous, k] = matrix[k, previous] = -1
        previous = k
    labels = h.labels + [f"c{k}" for k in range(1, n)]
    return GCM(matrix, labels, f"{h.name or 'GCM'}+{n - 1}")


# roots

def _height_key(root: Root):
    return sum(root), tuple(-c for c in root)


def positive_roots(gcm: GCM) -> List[Root]:
    """
    Positive roots as simple-root coordinates, by height then descending coefficient tuple.

    :raises NotFiniteTypeError: the GCM is not of finite type.
    """
    if classify_gcm(gcm) != FINITE:
        raise NotFiniteTypeError(f"{gcm.name or 'GCM'} is not of finite type; roots are not enumerated")
    r = gcm.rank
    simple = [tuple(int(i == k) for k in range(r)) for i in range(r)]
    found = set(simple)
    level = list(simple)
    while level:
        nxt = set()
        for beta in level:
            for i in range(r):
                # alpha_i string through beta: beta - p alpha_i ... beta + q alpha_i
                p = 0
                lowered = list(beta)
                while True:
                    lowered[i] -= 1
                    if tuple(lowered) in found:
                        p += 1
                    else:
                        break
                pairing = sum(beta[j] * gcm.a(i, j) for j in range(r))
                if p - pairing > 0:
                    raised = list(beta)
                    raised[i] += 1
                    nxt.add(tuple(raised))
        nxt -= found
        found |= nxt
        level = sorted(nxt)
        if level:
            logger.debug(f"{gcm.name}: {len(level)} roots at height {sum(level[0])}")
    return sorted(found, key=_height_key)


def _neg(root: Root) -> Root:
    return tuple(-c for c in root)


def _add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Root, b: Root) -> Root:
    return tuple(x - y for x, y in zip(a, b))


def _is_positive(root: Root) -> bool:
    return any(c > 0 for c in root)


class _StructureConstants:
    """N_{a,b} for roots a, b with a + b a root, from the extraspecial-pair signs."""

    def __init__(self, positive: List[Root], norm_of):
        self.order = {root: k for k, root in enumerate(positive)}
        self.roots = set(positive) | {_neg(r) for r in positive}
        self.norm_of = norm_of
        self.cache: Dict[Tuple[Root, Root], Rational] = {}
        self.extraspecial: Dict[Root, Tuple[Root, Root]] = {}
        for xi in positive:
            if sum(xi) == 1:
                continue
            for alpha in positive:
                rest = _sub(xi, alpha)
                if rest in self.order:
                    self.extraspecial[xi] = (alpha, rest)
                    break

    def string_below(self, a: Root, b: Root) -> int:
        """Largest p with b - p a a root."""
        p = 0
        current = _sub(b, a)
        while current in self.roots:
            p += 1
            current = _sub(current, a)
        return p

    def __call__(self, a: Root, b: Root) -> Rational:
        key = (a, b)
        if key in self.cache:
            return self.cache[key]
        s = _add(a, b)
        if s not in self.roots:
            raise KeyError(f"{a} + {b} is not a root")
        pos_a, pos_b = _is_positive(a), _is_positive(b)
        if pos_a and pos_b:
            if self.order[a] > self.order[b]:
                value = -self(b, a)
            else:
                value = self._special(a, b)
        elif not pos_a and not pos_b:
            value = -self(_neg(a), _neg(b))
        else:
            g = _neg(s)
            if _is_positive(g) == pos_a:
                value = self.norm_of(g) / self.norm_of(b) * self(g, a)
            else:
                value = self.norm_of(g) / self.norm_of(a) * self(b, g)
        self.cache[key] = value
        return value

    def _special(self, a: Root, b: Root) -> Rational:
        xi = _add(a, b)
        a1, b1 = self.extraspecial[xi]
        p1 = self.string_below(a1, b1)
        if (a, b) == (a1, b1):
            return rat(p1 + 1)
        total = ZERO
        r1 = _sub(b, a1)
        if r1 in self.roots:
            total += self(b, _neg(a1)) * self(a, _neg(b1)) / self.norm_of(r1)
        r2 = _sub(a, a1)
        if r2 in self.roots:
            total += self(_neg(a1), a) * self(b, _neg(b1)) / self.norm_of(r2)
        return self.norm_of(xi) / rat(p1 + 1) * total


@dataclass
class RootDatum:
    gcm: GCM
    positive: List[Root]
    simple_norms: List[Rational]
    norms: Dict[Root, Rational]
    constants: Dict[Tuple[Root, Root], Rational]
    algebra: StructureLieAlgebra
    index: Dict[Root, int] = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return self.gcm.rank

    def e_index(self, root: Root) -> int:
        return self.index[root]

    def f_index(self, root: Root) -> int:
        return self.index[_neg(root)]

    def h_index(self, i: int) -> int:
        return 2 * len(self.positive) + i

    def pairing(self, root: Root, i: int) -> int:
        """<root, alpha_i^vee>"""
        return sum(c * self.gcm.a(i, j) for j, c in enumerate(root))


def build_chevalley(gcm: GCM) -> Tuple[StructureLieAlgebra, RootDatum]:
    """
    Chevalley basis of the split simple (or semisimple) Lie algebra of a finite-type GCM.

    :param gcm: finite-type GCM.
    :return: the algebra (basis e_+, f_+, h) and its root datum.
    :raises NotFiniteTypeError: the GCM is not of finite type.
    """
    rd = _build_cached(gcm.key(), tuple(gcm.labels), gcm.name)
    return rd.algebra, rd


@lru_cache(maxsize=32)
def _build_cached(key, labels, name) -> RootDatum:
    gcm = GCM(key, labels, name)
    positive = positive_roots(gcm)
    r = gcm.rank
    s = gcm.symmetrizer()
    # (alpha_i, alpha_j) = s_i a_ij
    form = [[s[i] * gcm.a(i, j) for j in range(r)] for i in range(r)]

    def norm_of(root):
        acc = ZERO
        for i, ci in enumerate(root):
            if ci:
                for j, cj in enumerate(root):
                    if cj:
                        acc += ci * cj * form[i][j]
        return acc

    norms = {root: norm_of(root) for root in positive}
    simple_norms = [2 * s[i] for i in range(r)]
    consts = _StructureConstants(positive, lambda root: norms[root] if _is_positive(root) else norms[_neg(root)])

    npos = len(positive)
    index = {root: k for k, root in enumerate(positive)}
    index.update({_neg(root): npos + k for k, root in enumerate(positive)})
    dim = 2 * npos + r
    brackets: Dict[Tuple[int, int], SparseVector] = {}
    constants: Dict[Tuple[Root, Root], Rational] = {}
    every = positive + [_neg(root) for root in positive]
    for a, b in combinations(every, 2):
        s_ab = _add(a, b)
        i, j = index[a], index[b]
        if not any(s_ab):
            # [e_a, e_-a] = h_a when a is positive
            sign = ONE if _is_positive(a) else -ONE
            root = a if _is_positive(a) else b
            brackets[(i, j)] = {2 * npos + k: sign * c * simple_norms[k] / norms[root]
                                for k, c in enumerate(root) if c}
        elif s_ab in consts.roots:
            value = consts(a, b)
            p = consts.string_below(a, b)
            if abs(value) != p + 1:
                raise ArithmeticError(f"N{a},{b} = {value}, expected +-{p + 1}")
            constants[(a, b)] = value
            brackets[(i, j)] = {index[s_ab]: value}
    for k in range(r):
        for root in positive:
            value = sum(c * gcm.a(k, j) for j, c in enumerate(root))
            if value:
                brackets[(2 * npos + k, index[root])] = {index[root]: rat(value)}
                brackets[(2 * npos + k, index[_neg(root)])] = {index[_neg(root)]: rat(-value)}

    labels_out = ([f"e_{_root_label(root)}" for root in positive] + [f"f_{_root_label(root)}" for root in positive]
                  + [f"h_{gcm.labels[k]}" for k in range(r)])
    algebra = StructureLieAlgebra(dim, brackets, labels_out, name=name or "chevalley")
    logger.info(f"built {algebra.name}: {npos} positive roots, dim {dim}")
    return RootDatum(gcm, positive, simple_norms, norms, constants, algebra, index)


def _root_label(root: Root) -> str:
    if max(root) < 10:
        return "".join(str(c) for c in root)
    return ",".join(str(c) for c in root)


def check_serre(rd: RootDatum) -> CheckReport:
    """ad(e_i)^(1 - a_ij) e_j = 0 and ad(f_i)^(1 - a_ij) f_j = 0 for i != j."""
    L = rd.algebra
    r = rd.rank
    simple = [tuple(int(i == k) for k in range(r)) for i in range(r)]
    checked = 0
    for kind, pick in (("e", rd.e_index), ("f", rd.f_index)):
        for i in range(r):
            for j in range(r):
                if i == j:
                    continue
                checked += 1
                vec = {pick(simple[j]): ONE}
                ei = {pick(simple[i]): ONE}
                for _ in range(1 - rd.gcm.a(i, j)):
                    vec = L.bracket(ei, vec)
                if vec:
                    return CheckReport(name=f"serre[{L.name}]", passed=False, checked=checked,
                                       witness={"generator": kind, "i": i + 1, "j": j + 1})
    return CheckReport(name=f"serre[{L.name}]", passed=True, checked=checked)


# gradings

@dataclass
class NodeGrading:
    node: int
    degrees: List[int]
    graded_dims: List[int]
    depth: int


def node_grading(rd: RootDatum, node: int) -> NodeGrading:
    """
    Grading by the coefficient k of the node's simple root: e_mu in degree -k, f_mu in +k,
    the Cartan subalgebra in degree 0.
    """
    k = rd.gcm.node(node)
    degrees = [-root[k] for root in rd.positive] + [root[k] for root in rd.positive] + [0] * rd.rank
    top = max(root[k] for root in rd.positive)
    dims = [degrees.count(d) for d in range(-top, top + 1)]
    return NodeGrading(node=node, degrees=degrees, graded_dims=dims, depth=2 * top + 1)


def grading_depth(rd: RootDatum, node: int) -> int:
    return 2 * max(root[rd.gcm.node(node)] for root in rd.positive) + 1


def chevalley_involution(rd: RootDatum) -> List[SparseVector]:
    """e_mu -> -f_mu, f_mu -> -e_mu, h_i -> -h_i, as images of the basis."""
    npos = len(rd.positive)
    images = [{npos + k: -ONE} for k in range(npos)] + [{k: -ONE} for k in range(npos)]
    images += [{2 * npos + i: -ONE} for i in range(rd.rank)]
    return images


def graded_chevalley(gcm: GCM, node: int) -> Tuple[StructureLieAlgebra, RootDatum]:
    """Chevalley algebra with the node grading and the Chevalley involution attached."""
    L, rd = build_chevalley(gcm)
    grading = node_grading(rd, node)
    return L.with_grading(grading.degrees).with_involution(chevalley_involution(rd)), rd


@dataclass
class GradedSliceData:
    """
    The degree -1 piece of a node grading as a triple system.

    ``triple`` is (xyz) = [[x, tau(y)], z]; ``form`` the bilinear form entering the slotted
    product; ``pairing`` is (e_mu, tau(f_nu)).
    """
    algebra: StructureLieAlgebra
    node: int
    roots: List[Root]
    indices: List[int]
    triple: TripleTensor
    form: Dict[int, Dict[int, Rational]]
    pairing: Dict[int, Dict[int, Rational]]

    @property
    def dim(self) -> int:
        return len(self.indices)


def graded_slice(rd: RootDatum, node: int) -> GradedSliceData:
    """
    Triple system on g_-1 = span{e_mu : coefficient of the node in mu is 1}.

    The form is (e_mu, e_nu) = -delta |alpha_node|^2 / |mu|^2, so that (e_mu, tau(f_nu)) is the
    identity whenever every g_-1 root has the length of the node's simple root.
    """
    k = rd.gcm.node(node)
    L = rd.algebra
    roots = [root for root in rd.positive if root[k] == 1]
    indices = [rd.e_index(root) for root in roots]
    position = {idx: p for p, idx in enumerate(indices)}
    black_norm = rd.simple_norms[k]

    entries: Dict[Tuple[int, int, int], SparseVector] = {}
    for mu, i in enumerate(indices):
        for nu, root in enumerate(roots):
            inner = L.bracket_basis(i, rd.f_index(root))
            if not inner:
                continue
            for lam, j in enumerate(indices):
                out: SparseVector = {}
                for m, c in inner.items():
                    vec_iadd(out, L.bracket_basis(m, j), -c)
                if out:
                    entries[(mu, nu, lam)] = {position[m]: x for m, x in out.items()}
    labels = [L.labels[i] for i in indices]
    triple = TripleTensor(len(indices), entries, labels)
    form = {p: {p: -black_norm / rd.norms[root]} for p, root in enumerate(roots)}
    pairing = {p: {p: black_norm / rd.norms[root]} for p, root in enumerate(roots)}
    logger.info(f"{L.name} node {node}: g_-1 of dim {len(indices)}, {triple.nonzero_count()} triple entries")
    return GradedSliceData(L, node, roots, indices, triple, form, pairing)


# EXTENSION ISOMORPHISM

def _slot_of(root: Root, chain: Sequence[int]) -> int:
    run = 0
    for k in chain:
        if root[k] != 1:
            break
        run += 1
    return run + 1


def _exact_root(value: Rational, k: int) -> Optional[Rational]:
    """Positive rational k-th root of a positive rational, or None when it is not rational."""
    num, exact_n = integer_nthroot(int(value.numerator), k)
    den, exact_d = integer_nthroot(int(value.denominator), k)
    if not (exact_n and exact_d):
        return None
    return rat(num, den)


def _rat_power(value: Rational, power: int) -> Rational:
    return value ** power if power >= 0 else ONE / value ** (-power)


def _reduced(equation, scales: List[Optional[Rational]]):
    """The equation with every known scale moved into the ratio."""
    exps, ratio = equation
    unknown = {}
    for v, power in exps.items():
        if scales[v] is None:
            unknown[v] = power
        else:
            ratio = ratio / _rat_power(scales[v], power)
    return unknown, ratio


def _log_linear_scales(equations, unknown: Sequence[int]) -> Optional[Dict[int, Rational]]:
    """
    Solves prod lambda^exponent = ratio for the unknown scales prime by prime: the exponent of p in
    every lambda is a linear system over QQ with the p-adic valuations of the ratios on the right.

    :return: scales for every unknown, or None when the system is inconsistent or needs an
             irrational root.
    """
    column = {v: i for i, v in enumerate(unknown)}
    rows = []
    for exps, _ in equations:
        row = [0] * len(unknown)
        for v, power in exps.items():
            row[column[v]] = power
        rows.append(row)
    primes = sorted({p for _, ratio in equations
                     for part in (ratio.numerator, ratio.denominator) for p in factorint(int(part))})
    scales = {v: ONE for v in unknown}
    if any(not any(row) and ratio != ONE for row, (_, ratio) in zip(rows, equations)):
        return None
    if not primes:
        return scales
    m = mat_from_rows(rows, cols=len(unknown))
    for p in primes:
        rhs = [rat(multiplicity(p, int(ratio.numerator)) - multiplicity(p, int(ratio.denominator)))
               for _, ratio in equations]
        valuations = mat_solve(m, rhs)
        if valuations is NO_SOLUTION or not all(is_integer(x) for x in valuations):
            return None
        for v, x in zip(unknown, valuations):
            scales[v] *= _rat_power(rat(p), int(x))
    return scales


def _solve_magnitudes(equations, count) -> Tuple[Optional[List[Rational]], Any]:
    """
    Positive scales with prod lambda^exponent = ratio per equation.

    :param equations: list of (exponents dict var -> int, ratio).
    :return: (scales, None) or (None, offending equation).
    """
    scales: List[Optional[Rational]] = [None] * count
    by_var: Dict[int, List[int]] = {}
    for e, (exps, _) in enumerate(equations):
        for v in exps:
            by_var.setdefault(v, []).append(e)
    pending = deque(range(len(equations)))
    done = [False] * len(equations)

    def try_equation(e):
        exps, ratio = equations[e]
        unknown = [v for v in exps if scales[v] is None]
        if len(unknown) > 1:
            return True
        known = ONE
        for v, power in exps.items():
            if scales[v] is not None:
                known *= _rat_power(scales[v], power)
        if not unknown:
            done[e] = True
            return known == ratio
        v = unknown[0]
        power = exps[v]
        target = ratio / known
        if power < 0:
            target, power = ONE / target, -power
        root = _exact_root(target, power)
        if root is None:
            return False
        scales[v] = root
        done[e] = True
        pending.extend(by_var.get(v, []))
        return True

    while True:
        while pending:
            e = pending.popleft()
            if not done[e] and not try_equation(e):
                return None, equations[e]
        free = [v for v in range(count) if scales[v] is None]
        if not free:
            break
        stuck = [_reduced(equations[e], scales) for e in range(len(equations)) if not done[e]]
        coupled = _log_linear_scales(stuck, free)
        if coupled is None:
            # no rational solution for the coupled block; pin one scale and keep propagating
            coupled = {free[0]: ONE}
        for v, value in coupled.items():
            scales[v] = value
            pending.extend(by_var.get(v, []))
    for e in range(len(equations)):
        if not done[e] and not try_equation(e):
            return None, equations[e]
    return scales, None


def _solve_signs(rows: List[Tuple[int, int]], count: int) -> Optional[List[int]]:
    """
    Solves sum_{v in mask} s_v = rhs over GF(2); rows are (bitmask, rhs). Free variables are 0.
    """
    pivots: Dict[int, Tuple[int, int]] = {}
    for mask, rhs in rows:
        while mask:
            top = mask.bit_length() - 1
            if top not in pivots:
                pivots[top] = (mask, rhs)
                break
            pmask, prhs = pivots[top]
            mask ^= pmask
            rhs ^= prhs
        else:
            if rhs:
                return None
    bits = [0] * count
    for top in sorted(pivots):
        mask, rhs = pivots[top]
        value = rhs
        rest = mask & ~(1 << top)
        while rest:
            low = rest & -rest
            value ^= bits[low.bit_length() - 1]
            rest ^= low
        bits[top] = value
    return bits


def verify_extension_isomorphism(h: GCM, black: int, n: int) -> CheckReport:
    """
    Checks that the slotted product on (h_-1)^n is isomorphic to the triple system g_-1 of
    g = extend_diagram(h, black, n), with an explicit diagonal isomorphism.

    Each g_-1 root goes to slot 1 + (number of leading 1s of its chain coefficients) and to the
    h_-1 root given by its first rank(h) coefficients. Scales are solved from the structure
    constants: magnitudes by propagation over positive rationals, signs over GF(2).

    :raises NotFiniteTypeError: h or the extended diagram is not of finite type.
    """
    name = f"extension_isomorphism[{h.name or 'GCM'},node {black},n={n}]"
    g = extend_diagram(h, black, n)
    for gcm in (h, g):
        if classify_gcm(gcm) != FINITE:
            raise NotFiniteTypeError(
                f"{gcm.name or 'GCM'} is {classify_gcm(gcm)}; only finite diagrams are compared, "
                f"use grade/extend for the depth and classification of the others")
    _, rd_h = build_chevalley(h)
    _, rd_g = build_chevalley(g)
    slice_h = graded_slice(rd_h, black)
    slice_g = graded_slice(rd_g, black)
    target = slotted_slice_tensor(slice_h, n)
    source = slice_g.triple
    details: Dict[str, Any] = {"g": identify_type(g) or g.name, "n": n, "dim_h_minus1": slice_h.dim,
                               "dim_g_minus1": slice_g.dim, "form_normalization": rd_h.simple_norms[h.node(black)]}

    if slice_g.dim != n * slice_h.dim:
        return CheckReport(name=name, passed=False, witness={"dimension": [slice_g.dim, n * slice_h.dim]},
                           details=details)

    chain = list(range(h.rank, g.rank))
    inner_of = {root: p for p, root in enumerate(slice_h.roots)}
    perm: List[int] = []
    assignment = []
    for p, root in enumerate(slice_g.roots):
        slot = _slot_of(root, chain)
        inner = inner_of.get(root[:h.rank])
        if inner is None or slot > n:
            return CheckReport(name=name, passed=False, details=details,
                               witness={"unassigned_root": list(root), "label": slice_g.triple.labels[p]})
        perm.append(slotted_index(slice_h.dim, SlottedBasisIndex(slot, inner)))
        assignment.append((slot, inner))
    if len(set(perm)) != len(perm):
        return CheckReport(name=name, passed=False, details=details, witness={"slot_assignment": "not injective"})

    inverse = {q: p for p, q in enumerate(perm)}
    magnitude_eqs = {}
    sign_rows = set()
    keys = sorted(set(source.entries) | {tuple(inverse[q] for q in key) for key in target.entries})
    checked = 0
    for x, y, z in keys:
        src = source.basis(x, y, z)
        tgt = target.basis(perm[x], perm[y], perm[z])
        for w in sorted(set(src) | {inverse[q] for q in tgt}):
            checked += 1
            p_val, t_val = src.get(w, ZERO), tgt.get(perm[w], ZERO)
            if bool(p_val) != bool(t_val):
                details["isomorphism"] = None
                return CheckReport(name=name, passed=False, checked=checked, details=details,
                                   witness={"entry": [x, y, z, w],
                                            "labels": [source.labels[i] for i in (x, y, z, w)],
                                            "g_value": p_val, "transported_value": t_val})
            # lambda_w p = lambda_x lambda_y lambda_z t
            exps: Dict[int, int] = {}
            for v, power in ((w, -1), (x, 1), (y, 1), (z, 1)):
                exps[v] = exps.get(v, 0) + power
            exps = {v: e for v, e in exps.items() if e}
            magnitude_eqs.setdefault((tuple(sorted(exps.items())), abs(p_val) / abs(t_val)), exps)
            mask = 0
            for v, e in exps.items():
                if e % 2:
                    mask ^= 1 << v
            sign_rows.add((mask, int((p_val < 0) != (t_val < 0))))

    equations = [(exps, ratio) for (_, ratio), exps in magnitude_eqs.items()]
    scales, bad = _solve_magnitudes(equations, slice_g.dim)
    if scales is None:
        return CheckReport(name=name, passed=False, checked=checked, details=details,
                           witness={"magnitudes": "inconsistent", "equation": bad})
    signs = _solve_signs(sorted(sign_rows), slice_g.dim)
    if signs is None:
        return CheckReport(name=name, passed=False, checked=checked, details=details,
                           witness={"signs": "inconsistent"})
    lam = [-scales[v] if signs[v] else scales[v] for v in range(slice_g.dim)]

    # transported tensor must equal the slotted one entrywise
    for (x, y, z), src in sorted(source.entries.items()):
        tgt = target.basis(perm[x], perm[y], perm[z])
        for w, p_val in src.items():
            if lam[w] * p_val != lam[x] * lam[y] * lam[z] * tgt.get(perm[w], ZERO):
                return CheckReport(name=name, passed=False, checked=checked, details=details,
                                   witness={"entry": [x, y, z, w],
                                            "labels": [source.labels[i] for i in (x, y, z, w)]})

    details["isomorphism"] = [
        {"g_basis": source.labels[p], "root": list(slice_g.roots[p]), "slot": slot,
         "inner": slice_h.triple.labels[inner], "scale": lam[p]}
        for p, (slot, inner) in enumerate(assignment)]
    logger.info(f"{name}: matched {slice_g.dim}-dimensional triple systems")
    return CheckReport(name=name, passed=True, checked=checked, details=details)
