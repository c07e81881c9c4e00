"""
Triple systems tabulated as rank-4 structure tensors, with checkers for the generalized
Jordan triple identity and outer symmetry, plus the slotted products on H_n(K)^n and on (h_-1)^n.
"""
import json
import logging
import weakref
from collections import namedtuple
from itertools import product as cartesian
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from kktlab.config.settings import (DEFAULT_GJTS_SAMPLES, DEFAULT_SEED,
                                    FULL_GJTS_MAX_DIM, SCHEMA)
from kktlab.exceptions import SlotError
from kktlab.logic.exactnum import (ONE, ZERO, Rational, SparseVector, rat,
                                   rat_to_str, vec_iadd, vec_sub)
from kktlab.logic.jordan import JordanAlgebra
from kktlab.logic.report import CheckReport, Mode
from kktlab.logic.workers import chunked, scan_chunks

logger = logging.getLogger(__name__)

SlottedBasisIndex = namedtuple("SlottedBasisIndex", ["slot", "inner"])

TWO = rat(2)


class TripleTensor:
    """
    Trilinear product on a finite basis: (e_i e_j e_k) = sum_l t[i, j, k][l] e_l.
    Only nonzero triples are stored.
    """

    def __init__(self, dim: int, entries: Dict[Tuple[int, int, int], SparseVector],
                 labels: Optional[List[str]] = None):
        self.dim = dim
        self.entries = {key: vec for key, vec in entries.items() if vec}
        self.labels = labels if labels is not None else [f"b{i}" for i in range(dim)]

    def __repr__(self):
        return f"TripleTensor(dim={self.dim}, nonzero={len(self.entries)})"

    def __eq__(self, other):
        return isinstance(other, TripleTensor) and self.dim == other.dim and self.entries == other.entries

    def basis(self, i: int, j: int, k: int) -> SparseVector:
        return self.entries.get((i, j, k), {})

    def apply(self, u: SparseVector, v: SparseVector, w: SparseVector) -> SparseVector:
        out: SparseVector = {}
        for i, a in u.items():
            for j, b in v.items():
                ab = a * b
                for k, c in w.items():
                    vec = self.entries.get((i, j, k))
                    if vec:
                        vec_iadd(out, vec, ab * c)
        return out

    def scaled(self, c: Rational) -> "TripleTensor":
        return TripleTensor(self.dim, {key: {l: c * x for l, x in vec.items()} for key, vec in self.entries.items()},
                            self.labels)

    def perturbed(self, i: int, j: int, k: int, l: int, delta: Rational = ONE) -> "TripleTensor":
        entries = {key: dict(vec) for key, vec in self.entries.items()}
        vec = entries.setdefault((i, j, k), {})
        new = vec.get(l, ZERO) + delta
        if new:
            vec[l] = new
        else:
            vec.pop(l, None)
        return TripleTensor(self.dim, entries, self.labels)

    def nonzero_count(self) -> int:
        return sum(len(vec) for vec in self.entries.values())

    def to_json(self) -> Dict:
        rows = [[i, j, k, l, rat_to_str(x)]
                for (i, j, k), vec in sorted(self.entries.items()) for l, x in sorted(vec.items())]
        return {"schema": SCHEMA, "dims": self.dim, "labels": self.labels, "entries": rows}

    @classmethod
    def from_json(cls, data: Dict) -> "TripleTensor":
        entries: Dict[Tuple[int, int, int], SparseVector] = {}
        for i, j, k, l, x in data["entries"]:
            entries.setdefault((i, j, k), {})[l] = rat(x)
        return cls(data["dims"], entries, data.get("labels"))

    def dump(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, separators=(",", ":"))


def tensor_from_product(dim: int, product: Callable[[int, int, int], Union[SparseVector, Sequence]],
                        labels: Optional[List[str]] = None) -> TripleTensor:
    """
    Tabulates a trilinear product over all basis triples.

    :param dim: basis size.
    :param product: callable on basis indices returning a coordinate vector (dense or sparse).
    :param labels: optional basis names.
    :return: the tensor.
    """
    entries = {}
    for i, j, k in cartesian(range(dim), repeat=3):
        vec = product(i, j, k)
        if isinstance(vec, dict):
            if any(not 0 <= l < dim for l in vec):
                raise ValueError(f"product({i}, {j}, {k}) has coordinates outside 0..{dim - 1}")
            sparse = {l: rat(x) for l, x in vec.items() if x}
        else:
            if len(vec) != dim:
                raise ValueError(f"product({i}, {j}, {k}) returned {len(vec)} coordinates, expected {dim}")
            sparse = {l: rat(x) for l, x in enumerate(vec) if x}
        if sparse:
            entries[(i, j, k)] = sparse
    return TripleTensor(dim, entries, labels)


def jts_tensor(alg: JordanAlgebra) -> TripleTensor:
    """Jordan triple product (xyz) = (x o y) o z + x o (y o z) - y o (x o z) of a Jordan algebra."""
    return tensor_from_product(alg.dim, lambda i, j, k: alg.jts({i: ONE}, {j: ONE}, {k: ONE}), alg.labels)


# generalized Jordan triple identity

def gjts_defect(entries, u: int, v: int, x: int, y: int, z: int) -> SparseVector:
    """(uv(xyz)) - (xy(uvz)) - ((uvx)yz) + (x(vuy)z) on basis elements."""
    out: SparseVector = {}
    for k, c in entries.get((x, y, z), {}).items():
        vec_iadd(out, entries.get((u, v, k), {}), c)
    for k, c in entries.get((u, v, z), {}).items():
        vec_iadd(out, entries.get((x, y, k), {}), -c)
    for i, c in entries.get((u, v, x), {}).items():
        vec_iadd(out, entries.get((i, y, z), {}), -c)
    for j, c in entries.get((v, u, y), {}).items():
        vec_iadd(out, entries.get((x, j, z), {}), c)
    return out


def _gjts_full_chunk(payload, chunk):
    entries, dim = payload
    checked = 0
    for u, v in chunk:
        for x, y, z in cartesian(range(dim), repeat=3):
            checked += 1
            if gjts_defect(entries, u, v, x, y, z):
                return checked, (u, v, x, y, z)
    return checked, None


def _gjts_sampled_chunk(payload, chunk):
    entries, _ = payload
    checked = 0
    for index, u, v, x, y, z in chunk:
        checked += 1
        if gjts_defect(entries, u, v, x, y, z):
            return checked, (index, (u, v, x, y, z))
    return checked, None


def default_gjts_mode(dim: int) -> Mode:
    if dim <= FULL_GJTS_MAX_DIM:
        return Mode(full=True)
    return Mode(full=False, samples=DEFAULT_GJTS_SAMPLES)


def check_gjts(t: TripleTensor, mode: Optional[Mode] = None, seed: int = DEFAULT_SEED, threads: int = 1,
               name: str = "gjts") -> CheckReport:
    """
    Checks (uv(xyz)) - (xy(uvz)) = ((uvx)yz) - (x(vuy)z) on basis 5-tuples, exactly.

    :param t: triple tensor.
    :param mode: full enumeration or sampled(count); defaults by dimension.
    :param seed: seed for the sampled mode.
    :param threads: worker processes.
    :return: report, witness is the first violating 5-tuple (with its sample index when sampled).
    """
    mode = mode or default_gjts_mode(t.dim)
    payload = (t.entries, t.dim)
    if mode.full:
        pairs = list(cartesian(range(t.dim), repeat=2))
        results = scan_chunks(_gjts_full_chunk, payload, chunked(pairs, max(1, len(pairs) // 64)), threads)
    else:
        rng = np.random.default_rng(seed)
        draws = rng.integers(0, t.dim, size=(mode.samples, 5))
        rows = [(i, *map(int, row)) for i, row in enumerate(draws)]
        results = scan_chunks(_gjts_sampled_chunk, payload, chunked(rows), threads)

    checked = 0
    witness = None
    for count, w in results:
        checked += count
        if w is not None and (witness is None or w < witness):
            witness = w
    passed = witness is None
    report_witness = None
    if witness is not None:
        tup = witness if mode.full else witness[1]
        report_witness = {"tuple": list(tup), "labels": [t.labels[i] for i in tup],
                          "defect": gjts_defect(t.entries, *tup)}
        if not mode.full:
            report_witness["sample"] = witness[0]
    logger.info(f"{name}: {'pass' if passed else 'fail'} ({mode}, {checked} tuples)")
    return CheckReport(name=name, passed=passed, checked=checked, mode=str(mode),
                       seed=None if mode.full else seed, witness=report_witness)


def check_outer_symmetry(t: TripleTensor, name: str = "outer_symmetry") -> CheckReport:
    """Reports whether t[i, j, k] = t[k, j, i] for every basis triple."""
    checked = 0
    for key in sorted(set(t.entries) | {(k, j, i) for i, j, k in t.entries}):
        i, j, k = key
        if i > k:
            continue
        checked += 1
        if t.basis(i, j, k) != t.basis(k, j, i):
            witness = {"triple": [i, j, k], "labels": [t.labels[i], t.labels[j], t.labels[k]],
                       "xyz": t.basis(i, j, k), "zyx": t.basis(k, j, i)}
            return CheckReport(name=name, passed=False, checked=checked, witness=witness)
    return CheckReport(name=name, passed=True, checked=checked)


# slotted products

def slotted_index(dim: int, index: SlottedBasisIndex) -> int:
    return (index.slot - 1) * dim + index.inner


def slotted_basis(dim: int, n: int) -> List[SlottedBasisIndex]:
    return [SlottedBasisIndex(a, i) for a in range(1, n + 1) for i in range(dim)]


def _check_slots(n: int, *indices: SlottedBasisIndex) -> None:
    for idx in indices:
        if not 1 <= idx.slot <= n:
            raise SlotError(f"slot {idx.slot} outside 1..{n}")


def _place(vec: SparseVector, slot: int, dim: int, scale: Rational, out: SparseVector) -> None:
    offset = (slot - 1) * dim
    for l, x in vec.items():
        key = offset + l
        new = out.get(key, ZERO) + scale * x
        if new:
            out[key] = new
        else:
            out.pop(key, None)


class _SlottedCache:
    """Per-algebra memo of the bracketed Jordan terms and the trace form on basis elements."""

    _by_algebra: "weakref.WeakKeyDictionary[JordanAlgebra, _SlottedCache]" = weakref.WeakKeyDictionary()

    def __init__(self, alg: JordanAlgebra):
        # weak, so the memo dies with its algebra
        self._alg = weakref.ref(alg)
        self.terms: Dict[Tuple[int, int, int], SparseVector] = {}
        self.form: Dict[Tuple[int, int], Rational] = {}

    @classmethod
    def of(cls, alg: JordanAlgebra) -> "_SlottedCache":
        cache = cls._by_algebra.get(alg)
        if cache is None:
            cache = cls(alg)
            cls._by_algebra[alg] = cache
        return cache

    @property
    def alg(self) -> JordanAlgebra:
        return self._alg()

    def bracketed(self, x: int, y: int, z: int) -> SparseVector:
        key = (x, y, z)
        if key not in self.terms:
            mul = self.alg.mul
            ex, ey, ez = {x: ONE}, {y: ONE}, {z: ONE}
            # ((z o y) o x) - ((z o x) o y) + ((x o y) o z)
            out = mul(mul(ez, ey), ex)
            vec_iadd(out, mul(mul(ez, ex), ey), -ONE)
            vec_iadd(out, mul(mul(ex, ey), ez))
            self.terms[key] = out
        return self.terms[key]

    def trace(self, x: int, y: int) -> Rational:
        key = (x, y)
        if key not in self.form:
            self.form[key] = self.alg.trace({x: ONE}, {y: ONE})
        return self.form[key]


def slotted_jordan_product(alg: JordanAlgebra, n: int, x: SlottedBasisIndex, y: SlottedBasisIndex,
                           z: SlottedBasisIndex) -> SparseVector:
    """
    Triple product on H_n(K)^n:
    2 d^ab ((z o y) o x)^c - 2 d^ab ((z o x) o y)^c + 2 d^ab ((x o y) o z)^c - d^ab (x, y) z^c + d^bc (x, y) z^a
    with (x, y) the trace form.

    :return: sparse vector over the slotted basis, flat index (slot - 1) * dim + inner.
    """
    if n < 1:
        raise SlotError(f"number of copies must be positive, got {n}")
    _check_slots(n, x, y, z)
    cache = _SlottedCache.of(alg)
    a, b, c = x.slot, y.slot, z.slot
    out: SparseVector = {}
    if a == b:
        _place(cache.bracketed(x.inner, y.inner, z.inner), c, alg.dim, TWO, out)
    form = cache.trace(x.inner, y.inner) if (a == b or b == c) else ZERO
    if form:
        if a == b:
            _place({z.inner: ONE}, c, alg.dim, -form, out)
        if b == c:
            _place({z.inner: ONE}, a, alg.dim, form, out)
    return out


def slotted_jordan_tensor(alg: JordanAlgebra, n: int) -> TripleTensor:
    basis = slotted_basis(alg.dim, n)
    labels = [f"{alg.labels[idx.inner]}^{idx.slot}" for idx in basis]

    def product(i, j, k):
        return slotted_jordan_product(alg, n, basis[i], basis[j], basis[k])

    tensor = tensor_from_product(len(basis), product, labels)
    logger.info(f"tabulated slotted product on {alg.name}^{n}: dim {tensor.dim}, {tensor.nonzero_count()} entries")
    return tensor


def slotted_slice_product(hdata, n: int, x: SlottedBasisIndex, y: SlottedBasisIndex,
                          z: SlottedBasisIndex) -> SparseVector:
    """
    Triple product on (h_-1)^n:
    d^ab [[x, tau(y)], z]^c - d^ab (x, y) z^c + d^bc (x, y) z^a.

    :param hdata: graded slice data exposing ``triple`` (TripleTensor of h_-1) and ``form``
        (the associated bilinear form as a dict-of-dicts over h_-1 indices).
    :return: sparse vector over the slotted basis.
    """
    if n < 1:
        raise SlotError(f"number of copies must be positive, got {n}")
    _check_slots(n, x, y, z)
    dim = hdata.triple.dim
    a, b, c = x.slot, y.slot, z.slot
    out: SparseVector = {}
    if a == b:
        _place(hdata.triple.basis(x.inner, y.inner, z.inner), c, dim, ONE, out)
    form = hdata.form.get(x.inner, {}).get(y.inner, ZERO) if (a == b or b == c) else ZERO
    if form:
        if a == b:
            _place({z.inner: ONE}, c, dim, -form, out)
        if b == c:
            _place({z.inner: ONE}, a, dim, form, out)
    return out


def slotted_slice_tensor(hdata, n: int) -> TripleTensor:
    dim = hdata.triple.dim
    basis = slotted_basis(dim, n)
    labels = [f"{hdata.triple.labels[idx.inner]}^{idx.slot}" for idx in basis]

    def product(i, j, k):
        return slotted_slice_product(hdata, n, basis[i], basis[j], basis[k])

    return tensor_from_product(len(basis), product, labels)
