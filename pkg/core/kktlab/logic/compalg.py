"""
The real division algebras R, C, H, O with exact coordinates.

Multiplication tables come from Cayley-Dickson doubling, (a, b)(c, d) = (ac - d*b, da + bc*),
starting from R. Basis e_0 = 1, e_1, ...; the upper half of each doubled basis is (0, e_m).
"""
import logging
from functools import lru_cache
from typing import List, Sequence, Tuple

from kktlab.config.settings import COMPOSITION_DIMS
from kktlab.exceptions import KindMismatchError, UsageError
from kktlab.logic.exactnum import ONE, ZERO, Rational, rat

logger = logging.getLogger(__name__)

# (sign, index): e_i e_j = sign * e_index
TableEntry = Tuple[int, int]


class CompositionKind:
    """One of the four division algebras, identified by its tag."""

    _instances = {}

    def __new__(cls, tag: str):
        tag = tag.upper()
        if tag not in COMPOSITION_DIMS:
            raise UsageError(f"unknown composition algebra {tag!r}, expected one of R, C, H, O")
        if tag not in cls._instances:
            inst = super().__new__(cls)
            inst.tag = tag
            inst.dim = COMPOSITION_DIMS[tag]
            cls._instances[tag] = inst
        return cls._instances[tag]

    def __getnewargs__(self):
        return (self.tag,)

    def __repr__(self):
        return f"CompositionKind({self.tag!r})"

    def __str__(self):
        return self.tag

    @property
    def table(self) -> List[List[TableEntry]]:
        return doubling_table(self.dim)


@lru_cache(maxsize=None)
def doubling_table(dim: int) -> List[List[TableEntry]]:
    """
    Multiplication table of the 2^k-dimensional Cayley-Dickson algebra over basis elements.

    :param dim: 1, 2, 4 or 8.
    :return: table[i][j] = (sign, k) with e_i e_j = sign * e_k.
    """
    if dim == 1:
        return [[(1, 0)]]
    half = dim // 2
    low = doubling_table(half)

    def conj_sign(m):
        return 1 if m == 0 else -1

    table = []
    for i in range(dim):
        row = []
        for j in range(dim):
            if i < half and j < half:
                # (a, 0)(c, 0) = (ac, 0)
                s, k = low[i][j]
                row.append((s, k))
            elif i < half:
                # (a, 0)(0, d) = (0, da)
                s, k = low[j - half][i]
                row.append((s, k + half))
            elif j < half:
                # (0, b)(c, 0) = (0, b c*)
                s, k = low[i - half][j]
                row.append((s * conj_sign(j), k + half))
            else:
                # (0, b)(0, d) = (-d* b, 0)
                s, k = low[j - half][i - half]
                row.append((-s * conj_sign(j - half), k))
        table.append(row)
    logger.debug(f"doubled the {half}-dimensional table to dimension {dim}")
    return table


class CompositionElement:
    """Immutable coordinate vector over the basis of a composition algebra."""

    __slots__ = ("kind", "coords")

    def __init__(self, kind: CompositionKind, coords: Sequence):
        if len(coords) != kind.dim:
            raise ValueError(f"{kind.tag} elements have {kind.dim} coordinates, got {len(coords)}")
        self.kind = kind
        self.coords = tuple(rat(c) for c in coords)

    @classmethod
    def basis(cls, kind: CompositionKind, index: int) -> "CompositionElement":
        coords = [ZERO] * kind.dim
        coords[index] = ONE
        return cls(kind, coords)

    @classmethod
    def zero(cls, kind: CompositionKind) -> "CompositionElement":
        return cls(kind, [ZERO] * kind.dim)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __eq__(self, other):
        return isinstance(other, CompositionElement) and self.kind is other.kind and self.coords == other.coords

    def __hash__(self):
        return hash((self.kind.tag, self.coords))

    def __add__(self, other):
        _check_kinds(self, other)
        return CompositionElement(self.kind, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        _check_kinds(self, other)
        return CompositionElement(self.kind, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return CompositionElement(self.kind, [-a for a in self.coords])

    def scale(self, c: Rational) -> "CompositionElement":
        return CompositionElement(self.kind, [c * a for a in self.coords])

    def __mul__(self, other):
        return ca_mul(self, other)

    def __repr__(self):
        terms = [f"{c}*e{i}" for i, c in enumerate(self.coords) if c]
        return f"{self.kind.tag}({' + '.join(terms) or '0'})"


def _check_kinds(x: CompositionElement, y: CompositionElement) -> None:
    if x.kind is not y.kind:
        raise KindMismatchError(f"cannot combine {x.kind.tag} and {y.kind.tag} elements")


def ca_mul(x: CompositionElement, y: CompositionElement) -> CompositionElement:
    """
    Bilinear product from the doubling table.

    :param x: left factor.
    :param y: right factor, same kind.
    :return: x y.
    """
    _check_kinds(x, y)
    table = x.kind.table
    out = [ZERO] * x.kind.dim
    for i, a in enumerate(x.coords):
        if not a:
            continue
        row = table[i]
        for j, b in enumerate(y.coords):
            if b:
                s, k = row[j]
                out[k] += a * b if s > 0 else -(a * b)
    return CompositionElement(x.kind, out)


def ca_conj(x: CompositionElement) -> CompositionElement:
    return CompositionElement(x.kind, [x.coords[0]] + [-c for c in x.coords[1:]])


def ca_norm(x: CompositionElement) -> Rational:
    return sum((c * c for c in x.coords), ZERO)


def ca_real(x: CompositionElement) -> Rational:
    return x.coords[0]


def table_as_strings(kind: CompositionKind) -> List[List[str]]:
    """Table in the golden-file notation: "+k" / "-k" for plus or minus e_k."""
    return [[("+" if s > 0 else "-") + str(k) for s, k in row] for row in kind.table]
