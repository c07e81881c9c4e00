"""
Polynomial vector fields with exact coefficients and the Lie algebras they span: the conformal
fields, the generalized so(p+n, q+n) fields and the 5-graded operator algebra of a Kantor
triple system.

A field is sum_i F^i d/dx_i with F^i in sympy's QQ[x]; [f, g]^i = f(g^i) - g(f^i). Coordinates
carry integer weights so that every field built here is homogeneous, and the weighted degree
(weight of the coefficient monomial minus the weight of the direction) is the Lie grading.
"""
import logging
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.rings import PolyElement, PolyRing

from kktlab.config.settings import POLY_DEGREE_CAP
from kktlab.exceptions import (AlgebraMismatchError, ClosureError,
                               DegreeOverflowError, MissingStructureError,
                               UsageError)
from kktlab.logic.exactnum import (ONE, Rational, SparseVector, SpanReducer,
                                   rat)
from kktlab.logic.liealg import StructureLieAlgebra, close_under_bracket
from kktlab.logic.report import CheckReport
from kktlab.logic.triplesys import TripleTensor

logger = logging.getLogger(__name__)

HALF = rat(1, 2)


class CoordinateSpace:
    """Named coordinates with grading weights and, for spacetime coordinates, the metric signs."""

    def __init__(self, names: Sequence[str], weights: Optional[Sequence[int]] = None,
                 metric: Optional[Sequence[int]] = None, description: str = ""):
        self.names = list(names)
        self.weights = list(weights) if weights is not None else [1] * len(self.names)
        self.metric = list(metric) if metric is not None else []
        self.description = description
        self.ring = PolyRing(self.names, QQ)
        self.gens = list(self.ring.gens)
        self.index = {name: i for i, name in enumerate(self.names)}

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, CoordinateSpace) and self.names == other.names and self.weights == other.weights

    def __hash__(self):
        return hash(tuple(self.names))

    def __repr__(self):
        return f"CoordinateSpace({self.description or len(self.names)})"

    @property
    def zero(self) -> PolyElement:
        return self.ring.zero

    def constant(self, value) -> PolyElement:
        return self.ring(rat(value))


def poly_degree(poly: PolyElement) -> int:
    if not poly:
        return -1
    return max(sum(monom) for monom in poly.keys())


class PolyVectorField:
    """
    Sparse vector field: components maps a coordinate index to its nonzero coefficient polynomial.

    :param label: name used in reports; fields produced by vf_bracket remember their parents.
    :raises DegreeOverflowError: a coefficient exceeds the degree cap.
    """

    def __init__(self, space: CoordinateSpace, components: Dict[int, PolyElement], label: str = "",
                 parents: Optional[Tuple["PolyVectorField", "PolyVectorField"]] = None):
        self.space = space
        self.components = {i: p for i, p in components.items() if p}
        for i, p in self.components.items():
            if poly_degree(p) > POLY_DEGREE_CAP:
                raise DegreeOverflowError(
                    f"{label or 'field'}: degree {poly_degree(p)} coefficient along {space.names[i]} "
                    f"exceeds the cap {POLY_DEGREE_CAP}")
        self.label = label
        self.parents = parents

    def __repr__(self):
        return f"PolyVectorField({self.label or str(self)})"

    def __str__(self):
        if not self.components:
            return "0"
        return " + ".join(f"({p})*d/d{self.space.names[i]}" for i, p in sorted(self.components.items()))

    def __call__(self, poly: PolyElement) -> PolyElement:
        """Derivative of a polynomial along the field."""
        out = self.space.zero
        if not poly:
            return out
        for i, c in self.components.items():
            d = poly.diff(self.space.gens[i])
            if d:
                out += c * d
        return out

    def __add__(self, other: "PolyVectorField") -> "PolyVectorField":
        _check_space(self, other)
        comps = dict(self.components)
        for i, p in other.components.items():
            comps[i] = comps.get(i, self.space.zero) + p
        return PolyVectorField(self.space, comps)

    def __neg__(self) -> "PolyVectorField":
        return self.scale(-ONE)

    def __sub__(self, other: "PolyVectorField") -> "PolyVectorField":
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, PolyVectorField) and self.space == other.space and self.components == other.components

    def scale(self, c: Rational) -> "PolyVectorField":
        return PolyVectorField(self.space, {i: p * c for i, p in self.components.items()}, self.label)

    def is_zero(self) -> bool:
        return not self.components

    def degree(self) -> int:
        return max((poly_degree(p) for p in self.components.values()), default=-1)

    def weighted_degree(self) -> Optional[int]:
        """Lie degree of a homogeneous field; None for the zero field, ValueError if inhomogeneous."""
        weights = self.space.weights
        found = set()
        for i, p in self.components.items():
            for monom in p.keys():
                found.add(sum(w * e for w, e in zip(weights, monom)) - weights[i])
        if not found:
            return None
        if len(found) > 1:
            raise ValueError(f"{self.label or 'field'} is not homogeneous (degrees {sorted(found)})")
        return found.pop()

    def flatten(self) -> SparseVector:
        """Coefficients keyed by (coordinate index, exponent tuple)."""
        return {(i, monom): coeff for i, p in self.components.items() for monom, coeff in p.items()}

    def to_json(self) -> Dict[str, str]:
        return {"label": self.label,
                "components": {self.space.names[i]: str(p) for i, p in sorted(self.components.items())}}


def _check_space(f: PolyVectorField, g: PolyVectorField) -> None:
    if f.space is not g.space and f.space != g.space:
        raise AlgebraMismatchError("vector fields live on different coordinate spaces")


def vf_bracket(f: PolyVectorField, g: PolyVectorField) -> PolyVectorField:
    """
    [f, g] = f(g) - g(f), componentwise.

    :raises AlgebraMismatchError: the fields live on different coordinate spaces.
    """
    _check_space(f, g)
    out = {}
    for i in set(f.components) | set(g.components):
        value = f(g.components.get(i, f.space.zero)) - g(f.components.get(i, f.space.zero))
        if value:
            out[i] = value
    return PolyVectorField(f.space, out, f"[{f.label},{g.label}]", parents=(f, g))


# field algebras

def field_algebra(fields: Sequence[PolyVectorField], name: str = "", max_dim: Optional[int] = None,
                  max_degree: Optional[int] = None,
                  involution: Optional[Dict[str, Tuple[Rational, str]]] = None) -> StructureLieAlgebra:
    """
    Lie algebra spanned by fields and their iterated brackets, graded by weighted degree.

    :param fields: homogeneous generating fields with distinct labels.
    :param max_dim: closure dimension ceiling.
    :param max_degree: largest allowed |weighted degree|; a bracket beyond it raises ClosureError.
    :param involution: generator label -> (sign, label of the image generator).
    :return: algebra with basis ordered by degree, the fields kept in ``.fields``.
    """
    by_label = {f.label: f for f in fields}

    def bracket(f, g):
        try:
            h = vf_bracket(f, g)
        except DegreeOverflowError as err:
            raise ClosureError(f"{name}: not second order, {err}") from err
        if max_degree is not None and not h.is_zero():
            k = h.weighted_degree()
            if abs(k) > max_degree:
                raise ClosureError(f"{name}: not second order, [{f.label}, {g.label}] has degree {k}", grade=k)
        return h

    basis, table = close_under_bracket(list(fields), bracket, PolyVectorField.flatten, max_dim, name)
    grading = [f.weighted_degree() for f in basis]
    L = StructureLieAlgebra(len(basis), table, [f.label for f in basis], grading, name=name)
    order = sorted(range(L.dim), key=lambda i: (grading[i], i))
    L = L.permuted(order)
    basis = [basis[i] for i in order]

    if involution is not None:
        L = L.with_involution(_field_involution(basis, by_label, involution))
    L.fields = basis
    logger.info(f"{name}: closure of {len(fields)} fields has dim {L.dim}, graded dims {L.graded_dims()}")
    return L


def _field_involution(basis: List[PolyVectorField], by_label, images) -> Optional[List[SparseVector]]:
    cache: Dict[int, PolyVectorField] = {}

    def tau(f: PolyVectorField) -> PolyVectorField:
        key = id(f)
        if key not in cache:
            if f.parents is not None:
                cache[key] = vf_bracket(tau(f.parents[0]), tau(f.parents[1]))
            else:
                sign, target = images[f.label]
                cache[key] = by_label[target].scale(sign)
        return cache[key]

    reducer = SpanReducer()
    for f in basis:
        reducer.add(f.flatten())
    columns = []
    for f in basis:
        coords = reducer.coordinates(tau(f).flatten())
        if coords is None:
            logger.warning(f"involution image of {f.label} leaves the span; no involution attached")
            return None
        columns.append(coords)
    return columns


def check_five_grading(L: StructureLieAlgebra) -> CheckReport:
    """g_k = 0 for |k| > 2 and g_k nonzero for |k| <= 2."""
    if L.grading is None:
        raise MissingStructureError(f"{L.name or 'algebra'} carries no grading")
    dims = {k: L.grading.count(k) for k in set(L.grading)}
    outside = sorted(k for k in dims if abs(k) > 2)
    missing = [k for k in range(-2, 3) if not dims.get(k)]
    passed = not outside and not missing
    witness = None if passed else {"outside": outside, "empty": missing}
    return CheckReport(name=f"five_grading[{L.name}]", passed=passed, checked=len(dims), witness=witness,
                       details={"graded_dims": L.graded_dims()})


# realizations of so(p+n, q+n)

def signature_metric(p: int, q: int) -> List[int]:
    if p < 0 or q < 0 or p + q < 1:
        raise UsageError(f"signature ({p}, {q}) needs p, q >= 0 and p + q >= 1")
    return [-1] * p + [1] * q


class _FieldBuilder:
    """Accumulates coefficient * d/dx terms into a field."""

    def __init__(self, space: CoordinateSpace):
        self.space = space
        self.comps: Dict[int, PolyElement] = {}

    def add(self, coefficient, directions: List[Tuple[int, Rational]]) -> "_FieldBuilder":
        for i, factor in directions:
            self.comps[i] = self.comps.get(i, self.space.zero) + coefficient * factor
        return self

    def build(self, label: str) -> PolyVectorField:
        return PolyVectorField(self.space, self.comps, label)


def conformal_fields(p: int, q: int) -> List[PolyVectorField]:
    """
    Translations P_mu, Lorentz fields G^mu_nu (mu < nu), the dilatation D and the special
    conformal fields K^mu on R^(p,q):

        P_mu = d_mu,  G^mu_nu = x_nu d^mu - x^mu d_nu,  D = x^mu d_mu,
        K^mu = -2 x^nu x^mu d_nu + x^nu x_nu d^mu.
    """
    eta = signature_metric(p, q)
    d = len(eta)
    space = CoordinateSpace([f"x{mu}" for mu in range(d)], metric=eta, description=f"R^({p},{q})")
    x = space.gens
    low = [eta[mu] * x[mu] for mu in range(d)]

    def up(mu):
        return [(mu, rat(eta[mu]))]

    def down(mu):
        return [(mu, ONE)]

    fields = [_FieldBuilder(space).add(space.constant(1), down(mu)).build(f"P{mu}") for mu in range(d)]
    for mu, nu in combinations(range(d), 2):
        fields.append(_FieldBuilder(space).add(low[nu], up(mu)).add(-x[mu], down(nu)).build(f"G{mu}_{nu}"))
    dil = _FieldBuilder(space)
    for mu in range(d):
        dil.add(x[mu], down(mu))
    fields.append(dil.build("D"))
    square = sum((x[nu] * low[nu] for nu in range(d)), space.zero)
    for mu in range(d):
        k = _FieldBuilder(space)
        for nu in range(d):
            k.add(-2 * x[nu] * x[mu], down(nu))
        k.add(square, up(mu))
        fields.append(k.build(f"K{mu}"))
    return fields


def generalized_fields(p: int, q: int, n: int) -> List[PolyVectorField]:
    """
    The six families P^ab, P_mu^a, G^mu_nu, D^a_b, K^mu_a, K_ab on coordinates x^mu_a and the
    antisymmetric x_ab = -x_ba, stored as y_ab for a < b with d^ab = (1/2) d/dy_ab.
    Coordinates x^mu_a have weight 1 and y_ab weight 2.
    """
    if n < 1:
        raise UsageError(f"number of copies must be at least 1, got {n}")
    eta = signature_metric(p, q)
    d = len(eta)
    names = [f"x{mu}_{a + 1}" for mu in range(d) for a in range(n)]
    pairs = list(combinations(range(n), 2))
    names += [f"y{a + 1}_{b + 1}" for a, b in pairs]
    weights = [1] * (d * n) + [2] * len(pairs)
    space = CoordinateSpace(names, weights, eta, f"R^({p},{q}) x {n}")
    gens = space.gens
    zero = space.zero

    def xi(mu, a):
        return mu * n + a

    def X(mu, a):
        return gens[xi(mu, a)]

    def Xl(mu, a):
        return eta[mu] * gens[xi(mu, a)]

    y_index = {pair: d * n + k for k, pair in enumerate(pairs)}

    def xab(a, b):
        if a == b:
            return zero
        if a < b:
            return gens[y_index[(a, b)]]
        return -gens[y_index[(b, a)]]

    def d_low(mu, a):
        return [(xi(mu, a), ONE)]

    def d_up(mu, a):
        return [(xi(mu, a), rat(eta[mu]))]

    def d_pair(a, b):
        if a == b:
            return []
        if a < b:
            return [(y_index[(a, b)], HALF)]
        return [(y_index[(b, a)], -HALF)]

    fields = []
    for a, b in pairs:
        fields.append(_FieldBuilder(space).add(space.constant(-2), d_pair(a, b)).build(f"P^{a + 1}{b + 1}"))
    for mu in range(d):
        for a in range(n):
            f = _FieldBuilder(space).add(space.constant(1), d_low(mu, a))
            for b in range(n):
                f.add(-2 * Xl(mu, b), d_pair(a, b))
            fields.append(f.build(f"P{mu}^{a + 1}"))
    for mu, nu in combinations(range(d), 2):
        f = _FieldBuilder(space)
        for a in range(n):
            f.add(Xl(nu, a), d_up(mu, a)).add(-X(mu, a), d_low(nu, a))
        fields.append(f.build(f"G{mu}_{nu}"))
    for a in range(n):
        for b in range(n):
            f = _FieldBuilder(space)
            for mu in range(d):
                f.add(X(mu, b), d_low(mu, a))
            for c in range(n):
                f.add(2 * xab(b, c), d_pair(a, c))
            fields.append(f.build(f"D^{a + 1}_{b + 1}"))
    for mu in range(d):
        for a in range(n):
            f = _FieldBuilder(space)
            for b in range(n):
                for nu in range(d):
                    f.add(-2 * X(nu, a) * X(mu, b), d_low(nu, b))
                    f.add(X(nu, a) * Xl(nu, b), d_up(mu, b))
                f.add(-xab(a, b), d_up(mu, b))
                for c in range(n):
                    for nu in range(d):
                        f.add(-2 * X(nu, a) * X(mu, b) * Xl(nu, c), d_pair(b, c))
                    f.add(2 * xab(a, b) * X(mu, c), d_pair(b, c))
            fields.append(f.build(f"K{mu}_{a + 1}"))
    for a, b in pairs:
        f = _FieldBuilder(space)
        for c in range(n):
            for mu in range(d):
                for nu in range(d):
                    f.add(X(mu, a) * X(nu, b) * Xl(mu, c), d_low(nu, c))
                    f.add(-X(mu, b) * X(nu, a) * Xl(mu, c), d_low(nu, c))
                f.add(-xab(a, c) * X(mu, b), d_low(mu, c))
                f.add(xab(b, c) * X(mu, a), d_low(mu, c))
            for e in range(n):
                for mu in range(d):
                    for nu in range(d):
                        f.add(2 * X(mu, a) * X(nu, b) * Xl(mu, c) * Xl(nu, e), d_pair(c, e))
                f.add(-2 * xab(a, c) * xab(b, e), d_pair(c, e))
        fields.append(f.build(f"K_{a + 1}{b + 1}"))
    return fields


def expected_generalized_dims(d: int, n: int) -> List[int]:
    pair = n * (n - 1) // 2
    return [pair, n * d, d * (d - 1) // 2 + n * n, n * d, pair] if n > 1 else [n * d, d * (d - 1) // 2 + 1, n * d]


def conformal_algebra(p: int, q: int) -> StructureLieAlgebra:
    d = p + q
    return field_algebra(conformal_fields(p, q), name=f"conformal({p},{q})", max_dim=(d + 2) * (d + 1) // 2)


def generalized_algebra(p: int, q: int, n: int) -> StructureLieAlgebra:
    m = p + q + 2 * n
    return field_algebra(generalized_fields(p, q, n), name=f"generalized({p},{q},{n})", max_dim=m * (m - 1) // 2)


# Kantor triple systems

class KantorPairSpace:
    """
    The space V + K for a triple system on V, where K is spanned by the operators
    <u, v>: z -> (uzv) - (vzu). Coordinates z_i (weight 1) on V and Z_k (weight 2) on K.
    """

    def __init__(self, t: TripleTensor, name: str = ""):
        self.t = t
        self.dim = t.dim
        self.name = name
        reducer = SpanReducer()
        self.basis_ops: List[Dict[Tuple[int, int], Rational]] = []
        raw = {}
        for u, v in combinations(range(t.dim), 2):
            op = self._pair_matrix(u, v)
            if op:
                raw[(u, v)] = op
                if reducer.add(op) is not None:
                    self.basis_ops.append(op)
        self.pair_coords: Dict[Tuple[int, int], SparseVector] = {}
        for (u, v), op in raw.items():
            coords = reducer.coordinates(op)
            self.pair_coords[(u, v)] = coords
            self.pair_coords[(v, u)] = {k: -c for k, c in coords.items()}
        self.k_dim = len(self.basis_ops)
        names = [f"z{i}" for i in range(self.dim)] + [f"Z{k}" for k in range(self.k_dim)]
        self.space = CoordinateSpace(names, [1] * self.dim + [2] * self.k_dim, description=f"{name} + K")
        self.z = {i: self.space.gens[i] for i in range(self.dim)}
        self.Z = {k: self.space.gens[self.dim + k] for k in range(self.k_dim)}
        logger.debug(f"{name}: pair space K of dim {self.k_dim}")

    def _pair_matrix(self, u: int, v: int) -> Dict[Tuple[int, int], Rational]:
        out: Dict[Tuple[int, int], Rational] = {}
        for z in range(self.dim):
            for l, c in self.t.basis(u, z, v).items():
                out[(l, z)] = out.get((l, z), 0) + c
            for l, c in self.t.basis(v, z, u).items():
                out[(l, z)] = out.get((l, z), 0) - c
        return {key: c for key, c in out.items() if c}

    # polynomial-valued vectors: dict index -> PolyElement

    def triple(self, x, y, w) -> Dict[int, PolyElement]:
        out: Dict[int, PolyElement] = {}
        for i, a in x.items():
            for j, b in y.items():
                ab = a * b
                for k, c in w.items():
                    vec = self.t.entries.get((i, j, k))
                    if vec:
                        abc = ab * c
                        for l, coeff in vec.items():
                            out[l] = out.get(l, self.space.zero) + abc * coeff
        return {l: p for l, p in out.items() if p}

    def pair(self, x, y) -> Dict[int, PolyElement]:
        """<x, y> in K coordinates."""
        out: Dict[int, PolyElement] = {}
        for u, a in x.items():
            for v, b in y.items():
                coords = self.pair_coords.get((u, v))
                if coords:
                    ab = a * b
                    for k, c in coords.items():
                        out[k] = out.get(k, self.space.zero) + ab * c
        return {k: p for k, p in out.items() if p}

    def apply_k(self, kvec, x) -> Dict[int, PolyElement]:
        """(sum_k kvec_k B_k)(x) for the K basis operators B_k."""
        out: Dict[int, PolyElement] = {}
        for k, a in kvec.items():
            for (l, col), c in self.basis_ops[k].items():
                b = x.get(col)
                if b:
                    out[l] = out.get(l, self.space.zero) + a * b * c
        return {l: p for l, p in out.items() if p}

    def pair_apply(self, u: int, v: int, x) -> Dict[int, PolyElement]:
        """<u, v>(x) = (u x v) - (v x u)"""
        one = self.space.constant(1)
        first = self.triple({u: one}, x, {v: one})
        for l, p in self.triple({v: one}, x, {u: one}).items():
            first[l] = first.get(l, self.space.zero) - p
        return {l: p for l, p in first.items() if p}

    def field(self, z_part, k_part, label: str) -> PolyVectorField:
        comps = {i: p for i, p in z_part.items()}
        for k, p in k_part.items():
            comps[self.dim + k] = p
        return PolyVectorField(self.space, comps, label)

    def Z_vector(self) -> Dict[int, PolyElement]:
        return dict(self.Z)

    def z_vector(self) -> Dict[int, PolyElement]:
        return dict(self.z)


def _scaled(vec, c) -> Dict[int, PolyElement]:
    return {i: p * c for i, p in vec.items()}


def _sum(*vecs) -> Dict[int, PolyElement]:
    out: Dict[int, PolyElement] = {}
    for vec in vecs:
        for i, p in vec.items():
            out[i] = out[i] + p if i in out else p
    return {i: p for i, p in out.items() if p}


def kantor_fields(ks: KantorPairSpace) -> Tuple[List[PolyVectorField], Dict[str, Tuple[Rational, str]]]:
    """
    The operators on V + K, one family per degree:

        g_-2  <u, v>:      z + Z -> <u, v>
        g_-1  u:           z + Z -> u + 1/2 <u, z>
        g_0   [u, tau v]:  z + Z -> (uvz) - <u, Z(v)>
        g_1   tau u:       z + Z -> -1/2 (zuz) - Z(u) + 1/12 <(zuz), z> - 1/2 <Z(u), z>
        g_2   [tau u, tau v]: z + Z -> -1/6 (z <u,v>(z) z) - Z(<u,v>(z))
                                       + 1/24 <(z <u,v>(z) z), z> + <Z(u), Z(v)>

    :return: fields and the involution on their labels, label -> (sign, image label).
    """
    N = ks.dim
    one = ks.space.constant(1)
    z = ks.z_vector()
    Z = ks.Z_vector()
    fields: List[PolyVectorField] = []
    tau: Dict[str, Tuple[Rational, str]] = {}

    def e(u):
        return {u: one}

    nonzero_pairs = [(u, v) for u, v in combinations(range(N), 2) if ks.pair_coords.get((u, v))]
    for u, v in nonzero_pairs:
        k_part = {k: one * c for k, c in ks.pair_coords[(u, v)].items()}
        fields.append(ks.field({}, k_part, f"<{u},{v}>"))
        tau[f"<{u},{v}>"] = (ONE, f"[t{u},t{v}]")
    for u in range(N):
        fields.append(ks.field(e(u), _scaled(ks.pair(e(u), z), HALF), f"u{u}"))
        tau[f"u{u}"] = (ONE, f"t{u}")
    for u in range(N):
        for v in range(N):
            z_part = ks.triple(e(u), e(v), z)
            k_part = _scaled(ks.pair(e(u), ks.apply_k(Z, e(v))), -ONE)
            fields.append(ks.field(z_part, k_part, f"[u{u},t{v}]"))
            tau[f"[u{u},t{v}]"] = (-ONE, f"[u{v},t{u}]")
    for u in range(N):
        zuz = ks.triple(z, e(u), z)
        Zu = ks.apply_k(Z, e(u))
        z_part = _sum(_scaled(zuz, -HALF), _scaled(Zu, -ONE))
        k_part = _sum(_scaled(ks.pair(zuz, z), rat(1, 12)), _scaled(ks.pair(Zu, z), -HALF))
        fields.append(ks.field(z_part, k_part, f"t{u}"))
        tau[f"t{u}"] = (ONE, f"u{u}")
    for u, v in nonzero_pairs:
        uvz = ks.pair_apply(u, v, z)
        cubic = ks.triple(z, uvz, z)
        z_part = _sum(_scaled(cubic, rat(-1, 6)), _scaled(ks.apply_k(Z, uvz), -ONE))
        k_part = _sum(_scaled(ks.pair(cubic, z), rat(1, 24)),
                      ks.pair(ks.apply_k(Z, e(u)), ks.apply_k(Z, e(v))))
        fields.append(ks.field(z_part, k_part, f"[t{u},t{v}]"))
        tau[f"[t{u},t{v}]"] = (ONE, f"<{u},{v}>")
    return fields, tau


def kantor_operators(t: TripleTensor, name: str = "kantor", max_dim: Optional[int] = None) -> StructureLieAlgebra:
    """
    Graded Lie algebra spanned by the Kantor operators of a triple system.

    :param t: the triple system; a Jordan triple system gives K = 0 and a 3-graded algebra.
    :param max_dim: optional closure ceiling.
    :return: algebra graded by degree -2..2 with the involution u <-> tau(u) attached.
    :raises ClosureError: a bracket leaves degrees -2..2 ("not second order") or exceeds max_dim.
    """
    ks = KantorPairSpace(t, name)
    fields, tau = kantor_fields(ks)
    L = field_algebra(fields, name=name, max_dim=max_dim, max_degree=2, involution=tau)
    L.pair_space = ks
    return L
