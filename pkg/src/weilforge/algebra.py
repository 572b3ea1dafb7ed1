"""Weil algebras given by structure constants over the rationals.

Every algebra built here uses an *adapted* basis: ``e_0`` is the unit and
``e_1 .. e_{d-1}`` span the maximal ideal. The augmentation (the unique
morphism to the ground field) is therefore just the first coordinate.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import List, Optional, Sequence, Tuple

from . import linalg as la
from .errors import (
    AlgebraMismatch,
    AlgebraTooLarge,
    ElementNotInMaximal,
    GeneratorNotNilpotent,
    ImproperIdeal,
    InvalidAlgebra,
    NoUnit,
    NotAssociative,
    NotCommutative,
    NotLocal,
)
from .linalg import ONE, ZERO, Vector
from .polys import Polynomial, monomial_label, monomials

MAX_DIM = 5000


@dataclass(frozen=True, eq=False)
class WeilAlgebra:
    labels: Tuple[str, ...]
    table: Tuple[Tuple[Vector, ...], ...]  # table[i][j] = coordinates of e_i * e_j
    generators: Tuple[Vector, ...]  # distinguished generating set inside m_A
    generator_names: Tuple[str, ...]
    truncation: Optional[Tuple[int, int]] = field(default=None)  # (width, height) for R^l_m

    def __post_init__(self):
        d = len(self.labels)
        if d == 0:
            raise InvalidAlgebra("an algebra needs at least the unit")
        if d > MAX_DIM:
            raise AlgebraTooLarge(f"dimension {d} exceeds the cap of {MAX_DIM}")
        if len(self.table) != d or any(len(row) != d for row in self.table):
            raise InvalidAlgebra("structure table must be dim x dim")
        if len(self.generators) != len(self.generator_names):
            raise InvalidAlgebra("one name per generator")

    # -- basic data -------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def maximal_basis(self) -> Tuple[int, ...]:
        return tuple(range(1, self.dim))

    @cached_property
    def _sparse(self) -> List[List[Tuple[Tuple[int, Fraction], ...]]]:
        return [[tuple((k, c) for k, c in enumerate(v) if c) for v in row] for row in self.table]

    def structure_constants(self) -> List[List[List[Fraction]]]:
        return [[list(v) for v in row] for row in self.table]

    def mul(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
        out = [ZERO] * self.dim
        vn = [(j, b) for j, b in enumerate(v) if b]
        sp = self._sparse
        for i, a in enumerate(u):
            if not a:
                continue
            row = sp[i]
            for j, b in vn:
                ab = a * b
                for k, c in row[j]:
                    out[k] += ab * c
        return tuple(out)

    def mul_basis(self, i: int, v: Sequence[Fraction]) -> Vector:
        out = [ZERO] * self.dim
        row = self._sparse[i]
        for j, b in enumerate(v):
            if b:
                for k, c in row[j]:
                    out[k] += b * c
        return tuple(out)

    # -- elements -----------------------------------------------------------

    def element(self, coords) -> "AlgebraElement":
        coords = tuple(la.to_fraction(c) for c in coords)
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        return AlgebraElement(self, coords)

    def basis_element(self, i: int) -> "AlgebraElement":
        return AlgebraElement(self, la.unit_vector(self.dim, i))

    def basis(self) -> List["AlgebraElement"]:
        return [self.basis_element(i) for i in range(self.dim)]

    @property
    def one(self) -> "AlgebraElement":
        return self.basis_element(0)

    @property
    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, la.zero_vector(self.dim))

    def scalar(self, c) -> "AlgebraElement":
        return la.to_fraction(c) * self.one

    def generator(self, name_or_index) -> "AlgebraElement":
        if isinstance(name_or_index, str):
            name_or_index = self.generator_names.index(name_or_index)
        return AlgebraElement(self, self.generators[name_or_index])

    def generator_elements(self) -> List["AlgebraElement"]:
        return [AlgebraElement(self, g) for g in self.generators]

    def evaluate_polynomial(self, poly: Polynomial) -> "AlgebraElement":
        """Value of a polynomial in the distinguished generators."""
        if poly.nvars != len(self.generators):
            raise ValueError("polynomial arity differs from the number of generators")
        return poly.evaluate(self.generator_elements(), self.one)

    # -- invariants -----------------------------------------------------------

    @cached_property
    def filtration(self) -> Tuple[Tuple[Vector, ...], ...]:
        """Echelon bases of m, m^2, ..., ending with the first zero power."""
        d = self.dim
        m1 = tuple(la.unit_vector(d, i) for i in range(1, d))
        powers = [m1]
        while powers[-1]:
            prev = powers[-1]
            prods = (self.mul(x, y) for x in prev for y in m1)
            powers.append(tuple(la.column_space_basis(prods, d)))
        return tuple(powers)

    def maximal_power_basis(self, k: int) -> Tuple[Vector, ...]:
        if k <= 0:
            return tuple(la.unit_vector(self.dim, i) for i in range(self.dim))
        f = self.filtration
        return f[k - 1] if k - 1 < len(f) else ()

    @property
    def height(self) -> int:
        return len(self.filtration) - 1

    @cached_property
    def width(self) -> int:
        f = self.filtration
        m2 = len(f[1]) if len(f) > 1 else 0
        return len(f[0]) - m2

    @cached_property
    def content_hash(self) -> str:
        payload = json.dumps(
            {
                "labels": list(self.labels),
                "table": [[[la.fraction_str(c) for c in v] for v in row] for row in self.table],
            },
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode()).hexdigest()

    def __eq__(self, other):
        if not isinstance(other, WeilAlgebra):
            return NotImplemented
        return self is other or (self.labels == other.labels and self.table == other.table)

    def __hash__(self):
        return hash(self.content_hash)

    def __repr__(self):
        if self.truncation:
            m, l = self.truncation
            return f"WeilAlgebra(R^{l}_{m}, dim={self.dim})"
        return f"WeilAlgebra(dim={self.dim}, height={self.height}, width={self.width})"

    def in_maximal(self, v: Sequence[Fraction]) -> bool:
        return v[0] == 0

    # -- monomial presentation ----------------------------------------------

    @cached_property
    def presentation(self) -> Tuple[Tuple[Tuple[int, ...], ...], Tuple[Vector, ...]]:
        """Generator monomials forming a basis, and the inverse change of basis.

        Returns ``(exponents, inv)`` where ``inv`` converts algebra coordinates
        into coordinates over the chosen monomials.
        """
        gens = self.generator_elements()
        r = len(gens)
        elim = la.Eliminator(self.dim)
        chosen: List[Tuple[int, ...]] = []
        cols: List[Vector] = []
        for exp in monomials(r, self.height):
            val = self.one
            for g, k in zip(gens, exp):
                for _ in range(k):
                    val = val * g
            if elim.add(val.coords):
                chosen.append(exp)
                cols.append(val.coords)
                if len(chosen) == self.dim:
                    break
        if len(chosen) != self.dim:
            raise InvalidAlgebra("distinguished generators do not generate the algebra")
        inv = la.inverse(la.transpose(cols))
        return tuple(chosen), tuple(inv)

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "dim": self.dim,
            "structure_constants": [
                [[la.fraction_str(c) for c in v] for v in row] for row in self.table
            ],
            "maximal_basis": list(self.maximal_basis),
            "generators": list(self.generator_names),
            "hash": self.content_hash,
        }


class AlgebraElement:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: WeilAlgebra, coords: Vector):
        self.algebra = algebra
        self.coords = coords

    def _check(self, other: "AlgebraElement"):
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraMismatch("elements of different algebras")

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.algebra.scalar(other)
        self._check(other)
        return AlgebraElement(self.algebra, la.add(self.coords, other.coords))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.algebra.scalar(other)
        self._check(other)
        return AlgebraElement(self.algebra, la.sub(self.coords, other.coords))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return AlgebraElement(self.algebra, tuple(-c for c in self.coords))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return AlgebraElement(self.algebra, self.algebra.mul(self.coords, other.coords))
        c = la.to_fraction(other)
        return AlgebraElement(self.algebra, la.scale(c, self.coords))

    def __rmul__(self, other):
        return AlgebraElement(self.algebra, la.scale(la.to_fraction(other), self.coords))

    def __pow__(self, k: int):
        out = self.algebra.one
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            if isinstance(other, (int, Fraction)):
                return self == self.algebra.scalar(other)
            return NotImplemented
        return self.algebra == other.algebra and self.coords == other.coords

    def __hash__(self):
        return hash((self.algebra.content_hash, self.coords))

    def is_zero(self) -> bool:
        return la.is_zero(self.coords)

    @property
    def augmentation(self) -> Fraction:
        return self.coords[0]

    def in_maximal(self) -> bool:
        return self.coords[0] == 0

    def is_nilpotent(self) -> bool:
        return (self ** (self.algebra.height + 1)).is_zero() if self.in_maximal() else False

    def __str__(self):
        terms = []
        for lab, c in zip(self.algebra.labels, self.coords):
            if not c:
                continue
            a = abs(c)
            if lab == "1":
                body = la.fraction_str(a)
            elif a == 1:
                body = lab
            else:
                body = f"{la.fraction_str(a)}*{lab}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"<{self}>"


@dataclass(frozen=True, eq=False)
class AlgebraMorphism:
    source: WeilAlgebra
    target: WeilAlgebra
    matrix: Tuple[Vector, ...]  # target.dim rows, source.dim columns

    def __post_init__(self):
        if len(self.matrix) != self.target.dim or any(len(r) != self.source.dim for r in self.matrix):
            raise ValueError("morphism matrix has the wrong shape")

    def apply_vector(self, v: Sequence[Fraction]) -> Vector:
        return la.mat_vec(self.matrix, v)

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        if x.algebra != self.source:
            raise AlgebraMismatch("element is not in the source algebra")
        return AlgebraElement(self.target, self.apply_vector(x.coords))

    def compose(self, inner: "AlgebraMorphism") -> "AlgebraMorphism":
        """self o inner."""
        if inner.target != self.source:
            raise AlgebraMismatch("cannot compose: target/source differ")
        return AlgebraMorphism(inner.source, self.target, tuple(la.mat_mul(self.matrix, inner.matrix)))

    @cached_property
    def rank(self) -> int:
        return la.rank(self.matrix, self.source.dim)

    def is_surjective(self) -> bool:
        return self.rank == self.target.dim

    def preserves_unit(self) -> bool:
        return self.apply_vector(self.source.one.coords) == self.target.one.coords

    def is_multiplicative(self) -> bool:
        A, B = self.source, self.target
        cols = la.transpose(self.matrix) if self.matrix else [la.zero_vector(0)] * A.dim
        for i in range(A.dim):
            for j in range(i, A.dim):
                lhs = self.apply_vector(A.table[i][j])
                if lhs != B.mul(cols[i], cols[j]):
                    return False
        return True

    def is_morphism(self) -> bool:
        return self.preserves_unit() and self.is_multiplicative()


class QuotientMap(AlgebraMorphism):
    """Projection A -> A/I remembering the complement used as basis of A/I."""

    def __init__(self, source, target, matrix, ideal, complement, reducer):
        super().__init__(source, target, matrix)
        object.__setattr__(self, "ideal", ideal)
        object.__setattr__(self, "complement", tuple(complement))
        object.__setattr__(self, "_reducer", reducer)

    def lift_vector(self, b: Sequence[Fraction]) -> Vector:
        """Section B -> A through the complement basis (linear, not multiplicative)."""
        v = [ZERO] * self.source.dim
        for s, c in zip(self.complement, b):
            v[s] = c
        return tuple(v)

    def lift(self, b: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(self.source, self.lift_vector(b.coords))

    def reduce_vector(self, v: Sequence[Fraction]) -> Vector:
        """Normal form of v modulo the ideal, still in A coordinates."""
        return self._reducer(v)


# ---------------------------------------------------------------------------
# constructors


def _check_dim(d: int):
    if d > MAX_DIM:
        raise AlgebraTooLarge(f"dimension {d} exceeds the cap of {MAX_DIM}")


def truncated_algebra(m: int, l: int) -> WeilAlgebra:
    """R^l_m: polynomials in m variables truncated above degree l."""
    if m < 0 or l < 0:
        raise ValueError("width and height must be non-negative")
    _check_dim(comb(m + l, m))
    exps = monomials(m, l)
    index = {e: i for i, e in enumerate(exps)}
    d = len(exps)
    names = ("xi",) if m == 1 else tuple(f"xi{i + 1}" for i in range(m))
    table = []
    for e1 in exps:
        row = []
        for e2 in exps:
            e = tuple(a + b for a, b in zip(e1, e2))
            row.append(la.unit_vector(d, index[e]) if e in index else la.zero_vector(d))
        table.append(tuple(row))
    labels = tuple(monomial_label(e, names) for e in exps)
    gens = tuple(la.unit_vector(d, index[e]) for e in exps if sum(e) == 1) if l >= 1 else ()
    gen_names = names if l >= 1 else ()
    return WeilAlgebra(labels, tuple(table), gens, gen_names, truncation=(m, l) if m and l else None)


def ground_field() -> WeilAlgebra:
    return truncated_algebra(0, 0)


def _mul_table(table, u, v, d):
    out = [ZERO] * d
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                if b:
                    for k, c in enumerate(table[i][j]):
                        if c:
                            out[k] += a * b * c
    return tuple(out)


def algebra_from_table(labels, structure_constants, generator_names=None) -> WeilAlgebra:
    """Validate a user-supplied multiplication table.

    Index 0 must be the unit. The maximal ideal is computed as the nilradical,
    which over a field of characteristic zero is the radical of the trace form
    (a, b) -> tr(L_{ab}); the algebra is local with residue field Q exactly
    when that radical is a hyperplane. If some basis vectors are not
    nilpotent, the basis is shifted by multiples of the unit so that the
    returned algebra is adapted.
    """
    labels = tuple(str(s) for s in labels)
    d = len(labels)
    _check_dim(d)
    if len(structure_constants) != d or any(len(r) != d for r in structure_constants):
        raise InvalidAlgebra("structure constants must have shape dim x dim x dim")
    table = []
    for row in structure_constants:
        if any(len(v) != d for v in row):
            raise InvalidAlgebra("structure constants must have shape dim x dim x dim")
        table.append(tuple(tuple(la.to_fraction(c) for c in v) for v in row))
    table = tuple(table)

    for j in range(d):
        e_j = la.unit_vector(d, j)
        if table[0][j] != e_j or table[j][0] != e_j:
            raise NoUnit(f"basis element 0 ({labels[0]}) does not act as the unit on {labels[j]}")
    for i in range(d):
        for j in range(i + 1, d):
            if table[i][j] != table[j][i]:
                raise NotCommutative(f"{labels[i]}*{labels[j]} != {labels[j]}*{labels[i]}")
    for i in range(d):
        for j in range(d):
            for k in range(d):
                lhs = _mul_table(table, table[i][j], la.unit_vector(d, k), d)
                rhs = _mul_table(table, la.unit_vector(d, i), table[j][k], d)
                if lhs != rhs:
                    raise NotAssociative(f"({labels[i]}*{labels[j]})*{labels[k]} != {labels[i]}*({labels[j]}*{labels[k]})")

    traces = [sum((table[k][s][s] for s in range(d)), ZERO) for k in range(d)]
    gram = [[sum((table[i][j][k] * traces[k] for k in range(d)), ZERO) for j in range(d)] for i in range(d)]
    nil = la.nullspace(gram, d)
    if len(nil) != d - 1:
        raise NotLocal(
            f"the quotient by the nilradical has dimension {d - len(nil)}; "
            "a Weil algebra needs residue field Q"
        )
    for v in nil:
        p = v
        for _ in range(d):
            p = _mul_table(table, p, v, d)
        if not la.is_zero(p):
            raise NotLocal("trace-form radical contains a non-nilpotent element")

    eps = [traces[i] / d for i in range(d)]
    if any(eps[1:]):
        # rebase: e_i' = e_i - eps_i * 1, so the new basis is adapted
        change = [la.unit_vector(d, 0)] + [
            tuple((-eps[i] if k == 0 else (ONE if k == i else ZERO)) for k in range(d)) for i in range(1, d)
        ]
        inv = la.inverse(la.transpose(change))
        new_table = []
        for i in range(d):
            row = []
            for j in range(d):
                prod = _mul_table(table, change[i], change[j], d)
                row.append(la.mat_vec(inv, prod))
            new_table.append(tuple(row))
        table = tuple(new_table)
        labels = tuple(
            lab if (i == 0 or not eps[i]) else f"({lab} - {la.fraction_str(eps[i])})"
            for i, lab in enumerate(labels)
        )

    proto = WeilAlgebra(labels, table, (), ())
    m2 = proto.filtration[1] if len(proto.filtration) > 1 else ()
    elim = la.Eliminator(d)
    for v in m2:
        elim.add(v)
    gens, names = [], []
    for i in range(1, d):
        e = la.unit_vector(d, i)
        if elim.add(e):
            gens.append(e)
            names.append(labels[i])
    if generator_names is not None:
        if len(generator_names) != len(gens):
            raise InvalidAlgebra(f"expected {len(gens)} generator names")
        names = list(generator_names)
    return WeilAlgebra(labels, table, tuple(gens), tuple(names))


def _minimal_generators(B: WeilAlgebra, candidates: Sequence[Vector], names: Sequence[str]):
    """Keep the candidates whose classes are independent in m_B / m_B^2."""
    elim = la.Eliminator(B.dim)
    f = B.filtration
    for v in (f[1] if len(f) > 1 else ()):
        elim.add(v)
    gens, kept = [], []
    for v, n in zip(candidates, names):
        if elim.add(v):
            gens.append(v)
            kept.append(n)
    return tuple(gens), tuple(kept)


def quotient_algebra(A: WeilAlgebra, ideal) -> Tuple[WeilAlgebra, QuotientMap]:
    """B = A/I with the projection. The basis of B is the set of classes of
    the basis vectors of A that are not leading terms of I."""
    if ideal.algebra != A:
        raise AlgebraMismatch("ideal belongs to another algebra")
    rows = ideal.basis
    pivots = {}
    for r in rows:
        p = max(i for i, c in enumerate(r) if c)
        pivots[p] = r
    if 0 in pivots:
        raise ImproperIdeal("the ideal contains the unit")
    complement = [j for j in range(A.dim) if j not in pivots]

    def reduce(v):
        v = list(v)
        for p, r in pivots.items():
            c = v[p]
            if c:
                for j, a in enumerate(r):
                    if a:
                        v[j] -= c * a
        return tuple(v)

    def coords(v):
        w = reduce(v)
        return tuple(w[j] for j in complement)

    db = len(complement)
    table = tuple(
        tuple(coords(A.table[s][t]) for t in complement) for s in complement
    )
    labels = tuple(A.labels[j] for j in complement)
    proto = WeilAlgebra(labels, table, (), ())
    gens, names = _minimal_generators(proto, [coords(g) for g in A.generators], A.generator_names)
    trunc = None
    if A.truncation is not None:
        m, l = A.truncation
        for k in range(0, l + 1):
            if tuple(A.maximal_power_basis(k + 1)) == tuple(rows):
                trunc = (m, k) if k else None
                break
    B = WeilAlgebra(labels, table, gens, names, truncation=trunc)
    matrix = la.transpose([coords(la.unit_vector(A.dim, i)) for i in range(A.dim)], db)
    return B, QuotientMap(A, B, tuple(matrix), ideal, complement, reduce)


def subalgebra_generated(A: WeilAlgebra, gens: Sequence[AlgebraElement]) -> Tuple[WeilAlgebra, AlgebraMorphism]:
    """S = R[gens] as a Weil algebra together with the inclusion S -> A."""
    for g in gens:
        if g.algebra != A:
            raise AlgebraMismatch("generator from another algebra")
        if not g.in_maximal():
            raise GeneratorNotNilpotent(f"{g} is not in the maximal ideal")
    r = len(gens)
    names = ("s",) if r == 1 else tuple(f"s{i + 1}" for i in range(r))
    elim = la.Eliminator(A.dim)
    exps, vecs = [], []
    for exp in monomials(r, A.height):
        val = A.one
        for g, k in zip(gens, exp):
            for _ in range(k):
                val = val * g
        if elim.add(val.coords):
            exps.append(exp)
            vecs.append(val.coords)
    # coordinates over vecs: solve with the matrix whose columns are vecs
    cols = la.transpose(vecs)

    def coords(v):
        x = la.solve(cols, v)
        if x is None:
            raise InvalidAlgebra("subalgebra closure failed")  # cannot happen: span is multiplicatively closed
        return x

    table = tuple(tuple(coords(A.mul(u, v)) for v in vecs) for u in vecs)
    labels = tuple(monomial_label(e, names) for e in exps)
    proto = WeilAlgebra(labels, table, (), ())
    S_gens, S_names = _minimal_generators(proto, [coords(g.coords) for g in gens], names)
    S = WeilAlgebra(labels, table, S_gens, S_names)
    inclusion = AlgebraMorphism(S, A, tuple(la.transpose(vecs, A.dim)))
    return S, inclusion


def height_width(A: WeilAlgebra) -> Tuple[int, int]:
    return A.height, A.width


def is_generating_set(A: WeilAlgebra, elems: Sequence[AlgebraElement]) -> bool:
    """True iff the classes of elems span m_A / m_A^2 (hence generate A)."""
    for x in elems:
        if x.algebra != A:
            raise AlgebraMismatch("element from another algebra")
        if not x.in_maximal():
            raise ElementNotInMaximal(f"{x} is not in the maximal ideal")
    f = A.filtration
    m2 = f[1] if len(f) > 1 else ()
    elim = la.Eliminator(A.dim)
    for v in m2:
        elim.add(v)
    for x in elems:
        elim.add(x.coords)
    return elim.rank - len(m2) == A.width


def augmentation(A: WeilAlgebra) -> AlgebraMorphism:
    """The unique morphism A -> R."""
    R = ground_field()
    return AlgebraMorphism(A, R, (la.unit_vector(A.dim, 0),))


def tensor_product(A: WeilAlgebra, B: WeilAlgebra) -> WeilAlgebra:
    """A (x) B with basis e_i (x) f_j ordered i-major."""
    dA, dB = A.dim, B.dim
    _check_dim(dA * dB)
    d = dA * dB

    def label(i, j):
        a, b = A.labels[i], B.labels[j]
        if b == "1":
            return a
        if a == "1":
            return b
        return f"{a}*{b}"

    table = []
    for i in range(dA):
        for j in range(dB):
            row = []
            for i2 in range(dA):
                for j2 in range(dB):
                    v = [ZERO] * d
                    for k, a in A._sparse[i][i2]:
                        for k2, b in B._sparse[j][j2]:
                            v[k * dB + k2] += a * b
                    row.append(tuple(v))
            table.append(tuple(row))
    names_b = [n if n not in A.generator_names else n + "'" for n in B.generator_names]
    gens = []
    for g in A.generators:
        v = [ZERO] * d
        for k, c in enumerate(g):
            v[k * dB] = c
        gens.append(tuple(v))
    for h in B.generators:
        v = [ZERO] * d
        for k, c in enumerate(h):
            v[k] = c
        gens.append(tuple(v))
    labels = tuple(label(i, j) for i in range(dA) for j in range(dB))
    return WeilAlgebra(labels, tuple(table), tuple(gens), tuple(A.generator_names) + tuple(names_b))


def tensor_morphism(phi: AlgebraMorphism, B: WeilAlgebra) -> AlgebraMorphism:
    """phi (x) id_B : A (x) B -> A' (x) B."""
    dA, dT, dB = phi.source.dim, phi.target.dim, B.dim
    rows = []
    for k in range(dT):
        for j in range(dB):
            row = [ZERO] * (dA * dB)
            for i in range(dA):
                c = phi.matrix[k][i]
                if c:
                    row[i * dB + j] = c
            rows.append(tuple(row))
    return AlgebraMorphism(tensor_product(phi.source, B), tensor_product(phi.target, B), tuple(rows))


def algebra_from_json(doc: dict) -> WeilAlgebra:
    A = algebra_from_table(doc["labels"], doc["structure_constants"], doc.get("generators"))
    if "dim" in doc and doc["dim"] != A.dim:
        raise InvalidAlgebra("declared dim does not match the table")
    return A


def identity_morphism(A: WeilAlgebra) -> AlgebraMorphism:
    return AlgebraMorphism(A, A, tuple(la.identity(A.dim)))
