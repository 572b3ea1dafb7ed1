"""Ideals of Weil algebras as canonical echelon subspaces."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

from . import linalg as la
from .algebra import AlgebraElement, WeilAlgebra
from .errors import AlgebraMismatch
from .linalg import Vector


@dataclass(frozen=True, eq=False)
class Ideal:
    """An ideal given by its reduced echelon basis.

    Pivots sit on the highest nonzero coordinate of each basis vector, so
    the non-pivot basis indices are the "standard monomials" used as the
    basis of the quotient algebra.
    """

    algebra: WeilAlgebra
    basis: Tuple[Vector, ...]

    @classmethod
    def from_vectors(cls, A: WeilAlgebra, vectors: Iterable[Sequence[Fraction]], close: bool = True) -> "Ideal":
        elim = la.Eliminator(A.dim, pivot_order="last")
        queue = [tuple(v) for v in vectors]
        for v in queue:
            if len(v) != A.dim:
                raise ValueError("vector has the wrong length")
        while queue:
            v = queue.pop()
            if elim.add(v) and close:
                queue.extend(A.mul_basis(i, v) for i in range(1, A.dim))
        return cls(A, tuple(elim.rref_dense()))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def _pivots(self) -> Tuple[int, ...]:
        return tuple(max(i for i, c in enumerate(v) if c) for v in self.basis)

    @cached_property
    def _elim(self) -> la.Eliminator:
        e = la.Eliminator(self.algebra.dim, pivot_order="last")
        for v in self.basis:
            e.add(v)
        return e

    def contains(self, x) -> bool:
        v = x.coords if isinstance(x, AlgebraElement) else x
        return self._elim.contains(v)

    __contains__ = contains

    def coordinates(self, x) -> Vector:
        """Coordinates of x over ``basis``; x must lie in the ideal."""
        v = x.coords if isinstance(x, AlgebraElement) else x
        if not self.contains(v):
            raise ValueError("element is not in the ideal")
        return tuple(v[p] for p in self._pivots)

    def issubset(self, other: "Ideal") -> bool:
        _same(self, other)
        return all(other.contains(v) for v in self.basis)

    __le__ = issubset

    def elements(self) -> List[AlgebraElement]:
        return [AlgebraElement(self.algebra, v) for v in self.basis]

    def is_zero(self) -> bool:
        return not self.basis

    def is_whole(self) -> bool:
        return self.dim == self.algebra.dim

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.algebra == other.algebra and self.basis == other.basis

    def __hash__(self):
        return hash((self.algebra.content_hash, self.basis))

    def __repr__(self):
        gens = ", ".join(str(e) for e in self.elements())
        return f"Ideal({gens or '0'})"

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.content_hash,
            "basis": [[la.fraction_str(c) for c in v] for v in self.basis],
        }


def _same(I: Ideal, J: Ideal):
    if I.algebra != J.algebra:
        raise AlgebraMismatch("ideals of different algebras")


def zero_ideal(A: WeilAlgebra) -> Ideal:
    return Ideal(A, ())


def whole_ideal(A: WeilAlgebra) -> Ideal:
    return maximal_power(A, 0)


def ideal_span(A: WeilAlgebra, gens: Sequence) -> Ideal:
    """Smallest ideal containing gens (elements or coordinate vectors)."""
    vecs = []
    for g in gens:
        if isinstance(g, AlgebraElement):
            if g.algebra != A:
                raise AlgebraMismatch("generator from another algebra")
            vecs.append(g.coords)
        else:
            vecs.append(tuple(la.to_fraction(c) for c in g))
    return Ideal.from_vectors(A, vecs)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _same(I, J)
    A = I.algebra
    # span{xy} is already an ideal: a(xy) = (ax)y with ax in I
    return Ideal.from_vectors(A, (A.mul(x, y) for x in I.basis for y in J.basis), close=False)


def square(I: Ideal) -> Ideal:
    return ideal_product(I, I)


def ideal_power(I: Ideal, k: int) -> Ideal:
    if k < 0:
        raise ValueError("negative power")
    out = whole_ideal(I.algebra)
    for _ in range(k):
        out = ideal_product(out, I)
    return out


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same(I, J)
    return Ideal.from_vectors(I.algebra, I.basis + J.basis, close=False)


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    _same(I, J)
    d = I.algebra.dim
    # solve sum a_i x_i = sum b_j y_j
    cols = list(I.basis) + [la.scale(Fraction(-1), y) for y in J.basis]
    rows = la.transpose(cols, d) if cols else []
    sols = la.nullspace(rows, len(cols)) if cols else []
    vecs = []
    for s in sols:
        v = la.zero_vector(d)
        for a, x in zip(s[: I.dim], I.basis):
            if a:
                v = la.add(v, la.scale(a, x))
        vecs.append(v)
    return Ideal.from_vectors(I.algebra, vecs, close=False)


def maximal_power(A: WeilAlgebra, k: int) -> Ideal:
    """m_A^k, with m_A^0 = A."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return Ideal(A, tuple(la.column_space_basis(A.maximal_power_basis(k), A.dim)))


def annihilator(A: WeilAlgebra, I: Ideal) -> Ideal:
    """Ann(I) = {a : a x = 0 for all x in I}."""
    if I.algebra != A:
        raise AlgebraMismatch("ideal belongs to another algebra")
    d = A.dim
    rows = []
    for x in I.basis:
        images = [A.mul_basis(i, x) for i in range(d)]  # column i = e_i * x
        for k in range(d):
            row = tuple(images[i][k] for i in range(d))
            if any(row):
                rows.append(row)
    return Ideal.from_vectors(A, la.nullspace(rows, d), close=False)


def is_null_square(I: Ideal) -> bool:
    return square(I).is_zero()


def null_square_witness(I: Ideal) -> Optional[Tuple[AlgebraElement, AlgebraElement]]:
    """A pair of basis elements of I with nonzero product, or None."""
    A = I.algebra
    for a, x in enumerate(I.basis):
        for y in I.basis[a:]:
            if not la.is_zero(A.mul(x, y)):
                return AlgebraElement(A, x), AlgebraElement(A, y)
    return None


def power_index(A: WeilAlgebra, I: Ideal) -> Optional[int]:
    """k with I = m_A^k, if any (smallest such k)."""
    for k in range(A.height + 2):
        if maximal_power(A, k) == I:
            return k
    return None


def is_infinitesimally_invariant(A: WeilAlgebra, I: Ideal) -> bool:
    """True iff D(I) is contained in I for every derivation D of A.

    Powers of the maximal ideal are invariant under every automorphism and
    are accepted without solving for derivations.
    """
    if power_index(A, I) is not None:
        return True
    from .derivations import derivation_space, ModuleSpec

    space = derivation_space(A, ModuleSpec.whole(A))
    for D in space.basis:
        for x in I.basis:
            if not I.contains(la.mat_vec(D, x)):
                return False
    return True


def invariance_note(A: WeilAlgebra, I: Ideal) -> str:
    if power_index(A, I) is not None:
        return "power of the maximal ideal: invariant under Aut(A)"
    return "invariance checked infinitesimally only (derivations of A)"
