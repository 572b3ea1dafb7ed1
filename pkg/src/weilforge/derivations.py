"""Derivation spaces, the induced map on quotients, and automorphisms.

A derivation is stored as a matrix with one column per basis vector of the
source algebra and one row per basis vector of the coefficient module.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg as la
from .algebra import (
    AlgebraElement,
    AlgebraMorphism,
    QuotientMap,
    WeilAlgebra,
    is_generating_set,
    quotient_algebra,
)
from .errors import (
    AlgebraMismatch,
    ElementNotInMaximal,
    HypothesisViolated,
    IncompatibleModule,
    NotAutomorphism,
    NotInvariant,
    NotInvertible,
    RelationsViolated,
)
from .ideals import Ideal, annihilator, maximal_power, square
from .linalg import ZERO, Vector

Matrix = Tuple[Vector, ...]


@dataclass(frozen=True)
class ModuleSpec:
    """Coefficient module of a derivation space.

    kinds:
      ``whole``               M = A over A
      ``ideal``               M = I over A
      ``quotient``            M = A/J over A
      ``ideal_over_quotient`` M = I over B = A/J, which needs J * I = 0
    """

    kind: str
    algebra: WeilAlgebra
    ideal: Optional[Ideal] = None
    modulus: Optional[Ideal] = None

    @classmethod
    def whole(cls, A):
        return cls("whole", A)

    @classmethod
    def of_ideal(cls, A, I):
        return cls("ideal", A, ideal=I)

    @classmethod
    def of_quotient(cls, A, J):
        return cls("quotient", A, modulus=J)

    @classmethod
    def ideal_over_quotient(cls, A, I, J):
        return cls("ideal_over_quotient", A, ideal=I, modulus=J)

    def validate(self):
        if self.kind not in ("whole", "ideal", "quotient", "ideal_over_quotient"):
            raise IncompatibleModule(f"unknown module kind {self.kind!r}")
        for ideal in (self.ideal, self.modulus):
            if ideal is not None and ideal.algebra != self.algebra:
                raise IncompatibleModule("ideal of another algebra")
        if self.kind in ("ideal", "ideal_over_quotient") and self.ideal is None:
            raise IncompatibleModule("ideal module without an ideal")
        if self.kind in ("quotient", "ideal_over_quotient") and self.modulus is None:
            raise IncompatibleModule("quotient module without a modulus")
        if self.kind == "ideal_over_quotient":
            A = self.algebra
            for j in self.modulus.basis:
                for x in self.ideal.basis:
                    if not la.is_zero(A.mul(j, x)):
                        raise IncompatibleModule("J * I != 0: I is not a module over A/J")

    @cached_property
    def _quotient(self) -> Tuple[WeilAlgebra, QuotientMap]:
        return quotient_algebra(self.algebra, self.modulus)

    @property
    def source(self) -> WeilAlgebra:
        if self.kind == "ideal_over_quotient":
            return self._quotient[0]
        return self.algebra

    @property
    def dim(self) -> int:
        if self.kind == "whole":
            return self.algebra.dim
        if self.kind == "quotient":
            return self._quotient[0].dim
        return self.ideal.dim

    def embed(self, m: Sequence[Fraction]) -> Vector:
        """Module coordinates -> coordinates in A (or in A/J for ``quotient``)."""
        if self.kind in ("whole", "quotient"):
            return tuple(m)
        v = la.zero_vector(self.algebra.dim)
        for c, x in zip(m, self.ideal.basis):
            if c:
                v = la.add(v, la.scale(c, x))
        return v

    def act(self, i: int) -> List[Dict[int, Fraction]]:
        """Action of source basis vector i: entry s is e_i * m_s as a sparse vector."""
        A = self.algebra
        if self.kind == "whole":
            return [la.to_sparse(A.table[i][s]) for s in range(A.dim)]
        if self.kind == "quotient":
            B = self._quotient[0]
            return [la.to_sparse(B.table[i][s]) for s in range(B.dim)]
        I = self.ideal
        if self.kind == "ideal":
            left = la.unit_vector(A.dim, i)
        else:
            left = self._quotient[1].lift_vector(la.unit_vector(self.source.dim, i))
        return [la.to_sparse(I.coordinates(A.mul(left, x))) for x in I.basis]


@dataclass(frozen=True, eq=False)
class DerivationSpace:
    source: WeilAlgebra
    module: ModuleSpec
    basis: Tuple[Matrix, ...]
    free_columns: Tuple[int, ...] = field(repr=False, default=())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def flatten(self, D: Sequence[Sequence[Fraction]]) -> Vector:
        dA, dM = self.source.dim, self.module.dim
        return tuple(D[r][k] for k in range(dA) for r in range(dM))

    def coordinates(self, D) -> Optional[Vector]:
        """Coordinates of D over ``basis`` or None when D is not in the space."""
        flat = self.flatten(D)
        coords = tuple(flat[c] for c in self.free_columns)
        recon = la.zero_vector(len(flat))
        for c, B in zip(coords, self.basis):
            if c:
                recon = la.add(recon, la.scale(c, self.flatten(B)))
        return coords if recon == flat else None

    def contains(self, D) -> bool:
        return self.coordinates(D) is not None

    def embedded(self, D) -> Matrix:
        """D as a linear map into A (ideal kinds) or unchanged."""
        cols = [self.module.embed(col) for col in la.transpose(D, self.module.dim)]
        return tuple(la.transpose(cols, len(cols[0]) if cols else 0)) if cols else ()

    def embedded_basis(self) -> List[Matrix]:
        return [self.embedded(D) for D in self.basis]

    def combination(self, coeffs: Sequence[Fraction]) -> Matrix:
        dA, dM = self.source.dim, self.module.dim
        out = [[ZERO] * dA for _ in range(dM)]
        for c, D in zip(coeffs, self.basis):
            if c:
                for r in range(dM):
                    for k in range(dA):
                        out[r][k] += c * D[r][k]
        return tuple(tuple(r) for r in out)


@lru_cache(maxsize=256)
def derivation_space(A: WeilAlgebra, M: ModuleSpec) -> DerivationSpace:
    """Der(A, M): nullspace of the Leibniz system on all pairs of basis vectors."""
    M.validate()
    if M.source != A:
        raise IncompatibleModule("module is not a module over this algebra")
    dA, dM = A.dim, M.dim
    n = dA * dM
    elim = la.Eliminator(n)
    for r in range(dM):
        elim.add({r: Fraction(1)})  # delta(1) = 0
    acts = [M.act(i) for i in range(dA)]
    sp = A._sparse
    for i in range(1, dA):
        for j in range(i, dA):
            eqs: Dict[int, Dict[int, Fraction]] = {}
            for k, c in sp[i][j]:
                for r in range(dM):
                    eqs.setdefault(r, {})[k * dM + r] = c
            for left, right in ((i, j), (j, i)):
                # subtract e_left * delta(e_right)
                for s, col in enumerate(acts[left]):
                    for r, a in col.items():
                        row = eqs.setdefault(r, {})
                        key = right * dM + s
                        v = row.get(key, ZERO) - a
                        if v:
                            row[key] = v
                        else:
                            row.pop(key, None)
            for row in eqs.values():
                if row:
                    elim.add(row)
    basis = []
    for x in elim.nullspace():
        basis.append(tuple(tuple(x[k * dM + r] for k in range(dA)) for r in range(dM)))
    return DerivationSpace(A, M, tuple(basis), tuple(elim.free_columns()))


def is_derivation(source: WeilAlgebra, M: ModuleSpec, D: Sequence[Sequence[Fraction]]) -> bool:
    """Direct Leibniz check of D on every pair of basis vectors."""
    dA, dM = source.dim, M.dim
    cols = la.transpose(D, dA) if D else [la.zero_vector(dM)] * dA
    acts = [M.act(i) for i in range(dA)]

    def act_on(i, m):
        out = [ZERO] * dM
        for s, c in enumerate(m):
            if c:
                for r, a in acts[i][s].items():
                    out[r] += c * a
        return tuple(out)

    if not la.is_zero(cols[0]):
        return False
    for i in range(dA):
        for j in range(i, dA):
            lhs = la.mat_vec(D, source.table[i][j]) if dM else ()
            rhs = la.add(act_on(i, cols[j]), act_on(j, cols[i]))
            if tuple(lhs) != rhs:
                return False
    return True


def apply_map(D: Sequence[Sequence[Fraction]], x: AlgebraElement, target: WeilAlgebra) -> AlgebraElement:
    return AlgebraElement(target, la.mat_vec(D, x.coords))


def describe_derivation(A: WeilAlgebra, D: Sequence[Sequence[Fraction]]) -> str:
    """Images of the distinguished generators, e.g. ``xi -> xi^2``."""
    parts = []
    for name, g in zip(A.generator_names, A.generators):
        parts.append(f"{name} -> {AlgebraElement(A, la.mat_vec(D, g))}")
    return ", ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# induced map on the quotient


@dataclass(frozen=True, eq=False)
class InducedMap:
    source_space: DerivationSpace  # Der(A, A)
    target_space: DerivationSpace  # Der(B, B)
    quotient: QuotientMap
    matrix: Tuple[Vector, ...]  # dim Der(B,B) x dim Der(A,A)
    rank: int
    kernel: Tuple[Matrix, ...]  # kernel vectors as derivations A -> A

    @property
    def kernel_dim(self) -> int:
        return self.source_space.dim - self.rank

    @property
    def cokernel_dim(self) -> int:
        return self.target_space.dim - self.rank

    @property
    def surjective(self) -> bool:
        return self.cokernel_dim == 0

    def cokernel_witness(self) -> Optional[Matrix]:
        """A derivation of B outside the image, if any."""
        if self.surjective:
            return None
        elim = la.Eliminator(self.target_space.dim)
        for col in la.transpose(self.matrix, self.target_space.dim):
            elim.add(col)
        for i in range(self.target_space.dim):
            if elim.add(la.unit_vector(self.target_space.dim, i)):
                return self.target_space.basis[i]
        return None


def descend(D: Sequence[Sequence[Fraction]], q: QuotientMap) -> Matrix:
    """The derivation of B = A/I induced by D (assumes D(I) in I)."""
    B = q.target
    cols = []
    for s in range(B.dim):
        a = q.lift_vector(la.unit_vector(B.dim, s))
        cols.append(q.apply_vector(la.mat_vec(D, a)))
    return tuple(la.transpose(cols, B.dim))


def preserves(D: Sequence[Sequence[Fraction]], I: Ideal) -> bool:
    return all(I.contains(la.mat_vec(D, x)) for x in I.basis)


def induced_derivation_map(A: WeilAlgebra, I: Ideal) -> InducedMap:
    """psi : Der(A, A) -> Der(A/I, A/I)."""
    der_A = derivation_space(A, ModuleSpec.whole(A))
    for D in der_A.basis:
        if not preserves(D, I):
            raise NotInvariant(f"derivation {describe_derivation(A, D)} does not preserve the ideal")
    B, q = quotient_algebra(A, I)
    der_B = derivation_space(B, ModuleSpec.whole(B))
    cols = []
    for D in der_A.basis:
        c = der_B.coordinates(descend(D, q))
        if c is None:  # descended map is always a derivation
            raise AssertionError("descended map is not a derivation of the quotient")
        cols.append(c)
    matrix = tuple(la.transpose(cols, der_B.dim)) if cols else tuple(() for _ in range(der_B.dim))
    r = la.rank(cols, der_B.dim) if cols else 0
    ker = la.nullspace(matrix, der_A.dim) if der_A.dim else []
    kernel = tuple(der_A.combination(v) for v in ker)
    return InducedMap(der_A, der_B, q, matrix, r, kernel)


# ---------------------------------------------------------------------------
# left exactness


@dataclass(frozen=True)
class DerivationWitness:
    """A derivation A -> A (values in I) that moves the element ``x`` of I."""

    algebra: WeilAlgebra
    derivation: Matrix
    x: AlgebraElement
    value: AlgebraElement

    def verify(self, I: Ideal) -> bool:
        return (
            is_derivation(self.algebra, ModuleSpec.whole(self.algebra), self.derivation)
            and all(I.contains(col) for col in la.transpose(self.derivation, self.algebra.dim))
            and I.contains(self.x)
            and apply_map(self.derivation, self.x, self.algebra) == self.value
            and not self.value.is_zero()
        )

    def describe(self) -> str:
        return f"D: {describe_derivation(self.algebra, self.derivation)}; D({self.x}) = {self.value}"


@dataclass(frozen=True)
class LeftExactness:
    holds: bool
    via: str
    witness: Optional[DerivationWitness] = None
    dim_der_A_I: Optional[int] = None
    dim_der_B_I: Optional[int] = None


FAST_PATH = "fast path: I in Ann(I)^2"
FULL_CHECK = "full check: Der(A,I) = Der(A/I,I)"


def check_self_annihilating(A: WeilAlgebra, I: Ideal):
    ann = annihilator(A, I)
    if not I.issubset(ann):
        from .ideals import null_square_witness

        raise HypothesisViolated("I is not contained in Ann(I)", witness=null_square_witness(I))
    return ann


def left_exactness_test(A: WeilAlgebra, I: Ideal, force_full: bool = False) -> LeftExactness:
    """Does every derivation A -> I vanish on I?"""
    ann = check_self_annihilating(A, I)
    if not force_full and I.issubset(square(ann)):
        return LeftExactness(True, FAST_PATH)
    der_AI = derivation_space(A, ModuleSpec.of_ideal(A, I))
    witness = None
    for D in der_AI.basis:
        DA = der_AI.embedded(D)
        for x in I.basis:
            val = la.mat_vec(DA, x)
            if not la.is_zero(val):
                witness = DerivationWitness(A, DA, AlgebraElement(A, x), AlgebraElement(A, val))
                break
        if witness:
            break
    if I.is_whole():
        dim_BI = None
    else:
        dim_BI = derivation_space(
            quotient_algebra(A, I)[0], ModuleSpec.ideal_over_quotient(A, I, I)
        ).dim
        if (witness is None) != (dim_BI == der_AI.dim):
            raise AssertionError("inconsistent derivation counts")
    return LeftExactness(witness is None, FULL_CHECK, witness, der_AI.dim, dim_BI)


# ---------------------------------------------------------------------------
# automorphisms


@dataclass(frozen=True, eq=False)
class Automorphism:
    algebra: WeilAlgebra
    matrix: Matrix

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(self.algebra, la.mat_vec(self.matrix, x.coords))

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.algebra == other.algebra and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.algebra.content_hash, self.matrix))

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self o other."""
        return Automorphism(self.algebra, tuple(la.mat_mul(self.matrix, other.matrix)))

    def inverse(self) -> "Automorphism":
        inv = la.inverse(self.matrix)
        if inv is None:
            raise NotInvertible("matrix is singular")
        return Automorphism(self.algebra, tuple(inv))

    def as_morphism(self) -> AlgebraMorphism:
        return AlgebraMorphism(self.algebra, self.algebra, self.matrix)

    def is_valid(self) -> bool:
        A = self.algebra
        m = self.as_morphism()
        if not m.is_morphism() or m.rank != A.dim:
            return False
        return all(la.mat_vec(self.matrix, la.unit_vector(A.dim, i))[0] == 0 for i in range(1, A.dim))

    def verify(self) -> "Automorphism":
        if not self.is_valid():
            raise NotAutomorphism("linear map is not an algebra automorphism")
        return self

    def project(self, q: QuotientMap) -> Automorphism:
        """Induced automorphism of B = A/I (needs sigma(I) = I)."""
        I = q.ideal
        if not preserves(self.matrix, I):
            raise NotInvariant("automorphism does not preserve the ideal")
        return Automorphism(q.target, descend(self.matrix, q))


def identity_automorphism(A: WeilAlgebra) -> Automorphism:
    return Automorphism(A, tuple(la.identity(A.dim)))


def automorphism_from_generator_images(A: WeilAlgebra, images: Sequence[AlgebraElement]) -> Automorphism:
    """The automorphism sending the i-th distinguished generator to images[i]."""
    if len(images) != len(A.generators):
        raise ValueError(f"expected {len(A.generators)} images")
    for x in images:
        if x.algebra != A:
            raise AlgebraMismatch("image from another algebra")
        if not x.in_maximal():
            raise ElementNotInMaximal(f"{x} is not in the maximal ideal")
    exps, inv = A.presentation
    cols = []
    for exp in exps:
        val = A.one
        for g, k in zip(images, exp):
            for _ in range(k):
                val = val * g
        cols.append(val.coords)
    Q = la.transpose(cols, A.dim)
    matrix = tuple(la.mat_mul(Q, inv))
    morph = AlgebraMorphism(A, A, matrix)
    if not morph.is_multiplicative():
        raise RelationsViolated("the images do not satisfy the relations among the generators")
    if not is_generating_set(A, images) or morph.rank != A.dim:
        raise NotInvertible("the images do not generate the algebra")
    return Automorphism(A, matrix)


def aut_oplus(sigma: Automorphism, D: Sequence[Sequence[Fraction]], I: Optional[Ideal] = None) -> Automorphism:
    """sigma (+) D = sigma + sigma o D, for D a derivation A -> I."""
    A = sigma.algebra
    if I is not None:
        ann = annihilator(A, I)
        if not (I.issubset(ann) and I.issubset(maximal_power(A, 2))):
            raise HypothesisViolated("I is not contained in Ann(I) and m^2")
        if not all(I.contains(c) for c in la.transpose(D, A.dim)):
            raise HypothesisViolated("D does not take values in I")
        if not is_derivation(A, ModuleSpec.whole(A), D):
            raise HypothesisViolated("D is not a derivation")
    matrix = tuple(la.mat_add(sigma.matrix, la.mat_mul(sigma.matrix, D)))
    return Automorphism(A, matrix).verify()


def solve_oplus(sigma: Automorphism, other: Automorphism) -> Matrix:
    """The unique D with sigma (+) D = other: D = sigma^-1 o (other - sigma)."""
    inv = sigma.inverse()
    return tuple(la.mat_mul(inv.matrix, la.mat_sub(other.matrix, sigma.matrix)))


def nilpotent_exp(D: Sequence[Sequence[Fraction]], n: int) -> Matrix:
    """exp(D) for a nilpotent matrix D; the series terminates."""
    out = la.identity(n)
    term = la.identity(n)
    for k in range(1, n + 1):
        term = la.mat_mul(term, D)
        if all(la.is_zero(r) for r in term):
            break
        out = la.mat_add(out, la.mat_scale(Fraction(1, factorial(k)), term))
    return tuple(out)


def random_automorphism(A: WeilAlgebra, rng: random.Random, coeff: int = 3, tries: int = 30) -> Automorphism:
    """Random invertible linear part on the generators plus higher-order terms.

    Substitutions that break the relations are resampled; if none works the
    exponential of a random filtration-raising derivation is returned.
    """
    gens = A.generator_elements()
    r = len(gens)
    m2 = A.maximal_power_basis(2)
    for _ in range(tries):
        images = []
        for i in range(r):
            x = A.zero
            for g in gens:
                x = x + rng.randint(-coeff, coeff) * g
            for v in m2:
                c = rng.randint(-coeff, coeff)
                if c:
                    x = x + c * AlgebraElement(A, v)
            images.append(x)
        try:
            return automorphism_from_generator_images(A, images)
        except (RelationsViolated, NotInvertible):
            continue
    D = _random_raising_derivation(A, rng, coeff)
    return Automorphism(A, nilpotent_exp(D, A.dim)).verify()


def _random_raising_derivation(A: WeilAlgebra, rng: random.Random, coeff: int) -> Matrix:
    """Random derivation with D(m) in m^2; such a D is nilpotent."""
    der = derivation_space(A, ModuleSpec.whole(A))
    if A.height < 2:
        return tuple(la.zero_vector(A.dim) for _ in range(A.dim))
    _, q = quotient_algebra(A, maximal_power(A, 2))
    rows = []
    for i in range(1, A.dim):
        images = [q.apply_vector(la.mat_vec(D, la.unit_vector(A.dim, i))) for D in der.basis]
        rows.extend(la.transpose(images, q.target.dim))
    sub = la.nullspace(rows, der.dim)
    coeffs = la.zero_vector(der.dim)
    for v in sub:
        coeffs = la.add(coeffs, la.scale(Fraction(rng.randint(-coeff, coeff)), v))
    return der.combination(coeffs)


def random_derivation(space: DerivationSpace, rng: random.Random, coeff: int = 3) -> Matrix:
    return space.combination([Fraction(rng.randint(-coeff, coeff)) for _ in range(space.dim)])


def invariant_closure(A: WeilAlgebra, gens: Sequence[AlgebraElement]) -> Ideal:
    """Smallest ideal containing gens and stable under every derivation of A."""
    der = derivation_space(A, ModuleSpec.whole(A)).basis
    elim = la.Eliminator(A.dim, pivot_order="last")
    queue = [g.coords for g in gens]
    while queue:
        v = queue.pop()
        if elim.add(v):
            queue.extend(A.mul_basis(i, v) for i in range(1, A.dim))
            queue.extend(la.mat_vec(D, v) for D in der)
    return Ideal(A, tuple(elim.rref_dense()))
