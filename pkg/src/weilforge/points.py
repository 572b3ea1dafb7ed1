"""Near-points and jets of R^n, modelled with polynomial functions.

An A-point of R^n is the algebra morphism Poly(R^n) -> A fixed by the images
of the coordinate functions. Values of a near-point only depend on the Taylor
expansion at the base point up to the height of A, so polynomials are exact
stand-ins for smooth functions here.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import linalg as la
from .algebra import (
    AlgebraElement,
    AlgebraMorphism,
    WeilAlgebra,
    is_generating_set,
    quotient_algebra,
    tensor_morphism,
    tensor_product,
    truncated_algebra,
)
from .derivations import induced_derivation_map, left_exactness_test, derivation_space, ModuleSpec
from .errors import (
    AlgebraMismatch,
    BaseMismatch,
    HypothesisViolated,
    NotExactWarning,
    NotInvariant,
    NotRegular,
)
from .ideals import Ideal, annihilator, is_infinitesimally_invariant, maximal_power, null_square_witness
from .polys import Polynomial, monomials


@dataclass(frozen=True, eq=False)
class NearPoint:
    algebra: WeilAlgebra
    images: Tuple[AlgebraElement, ...]

    @property
    def n(self) -> int:
        return len(self.images)

    @property
    def base(self) -> Tuple[Fraction, ...]:
        return tuple(x.augmentation for x in self.images)

    @property
    def offsets(self) -> Tuple[AlgebraElement, ...]:
        """image_i - base_i, which lie in the maximal ideal."""
        return tuple(x - x.augmentation for x in self.images)

    def __call__(self, f: Polynomial) -> AlgebraElement:
        if f.nvars != self.n:
            raise ValueError("polynomial lives on another R^n")
        return f.evaluate(list(self.images), self.algebra.one)

    evaluate = __call__

    def __eq__(self, other):
        if not isinstance(other, NearPoint):
            return NotImplemented
        return self.algebra == other.algebra and self.images == other.images

    def __hash__(self):
        return hash((self.algebra.content_hash, tuple(x.coords for x in self.images)))

    def __repr__(self):
        return f"NearPoint({', '.join(str(x) for x in self.images)})"

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.content_hash,
            "base": [la.fraction_str(b) for b in self.base],
            "images": [[la.fraction_str(c) for c in x.coords] for x in self.images],
        }


@dataclass(frozen=True, eq=False)
class PointDerivation:
    """A derivation Poly(R^n) -> A at a near-point, fixed by values on coordinates.

    On a polynomial f it returns sum_i p(df/dx_i) * values[i].
    """

    at: NearPoint
    values: Tuple[AlgebraElement, ...]

    def __call__(self, f: Polynomial) -> AlgebraElement:
        out = self.at.algebra.zero
        for i, v in enumerate(self.values):
            if not v.is_zero():
                out = out + self.at(f.derivative(i)) * v
        return out

    def __add__(self, other: "PointDerivation") -> "PointDerivation":
        _same_base(self.at, other.at)
        return PointDerivation(self.at, tuple(a + b for a, b in zip(self.values, other.values)))

    def __neg__(self):
        return PointDerivation(self.at, tuple(-a for a in self.values))

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c) -> "PointDerivation":
        return PointDerivation(self.at, tuple(c * a for a in self.values))

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def __eq__(self, other):
        if not isinstance(other, PointDerivation):
            return NotImplemented
        return self.at == other.at and self.values == other.values

    def __hash__(self):
        return hash((self.at, tuple(v.coords for v in self.values)))

    def __repr__(self):
        return f"PointDerivation({', '.join(str(v) for v in self.values)})"


@dataclass(frozen=True)
class ObstructionWitness:
    """Coordinate functions f, g with D(f) * D(g) != 0."""

    f: Polynomial
    g: Polynomial
    Df: AlgebraElement
    Dg: AlgebraElement

    @property
    def product(self) -> AlgebraElement:
        return self.Df * self.Dg

    def describe(self) -> str:
        return f"D(f) * D(g) = ({self.Df}) * ({self.Dg}) = {self.product}"


def _same_base(p: NearPoint, q: NearPoint):
    if p.algebra != q.algebra or p.n != q.n:
        raise BaseMismatch("near-points of different types or ambient dimensions")


def make_near_point(A: WeilAlgebra, n: int, images: Sequence) -> NearPoint:
    if len(images) != n:
        raise ValueError(f"expected {n} images")
    out = []
    for x in images:
        if not isinstance(x, AlgebraElement):
            x = A.scalar(x)
        if x.algebra != A:
            raise AlgebraMismatch("image from another algebra")
        out.append(x)
    return NearPoint(A, tuple(out))


def point_derivation(p: NearPoint, values: Sequence) -> PointDerivation:
    vals = []
    for v in values:
        if not isinstance(v, AlgebraElement):
            v = p.algebra.scalar(v)
        vals.append(v)
    if len(vals) != p.n:
        raise ValueError(f"expected {p.n} values")
    return PointDerivation(p, tuple(vals))


def is_regular_point(p: NearPoint) -> bool:
    """Surjectivity onto A, tested on m_A / m_A^2."""
    return is_generating_set(p.algebra, list(p.offsets))


def _centred_coordinate(p: NearPoint, i: int) -> Polynomial:
    return Polynomial.variable(p.n, i) - p.base[i]


def _obstruction(p: NearPoint, values: Sequence[AlgebraElement]) -> Optional[ObstructionWitness]:
    for i, a in enumerate(values):
        for j in range(i, len(values)):
            if not (a * values[j]).is_zero():
                return ObstructionWitness(_centred_coordinate(p, i), _centred_coordinate(p, j), a, values[j])
    return None


def add_derivation_to_point(p: NearPoint, D: PointDerivation):
    """p + D when it is again a near-point, else an ObstructionWitness.

    p + D is multiplicative iff D(f) D(g) = 0 for all f, g, i.e. iff the
    values of D on the coordinates multiply to zero pairwise.
    """
    if D.at != p:
        raise BaseMismatch("derivation is based at another near-point")
    w = _obstruction(p, D.values)
    if w is not None:
        return w
    return NearPoint(p.algebra, tuple(a + v for a, v in zip(p.images, D.values)))


def point_difference(p: NearPoint, q: NearPoint):
    """q - p as a derivation at p, or an ObstructionWitness."""
    _same_base(p, q)
    if p.base != q.base:
        raise BaseMismatch("near-points over different base points")
    values = tuple(b - a for a, b in zip(p.images, q.images))
    w = _obstruction(p, values)
    if w is not None:
        return w
    return PointDerivation(p, values)


def linear_sum(p: NearPoint, D: PointDerivation, f: Polynomial) -> AlgebraElement:
    """(p + D)(f) computed as a sum of linear maps."""
    return p(f) + D(f)


def push_point(p: NearPoint, f: Sequence[Polynomial], phi: Optional[AlgebraMorphism] = None) -> NearPoint:
    """w(f, phi)(p) = phi o p o f*, for a polynomial map f : R^n -> R^k."""
    images = [p(fj) for fj in f]
    if phi is not None:
        images = [phi(x) for x in images]
        return NearPoint(phi.target, tuple(images))
    return NearPoint(p.algebra, tuple(images))


def push_derivation(D: PointDerivation, f: Sequence[Polynomial], phi: Optional[AlgebraMorphism] = None) -> PointDerivation:
    """phi o D o f*, a derivation at push_point(D.at, f, phi)."""
    q = push_point(D.at, f, phi)
    values = [D(fj) for fj in f]
    if phi is not None:
        values = [phi(v) for v in values]
    return PointDerivation(q, tuple(values))


def linearize_by_dual_numbers(D: PointDerivation, f: Sequence[Polynomial], phi: AlgebraMorphism) -> PointDerivation:
    """Derivative of w(f, phi) at D.at in the direction D, computed over A[eps].

    p + eps*D is an A[eps]-point; pushing it through w(f, phi (x) id) and
    reading off the eps part gives the linearization without using the chain
    rule formula.
    """
    p = D.at
    A = p.algebra
    dual = truncated_algebra(1, 1)
    Ae = tensor_product(A, dual)
    dB = dual.dim

    def lift(x: AlgebraElement, part: int) -> AlgebraElement:
        v = [Fraction(0)] * Ae.dim
        for k, c in enumerate(x.coords):
            v[k * dB + part] = c
        return AlgebraElement(Ae, tuple(v))

    pe = NearPoint(Ae, tuple(lift(a, 0) + lift(v, 1) for a, v in zip(p.images, D.values)))
    phie = tensor_morphism(phi, dual)
    qe = push_point(pe, f, phie)
    B = phi.target

    def split(x: AlgebraElement, part: int) -> AlgebraElement:
        return AlgebraElement(B, tuple(x.coords[k * dB + part] for k in range(B.dim)))

    q = NearPoint(B, tuple(split(x, 0) for x in qe.images))
    return PointDerivation(q, tuple(split(x, 1) for x in qe.images))


# ---------------------------------------------------------------------------
# fibres of M^A -> M^B


@dataclass
class FiberCheck:
    passed: dict
    witnesses: dict

    @property
    def ok(self) -> bool:
        return all(self.passed.values())


def fiber_affine_check(A: WeilAlgebra, I: Ideal, points: Sequence[NearPoint],
                       derivations: Sequence[PointDerivation] = ()) -> FiberCheck:
    """Check the affine axioms of p + D on a sample of one fibre of M^A -> M^(A/I).

    ``derivations`` are extra vertical derivations (values in I) based at
    ``points[0]``; differences of the sample points are always used too.
    """
    w = null_square_witness(I)
    if w is not None:
        raise HypothesisViolated("I^2 != 0, no affine structure on the fibres", witness=w)
    B, q = quotient_algebra(A, I)
    if not points:
        return FiberCheck({}, {})
    p0 = points[0]
    proj = push_point(p0, Polynomial.variables(p0.n), q)
    for p in points[1:]:
        if push_point(p, Polynomial.variables(p.n), q) != proj:
            raise BaseMismatch("sample points do not lie in one fibre")
    passed = {"vertical": True, "transitive": True, "free": True, "associative": True, "closed": True}
    wit = {}
    ders: List[PointDerivation] = []
    for p in points:
        for r in points:
            D = point_difference(p, r)
            if isinstance(D, ObstructionWitness):
                passed["transitive"] = False
                wit["transitive"] = D
                continue
            if not all(I.contains(v) for v in D.values):
                passed["vertical"] = False
                wit["vertical"] = D
            if add_derivation_to_point(p, D) != r:
                passed["transitive"] = False
                wit["transitive"] = (p, r)
            if p is p0:
                ders.append(D)
    ders.extend(d for d in derivations)
    for D in ders:
        moved = add_derivation_to_point(p0, D)
        if isinstance(moved, ObstructionWitness):
            passed["closed"] = False
            wit["closed"] = moved
            continue
        if push_point(moved, Polynomial.variables(p0.n), q) != proj:
            passed["closed"] = False
            wit["closed"] = D
        if (moved == p0) != D.is_zero():
            passed["free"] = False
            wit["free"] = D
        for E in ders:
            lhs = add_derivation_to_point(moved, PointDerivation(moved, E.values))
            rhs = add_derivation_to_point(p0, D + E)
            if lhs != rhs:
                passed["associative"] = False
                wit["associative"] = (D, E)
    return FiberCheck(passed, wit)


# ---------------------------------------------------------------------------
# jets


@dataclass(frozen=True, eq=False)
class Jet:
    """Kernel of a regular near-point, truncated to centred degree <= height + 1."""

    representative: NearPoint
    degree: int
    kernel_basis: Tuple[Tuple[Fraction, ...], ...]

    @property
    def base(self):
        return self.representative.base

    @property
    def n(self) -> int:
        return self.representative.n

    @property
    def algebra(self) -> WeilAlgebra:
        return self.representative.algebra

    def key(self):
        return (self.n, self.base, self.degree, self.kernel_basis)

    def __eq__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def kernel_polynomials(self) -> List[Polynomial]:
        """Kernel generators as polynomials in the centred coordinates."""
        exps = monomials(self.n, self.degree)
        return [Polynomial(self.n, {e: c for e, c in zip(exps, v) if c}) for v in self.kernel_basis]

    def contains(self, f: Polynomial) -> bool:
        """Is f (a polynomial in the original coordinates) in the jet ideal?"""
        return self.representative(f).is_zero()

    def __repr__(self):
        names = [f"x{i + 1}" for i in range(self.n)] if self.n > 1 else ["x"]
        shown = [p.to_string(names) for p in self.kernel_polynomials()]
        return f"Jet(base={tuple(str(b) for b in self.base)}, kernel ~ {shown})"

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.content_hash,
            "base": [la.fraction_str(b) for b in self.base],
            "degree": self.degree,
            "kernel_basis": [[la.fraction_str(c) for c in v] for v in self.kernel_basis],
        }


def jet_of(p: NearPoint) -> Jet:
    if not is_regular_point(p):
        raise NotRegular(f"{p} is not a regular near-point")
    A = p.algebra
    deg = A.height + 1
    exps = monomials(p.n, deg)
    offs = p.offsets
    cols = []
    for e in exps:
        val = A.one
        for x, k in zip(offs, e):
            for _ in range(k):
                val = val * x
        cols.append(val.coords)
    rows = la.transpose(cols, A.dim)
    kernel = la.nullspace(rows, len(exps))
    canon = la.column_space_basis(kernel, len(exps))
    return Jet(p, deg, tuple(canon))


def jet_project(j: Jet, I: Ideal) -> Jet:
    """The B-jet containing j, for B = A/I."""
    A = j.algebra
    if I.algebra != A:
        raise AlgebraMismatch("ideal of another algebra")
    if not is_infinitesimally_invariant(A, I):
        raise NotInvariant("the ideal is not invariant")
    B, q = quotient_algebra(A, I)
    return jet_of(push_point(j.representative, Polynomial.variables(j.n), q))


def _check_jet_hypothesis(A: WeilAlgebra, I: Ideal):
    if not I.issubset(annihilator(A, I)):
        raise HypothesisViolated("I is not contained in Ann(I)", witness=null_square_witness(I))
    if not I.issubset(maximal_power(A, 2)):
        raise HypothesisViolated("I is not contained in m^2")


def affine_sequence_exact(A: WeilAlgebra, I: Ideal) -> Tuple[bool, bool]:
    """(left exact, right exact at Lie level)."""
    left = left_exactness_test(A, I).holds
    right = induced_derivation_map(A, I).surjective
    return left, right


def jet_add(j: Jet, D: PointDerivation, I: Ideal, warn: bool = True) -> Jet:
    """The jet of representative + D, for D with values in I."""
    A = j.algebra
    _check_jet_hypothesis(A, I)
    if D.at != j.representative:
        raise BaseMismatch("derivation is not based at the jet's representative")
    if not all(I.contains(v) for v in D.values):
        raise HypothesisViolated("D does not take values in I")
    if warn:
        left, right = affine_sequence_exact(A, I)
        if not (left and right):
            warnings.warn("affine sequence is not exact; jet addition is not well defined", NotExactWarning)
    moved = add_derivation_to_point(j.representative, D)
    return jet_of(moved)


def transport_derivation(D: PointDerivation, sigma) -> PointDerivation:
    """sigma o D, the same derivation seen through the representative sigma o p."""
    p = D.at
    q = NearPoint(p.algebra, tuple(sigma(x) for x in p.images))
    return PointDerivation(q, tuple(sigma(v) for v in D.values))


def apply_automorphism(p: NearPoint, sigma) -> NearPoint:
    return NearPoint(p.algebra, tuple(sigma(x) for x in p.images))


def shift_by_internal(D: PointDerivation, delta) -> PointDerivation:
    """D - delta o p for delta a derivation A -> I (a matrix).

    D and the result define the same tangent vector at the jet of p.
    """
    p = D.at
    A = p.algebra
    vals = []
    for v, x in zip(D.values, p.images):
        vals.append(v - AlgebraElement(A, la.mat_vec(delta, x.coords)))
    return PointDerivation(p, tuple(vals))


def _flat_values(D: PointDerivation) -> Tuple[Fraction, ...]:
    return tuple(c for v in D.values for c in v.coords)


def same_tangent_class(D: PointDerivation, E: PointDerivation, I: Ideal) -> bool:
    """Do D and E differ by delta o p for some derivation delta : A -> I?"""
    if D.at != E.at:
        raise BaseMismatch("derivations at different near-points")
    p = D.at
    A = p.algebra
    der = derivation_space(A, ModuleSpec.of_ideal(A, I))
    shifts = [_flat_values(shift_by_internal(PointDerivation(p, tuple(A.zero for _ in range(p.n))), d))
              for d in der.embedded_basis()]
    diff = la.sub(_flat_values(D), _flat_values(E))
    elim = la.Eliminator(len(diff))
    for v in shifts:
        elim.add(v)
    return elim.contains(diff)


@dataclass
class JetAddProbe:
    well_defined: bool
    D: Optional[PointDerivation] = None
    D_shifted: Optional[PointDerivation] = None
    jet_a: Optional[Jet] = None
    jet_b: Optional[Jet] = None


def probe_jet_addition(j: Jet, I: Ideal, derivations: Sequence[PointDerivation]) -> JetAddProbe:
    """Look for two derivations in the same tangent class giving different jets.

    Every derivation in ``derivations`` is shifted by each basis derivation
    A -> I; the shift does not change the tangent vector at the jet.
    """
    A = j.algebra
    der = derivation_space(A, ModuleSpec.of_ideal(A, I))
    shifts = der.embedded_basis()
    for D in derivations:
        base_jet = jet_add(j, D, I, warn=False)
        for delta in shifts:
            D2 = shift_by_internal(D, delta)
            other = jet_add(j, D2, I, warn=False)
            if other != base_jet:
                return JetAddProbe(False, D, D2, base_jet, other)
    return JetAddProbe(True)


# ---------------------------------------------------------------------------
# tangent dimensions


@dataclass(frozen=True)
class TangentDims:
    dim_MA_tangent: int
    dim_DerAA: int
    dim_jet_tangent: int
    # below the width there are no regular points and dim_jet_tangent is formal
    has_regular_points: bool

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.dim_MA_tangent, self.dim_DerAA, self.dim_jet_tangent)


def tangent_dimensions(A: WeilAlgebra, n: int) -> TangentDims:
    if n < 1:
        raise ValueError("ambient dimension must be positive")
    der = derivation_space(A, ModuleSpec.whole(A)).dim
    return TangentDims(n * A.dim, der, n * A.dim - der, n >= A.width)


def standard_regular_point(A: WeilAlgebra, n: int, base: Optional[Sequence[Fraction]] = None) -> NearPoint:
    """x_i -> base_i + (i-th generator), zero past the width."""
    if n < len(A.generators):
        raise NotRegular("ambient dimension below the width: no regular points")
    base = base or [Fraction(0)] * n
    gens = A.generator_elements()
    images = [A.scalar(base[i]) + (gens[i] if i < len(gens) else A.zero) for i in range(n)]
    return NearPoint(A, tuple(images))


def jet_tangent_dimension_by_kernel(p: NearPoint) -> int:
    """dim T(J^A) at ker p, as the rank of D -> D|ker p over all derivations at p.

    A derivation D at p gives the null tangent vector iff D vanishes on the
    jet ideal. Computed from the kernel basis alone, independently of Der(A, A).
    """
    j = jet_of(p)
    A = p.algebra
    # kernel polynomials are centred; shift back to original coordinates
    kernel = [f.shift([-b for b in p.base]) for f in j.kernel_polynomials()]
    if not kernel:
        return 0
    # D = e_k in slot i sends f to p(df/dx_i) * e_k
    partials = [[p(f.derivative(i)) for f in kernel] for i in range(p.n)]
    rows = []
    for i in range(p.n):
        for k in range(A.dim):
            e = A.basis_element(k)
            row = []
            for val in partials[i]:
                row.extend((val * e).coords)
            rows.append(row)
    return la.rank(rows, len(rows[0]))
