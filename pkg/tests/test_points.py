import warnings
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from weilforge.algebra import ground_field, quotient_algebra, subalgebra_generated, truncated_algebra
from weilforge.derivations import ModuleSpec, derivation_space, random_automorphism, random_derivation
from weilforge.errors import BaseMismatch, HypothesisViolated, NotExactWarning, NotInvariant, NotRegular
from weilforge.ideals import ideal_span, is_null_square, maximal_power, zero_ideal
from weilforge.points import (
    NearPoint,
    ObstructionWitness,
    PointDerivation,
    add_derivation_to_point,
    apply_automorphism,
    fiber_affine_check,
    is_regular_point,
    jet_add,
    jet_of,
    jet_project,
    jet_tangent_dimension_by_kernel,
    linear_sum,
    make_near_point,
    point_derivation,
    point_difference,
    probe_jet_addition,
    push_point,
    same_tangent_class,
    shift_by_internal,
    standard_regular_point,
    tangent_dimensions,
    transport_derivation,
)
from weilforge.polys import Polynomial

from conftest import seeded

x, y = Polynomial.variables(2)


def dual():
    return truncated_algebra(1, 1)


# -- near-points ---------------------------------------------------------------


def test_ground_field_point_is_ordinary_point():
    R = ground_field()
    p = make_near_point(R, 2, [F(1), F(-2)])
    assert p.base == (1, -2)
    assert p(x * y + 1).coords == (F(-1),)


def test_evaluation_examples():
    A = dual()
    p = make_near_point(A, 1, [2 + 3 * A.generator(0)])
    t = Polynomial.variable(1, 0)
    assert p(t ** 2) == 4 + 12 * A.generator(0)
    B = truncated_algebra(1, 2)
    q = make_near_point(B, 1, [B.generator(0)])
    assert q(t ** 3).is_zero()


def test_evaluation_is_multiplicative():
    A = truncated_algebra(2, 3)
    rng = seeded(30)
    p = make_near_point(A, 2, [A.element([rng.randint(-2, 2) for _ in range(A.dim)]) for _ in range(2)])
    f, g = x ** 2 + 3 * y - 1, x * y + y ** 3
    assert p(f * g) == p(f) * p(g)
    assert all(p.offsets[i].in_maximal() for i in range(2))


def test_regularity_examples():
    A = truncated_algebra(2, 3)
    gens = A.generator_elements()
    assert is_regular_point(make_near_point(A, 3, [gens[0] + 1, gens[1] - 2, A.scalar(5)]))
    B = truncated_algebra(1, 2)
    assert not is_regular_point(make_near_point(B, 1, [B.generator(0) ** 2]))
    assert is_regular_point(make_near_point(ground_field(), 2, [F(0), F(3)]))


def test_add_derivation_examples():
    A = dual()
    p = make_near_point(A, 1, [A.scalar(2)])
    assert isinstance(add_derivation_to_point(p, point_derivation(p, [5 * A.generator(0)])), NearPoint)
    B = truncated_algebra(1, 2)
    q = make_near_point(B, 1, [B.zero])
    w = add_derivation_to_point(q, point_derivation(q, [B.generator(0)]))
    assert isinstance(w, ObstructionWitness) and not w.product.is_zero()
    C = truncated_algebra(1, 3)
    r = make_near_point(C, 1, [C.generator(0)])
    moved = add_derivation_to_point(r, point_derivation(r, [C.generator(0) ** 2]))
    assert isinstance(moved, NearPoint)
    t = Polynomial.variable(1, 0)
    f = t ** 3 - 2 * t
    D = point_derivation(r, [C.generator(0) ** 2])
    assert moved(f) == linear_sum(r, D, f)


def test_add_derivation_requires_same_base():
    A = dual()
    p = make_near_point(A, 1, [A.zero])
    q = make_near_point(A, 1, [A.scalar(1)])
    with pytest.raises(BaseMismatch):
        add_derivation_to_point(p, point_derivation(q, [A.zero]))


def test_difference_examples():
    A = dual()
    xi = A.generator(0)
    p = make_near_point(A, 1, [2 + 3 * xi])
    assert point_difference(p, p).is_zero()
    d = point_difference(p, make_near_point(A, 1, [2 + 5 * xi]))
    assert d.values == (2 * xi,)
    B = truncated_algebra(1, 2)
    w = point_difference(make_near_point(B, 1, [B.zero]), make_near_point(B, 1, [B.generator(0)]))
    assert isinstance(w, ObstructionWitness)
    with pytest.raises(BaseMismatch):
        point_difference(p, make_near_point(A, 1, [A.scalar(3)]))


def test_point_derivation_leibniz():
    A = truncated_algebra(2, 2)
    g1, g2 = A.generator_elements()
    p = make_near_point(A, 2, [1 + g1, g2])
    D = point_derivation(p, [g1 * g2, 3 * g2 + g1 ** 2])
    f, g = x ** 2 * y - y, x + y ** 2
    assert D(f * g) == p(f) * D(g) + p(g) * D(f)


# -- fibres --------------------------------------------------------------------


def test_fiber_two_points_have_vertical_difference():
    A = truncated_algebra(1, 3)
    xi = A.generator(0)
    I = maximal_power(A, 2)
    p = make_near_point(A, 2, [xi, 1 + 2 * xi])
    q = make_near_point(A, 2, [xi + xi ** 2, 1 + 2 * xi - xi ** 3])
    check = fiber_affine_check(A, I, [p, q])
    assert check.ok
    D = point_difference(p, q)
    assert all(I.contains(v) for v in D.values)


def test_fiber_single_point():
    A = truncated_algebra(1, 3)
    p = make_near_point(A, 1, [A.generator(0)])
    zero = point_derivation(p, [A.zero])
    assert add_derivation_to_point(p, zero) == p
    assert fiber_affine_check(A, maximal_power(A, 2), [p], [zero]).ok


def test_fiber_obstruction():
    A = truncated_algebra(1, 4)
    p = make_near_point(A, 1, [A.generator(0)])
    with pytest.raises(HypothesisViolated) as info:
        fiber_affine_check(A, maximal_power(A, 2), [p])
    a, b = info.value.witness
    assert str(a * b) == "xi^4"


def test_fiber_rejects_points_from_other_fibres():
    A = truncated_algebra(1, 3)
    xi = A.generator(0)
    with pytest.raises(BaseMismatch):
        fiber_affine_check(A, maximal_power(A, 2), [make_near_point(A, 1, [xi]), make_near_point(A, 1, [2 * xi])])


# -- jets ----------------------------------------------------------------------


def test_jet_over_ground_field_is_maximal_ideal():
    R = ground_field()
    j = jet_of(make_near_point(R, 2, [F(1), F(2)]))
    polys = j.kernel_polynomials()
    assert sorted(p.to_string(["y1", "y2"]) for p in polys) == ["y1", "y2"]
    assert j.contains(x - 1) and j.contains((x - 1) * (y + 4)) and not j.contains(x)


def test_jets_of_dual_numbers_are_lines():
    A = dual()
    xi = A.generator(0)
    a = jet_of(make_near_point(A, 2, [xi, 2 * xi]))
    b = jet_of(make_near_point(A, 2, [2 * xi, 4 * xi]))
    c = jet_of(make_near_point(A, 2, [xi, 3 * xi]))
    assert a == b and a != c
    assert a.contains(2 * x - y) and a.contains(x ** 2) and not a.contains(x)


def test_jet_requires_regular_point():
    B = truncated_algebra(1, 2)
    with pytest.raises(NotRegular):
        jet_of(make_near_point(B, 1, [B.generator(0) ** 2]))


def test_jet_equal_for_automorphic_representatives():
    A = truncated_algebra(2, 3)
    rng = seeded(31)
    p = standard_regular_point(A, 3, [F(1), F(0), F(-1)])
    for _ in range(5):
        s = random_automorphism(A, rng)
        assert jet_of(apply_automorphism(p, s)) == jet_of(p)


def test_jet_project_examples():
    A = truncated_algebra(1, 2)
    xi = A.generator(0)
    j = jet_of(make_near_point(A, 2, [xi, xi ** 2]))
    assert jet_project(j, zero_ideal(A)) == j
    line = jet_project(j, maximal_power(A, 2))
    D1 = truncated_algebra(1, 1)
    assert line == jet_of(make_near_point(D1, 2, [D1.generator(0), D1.zero]))
    base = jet_project(j, maximal_power(A, 1))
    assert base == jet_of(make_near_point(ground_field(), 2, [F(0), F(0)]))


def test_jet_project_requires_invariance():
    A = truncated_algebra(2, 2)
    j = jet_of(standard_regular_point(A, 2))
    with pytest.raises(NotInvariant):
        jet_project(j, ideal_span(A, [A.generator("xi1")]))


def test_jet_project_independent_of_representative():
    A = truncated_algebra(1, 4)
    rng = seeded(32)
    p = standard_regular_point(A, 2, [F(2), F(1)])
    j = jet_of(p)
    for k in range(1, 5):
        I = maximal_power(A, k)
        target = jet_project(j, I)
        for _ in range(3):
            q = apply_automorphism(p, random_automorphism(A, rng))
            assert jet_project(jet_of(q), I) == target


def test_jet_add_examples():
    A = truncated_algebra(1, 2)
    xi = A.generator(0)
    I = maximal_power(A, 2)
    p = make_near_point(A, 2, [xi, A.zero])
    j = jet_of(p)
    assert jet_add(j, point_derivation(p, [A.zero, A.zero]), I) == j
    moved = jet_add(j, point_derivation(p, [A.zero, xi ** 2]), I)
    assert moved == jet_of(make_near_point(A, 2, [xi, xi ** 2]))
    assert moved != j
    assert jet_project(moved, I) == jet_project(j, I)


def test_jet_add_hypotheses():
    A = truncated_algebra(1, 3)
    xi = A.generator(0)
    p = make_near_point(A, 1, [xi])
    j = jet_of(p)
    with pytest.raises(HypothesisViolated):
        jet_add(j, point_derivation(p, [xi]), maximal_power(A, 1))
    with pytest.raises(HypothesisViolated):
        jet_add(j, point_derivation(p, [xi]), maximal_power(A, 2))  # value outside I


def test_jet_add_warns_when_not_exact():
    A = truncated_algebra(1, 3)
    xi = A.generator(0)
    p = make_near_point(A, 2, [xi, A.zero])
    with pytest.warns(NotExactWarning):
        jet_add(jet_of(p), point_derivation(p, [A.zero, xi ** 2]), maximal_power(A, 2))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        jet_add(jet_of(p), point_derivation(p, [A.zero, xi ** 3]), maximal_power(A, 3))


def test_jet_add_not_well_defined_for_square_in_cubic():
    A = truncated_algebra(1, 3)
    xi = A.generator(0)
    I = maximal_power(A, 2)
    p = make_near_point(A, 2, [xi, A.zero])
    D = point_derivation(p, [A.zero, xi ** 2])
    probe = probe_jet_addition(jet_of(p), I, [D])
    assert not probe.well_defined
    assert same_tangent_class(probe.D, probe.D_shifted, I)
    assert probe.jet_a != probe.jet_b


def _random_vertical(p, I, rng):
    A = p.algebra
    vals = []
    for _ in range(p.n):
        v = A.zero
        for b in I.elements():
            v = v + rng.randint(-2, 2) * b
        vals.append(v)
    return PointDerivation(p, tuple(vals))


@pytest.mark.parametrize("m,l,k", [(1, 3, 2), (1, 2, 1), (2, 2, 1), (1, 4, 3), (1, 4, 2)])
def test_jet_action_free_transitive_associative_when_exact(m, l, k):
    A = truncated_algebra(m, l)
    I = maximal_power(A, k + 1)
    rng = seeded(33)
    p = standard_regular_point(A, m + 1, [F(rng.randint(-2, 2)) for _ in range(m + 1)])
    j = jet_of(p)
    der = derivation_space(A, ModuleSpec.of_ideal(A, I))
    for _ in range(6):
        D = _random_vertical(p, I, rng)
        E = _random_vertical(p, I, rng)
        jd = jet_add(j, D, I, warn=False)
        # independent of the class representative and of the near-point representative
        delta = der.embedded(random_derivation(der, rng))
        s = random_automorphism(A, rng)
        other = transport_derivation(shift_by_internal(D, delta), s)
        assert jet_add(jet_of(other.at), other, I, warn=False) == jd
        # free: only the null class fixes the jet
        zero = PointDerivation(p, tuple(A.zero for _ in range(p.n)))
        assert (jd == j) == same_tangent_class(D, zero, I)
        # associative
        moved = add_derivation_to_point(p, D)
        lhs = jet_add(jet_of(moved), PointDerivation(moved, E.values), I, warn=False)
        assert lhs == jet_add(j, D + E, I, warn=False)
        # transitive: the difference of two points of the fibre is vertical
        q = add_derivation_to_point(p, E)
        diff = point_difference(p, q)
        assert all(I.contains(v) for v in diff.values)
        assert jet_add(j, diff, I, warn=False) == jet_of(q)


# -- functoriality and linearization -------------------------------------------


def test_push_point_composes():
    A = truncated_algebra(1, 3)
    B, phi = quotient_algebra(A, maximal_power(A, 3))
    C, psi = quotient_algebra(B, maximal_power(B, 2))
    xi = A.generator(0)
    p = make_near_point(A, 2, [1 + xi, xi ** 2 - xi])
    f = [x * y, x + y ** 2, y]
    u, v, w = Polynomial.variables(3)
    g = [u + v * w]
    gf = [gj.compose(f) for gj in g]
    lhs = push_point(p, gf, psi.compose(phi))
    rhs = push_point(push_point(p, f, phi), g, psi)
    assert lhs == rhs


# -- tangent dimensions ----------------------------------------------------------


@pytest.mark.parametrize("alg,n,expected", [
    (ground_field(), 3, (3, 0, 3)),
    (truncated_algebra(1, 1), 2, (4, 1, 3)),
    (truncated_algebra(1, 2), 2, (6, 2, 4)),
])
def test_tangent_dimension_examples(alg, n, expected):
    assert tangent_dimensions(alg, n).as_tuple() == expected


def test_tangent_dimension_matches_kernel_oracle():
    for m, l in [(1, 1), (1, 3), (2, 2)]:
        A = truncated_algebra(m, l)
        for n in range(m, 4):
            p = standard_regular_point(A, n, [F(i) for i in range(n)])
            assert tangent_dimensions(A, n).dim_jet_tangent == jet_tangent_dimension_by_kernel(p)


def test_tangent_dimensions_below_width():
    dims = tangent_dimensions(truncated_algebra(3, 1), 2)
    assert not dims.has_regular_points
    with pytest.raises(ValueError):
        tangent_dimensions(truncated_algebra(1, 1), 0)


def test_json_shapes():
    A = truncated_algebra(1, 2)
    p = make_near_point(A, 1, [1 + A.generator(0)])
    doc = p.to_json()
    assert doc["base"] == ["1"] and doc["algebra"] == A.content_hash
    jdoc = jet_of(p).to_json()
    assert jdoc["degree"] == 3 and all(isinstance(c, str) for v in jdoc["kernel_basis"] for c in v)


# -- properties ------------------------------------------------------------------

@given(st.sampled_from([(1, 2), (1, 3), (2, 2), (1, 5)]), st.data())
def test_sum_is_point_iff_values_generate_null_square_ideal(ml, data):
    A = truncated_algebra(*ml)
    coords = st.lists(st.integers(-2, 2), min_size=A.dim - 1, max_size=A.dim - 1)
    vals = [A.element([0] + data.draw(coords)) for _ in range(2)]
    base = [A.scalar(data.draw(st.integers(-3, 3))) + g for g in A.generator_elements()[:1] * 2]
    p = make_near_point(A, 2, base)
    D = point_derivation(p, vals)
    res = add_derivation_to_point(p, D)
    assert isinstance(res, NearPoint) == is_null_square(ideal_span(A, vals))
    if isinstance(res, NearPoint):
        f = x ** 3 * y - 2 * y ** 2 + x
        assert res(f) == p(f) + D(f)


@given(st.data())
def test_preimages_of_regular_points_are_regular_when_ideal_in_m2(data):
    A = truncated_algebra(1, 3)
    I = maximal_power(A, 2)
    B, phi = quotient_algebra(A, I)
    coords = st.lists(st.integers(-2, 2), min_size=A.dim, max_size=A.dim)
    p = make_near_point(A, 2, [A.element(data.draw(coords)) for _ in range(2)])
    if is_regular_point(push_point(p, Polynomial.variables(2), phi)):
        assert is_regular_point(p)


def test_non_regular_preimage_through_proper_subalgebra():
    # I = m is not inside m^2: the subalgebra S = R[xi^2] maps onto A/I = R,
    # and a point with values in S is a non-regular lift of a regular R-point
    A = truncated_algebra(1, 2)
    I = maximal_power(A, 1)
    S, inc = subalgebra_generated(A, [A.generator(0) ** 2])
    assert S.dim < A.dim
    B, phi = quotient_algebra(A, I)
    p = make_near_point(A, 1, [A.generator(0) ** 2])
    assert is_regular_point(push_point(p, Polynomial.variables(1), phi))
    assert not is_regular_point(p)
