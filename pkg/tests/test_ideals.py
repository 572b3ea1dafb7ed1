import itertools

import pytest
from hypothesis import given, strategies as st

from weilforge.algebra import truncated_algebra
from weilforge.errors import AlgebraMismatch
from weilforge.ideals import (
    Ideal,
    annihilator,
    ideal_intersection,
    ideal_power,
    ideal_product,
    ideal_span,
    ideal_sum,
    invariance_note,
    is_infinitesimally_invariant,
    is_null_square,
    maximal_power,
    null_square_witness,
    power_index,
    square,
    whole_ideal,
    zero_ideal,
)

from conftest import fat_point, sample_algebras, seeded


def random_ideal(A, rng, ngens=None):
    ngens = rng.randint(1, 2) if ngens is None else ngens
    gens = [A.element([0] + [rng.choice([0, 0, 1, -1, 2]) for _ in range(A.dim - 1)]) for _ in range(ngens)]
    return ideal_span(A, gens)


def test_span_examples():
    A = truncated_algebra(1, 3)
    xi = A.generator(0)
    assert ideal_span(A, []).is_zero()
    assert ideal_span(A, [A.one]).is_whole()
    I = ideal_span(A, [xi ** 2])
    assert I == maximal_power(A, 2)
    assert [str(x) for x in I.elements()] == ["xi^2", "xi^3"]


def test_product_examples():
    A3, A4 = truncated_algebra(1, 3), truncated_algebra(1, 4)
    assert ideal_product(maximal_power(A3, 2), zero_ideal(A3)).is_zero()
    assert square(maximal_power(A3, 2)).is_zero()
    sq = square(maximal_power(A4, 2))
    assert [str(x) for x in sq.elements()] == ["xi^4"]


def test_product_mismatch():
    with pytest.raises(AlgebraMismatch):
        ideal_product(maximal_power(truncated_algebra(1, 2), 1), maximal_power(truncated_algebra(1, 3), 1))


def test_maximal_power_examples():
    A = truncated_algebra(2, 2)
    assert maximal_power(A, 0).is_whole()
    assert maximal_power(A, A.height + 1).is_zero()
    assert sorted(str(x) for x in maximal_power(A, 2).elements()) == ["xi1*xi2", "xi1^2", "xi2^2"]


def test_annihilator_examples():
    A = truncated_algebra(1, 1)
    assert annihilator(A, zero_ideal(A)).is_whole()
    assert annihilator(A, maximal_power(A, 1)) == ideal_span(A, [A.generator(0)])


@pytest.mark.parametrize("l", range(1, 7))
def test_annihilator_of_powers_one_variable(l):
    A = truncated_algebra(1, l)
    for k in range(l):
        assert annihilator(A, maximal_power(A, k + 1)) == maximal_power(A, l - k)


def test_null_square_examples():
    assert is_null_square(zero_ideal(truncated_algebra(1, 2)))
    A = truncated_algebra(1, 3)
    assert is_null_square(maximal_power(A, 2))
    B = truncated_algebra(1, 2)
    assert not is_null_square(maximal_power(B, 1))
    x, y = null_square_witness(maximal_power(B, 1))
    assert not (x * y).is_zero()


def test_invariance_examples():
    A = truncated_algebra(2, 2)
    for k in range(4):
        assert is_infinitesimally_invariant(A, maximal_power(A, k))
    assert is_infinitesimally_invariant(A, zero_ideal(A))
    assert is_infinitesimally_invariant(A, whole_ideal(A))
    assert not is_infinitesimally_invariant(A, ideal_span(A, [A.generator("xi1")]))
    assert "infinitesimally" in invariance_note(A, ideal_span(A, [A.generator("xi1")]))


def test_power_index():
    A = truncated_algebra(2, 3)
    assert power_index(A, maximal_power(A, 2)) == 2
    assert power_index(A, ideal_span(A, [A.generator(0)])) is None


@pytest.mark.parametrize("A", sample_algebras(), ids=repr)
def test_ideals_are_closed_and_canonical(A):
    rng = seeded(10)
    for _ in range(10):
        I = random_ideal(A, rng)
        for a in range(A.dim):
            for x in I.basis:
                assert I.contains(A.mul_basis(a, x))
        again = Ideal.from_vectors(A, list(reversed(I.basis)) + [tuple(2 * c for c in v) for v in I.basis])
        assert again == I and hash(again) == hash(I)


@pytest.mark.parametrize("A", sample_algebras(), ids=repr)
def test_null_square_iff_elements_square_to_zero(A):
    rng = seeded(11)
    for _ in range(12):
        I = random_ideal(A, rng)
        squares_vanish = True
        for _ in range(200):
            cs = [rng.randint(-5, 5) for _ in I.basis]
            x = sum((c * e for c, e in zip(cs, I.elements())), A.zero)
            if not (x * x).is_zero():
                squares_vanish = False
                break
        assert is_null_square(I) == squares_vanish


@pytest.mark.parametrize("A", sample_algebras(), ids=repr)
def test_inside_annihilator_iff_null_square(A):
    rng = seeded(12)
    for _ in range(12):
        I = random_ideal(A, rng)
        assert I.issubset(annihilator(A, I)) == is_null_square(I)


@pytest.mark.parametrize("A", sample_algebras(), ids=repr)
def test_annihilator_reverses_inclusion(A):
    rng = seeded(13)
    for _ in range(10):
        I = random_ideal(A, rng)
        J = ideal_sum(I, random_ideal(A, rng))
        assert I <= J
        assert annihilator(A, J) <= annihilator(A, I)


@pytest.mark.parametrize("A", sample_algebras(), ids=repr)
def test_product_commutative_associative(A):
    rng = seeded(14)
    for _ in range(6):
        I, J, K = (random_ideal(A, rng) for _ in range(3))
        assert ideal_product(I, J) == ideal_product(J, I)
        assert ideal_product(ideal_product(I, J), K) == ideal_product(I, ideal_product(J, K))
        meet = ideal_intersection(I, J)
        assert meet <= I and meet <= J and ideal_product(I, J) <= meet


@pytest.mark.parametrize("m,l", [(1, 4), (2, 3), (3, 2)])
def test_powers_multiply(m, l):
    A = truncated_algebra(m, l)
    for k, j in itertools.product(range(l + 2), repeat=2):
        prod = ideal_product(maximal_power(A, k), maximal_power(A, j))
        assert prod == maximal_power(A, min(k + j, l + 1))
    assert ideal_power(maximal_power(A, 1), 2) == maximal_power(A, 2)


@given(st.integers(1, 2), st.integers(1, 4), st.data())
def test_coordinates_reconstruct(m, l, data):
    A = truncated_algebra(m, l)
    k = data.draw(st.integers(0, l + 1))
    I = maximal_power(A, k)
    cs = data.draw(st.lists(st.integers(-3, 3), min_size=I.dim, max_size=I.dim))
    x = sum((c * e for c, e in zip(cs, I.elements())), A.zero)
    assert tuple(I.coordinates(x)) == tuple(cs)


def test_fat_point_ideals():
    A = fat_point(2)
    m = maximal_power(A, 1)
    assert is_null_square(m) and annihilator(A, m) == m
