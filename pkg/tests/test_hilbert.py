import random

import pytest

from charcycle.groebner import Ideal, intersect
from charcycle.hilbert import (
    NotAssociatedError,
    UnitIdealError,
    degree,
    dimension,
    hilbert_series,
    monomial_hilbert_series,
    multiplicity_along,
)
from charcycle.polycore import MonomialOrder, Ring

from corpus import random_ideal, random_monomial_gens
from oracles import standard_monomial_count


def test_linear_subspace():
    R = Ring([f"x{i}" for i in range(5)])
    for k in range(1, 5):
        hs = hilbert_series(Ideal(R, R.gens()[:k]))
        assert (hs.dimension, hs.degree) == (5 - k, 1)


def test_fat_point():
    R = Ring(["x"])
    hs = hilbert_series(Ideal(R, [R.var(0) ** 2]))
    assert (hs.dimension, hs.degree) == (0, 2)
    assert hs.coefficients(4) == [1, 1, 0, 0, 0]


def test_zero_ideal_series():
    R = Ring(["x", "y", "z"])
    hs = hilbert_series(Ideal(R, []))
    assert hs.numerator == (1,) and hs.dimension == 3
    assert hs.coefficients(4) == [1, 3, 6, 10, 15]


def test_dimension_examples(R6a):
    assert dimension(Ideal(R6a, [])) == 12
    assert dimension(Ideal(R6a, [R6a.var(i) for i in R6a.cotangent_indices])) == 6
    R2 = Ring(["x", "y"])
    assert dimension(Ideal(R2, [R2.parse("x*y")])) == 1
    with pytest.raises(UnitIdealError):
        dimension(Ideal(R2, [R2.one()]))


def test_degree_examples(minors_ideal):
    assert degree(minors_ideal) == 3
    R = Ring(["x", "y"])
    assert degree(Ideal(R, [R.parse("x + 2*y")])) == 1
    assert degree(Ideal(R, [R.parse("x^2")])) == 2


def test_degree_additive_on_unions():
    R = Ring(["x", "y", "z"])
    I = Ideal(R, [R.parse("x^2 + y^2 - z^2")])
    J = Ideal(R, [R.parse("x - y")])
    assert degree(intersect(I, J)) == degree(I) + degree(J)


def test_dimension_order_independent():
    rng = random.Random(11)
    R = Ring(["x", "y", "z"])
    for _ in range(10):
        I = random_ideal(R, rng)
        if I.is_unit():
            continue
        lex_lead = I.leading_exponents(MonomialOrder.lex(3))
        assert monomial_hilbert_series(lex_lead, 3).dimension == dimension(I)


def test_series_against_counting():
    rng = random.Random(12)
    for _ in range(20):
        gens = random_monomial_gens(3, rng, rng.randint(1, 4), 5)
        hs = monomial_hilbert_series(gens, 3)
        assert hs.coefficients(12) == standard_monomial_count(gens, 3, 12)


def test_multiplicity_examples(minors_ideal):
    R = Ring(["x", "y"])
    x, y = R.gens()
    assert multiplicity_along(Ideal(R, [x**2]), Ideal(R, [x])) == 2
    p = Ideal(R, [x - y])
    assert multiplicity_along(p, p) == 1
    assert multiplicity_along(minors_ideal, minors_ideal) == 1
    with pytest.raises(NotAssociatedError):
        multiplicity_along(Ideal(R, [x**2]), Ideal(R, [y]))


def test_multiplicity_with_other_components():
    R = Ring(["x", "y"])
    x, y = R.gens()
    C = Ideal(R, [x**3 * y])
    assert multiplicity_along(C, Ideal(R, [x])) == 3
    assert multiplicity_along(C, Ideal(R, [y])) == 1
