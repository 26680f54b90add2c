import random

import pytest

from charcycle.conormal import (
    ComponentDiesError,
    ConormalInput,
    bad_locus_ideal,
    conormal_ideal,
    divisor_ideal,
    localization_limit_ideal,
    minors,
    relative_conormal_ideal,
    singular_locus_ideal,
)
from charcycle.decompose import minimal_primes, projection
from charcycle.groebner import Ideal
from charcycle.hilbert import dimension
from charcycle.polycore import Ring

R3 = Ring(["x", "y", "z"])
RA = Ring.cotangent(R3.names)
x, y, z = R3.gens()


def ideal(ring, *texts):
    return Ideal(ring, [ring.parse(t) for t in texts])


def test_bad_locus_examples():
    assert bad_locus_ideal(Ideal(R3, []), x).is_unit()
    assert bad_locus_ideal(Ideal(R3, [x]), y).is_unit()
    R1 = Ring(["x"])
    assert bad_locus_ideal(Ideal(R1, []), R1.parse("x^2")) == Ideal(R1, [R1.var(0)])


def test_relative_conormal_examples():
    assert relative_conormal_ideal(ConormalInput(Ideal(R3, []), x)) == ideal(RA, "a2", "a3")
    assert relative_conormal_ideal(ConormalInput(Ideal(R3, [x]), y)) == ideal(RA, "x", "a3")


def test_relative_conormal_of_linear_form():
    # for f = l linear, the conormal relative to l is {a parallel to grad l}
    rng = random.Random(31)
    for _ in range(5):
        c = [rng.randint(-4, 4) for _ in range(3)]
        if not any(c):
            continue
        ell = sum((ci * v for ci, v in zip(c, R3.gens())), R3.zero())
        J = relative_conormal_ideal(ConormalInput(Ideal(R3, []), ell))
        a = [RA.var(3 + i) for i in range(3)]
        minors2 = [c[i] * a[j] - c[j] * a[i] for i in range(3) for j in range(i + 1, 3)]
        assert J == Ideal(RA, [m for m in minors2 if m])


def test_divisor_ideal_examples():
    C = divisor_ideal(ConormalInput(Ideal(R3, []), x))
    assert C.ideal == ideal(RA, "a2", "a3", "x")
    C = divisor_ideal(ConormalInput(Ideal(R3, [x]), y))
    assert C.ideal == ideal(RA, "a3", "x", "y")


def test_divisor_of_minor(R6, R6a, minors):
    C = divisor_ideal(ConormalInput(Ideal(R6, []), minors[0], R6a)).ideal
    bases = {projection(p, R6).canonical_key() for p in minimal_primes(C)}
    assert bases == {
        Ideal(R6, [minors[0]]).canonical_key(),
        Ideal(R6, [R6.var(v) for v in ("x1", "x2", "x4", "x5")]).canonical_key(),
    }


def test_divisor_invariants(R6, R6a, minors):
    inp = ConormalInput(Ideal(R6, [minors[0]]), minors[1], R6a)
    J = relative_conormal_ideal(inp)
    C = divisor_ideal(inp).ideal
    assert C.contains_ideal(J) and C.contains(minors[1].embed(R6a))
    n = 6
    assert dimension(J) == n + 1
    assert dimension(C) == n
    for g in C.groebner_basis():
        degs = {sum(e[n:]) for e in g.terms}
        assert len(degs) == 1
    permuted = ConormalInput(Ideal(R6, [minors[0]]), minors[1], R6a)
    assert divisor_ideal(permuted).ideal == C


def test_permuted_generators_same_conormal():
    I = ideal(R3, "x*y", "z")
    I2 = ideal(R3, "z", "x*y + z")
    f = R3.parse("x + y")
    assert relative_conormal_ideal(ConormalInput(I, f)) == relative_conormal_ideal(ConormalInput(I2, f))


def test_component_dies():
    with pytest.raises(ComponentDiesError):
        relative_conormal_ideal(ConormalInput(Ideal(R3, [x]), x * y))


def test_input_validation():
    with pytest.raises(ValueError):
        ConormalInput(Ideal(R3, []), R3.zero())
    with pytest.raises(ValueError):
        ConormalInput(Ideal(R3, [R3.one()]), x)
    with pytest.raises(ValueError):
        ConormalInput(Ideal(R3, []), Ring(["u"]).var(0))


def test_minors_and_singular_locus():
    R = Ring(["x", "y"])
    m = minors([[R.var(0), R.var(1)], [R.parse("2"), R.parse("3")]], 2)
    assert m == [R.parse("3*x - 2*y")]
    cone = ideal(R3, "x^2 + y^2 - z^2")
    assert singular_locus_ideal(cone) == ideal(R3, "x", "y", "z")


def test_conormal_ideal_of_point_and_cusp():
    assert conormal_ideal(Ideal(R3, R3.gens()), RA) == ideal(RA, "x", "y", "z")
    R2 = Ring(["x", "y"])
    R2a = Ring.cotangent(R2.names)
    q = conormal_ideal(ideal(R2, "y^2 - x^3"), R2a)
    assert dimension(q) == 2
    assert q.contains(R2a.parse("y^2 - x^3"))


def test_limit_ideal_of_zero_section():
    # lim (T*_X X + s dlog x) = T*_X X + T*_{x=0} X
    q = ideal(RA, "a1", "a2", "a3")
    L = localization_limit_ideal(q, x)
    assert L == ideal(RA, "a2", "a3", "x*a1")
