import random

import pytest

from charcycle.groebner import (
    Ideal,
    eliminate,
    intersect,
    is_groebner,
    kernel_mod,
    normal_form,
    quotient,
    radical_member,
    saturate,
    saturate_poly,
)
from charcycle.polycore import MonomialOrder, Ring

from corpus import random_ideal, random_poly

R3 = Ring(["x", "y", "z"])
x, y, z = R3.gens()
RA = Ring(["x", "a", "b", "c"])


def test_groebner_examples():
    assert {str(g) for g in Ideal(R3, [x, y]).groebner_basis()} == {"x", "y"}
    gb = Ideal(R3, [x**2 - y, y]).groebner_basis()
    assert {str(g) for g in gb} == {"x^2", "y"}


def test_reduced_basis_unique_under_permutation():
    rng = random.Random(1)
    for _ in range(10):
        I = random_ideal(R3, rng)
        J = Ideal(R3, list(reversed(I.gens)))
        assert I.canonical_key() == J.canonical_key()
        assert all(I.contains(g) for g in I.gens)


def test_normal_form_examples():
    assert normal_form(x**3, Ideal(R3, [x])) == R3.zero()
    assert normal_form(y, Ideal(R3, [x])) == y
    f1 = x * y - z**2
    rng = random.Random(2)
    I = Ideal(R3, [f1])
    for _ in range(10):
        h, r = random_poly(R3, rng), random_poly(R3, rng)
        assert normal_form(f1 * h + r, I) == normal_form(r, I)


def test_quotient_examples():
    X, A = RA.var("x"), RA.var("a")
    assert quotient(Ideal(RA, [X * A]), X) == Ideal(RA, [A])
    I = Ideal(R3, [x**2 * y, y * z**3])
    assert quotient(I, R3.one()) == I
    with pytest.raises(ValueError):
        quotient(I, R3.zero())
    rng = random.Random(3)
    f = x * z
    Q = quotient(I, f)
    for _ in range(20):
        g = random_poly(R3, rng)
        assert Q.contains(g) == I.contains(g * f)


def test_saturate_examples():
    X, A, B, C = RA.gens()
    assert saturate(Ideal(RA, [X * A]), Ideal(RA, [X])) == Ideal(RA, [A])
    I = Ideal(RA, [X, C, X * A, X * B])
    assert saturate(I, Ideal(RA, [RA.one()])) == I


def test_saturation_is_quotient_chain_limit():
    rng = random.Random(4)
    for _ in range(10):
        gens = []
        for _ in range(3):
            e = [rng.randint(0, 3) for _ in range(3)]
            gens.append(R3.monomial(e))
        I = Ideal(R3, gens)
        f = R3.var(rng.randrange(3))
        chain = I
        while True:
            nxt = quotient(chain, f)
            if nxt == chain:
                break
            chain = nxt
        assert saturate_poly(I, f) == chain


def test_saturation_paths_agree():
    # the homogeneous fast path against the extra-variable fallback
    hom = Ideal(R3, [x * y - z**2, x**2 * z - y**3, x**3 - y * z**2])
    skew = [1, 2, 5]
    assert not all(g.is_homogeneous(skew) for g in hom.gens)
    for f in (x, y * z, x + y):
        assert saturate_poly(hom, f) == saturate_poly(hom, f, weights=skew)
    rng = random.Random(5)
    for _ in range(8):
        I = Ideal(R3, [random_poly(R3, rng) for _ in range(2)])
        T = saturate_poly(I, x)
        assert T.contains_ideal(I)
        assert saturate_poly(T, x) == T


def test_eliminate_examples():
    Rt = Ring(["t", "x", "y"])
    t, X, Y = Rt.gens()
    E = eliminate(Ideal(Rt, [X - t, Y - t**2]), ["t"])
    assert E == Ideal(Rt, [Y - X**2])
    I = Ideal(R3, [x * y - 1, z**2])
    assert eliminate(I, []) == I


def test_eliminate_minors_divisor(R6a):
    # T*_{D1} projects to the printed ideal (x1, x2, x4, x5)
    names = R6a.names
    gens = ["a3", "a6", "x1", "x2", "x4", "x5"]
    E = eliminate(Ideal(R6a, gens), [i for i, n in enumerate(names) if n.startswith("a")])
    assert {str(g) for g in E.groebner_basis()} == {"x1", "x2", "x4", "x5"}


def test_intersect_examples():
    assert intersect(Ideal(R3, [x]), Ideal(R3, [y])) == Ideal(R3, [x * y])
    I = Ideal(R3, [x**2 - y, z])
    assert intersect(I, Ideal(R3, [R3.one()])) == I
    rng = random.Random(6)
    J = Ideal(R3, [y * z - x])
    K = intersect(I, J)
    for _ in range(20):
        g = random_poly(R3, rng)
        h = g * (x**2 - y) * (y * z - x)
        assert K.contains(h)
        assert K.contains(g) == (I.contains(g) and J.contains(g))


def _apply(A, s):
    return [sum((a * b for a, b in zip(row, s)), A[0][0].ring.zero()) for row in A]


def test_kernel_mod_examples():
    R1 = Ring(["x"])
    K = kernel_mod([[R1.one()]], Ideal(R1, [R1.var(0)]))
    assert [tuple(map(str, v)) for v in K.gens] == [("x",)]
    K = kernel_mod([x.gradient()], Ideal(R3, []))
    assert {tuple(map(str, v)) for v in K.gens} == {("0", "1", "0"), ("0", "0", "1")}
    I = Ideal(R3, [x])
    A = [y.gradient(), x.gradient()]
    K = kernel_mod(A, I)
    assert {tuple(map(str, v)) for v in K.gens} == {("0", "0", "1"), ("x", "0", "0"), ("0", "x", "0")}
    for s in K.gens:
        assert all(I.contains(v) for v in _apply(A, s))


def test_kernel_mod_sound_and_complete_rank1():
    rng = random.Random(7)
    for _ in range(10):
        I = random_ideal(R3, rng, ngens=2, max_deg=2)
        a = random_poly(R3, rng, 2)
        if not a:
            continue
        K = kernel_mod([[a]], I)
        assert all(I.contains(a * s[0]) for s in K.gens)
        assert Ideal(R3, [s[0] for s in K.gens]) == quotient(I, a)


def test_radical_member():
    I = Ideal(R3, [x**3, y**2 * z])
    assert radical_member(x, I)
    assert radical_member(y * z, I)
    assert not radical_member(y, I)


def test_is_groebner_certificate():
    rng = random.Random(8)
    for _ in range(10):
        I = random_ideal(R3, rng)
        for order in (None, MonomialOrder.lex(3)):
            assert is_groebner(I.groebner_basis(order), order)
    assert not is_groebner([x**2 - y, x * y - 1])
