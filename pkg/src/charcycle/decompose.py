"""Minimal and associated primes by factor splitting, and the component
structure of divisor ideals inside the cotangent ring."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import sympy

from .groebner import Ideal, eliminate, intersect, quotient, saturate, saturate_poly
from .hilbert import degree, dimension, hilbert_series
from .polycore import MonomialOrder, Polynomial, Ring


class UnresolvedComponentError(RuntimeError):
    """A leaf of the splitting could not be certified prime."""


@dataclass(frozen=True)
class Component:
    prime: Ideal
    minimal: bool
    dimension: int


class ComponentList(tuple):
    """Tuple of Components, minimal primes first, each group sorted canonically."""

    @property
    def minimal(self) -> list[Ideal]:
        return [c.prime for c in self if c.minimal]

    @property
    def embedded(self) -> list[Ideal]:
        return [c.prime for c in self if not c.minimal]

    @property
    def primes(self) -> list[Ideal]:
        return [c.prime for c in self]


# -- factoring ---------------------------------------------------------------


@lru_cache(maxsize=20_000)
def factors(p: Polynomial) -> tuple[tuple[Polynomial, int], ...]:
    """Irreducible factors over Q with multiplicities (constants dropped)."""
    ring = p.ring
    if p.is_constant():
        return ()
    support = sorted(p.support())
    if len(p.terms) == 1:
        (e,) = p.terms
        return tuple((ring.var(i), e[i]) for i in support)
    syms = sympy.symbols([ring.names[i] for i in support])
    expr = sympy.Poly(sympy.sympify(str(p), locals=dict(zip([ring.names[i] for i in support], syms))), *syms)
    _, flist = sympy.factor_list(expr)
    out = []
    for fac, mult in flist:
        q = ring.parse(str(fac.as_expr()).replace("**", "^"))
        if not q.is_constant():
            out.append((q.monic(), mult))
    return tuple(sorted(out, key=lambda t: (t[0].total_degree(), str(t[0]))))


def _split_element(J: Ideal) -> Polynomial | None:
    """A factor u of some basis element with u not in J."""
    basis = sorted(J.groebner_basis(), key=lambda g: (g.total_degree(), len(g.terms)))
    for g in basis:
        fs = factors(g)
        if len(fs) == 1 and fs[0][1] == 1:
            continue
        for u, _ in fs:
            if not J.contains(u):
                return u
    # a prime is saturated with respect to every variable outside it
    for x in J.ring.gens():
        if not J.contains(x) and saturate_poly(J, x) != J:
            return x
    return None


def _random_poly(ring: Ring, rng: random.Random, deg: int = 2, nterms: int = 4) -> Polynomial:
    p = ring.zero()
    for _ in range(nterms):
        d = rng.randint(0, deg)
        e = [0] * ring.nvars
        for _ in range(d):
            e[rng.randrange(ring.nvars)] += 1
        p = p + ring.monomial(e, rng.randint(-9, 9))
    return p


def looks_prime(P: Ideal, trials: int = 8, seed: int = 0) -> bool:
    """Randomized product test: g, h outside P imply g*h outside P."""
    if P.is_unit():
        return False
    rng = random.Random(seed)
    ring = P.ring
    pool = [g for g in ring.gens() if not P.contains(g)]
    for _ in range(trials):
        g = _random_poly(ring, rng)
        h = _random_poly(ring, rng)
        pool.extend(x for x in (g, h) if not P.contains(x))
    for g, h in zip(pool[::2], pool[1::2]):
        if P.contains(g * h):
            return False
    return True


# -- minimal primes -----------------------------------------------------------


def _keep_minimal(primes: Iterable[Ideal]) -> list[Ideal]:
    uniq: dict[tuple, Ideal] = {}
    for p in primes:
        uniq.setdefault(p.canonical_key(), p)
    ps = sorted(uniq.values(), key=lambda p: (-dimension(p), p.canonical_key()))
    out: list[Ideal] = []
    for p in ps:
        if not any(p.contains_ideal(q) for q in out):
            out.append(p)
    return out


def minimal_primes(I: Ideal) -> list[Ideal]:
    """Inclusion-minimal primes over I, by recursive factor splitting.

    V(J) = V(J : u^inf) u V(J + (u)) for any u; leaves must pass the product test.
    """
    if I.is_unit():
        return []
    leaves: list[Ideal] = []
    work = [I.reduced()]
    seen: set[tuple] = set()
    while work:
        J = work.pop()
        key = J.canonical_key()
        if key in seen or J.is_unit():
            continue
        seen.add(key)
        if any(J.contains_ideal(p) for p in leaves):
            continue
        u = _split_element(J)
        if u is None:
            if not looks_prime(J):
                raise UnresolvedComponentError(f"unresolved component {J}")
            leaves.append(J)
            continue
        work.append((J + [u]).reduced())
        work.append(saturate_poly(J, u).reduced())
    return _keep_minimal(leaves)


# -- primary parts and associated primes ---------------------------------------


def independent_set(P: Ideal) -> tuple[int, ...]:
    """A maximal set U of variables with P ∩ Q[U] = 0 (size dim P)."""
    d = dimension(P)
    lead = [frozenset(i for i, e in enumerate(m) if e) for m in P.leading_exponents()]
    n = P.ring.nvars
    for U in combinations(range(n - 1, -1, -1), d):
        Us = set(U)
        if not any(s <= Us for s in lead):
            return tuple(sorted(U))
    raise ArithmeticError(f"no independent set of size {d} for {P}")


def primary_component(I: Ideal, p: Ideal) -> Ideal:
    """The p-primary component of I for a minimal prime p.

    Kills the other minimal primes with a separator, then extends to
    Q(U)[rest] for an independent set U of p and contracts back.
    """
    from .hilbert import separator

    others = [q for q in minimal_primes(I) if q != p]
    K = saturate_poly(I, separator(p, others)) if others else I
    ring = I.ring
    U = independent_set(p)
    if not U:
        return K
    rest = [i for i in range(ring.nvars) if i not in U]
    order = MonomialOrder.block([(rest, "grevlex"), (U, "grevlex")], ring.nvars)
    h = ring.one()
    for g in K.groebner_basis(order):
        lead_rest = max((tuple(e[i] for i in rest) for e in g.terms), key=lambda r: order.key(_scatter(r, rest, ring.nvars)))
        # coefficient of the leading rest-monomial, a polynomial in U only
        coeff = Polynomial(
            ring,
            {_scatter([e[i] for i in U], U, ring.nvars): c for e, c in g.terms.items() if tuple(e[i] for i in rest) == lead_rest},
            _trusted=True,
        )
        if not coeff.is_constant():
            h = h * coeff
    return saturate_poly(K, h) if not h.is_constant() else K


def _scatter(vals: Sequence[int], idx: Sequence[int], n: int) -> tuple[int, ...]:
    out = [0] * n
    for i, v in zip(idx, vals):
        out[i] = v
    return tuple(out)


def is_associated(I: Ideal, p: Ideal) -> bool:
    """p in Ass(R/I) iff p contains I : (I : p^inf)."""
    if not p.contains_ideal(I):
        return False
    return p.contains_ideal(quotient(I, saturate(I, p)))


def associated_primes(I: Ideal) -> ComponentList:
    """Minimal primes plus embedded primes.

    Ass(R/I) lies in Ass(R/T) u Ass(T/I) with T the intersection of the
    minimal primary components, and T/I is a sum of cyclic modules R/(I : g).
    Candidates found that way are filtered with ``is_associated``.
    """
    if I.is_unit():
        raise ValueError("the unit ideal has no associated primes")
    mins = minimal_primes(I)
    candidates = _embedded_candidates(I, mins)
    emb = []
    keys = {p.canonical_key() for p in mins}
    for p in _keep_unique(candidates):
        if p.canonical_key() in keys:
            continue
        if is_associated(I, p):
            emb.append(p)
            keys.add(p.canonical_key())
    comps = [Component(p, True, dimension(p)) for p in mins]
    emb.sort(key=lambda p: (-dimension(p), p.canonical_key()))
    comps += [Component(p, False, dimension(p)) for p in emb]
    return ComponentList(comps)


def _keep_unique(primes: Iterable[Ideal]) -> list[Ideal]:
    uniq: dict[tuple, Ideal] = {}
    for p in primes:
        uniq.setdefault(p.canonical_key(), p)
    return list(uniq.values())


def _embedded_candidates(I: Ideal, mins: Sequence[Ideal]) -> list[Ideal]:
    T = None
    for p in mins:
        Q = primary_component(I, p)
        T = Q if T is None else intersect(T, Q)
    if T is None or I.contains_ideal(T):
        return []
    out: list[Ideal] = []
    for g in T.groebner_basis():
        if I.contains(g):
            continue
        J = quotient(I, g)
        sub = minimal_primes(J)
        out.extend(sub)
        out.extend(_embedded_candidates(J, sub))
    return out


def refine_embedded(Y: Ideal, f: Polynomial, p: Ideal, C: Ideal | None = None) -> int:
    """Local length of the embedded part of the divisor at p.

    The length of (C : p^inf)/C at the generic point of V(p), read from the
    difference of Hilbert series.  Embedded primes of a divisor have dimension
    below n, so they never carry a characteristic-cycle component; this is the
    number the recursive descent would attach to p.
    """
    if C is None:
        from .conormal import ConormalInput, divisor_ideal

        C = divisor_ideal(ConormalInput(Y, f)).ideal
    comps = associated_primes(C)
    if not any(q == p for q in comps.embedded):
        raise ValueError(f"{p} is not an embedded prime of the divisor")
    return embedded_length(C, p)


def embedded_length(C: Ideal, p: Ideal) -> int:
    """Length of H^0_p(R/C) at p, via Hilbert series of C and C : p^inf."""
    S = saturate(C, p)
    hs_c, hs_s = hilbert_series(C), hilbert_series(S) if not S.is_unit() else None
    num_c = list(hs_c.numerator)
    num_s = list(hs_s.numerator) if hs_s else [0]
    size = max(len(num_c), len(num_s))
    diff = [(num_c[i] if i < len(num_c) else 0) - (num_s[i] if i < len(num_s) else 0) for i in range(size)]
    n = C.ring.nvars
    dim_p = dimension(p)
    q = diff[:]
    codim = 0
    while len(q) > 1 and sum(q) == 0 and any(q):
        acc, r = 0, []
        for a in q[:-1]:
            acc += a
            r.append(acc)
        q = r
        codim += 1
    if not any(q):
        return 0
    if n - codim != dim_p:
        raise ArithmeticError(f"embedded part at {p} has the wrong dimension")
    e, r = divmod(sum(q), degree(p))
    if r:
        raise ArithmeticError("non-integral embedded length")
    return e


# -- divisor ideals --------------------------------------------------------------


def projection(Q: Ideal, base: Ring) -> Ideal:
    """Q ∩ R for Q in the cotangent ring over ``base``."""
    ring = Q.ring
    elim = eliminate(Q, ring.cotangent_indices)
    return Ideal(base, [g.restrict(base) for g in elim.gens]).reduced()


def conormal_components(C: Ideal, base: Ring, conormal=None) -> list[tuple[Ideal, Ideal]]:
    """Minimal primes of a divisor ideal C, as (base prime Z, conormal prime q).

    Every component of V(C) is a conormal variety T*_Z X, so the maximal
    base projections of what is left of C name the next components; their
    conormals are then saturated away.  Raises UnresolvedComponentError when
    that structure is violated.
    """
    if conormal is None:
        from .conormal import conormal_ideal as conormal
    ring = C.ring
    n = base.nvars
    out: list[tuple[Ideal, Ideal]] = []
    Q = C
    while not Q.is_unit():
        Zs = minimal_primes(projection(Q, base))
        if not Zs:
            break
        for Z in Zs:
            q = conormal(Z, ring)
            if not q.contains_ideal(Q):
                raise UnresolvedComponentError(f"unresolved component over {Z}: divisor is not conormal there")
            if dimension(q) != n:
                raise UnresolvedComponentError(f"conormal over {Z} has dimension {dimension(q)}")
            out.append((Z, q))
        for _, q in out[-len(Zs):]:
            Q = saturate(Q, q).reduced()
    return out
