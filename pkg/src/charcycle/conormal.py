"""Conormal varieties, the relative conormal T*_{f|Y}, the divisor cut out
by f inside it, and the flat limit that carries T*_Y X to its localization.

Everything lives in the doubled ring R[a_1..a_n] built by
``Ring.cotangent``; base ideals and f live in R.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .groebner import Ideal, intersect, kernel_mod, radical_member, saturate_poly
from .hilbert import dimension
from .polycore import Polynomial, Ring


class ComponentDiesError(ValueError):
    """f vanishes on Y, so the component drops out of the localization."""


@dataclass(frozen=True)
class ConormalInput:
    base: Ideal
    f: Polynomial
    ring: Ring = field(default=None)

    def __post_init__(self):
        R = self.base.ring
        if self.f.ring != R:
            raise ValueError(f"f = {self.f} is not in the base ring {R}")
        if not self.f:
            raise ValueError("f must be nonzero")
        if self.base.is_unit():
            raise ValueError("base ideal must be proper")
        if self.ring is None:
            object.__setattr__(self, "ring", Ring.cotangent(R.names))
        elif self.ring.base_ring() != R:
            raise ValueError("doubled ring does not match the base ring")


@dataclass(frozen=True)
class DivisorIdeal:
    ideal: Ideal
    base: Ideal
    f: Polynomial


def jacobian(gens: Sequence[Polynomial], n: int) -> list[list[Polynomial]]:
    return [g.gradient(range(n)) for g in gens]


def minors(matrix: list[list[Polynomial]], size: int) -> list[Polynomial]:
    """All size x size minors, by Laplace expansion along the first row with memoization."""
    if size == 0:
        return []
    nrows = len(matrix)
    ncols = len(matrix[0]) if matrix else 0
    if size > min(nrows, ncols):
        return []

    @lru_cache(maxsize=None)
    def det(rows: tuple[int, ...], cols: tuple[int, ...]) -> Polynomial:
        if len(rows) == 1:
            return matrix[rows[0]][cols[0]]
        r0, rest = rows[0], rows[1:]
        total = None
        for k, c in enumerate(cols):
            entry = matrix[r0][c]
            if not entry:
                continue
            sub = det(rest, cols[:k] + cols[k + 1:])
            if not sub:
                continue
            term = entry * sub
            if k % 2:
                term = -term
            total = term if total is None else total + term
        return total if total is not None else matrix[0][0].ring.zero()

    out = []
    for rows in combinations(range(nrows), size):
        for cols in combinations(range(ncols), size):
            d = det(rows, cols)
            if d:
                out.append(d)
    return out


def codimension(I: Ideal) -> int:
    return I.ring.nvars - dimension(I)


def singular_locus_ideal(I: Ideal) -> Ideal:
    """I + (c x c Jacobian minors), c = codim V(I); (1) when V(I) is smooth."""
    R = I.ring
    c = codimension(I)
    if c == 0:
        return Ideal(R, [R.one()])
    gens = list(I.gens)
    return Ideal(R, gens + minors(jacobian(gens, R.nvars), c))


def bad_locus_ideal(I: Ideal, f: Polynomial) -> Ideal:
    """Ideal of {x in Y : grad f(x) = 0} union Sing(Y)."""
    R = I.ring
    critical = Ideal(R, list(I.gens) + f.gradient())
    return intersect(critical, singular_locus_ideal(I))


def _saturating_element(bad: Ideal, base: Ideal) -> Polynomial | None:
    # J_sat is prime (the conormal), so J : h^inf = J : (I°)^inf for any
    # h in I° that does not vanish on Y.
    if bad.is_unit():
        return None
    cands = [g for g in bad.groebner_basis() if not base.contains(g)]
    if not cands:
        raise ComponentDiesError("bad locus contains Y")
    return min(cands, key=lambda g: (g.total_degree(), len(g.terms), str(g)))


def _cotangent_ideal(rows: list[list[Polynomial]], modulus: Ideal, ring2: Ring) -> Ideal:
    """modulus + ({a . b : b in ker(rows mod modulus)}) in R[a]."""
    n = modulus.ring.nvars
    avars = [ring2.var(n + i) for i in range(n)]
    gens = [g.embed(ring2) for g in modulus.gens]
    if not rows:
        return Ideal(ring2, gens + avars)
    K = kernel_mod(rows, modulus)
    for b in K.gens:
        form = ring2.zero()
        for a, entry in zip(avars, b):
            if entry:
                form = form + a * entry.embed(ring2)
        if form:
            gens.append(form)
    return Ideal(ring2, gens)


def relative_conormal_ideal(inp: ConormalInput) -> Ideal:
    """J_sat, whose radical is the ideal of T*_{f|Y}."""
    I, f, ring2 = inp.base, inp.f, inp.ring
    if radical_member(f, I):
        raise ComponentDiesError(f"{f} vanishes on V{I}")
    rows = [f.gradient()] + [g.gradient() for g in I.gens]
    J = _cotangent_ideal(rows, I, ring2)
    h = _saturating_element(bad_locus_ideal(I, f), I)
    if h is None:
        return J.reduced()
    return saturate_poly(J, h.embed(ring2)).reduced()


def divisor_ideal(inp: ConormalInput) -> DivisorIdeal:
    """C = J_sat + (f) + J_f."""
    I, f, ring2 = inp.base, inp.f, inp.ring
    J_sat = relative_conormal_ideal(inp)
    rows = [f.gradient()] + [g.gradient() for g in I.gens]
    If = Ideal(I.ring, list(I.gens) + [f])
    J_f = _cotangent_ideal(rows, If, ring2)
    C = Ideal(ring2, list(J_sat.gens) + [f.embed(ring2)] + list(J_f.gens))
    return DivisorIdeal(C.reduced(), I, f)


def conormal_ideal(P: Ideal, ring2: Ring | None = None) -> Ideal:
    """Ideal of the conormal variety T*_Y X for a prime P = I(Y) of R."""
    R = P.ring
    ring2 = ring2 or Ring.cotangent(R.names)
    rows = [g.gradient() for g in P.gens]
    J = _cotangent_ideal(rows, P, ring2)
    sing = singular_locus_ideal(P)
    h = _saturating_element(sing, P)
    if h is None:
        return J.reduced()
    return saturate_poly(J, h.embed(ring2)).reduced()


def localization_limit_ideal(q: Ideal, f: Polynomial) -> Ideal:
    """Ideal of lim_{s->0} (V(q) + s dlog f) in R[a].

    Each generator G(x, a) of the conic prime q becomes G(x, f*a - s*grad f);
    the result is saturated by f*s and then s is set to 0.  Its cycle is
    T*_Y X plus the divisor that localizing at f attaches to Y = V(q ∩ R).
    """
    ring2 = q.ring
    n = ring2.base
    big = ring2.extend([ring2.fresh_name("s")])
    s = big.var(big.nvars - 1)
    fb = f.embed(big)
    grad = [g.embed(big) for g in f.gradient()]
    sub = {n + i: fb * big.var(n + i) - s * grad[i] for i in range(n)}
    moved = Ideal(big, [g.embed(big).substitute(sub) for g in q.gens])
    weights = [1] * (2 * n) + [2]
    sat = saturate_poly(moved, fb * s, weights)
    last = big.nvars - 1
    return Ideal(ring2, [g.substitute({last: 0}).restrict(ring2) for g in sat.gens]).reduced()
