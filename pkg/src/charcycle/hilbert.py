"""Hilbert series, dimension and degree from grevlex leading-term ideals."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .groebner import Ideal, saturate_poly
from .polycore import Polynomial


class UnitIdealError(ValueError):
    """The ideal is (1): its variety is empty."""


class NotAssociatedError(ValueError):
    pass


@dataclass(frozen=True)
class HilbertSeries:
    """HS(t) = numerator(t) / (1 - t)^nvars, plus the reduced data.

    ``numerator`` lists integer coefficients from t^0 upwards.
    """

    numerator: tuple[int, ...]
    nvars: int
    dimension: int
    degree: int

    def coefficients(self, up_to: int) -> list[int]:
        """Values of the Hilbert function in degrees 0..up_to."""
        series = [0] * (up_to + 1)
        for k, c in enumerate(self.numerator):
            if k <= up_to:
                series[k] = c
        for _ in range(self.nvars):
            for d in range(1, up_to + 1):
                series[d] += series[d - 1]
        return series


def _minimalize(gens: Iterable[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    gens = sorted(set(gens), key=sum)
    out: list[tuple[int, ...]] = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(sorted(out))


def _poly_mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _poly_add(p: list[int], q: list[int]) -> list[int]:
    out = [0] * max(len(p), len(q))
    for i, a in enumerate(p):
        out[i] += a
    for i, b in enumerate(q):
        out[i] += b
    return out


@lru_cache(maxsize=200_000)
def _numerator(gens: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    """K-polynomial of a minimal monomial generating set (pivot recursion)."""
    if not gens:
        return (1,)
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    coprime = True
    seen: set[int] = set()
    for s in supports:
        if seen & s:
            coprime = False
            break
        seen |= s
    if coprime:
        out = [1]
        for g in gens:
            d = sum(g)
            out = _poly_mul(out, [1] + [0] * (d - 1) + [-1])
        return tuple(out)
    counts: dict[int, int] = {}
    for s in supports:
        if len(s) > 1:
            for i in s:
                counts[i] = counts.get(i, 0) + 1
    var = max(counts, key=lambda i: (counts[i], -i))
    e = min(g[var] for g in gens if g[var])
    pivot = tuple(e if i == var else 0 for i in range(len(gens[0])))
    plus = _minimalize(gens + (pivot,))
    colon = _minimalize(tuple(tuple(max(a - b, 0) for a, b in zip(g, pivot)) for g in gens))
    left = list(_numerator(plus))
    right = [0] * e + list(_numerator(colon))
    return tuple(_poly_add(left, right))


def monomial_hilbert_series(gens: Sequence[Sequence[int]], nvars: int) -> HilbertSeries:
    """Hilbert series of Q[x]/M for the monomial ideal M generated by ``gens``."""
    gens = [tuple(g) for g in gens]
    if any(not any(g) for g in gens):
        return HilbertSeries((0,), nvars, -1, 0)
    num = list(_numerator(_minimalize(gens))) if gens else [1]
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    # divide out (1 - t) while possible
    q = num[:]
    c = 0
    while sum(q) == 0 and any(q):
        # synthetic division by (1 - t): q = (1 - t) r  =>  r_k = sum_{j<=k} q_j
        r = []
        acc = 0
        for a in q[:-1]:
            acc += a
            r.append(acc)
        q = r
        c += 1
    return HilbertSeries(tuple(num), nvars, nvars - c, sum(q))


def hilbert_series(I: Ideal) -> HilbertSeries:
    """Hilbert series of the leading-term ideal of I's grevlex basis."""
    return monomial_hilbert_series(I.leading_exponents(), I.ring.nvars)


def dimension(I: Ideal) -> int:
    """Krull dimension of V(I); raises UnitIdealError for I = (1)."""
    if I.is_unit():
        raise UnitIdealError(f"{I} is the unit ideal")
    return hilbert_series(I).dimension


def degree(I: Ideal) -> int:
    if I.is_unit():
        raise UnitIdealError(f"{I} is the unit ideal")
    return hilbert_series(I).degree


def separator(p: Ideal, others: Sequence[Ideal]) -> Polynomial:
    """Product over ``others`` of a basis element not in ``p``."""
    s = p.ring.one()
    for q in others:
        for g in q.groebner_basis():
            if not p.contains(g):
                s = s * g
                break
        else:
            raise NotAssociatedError(f"{q} is contained in {p}; not a minimal prime")
    return s


def primary_part_degree(C: Ideal, p: Ideal, others: Sequence[Ideal]) -> int:
    """Degree of the p-primary part of C for a minimal prime p."""
    part = saturate_poly(C, separator(p, others)) if others else C
    if dimension(part) != dimension(p):
        raise NotAssociatedError(f"{p} is not a top-dimensional minimal prime of {C}")
    return degree(part)


def multiplicity_along(C: Ideal, p: Ideal, others: Sequence[Ideal] | None = None) -> int:
    """Length of C at the generic point of V(p): deg(p-primary part) / deg(p).

    ``others`` are the remaining minimal primes of C; computed when omitted.
    """
    if not p.contains_ideal(C):
        raise NotAssociatedError(f"{p} does not contain {C}")
    if others is None:
        from .decompose import minimal_primes

        comps = minimal_primes(C)
        if not any(q == p for q in comps):
            raise NotAssociatedError(f"{p} is not a minimal prime of {C}")
        others = [q for q in comps if q != p]
    e = primary_part_degree(C, p, others)
    e_red = degree(p)
    m, r = divmod(e, e_red)
    if r or m < 1:
        raise ArithmeticError(f"non-integral multiplicity {e}/{e_red} along {p}")
    return m
