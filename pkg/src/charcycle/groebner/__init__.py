"""Ideals over Q[x] and the Groebner-basis operations built on them."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, Sequence

from gmpy2 import mpq

from ..polycore import MonomialOrder, Polynomial, Ring, RingMismatchError, grevlex
from . import _engine
from ._engine import EPoly, Packer

__all__ = [
    "Ideal",
    "Submodule",
    "groebner_basis",
    "normal_form",
    "quotient",
    "saturate",
    "saturate_poly",
    "eliminate",
    "intersect",
    "kernel_mod",
    "radical_member",
    "is_groebner",
    "clear_caches",
    "emitted_bases",
]

_PACKERS: dict[tuple[int, MonomialOrder], Packer] = {}
_GB_MEMO: dict[tuple, list[EPoly]] = {}
_LOCK = threading.Lock()


def packer_for(nvars: int, order: MonomialOrder) -> Packer:
    key = (nvars, order)
    pk = _PACKERS.get(key)
    if pk is None:
        pk = _PACKERS[key] = Packer(nvars, order.rows)
    return pk


def to_engine(p: Polynomial, pk: Packer, comp: int = 0) -> list[tuple[int, mpq]]:
    return [(pk.pack(e, comp), c) for e, c in p.terms.items()]


def from_engine(terms: Iterable[tuple[int, mpq]], ring: Ring, pk: Packer) -> Polynomial:
    return Polynomial(ring, {tuple(pk.exps(m)): c for m, c in terms}, _trusted=True)


def clear_caches() -> None:
    with _LOCK:
        _GB_MEMO.clear()


def emitted_bases() -> list[tuple[Ring, MonomialOrder, list[Polynomial]]]:
    """Every reduced basis the engine has computed since the last ``clear_caches``."""
    with _LOCK:
        items = list(_GB_MEMO.items())
    out = []
    for (ring, order, _), gb in items:
        pk = packer_for(ring.nvars, order)
        out.append((ring, order, [from_engine(p, ring, pk) for p in gb]))
    return out


def _engine_gb(ring: Ring, gens: Sequence[Polynomial], order: MonomialOrder) -> list[EPoly]:
    key = (ring, order, frozenset(gens))
    hit = _GB_MEMO.get(key)
    if hit is not None:
        return hit
    pk = packer_for(ring.nvars, order)
    gb = _engine.buchberger([to_engine(g, pk) for g in gens], pk)
    with _LOCK:
        _GB_MEMO[key] = gb
    return gb


class Ideal:
    """Ideal of a polynomial ring given by generators, with cached bases."""

    def __init__(self, ring: Ring, gens: Iterable[Polynomial | str] = ()):
        self.ring = ring
        clean = []
        seen = set()
        for g in gens:
            if isinstance(g, str):
                g = ring.parse(g)
            if g.ring != ring:
                raise RingMismatchError(f"generator {g} not in {ring}")
            if g and g not in seen:
                seen.add(g)
                clean.append(g)
        self.gens: tuple[Polynomial, ...] = tuple(clean)
        self._gb: dict[MonomialOrder, list[Polynomial]] = {}
        self._egb: dict[MonomialOrder, list[EPoly]] = {}

    # -- bases -----------------------------------------------------------
    def engine_basis(self, order: MonomialOrder | None = None) -> list[EPoly]:
        order = order or grevlex(self.ring.nvars)
        gb = self._egb.get(order)
        if gb is None:
            gb = self._egb[order] = _engine_gb(self.ring, self.gens, order)
        return gb

    def groebner_basis(self, order: MonomialOrder | None = None) -> list[Polynomial]:
        order = order or grevlex(self.ring.nvars)
        gb = self._gb.get(order)
        if gb is None:
            pk = packer_for(self.ring.nvars, order)
            gb = [from_engine(p, self.ring, pk) for p in self.engine_basis(order)]
            self._gb[order] = gb
        return gb

    def reduced(self) -> "Ideal":
        """Same ideal, generated by its reduced grevlex basis."""
        out = Ideal(self.ring, self.groebner_basis())
        out._egb[grevlex(self.ring.nvars)] = self.engine_basis()
        out._gb[grevlex(self.ring.nvars)] = self.groebner_basis()
        return out

    def normal_form(self, p: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
        if p.ring != self.ring:
            raise RingMismatchError(f"{p} not in {self.ring}")
        order = order or grevlex(self.ring.nvars)
        pk = packer_for(self.ring.nvars, order)
        rem = _engine.reduce_by_basis(to_engine(p, pk), self.engine_basis(order), pk)
        return from_engine(rem, self.ring, pk)

    def contains(self, p: Polynomial) -> bool:
        return not self.normal_form(p)

    __contains__ = contains

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def is_unit(self) -> bool:
        gb = self.engine_basis()
        return any(p[0][0] == 0 for p in gb)

    def is_zero(self) -> bool:
        return not self.gens

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def leading_exponents(self, order: MonomialOrder | None = None) -> list[tuple[int, ...]]:
        order = order or grevlex(self.ring.nvars)
        pk = packer_for(self.ring.nvars, order)
        return [tuple(pk.exps(p[0][0])) for p in self.engine_basis(order)]

    def canonical_key(self) -> tuple[str, ...]:
        """Printed reduced grevlex basis; equal ideals give equal keys."""
        return tuple(str(g) for g in self.groebner_basis())

    # -- algebra ---------------------------------------------------------
    def __add__(self, other: "Ideal | Iterable[Polynomial]") -> "Ideal":
        if isinstance(other, Ideal):
            self._same(other)
            extra = other.gens
        else:
            extra = tuple(other)
        return Ideal(self.ring, self.gens + tuple(extra))

    def __mul__(self, other: "Ideal") -> "Ideal":
        self._same(other)
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def __eq__(self, other):
        if not isinstance(other, Ideal) or other.ring != self.ring:
            return NotImplemented
        return self.canonical_key() == other.canonical_key()

    def __hash__(self):
        return hash((self.ring, self.canonical_key()))

    def embed(self, target: Ring) -> "Ideal":
        return Ideal(target, [g.embed(target) for g in self.gens])

    def restrict(self, target: Ring) -> "Ideal":
        return Ideal(target, [g.restrict(target) for g in self.gens])

    def _same(self, other: "Ideal"):
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.gens) or '0'})"

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"


def groebner_basis(I: Ideal, order: MonomialOrder | None = None) -> list[Polynomial]:
    return I.groebner_basis(order)


def normal_form(p: Polynomial, I: Ideal, order: MonomialOrder | None = None) -> Polynomial:
    return I.normal_form(p, order)


def is_groebner(polys: Sequence[Polynomial], order: MonomialOrder | None = None) -> bool:
    """Buchberger's criterion on an explicit list (every S-pair reduces to 0)."""
    if not polys:
        return True
    ring = polys[0].ring
    order = order or grevlex(ring.nvars)
    pk = packer_for(ring.nvars, order)
    basis = []
    for p in polys:
        terms = sorted(to_engine(p, pk), reverse=True)
        basis.append(tuple(terms))
    return _engine.spoly_certificate(basis, pk)


# -- elimination-based operations -----------------------------------------


def eliminate(I: Ideal, variables: Iterable[int | str]) -> Ideal:
    """I intersected with the subring without ``variables`` (same ambient ring)."""
    ring = I.ring
    idx = sorted({ring.index(v) if isinstance(v, str) else v for v in variables})
    if not idx:
        return I
    order = MonomialOrder.elimination(ring.nvars, idx)
    gb = I.groebner_basis(order)
    keep = [g for g in gb if not any(e[i] for e in g.terms for i in idx)]
    return Ideal(ring, keep)


def _with_extra_var(I: Ideal, stem: str = "t") -> tuple[Ring, Polynomial, list[Polynomial]]:
    ring = I.ring
    big = ring.extend([ring.fresh_name(stem)])
    t = big.var(big.nvars - 1)
    return big, t, [g.embed(big) for g in I.gens]


def intersect(I: Ideal, J: Ideal) -> Ideal:
    I._same(J)
    if I.is_zero() or J.is_zero():
        return Ideal(I.ring, [])
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    big, t, igens = _with_extra_var(I)
    jgens = [g.embed(big) for g in J.gens]
    gens = [t * g for g in igens] + [(1 - t) * g for g in jgens]
    elim = eliminate(Ideal(big, gens), [big.nvars - 1])
    return Ideal(I.ring, [g.restrict(I.ring) for g in elim.gens])


def quotient(I: Ideal, f: Polynomial | Ideal) -> Ideal:
    """Ideal quotient (I : f), or (I : J) for an ideal J."""
    if isinstance(f, Ideal):
        I._same(f)
        out = Ideal(I.ring, [I.ring.one()])
        for g in f.gens:
            out = intersect(out, quotient(I, g))
        return out
    if f.ring != I.ring:
        raise RingMismatchError(f"{f} not in {I.ring}")
    if not f:
        raise ValueError("quotient by the zero polynomial")
    if f.is_constant():
        return I
    meet = intersect(I, Ideal(I.ring, [f]))
    return Ideal(I.ring, [_exact_div(g, f) for g in meet.gens])


def _exact_div(p: Polynomial, f: Polynomial) -> Polynomial:
    ring = p.ring
    order = grevlex(ring.nvars)
    pk = packer_for(ring.nvars, order)
    fe = tuple(sorted(to_engine(f.monic(), pk), reverse=True))
    lcf = f.lc()
    quo: list[tuple[int, mpq]] = []
    rem = sorted(to_engine(p, pk), reverse=True)
    lm_f = fe[0][0]
    while rem:
        m, c = rem[0]
        if not pk.divides(lm_f, m):
            raise ArithmeticError(f"{f} does not divide {p}")
        q = m - lm_f
        quo.append((q, c))
        acc = dict(rem)
        for fm, fc in fe:
            t = fm + q
            v = acc.get(t, mpq(0)) - c * fc
            if v:
                acc[t] = v
            else:
                acc.pop(t, None)
        rem = sorted(acc.items(), reverse=True)
    return from_engine(quo, ring, pk).scale(1 / lcf)


def saturate_poly(I: Ideal, f: Polynomial, weights: Sequence[int] | None = None) -> Ideal:
    """(I : f^inf).

    When I and f are homogeneous for ``weights`` (default: standard grading)
    the saturation is read off one weighted-revlex basis.
    """
    if not f:
        raise ValueError("saturation by the zero polynomial")
    if f.is_constant() or I.is_zero():
        return I
    w = list(weights) if weights is not None else [1] * I.ring.nvars
    if all(g.is_homogeneous(w) for g in I.gens) and f.is_homogeneous(w):
        return _saturate_homogeneous(I, f, w)
    big, t, gens = _with_extra_var(I)
    gens.append(1 - t * f.embed(big))
    elim = eliminate(Ideal(big, gens), [big.nvars - 1])
    return Ideal(I.ring, [g.restrict(I.ring) for g in elim.gens])


def _saturate_homogeneous(I: Ideal, f: Polynomial, weights: list[int]) -> Ideal:
    # (I + (y - f)) : y^inf with y of weight deg f placed last in weighted
    # revlex: basis elements divided by their y-content, then y -> f.
    ring = I.ring
    big, y, gens = _with_extra_var(I, "y")
    e0 = next(iter(f.terms))
    d = sum(a * b for a, b in zip(weights, e0))
    gens.append(y - f.embed(big))
    order = MonomialOrder.weighted_grevlex(weights + [d])
    gb = Ideal(big, gens).groebner_basis(order)
    yi = big.nvars - 1
    out = []
    for g in gb:
        k = min(e[yi] for e in g.terms)
        if k:
            g = Polynomial(big, {e[:yi] + (e[yi] - k,): c for e, c in g.terms.items()}, _trusted=True)
        out.append(g)
    fb = f.embed(big)
    result = []
    for g in out:
        if any(e[yi] for e in g.terms):
            g = g.substitute({yi: fb})
        result.append(g.restrict(ring))
    return Ideal(ring, result).reduced()


def saturate(I: Ideal, J: Ideal | Polynomial) -> Ideal:
    """(I : J^inf) as the intersection over generators g of J of (I : g^inf)."""
    if isinstance(J, Polynomial):
        return saturate_poly(I, J)
    I._same(J)
    if J.is_zero():
        raise ValueError("saturation by the zero ideal")
    if J.is_unit():
        return I
    gens = [g for g in J.groebner_basis()]
    out = None
    for g in gens:
        s = saturate_poly(I, g)
        out = s if out is None else intersect(out, s)
    return out


def radical_member(f: Polynomial, I: Ideal) -> bool:
    """f in rad(I), by 1 in I + (1 - t f)."""
    if not f:
        return True
    if I.contains(f):
        return True
    big, t, gens = _with_extra_var(I)
    gens.append(1 - t * f.embed(big))
    return Ideal(big, gens).is_unit()


# -- modules ----------------------------------------------------------------

VectorPolynomial = tuple[Polynomial, ...]


@dataclass(frozen=True)
class Submodule:
    rank: int
    gens: tuple[VectorPolynomial, ...]

    def __post_init__(self):
        for v in self.gens:
            if len(v) != self.rank:
                raise ValueError(f"generator of length {len(v)} in rank-{self.rank} module")


def kernel_mod(A: Sequence[Sequence[Polynomial]], I: Ideal) -> Submodule:
    """Generators of {s in R^k : A s in I R^m} via a position-over-term basis.

    Positions 0..k-1 hold the s-coordinates and rank below the m row positions,
    so basis elements led by an s-position have vanishing row part.
    """
    m = len(A)
    if m == 0:
        raise ValueError("empty matrix")
    k = len(A[0])
    if any(len(row) != k for row in A):
        raise ValueError("ragged matrix")
    ring = I.ring
    for row in A:
        for a in row:
            if a.ring != ring:
                raise RingMismatchError(f"matrix entry {a} not in {ring}")
    order = grevlex(ring.nvars)
    pk = packer_for(ring.nvars, order)
    gens = []
    for j in range(k):
        terms = to_engine(ring.one(), pk, comp=j)
        for r in range(m):
            if A[r][j]:
                terms += to_engine(A[r][j], pk, comp=k + r)
        gens.append(terms)
    for g in I.groebner_basis():
        for r in range(m):
            gens.append(to_engine(g, pk, comp=k + r))
    gb = _engine.buchberger(gens, pk, module=True)
    out = []
    for p in gb:
        if pk.comp(p[0][0]) >= k:
            continue
        coords: list[dict] = [dict() for _ in range(k)]
        for mono, c in p:
            coords[pk.comp(mono)][tuple(pk.exps(mono))] = c
        out.append(tuple(Polynomial(ring, d, _trusted=True) for d in coords))
    return Submodule(k, tuple(out))
