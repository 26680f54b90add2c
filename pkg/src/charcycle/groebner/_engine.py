"""Buchberger kernel on packed monomials.

A monomial (optionally tagged with a free-module position) is a single int:

    [position | order-key rows | exponent fields]

Order-key rows are the matrix-order weights, so integer comparison is the
monomial order (position-over-term for modules) and monomial multiplication is
integer addition.  Exponent fields carry a guard bit, which makes divisibility
a single subtraction and mask.

Polynomials inside the kernel are tuples of ``(mono, coeff)`` in descending
order with a monic leading term.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Sequence

from gmpy2 import mpq

EXP_BITS = 12  # exponents < 2**11
KEY_BITS = 18  # weighted row values < 2**18
_FMASK = (1 << EXP_BITS) - 1

Term = tuple[int, mpq]
EPoly = tuple[Term, ...]


class ExponentOverflow(ArithmeticError):
    pass


class Packer:
    """Monomial encoding for one (nvars, order) pair."""

    def __init__(self, nvars: int, rows: Sequence[Sequence[int]]):
        self.n = nvars
        self.rows = [tuple(r) for r in rows]
        self.nrows = len(self.rows)
        self.exp_bits = EXP_BITS * nvars
        self.comp_shift = self.exp_bits + KEY_BITS * self.nrows
        self.expmask = (1 << self.exp_bits) - 1
        self.guards = sum(1 << (EXP_BITS * i + EXP_BITS - 1) for i in range(nvars))
        self.var_mono = []
        for i in range(nvars):
            m = 1 << (EXP_BITS * i)
            for k, row in enumerate(self.rows):
                if row[i]:
                    m += row[i] << (self.exp_bits + KEY_BITS * (self.nrows - 1 - k))
            self.var_mono.append(m)
        self.max_exp = (1 << (EXP_BITS - 1)) - 1
        self.max_row = (1 << KEY_BITS) - 1
        self.row_max_weight = [max(r) if r else 0 for r in self.rows]

    def pack(self, exp: Sequence[int], comp: int = 0) -> int:
        m = comp << self.comp_shift
        total = 0
        for i, e in enumerate(exp):
            if e:
                if e > self.max_exp:
                    raise ExponentOverflow(f"exponent {e} too large")
                m += e * self.var_mono[i]
                total += e
        if total * max(self.row_max_weight) > self.max_row:
            raise ExponentOverflow("degree too large for packed monomials")
        return m

    def exps(self, m: int) -> list[int]:
        return [(m >> (EXP_BITS * i)) & _FMASK for i in range(self.n)]

    def comp(self, m: int) -> int:
        return m >> self.comp_shift

    def degree(self, m: int) -> int:
        return sum(self.exps(m))

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.exps(a), self.exps(b)
        return self.pack([x if x > y else y for x, y in zip(ea, eb)], a >> self.comp_shift)

    def coprime(self, a: int, b: int) -> bool:
        ea, eb = self.exps(a), self.exps(b)
        return not any(x and y for x, y in zip(ea, eb))

    def divides(self, a: int, b: int) -> bool:
        """Whether monomial ``a`` divides ``b`` (same position)."""
        if (a >> self.comp_shift) != (b >> self.comp_shift):
            return False
        g = self.guards
        return ((b & self.expmask) + g - (a & self.expmask)) & g == g


class Reducers:
    """Divisor lookup over a growing list of monic polynomials."""

    def __init__(self, packer: Packer, module: bool):
        self.pk = packer
        self.module = module
        self.polys: list[EPoly] = []
        self.lows: list[int] = []
        self.comps: list[int] = []
        self.cache: dict[int, tuple[int, int]] = {}

    def add(self, poly: EPoly) -> None:
        lm = poly[0][0]
        self.polys.append(poly)
        self.lows.append(lm & self.pk.expmask)
        self.comps.append(lm >> self.pk.comp_shift)

    def find(self, m: int) -> EPoly | None:
        hit = self.cache.get(m)
        start = 0
        if hit is not None:
            idx, upto = hit
            if idx >= 0:
                return self.polys[idx]
            start = upto
        lows = self.lows
        g = self.pk.guards
        ml = (m & self.pk.expmask) + g
        if self.module:
            mc = m >> self.pk.comp_shift
            comps = self.comps
            for i in range(start, len(lows)):
                if comps[i] == mc and (ml - lows[i]) & g == g:
                    self.cache[m] = (i, 0)
                    return self.polys[i]
        else:
            for i in range(start, len(lows)):
                if (ml - lows[i]) & g == g:
                    self.cache[m] = (i, 0)
                    return self.polys[i]
        self.cache[m] = (-1, len(lows))
        return None


def reduce_terms(terms: Iterable[Term], red: Reducers, full: bool = True) -> list[Term]:
    """Remainder of a term list (duplicates allowed) modulo ``red``."""
    acc: dict[int, mpq] = {}
    for m, c in terms:
        v = acc.get(m)
        if v is None:
            acc[m] = c
        else:
            v = v + c
            if v:
                acc[m] = v
            else:
                del acc[m]
    heap = [-m for m in acc]
    heapq.heapify(heap)
    pop, push = heapq.heappop, heapq.heappush
    find = red.find
    out: list[Term] = []
    while heap:
        m = -pop(heap)
        c = acc.pop(m, None)
        if c is None:
            continue
        g = find(m)
        if g is None:
            out.append((m, c))
            if not full:
                rest = sorted(acc.items(), reverse=True)
                out.extend(rest)
                return out
            continue
        q = m - g[0][0]
        for gm, gc in g[1:]:
            t = gm + q
            v = acc.get(t)
            if v is None:
                acc[t] = -c * gc
                push(heap, -t)
            else:
                v = v - c * gc
                if v:
                    acc[t] = v
                else:
                    del acc[t]
    return out


def make_monic(terms: list[Term]) -> EPoly:
    c = terms[0][1]
    if c == 1:
        return tuple(terms)
    inv = 1 / c
    return tuple((m, v * inv) for m, v in terms)


def _sugar(terms: Sequence[Term], pk: Packer) -> int:
    return max(pk.degree(m) for m, _ in terms)


def buchberger(polys: Sequence[Sequence[Term]], pk: Packer, module: bool = False) -> list[EPoly]:
    """Reduced Groebner basis (sorted ascending by leading monomial).

    Gebauer-Moeller pair updates, sugar-then-lcm selection.  The product
    criterion is used only for ideals (it fails for modules).
    """
    basis: list[EPoly] = []
    sugar: list[int] = []
    lms: list[int] = []
    active: list[bool] = []
    pairs: dict[tuple[int, int], tuple[int, int]] = {}
    queue: list[tuple[int, int, int, int]] = []
    red = Reducers(pk, module)

    def update(h: int) -> None:
        lm_h = lms[h]
        comp_h = lm_h >> pk.comp_shift
        cand = []
        for g in range(h):
            if not active[g] or (lms[g] >> pk.comp_shift) != comp_h:
                continue
            cand.append((g, pk.lcm(lms[g], lm_h), (not module) and pk.coprime(lms[g], lm_h)))
        keep = []
        for idx, (g, l, cop) in enumerate(cand):
            if cop:
                keep.append((g, l, cop))
                continue
            dominated = False
            for g2, l2, _ in cand[idx + 1:]:
                if pk.divides(l2, l):
                    dominated = True
                    break
            if not dominated:
                for g2, l2, _ in keep:
                    if pk.divides(l2, l):
                        dominated = True
                        break
            if not dominated:
                keep.append((g, l, cop))
        # old pairs killed by the chain criterion
        dead = []
        for (i, j), (l, _s) in pairs.items():
            if pk.divides(lm_h, l):
                if pk.lcm(lms[i], lm_h) != l and pk.lcm(lms[j], lm_h) != l:
                    dead.append((i, j))
        for key in dead:
            del pairs[key]
        dh = pk.degree(lm_h)
        for g, l, cop in keep:
            if cop:
                continue
            dl = pk.degree(l)
            s = max(sugar[g] - pk.degree(lms[g]), sugar[h] - dh) + dl
            pairs[(g, h)] = (l, s)
            heapq.heappush(queue, (s, l, g, h))
        for g in range(h):
            if active[g] and pk.divides(lm_h, lms[g]):
                active[g] = False

    def add(poly: EPoly, s: int) -> None:
        basis.append(poly)
        sugar.append(s)
        lms.append(poly[0][0])
        active.append(True)
        red.add(poly)
        update(len(basis) - 1)

    start = []
    for p in polys:
        terms = sorted(((m, c) for m, c in p if c), reverse=True)
        if terms:
            start.append((terms[0][0], terms))
    start.sort()
    for _lm, terms in start:
        s = _sugar(terms, pk)
        r = reduce_terms(terms, red)
        if r:
            add(make_monic(r), s)

    while queue:
        s, l, i, j = heapq.heappop(queue)
        if pairs.pop((i, j), None) is None:
            continue
        f, g = basis[i], basis[j]
        qf = l - f[0][0]
        qg = l - g[0][0]
        sp = [(m + qf, c) for m, c in f[1:]]
        sp.extend((m + qg, -c) for m, c in g[1:])
        r = reduce_terms(sp, red)
        if r:
            add(make_monic(r), s)

    return interreduce([basis[i] for i in range(len(basis)) if active[i]], pk, module)


def interreduce(polys: Sequence[EPoly], pk: Packer, module: bool = False) -> list[EPoly]:
    """Reduced basis from a Groebner basis: drop non-minimal, reduce tails."""
    polys = sorted(polys, key=lambda p: p[0][0])
    minimal: list[EPoly] = []
    for p in polys:
        if not any(pk.divides(q[0][0], p[0][0]) for q in minimal):
            minimal.append(p)
    red = Reducers(pk, module)
    for p in minimal:
        red.add(p)
    out = []
    for p in minimal:
        tail = reduce_terms(p[1:], red)
        out.append((p[0],) + tuple(tail))
    return out


def reduce_by_basis(terms: Sequence[Term], basis: Sequence[EPoly], pk: Packer, module: bool = False) -> list[Term]:
    red = Reducers(pk, module)
    for g in basis:
        red.add(g)
    return reduce_terms(terms, red)


def spoly_certificate(basis: Sequence[EPoly], pk: Packer, module: bool = False) -> bool:
    """Check Buchberger's criterion: every S-polynomial reduces to zero."""
    red = Reducers(pk, module)
    for g in basis:
        red.add(g)
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            f, g = basis[a], basis[b]
            if pk.comp(f[0][0]) != pk.comp(g[0][0]):
                continue
            l = pk.lcm(f[0][0], g[0][0])
            qf, qg = l - f[0][0], l - g[0][0]
            sp = [(m + qf, c / f[0][1]) for m, c in f[1:]]
            sp.extend((m + qg, -c / g[0][1]) for m, c in g[1:])
            if reduce_terms(sp, red):
                return False
    return True
