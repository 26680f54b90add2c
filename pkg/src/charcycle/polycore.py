"""Exact multivariate polynomials over the rationals.

Coefficients are ``gmpy2.mpq`` values kept in lowest terms; a polynomial is an
immutable map from exponent tuples to nonzero coefficients.  Monomial orders
are matrix orders given by non-negative integer weight rows, which covers
lex, grevlex, weighted grevlex and block (elimination) orders.
"""

from __future__ import annotations

import re
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

Exponent = tuple[int, ...]


class RingMismatchError(ValueError):
    pass


class PolynomialSyntaxError(ValueError):
    """Parse failure; ``column`` is 1-based within the parsed text."""

    def __init__(self, message: str, column: int, text: str = ""):
        self.column = column
        self.text = text
        super().__init__(f"{message} at column {column}")


class Ring:
    """Polynomial ring Q[names].

    ``base`` marks a block split: the first ``base`` variables are base
    coordinates and the next ``base`` are their cotangent partners.
    """

    __slots__ = ("names", "base", "_index", "_hash")

    def __init__(self, names: Sequence[str], base: int | None = None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not _IDENT.fullmatch(name):
                raise ValueError(f"invalid variable name {name!r}")
        if base is not None and len(names) != 2 * base:
            raise ValueError("block-split ring needs 2*base variables")
        self.names = names
        self.base = base
        self._index = {v: i for i, v in enumerate(names)}
        self._hash = hash((names, base))

    @classmethod
    def cotangent(cls, base_names: Sequence[str], prefix: str = "a") -> "Ring":
        """R[a_1..a_n] for R = Q[base_names]; cotangent names avoid clashes."""
        base_names = tuple(base_names)
        taken = set(base_names)
        cot = []
        for i, name in enumerate(base_names, 1):
            cand = f"{prefix}{i}" if len(base_names) > 1 else prefix
            while cand in taken:
                cand = "_" + cand
            taken.add(cand)
            cot.append(cand)
        return cls(base_names + tuple(cot), base=len(base_names))

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def is_split(self) -> bool:
        return self.base is not None

    def base_ring(self) -> "Ring":
        if self.base is None:
            raise ValueError("ring has no block split")
        return Ring(self.names[: self.base])

    @property
    def base_indices(self) -> tuple[int, ...]:
        return tuple(range(self.base)) if self.base is not None else ()

    @property
    def cotangent_indices(self) -> tuple[int, ...]:
        if self.base is None:
            return ()
        return tuple(range(self.base, 2 * self.base))

    def extend(self, names: Sequence[str]) -> "Ring":
        """Ring with extra variables appended (block split dropped)."""
        return Ring(self.names + tuple(names))

    def fresh_name(self, stem: str = "t") -> str:
        name = stem
        while name in self._index:
            name = "_" + name
        return name

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def var(self, which: int | str) -> "Polynomial":
        i = self.index(which) if isinstance(which, str) else which
        exp = [0] * self.nvars
        exp[i] = 1
        return Polynomial(self, {tuple(exp): mpq(1)}, _trusted=True)

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {}, _trusted=True)

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = mpq(c)
        if not c:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c}, _trusted=True)

    def monomial(self, exp: Sequence[int], coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exp): mpq(coeff)})

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()

    def __eq__(self, other):
        return isinstance(other, Ring) and self.names == other.names and self.base == other.base

    def __hash__(self):
        return self._hash

    def __repr__(self):
        split = f", base={self.base}" if self.base is not None else ""
        return f"Ring({list(self.names)}{split})"


class MonomialOrder:
    """Matrix monomial order: compare weight rows lexicographically.

    All rows are non-negative integer vectors and the matrix has full rank, so
    the order is total, multiplicative and has 1 as its minimum.
    """

    __slots__ = ("kind", "rows", "nvars", "_hash")

    def __init__(self, kind: str, rows: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(w) for w in r) for r in rows)
        if not rows:
            raise ValueError("order needs at least one row")
        n = len(rows[0])
        if any(len(r) != n for r in rows) or any(w < 0 for r in rows for w in r):
            raise ValueError("order rows must be non-negative and of equal length")
        self.kind = kind
        self.rows = rows
        self.nvars = n
        self._hash = hash(rows)

    @classmethod
    def grevlex(cls, n: int) -> "MonomialOrder":
        return cls("grevlex", _grevlex_rows(list(range(n)), n))

    @classmethod
    def lex(cls, n: int) -> "MonomialOrder":
        return cls("lex", [[1 if j == i else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def weighted_grevlex(cls, weights: Sequence[int], perm: Sequence[int] | None = None) -> "MonomialOrder":
        """Grevlex refining a weight vector; ``perm`` lists variables from largest to smallest."""
        n = len(weights)
        perm = list(range(n)) if perm is None else list(perm)
        rows = [list(weights)]
        for k in range(1, n):
            rows.append([weights[v] if v in perm[: n - k] else 0 for v in range(n)])
        return cls("wgrevlex", rows)

    @classmethod
    def elimination(cls, n: int, eliminate: Iterable[int]) -> "MonomialOrder":
        """Block order: grevlex on ``eliminate`` beats grevlex on the rest."""
        elim = sorted(set(eliminate))
        rest = [i for i in range(n) if i not in set(elim)]
        rows = _grevlex_rows(elim, n) + _grevlex_rows(rest, n)
        return cls("elim", rows)

    @classmethod
    def block(cls, blocks: Sequence[tuple[Sequence[int], str]], n: int) -> "MonomialOrder":
        """General block order from (variable indices, 'grevlex' | 'lex') pairs."""
        rows: list[list[int]] = []
        for idx, inner in blocks:
            idx = list(idx)
            if inner == "grevlex":
                rows += _grevlex_rows(idx, n)
            elif inner == "lex":
                rows += [[1 if j == i else 0 for j in range(n)] for i in idx]
            else:
                raise ValueError(f"unknown inner order {inner!r}")
        return cls("block", rows)

    def key(self, exp: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(w * e for w, e in zip(r, exp) if w) for r in self.rows)

    def compare(self, e1: Sequence[int], e2: Sequence[int]) -> int:
        k1, k2 = self.key(e1), self.key(e2)
        return (k1 > k2) - (k1 < k2)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.rows == other.rows

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"MonomialOrder({self.kind!r}, nvars={self.nvars})"


def _grevlex_rows(idx: list[int], n: int) -> list[list[int]]:
    rows = []
    for k in range(len(idx)):
        keep = set(idx[: len(idx) - k])
        rows.append([1 if j in keep else 0 for j in range(n)])
    return rows


_GREVLEX_CACHE: dict[int, MonomialOrder] = {}


def grevlex(n: int) -> MonomialOrder:
    order = _GREVLEX_CACHE.get(n)
    if order is None:
        order = _GREVLEX_CACHE[n] = MonomialOrder.grevlex(n)
    return order


def _grevlex_key(exp: Exponent) -> tuple:
    return (sum(exp), tuple(-e for e in reversed(exp)))


class Polynomial:
    """Immutable polynomial over Q with canonical (sparse) storage."""

    __slots__ = ("ring", "terms", "__dict__")

    def __init__(self, ring: Ring, terms: Mapping[Exponent, object], _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self.terms = dict(terms)
        else:
            n = ring.nvars
            clean: dict[Exponent, mpq] = {}
            for exp, c in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != n or any(e < 0 for e in exp):
                    raise ValueError(f"bad exponent {exp} for {ring}")
                c = mpq(c)
                if c:
                    clean[exp] = clean.get(exp, mpq(0)) + c
                    if not clean[exp]:
                        del clean[exp]
            self.terms = clean

    # -- basic structure -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    @cached_property
    def sorted_terms(self) -> list[tuple[Exponent, mpq]]:
        """Terms in descending grevlex order (the canonical order)."""
        return sorted(self.terms.items(), key=lambda t: _grevlex_key(t[0]), reverse=True)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        if weights is None:
            degs = {sum(e) for e in self.terms}
        else:
            degs = {sum(w * x for w, x in zip(weights, e)) for e in self.terms}
        return len(degs) <= 1

    def support(self) -> set[int]:
        """Indices of variables that occur."""
        return {i for e in self.terms for i, x in enumerate(e) if x}

    def leading_term(self, order: MonomialOrder | None = None) -> tuple[mpq, Exponent]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        if order is None:
            exp, c = self.sorted_terms[0]
        else:
            exp = max(self.terms, key=order.key)
            c = self.terms[exp]
        return c, exp

    def lm(self, order: MonomialOrder | None = None) -> Exponent:
        return self.leading_term(order)[1]

    def lc(self, order: MonomialOrder | None = None) -> mpq:
        return self.leading_term(order)[0]

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self.terms:
            return self
        c = self.lc(order)
        if c == 1:
            return self
        inv = 1 / c
        return Polynomial(self.ring, {e: v * inv for e, v in self.terms.items()}, _trusted=True)

    def primitive(self) -> "Polynomial":
        """Scale to integer coefficients with gcd 1 and positive leading coefficient."""
        if not self.terms:
            return self
        from math import gcd, lcm

        den = 1
        for v in self.terms.values():
            den = lcm(den, int(v.denominator))
        nums = [int(v * den) for v in self.terms.values()]
        g = 0
        for x in nums:
            g = gcd(g, x)
        scale = mpq(den, g)
        if self.lc() < 0:
            scale = -scale
        return self.scale(scale)

    # -- arithmetic ------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        c = mpq(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        out: dict[Exponent, mpq] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial(self.ring, {e: c for e, c in out.items() if c}, _trusted=True)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, exp: Sequence[int], c=1) -> "Polynomial":
        c = mpq(c)
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(e, exp)): v * c for e, v in self.terms.items()},
            _trusted=True,
        )

    def partial(self, var: int | str) -> "Polynomial":
        i = self.ring.index(var) if isinstance(var, str) else var
        if not 0 <= i < self.ring.nvars:
            raise IndexError(f"variable index {i} out of range")
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = c * e[i]
        return Polynomial(self.ring, out, _trusted=True)

    def gradient(self, indices: Iterable[int] | None = None) -> list["Polynomial"]:
        idx = range(self.ring.nvars) if indices is None else indices
        return [self.partial(i) for i in idx]

    def evaluate(self, point: Sequence) -> mpq:
        total = mpq(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * mpq(x) ** k
            total += t
        return total

    def substitute(self, values: Mapping[int, "Polynomial | int"]) -> "Polynomial":
        """Replace variables (by index) with polynomials of the same ring."""
        ring = self.ring
        subs = {i: (v if isinstance(v, Polynomial) else ring.const(v)) for i, v in values.items()}
        powers: dict[tuple[int, int], Polynomial] = {}
        total = ring.zero()
        for e, c in self.terms.items():
            rest = list(e)
            term = ring.const(c)
            for i, p in subs.items():
                k = e[i]
                if k:
                    rest[i] = 0
                    pk = powers.get((i, k))
                    if pk is None:
                        pk = powers[(i, k)] = p ** k
                    term = term * pk
            total = total + term.mul_monomial(rest)
        return total

    def embed(self, target: Ring) -> "Polynomial":
        """Map into ``target`` by variable name."""
        if target == self.ring:
            return self
        pos = [target.index(v) for v in self.ring.names]
        n = target.nvars
        out = {}
        for e, c in self.terms.items():
            d = [0] * n
            for i, k in zip(pos, e):
                d[i] = k
            out[tuple(d)] = c
        return Polynomial(target, out, _trusted=True)

    def restrict(self, target: Ring) -> "Polynomial":
        """Inverse of ``embed``; fails if a variable outside ``target`` occurs."""
        pos = [target._index.get(v) for v in self.ring.names]
        out = {}
        for e, c in self.terms.items():
            d = [0] * target.nvars
            for i, k in zip(pos, e):
                if k:
                    if i is None:
                        raise ValueError(f"{self} involves variables outside {target}")
                    d[i] = k
            out[tuple(d)] = c
        return Polynomial(target, out, _trusted=True)

    # -- comparison / printing -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if not self.terms:
            return other == 0
        return self.is_constant() and next(iter(self.terms.values())) == other

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def format_monomial(names: Sequence[str], exp: Exponent) -> str:
    parts = []
    for name, k in zip(names, exp):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _format_coeff(c: mpq) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    out = []
    for i, (exp, c) in enumerate(p.sorted_terms):
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(p.ring.names, exp)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^/()]))")


class _Parser:
    """Recursive descent over: expr := term (('+'|'-') term)*;
    term := unary ('*' unary)*; unary := ('+'|'-') unary | power;
    power := atom ('^' INT)?; atom := INT ('/' INT)? | IDENT | '(' expr ')'.
    """

    def __init__(self, ring: Ring, text: str):
        self.ring = ring
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
                raise PolynomialSyntaxError(f"unexpected character {text[col - 1]!r}", col, text)
            kind = m.lastgroup
            start = m.start(kind) + 1
            self.tokens.append((kind, m.group(kind), start))
            pos = m.end()
        self.i = 0

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", "", len(self.text) + 1)

    def _next(self):
        tok = self._peek()
        self.i += 1
        return tok

    def _error(self, msg, tok):
        raise PolynomialSyntaxError(msg, tok[2], self.text)

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise PolynomialSyntaxError("empty expression", 1, self.text)
        p = self._expr()
        tok = self._peek()
        if tok[0] != "end":
            self._error(f"unexpected {tok[1]!r} (implicit multiplication is not allowed)", tok)
        return p

    def _expr(self):
        p = self._term()
        while self._peek()[1] in ("+", "-") and self._peek()[0] == "op":
            op = self._next()[1]
            q = self._term()
            p = p + q if op == "+" else p - q
        return p

    def _term(self):
        p = self._unary()
        while self._peek()[0] == "op" and self._peek()[1] == "*":
            self._next()
            p = p * self._unary()
        return p

    def _unary(self):
        tok = self._peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self._next()
            p = self._unary()
            return -p if tok[1] == "-" else p
        return self._power()

    def _power(self):
        p = self._atom()
        if self._peek()[0] == "op" and self._peek()[1] == "^":
            self._next()
            tok = self._next()
            if tok[0] != "num":
                self._error("exponent must be a non-negative integer", tok)
            p = p ** int(tok[1])
        return p

    def _atom(self):
        tok = self._next()
        kind, val, col = tok
        if kind == "num":
            if self._peek()[0] == "op" and self._peek()[1] == "/":
                self._next()
                den = self._next()
                if den[0] != "num":
                    self._error("rational literal needs an integer denominator", den)
                if int(den[1]) == 0:
                    self._error("zero denominator", den)
                return self.ring.const(mpq(int(val), int(den[1])))
            return self.ring.const(int(val))
        if kind == "id":
            if val not in self.ring._index:
                self._error(f"unknown variable {val!r}", tok)
            return self.ring.var(val)
        if kind == "op" and val == "(":
            p = self._expr()
            close = self._next()
            if close[1] != ")":
                self._error("expected ')'", close)
            return p
        if kind == "end":
            if self.i > 1:
                last = self.tokens[self.i - 2]
                self._error(f"dangling {last[1]!r}", last)
            self._error("unexpected end of input", tok)
        self._error(f"unexpected {val!r}", tok)


def parse_polynomial(ring: Ring, text: str) -> Polynomial:
    return ring.parse(text)
