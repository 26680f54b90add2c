"""Job files and the text form of characteristic cycles.

A job is a list of statements separated by newlines or ``;``::

    ring x1..x6
    ideal x1*x5 - x2*x4, x1*x6 - x3*x4, x2*x6 - x3*x5
    cech

Statements:

    ring NAMES        names separated by commas or blanks; ``x1..x6`` expands
    ideal GENS        comma-separated polynomials; ``g | h`` is the generator
                      g*h with the ordered factor list (g, h)
    module CYCLE      the module M by its cycle, e.g. ``T*[x] + T*[x, y]``
    split CYCLE | ... a direct-sum split of the module
    strategy NAME     single or iterative
    format NAME       text or structured
    localize | cech | lyubeznik | decompose

``#`` starts a comment.  A cycle is a sum of terms ``[m*]T*[g1, ..., gk]``,
where the g's generate the prime of the base variety; ``T*[0]`` is the
zero section and ``0`` the zero cycle.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..cech import decompose_direct_sum
from ..cycles import CharCycle, ConormalComponent, zero_section
from ..decompose import UnresolvedComponentError, minimal_primes
from ..groebner import Ideal
from ..polycore import Polynomial, PolynomialSyntaxError, Ring

COMMANDS = ("localize", "cech", "lyubeznik", "decompose")
STRATEGIES = ("single", "iterative")
FORMATS = ("text", "structured")


class JobSyntaxError(ValueError):
    """Invalid job text; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int, column: int, source: str = ""):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"line {line}, column {column}: {message}")

    def render(self) -> str:
        out = f"error: {self}"
        if self.source:
            out += f"\n  {self.source}\n  {' ' * (self.column - 1)}^"
        return out


@dataclass(frozen=True)
class JobSpec:
    ring: Ring
    generators: tuple[tuple[Polynomial, ...], ...]
    command: str
    module: CharCycle | None = None
    split: tuple[CharCycle, ...] | None = None
    strategy: str = "iterative"
    format: str = "text"

    @property
    def cotangent(self) -> Ring:
        return Ring.cotangent(self.ring.names)

    @property
    def ideal(self) -> list[Polynomial]:
        """Generators as products of their factor lists."""
        out = []
        for fs in self.generators:
            p = fs[0]
            for g in fs[1:]:
                p = p * g
            out.append(p)
        return out

    @property
    def factor_lists(self) -> list[list[Polynomial]]:
        return [list(fs) for fs in self.generators]

    def module_cycle(self) -> CharCycle:
        return self.module if self.module is not None else zero_section(self.cotangent)


# -- statements ------------------------------------------------------------------


@dataclass
class _Stmt:
    word: str
    body: str
    line: int
    col: int  # column of body[0]
    source: str
    word_col: int = 1

    def error(self, message: str, offset: int = 0) -> JobSyntaxError:
        return JobSyntaxError(message, self.line, self.col + offset, self.source)

    def word_error(self, message: str) -> JobSyntaxError:
        return JobSyntaxError(message, self.line, self.word_col, self.source)


def _statements(text: str) -> list[_Stmt]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        start = 0
        for piece in line.split(";"):
            stripped = piece.lstrip()
            lead = len(piece) - len(stripped)
            stripped = stripped.rstrip()
            if stripped:
                m = re.match(r"\S+", stripped)
                word = m.group(0)
                rest = stripped[m.end():]
                body = rest.lstrip()
                col = start + lead + m.end() + (len(rest) - len(body)) + 1
                out.append(_Stmt(word, body, lineno, col, raw, start + lead + 1))
            start += len(piece) + 1
    return out


_RANGE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*?)(\d+)\.\.([A-Za-z_][A-Za-z0-9_]*?)(\d+)$")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


def _parse_ring(st: _Stmt) -> Ring:
    names: list[str] = []
    for m in re.finditer(r"[^\s,]+", st.body):
        tok = m.group(0)
        r = _RANGE.match(tok)
        if r:
            if r.group(1) != r.group(3):
                raise st.error(f"range {tok!r} mixes prefixes", m.start())
            lo, hi = int(r.group(2)), int(r.group(4))
            if lo > hi:
                raise st.error(f"empty range {tok!r}", m.start())
            names.extend(f"{r.group(1)}{i}" for i in range(lo, hi + 1))
        elif _NAME.match(tok):
            names.append(tok)
        else:
            raise st.error(f"invalid variable name {tok!r}", m.start())
    if not names:
        raise st.error("ring needs at least one variable")
    if len(set(names)) != len(names):
        dup = next(n for n in names if names.count(n) > 1)
        raise st.error(f"duplicate variable {dup!r}")
    return Ring(names)


def _pieces(body: str, sep: str) -> list[tuple[str, int]]:
    """Split on ``sep`` outside brackets, keeping offsets."""
    out, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append((body[start:i], start))
            start = i + 1
    out.append((body[start:], start))
    return out


def _parse_poly(ring: Ring, text: str, st: _Stmt, offset: int) -> Polynomial:
    lead = len(text) - len(text.lstrip())
    try:
        return ring.parse(text)
    except PolynomialSyntaxError as e:
        raise st.error(str(e).rsplit(" at column", 1)[0], offset + e.column - 1) from None
    except ValueError as e:
        raise st.error(str(e), offset + lead) from None


def _parse_ideal(ring: Ring, st: _Stmt) -> tuple[tuple[Polynomial, ...], ...]:
    gens = []
    for text, off in _pieces(st.body, ","):
        factors = []
        for ftext, foff in _pieces(text, "|"):
            if not ftext.strip():
                raise st.error("empty generator", off + foff)
            p = _parse_poly(ring, ftext, st, off + foff)
            if not p:
                lead = len(ftext) - len(ftext.lstrip())
                raise st.error("zero generator", off + foff + lead)
            factors.append(p)
        gens.append(tuple(factors))
    return tuple(gens)


_TERM = re.compile(r"\s*(?:(\d+)\s*\*\s*)?T\*\[([^\]]*)\]\s*$")


def parse_cycle(text: str, ring2: Ring, where: _Stmt | None = None, offset: int = 0) -> CharCycle:
    """Read a cycle written as ``m*T*[g1, ...] + ...`` over the cotangent ring."""

    def fail(msg, off=0):
        if where is not None:
            return where.error(msg, offset + off)
        return JobSyntaxError(msg, 1, off + 1, text)

    if text.strip() == "0":
        return CharCycle(ring2)
    base = ring2.base_ring()
    items = []
    for term, off in _pieces(text, "+"):
        m = _TERM.match(term)
        if not m:
            raise fail(f"expected a term m*T*[...], got {term.strip()!r}", off)
        mult = int(m.group(1) or 1)
        if mult < 1:
            raise fail("multiplicities must be positive", off)
        gens = []
        inner_off = off + m.start(2)
        for g, goff in _pieces(m.group(2), ","):
            if g.strip() in ("", "0"):
                continue
            try:
                gens.append(base.parse(g))
            except PolynomialSyntaxError as e:
                raise fail(str(e).rsplit(" at column", 1)[0], inner_off + goff + e.column - 1) from None
        Z = Ideal(base, gens).reduced()
        if Z.is_unit():
            raise fail("a component needs a proper ideal", off)
        if gens:
            try:
                primes = minimal_primes(Z)
            except UnresolvedComponentError:
                primes = []
            if len(primes) != 1 or primes[0] != Z:
                raise fail(f"({', '.join(map(str, gens))}) is not a prime ideal", off)
        items.append((ConormalComponent.over(Z, ring2), mult))
    return CharCycle(ring2, items)


def format_cycle(cc: CharCycle) -> str:
    return repr(cc)


def parse_job(text: str, **overrides) -> JobSpec:
    """Parse job text; keyword overrides (e.g. from flags) win over statements."""
    ring = None
    gens = None
    command = None
    module = module_st = None
    split_st = None
    opts = {"strategy": "iterative", "format": "text"}
    for st in _statements(text):
        w = st.word
        if w == "ring":
            if ring is not None:
                raise st.word_error("ring declared twice")
            ring = _parse_ring(st)
            continue
        if w in COMMANDS:
            if st.body:
                raise st.error(f"{w} takes no arguments")
            if command is not None:
                raise st.word_error(f"second command {w!r}")
            command = w
            continue
        if w in ("strategy", "format"):
            allowed = STRATEGIES if w == "strategy" else FORMATS
            if st.body not in allowed:
                raise st.error(f"{w} must be one of {', '.join(allowed)}")
            opts[w] = st.body
            continue
        if w not in ("ideal", "module", "split"):
            raise st.word_error(f"unknown statement {w!r}")
        if ring is None:
            raise st.word_error("declare the ring first")
        if w == "ideal":
            if gens is not None:
                raise st.word_error("ideal declared twice")
            if not st.body:
                raise st.error("ideal needs generators")
            gens = _parse_ideal(ring, st)
        elif w == "module":
            module = parse_cycle(st.body, Ring.cotangent(ring.names), st)
            module_st = st
        else:
            split_st = st
    if ring is None:
        raise JobSyntaxError("missing ring declaration", 1, 1, text.splitlines()[0] if text.strip() else "")
    if command is None:
        raise JobSyntaxError("missing command (localize, cech, lyubeznik or decompose)", 1, 1)
    if gens is None:
        raise JobSyntaxError(f"{command} needs an ideal", 1, 1)
    for key, value in overrides.items():
        if value is not None:
            opts[key] = value
    if opts["strategy"] not in STRATEGIES:
        raise JobSyntaxError(f"unknown strategy {opts['strategy']!r}", 1, 1)
    if opts["format"] not in FORMATS:
        raise JobSyntaxError(f"unknown format {opts['format']!r}", 1, 1)
    if command == "lyubeznik" and module is not None:
        raise JobSyntaxError("lyubeznik works with M = R; drop the module statement", module_st.line, 1, module_st.source)
    ring2 = Ring.cotangent(ring.names)
    split = None
    split_text = opts.pop("split", None)
    if split_text is not None:
        split_st = _Stmt("split", split_text, 1, 1, split_text)
    if split_st is not None:
        if command != "cech":
            raise split_st.error("a split only applies to cech")
        split = tuple(parse_cycle(t, ring2, split_st, off) for t, off in _pieces(split_st.body, "|"))
        M = module if module is not None else zero_section(ring2)
        try:
            decompose_direct_sum(M, split)
        except ValueError as e:
            raise split_st.error(str(e)) from None
    return JobSpec(ring, gens, command, module, split, opts["strategy"], opts["format"])
