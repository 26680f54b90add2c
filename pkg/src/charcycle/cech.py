"""Čech hypercubes of localizations, pruning, and Lyubeznik numbers."""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Sequence

from .cycles import CharCycle, ConormalComponent, Localizer, default_localizer, localize_cycle, zero_section
from .groebner import Ideal
from .hilbert import dimension
from .polycore import Polynomial, Ring

Vertex = tuple[int, ...]


class SaturationWarning(UserWarning):
    """The module was not built by the pipeline, so the localization maps
    along the cube are not known to be injective; the answer is conditional."""


def vertices(s: int) -> list[Vertex]:
    """All of {0,1}^s, by level and then lexicographically on index sets."""
    return sorted(product((0, 1), repeat=s), key=lambda a: (sum(a), subset(a)))


def subset(alpha: Vertex) -> tuple[int, ...]:
    return tuple(i for i, a in enumerate(alpha) if a)


def from_subset(indices: Iterable[int], s: int) -> Vertex:
    idx = set(indices)
    return tuple(1 if i in idx else 0 for i in range(s))


@dataclass
class Hypercube:
    """CC(M_{f_α}) for every α in {0,1}^s."""

    factors: tuple[Polynomial, ...]
    cycles: dict[Vertex, CharCycle]

    @property
    def s(self) -> int:
        return len(self.factors)

    def __getitem__(self, alpha: Vertex | Iterable[int]) -> CharCycle:
        alpha = tuple(alpha)
        if len(alpha) != self.s or any(a not in (0, 1) for a in alpha):
            alpha = from_subset(alpha, self.s)
        return self.cycles[alpha]

    def level(self, r: int) -> list[Vertex]:
        return [a for a in vertices(self.s) if sum(a) == r]


@dataclass
class PrunedCube:
    factors: tuple[Polynomial, ...]
    cycles: dict[Vertex, CharCycle]
    removed: dict[int, dict[Vertex, CharCycle]] = field(default_factory=dict)

    @property
    def s(self) -> int:
        return len(self.factors)

    def __getitem__(self, alpha):
        alpha = tuple(alpha)
        if len(alpha) != self.s or any(a not in (0, 1) for a in alpha):
            alpha = from_subset(alpha, self.s)
        return self.cycles[alpha]


def _product(fs: Sequence[Polynomial]) -> Polynomial:
    out = fs[0]
    for g in fs[1:]:
        out = out * g
    return out


def build_hypercube(
    cc: CharCycle,
    factors: Sequence[Polynomial | Sequence[Polynomial]],
    localizer: Localizer | None = None,
    strategy: str = "iterative",
    progress: Callable[[Vertex, CharCycle], None] | None = None,
) -> Hypercube:
    """Localize along cube edges: vertex α comes from α minus its last index.

    A generator may be given as an ordered factor list; the iterative
    strategy then localizes at its factors one after another.  With
    strategy "single" every vertex is computed from CC(M) at the product
    f_α.  A zero vertex makes every vertex above it zero.
    """
    if not factors:
        raise ValueError("need at least one factor")
    lists = [[f] if isinstance(f, Polynomial) else list(f) for f in factors]
    if any(not fs or any(not g for g in fs) for fs in lists):
        raise ValueError("factors must be nonzero")
    gens = tuple(_product(fs) for fs in lists)
    loc = localizer or default_localizer()
    s = len(gens)
    cube: dict[Vertex, CharCycle] = {}
    for alpha in vertices(s):
        idx = subset(alpha)
        if not idx:
            cube[alpha] = cc
        else:
            j = idx[-1]
            parent = cube[alpha[:j] + (0,) + alpha[j + 1:]]
            if parent.is_zero():
                cube[alpha] = parent
            elif strategy == "iterative":
                cube[alpha] = localize_cycle(parent, lists[j], "iterative", localizer=loc)
            elif strategy == "single":
                cube[alpha] = localize_cycle(cc, _product([gens[i] for i in idx]), localizer=loc)
            else:
                raise ValueError(f"unknown strategy {strategy!r}")
        if progress is not None:
            progress(alpha, cube[alpha])
    return Hypercube(gens, cube)


def prune(cube: Hypercube) -> PrunedCube:
    """For j = 1..s, strip from each edge α -> α+e_j the components both ends share."""
    cur = dict(cube.cycles)
    removed: dict[int, dict[Vertex, CharCycle]] = {}
    for j in range(cube.s):
        step = {}
        for alpha in vertices(cube.s):
            if alpha[j]:
                continue
            beta = alpha[:j] + (1,) + alpha[j + 1:]
            common = cur[alpha] & cur[beta]
            if common:
                cur[alpha] = cur[alpha] - common
                cur[beta] = cur[beta] - common
                step[alpha] = common
        removed[j] = step
    return PrunedCube(cube.factors, cur, removed)


def local_cohomology_cycles(pruned: PrunedCube) -> dict[int, CharCycle]:
    """CC(H^r) as the sum of the pruned cycles at level r, for r = 0..s."""
    any_cycle = next(iter(pruned.cycles.values()))
    out = {r: CharCycle(any_cycle.ring) for r in range(pruned.s + 1)}
    for alpha, cc in pruned.cycles.items():
        out[sum(alpha)] = out[sum(alpha)] + cc
    return out


def euler_characteristic(cycles: dict) -> Counter:
    """Σ (-1)^level · cycle as a signed count per component key.

    Accepts a vertex map (levels = |α|) or an r ↦ cycle map.
    """
    out: Counter = Counter()
    for where, cc in cycles.items():
        sign = -1 if (sum(where) if isinstance(where, tuple) else where) % 2 else 1
        for k, m in cc.counts().items():
            out[k] += sign * m
    return Counter({k: v for k, v in out.items() if v})


def decompose_direct_sum(cc: CharCycle, split: Sequence[CharCycle]) -> list[CharCycle]:
    """Check that ``split`` partitions ``cc`` as a multiset and return it."""
    if not split:
        raise ValueError("empty split")
    total = CharCycle(cc.ring)
    for part in split:
        if part.ring != cc.ring:
            raise ValueError("split part over a different ring")
        if part.is_zero():
            raise ValueError("split parts must be nonzero")
        total = total + part
    if total != cc:
        raise ValueError("split does not partition the cycle")
    return list(split)


def local_cohomology(
    cc: CharCycle,
    factors: Sequence[Polynomial | Sequence[Polynomial]],
    split: Sequence[CharCycle] | None = None,
    trusted: bool | None = None,
    localizer: Localizer | None = None,
    strategy: str = "iterative",
) -> tuple[dict[int, CharCycle], list[tuple[Hypercube, PrunedCube]]]:
    """CC(H^r_I(M)) for I = (factors), summing per-summand runs over a split.

    ``trusted`` marks M as R itself or a pipeline output; it defaults to
    whether ``cc`` is the zero section.  Untrusted unsplit input warns.
    """
    if trusted is None:
        trusted = cc == zero_section(cc.ring)
    parts = decompose_direct_sum(cc, split) if split is not None else [cc]
    if split is None and not trusted:
        warnings.warn(
            "result assumes every localization map of the Čech complex is injective or has zero "
            "target; this fails e.g. for R ⊕ H^1_(x)(R) unless the direct-sum split is supplied",
            SaturationWarning,
            stacklevel=2,
        )
    total = {r: CharCycle(cc.ring) for r in range(len(factors) + 1)}
    runs = []
    for part in parts:
        cube = build_hypercube(part, factors, localizer, strategy)
        pruned = prune(cube)
        for r, c in local_cohomology_cycles(pruned).items():
            total[r] = total[r] + c
        runs.append((cube, pruned))
    return total, runs


@dataclass(frozen=True)
class LyubeznikTable:
    """λ_{p,i} for 0 <= p <= i <= d."""

    d: int
    entries: tuple[tuple[int, ...], ...]

    def __getitem__(self, key: tuple[int, int]) -> int:
        p, i = key
        return self.entries[p][i]

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def nonzero(self) -> dict[tuple[int, int], int]:
        return {(p, i): v for p, r in enumerate(self.entries) for i, v in enumerate(r) if v}


def origin_component(ring: Ring) -> ConormalComponent:
    base = ring.base_ring()
    return ConormalComponent.over(Ideal(base, base.gens()), ring)


def lyubeznik_table(
    gens: Sequence[Polynomial],
    n: int | None = None,
    localizer: Localizer | None = None,
    progress: Callable[[str, Vertex, CharCycle], None] | None = None,
) -> tuple[LyubeznikTable, dict]:
    """Lyubeznik numbers of R/I from cycles of H^p_m(H^{n-i}_I(R)).

    Returns the table and a details dict holding the hypercubes.
    """
    if not gens:
        raise ValueError("need generators")
    base = gens[0].ring
    n = base.nvars if n is None else n
    if n != base.nvars:
        raise ValueError(f"n = {n} does not match the ring")
    I = Ideal(base, gens)
    if I.is_unit():
        raise ValueError("the ideal must be proper")
    ring = Ring.cotangent(base.names)
    d = dimension(I)
    h, runs = local_cohomology(zero_section(ring), list(gens), trusted=True, localizer=localizer)
    E = origin_component(ring)
    table = [[0] * (d + 1) for _ in range(d + 1)]
    cubes = {"ideal": runs[0]}
    for i in range(d + 1):
        r = n - i
        M = h.get(r)
        if M is None or M.is_zero():
            continue
        cb = (lambda a, c, r=r: progress(f"H^{r}", a, c)) if progress else None
        cube = build_hypercube(M, base.gens(), localizer, progress=cb)
        pruned = prune(cube)
        hm = local_cohomology_cycles(pruned)
        cubes[r] = (cube, pruned)
        for p, c in hm.items():
            for comp, m in c:
                if comp != E:
                    raise ArithmeticError(f"H^{p}_m(H^{r}_I) has a component away from the origin: {comp!r}")
                if p > i:
                    raise ArithmeticError(f"nonzero entry below the diagonal at ({p}, {i})")
                table[p][i] = m
    return LyubeznikTable(d, tuple(tuple(r) for r in table)), {"cohomology": h, "cubes": cubes}
