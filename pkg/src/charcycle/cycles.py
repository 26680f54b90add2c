"""Characteristic cycles and their localization."""

from __future__ import annotations

import threading
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .conormal import ConormalInput, conormal_ideal, divisor_ideal, localization_limit_ideal
from .decompose import UnresolvedComponentError, conormal_components
from .groebner import Ideal, radical_member
from .hilbert import degree, dimension, multiplicity_along
from .polycore import Polynomial, Ring


class HolonomicityError(RuntimeError):
    """A computed component does not have dimension n."""


@dataclass(frozen=True, eq=False)
class ConormalComponent:
    """T*_Z X, stored as its prime q in R[a] and base projection Z = q ∩ R."""

    prime: Ideal
    base: Ideal

    @property
    def key(self) -> tuple[str, ...]:
        return self.prime.canonical_key()

    @property
    def base_dimension(self) -> int:
        return dimension(self.base) if self.base.gens else self.base.ring.nvars

    def __eq__(self, other):
        return isinstance(other, ConormalComponent) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"T*[{', '.join(str(g) for g in self.base.groebner_basis()) or '0'}]"

    @classmethod
    def over(cls, Z: Ideal, ring: Ring | None = None) -> "ConormalComponent":
        """Conormal of the irreducible variety V(Z)."""
        ring = ring or Ring.cotangent(Z.ring.names)
        Z = Z.reduced()
        return cls(conormal_ideal(Z, ring), Z)


class CharCycle:
    """Finite sum of conormal components with positive multiplicities."""

    def __init__(self, ring: Ring, items: Iterable[tuple[ConormalComponent, int]] = ()):
        if not ring.is_split:
            raise ValueError("characteristic cycles live in a block-split ring")
        self.ring = ring
        acc: dict[tuple, list] = {}
        for comp, m in items:
            if comp.prime.ring != ring:
                raise ValueError("component from a different ring")
            if m < 0:
                raise ValueError("multiplicities must be non-negative")
            if m == 0:
                continue
            slot = acc.setdefault(comp.key, [comp, 0])
            slot[1] += m
        self._items = {k: (c, m) for k, (c, m) in sorted(acc.items())}

    @property
    def base_ring(self) -> Ring:
        return self.ring.base_ring()

    def items(self) -> list[tuple[ConormalComponent, int]]:
        return list(self._items.values())

    def components(self) -> list[ConormalComponent]:
        return [c for c, _ in self._items.values()]

    def multiplicity(self, comp: ConormalComponent) -> int:
        hit = self._items.get(comp.key)
        return hit[1] if hit else 0

    def counts(self) -> dict[tuple, int]:
        return {k: m for k, (_, m) in self._items.items()}

    def is_zero(self) -> bool:
        return not self._items

    def __bool__(self):
        return bool(self._items)

    def __len__(self):
        return len(self._items)

    def __iter__(self) -> Iterator[tuple[ConormalComponent, int]]:
        return iter(self._items.values())

    def __add__(self, other: "CharCycle") -> "CharCycle":
        self._same(other)
        return CharCycle(self.ring, self.items() + other.items())

    def __and__(self, other: "CharCycle") -> "CharCycle":
        """Common sub-multiset."""
        self._same(other)
        out = []
        for k, (c, m) in self._items.items():
            hit = other._items.get(k)
            if hit:
                out.append((c, min(m, hit[1])))
        return CharCycle(self.ring, out)

    def __sub__(self, other: "CharCycle") -> "CharCycle":
        """Multiset difference; ``other`` must be a sub-multiset."""
        self._same(other)
        out = dict(self.counts())
        for k, (_, m) in other._items.items():
            if out.get(k, 0) < m:
                raise ValueError("not a sub-multiset")
            out[k] -= m
        return CharCycle(self.ring, [(self._items[k][0], m) for k, m in out.items()])

    def __le__(self, other: "CharCycle") -> bool:
        return all(other.multiplicity(c) >= m for c, m in self)

    def scaled(self, k: int) -> "CharCycle":
        return CharCycle(self.ring, [(c, m * k) for c, m in self])

    def __eq__(self, other):
        if not isinstance(other, CharCycle):
            return NotImplemented
        return self.ring == other.ring and self.counts() == other.counts()

    def __hash__(self):
        return hash(tuple(sorted(self.counts().items())))

    def __repr__(self):
        if not self._items:
            return "0"
        return " + ".join(f"{m}*{c!r}" if m > 1 else repr(c) for c, m in self)

    def _same(self, other: "CharCycle"):
        if other.ring != self.ring:
            raise ValueError("cycles over different rings")


def zero_section(ring: Ring) -> CharCycle:
    """CC(R) = T*_X X."""
    if not ring.is_split:
        raise ValueError("zero section needs a block-split ring")
    base = ring.base_ring()
    comp = ConormalComponent(Ideal(ring, [ring.var(i) for i in ring.cotangent_indices]).reduced(), Ideal(base, []))
    return CharCycle(ring, [(comp, 1)])


def component_support(c: ConormalComponent) -> Ideal:
    return c.base


def support(cc: CharCycle) -> list[Ideal]:
    seen: dict[tuple, Ideal] = {}
    for c, _ in cc:
        seen.setdefault(c.base.canonical_key(), c.base)
    return list(seen.values())


# -- localization ------------------------------------------------------------


def cycle_of(C: Ideal, ring: Ring) -> list[tuple[ConormalComponent, int]]:
    """Components of V(C) with multiplicities, for C whose components are conormals.

    The degrees of the components, weighted by multiplicity, must add up
    to the degree of C.
    """
    base = ring.base_ring()
    n = base.nvars
    if dimension(C) != n:
        raise HolonomicityError(f"ideal of dimension {dimension(C)}, expected {n}")
    pairs = conormal_components(C, base)
    primes = [q for _, q in pairs]
    out = []
    total = 0
    for i, (Z, q) in enumerate(pairs):
        if dimension(q) != n:
            raise HolonomicityError(f"component over {Z} has dimension {dimension(q)} != {n}")
        m = multiplicity_along(C, q, primes[:i] + primes[i + 1:])
        total += m * degree(q)
        out.append((ConormalComponent(q, Z), m))
    if total != degree(C):
        raise UnresolvedComponentError(f"components account for degree {total} of {degree(C)}")
    return out


class Localizer:
    """Localization of components with a memo keyed on (base prime, f).

    ``method`` picks how the divisor Γ attached to a component is found:
    "limit" takes the flat limit of the component moved by s*dlog f,
    "divisor" decomposes the ideal C of the relative-conormal divisor.

    ``store`` may be a persistent mapping from string keys to the
    serialized ``[(base generators, multiplicity), ...]`` list.
    """

    def __init__(self, store=None, on_decomposition: Callable | None = None, method: str = "limit"):
        if method not in ("limit", "divisor"):
            raise ValueError(f"unknown method {method!r}")
        self.method = method
        self._memo: dict[tuple, list[tuple[ConormalComponent, int]]] = {}
        self._lock = threading.Lock()
        self.store = store
        self.on_decomposition = on_decomposition

    def divisor_components(self, comp: ConormalComponent, f: Polynomial) -> list[tuple[ConormalComponent, int]]:
        """Components Γ_j of the divisor of f on T*_{f|Z} with multiplicities."""
        key = (comp.key, str(f), self.method)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        out = self._load(comp, f)
        if out is None:
            out = self._compute(comp, f)
            self._save(comp, f, out)
        with self._lock:
            self._memo[key] = out
        return out

    def _compute(self, comp: ConormalComponent, f: Polynomial) -> list[tuple[ConormalComponent, int]]:
        ring = comp.prime.ring
        if self.method == "limit":
            parts = cycle_of(localization_limit_ideal(comp.prime, f), ring)
            own = [m for c, m in parts if c == comp]
            if own != [1]:
                raise UnresolvedComponentError(f"{comp!r} has multiplicity {own} in its own localization")
            out = [(c, m) for c, m in parts if c != comp]
        else:
            out = cycle_of(divisor_ideal(ConormalInput(comp.base, f, ring)).ideal, ring)
        if self.on_decomposition is not None:
            self.on_decomposition(comp, f, out)
        return out

    def _store_key(self, comp: ConormalComponent, f: Polynomial) -> str:
        return self.method + ":" + "|".join(comp.base.canonical_key()) + "#" + str(f)

    def _load(self, comp, f):
        if self.store is None:
            return None
        raw = self.store.get(self._store_key(comp, f))
        if raw is None:
            return None
        ring = comp.prime.ring
        base = ring.base_ring()
        try:
            out = [(ConormalComponent.over(Ideal(base, gens), ring), int(m)) for gens, m in raw]
        except (ValueError, TypeError) as e:
            warnings.warn(f"discarding unreadable stored entry for {comp!r} at {f}: {e}", RuntimeWarning, stacklevel=2)
            return None
        if any(m < 1 for _, m in out):
            warnings.warn(f"discarding stored entry for {comp!r} at {f}: bad multiplicity", RuntimeWarning, stacklevel=2)
            return None
        return out

    def _save(self, comp, f, out):
        if self.store is None:
            return
        self.store[self._store_key(comp, f)] = [(list(c.base.canonical_key()), m) for c, m in out]

    def localize(self, cc: CharCycle, f: Polynomial) -> CharCycle:
        """CC(M_f) from CC(M): drop components inside V(f), add m * Γ for the rest."""
        if not f:
            raise ValueError("cannot localize at 0")
        base = cc.base_ring
        if f.ring != base:
            f = f.embed(base)
        if f.is_constant():
            return cc
        items = []
        for comp, m in cc:
            if radical_member(f, comp.base):
                continue
            items.append((comp, m))
            for sub, k in self.divisor_components(comp, f):
                items.append((sub, m * k))
        return CharCycle(cc.ring, items)


_DEFAULT = Localizer()


def default_localizer() -> Localizer:
    return _DEFAULT


def localize_cycle(
    cc: CharCycle,
    f: Polynomial | Sequence[Polynomial],
    strategy: str = "single",
    localizer: Localizer | None = None,
) -> CharCycle:
    """CC(M_f) from CC(M).

    ``f`` may be a factor list.  "single" localizes once at the product,
    "iterative" localizes at the factors in the order given.
    """
    loc = localizer or _DEFAULT
    factors = [f] if isinstance(f, Polynomial) else list(f)
    if not factors:
        raise ValueError("empty factor list")
    if strategy == "single":
        prod = factors[0]
        for g in factors[1:]:
            prod = prod * g
        return loc.localize(cc, prod)
    if strategy == "iterative":
        for g in factors:
            cc = loc.localize(cc, g)
        return cc
    raise ValueError(f"unknown strategy {strategy!r}")
