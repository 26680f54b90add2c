"""Naive closed-form and brute-force oracles for the test suite.

They only use polynomial values from polycore, never the engine.
"""

from __future__ import annotations

from collections import Counter
from itertools import chain, combinations, combinations_with_replacement
from typing import Iterable, Sequence

from charcycle.polycore import Polynomial


class MonomialCubeOracle:
    """Cycles of R localized at products of distinct variables.

    Localizing R at x_{i1} ... x_{ik} gives the sum over all subsets S of
    {i1..ik} of T*_{V(x_S)} X, each once.  Components are named by the
    frozenset of variable names cutting them out.
    """

    def __init__(self, names: Sequence[str]):
        self.names = tuple(names)

    def monomial_localization_cycle(self, variables: Iterable[str]) -> Counter:
        vs = list(variables)
        if len(set(vs)) != len(vs):
            raise ValueError(f"repeated variable in {vs}")
        unknown = set(vs) - set(self.names)
        if unknown:
            raise ValueError(f"unknown variables {sorted(unknown)}")
        subsets = chain.from_iterable(combinations(vs, k) for k in range(len(vs) + 1))
        return Counter(frozenset(s) for s in subsets)

    def local_cohomology(self, variables: Sequence[str]) -> dict[int, Counter]:
        """H^r_I(R) for I generated by k distinct variables: only r = k, on V(I)."""
        k = len(variables)
        return {r: Counter({frozenset(variables): 1}) if r == k else Counter() for r in range(k + 1)}


def monomial_localization_cycle(variables: Iterable[str], names: Sequence[str] | None = None) -> Counter:
    vs = list(variables)
    return MonomialCubeOracle(names or vs).monomial_localization_cycle(vs)


def _divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def standard_monomial_count(gens: Sequence[Polynomial | Sequence[int]], nvars: int, up_to: int) -> list[int]:
    """Number of monomials of each degree 0..up_to outside the monomial ideal."""
    exps = []
    for g in gens:
        if isinstance(g, Polynomial):
            if len(g.terms) != 1:
                raise ValueError(f"{g} is not a monomial")
            g = next(iter(g.terms))
        exps.append(tuple(g))
    counts = []
    for d in range(up_to + 1):
        n = 0
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            if not any(_divides(g, e) for g in exps):
                n += 1
        counts.append(n)
    return counts
