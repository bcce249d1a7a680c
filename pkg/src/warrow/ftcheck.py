"""Alternating sums over virtualized crossing subsets.

An invariant ``v`` has degree at most ``k`` when, for every diagram and every
set ``S`` of ``k + 1`` classical crossings, ``Σ_{S'⊆S} (-1)^{|S'|} v(D_{S'})``
vanishes, ``D_{S'}`` being ``D`` with the crossings of ``S'`` virtualized.
Virtualizing a crossing deletes it from the Gauss code.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable

from .group import alexander_normalized, alpha_coeffs, gauss_group
from .milnor import longitudes, parse_sequence
from .model import GaussCode, PresentationError, canonical_arrow_presentation

DEFAULT_LIMIT = 12


@dataclass(frozen=True)
class CrossingSubsetScheme:
    base: GaussCode
    chosen: frozenset

    def __post_init__(self):
        unknown = set(self.chosen) - set(self.base.crossings())
        if unknown:
            raise PresentationError(f"unknown crossing ids {sorted(unknown)}")


def virtualize(g: GaussCode, C: Iterable[int]) -> GaussCode:
    C = set(C)
    unknown = C - set(g.crossings())
    if unknown:
        raise PresentationError(f"unknown crossing ids {sorted(unknown)}")
    return GaussCode(g.kinds, tuple(tuple(x for x in s if x.crossing not in C) for s in g.strands))


def _as_vector(value) -> tuple:
    if isinstance(value, int):
        return (value,)
    return tuple(value)


def alternating_sum(v: Callable[[GaussCode], object], g: GaussCode, S: Iterable[int],
                    limit: int = DEFAULT_LIMIT, jobs: int = 1) -> tuple[int, ...]:
    """Signed sum of ``v`` over all virtualizations of subsets of ``S``.

    Values are integers or integer vectors; the result is always a tuple.
    """
    S = sorted(set(S))
    if len(S) > limit:
        raise PresentationError(f"|S| = {len(S)} exceeds the limit {limit}")
    CrossingSubsetScheme(g, frozenset(S))
    subsets = [c for r in range(len(S) + 1) for c in combinations(S, r)]

    def term(sub):
        return len(sub), _as_vector(v(virtualize(g, sub)))

    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            values = list(pool.map(term, subsets))
    else:
        values = [term(sub) for sub in subsets]
    total: list[int] = []
    for size, vec in values:
        if not total:
            total = [0] * len(vec)
        sign = -1 if size % 2 else 1
        for i, x in enumerate(vec):
            total[i] += sign * x
    return tuple(total)


# -- registry ----------------------------------------------------------------------

def alpha_functional(k: int) -> Callable[[GaussCode], int]:
    """``α_k`` of a one-strand open code."""
    def v(g: GaussCode) -> int:
        d = alexander_normalized(gauss_group(g))
        return alpha_coeffs(d, k)[k - 2]
    v.__name__ = f"alpha{k}"
    return v


def milnor_functional(I) -> Callable[[GaussCode], int]:
    I = tuple(I)

    def v(g: GaussCode) -> int:
        return longitudes(canonical_arrow_presentation(g), len(I)).coefficient(I)
    v.__name__ = "mu" + "".join(map(str, I))
    return v


def lookup(name: str) -> Callable[[GaussCode], int]:
    """``alpha<k>`` or ``mu<sequence>``, e.g. ``alpha3`` or ``mu123``."""
    if name.startswith("alpha") and name[5:].isdigit():
        k = int(name[5:])
        if k < 2:
            raise PresentationError("alpha_k needs k >= 2")
        return alpha_functional(k)
    if name.startswith("mu") and len(name) > 3:
        return milnor_functional(parse_sequence(name[2:]))
    raise PresentationError(f"unknown invariant {name!r}: use alpha<k> or mu<seq>")


def registry_names() -> list[str]:
    return ["alpha<k>", "mu<seq>"]
