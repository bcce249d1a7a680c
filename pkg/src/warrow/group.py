"""Free-group words, Wirtinger presentations and the Alexander polynomial.

Arcs of a presentation are the pieces of strands between consecutive heads.
At a head with incoming arc ``a``, outgoing arc ``a'`` and tree word ``w``
the relation is ``a' = w̄ a w``, stored as the relator ``w a' w̄ ā``.  With
this convention the word of a union of trees with consecutive heads is the
product of their words in orientation order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Mapping, Sequence

from .laurent import LaurentPoly, ZERO, ONE, laurent_det, laurent_gcd
from .model import (
    CLOSED, GaussCode, Leaf, Node, Presentation, PresentationError, Site,
    canonical_arrow_presentation,
)


class NotLongKnotError(PresentationError):
    pass


class FreeWord:
    """Reduced word in a free group; letters are ``(generator, +-1)``."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[tuple] = ()):
        out: list[tuple] = []
        for g, e in letters:
            if e not in (1, -1):
                raise ValueError(f"exponent {e!r} is not +-1")
            if out and out[-1][0] == g and out[-1][1] == -e:
                out.pop()
            else:
                out.append((g, e))
        self.letters = tuple(out)

    @classmethod
    def gen(cls, g, e: int = 1) -> "FreeWord":
        return cls([(g, 1 if e > 0 else -1)] * abs(e)) if e else cls()

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord((g, -e) for g, e in reversed(self.letters))

    def __invert__(self):
        return self.inverse()

    def __pow__(self, n: int) -> "FreeWord":
        base = self if n >= 0 else self.inverse()
        out = FreeWord()
        for _ in range(abs(n)):
            out = out * base
        return out

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        return isinstance(other, FreeWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return f"FreeWord({list(self.letters)!r})"

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(f"{g}" if e > 0 else f"{g}^-1" for g, e in self.letters)

    def generators(self) -> set:
        return {g for g, _ in self.letters}

    def exponent_sum(self, g) -> int:
        return sum(e for h, e in self.letters if h == g)

    def substitute(self, images: Mapping) -> "FreeWord":
        out = []
        for g, e in self.letters:
            w = images[g]
            out.extend(w.letters if e > 0 else w.inverse().letters)
        return FreeWord(out)

    def map_generators(self, f: Callable) -> "FreeWord":
        return FreeWord((f(g), e) for g, e in self.letters)


def bracket(a: FreeWord, b: FreeWord) -> FreeWord:
    """``[a, b] = a b̄ ā b``."""
    return a * b.inverse() * a.inverse() * b


def node_word(node: Node, label: Callable) -> FreeWord:
    if isinstance(node, Leaf):
        w = FreeWord.gen(label(node.site))
    else:
        w = bracket(node_word(node.first, label), node_word(node.second, label))
    return w.inverse() if node.twist else w


def wtree_word(t, labels) -> FreeWord:
    """Bracket word of a tree; a left-hand head counts as one more terminal twist."""
    label = labels if callable(labels) else labels.__getitem__
    try:
        return node_word(t.effective_root(), label)
    except KeyError as exc:
        raise PresentationError(f"unlabeled leaf site {exc.args[0]!r}") from None


# -- Wirtinger presentation ----------------------------------------------------

@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[tuple[int, int], ...]
    relators: tuple[FreeWord, ...]
    meridians: tuple[tuple[int, int] | None, ...]
    kinds: tuple[str, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.generators)

    def describe(self) -> str:
        gens = ", ".join(f"a{i}" for i in range(self.rank))
        rels = ", ".join(str(r.map_generators(lambda g: f"a{g}")) for r in self.relators)
        return f"<{gens} | {rels}>"


@dataclass(frozen=True)
class ArcStructure:
    """Arc bookkeeping shared by the Wirtinger and longitude computations."""

    arc_of: dict          # Site -> generator id
    first_arc: tuple      # per strand
    arc_count: tuple      # per strand
    heads: tuple          # (tree index, strand, arc index of incoming arc) in strand order


def arc_structure(p: Presentation) -> ArcStructure:
    head_pos: list[list[int]] = [[] for _ in range(p.n)]
    head_tree = {}
    for i, t in enumerate(p.trees):
        head_pos[t.head.strand].append(t.head.pos)
        head_tree[t.head] = i
    first, counts = [], []
    total = 0
    for s in range(p.n):
        head_pos[s].sort()
        h = len(head_pos[s])
        c = h if (p.diagram.kinds[s] == CLOSED and h > 0) else h + 1
        first.append(total)
        counts.append(c)
        total += c
    arc_of = {}
    for site in p.endpoint_map():
        s = site.strand
        j = sum(1 for q in head_pos[s] if q < site.pos)
        arc_of[site] = first[s] + j % counts[s]
    heads = []
    for s in range(p.n):
        for j, q in enumerate(head_pos[s]):
            heads.append((head_tree[Site(s, q)], s, j))
    return ArcStructure(arc_of, tuple(first), tuple(counts), tuple(heads))


def wirtinger(p: Presentation) -> GroupPresentation:
    """Arc generators and one relator per tree."""
    arcs = arc_structure(p)
    gens = tuple((s, j) for s in range(p.n) for j in range(arcs.arc_count[s]))
    relators = []
    for tree, s, j in arcs.heads:
        w = wtree_word(p.trees[tree], arcs.arc_of)
        inc = arcs.first_arc[s] + j
        out = arcs.first_arc[s] + (j + 1) % arcs.arc_count[s]
        relators.append(w * FreeWord.gen(out) * w.inverse() * FreeWord.gen(inc, -1))
    meridians = tuple(
        (arcs.first_arc[s], arcs.first_arc[s] + arcs.arc_count[s] - 1)
        if p.diagram.kinds[s] != CLOSED else None
        for s in range(p.n)
    )
    return GroupPresentation(gens, tuple(relators), meridians, p.diagram.kinds)


def gauss_group(g: GaussCode) -> GroupPresentation:
    return wirtinger(canonical_arrow_presentation(g))


# -- Fox calculus and the Alexander polynomial ---------------------------------

def fox_phi(w: FreeWord, g) -> LaurentPoly:
    """Image of the Fox derivative ``∂w/∂g`` under every generator ``-> t``."""
    terms: dict[int, int] = {}
    e = 0
    for h, s in w:
        if s > 0:
            if h == g:
                terms[e] = terms.get(e, 0) + 1
            e += 1
        else:
            e -= 1
            if h == g:
                terms[e] = terms.get(e, 0) - 1
    return LaurentPoly(terms)


def alexander_matrix(gp: GroupPresentation) -> list[list[LaurentPoly]]:
    return [[fox_phi(r, g) for g in range(gp.rank)] for r in gp.relators]


@dataclass(frozen=True)
class AlexanderResult:
    polynomial: LaurentPoly
    degenerate: bool


def alexander_gcd(gp: GroupPresentation, max_subsets: int = 5000) -> LaurentPoly:
    """Gcd of the maximal minors of the Jacobian with its first column deleted."""
    m = gp.rank
    rows = [row[1:] for row in alexander_matrix(gp)]
    need = m - 1
    if need == 0:
        return ONE
    if len(rows) < need:
        return ZERO
    if len(rows) == need:
        return laurent_det(rows)
    dets = []
    for k, subset in enumerate(combinations(range(len(rows)), need)):
        if k >= max_subsets:
            raise PresentationError("too many minors for the gcd computation")
        dets.append(laurent_det([rows[i] for i in subset]))
    return laurent_gcd(dets)


def normalize_alexander(d: LaurentPoly) -> LaurentPoly:
    """Unique unit multiple with ``Δ(1) = 1`` and ``Δ'(1) = 0``."""
    v = d.at_one()
    if v not in (1, -1):
        raise NotLongKnotError(f"Δ(1) = {v}, expected ±1: not a long-knot presentation")
    d = d * v
    return d.shift(-d.derivative_at_one())


def alexander(gp: GroupPresentation) -> AlexanderResult:
    d = alexander_gcd(gp)
    if d.is_zero():
        return AlexanderResult(ZERO, True)
    return AlexanderResult(normalize_alexander(d), False)


def alexander_normalized(gp: GroupPresentation) -> LaurentPoly:
    return alexander(gp).polynomial


def alpha_coeffs(d: LaurentPoly, kmax: int) -> list[int]:
    """Coefficients ``α_2..α_kmax`` of ``d`` expanded in powers of ``1 - t``."""
    if kmax < 2:
        raise ValueError("kmax must be at least 2")
    series = [0] * (kmax + 1)
    for e, c in d.items():
        for i in range(kmax + 1):
            if e >= 0:
                coef = comb(e, i) * (-1) ** i
            else:
                coef = comb(-e + i - 1, i)
            series[i] += c * coef
    return series[2:]


def alexander_of(p: Presentation) -> LaurentPoly:
    """Normalized Alexander polynomial of a long-knot presentation."""
    if not p.diagram.is_long_knot():
        raise NotLongKnotError("Alexander polynomial needs a single open strand")
    return alexander_normalized(wirtinger(p))


def alpha_of(p: Presentation, kmax: int) -> list[int]:
    return alpha_coeffs(alexander_of(p), kmax)
