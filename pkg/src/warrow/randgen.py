"""Seeded random presentations, Gauss codes and moves for property testing."""

from __future__ import annotations

import random
from typing import Sequence

from .model import (
    CLOSED, OPEN, Leaf, Passage, GaussCode, Presentation, Site, StrandDiagram,
    Vertex, WTree, LEFT, RIGHT, leaf_paths, vertex_paths, node_at,
)
from .moves import EXACT, TRUNCATED, MoveSpec, applicable


def random_shape(rng: random.Random, leaves: list, twist_p: float = 0.3):
    """Random binary tree over the given leaf sites, in the given order."""
    def build(items):
        if len(items) == 1:
            return Leaf(items[0], int(rng.random() < twist_p))
        cut = rng.randint(1, len(items) - 1)
        return Vertex(build(items[:cut]), build(items[cut:]), int(rng.random() < twist_p))
    return build(list(leaves))


def random_presentation(
    rng: random.Random,
    kinds: Sequence[str],
    trees: int,
    max_degree: int = 3,
    twist_p: float = 0.3,
    left_p: float = 0.1,
    strand_choices: Sequence[Sequence[int]] | None = None,
) -> Presentation:
    """Random presentation; endpoint order along each strand is uniform."""
    n = len(kinds)
    specs = []
    for _ in range(trees):
        d = rng.randint(1, max_degree)
        if strand_choices is not None:
            strands = list(rng.choice(strand_choices))
            d = len(strands) - 1
        else:
            strands = [rng.randrange(n) for _ in range(d + 1)]
        specs.append(strands)
    tokens: list[list] = [[] for _ in range(n)]
    for i, strands in enumerate(specs):
        for k, s in enumerate(strands):
            tokens[s].append((i, k))
    where = {}
    for s in range(n):
        rng.shuffle(tokens[s])
        for pos, tok in enumerate(tokens[s]):
            where[tok] = Site(s, pos)
    out = []
    for i, strands in enumerate(specs):
        head = where[(i, 0)]
        tails = [where[(i, k)] for k in range(1, len(strands))]
        root = random_shape(rng, tails, twist_p)
        side = LEFT if rng.random() < left_p else RIGHT
        out.append(WTree(head, root, side))
    return Presentation(StrandDiagram(tuple(kinds)), tuple(out))


def random_long_knot(rng, trees=None, max_degree=3, **kw) -> Presentation:
    trees = rng.randint(1, 4) if trees is None else trees
    return random_presentation(rng, (OPEN,), trees, max_degree, **kw)


def random_knot(rng, trees=None, max_degree=3, **kw) -> Presentation:
    trees = rng.randint(1, 4) if trees is None else trees
    return random_presentation(rng, (CLOSED,), trees, max_degree, **kw)


def random_string_link(rng, n, trees=None, max_degree=3, **kw) -> Presentation:
    trees = rng.randint(1, 4) if trees is None else trees
    return random_presentation(rng, (OPEN,) * n, trees, max_degree, **kw)


def random_gauss_code(rng: random.Random, crossings: int, kinds: Sequence[str] = (OPEN,)) -> GaussCode:
    """Random signed Gauss code (generally virtual) with the given crossing count."""
    n = len(kinds)
    tokens: list[list] = [[] for _ in range(n)]
    for c in range(1, crossings + 1):
        sign = rng.choice((1, -1))
        tokens[rng.randrange(n)].append(Passage(c, True, sign))
        tokens[rng.randrange(n)].append(Passage(c, False, sign))
    for t in tokens:
        rng.shuffle(t)
    return GaussCode(tuple(kinds), tuple(tuple(t) for t in tokens))


# -- move candidates ---------------------------------------------------------------

def move_candidates(p: Presentation, kinds=EXACT, truncation_degree: int | None = None,
                    rng: random.Random | None = None) -> list[MoveSpec]:
    """Every location (plus a few random insertions) for the requested kinds."""
    out: list[MoveSpec] = []
    T = len(p.trees)
    counts = p.endpoint_counts()
    if "TailsExchange" in kinds:
        out += [MoveSpec("TailsExchange", site=Site(s, q)) for s in range(p.n) for q in range(counts[s] - 1)]
    for i, t in enumerate(p.trees):
        if "IsolatedArrow" in kinds:
            out.append(MoveSpec("IsolatedArrow", tree=i))
        for path in vertex_paths(t.root):
            if "Antisymmetry" in kinds:
                out.append(MoveSpec("Antisymmetry", tree=i, path=path))
            if "Fork" in kinds:
                out.append(MoveSpec("Fork", tree=i, path=path))
            if "IHX" in kinds and truncation_degree is not None:
                out.append(MoveSpec("IHX", tree=i, path=path, truncation_degree=truncation_degree))
            if "TwistPastVertex" in kinds and truncation_degree is not None:
                out += [MoveSpec("TwistPastVertex", tree=i, path=path + (c,), truncation_degree=truncation_degree)
                        for c in (0, 1)]
        for j, u in enumerate(p.trees):
            if i == j:
                continue
            if "Slide" in kinds:
                out.append(MoveSpec("Slide", tree=i, other=j))
            if "HeadsExchange" in kinds:
                out.append(MoveSpec("HeadsExchange", tree=i, other=j))
            if "InversePairDelete" in kinds:
                out.append(MoveSpec("InversePairDelete", tree=i, other=j))
            if "HeadTailExchange" in kinds:
                for path, _ in leaf_paths(u.root):
                    out.append(MoveSpec("HeadTailExchange", tree=i, other=j, path=path,
                                        truncation_degree=None if u.degree == 1 else truncation_degree))
        if "HeadTraversal" in kinds:
            h = t.head
            for start in range(counts[h.strand]):
                for end in range(start, counts[h.strand]):
                    if h.pos in (start - 1, end + 1):
                        out.append(MoveSpec("HeadTraversal", tree=i, segment=(h.strand, start, end)))
    if "InversePairInsert" in kinds and rng is not None:
        for _ in range(2):
            d = rng.randint(1, 3)
            gaps = [Site(s, rng.randint(0, counts[s])) for s in (rng.randrange(p.n) for _ in range(d + 1))]
            tpl = WTree(gaps[0], random_shape(rng, gaps[1:]), rng.choice((LEFT, RIGHT)))
            out.append(MoveSpec("InversePairInsert", template=tpl))
    return out


def random_move(rng: random.Random, p: Presentation, kinds=EXACT, truncation_degree=None) -> MoveSpec | None:
    cands = [m for m in move_candidates(p, kinds, truncation_degree, rng) if applicable(p, m)]
    if not cands:
        return None
    by_kind: dict = {}
    for m in cands:
        by_kind.setdefault(m.kind, []).append(m)
    kind = rng.choice(sorted(by_kind))
    return rng.choice(by_kind[kind])
