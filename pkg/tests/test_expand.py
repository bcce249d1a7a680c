import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import eval_word
from warrow.expand import arrow_count, expand_once, full_expand, surgery
from warrow.group import wtree_word
from warrow.model import (
    OPEN, Leaf, Presentation, PresentationError, Site, StrandDiagram, Vertex,
    WTree, validate,
)
from warrow.randgen import random_presentation


def test_arrow_counts():
    node = Leaf(Site(0, 0))
    counts = []
    for _ in range(4):
        node = Vertex(node, Leaf(Site(0, 0)))
        counts.append(arrow_count(node))
    assert counts == [4, 10, 22, 46]


@pytest.mark.parametrize("twist", [0, 1])
def test_expansion_spells_bracket(twist):
    # single degree-2 tree with tails on distinct strands
    root = Vertex(Leaf(Site(1, 0)), Leaf(Site(2, 0)), twist)
    p = Presentation(StrandDiagram.string_link(3), (WTree(Site(0, 0), root),))
    q = expand_once(p, 0)
    assert len(q.trees) == 4 and not validate(q)
    heads = sorted(q.trees, key=lambda t: t.head.pos)
    # tails of copies sit beside originals, so label by strand
    lab = lambda s: s.strand
    word = []
    for t in heads:
        word += [(g, e) for g, e in wtree_word(t, lab).letters]
    a, b = [(1, 1)], [(2, 1)]
    bracket = a + [(2, -1)] + [(1, -1)] + b
    target = eval_word(bracket)
    got = eval_word(word)
    assert got == (target if twist == 0 else target.inv())


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_full_expand_yields_arrows(seed):
    p = random_presentation(random.Random(seed), (OPEN, OPEN), 2, 4)
    q = full_expand(p)
    assert all(t.degree == 1 for t in q.trees)
    assert len(q.trees) == sum(arrow_count(t.root) for t in p.trees)
    assert not validate(q)
    g = surgery(p)
    assert len(g.crossings()) == len(q.trees)


def test_degree_one_cannot_expand():
    p = Presentation(StrandDiagram.long_knot(), (WTree(Site(0, 0), Leaf(Site(0, 1))),))
    with pytest.raises(PresentationError):
        expand_once(p, 0)
