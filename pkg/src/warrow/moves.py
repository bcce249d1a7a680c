"""Local moves on w-tree presentations.

Moves fall into three groups:

* exact moves preserve the welded class;
* truncated moves hold modulo trees of degree above ``truncation_degree``;
  the higher-degree residue is dropped and the log says so;
* homotopy moves delete repeated trees and preserve non-repeated Milnor
  invariants only.

New trees created by a move are appended to the tree list.  Every move
checks its side conditions first and raises :class:`MoveError` with a short
reason when they fail.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .model import (
    CLOSED, Layout, Leaf, Presentation, PresentationError, Site, Vertex, WTree,
    flip, leaf_paths, map_sites, node_at, node_from_json, node_shape, node_to_json,
    replace_at, RIGHT, LEFT,
)

EXACT = frozenset({
    "TailsExchange", "IsolatedArrow", "InversePairInsert", "InversePairDelete",
    "Slide", "HeadTraversal", "HeadsExchange", "Antisymmetry", "Fork",
})
TRUNCATED = frozenset({"TwistPastVertex", "IHX"})
HOMOTOPY = frozenset({"SelfArrowDelete", "RepeatedTreeDelete"})
KINDS = EXACT | TRUNCATED | HOMOTOPY | {"HeadTailExchange"}


class MoveError(PresentationError):
    pass


@dataclass(frozen=True)
class MoveSpec:
    """A move and its location.

    ``tree``/``other`` are tree indices, ``path`` a node path (0 = first
    child, 1 = second), ``site`` a ``(strand, pos)`` pair, ``template`` a
    :class:`WTree` whose sites are insertion gaps, ``segment`` a
    ``(strand, start, end)`` range of positions.
    """

    kind: str
    tree: int | None = None
    other: int | None = None
    path: tuple = ()
    site: Site | None = None
    template: WTree | None = None
    segment: tuple | None = None
    truncation_degree: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise MoveError(f"unknown move kind {self.kind!r}")
        object.__setattr__(self, "path", tuple(self.path or ()))
        if self.site is not None:
            object.__setattr__(self, "site", Site(*self.site))
        if self.kind in EXACT | HOMOTOPY and self.truncation_degree is not None:
            raise MoveError(f"{self.kind} is exact and takes no truncation degree")

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.tree is not None:
            out["tree"] = self.tree
        if self.other is not None:
            out["other"] = self.other
        if self.path:
            out["path"] = list(self.path)
        if self.site is not None:
            out["site"] = list(self.site)
        if self.template is not None:
            t = self.template
            out["template"] = {"head": list(t.head), "side": t.side, "root": node_to_json(t.root)}
        if self.segment is not None:
            out["segment"] = list(self.segment)
        if self.truncation_degree is not None:
            out["truncation_degree"] = self.truncation_degree
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "MoveSpec":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise MoveError("a move needs a 'kind' field")
        template = None
        if "template" in obj:
            t = obj["template"]
            template = WTree(Site(*t["head"]), node_from_json(t["root"], "template.root"), t.get("side", RIGHT))
        return cls(
            kind=obj["kind"], tree=obj.get("tree"), other=obj.get("other"),
            path=tuple(obj.get("path", ())),
            site=Site(*obj["site"]) if "site" in obj else None,
            template=template,
            segment=tuple(obj["segment"]) if "segment" in obj else None,
            truncation_degree=obj.get("truncation_degree"),
        )


def category(m: MoveSpec, p: Presentation | None = None) -> str:
    if m.kind in EXACT:
        return "exact"
    if m.kind in HOMOTOPY:
        return "homotopy"
    if m.kind == "HeadTailExchange":
        if p is not None and m.other is not None and 0 <= m.other < len(p.trees) and p.trees[m.other].degree == 1:
            return "exact"
    return "truncated"


@dataclass(frozen=True)
class Applicability:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


# -- shared checks ------------------------------------------------------------------

def _tree(p: Presentation, i, what="tree") -> WTree:
    if i is None or not 0 <= i < len(p.trees):
        raise MoveError(f"no {what} with index {i}")
    return p.trees[i]


def _adjacent(a: Site, b: Site) -> bool:
    return a.strand == b.strand and abs(a.pos - b.pos) == 1


def _cyclic_adjacent(p: Presentation, a: Site, b: Site) -> bool:
    if _adjacent(a, b):
        return True
    if a.strand != b.strand or p.diagram.kinds[a.strand] != CLOSED:
        return False
    m = p.endpoint_counts()[a.strand]
    return m > 2 and {a.pos, b.pos} == {0, m - 1}


def _vertex(t: WTree, path) -> Vertex:
    try:
        node = node_at(t.root, path)
    except PresentationError as exc:
        raise MoveError(str(exc)) from None
    if not isinstance(node, Vertex):
        raise MoveError(f"path {path} does not point at a vertex")
    return node


def _truncation(m: MoveSpec, limit: int, what: str) -> int:
    k = m.truncation_degree
    if k is None:
        raise MoveError(f"{m.kind} needs truncation_degree")
    if k < 1:
        raise MoveError("truncation_degree must be positive")
    if k > limit:
        raise MoveError(f"truncation_degree {k} exceeds {what} {limit}: the residue would matter")
    return k


# -- individual moves -------------------------------------------------------------
# each returns (presentation, note)

def _tails_exchange(p, m, run):
    s = m.site
    if s is None:
        raise MoveError("TailsExchange needs a site")
    ep = p.endpoint_map()
    a, b = Site(s.strand, s.pos), Site(s.strand, s.pos + 1)
    if a not in ep or b not in ep:
        raise MoveError(f"no two endpoints at {tuple(a)} and {tuple(b)}")
    if ep[a][1] is None or ep[b][1] is None:
        raise MoveError("both endpoints must be tails")
    if not run:
        return None

    def swap(x):
        return b if x == a else a if x == b else x

    trees = tuple(WTree(swap(t.head), map_sites(t.root, swap), t.side) for t in p.trees)
    return Presentation(p.diagram, trees), ""


def _isolated_arrow(p, m, run):
    t = _tree(p, m.tree)
    if t.degree != 1:
        raise MoveError("not a w-arrow")
    if not _cyclic_adjacent(p, t.head, t.root.site):
        raise MoveError("head and tail are not adjacent")
    if not run:
        return None
    lay = Layout(p)
    lay.remove_tree(m.tree)
    return lay.freeze(), ""


def _inverse_insert(p, m, run):
    t = m.template
    if t is None:
        raise MoveError("InversePairInsert needs a template tree")
    counts = p.endpoint_counts()
    for s in t.endpoints():
        if not (isinstance(s, tuple) and 0 <= s[0] < p.n and 0 <= s[1] <= counts[s[0]]):
            raise MoveError(f"bad insertion gap {s!r}")
    if t.side not in (LEFT, RIGHT):
        raise MoveError(f"bad head side {t.side!r}")
    if not run:
        return None
    lay = Layout(p)
    gaps: dict = {}
    pair = {}
    for s in t.endpoints():
        a, b = lay.new_slot(), lay.new_slot()
        pair[Site(*s)] = pair.get(Site(*s), []) + [(a, b)]
        gaps.setdefault((s[0], s[1]), []).extend([a, b])
    for strand in range(p.n):
        row = lay.order[strand]
        new_row = []
        for g in range(len(row) + 1):
            new_row.extend(gaps.get((strand, g), []))
            if g < len(row):
                new_row.append(row[g])
        lay.order[strand] = new_row
    used: dict = {}

    def take(site, which):
        k = used.get((site, which), 0)
        used[(site, which)] = k + 1
        return pair[Site(*site)][k][which]

    # head first, then leaves, matching the slot creation order above
    head_a = pair[Site(*t.head)][0][0]
    head_b = pair[Site(*t.head)][0][1]
    used[(tuple(t.head), 0)] = 1
    used[(tuple(t.head), 1)] = 1
    root_a = map_sites(t.root, lambda s: take(tuple(s), 0))
    root_b = map_sites(t.root, lambda s: take(tuple(s), 1))
    lay.trees.append(WTree(head_a, root_a, t.side))
    lay.trees.append(WTree(head_b, flip(root_b), t.side))
    return lay.freeze(), f"inserted trees {len(p.trees)} and {len(p.trees) + 1}"


def _tails_between(p, ep, a: Site, b: Site) -> bool:
    lo, hi = sorted((a.pos, b.pos))
    return all(ep[Site(a.strand, q)][1] is not None for q in range(lo + 1, hi))


def _inverse_delete(p, m, run):
    t, u = _tree(p, m.tree), _tree(p, m.other, "other tree")
    if m.tree == m.other:
        raise MoveError("an inverse pair needs two different trees")
    if node_shape(t.effective_root()) != node_shape(flip(u.effective_root())):
        raise MoveError("trees are not parallel with opposite terminal twists")
    if not _adjacent(t.head, u.head):
        raise MoveError("heads are not adjacent")
    ep = p.endpoint_map()
    for x, y in zip(t.tail_sites(), u.tail_sites()):
        if x.strand != y.strand or not _tails_between(p, ep, x, y):
            raise MoveError("corresponding tails are not parallel")
    if not run:
        return None
    lay = Layout(p)
    for i in sorted((m.tree, m.other), reverse=True):
        lay.remove_tree(i)
    return lay.freeze(), ""


def _slide(p, m, run):
    w, a = _tree(p, m.tree), _tree(p, m.other, "arrow")
    if m.tree == m.other:
        raise MoveError("slide needs two different trees")
    if a.degree != 1:
        raise MoveError("the slid-over tree must be a w-arrow")
    tail = a.root.site
    if not _adjacent(w.head, tail):
        raise MoveError("head is not adjacent to the arrow tail")
    if not run:
        return None
    forward = w.head.pos < tail.pos
    lay = Layout(p)
    lt, la = lay.trees[m.tree], lay.trees[m.other]
    lay.remove(lt.head)
    (lay.insert_after if forward else lay.insert_before)(la.root.site, lt.head)
    word = lt.effective_root()
    c1 = lay.copy_node_after(word)
    c2 = lay.copy_node_after(word)
    before, after = lay.new_slot(), lay.new_slot()
    lay.insert_before(la.head, before)
    lay.insert_after(la.head, after)
    if forward:
        lay.trees += [WTree(before, flip(c1)), WTree(after, c2)]
    else:
        lay.trees += [WTree(before, c1), WTree(after, flip(c2))]
    return lay.freeze(), f"inserted trees {len(p.trees)} and {len(p.trees) + 1}"


def _head_traversal(p, m, run):
    t = _tree(p, m.tree)
    if m.segment is None or len(m.segment) != 3:
        raise MoveError("HeadTraversal needs a segment (strand, start, end)")
    strand, start, end = m.segment
    counts = p.endpoint_counts()
    if not (0 <= strand < p.n and 0 <= start <= end < counts[strand]):
        raise MoveError("segment out of range")
    ep = p.endpoint_map()
    inside = {ep[Site(strand, q)][0] for q in range(start, end + 1)}
    if m.tree in inside:
        raise MoveError("the moving tree has endpoints inside the segment")
    for i in inside:
        for s in p.trees[i].endpoints():
            if s.strand != strand or not start <= s.pos <= end:
                raise MoveError(f"tree {i} leaves the segment: not an isolated union")
    if t.head.strand != strand or t.head.pos not in (start - 1, end + 1):
        raise MoveError("head is not adjacent to the segment")
    if not run:
        return None
    lay = Layout(p)
    row = lay.order[strand]
    first, last = row[start], row[end]
    h = lay.trees[m.tree].head
    lay.remove(h)
    if t.head.pos == start - 1:
        lay.insert_after(last, h)
    else:
        lay.insert_before(first, h)
    return lay.freeze(), ""


def _heads_exchange(p, m, run):
    t, u = _tree(p, m.tree), _tree(p, m.other, "other tree")
    if not (t.head.strand == u.head.strand and u.head.pos == t.head.pos + 1):
        raise MoveError("the other head must come right after the tree head")
    if not run:
        return None
    lay = Layout(p)
    lt, lu = lay.trees[m.tree], lay.trees[m.other]
    lay.remove(lt.head)
    lay.insert_after(lu.head, lt.head)
    b = lay.copy_node_after(flip(lu.effective_root()))
    a = lay.copy_node_after(flip(lt.effective_root()))
    x = lay.new_slot()
    lay.insert_after(lu.head, x)
    lay.trees.append(WTree(x, Vertex(b, a, 0)))
    return lay.freeze(), f"inserted tree {len(p.trees)}"


def _head_tail_exchange(p, m, run):
    w, v = _tree(p, m.tree), _tree(p, m.other, "other tree")
    if m.tree == m.other:
        raise MoveError("head and tail must belong to different trees")
    try:
        leaf = node_at(v.root, m.path)
    except PresentationError as exc:
        raise MoveError(str(exc)) from None
    if not isinstance(leaf, Leaf):
        raise MoveError(f"path {m.path} does not point at a leaf")
    if not _adjacent(w.head, leaf.site):
        raise MoveError("head is not adjacent to the tail")
    exact = v.degree == 1
    note = ""
    if not exact:
        k = _truncation(m, w.degree + v.degree, "the new tree degree")
        note = f"discarded trees of degree > {k}"
    elif m.truncation_degree is not None:
        raise MoveError("this HeadTailExchange is exact and takes no truncation degree")
    if not run:
        return None
    forward = w.head.pos < leaf.site.pos
    lay = Layout(p)
    lw, lv = lay.trees[m.tree], lay.trees[m.other]
    x = node_at(lv.root, m.path).site
    lay.remove(lw.head)
    (lay.insert_after if forward else lay.insert_before)(x, lw.head)
    vroot = lv.effective_root()
    copy = lay.copy_node_after(vroot)
    wcopy = lay.copy_node_after(lw.effective_root())
    cleaf = node_at(copy, m.path)
    inner = Vertex(Leaf(cleaf.site, 1), wcopy if forward else flip(wcopy), cleaf.twist)
    root = replace_at(copy, m.path, inner)
    h = lay.new_slot()
    if exact and vroot.twist:
        lay.insert_before(lv.head, h)
    else:
        lay.insert_after(lv.head, h)
    lay.trees.append(WTree(h, root))
    return lay.freeze(), (f"inserted tree {len(p.trees)}" + (f"; {note}" if note else ""))


def _antisymmetry(p, m, run):
    t = _tree(p, m.tree)
    v = _vertex(t, m.path)
    if not run:
        return None
    new = Vertex(flip(v.second), flip(v.first), v.twist ^ 1)
    trees = list(p.trees)
    trees[m.tree] = WTree(t.head, replace_at(t.root, m.path, new), t.side)
    return Presentation(p.diagram, tuple(trees)), ""


def _fork(p, m, run):
    t = _tree(p, m.tree)
    v = _vertex(t, m.path)
    if not (isinstance(v.first, Leaf) and isinstance(v.second, Leaf)):
        raise MoveError("vertex is not a fork: both children must be tails")
    if not _adjacent(v.first.site, v.second.site):
        raise MoveError("not adjacent: fork tails are separated by another endpoint")
    if not run:
        return None
    lay = Layout(p)
    lay.remove_tree(m.tree)
    return lay.freeze(), ""


def _twist_past_vertex(p, m, run):
    t = _tree(p, m.tree)
    if not m.path:
        raise MoveError("TwistPastVertex needs a path to a child of a vertex")
    _vertex(t, m.path[:-1])
    k = _truncation(m, t.degree, "the tree degree")
    if not run:
        return None
    root = t.root
    child = node_at(root, m.path)
    root = replace_at(root, m.path, flip(child))
    parent = node_at(root, m.path[:-1])
    root = replace_at(root, m.path[:-1], flip(parent))
    trees = list(p.trees)
    trees[m.tree] = WTree(t.head, root, t.side)
    return Presentation(p.diagram, tuple(trees)), f"discarded trees of degree > {k}"


def _ihx(p, m, run):
    t = _tree(p, m.tree)
    v = _vertex(t, m.path)
    if not isinstance(v.second, Vertex):
        raise MoveError("IHX needs a vertex whose second child is a vertex")
    if v.second.twist:
        raise MoveError("IHX needs an untwisted inner edge")
    k = _truncation(m, t.degree, "the tree degree")
    if not run:
        return None
    lay = Layout(p)
    lt = lay.trees[m.tree]
    root = lt.effective_root()
    copy = lay.copy_node_after(root)
    vi = node_at(root, m.path)
    a, b, c = vi.first, vi.second.first, vi.second.second
    vc = node_at(copy, m.path)
    a2, b2, c2 = vc.first, vc.second.first, vc.second.second
    h_root = replace_at(root, m.path, Vertex(Vertex(a, b, 0), c, vi.twist))
    x_root = replace_at(copy, m.path, Vertex(Vertex(a2, c2, 0), flip(b2), vi.twist))
    lay.trees[m.tree] = WTree(lt.head, h_root)
    x = lay.new_slot()
    lay.insert_after(lt.head, x)
    lay.trees.append(WTree(x, x_root))
    return lay.freeze(), f"inserted tree {len(p.trees)}; discarded trees of degree > {k}"


def _self_arrow(p, m, run):
    t = _tree(p, m.tree)
    if t.degree != 1:
        raise MoveError("not a w-arrow")
    if t.head.strand != t.root.site.strand:
        raise MoveError("tail and head lie on different components")
    if not run:
        return None
    lay = Layout(p)
    lay.remove_tree(m.tree)
    return lay.freeze(), ""


def _repeated_tree(p, m, run):
    t = _tree(p, m.tree)
    strands = [s.strand for s in t.endpoints()]
    if len(set(strands)) == len(strands):
        raise MoveError("tree is not repeated")
    if not run:
        return None
    lay = Layout(p)
    lay.remove_tree(m.tree)
    return lay.freeze(), ""


_HANDLERS = {
    "TailsExchange": _tails_exchange,
    "IsolatedArrow": _isolated_arrow,
    "InversePairInsert": _inverse_insert,
    "InversePairDelete": _inverse_delete,
    "Slide": _slide,
    "HeadTraversal": _head_traversal,
    "HeadsExchange": _heads_exchange,
    "HeadTailExchange": _head_tail_exchange,
    "Antisymmetry": _antisymmetry,
    "Fork": _fork,
    "TwistPastVertex": _twist_past_vertex,
    "IHX": _ihx,
    "SelfArrowDelete": _self_arrow,
    "RepeatedTreeDelete": _repeated_tree,
}


def applicable(p: Presentation, m: MoveSpec) -> Applicability:
    try:
        _HANDLERS[m.kind](p, m, False)
    except MoveError as exc:
        return Applicability(False, str(exc))
    return Applicability(True)


def apply_logged(p: Presentation, m: MoveSpec) -> tuple[Presentation, dict]:
    q, note = _HANDLERS[m.kind](p, m, True)
    entry = {"move": m.to_json(), "category": category(m, p), "trees": len(q.trees)}
    if note:
        entry["note"] = note
    return q, entry


def apply(p: Presentation, m: MoveSpec) -> Presentation:
    return apply_logged(p, m)[0]


class TraceError(MoveError):
    def __init__(self, index: int, reason: str):
        super().__init__(f"move {index} is not applicable: {reason}")
        self.index = index
        self.reason = reason


def trace(p: Presentation, moves: Sequence[MoveSpec]) -> tuple[Presentation, list[dict]]:
    """Apply moves in order; the log has one entry per move."""
    log = []
    for i, m in enumerate(moves):
        try:
            p, entry = apply_logged(p, m)
        except MoveError as exc:
            raise TraceError(i, str(exc)) from None
        entry["index"] = i
        log.append(entry)
    return p, log
