"""Expansion of w-trees into w-arrows, and surgery to Gauss codes.

Expanding the terminal vertex of a tree with subtrees ``A``, ``B`` produces
four trees whose heads appear consecutively where the old head was.  With an
even terminal twist the head order is ``A, B̄, Ā, B`` (the bracket
``[A, B] = A B̄ Ā B``); with an odd one it is ``B̄, A, B, Ā`` so the four heads
spell the inverse word.  Each subtree is used twice: the tree whose head comes
first keeps the original tails and the other one gets parallel tails placed
immediately after them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    Layout, Leaf, Presentation, PresentationError, Site, Vertex, WTree,
    arrows_to_gauss, flip, leaf_paths, map_sites, RIGHT, GaussCode,
)


@dataclass(frozen=True)
class ExpansionResult:
    presentation: Presentation
    trees: tuple[int, ...]
    site_relabeling: dict


def arrow_count(node) -> int:
    """Number of w-arrows in the full expansion of a subtree."""
    if isinstance(node, Leaf):
        return 1
    return 2 * (arrow_count(node.first) + arrow_count(node.second))


def _expand_in_layout(lay: Layout, index: int, provenance: dict | None = None) -> list[int]:
    t = lay.trees[index]
    root = t.effective_root()
    if not isinstance(root, Vertex):
        raise PresentationError(f"tree {index} has degree 1 and cannot be expanded")
    a, b = root.first, root.second

    def dup(node):
        copy = lay.copy_node_after(node)
        if provenance is not None:
            for (_, old), (_, new) in zip(leaf_paths(node), leaf_paths(copy)):
                provenance[new.site] = provenance[old.site]
        return copy

    a2, b2 = dup(a), dup(b)
    if root.twist == 0:
        roots = [a, flip(b), flip(a2), b2]
    else:
        roots = [flip(b), a, b2, flip(a2)]
    heads = [t.head]
    for _ in range(3):
        h = lay.new_slot()
        lay.insert_after(heads[-1], h)
        heads.append(h)
    lay.trees[index:index + 1] = [WTree(h, r, RIGHT) for h, r in zip(heads, roots)]
    return list(range(index, index + 4))


def expand_once_result(p: Presentation, index: int) -> ExpansionResult:
    if not 0 <= index < len(p.trees):
        raise PresentationError(f"no tree with index {index}")
    lay = Layout(p)
    new = _expand_in_layout(lay, index)
    q, relabel = lay.freeze_with_map()
    return ExpansionResult(q, tuple(new), relabel)


def expand_once(p: Presentation, index: int) -> Presentation:
    """Apply (E) at the terminal vertex of tree ``index``."""
    return expand_once_result(p, index).presentation


def _full_expand_layout(lay: Layout, provenance: dict | None = None, only=None) -> None:
    i = 0
    while i < len(lay.trees):
        t = lay.trees[i]
        if isinstance(t.root, Vertex) and (only is None or i in only):
            _expand_in_layout(lay, i, provenance)
            if only is not None:
                only = {j if j < i else j + 3 for j in only if j != i} | {i, i + 1, i + 2, i + 3}
            continue
        i += 1


def full_expand(p: Presentation) -> Presentation:
    """Expand until only w-arrows remain (first tree of degree >= 2 first)."""
    if p.max_degree() <= 1:
        return p
    lay = Layout(p)
    _full_expand_layout(lay)
    return lay.freeze()


def surgery(p: Presentation) -> GaussCode:
    """Gauss code of the diagram obtained by surgery along every tree."""
    return arrows_to_gauss(full_expand(p))


def delete_tail_group(p: Presentation, index: int, tail: int) -> Presentation:
    """Expand tree ``index`` and drop every arrow whose tail descends from leaf ``tail``.

    Other trees are left untouched.  The result shows the Brunnian behaviour
    of a single tree: removing one tail group trivializes its surgery.
    """
    if not 0 <= index < len(p.trees):
        raise PresentationError(f"no tree with index {index}")
    tails = p.trees[index].tail_sites()
    if not 0 <= tail < len(tails):
        raise PresentationError(f"tree {index} has no tail {tail}")
    lay = Layout(p)
    target = lay.trees[index]
    provenance = {leaf.site: k for k, (_, leaf) in enumerate(leaf_paths(target.root))}
    before = len(lay.trees)
    _full_expand_layout(lay, provenance, only={index})
    produced = range(index, index + len(lay.trees) - before + 1)
    doomed = [j for j in produced if provenance[lay.trees[j].root.site] == tail]
    for j in reversed(doomed):
        lay.remove_tree(j)
    return lay.freeze()
