"""Strand diagrams, w-trees, presentations and Gauss codes.

A presentation is a crossingless diagram (a list of open or closed strands)
together with w-trees whose endpoints sit at integer positions along the
strands.  Virtual crossings are never recorded: every datum here lives in the
quotient by detour moves, so only the order of endpoints along each strand
matters.

Conventions used throughout the package:

* strands are indexed ``0..n-1``; on a string link strand ``i`` is the
  ``(i+1)``-th component;
* a twist is a single bit (twists are involutive);
* ``Vertex(first, second)`` carries the bracket ``[first, second]``;
* a w-arrow whose head is on the right-hand side with an even number of
  twists is a positive crossing, over-strand at the tail.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from itertools import count
from typing import Any, Iterator, NamedTuple, Sequence, Union

OPEN = "open"
CLOSED = "closed"
RIGHT = "right"
LEFT = "left"


class PresentationError(ValueError):
    """Raised for malformed input or a violated invariant."""


class Site(NamedTuple):
    strand: int
    pos: int


@dataclass(frozen=True)
class Leaf:
    site: Any
    twist: int = 0


@dataclass(frozen=True)
class Vertex:
    first: "Node"
    second: "Node"
    twist: int = 0


Node = Union[Leaf, Vertex]


# -- node helpers -----------------------------------------------------------

def leaves(node: Node) -> list[Leaf]:
    """Leaves in (first, second) order."""
    if isinstance(node, Leaf):
        return [node]
    return leaves(node.first) + leaves(node.second)


def leaf_paths(node: Node, prefix: tuple = ()) -> Iterator[tuple[tuple, Leaf]]:
    if isinstance(node, Leaf):
        yield prefix, node
    else:
        yield from leaf_paths(node.first, prefix + (0,))
        yield from leaf_paths(node.second, prefix + (1,))


def vertex_paths(node: Node, prefix: tuple = ()) -> Iterator[tuple]:
    if isinstance(node, Vertex):
        yield prefix
        yield from vertex_paths(node.first, prefix + (0,))
        yield from vertex_paths(node.second, prefix + (1,))


def node_at(node: Node, path: Sequence[int]) -> Node:
    for step in path:
        if not isinstance(node, Vertex):
            raise PresentationError(f"path {tuple(path)} runs past a leaf")
        node = node.first if step == 0 else node.second
    return node


def replace_at(node: Node, path: Sequence[int], new: Node) -> Node:
    if not path:
        return new
    if not isinstance(node, Vertex):
        raise PresentationError(f"path {tuple(path)} runs past a leaf")
    head, rest = path[0], path[1:]
    if head == 0:
        return replace(node, first=replace_at(node.first, rest, new))
    return replace(node, second=replace_at(node.second, rest, new))


def flip(node: Node) -> Node:
    """Toggle the twist on the edge leaving ``node`` toward the head."""
    return replace(node, twist=node.twist ^ 1)


def with_twist(node: Node, twist: int) -> Node:
    return replace(node, twist=twist)


def map_sites(node: Node, f) -> Node:
    if isinstance(node, Leaf):
        return Leaf(f(node.site), node.twist)
    return Vertex(map_sites(node.first, f), map_sites(node.second, f), node.twist)


def degree(node: Node) -> int:
    if isinstance(node, Leaf):
        return 1
    return degree(node.first) + degree(node.second)


def node_shape(node: Node):
    """Tree shape and twists with sites forgotten."""
    if isinstance(node, Leaf):
        return ("L", node.twist)
    return ("V", node_shape(node.first), node_shape(node.second), node.twist)


# -- diagrams, trees, presentations ------------------------------------------

@dataclass(frozen=True)
class StrandDiagram:
    kinds: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "kinds", tuple(self.kinds))

    @property
    def n(self) -> int:
        return len(self.kinds)

    @classmethod
    def string_link(cls, n: int) -> "StrandDiagram":
        return cls((OPEN,) * n)

    @classmethod
    def long_knot(cls) -> "StrandDiagram":
        return cls((OPEN,))

    @classmethod
    def knot(cls) -> "StrandDiagram":
        return cls((CLOSED,))

    def is_string_link(self) -> bool:
        return all(k == OPEN for k in self.kinds)

    def is_long_knot(self) -> bool:
        return self.kinds == (OPEN,)

    def is_knot(self) -> bool:
        return self.kinds == (CLOSED,)


@dataclass(frozen=True)
class WTree:
    head: Any
    root: Node
    side: str = RIGHT

    @property
    def degree(self) -> int:
        return degree(self.root)

    def leaves(self) -> list[Leaf]:
        return leaves(self.root)

    def tail_sites(self) -> list:
        return [leaf.site for leaf in leaves(self.root)]

    def endpoints(self) -> list:
        return [self.head] + self.tail_sites()

    @property
    def effective_twist(self) -> int:
        """Terminal twist after moving the head to the right-hand side."""
        return self.root.twist ^ (self.side == LEFT)

    def effective_root(self) -> Node:
        return with_twist(self.root, self.effective_twist)

    def normalized(self) -> "WTree":
        return WTree(self.head, self.effective_root(), RIGHT)


@dataclass(frozen=True)
class Presentation:
    diagram: StrandDiagram
    trees: tuple[WTree, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "trees", tuple(self.trees))

    @property
    def n(self) -> int:
        return self.diagram.n

    def endpoint_counts(self) -> list[int]:
        counts = [0] * self.n
        for t in self.trees:
            for s in t.endpoints():
                counts[s.strand] += 1
        return counts

    def endpoint_map(self) -> dict:
        """``Site -> (tree index, path)``; path ``None`` marks a head."""
        out = {}
        for i, t in enumerate(self.trees):
            out[t.head] = (i, None)
            for path, leaf in leaf_paths(t.root):
                out[leaf.site] = (i, path)
        return out

    def max_degree(self) -> int:
        return max((t.degree for t in self.trees), default=0)

    def to_json(self) -> dict:
        return presentation_to_json(self)

    def dumps(self) -> str:
        return dumps(self.to_json())


def empty(kinds: Sequence[str]) -> Presentation:
    return Presentation(StrandDiagram(tuple(kinds)), ())


# -- validation -------------------------------------------------------------

def validate(p: Presentation) -> list[str]:
    """All invariant violations of ``p``; an empty list means ``p`` is valid."""
    problems = []
    n = p.n
    for k in p.diagram.kinds:
        if k not in (OPEN, CLOSED):
            problems.append(f"strand kind {k!r} is neither open nor closed")
    seen: dict = {}
    for i, t in enumerate(p.trees):
        if t.side not in (LEFT, RIGHT):
            problems.append(f"tree {i}: head side {t.side!r} is not left/right")
        nodes = [t.root]
        while nodes:
            node = nodes.pop()
            if node.twist not in (0, 1):
                problems.append(f"tree {i}: twist {node.twist!r} is not a bit")
            if isinstance(node, Vertex):
                nodes += [node.first, node.second]
        for role, s in [("head", t.head)] + [("tail", x) for x in t.tail_sites()]:
            if not (isinstance(s, tuple) and len(s) == 2):
                problems.append(f"tree {i}: {role} site {s!r} is malformed")
                continue
            strand, pos = s
            if not (isinstance(strand, int) and 0 <= strand < n):
                problems.append(f"tree {i}: {role} on unknown strand {strand!r}")
                continue
            if not (isinstance(pos, int) and pos >= 0):
                problems.append(f"tree {i}: {role} at bad position {pos!r}")
                continue
            if (strand, pos) in seen:
                problems.append(
                    f"site collision at strand {strand} pos {pos}: tree {seen[(strand, pos)]} and tree {i}")
            else:
                seen[(strand, pos)] = i
    for strand in range(n):
        used = sorted(pos for (s, pos) in seen if s == strand)
        if used != list(range(len(used))):
            problems.append(f"strand {strand}: positions {used} are not dense 0..{len(used) - 1}")
    return problems


def check(p: Presentation) -> Presentation:
    problems = validate(p)
    if problems:
        raise PresentationError("; ".join(problems))
    return p


# -- editable layout ---------------------------------------------------------

class Layout:
    """Mutable working copy of a presentation used by rewriting code.

    Endpoints are opaque integer slots; each strand is an ordered list of
    slots.  ``freeze`` renumbers slots densely and returns a presentation.
    """

    def __init__(self, p: Presentation):
        self.kinds = p.diagram.kinds
        self._ids = count()
        by_site = {}
        self.origin = {}
        counts = p.endpoint_counts()
        self.order = [[None] * c for c in counts]
        for site in sorted(p.endpoint_map()):
            slot = next(self._ids)
            by_site[site] = slot
            self.origin[slot] = site
            self.order[site.strand][site.pos] = slot
        self.trees = [
            WTree(by_site[t.head], map_sites(t.root, by_site.__getitem__), t.side)
            for t in p.trees
        ]

    def new_slot(self) -> int:
        return next(self._ids)

    def locate(self, slot) -> tuple[int, int]:
        for s, row in enumerate(self.order):
            if slot in row:
                return s, row.index(slot)
        raise KeyError(slot)

    def strand_of(self, slot) -> int:
        return self.locate(slot)[0]

    def insert_after(self, anchor, slot) -> None:
        s, i = self.locate(anchor)
        self.order[s].insert(i + 1, slot)

    def insert_before(self, anchor, slot) -> None:
        s, i = self.locate(anchor)
        self.order[s].insert(i, slot)

    def insert_at(self, strand: int, index: int, slot) -> None:
        self.order[strand].insert(index, slot)

    def remove(self, slot) -> None:
        s, i = self.locate(slot)
        del self.order[s][i]

    def remove_tree(self, index: int) -> WTree:
        t = self.trees.pop(index)
        for slot in t.endpoints():
            self.remove(slot)
        return t

    def copy_node_after(self, node: Node) -> Node:
        """Parallel copy of a subtree: each new tail sits right after its original."""
        def fresh(slot):
            new = self.new_slot()
            self.insert_after(slot, new)
            return new
        return map_sites(node, fresh)

    def freeze(self) -> Presentation:
        return self.freeze_with_map()[0]

    def freeze_with_map(self) -> tuple[Presentation, dict]:
        """Presentation plus the map from surviving original sites to new ones."""
        where = {}
        for s, row in enumerate(self.order):
            for i, slot in enumerate(row):
                where[slot] = Site(s, i)
        trees = tuple(
            WTree(where[t.head], map_sites(t.root, where.__getitem__), t.side)
            for t in self.trees
        )
        relabel = {site: where[slot] for slot, site in self.origin.items() if slot in where}
        return Presentation(StrandDiagram(self.kinds), trees), relabel


# -- conversions -------------------------------------------------------------

class Passage(NamedTuple):
    crossing: int
    over: bool
    sign: int


@dataclass(frozen=True)
class GaussCode:
    """Per-strand sequences of signed over/under passages."""

    kinds: tuple[str, ...]
    strands: tuple[tuple[Passage, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "kinds", tuple(self.kinds))
        object.__setattr__(self, "strands", tuple(tuple(Passage(*x) for x in s) for s in self.strands))

    @property
    def n(self) -> int:
        return len(self.kinds)

    def crossings(self) -> list[int]:
        return sorted({x.crossing for s in self.strands for x in s})

    def signs(self) -> dict[int, int]:
        return {x.crossing: x.sign for s in self.strands for x in s}

    def validate(self) -> list[str]:
        problems = []
        if len(self.kinds) != len(self.strands):
            problems.append("strand kinds and passage lists differ in length")
        seen: dict[int, list[Passage]] = {}
        for s in self.strands:
            for x in s:
                seen.setdefault(x.crossing, []).append(x)
                if x.sign not in (1, -1):
                    problems.append(f"crossing {x.crossing}: sign {x.sign!r} is not +-1")
        for c, xs in sorted(seen.items()):
            overs = [x for x in xs if x.over]
            unders = [x for x in xs if not x.over]
            if len(overs) != 1 or len(unders) != 1:
                problems.append(f"crossing {c}: expected one over and one under passage, got {len(overs)}/{len(unders)}")
            elif overs[0].sign != unders[0].sign:
                problems.append(f"crossing {c}: over and under passages disagree on the sign")
        return problems

    def to_string(self) -> str:
        return " | ".join(
            f"{kind}: " + " ".join(_passage_str(x) for x in s) if s else f"{kind}:"
            for kind, s in zip(self.kinds, self.strands)
        )

    def to_json(self) -> dict:
        return {
            "type": "gauss_code",
            "strands": [
                {"kind": kind, "code": " ".join(_passage_str(x) for x in s)}
                for kind, s in zip(self.kinds, self.strands)
            ],
        }

    def dumps(self) -> str:
        return dumps(self.to_json())


def _passage_str(x: Passage) -> str:
    return f"{'O' if x.over else 'U'}{x.crossing}{'+' if x.sign > 0 else '-'}"


class SignedArrow(NamedTuple):
    tail: Site
    head: Site
    sign: int


def canonical_arrow_presentation(g: GaussCode) -> Presentation:
    """One w-arrow per classical crossing, tail at the over-passage."""
    problems = g.validate()
    if problems:
        raise PresentationError("; ".join(problems))
    over, under = {}, {}
    for s, passages in enumerate(g.strands):
        for pos, x in enumerate(passages):
            (over if x.over else under)[x.crossing] = (Site(s, pos), x.sign)
    trees = []
    for c in sorted(over):
        tail, sign = over[c]
        head, _ = under[c]
        trees.append(WTree(head, Leaf(tail, 0 if sign > 0 else 1), RIGHT))
    return Presentation(StrandDiagram(g.kinds), tuple(trees))


def to_signed_arrows(p: Presentation) -> list[SignedArrow]:
    """Signed arrows of an arrow-only presentation, ordered by head site.

    The sign is ``+`` for a right-hand head with even twist and flips with
    either a left-hand head or an odd twist.
    """
    out = []
    for i, t in enumerate(p.trees):
        if t.degree != 1:
            raise PresentationError(f"tree {i} has degree {t.degree}: expand first")
        sign = -1 if t.effective_twist else 1
        out.append(SignedArrow(t.root.site, t.head, sign))
    return sorted(out, key=lambda a: (a.head, a.tail))


def arrows_to_gauss(p: Presentation) -> GaussCode:
    """Gauss code of an arrow-only presentation (crossing ids follow tree order)."""
    slots: list[list] = [[None] * c for c in p.endpoint_counts()]
    for c, t in enumerate(p.trees, start=1):
        if t.degree != 1:
            raise PresentationError(f"tree {c - 1} has degree {t.degree}: expand first")
        sign = -1 if t.effective_twist else 1
        tail = t.root.site
        slots[tail.strand][tail.pos] = Passage(c, True, sign)
        slots[t.head.strand][t.head.pos] = Passage(c, False, sign)
    return GaussCode(p.diagram.kinds, tuple(tuple(s) for s in slots))


def normalize_sides(p: Presentation) -> Presentation:
    """Move every head to the right-hand side, trading side for a terminal twist."""
    return Presentation(p.diagram, tuple(t.normalized() for t in p.trees))


def rotate_basepoint(p: Presentation, strand: int, shift: int) -> Presentation:
    """Move the basepoint of a closed strand forward past ``shift`` endpoints."""
    if p.diagram.kinds[strand] != CLOSED:
        raise PresentationError(f"strand {strand} is open; its basepoint cannot move")
    m = p.endpoint_counts()[strand]
    if m == 0:
        return p

    def move(s: Site) -> Site:
        return Site(s.strand, (s.pos - shift) % m) if s.strand == strand else s

    trees = tuple(WTree(move(t.head), map_sites(t.root, move), t.side) for t in p.trees)
    return Presentation(p.diagram, trees)


def concatenate(p: Presentation, q: Presentation) -> Presentation:
    """Stack two string links: every strand of ``p`` continues into that of ``q``."""
    if p.n != q.n or not (p.diagram.is_string_link() and q.diagram.is_string_link()):
        raise PresentationError("concatenation needs two string links with equal component counts")
    offsets = p.endpoint_counts()

    def move(s: Site) -> Site:
        return Site(s.strand, s.pos + offsets[s.strand])

    moved = tuple(WTree(move(t.head), map_sites(t.root, move), t.side) for t in q.trees)
    return Presentation(p.diagram, p.trees + moved)


def product(parts: Sequence[Presentation], kinds: Sequence[str] | None = None) -> Presentation:
    if not parts:
        if kinds is None:
            raise PresentationError("empty product needs explicit strand kinds")
        return empty(kinds)
    out = parts[0]
    for q in parts[1:]:
        out = concatenate(out, q)
    return out


def gauss_product(g: GaussCode, h: GaussCode) -> GaussCode:
    """Concatenate two open-strand Gauss codes; ``h``'s crossing ids are shifted."""
    if g.n != h.n or any(k != OPEN for k in g.kinds + h.kinds):
        raise PresentationError("Gauss-code products need open strands of equal count")
    shift = max(g.crossings(), default=0)
    strands = tuple(
        a + tuple(Passage(x.crossing + shift, x.over, x.sign) for x in b)
        for a, b in zip(g.strands, h.strands)
    )
    return GaussCode(g.kinds, strands)


# -- JSON ---------------------------------------------------------------------

def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, compact separators."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def node_to_json(node: Node) -> dict:
    if isinstance(node, Leaf):
        return {"leaf": list(node.site), "twist": node.twist}
    return {"vertex": [node_to_json(node.first), node_to_json(node.second)], "twist": node.twist}


def presentation_to_json(p: Presentation) -> dict:
    return {
        "type": "presentation",
        "strands": list(p.diagram.kinds),
        "trees": [
            {"head": list(t.head), "side": t.side, "root": node_to_json(t.root)}
            for t in p.trees
        ],
    }


def _site_from_json(value, where: str) -> Site:
    if not (isinstance(value, list) and len(value) == 2 and all(isinstance(v, int) and not isinstance(v, bool) for v in value)):
        raise PresentationError(f"{where}: expected [strand, pos] integers, got {value!r}")
    return Site(value[0], value[1])


def _twist_from_json(obj: dict, where: str) -> int:
    twist = obj.get("twist", 0)
    if twist not in (0, 1) or isinstance(twist, bool):
        raise PresentationError(f"{where}.twist: expected 0 or 1, got {twist!r}")
    return twist


def node_from_json(obj, where: str = "root") -> Node:
    if not isinstance(obj, dict):
        raise PresentationError(f"{where}: expected an object, got {obj!r}")
    twist = _twist_from_json(obj, where)
    if "leaf" in obj:
        return Leaf(_site_from_json(obj["leaf"], f"{where}.leaf"), twist)
    if "vertex" in obj:
        kids = obj["vertex"]
        if not (isinstance(kids, list) and len(kids) == 2):
            raise PresentationError(f"{where}.vertex: expected two children")
        return Vertex(node_from_json(kids[0], f"{where}.vertex[0]"),
                      node_from_json(kids[1], f"{where}.vertex[1]"), twist)
    raise PresentationError(f"{where}: node needs a 'leaf' or 'vertex' field")


def presentation_from_json(obj: dict) -> Presentation:
    strands = obj.get("strands")
    if not isinstance(strands, list):
        raise PresentationError("strands: expected a list of 'open'/'closed'")
    for i, k in enumerate(strands):
        if k not in (OPEN, CLOSED):
            raise PresentationError(f"strands[{i}]: expected 'open' or 'closed', got {k!r}")
    trees = []
    for i, t in enumerate(obj.get("trees", [])):
        where = f"trees[{i}]"
        if not isinstance(t, dict):
            raise PresentationError(f"{where}: expected an object")
        side = t.get("side", RIGHT)
        if side not in (LEFT, RIGHT):
            raise PresentationError(f"{where}.side: expected 'left' or 'right', got {side!r}")
        head = _site_from_json(t.get("head"), f"{where}.head")
        root = node_from_json(t.get("root"), f"{where}.root")
        trees.append(WTree(head, root, side))
    return check(Presentation(StrandDiagram(tuple(strands)), tuple(trees)))


def parse_passages(text: str) -> tuple[Passage, ...]:
    import re

    text = text.strip()
    tokens = re.findall(r"\s*([OUou])\s*(\d+)\s*([+-])", text)
    rebuilt = "".join(a + b + c for a, b, c in tokens)
    if rebuilt != re.sub(r"\s+", "", text):
        raise PresentationError(f"cannot parse Gauss code {text!r}: expected tokens like O1+ U2-")
    return tuple(Passage(int(c), o.upper() == "O", 1 if s == "+" else -1) for o, c, s in tokens)


def gauss_from_string(text: str, default_kind: str = CLOSED) -> GaussCode:
    """Parse ``"open: O1+ U2- | closed: ..."``; strands are separated by ``|``."""
    kinds, strands = [], []
    for chunk in text.split("|"):
        chunk = chunk.strip()
        kind = default_kind
        for k in (OPEN, CLOSED):
            if chunk.lower().startswith(k + ":"):
                kind, chunk = k, chunk[len(k) + 1:]
                break
        kinds.append(kind)
        strands.append(parse_passages(chunk))
    g = GaussCode(tuple(kinds), tuple(strands))
    problems = g.validate()
    if problems:
        raise PresentationError("; ".join(problems))
    return g


def gauss_from_json(obj: dict) -> GaussCode:
    kinds, strands = [], []
    for i, s in enumerate(obj.get("strands", [])):
        if not isinstance(s, dict):
            raise PresentationError(f"strands[{i}]: expected an object with kind/code")
        kind = s.get("kind", CLOSED)
        if kind not in (OPEN, CLOSED):
            raise PresentationError(f"strands[{i}].kind: expected 'open' or 'closed', got {kind!r}")
        kinds.append(kind)
        strands.append(parse_passages(s.get("code", "")))
    g = GaussCode(tuple(kinds), tuple(strands))
    problems = g.validate()
    if problems:
        raise PresentationError("; ".join(problems))
    return g
