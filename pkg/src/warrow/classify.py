"""Generator families and normal forms.

Long knots up to w_k-equivalence are determined by ``α_2..α_k`` and are
represented by products of the one-tree knots ``L_i``.  String links up to
homotopy are determined by their non-repeated Milnor invariants and are
represented by ordered products of the one-tree links ``W_{Ii}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations

from .group import alexander_of, alpha_of, wirtinger, alexander_gcd
from .milnor import format_sequence, milnor_table, nonrepeated_sequences
from .model import (
    CLOSED, OPEN, Leaf, Presentation, PresentationError, Site, StrandDiagram,
    Vertex, WTree, empty, product, with_twist,
)


# -- generators ---------------------------------------------------------------

def make_Lk(k: int, inverted: int = 0) -> Presentation:
    """Long knot from one degree-``k`` left comb: ``k-1`` tails, the head, one tail."""
    if k < 2:
        raise ValueError("L_k needs k >= 2")
    node = Leaf(Site(0, k))
    for i in range(k - 1):
        node = Vertex(node, Leaf(Site(0, i), 1))
    node = with_twist(node, int(bool(inverted)))
    return Presentation(StrandDiagram.long_knot(), (WTree(Site(0, k - 1), node),))


def make_TI(I, n: int, inverted: int = 0) -> Presentation:
    """String link on ``n`` strands from the right comb with tails ``i_1..i_{k-1}``
    and head on ``i_k`` (1-based indices)."""
    I = tuple(I)
    if len(I) < 2:
        raise ValueError("T_I needs |I| >= 2")
    if len(set(I)) != len(I):
        raise ValueError(f"T_I needs a non-repeated sequence, got {I}")
    if any(not 1 <= i <= n for i in I):
        raise ValueError(f"indices of {I} must lie in 1..{n}")
    inverted = int(bool(inverted))
    k = len(I)
    site = lambda i: Site(i - 1, 0)
    if k == 2:
        node = Leaf(site(I[0]), inverted)
    else:
        node = Leaf(site(I[k - 2]), 1)
        for j in range(k - 3, -1, -1):
            node = Vertex(Leaf(site(I[j])), node, 1 if j > 0 else inverted)
    return Presentation(StrandDiagram.string_link(n), (WTree(site(I[-1]), node),))


def power(gen: Presentation, inv: Presentation, x: int, kinds) -> Presentation:
    return product([gen if x > 0 else inv] * abs(x), kinds)


# -- long knots ------------------------------------------------------------------

def _series_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * len(a)
    for i, x in enumerate(a):
        if x:
            for j in range(len(a) - i):
                out[i + j] += x * b[j]
    return out


def generator_alphas(exponents: dict[int, int], kmax: int) -> list[int]:
    """``α_2..α_kmax`` of ``∏ L_j^{x_j}``, from ``∏ (1 ± u^j)^{|x_j|}``."""
    series = [1] + [0] * kmax
    for j, x in exponents.items():
        if x == 0 or j > kmax:
            continue
        factor = [0] * (kmax + 1)
        factor[0] = 1
        factor[j] = 1 if x > 0 else -1
        for _ in range(abs(x)):
            series = _series_mul(series, factor)
    return series[2:]


@dataclass(frozen=True)
class LongKnotNormalForm:
    k: int
    exponents: tuple[int, ...]   # x_2..x_k
    representative: Presentation

    def to_json(self) -> dict:
        return {"k": self.k, "exponents": list(self.exponents)}


def wk_exponents(alphas: list[int], k: int) -> tuple[int, ...]:
    xs: dict[int, int] = {}
    for i in range(2, k + 1):
        xs[i] = alphas[i - 2] - generator_alphas(xs, k)[i - 2]
    return tuple(xs[i] for i in range(2, k + 1))


def lk_product(exponents, start: int = 2) -> Presentation:
    parts = []
    for i, x in enumerate(exponents, start=start):
        parts += [make_Lk(i, 1 if x < 0 else 0)] * abs(x)
    return product(parts, (OPEN,))


def wk_normal_form(p: Presentation, k: int) -> LongKnotNormalForm:
    if k < 2:
        raise ValueError("k must be at least 2")
    if not p.diagram.is_long_knot():
        raise PresentationError("w_k normal forms need a long-knot presentation")
    xs = wk_exponents(alpha_of(p, k), k)
    return LongKnotNormalForm(k, xs, lk_product(xs))


@dataclass(frozen=True)
class Decision:
    equal: bool
    witness: object = None
    left: object = None
    right: object = None

    def to_json(self) -> dict:
        w = self.witness
        if isinstance(w, tuple):
            w = format_sequence(w)
        return {"equal": self.equal, "witness": w, "left": self.left, "right": self.right}


def decide_wk(p: Presentation, q: Presentation, k: int, bound: str = "theorem") -> Decision:
    """Compare ``α_i`` for ``2 <= i <= k`` (``bound='theorem'``) or ``i < k`` (``'corollary'``)."""
    if bound not in ("theorem", "corollary"):
        raise ValueError("bound is 'theorem' or 'corollary'")
    top = k if bound == "theorem" else k - 1
    if top < 2:
        return Decision(True)
    a, b = alpha_of(p, top), alpha_of(q, top)
    for i, (x, y) in enumerate(zip(a, b), start=2):
        if x != y:
            return Decision(False, i, x, y)
    return Decision(True)


# -- string links up to homotopy --------------------------------------------------

def is_repeated(tree: WTree) -> bool:
    strands = [s.strand for s in tree.endpoints()]
    return len(set(strands)) < len(strands)


def homotopy_reduce(p: Presentation) -> Presentation:
    """Delete every tree with two endpoints on one component."""
    from .model import Layout
    lay = Layout(p)
    for i in reversed(range(len(p.trees))):
        if is_repeated(p.trees[i]):
            lay.remove_tree(i)
    return lay.freeze()


def index_set(l: int, i: int, n: int) -> list[tuple[int, ...]]:
    """Sequences of ``l`` distinct indices in ``1..n`` other than ``i`` whose last entry is maximal."""
    others = [j for j in range(1, n + 1) if j != i]
    out = [I for I in permutations(others, l) if all(x < I[-1] for x in I[:-1])]
    return sorted(out)


@dataclass(frozen=True)
class StringLinkNormalForm:
    n: int
    exponents: dict    # Ii -> x_I, keys are full sequences (I, i)
    representative: Presentation
    layers: tuple = ()

    def to_json(self) -> dict:
        return {"n": self.n, "exponents": {format_sequence(k): v for k, v in sorted(self.exponents.items())}}


def layer_product(n: int, terms: list[tuple[tuple[int, ...], int]]) -> Presentation:
    parts = []
    for seq, x in terms:
        parts += [make_TI(seq, n, 1 if x < 0 else 0)] * abs(x)
    return product(parts, (OPEN,) * n)


def homotopy_normal_form(p: Presentation) -> StringLinkNormalForm:
    if not p.diagram.is_string_link():
        raise PresentationError("homotopy normal forms need a string link")
    n = p.n
    target = milnor_table(p, n)
    exps: dict = {}
    layers = []
    current = empty((OPEN,) * n)
    for l in range(1, n):
        have = milnor_table(current, l + 1) if l > 1 else {}
        terms = []
        for i in range(1, n + 1):
            for I in index_set(l, i, n):
                seq = I + (i,)
                x = target[seq] - have.get(seq, 0)
                exps[seq] = x
                terms.append((seq, x))
        layer = layer_product(n, terms)
        layers.append(layer)
        current = product([current, layer])
    return StringLinkNormalForm(n, exps, current, tuple(layers))


def decide_homotopy(p: Presentation, q: Presentation) -> Decision:
    if p.n != q.n:
        raise PresentationError(f"component counts differ: {p.n} vs {q.n}")
    a, b = milnor_table(p, p.n), milnor_table(q, q.n)
    for I in sorted(a, key=lambda s: (len(s), s)):
        if a[I] != b[I]:
            return Decision(False, I, a[I], b[I])
    return Decision(True)


# -- welded knots ---------------------------------------------------------------------

def welded_knot_invariants(p: Presentation, kmax: int = 4) -> dict:
    """Finite-type data the suite computes on a closed one-strand presentation.

    Returns the abelianization rank, the absolute value of the Alexander
    polynomial at 1, and the Milnor coefficients ``μ_{1..1}`` of lengths up to
    ``kmax`` read off the long knot cut at the basepoint.  On the unknot these
    are ``1``, ``1`` and zeros.
    """
    if not p.diagram.is_knot():
        raise PresentationError("welded knot invariants need a single closed strand")
    from .milnor import longitudes
    gp = wirtinger(p)
    d = alexander_gcd(gp)
    long = Presentation(StrandDiagram.long_knot(), p.trees)
    lon = longitudes(long, kmax)
    # every relator identifies two generators after abelianizing, so rank is 1
    rank = _abelian_rank(gp)
    return {
        "abelian_rank": rank,
        "alexander_at_one": abs(d.at_one()),
        "mu_repeated": [lon.coefficient((1,) * m) for m in range(2, kmax + 1)],
    }


def _abelian_rank(gp) -> int:
    parent = list(range(gp.rank))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r in gp.relators:
        sums: dict = {}
        for g, e in r:
            sums[g] = sums.get(g, 0) + e
        support = [g for g, v in sums.items() if v]
        if len(support) == 2 and sorted(sums[g] for g in support) == [-1, 1]:
            parent[find(support[0])] = find(support[1])
        elif support:
            raise PresentationError("relator is not a conjugation relation")
    return len({find(g) for g in range(gp.rank)})
