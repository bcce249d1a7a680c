"""Magnus expansion, longitudes and welded Milnor invariants of string links."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

from .group import FreeWord, arc_structure, node_word
from .model import Leaf, Presentation, PresentationError


class TruncatedSeries:
    """Element of ``Z<<X_0..X_{n-1}>>`` modulo words of length > ``k``.

    Coefficients live in a dict keyed by tuples of variable indices; the empty
    tuple is the constant term.
    """

    __slots__ = ("n", "k", "coeffs")

    def __init__(self, n: int, k: int, coeffs=None):
        if k < 0:
            raise ValueError("truncation degree must be non-negative")
        self.n, self.k = n, k
        self.coeffs = {w: c for w, c in (coeffs or {}).items() if c and len(w) <= k}

    @classmethod
    def one(cls, n, k):
        return cls(n, k, {(): 1})

    @classmethod
    def generator(cls, i, n, k, e: int = 1):
        """Series of ``m_i^e``: ``(1 + X_i)^e`` truncated."""
        if e >= 0:
            from math import comb
            return cls(n, k, {(i,) * j: comb(e, j) for j in range(min(e, k) + 1)})
        from math import comb
        return cls(n, k, {(i,) * j: (-1) ** j * comb(-e + j - 1, j) for j in range(k + 1)})

    def __getitem__(self, word) -> int:
        return self.coeffs.get(tuple(word), 0)

    def coefficient(self, word: Sequence[int]) -> int:
        return self[word]

    def __add__(self, other):
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + c
        return TruncatedSeries(self.n, self.k, out)

    def __neg__(self):
        return TruncatedSeries(self.n, self.k, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        k = self.k
        out: dict = {}
        right = sorted(other.coeffs.items(), key=lambda x: len(x[0]))
        for w1, c1 in self.coeffs.items():
            room = k - len(w1)
            for w2, c2 in right:
                if len(w2) > room:
                    break
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return TruncatedSeries(self.n, k, out)

    def inverse(self):
        """Inverse of a series with constant term 1 (geometric series)."""
        if self[()] != 1:
            raise ValueError("only series with constant term 1 are inverted here")
        nil = self - TruncatedSeries.one(self.n, self.k)
        out = TruncatedSeries.one(self.n, self.k)
        power = TruncatedSeries.one(self.n, self.k)
        neg = -nil
        for _ in range(self.k):
            power = power * neg
            if not power.coeffs:
                break
            out = out + power
        return out

    def __eq__(self, other):
        return isinstance(other, TruncatedSeries) and (self.n, self.k, self.coeffs) == (other.n, other.k, other.coeffs)

    def __repr__(self):
        terms = sorted(self.coeffs.items(), key=lambda x: (len(x[0]), x[0]))
        return "TruncatedSeries(" + ", ".join(f"{c}*X{''.join(str(i + 1) for i in w) or '1'}" for w, c in terms) + ")"


def magnus(w: FreeWord, n: int, k: int) -> TruncatedSeries:
    """Magnus expansion ``m_i -> 1 + X_i`` of a word in the meridians ``0..n-1``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    out = TruncatedSeries.one(n, k)
    cache = {}
    for g, e in w:
        if not 0 <= g < n:
            raise PresentationError(f"generator {g} is not one of the {n} meridians")
        key = (g, e)
        if key not in cache:
            cache[key] = TruncatedSeries.generator(g, n, k, e)
        out = out * cache[key]
    return out


@dataclass(frozen=True)
class LongitudeSet:
    """Magnus series of the longitudes ``λ_i``, faithful modulo ``Γ_k``."""

    n: int
    k: int
    series: tuple[TruncatedSeries, ...]

    def coefficient(self, I: Sequence[int]) -> int:
        """``μ_I`` with 1-based indices: coefficient of ``X_{i_1}..X_{i_{m-1}}`` in ``λ_{i_m}``."""
        *body, last = [i - 1 for i in I]
        return self.series[last][tuple(body)]


def _series_node(node, values, n, k):
    if isinstance(node, Leaf):
        s = values[node.site]
        return s.inverse() if node.twist else s
    a = _series_node(node.first, values, n, k)
    b = _series_node(node.second, values, n, k)
    ai, bi = a.inverse(), b.inverse()
    s = a * bi * ai * b
    return s.inverse() if node.twist else s


def longitudes(p: Presentation, k: int, max_rounds: int | None = None) -> LongitudeSet:
    """Longitudes of a string link, computed modulo ``Γ_k``.

    Every arc is a conjugate ``C⁻¹ m_s C`` of its strand's lower meridian.
    Conjugators are recomputed from the current arc values until they stop
    changing; each round fixes at least one more degree, so at most ``k``
    rounds are needed.  Each longitude is normalized to have zero exponent
    sum in its own meridian.
    """
    if not p.diagram.is_string_link():
        raise PresentationError("longitudes need a string link (open strands only)")
    if k < 2:
        raise ValueError("k must be at least 2")
    n, deg = p.n, k - 1
    arcs = arc_structure(p)
    merid = [TruncatedSeries.generator(s, n, deg) for s in range(n)]
    one = TruncatedSeries.one(n, deg)
    by_strand: list[list] = [[] for _ in range(n)]
    for tree, s, j in arcs.heads:
        by_strand[s].append(p.trees[tree].effective_root())
    conj = [[one] * (len(by_strand[s]) + 1) for s in range(n)]
    rounds = max_rounds if max_rounds is not None else k + 1
    for _ in range(rounds):
        arc_value = {}
        for s in range(n):
            for j, c in enumerate(conj[s]):
                arc_value[arcs.first_arc[s] + j] = c.inverse() * merid[s] * c
        values = {site: arc_value[a] for site, a in arcs.arc_of.items()}
        new = []
        for s in range(n):
            row = [one]
            for root in by_strand[s]:
                row.append(row[-1] * _series_node(root, values, n, deg))
            new.append(row)
        if new == conj:
            break
        conj = new
    else:
        raise RuntimeError("longitude iteration did not stabilize")
    out = []
    for s in range(n):
        lam = conj[s][-1]
        e = lam[(s,)]
        out.append(TruncatedSeries.generator(s, n, deg, -e) * lam)
    return LongitudeSet(n, k, tuple(out))


def _check_sequence(I: Sequence[int], n: int) -> None:
    if len(I) < 2:
        raise ValueError("Milnor sequences have length at least 2")
    for i in I:
        if not 1 <= i <= n:
            raise PresentationError(f"index {i} out of range 1..{n}")


def milnor_mu(p: Presentation, I: Sequence[int]) -> int:
    """Welded Milnor invariant ``μ_I`` (indices 1-based)."""
    _check_sequence(I, p.n)
    return longitudes(p, len(I)).coefficient(I)


def nonrepeated_sequences(n: int, lengths: Iterable[int]) -> list[tuple[int, ...]]:
    out = []
    for m in lengths:
        out.extend(permutations(range(1, n + 1), m))
    return out


def all_sequences(n: int, m: int) -> list[tuple[int, ...]]:
    from itertools import product
    return list(product(range(1, n + 1), repeat=m))


def milnor_table(p: Presentation, maxlen: int, nonrepeated: bool = True) -> dict:
    """All ``μ_I`` with ``2 <= |I| <= maxlen`` from a single longitude computation."""
    if maxlen < 2:
        return {}
    lon = longitudes(p, maxlen)
    if nonrepeated:
        seqs = nonrepeated_sequences(p.n, range(2, min(maxlen, p.n) + 1))
    else:
        seqs = [I for m in range(2, maxlen + 1) for I in all_sequences(p.n, m)]
    return {I: lon.coefficient(I) for I in seqs}


def format_sequence(I: Sequence[int]) -> str:
    """Digits for indices below 10, otherwise dot-separated."""
    if all(i < 10 for i in I):
        return "".join(str(i) for i in I)
    return ".".join(str(i) for i in I)


def parse_sequence(text: str) -> tuple[int, ...]:
    """Inverse of :func:`format_sequence`; ``"12"`` or ``"1.12.3"``."""
    text = text.strip()
    try:
        if "." in text or "," in text:
            return tuple(int(x) for x in text.replace(",", ".").split("."))
        return tuple(int(c) for c in text)
    except ValueError:
        raise PresentationError(f"cannot parse index sequence {text!r}") from None
