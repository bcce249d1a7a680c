"""Independent reference computations used to freeze test values.

Nothing here imports the package's algebra: Alexander polynomials go through
sympy, Magnus expansions through a naive expand-everything routine, and
free-group identities through a faithful matrix representation.
"""

from itertools import combinations

import sympy as sp

t = sp.Symbol("t")


def fox_sym(word, g):
    """Fox derivative of a word (list of (gen, +-1)) with every generator -> t."""
    total = sp.Integer(0)
    prefix = sp.Integer(1)
    for h, e in word:
        if e > 0:
            if h == g:
                total += prefix
            prefix *= t
        else:
            prefix /= t
            if h == g:
                total -= prefix
    return sp.expand(total)


def alexander_sym(gens, relators):
    """Normalized Alexander polynomial from generators and relators (sympy)."""
    m = len(gens)
    M = sp.Matrix([[fox_sym(r, g) for g in gens[1:]] for r in relators]) if m > 1 else None
    if m == 1:
        d = sp.Integer(1)
    else:
        minors = []
        for rows in combinations(range(len(relators)), m - 1):
            minors.append(sp.factor(M.extract(list(rows), list(range(m - 1))).det()))
        d = minors[0]
        for x in minors[1:]:
            d = sp.gcd(d, x)
    d = sp.together(sp.expand(d))
    num, den = sp.fraction(d)
    d = sp.Poly(sp.expand(num), t)
    v = d.eval(1)
    d = sp.expand(d.as_expr() * v)
    a = sp.diff(d, t).subs(t, 1)
    return sp.expand(d * t ** (-a))


def laurent_to_sym(p):
    return sum(sp.Integer(c) * t ** e for e, c in p.items())


def alpha_sym(d, kmax):
    """Coefficients of (1-t)^k by direct series expansion in u = 1 - t."""
    u = sp.Symbol("u")
    s = sp.series(d.subs(t, 1 - u), u, 0, kmax + 1).removeO()
    return [int(sp.expand(s).coeff(u, k)) for k in range(2, kmax + 1)]


# -- Magnus ----------------------------------------------------------------------

def magnus_naive(word, k):
    """Magnus expansion as a dict word -> coeff, by literal multiplication."""
    series = {(): 1}
    for g, e in word:
        if e > 0:
            factor = {(): 1, (g,): 1}
        else:
            factor = {(g,) * j: (-1) ** j for j in range(k + 1)}
        out = {}
        for w1, c1 in series.items():
            for w2, c2 in factor.items():
                w = w1 + w2
                if len(w) <= k:
                    out[w] = out.get(w, 0) + c1 * c2
        series = {w: c for w, c in out.items() if c}
    return series


# -- free groups via matrices ------------------------------------------------------

_A = sp.Matrix([[1, 2], [0, 1]])
_B = sp.Matrix([[1, 0], [2, 1]])


def free_rep(g):
    """Images of generators in a free subgroup of SL(2, Z) (Sanov)."""
    # a^i b a^-i (i = 0, 1, ...) freely generate a free subgroup
    ai = _A ** g
    return ai * _B * ai.inv()


def eval_word(word):
    M = sp.eye(2)
    for g, e in word:
        R = free_rep(g)
        M = M * (R if e > 0 else R.inv())
    return M


def bracket_letters(a, b):
    inv = lambda w: [(g, -e) for g, e in reversed(w)]
    return a + inv(b) + inv(a) + b


# -- longitudes straight from a Gauss code -------------------------------------------

def _mul(x, y, k):
    out = {}
    for w1, c1 in x.items():
        for w2, c2 in y.items():
            if len(w1) + len(w2) <= k:
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
    return {w: c for w, c in out.items() if c}


def _inv(x, k):
    # x = 1 + N, x^-1 = sum (-N)^j
    N = {w: -c for w, c in x.items() if w}
    out, power = {(): 1}, {(): 1}
    for _ in range(k):
        power = _mul(power, N, k)
        for w, c in power.items():
            out[w] = out.get(w, 0) + c
    return {w: c for w, c in out.items() if c}


def gauss_longitudes(strands, k):
    """Magnus series of the normalized longitudes of an all-open Gauss code.

    ``strands`` is a list of lists of (crossing, over, sign).  Strand ``s``
    meridian is ``X_s``; the passage through a crossing as under-strand
    conjugates by the over-arc raised to the crossing sign.
    """
    n = len(strands)
    over_at = {}
    for s, st in enumerate(strands):
        for q, (c, over, sign) in enumerate(st):
            if over:
                over_at[c] = (s, sum(1 for x in st[:q] if not x[1]))
    gen = lambda s: {(): 1, (s,): 1}
    arcs = [[gen(s)] * (1 + sum(1 for x in st if not x[1])) for s, st in enumerate(strands)]
    for _ in range(k + 2):
        new = []
        for s, st in enumerate(strands):
            row = [gen(s)]
            for c, over, sign in st:
                if over:
                    continue
                o = over_at[c]
                w = arcs[o[0]][o[1]] if sign > 0 else _inv(arcs[o[0]][o[1]], k)
                row.append(_mul(_mul(_inv(w, k), row[-1], k), w, k))
            new.append(row)
        arcs = new
    out = []
    for s, st in enumerate(strands):
        lam, e = {(): 1}, 0
        for c, over, sign in st:
            if over:
                continue
            o = over_at[c]
            w = arcs[o[0]][o[1]] if sign > 0 else _inv(arcs[o[0]][o[1]], k)
            lam = _mul(lam, w, k)
            e += sign if o[0] == s else 0
        m = gen(s)
        corr = {(): 1}
        for _ in range(abs(e)):
            corr = _mul(corr, _inv(m, k) if e > 0 else m, k)
        out.append(_mul(corr, lam, k))
    return out


def gauss_mu(strands, I):
    """mu_I (1-based) from :func:`gauss_longitudes`."""
    lam = gauss_longitudes(strands, len(I))
    return lam[I[-1] - 1].get(tuple(i - 1 for i in I[:-1]), 0)
