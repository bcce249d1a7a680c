"""Exact integer Laurent polynomials in one variable ``t``.

Coefficients are Python ints, so nothing here ever rounds.  The module also
carries the two pieces of exact linear algebra the Alexander polynomial needs:
a gcd in ``Z[t]`` (primitive pseudo-remainder sequence) and a determinant of a
matrix of Laurent polynomials.
"""

from __future__ import annotations

from functools import reduce
from math import gcd as igcd
from typing import Iterable, Mapping, Sequence


class LaurentPoly:
    """Finite sum ``sum c_e t^e`` with integer coefficients.

    Instances are immutable and hashable.  Zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = int(c)
                if c:
                    clean[int(e)] = c
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int], low: int = 0) -> "LaurentPoly":
        """Dense coefficients ``coeffs[i]`` of ``t^(low + i)``."""
        return cls({low + i: c for i, c in enumerate(coeffs)})

    # inspection ---------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def min_exp(self) -> int:
        return next(iter(self._terms)) if self._terms else 0

    def max_exp(self) -> int:
        return next(reversed(self._terms)) if self._terms else 0

    def coeff(self, e: int) -> int:
        return self._terms.get(e, 0)

    def dense(self) -> tuple[int, list[int]]:
        """``(low, coeffs)`` with ``coeffs[i]`` the coefficient of ``t^(low+i)``."""
        if not self._terms:
            return 0, []
        lo, hi = self.min_exp(), self.max_exp()
        return lo, [self._terms.get(e, 0) for e in range(lo, hi + 1)]

    def norm1(self) -> int:
        return sum(abs(c) for c in self._terms.values())

    def __call__(self, x):
        total = 0
        for e, c in self._terms.items():
            total += c * x ** e
        return total

    def at_one(self) -> int:
        return sum(self._terms.values())

    def derivative_at_one(self) -> int:
        return sum(e * c for e, c in self._terms.items())

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials are invertible")
            (e, c), = self._terms.items()
            if abs(c) != 1:
                raise ValueError("only unit monomials are invertible")
            return LaurentPoly({-e * (-n): c ** (-n)})
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t^k``."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self._terms!r})"

    def __str__(self):
        return format_laurent(self)

    # serialization ------------------------------------------------------
    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in self._terms.items()]

    @classmethod
    def from_json(cls, data: Iterable[Sequence[int]]) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in data})


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.constant(x)
    raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
T = LaurentPoly.monomial(1)


def format_laurent(p: LaurentPoly) -> str:
    """Sparse ``c*t^e`` sum in increasing exponent order, e.g. ``2 - 3*t + t^-1``."""
    if p.is_zero():
        return "0"
    parts = []
    for e, c in p.items():
        if e == 0:
            mono = str(abs(c))
        else:
            power = "t" if e == 1 else f"t^{e}"
            mono = power if abs(c) == 1 else f"{abs(c)}*{power}"
        if not parts:
            parts.append(mono if c > 0 else f"-{mono}")
        else:
            parts.append(("+ " if c > 0 else "- ") + mono)
    return " ".join(parts)


# ---------------------------------------------------------------------------
# gcd in Z[t^{+-1}]

def _content(coeffs: Sequence[int]) -> int:
    return reduce(igcd, coeffs, 0)


def _trim(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _primitive(coeffs: list[int]) -> list[int]:
    c = _content(coeffs)
    if c == 0:
        return []
    out = [x // c for x in coeffs]
    if out[-1] < 0:
        out = [-x for x in out]
    return out


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of ``a`` by ``b`` (dense, low degree first)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        la = a[-1]
        a = [x * lb for x in a]
        for i, y in enumerate(b):
            a[i + da - db] -= la * y
        _trim(a)
    return a


def poly_gcd(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Gcd of two integer polynomials via the primitive PRS.

    Coefficients are low-degree first; the result has positive leading
    coefficient (or is ``[]`` for gcd(0, 0)).
    """
    a = _trim(list(a))
    b = _trim(list(b))
    if not a:
        return [x * (1 if b[-1] > 0 else -1) for x in b]
    if not b:
        return [x * (1 if a[-1] > 0 else -1) for x in a]
    ca, cb = _content(a), _content(b)
    c = igcd(ca, cb)
    a, b = _primitive(a), _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, _primitive(r) if r else []
    return [c * x for x in _primitive(a)]


def laurent_gcd(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    """Gcd of Laurent polynomials, defined up to units ``+-t^a``.

    The representative returned has lowest exponent 0 and positive leading
    coefficient.  The gcd of an empty family (or of zeros only) is zero.
    """
    acc: list[int] = []
    for p in polys:
        if p.is_zero():
            continue
        _, dense = p.dense()
        acc = poly_gcd(acc, dense) if acc else [x * (1 if dense[-1] > 0 else -1) for x in dense]
        if acc == [1]:
            break
    return LaurentPoly.from_coeffs(acc)


# ---------------------------------------------------------------------------
# determinants

def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        rowk = m[k]
        for i in range(k + 1, n):
            rowi = m[i]
            mik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * pivot - mik * rowk[j]) // prev
            rowi[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def laurent_det(matrix: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Determinant of a square matrix over ``Z[t^{+-1}]``.

    Rows are shifted into ``Z[t]``, the matrix is evaluated at ``t = 2^b``
    with ``b`` large enough that the integer determinant encodes every
    coefficient (Kronecker substitution), and the balanced base-``2^b``
    digits are read back.  The coefficient bound is the product of the row
    1-norms, which dominates every coefficient of the expanded determinant.
    """
    n = len(matrix)
    if n == 0:
        return ONE
    shifts = []
    bound = 1
    max_deg = 0
    for row in matrix:
        lows = [p.min_exp() for p in row if not p.is_zero()]
        if not lows:
            return ZERO
        s = -min(lows)
        shifts.append(s)
        bound *= sum(p.norm1() for p in row)
        max_deg = max(max_deg, max(p.max_exp() + s for p in row if not p.is_zero()))
    bits = bound.bit_length() + 2
    base = 1 << bits
    ints = []
    for row, s in zip(matrix, shifts):
        ints.append([p.shift(s)(base) if not p.is_zero() else 0 for p in row])
    value = bareiss_det(ints)
    coeffs = []
    half = base >> 1
    mask = base - 1
    while value:
        digit = value & mask
        if digit >= half:
            digit -= base
        coeffs.append(digit)
        value = (value - digit) >> bits
    return LaurentPoly.from_coeffs(coeffs).shift(-sum(shifts))
