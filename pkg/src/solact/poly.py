"""Exact univariate polynomials over the rationals.

Coefficients are `fractions.Fraction` values stored in ascending degree
order with no trailing zeros; the zero polynomial has degree -1.  All
arithmetic is exact.  Resultants are computed by fraction-free (Bareiss)
elimination on the Sylvester matrix, gcds by a primitive pseudo-remainder
sequence over the integers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence


class RatPoly:
    """Immutable polynomial over Q, ascending coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("RatPoly is immutable")

    # -- basic structure ---------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def lc(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def constant(self) -> Fraction:
        return self[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == RatPoly([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero():
            return "RatPoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*x" if c != 1 else "x")
            else:
                terms.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return "RatPoly(" + " + ".join(terms) + ")"

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "RatPoly":
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RatPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "RatPoly":
        return RatPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "RatPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "RatPoly":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "RatPoly":
        if isinstance(other, (int, Fraction)):
            return RatPoly([c * other for c in self.coeffs])
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RatPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = RatPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other) -> tuple["RatPoly", "RatPoly"]:
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, self.degree - other.degree + 1)
        rem = list(self.coeffs)
        dlc = other.lc()
        dd = other.degree
        while len(rem) - 1 >= dd and any(c != 0 for c in rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < dd:
                break
            k = len(rem) - 1 - dd
            f = rem[-1] / dlc
            q[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] -= f * c
            rem.pop()
        return RatPoly(q), RatPoly(rem)

    def __floordiv__(self, other) -> "RatPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "RatPoly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "RatPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    # -- evaluation and calculus -------------------------------------------

    def __call__(self, x):
        """Horner evaluation; works for Fractions, matrices, field elements."""
        if not self.coeffs:
            return x * 0
        acc = None
        for c in reversed(self.coeffs):
            if acc is None:
                acc = x * 0 + c if not isinstance(x, (int, Fraction)) else Fraction(c)
            else:
                acc = acc * x + c
        return acc

    def derivative(self) -> "RatPoly":
        return RatPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    # -- normal forms --------------------------------------------------------

    def monic(self) -> "RatPoly":
        if self.is_zero():
            return self
        l = self.lc()
        if l == 1:
            return self
        return RatPoly([c / l for c in self.coeffs])

    def primitive(self) -> "RatPoly":
        """Integer-primitive scalar multiple with positive leading coefficient."""
        if self.is_zero():
            return self
        den = reduce(math.lcm, (c.denominator for c in self.coeffs), 1)
        ints = [c * den for c in self.coeffs]
        g = reduce(math.gcd, (abs(int(c)) for c in ints), 0)
        if self.lc() < 0:
            g = -g
        return RatPoly([c / g for c in ints])

    def int_coeffs(self) -> list[int]:
        p = self.primitive()
        return [int(c) for c in p.coeffs]

    def reverse(self) -> "RatPoly":
        """Reciprocal polynomial x^deg * f(1/x)."""
        return RatPoly(list(reversed(self.coeffs)))

    def compose(self, g: "RatPoly") -> "RatPoly":
        acc = RatPoly()
        for c in reversed(self.coeffs):
            acc = acc * g + RatPoly([c])
        return acc

    def shift_arg(self, a: Fraction) -> "RatPoly":
        """f(x + a)."""
        return self.compose(RatPoly([a, 1]))

    def l2_norm_sq(self) -> Fraction:
        return sum((c * c for c in self.coeffs), Fraction(0))

    def height(self) -> Fraction:
        return max((abs(c) for c in self.coeffs), default=Fraction(0))


def _coerce(x) -> RatPoly:
    if isinstance(x, RatPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return RatPoly([x])
    raise TypeError(f"cannot coerce {type(x)!r} to RatPoly")


X = RatPoly([0, 1])
ONE = RatPoly([1])


def from_ints(cs: Sequence[int]) -> RatPoly:
    return RatPoly([Fraction(c) for c in cs])


# ---------------------------------------------------------------------------
# gcd via primitive pseudo-remainder sequence over Z
# ---------------------------------------------------------------------------

def _pseudo_rem(f: list[int], g: list[int]) -> list[int]:
    """Pseudo-remainder of integer coefficient lists (ascending)."""
    f = list(f)
    dg = len(g) - 1
    lg = g[-1]
    while len(f) - 1 >= dg and any(f):
        while f and f[-1] == 0:
            f.pop()
        if len(f) - 1 < dg:
            break
        k = len(f) - 1 - dg
        lf = f[-1]
        f = [c * lg for c in f]
        for i, c in enumerate(g):
            f[k + i] -= lf * c
        f.pop()
    while f and f[-1] == 0:
        f.pop()
    return f


def _int_primitive(cs: list[int]) -> list[int]:
    g = reduce(math.gcd, (abs(c) for c in cs), 0)
    if g == 0:
        return []
    if cs[-1] < 0:
        g = -g
    return [c // g for c in cs]


def poly_gcd(f: RatPoly, g: RatPoly) -> RatPoly:
    """Monic gcd over Q."""
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    a = [int(c) for c in f.primitive().coeffs]
    b = [int(c) for c in g.primitive().coeffs]
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b)
        a, b = b, _int_primitive(r)
    return RatPoly(a).monic()


def poly_xgcd(f: RatPoly, g: RatPoly) -> tuple[RatPoly, RatPoly, RatPoly]:
    """Extended gcd over Q: returns (d, s, t) with s*f + t*g = d, d monic."""
    r0, r1 = f, g
    s0, s1 = ONE, RatPoly()
    t0, t1 = RatPoly(), ONE
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    l = r0.lc()
    return r0.monic(), s0 * (1 / l), t0 * (1 / l)


# ---------------------------------------------------------------------------
# resultant via Bareiss fraction-free elimination on the Sylvester matrix
# ---------------------------------------------------------------------------

def _bareiss_det(rows: list[list], one, is_zero) -> object:
    """Fraction-free determinant over an integral domain with exact division.

    Entries must support +, -, *, and exact_div (or be Fractions).
    """
    n = len(rows)
    if n == 0:
        return one
    m = [row[:] for row in rows]
    prev = one
    sign = 1
    for k in range(n - 1):
        if is_zero(m[k][k]):
            for i in range(k + 1, n):
                if not is_zero(m[i][k]):
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return one * 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = _exact_div(num, prev)
            m[i][k] = one * 0
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def _exact_div(a, b):
    if isinstance(a, Fraction):
        return a / b
    return a.exact_div(b)


def _sylvester(f: RatPoly, g: RatPoly) -> list[list[Fraction]]:
    m, n = f.degree, g.degree
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([Fraction(0)] * i + fc + [Fraction(0)] * (size - i - m - 1))
    for i in range(m):
        rows.append([Fraction(0)] * i + gc + [Fraction(0)] * (size - i - n - 1))
    return rows


def resultant(f: RatPoly, g: RatPoly) -> Fraction:
    """Res(f, g) = lc(f)^deg(g) * prod g(theta_i) over roots of f."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of zero polynomial")
    if f.degree == 0:
        return f.lc() ** g.degree
    if g.degree == 0:
        return g.lc() ** f.degree
    rows = _sylvester(f, g)
    return _bareiss_det(rows, Fraction(1), lambda x: x == 0)


def resultant_in(outer_zero, f_coeffs: Sequence, g_coeffs: Sequence):
    """Resultant of two polynomials whose coefficients live in another ring.

    `f_coeffs`, `g_coeffs` are ascending lists of ring elements (e.g. RatPoly
    values, for resultants of bivariate polynomials taken in one variable);
    `outer_zero` is the ring zero.  Entries need +, -, *, exact_div.
    """
    fc = list(f_coeffs)
    gc = list(g_coeffs)
    while fc and _ring_is_zero(fc[-1]):
        fc.pop()
    while gc and _ring_is_zero(gc[-1]):
        gc.pop()
    if not fc or not gc:
        raise ValueError("resultant of zero polynomial")
    m, n = len(fc) - 1, len(gc) - 1
    one = _ring_one(outer_zero)
    if m == 0:
        return _ring_pow(fc[0], n, one)
    if n == 0:
        return _ring_pow(gc[0], m, one)
    size = m + n
    rows = []
    frev = list(reversed(fc))
    grev = list(reversed(gc))
    for i in range(n):
        rows.append([outer_zero] * i + frev + [outer_zero] * (size - i - m - 1))
    for i in range(m):
        rows.append([outer_zero] * i + grev + [outer_zero] * (size - i - n - 1))
    return _bareiss_det(rows, one, _ring_is_zero)


def _ring_is_zero(x) -> bool:
    if isinstance(x, RatPoly):
        return x.is_zero()
    return x == 0


def _ring_one(zero):
    if isinstance(zero, RatPoly):
        return ONE
    return Fraction(1)


def _ring_pow(x, n: int, one):
    acc = one
    for _ in range(n):
        acc = acc * x
    return acc


def discriminant(f: RatPoly) -> Fraction:
    if f.degree < 1:
        raise ValueError("discriminant needs degree >= 1")
    n = f.degree
    r = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * r / f.lc()


# ---------------------------------------------------------------------------
# squarefree structure (Yun) and cyclotomic polynomials
# ---------------------------------------------------------------------------

def squarefree_part(f: RatPoly) -> RatPoly:
    if f.degree <= 0:
        return f.monic()
    return f.exact_div(poly_gcd(f, f.derivative()) * f.lc()).monic()


def squarefree_decomposition(f: RatPoly) -> list[tuple[RatPoly, int]]:
    """Yun's algorithm: f = lc * prod a_i^i with a_i squarefree, pairwise coprime."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    f = f.monic()
    if f.degree == 0:
        return []
    out = []
    g = poly_gcd(f, f.derivative())
    c = f.exact_div(g)
    d = f.derivative().exact_div(g) - c.derivative()
    i = 1
    while c.degree > 0:
        a = poly_gcd(c, d)
        if a.degree > 0:
            out.append((a, i))
        c2 = c.exact_div(a)
        d = d.exact_div(a) - c2.derivative()
        c = c2
        i += 1
    return out


_cyclotomic_cache: dict[int, RatPoly] = {}


def cyclotomic(n: int) -> RatPoly:
    """The n-th cyclotomic polynomial, computed by exact division."""
    if n < 1:
        raise ValueError("n must be positive")
    if n in _cyclotomic_cache:
        return _cyclotomic_cache[n]
    poly = RatPoly([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            poly = poly.exact_div(cyclotomic(d))
    _cyclotomic_cache[n] = poly
    return poly


def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result
