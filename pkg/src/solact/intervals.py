"""Certified interval arithmetic with exact rational endpoints.

Ring operations on intervals are exact (Fraction endpoints, no rounding).
Transcendental logs are delegated to mpmath's outward-rounded interval
context and the endpoints pulled back into Fractions, so every interval
produced here is a true enclosure.

Also houses certified root enclosures for squarefree rational polynomials:
real roots via exact Sturm isolation plus interval Newton refinement,
complex roots via the interval Newton operator on rational rectangles
seeded from high-precision floating approximations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import iv

from .poly import RatPoly, poly_gcd


@dataclass(frozen=True)
class RatInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @staticmethod
    def point(q) -> "RatInterval":
        q = Fraction(q)
        return RatInterval(q, q)

    @staticmethod
    def hull(values) -> "RatInterval":
        vs = [Fraction(v) for v in values]
        return RatInterval(min(vs), max(vs))

    def __add__(self, other) -> "RatInterval":
        other = _as_interval(other)
        return RatInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self) -> "RatInterval":
        return RatInterval(-self.hi, -self.lo)

    def __sub__(self, other) -> "RatInterval":
        return self + (-_as_interval(other))

    def __rsub__(self, other) -> "RatInterval":
        return _as_interval(other) + (-self)

    def __mul__(self, other) -> "RatInterval":
        other = _as_interval(other)
        cands = (self.lo * other.lo, self.lo * other.hi,
                 self.hi * other.lo, self.hi * other.hi)
        return RatInterval(min(cands), max(cands))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatInterval":
        other = _as_interval(other)
        if other.contains_zero():
            raise ZeroDivisionError("interval division by interval containing 0")
        cands = (self.lo / other.lo, self.lo / other.hi,
                 self.hi / other.lo, self.hi / other.hi)
        return RatInterval(min(cands), max(cands))

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def contains(self, q) -> bool:
        q = Fraction(q)
        return self.lo <= q <= self.hi

    def strictly_inside(self, other: "RatInterval") -> bool:
        return other.lo < self.lo and self.hi < other.hi

    def intersect(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    def sign(self) -> int | None:
        """1, -1, 0 (exact point zero) or None when undecided."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == 0 and self.hi == 0:
            return 0
        return None

    def width(self) -> Fraction:
        return self.hi - self.lo

    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def abs(self) -> "RatInterval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RatInterval(Fraction(0), max(-self.lo, self.hi))

    def __repr__(self):
        return f"[{float(self.lo):.12g}, {float(self.hi):.12g}]"


def _as_interval(x) -> RatInterval:
    if isinstance(x, RatInterval):
        return x
    return RatInterval.point(x)


def round_out(iv: RatInterval, bits: int) -> RatInterval:
    """Outward rounding to dyadic endpoints with denominator 2^bits.

    Keeps the enclosure valid while bounding the bit size of the endpoints;
    essential inside Newton refinement loops, where exact endpoints would
    otherwise double in length at every step.
    """
    scale = 1 << bits
    lo = Fraction(math.floor(iv.lo * scale), scale)
    hi = Fraction(-math.floor(-iv.hi * scale), scale)
    return RatInterval(lo, hi)


def _width_bits(width: Fraction) -> int:
    if width >= 1:
        return 8
    return (width.denominator // max(width.numerator, 1)).bit_length() + 8


ZERO_I = RatInterval(Fraction(0), Fraction(0))
ONE_I = RatInterval(Fraction(1), Fraction(1))


def _mpf_to_fraction(t) -> Fraction:
    # mpmath may hand back gmpy2 mpz values; normalize to Python ints so they
    # never leak into Fraction internals
    p, q = mpmath.libmp.to_rational(t)
    return Fraction(int(p), int(q))


def log_interval(q, prec_bits: int = 128) -> RatInterval:
    """Certified enclosure of log(q) for a positive rational or interval."""
    if isinstance(q, RatInterval):
        if q.lo <= 0:
            raise ValueError("log of interval touching 0")
        return RatInterval(log_interval(q.lo, prec_bits).lo,
                           log_interval(q.hi, prec_bits).hi)
    q = Fraction(q)
    if q <= 0:
        raise ValueError("log of non-positive rational")
    old = iv.prec
    try:
        iv.prec = prec_bits + 8
        val = iv.log(iv.mpf(q.numerator) / iv.mpf(q.denominator))
        lo_t, hi_t = val._mpi_
        return RatInterval(_mpf_to_fraction(lo_t), _mpf_to_fraction(hi_t))
    finally:
        iv.prec = old


def log_abs_interval(x: RatInterval, prec_bits: int = 128) -> RatInterval:
    """log|x| for an interval certified away from zero."""
    a = x.abs()
    if a.lo <= 0:
        raise ValueError("interval not certified away from 0")
    return log_interval(a, prec_bits)


def eval_interval(f: RatPoly, x: RatInterval) -> RatInterval:
    acc = ZERO_I
    for c in reversed(f.coeffs):
        acc = acc * x + RatInterval.point(c)
    return acc


# ---------------------------------------------------------------------------
# exact complex rationals and rectangles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QComplex:
    re: Fraction
    im: Fraction

    def __add__(self, o):
        return QComplex(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return QComplex(self.re - o.re, self.im - o.im)

    def __mul__(self, o):
        return QComplex(self.re * o.re - self.im * o.im,
                        self.re * o.im + self.im * o.re)

    def mag2(self) -> Fraction:
        return self.re * self.re + self.im * self.im


def _square(x: RatInterval) -> RatInterval:
    if x.lo >= 0:
        return RatInterval(x.lo ** 2, x.hi ** 2)
    if x.hi <= 0:
        return RatInterval(x.hi ** 2, x.lo ** 2)
    return RatInterval(Fraction(0), max(x.lo ** 2, x.hi ** 2))


def eval_qcomplex(f: RatPoly, z: QComplex) -> QComplex:
    acc = QComplex(Fraction(0), Fraction(0))
    for c in reversed(f.coeffs):
        acc = acc * z + QComplex(Fraction(c), Fraction(0))
    return acc


@dataclass(frozen=True)
class ComplexBox:
    re: RatInterval
    im: RatInterval

    def __add__(self, o):
        return ComplexBox(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return ComplexBox(self.re - o.re, self.im - o.im)

    def __mul__(self, o):
        return ComplexBox(self.re * o.re - self.im * o.im,
                          self.re * o.im + self.im * o.re)

    def mag2(self) -> RatInterval:
        rr = _square(self.re)
        ii = _square(self.im)
        return RatInterval(rr.lo + ii.lo, rr.hi + ii.hi)

    def reciprocal(self) -> "ComplexBox":
        m2 = self.mag2()
        if m2.lo <= 0:
            raise ZeroDivisionError("box contains 0")
        return ComplexBox(self.re / m2, -self.im / m2)

    def center(self) -> QComplex:
        return QComplex(self.re.mid(), self.im.mid())

    def strictly_inside(self, other: "ComplexBox") -> bool:
        return self.re.strictly_inside(other.re) and self.im.strictly_inside(other.im)

    def intersect(self, other: "ComplexBox") -> "ComplexBox":
        return ComplexBox(self.re.intersect(other.re), self.im.intersect(other.im))

    def width(self) -> Fraction:
        return max(self.re.width(), self.im.width())

    @staticmethod
    def from_point(z: QComplex, r: Fraction) -> "ComplexBox":
        return ComplexBox(RatInterval(z.re - r, z.re + r),
                          RatInterval(z.im - r, z.im + r))


def eval_box(f: RatPoly, z: ComplexBox) -> ComplexBox:
    acc = ComplexBox(ZERO_I, ZERO_I)
    for c in reversed(f.coeffs):
        acc = acc * z + ComplexBox(RatInterval.point(c), ZERO_I)
    return acc


# ---------------------------------------------------------------------------
# Sturm isolation of real roots
# ---------------------------------------------------------------------------

def sturm_chain(f: RatPoly) -> list[RatPoly]:
    chain = [f, f.derivative()]
    while not chain[-1].is_zero():
        chain.append(-(chain[-2] % chain[-1]))
    chain.pop()
    return chain


def _sign_variations(chain: list[RatPoly], x: Fraction) -> int:
    signs = []
    for g in chain:
        v = g(x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def root_bound(f: RatPoly) -> Fraction:
    """Cauchy bound: all complex roots have |z| < bound."""
    lc = abs(f.lc())
    return 1 + max(abs(c) for c in f.coeffs) / lc


def isolate_real_roots(f: RatPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint isolating intervals for the real roots of a squarefree f.

    Exact rational roots come back as degenerate [r, r] intervals; open
    intervals (a, b) have f(a), f(b) != 0 and exactly one root inside.
    """
    if f.degree < 1:
        return []
    chain = sturm_chain(f)
    bound = root_bound(f)
    out: list[tuple[Fraction, Fraction]] = []

    def count(a: Fraction, b: Fraction) -> int:
        return _sign_variations(chain, a) - _sign_variations(chain, b)

    stack = [(-bound, bound)]
    while stack:
        a, b = stack.pop()
        n = count(a, b)
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        if f(m) == 0:
            out.append((m, m))
            # exclusion zone certified to contain only the root m
            eps = (b - a) / 4
            while True:
                lo, hi = m - eps, m + eps
                if f(lo) != 0 and f(hi) != 0 and count(lo, hi) == 1:
                    break
                eps /= 2
            stack.append((a, lo))
            stack.append((hi, b))
        else:
            stack.append((a, m))
            stack.append((m, b))
    out.sort()
    return out


# ---------------------------------------------------------------------------
# certified root enclosures
# ---------------------------------------------------------------------------

class PrecisionError(Exception):
    """Raised when a certified enclosure cannot reach the requested width."""


class RealRoot:
    """A certified enclosure of one simple real root of a squarefree poly."""

    def __init__(self, f: RatPoly, a: Fraction, b: Fraction):
        self.f = f
        self.df = f.derivative()
        self.exact: Fraction | None = a if a == b else None
        self.interval = RatInterval(a, b)

    def refine_to(self, width: Fraction) -> RatInterval:
        if self.exact is not None:
            return RatInterval.point(self.exact)
        iv_ = self.interval
        bits = _width_bits(width)
        budget = 4 * (bits + 64)
        while iv_.width() > width and budget > 0:
            budget -= 1
            m = iv_.mid()
            fm = self.f(m)
            if fm == 0:
                self.exact = m
                self.interval = RatInterval.point(m)
                return self.interval
            d = eval_interval(self.df, iv_)
            if not d.contains_zero():
                candidate = RatInterval.point(m) - RatInterval.point(fm) / d
                nxt = round_out(candidate, bits).intersect(iv_)
                if nxt.width() < iv_.width():
                    iv_ = nxt
                    continue
            # bisection fallback keeps the sign change
            fa = self.f(iv_.lo)
            if fa == 0:
                self.exact = iv_.lo
                self.interval = RatInterval.point(iv_.lo)
                return self.interval
            if fa * fm < 0:
                iv_ = RatInterval(iv_.lo, m)
            else:
                iv_ = RatInterval(m, iv_.hi)
        if iv_.width() > width:
            raise PrecisionError(f"real root stuck at width {float(iv_.width()):g}")
        self.interval = iv_
        return iv_


class ComplexRoot:
    """A certified box around one root with positive imaginary part."""

    def __init__(self, f: RatPoly, box: ComplexBox):
        self.f = f
        self.df = f.derivative()
        self.box = box

    def refine_to(self, width: Fraction) -> ComplexBox:
        box = self.box
        bits = _width_bits(width)
        budget = 4 * (bits + 64)
        while box.width() > width and budget > 0:
            budget -= 1
            m = _round_center(box, bits)
            fm = eval_qcomplex(self.f, m)
            d = eval_box(self.df, box)
            step = ComplexBox(RatInterval.point(fm.re), RatInterval.point(fm.im)) * d.reciprocal()
            newbox = ComplexBox(RatInterval.point(m.re), RatInterval.point(m.im)) - step
            newbox = ComplexBox(round_out(newbox.re, bits), round_out(newbox.im, bits))
            nxt = newbox.intersect(box)
            if nxt.width() >= box.width():
                raise PrecisionError(f"complex root stuck at width {float(box.width()):g}")
            box = nxt
        if box.width() > width:
            raise PrecisionError(f"complex root stuck at width {float(box.width()):g}")
        self.box = box
        return box


def _round_center(box: ComplexBox, bits: int) -> QComplex:
    scale = 1 << bits
    re = Fraction(math.floor(box.re.mid() * scale), scale)
    im = Fraction(math.floor(box.im.mid() * scale), scale)
    # the rounded center may leave a very thin box; clamp back inside
    re = min(max(re, box.re.lo), box.re.hi)
    im = min(max(im, box.im.lo), box.im.hi)
    return QComplex(re, im)


def _newton_certify(f: RatPoly, box: ComplexBox) -> ComplexBox | None:
    """Interval Newton containment test: a success proves a unique root in box."""
    df = f.derivative()
    m = box.center()
    fm = eval_qcomplex(f, m)
    try:
        d = eval_box(df, box)
        step = ComplexBox(RatInterval.point(fm.re), RatInterval.point(fm.im)) * d.reciprocal()
    except ZeroDivisionError:
        return None
    n = ComplexBox(RatInterval.point(m.re), RatInterval.point(m.im)) - step
    if n.strictly_inside(box):
        return n.intersect(box)
    return None


def _rationalize_mpf(x) -> Fraction:
    return _mpf_to_fraction(mpmath.mpf(x)._mpf_)


def _round_dyadic(q: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(math.floor(q * scale), scale)


def all_roots(f: RatPoly, initial_width: Fraction = Fraction(1, 2 ** 32),
              ) -> tuple[list[RealRoot], list[ComplexRoot]]:
    """Certified enclosures for all roots of squarefree f.

    Real roots are isolated exactly (Sturm); non-real roots are certified by
    the interval Newton test around floating seeds, returning one
    representative per conjugate pair (positive imaginary part).  The count
    identity n_real + 2 * n_pairs = deg f is verified before returning.
    """
    if f.degree < 1:
        return [], []
    sf = f.monic()
    if poly_gcd(sf, sf.derivative()).degree > 0:
        raise ValueError("all_roots requires a squarefree polynomial")
    reals = [RealRoot(sf, a, b) for a, b in isolate_real_roots(sf)]
    for r in reals:
        r.refine_to(initial_width)
    n_pairs = (sf.degree - len(reals)) // 2
    complexes: list[ComplexRoot] = []
    if n_pairs:
        complexes = _certified_complex_pairs(sf, n_pairs, initial_width)
    if len(reals) + 2 * len(complexes) != sf.degree:
        raise PrecisionError("root count mismatch after certification")
    return reals, complexes


def _certified_complex_pairs(f: RatPoly, n_pairs: int, width: Fraction,
                             ) -> list[ComplexRoot]:
    ints = [int(c) for c in f.primitive().coeffs]
    for dps in (40, 80, 160, 320, 640):
        old = mpmath.mp.dps
        try:
            mpmath.mp.dps = dps
            try:
                approx = mpmath.polyroots([mpmath.mpf(c) for c in reversed(ints)],
                                          maxsteps=200, extraprec=2 * dps)
            except mpmath.libmp.NoConvergence:
                continue
        finally:
            mpmath.mp.dps = old
        cands = [z for z in approx if mpmath.im(z) > 0]
        if len(cands) != n_pairs:
            continue
        seed_bits = max(3 * dps, 64)
        boxes = []
        ok = True
        for z in cands:
            m = QComplex(_round_dyadic(_rationalize_mpf(mpmath.re(z)), seed_bits),
                         _round_dyadic(_rationalize_mpf(mpmath.im(z)), seed_bits))
            box = None
            r = Fraction(1, 2 ** (dps // 2))
            for _ in range(12):
                cand = ComplexBox.from_point(m, r)
                got = _newton_certify(f, cand)
                if got is not None:
                    box = ComplexBox(round_out(got.re, seed_bits),
                                     round_out(got.im, seed_bits)).intersect(cand)
                    break
                r *= 4
            if box is None:
                ok = False
                break
            boxes.append(box)
        if not ok:
            continue
        if _boxes_disjoint(boxes):
            roots = [ComplexRoot(f, b) for b in boxes]
            for rt in roots:
                rt.refine_to(width)
            return roots
    raise PrecisionError("could not certify complex roots")


def _boxes_disjoint(boxes: list[ComplexBox]) -> bool:
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            a, b = boxes[i], boxes[j]
            if not (a.re.hi < b.re.lo or b.re.hi < a.re.lo
                    or a.im.hi < b.im.lo or b.im.hi < a.im.lo):
                return False
    return True
