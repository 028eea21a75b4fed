"""Newton polygons: p-adic valuations of polynomial roots from rational data.

The lower convex hull of the points (i, v_p(a_i)) of a polynomial
f = sum a_i x^i determines the p-adic valuations of the roots of f in an
algebraic closure of Q_p: each hull segment of slope s and horizontal
length l contributes l roots of valuation -s.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import RatPoly


def val_p(q: Fraction, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    if q == 0:
        raise ValueError("valuation of zero")
    v = 0
    n = q.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = q.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower hull segments of a polynomial at a prime.

    segments: (slope, length) pairs with strictly increasing slopes whose
    lengths sum to the degree of the input.
    """

    prime: int
    segments: tuple[tuple[Fraction, int], ...]

    def root_valuations(self) -> list[tuple[Fraction, int]]:
        """(valuation, multiplicity) pairs; valuation = -slope."""
        return [(-s, l) for s, l in self.segments]

    def valuation_multiset(self) -> list[Fraction]:
        out = []
        for s, l in self.segments:
            out.extend([-s] * l)
        return out


def newton_polygon(f: RatPoly, p: int) -> NewtonPolygon:
    """Newton polygon of f at p.

    Requires a nonzero constant term; callers strip powers of x first and
    account for those roots separately.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f[0] == 0:
        raise ValueError("zero root present")
    points = [(i, val_p(c, p)) for i, c in enumerate(f.coeffs) if c != 0]
    hull = _lower_hull(points)
    segments = []
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        segments.append((Fraction(y1 - y0, x1 - x0), x1 - x0))
    return NewtonPolygon(p, tuple(segments))


def _lower_hull(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    hull: list[tuple[int, int]] = []
    for pt in points:
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            # keep hull[-1] only if it lies strictly below the chord to pt
            if (y1 - y0) * (pt[0] - x0) < (pt[1] - y0) * (x1 - x0):
                break
            hull.pop()
        hull.append(pt)
    return hull
