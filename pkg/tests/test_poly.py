import random
from fractions import Fraction as F

import pytest

from solact.poly import (RatPoly, cyclotomic, discriminant, euler_phi,
                         from_ints, poly_gcd, poly_xgcd, resultant,
                         squarefree_decomposition, squarefree_part)


def test_construction_normalizes_trailing_zeros():
    f = RatPoly([1, 2, 0, 0])
    assert f.degree == 1
    assert RatPoly([]).degree == -1
    assert not RatPoly([0, 0])


def test_arithmetic_roundtrip():
    f = from_ints([1, 2, 3])
    g = from_ints([-1, 1])
    assert (f + g) - g == f
    assert f * g == g * f
    q, r = divmod(f * g + from_ints([5]), g)
    assert q * g + r == f * g + from_ints([5])


def test_exact_div_raises_on_remainder():
    with pytest.raises(ValueError):
        from_ints([1, 1, 1]).exact_div(from_ints([-1, 1]))


def test_evaluation_and_derivative():
    f = from_ints([2, -3, 1])   # (x-1)(x-2)
    assert f(F(1)) == 0 and f(F(2)) == 0 and f(F(0)) == 2
    assert f.derivative() == from_ints([-3, 2])


def test_resultant_spec_examples():
    assert resultant(from_ints([-2, 1]), from_ints([-3, 1])) == -1
    assert resultant(from_ints([1, 0, 1]), from_ints([0, 1])) == 1
    assert resultant(from_ints([-2, 0, 1]), from_ints([-3, 0, 1])) == 1


def test_resultant_vanishes_iff_common_factor():
    rng = random.Random(11)
    for _ in range(25):
        f = from_ints([rng.randint(-5, 5) for _ in range(rng.randint(1, 4))] + [1])
        g = from_ints([rng.randint(-5, 5) for _ in range(rng.randint(1, 4))] + [1])
        if f[0] == 0 or g[0] == 0:
            continue
        res = resultant(f, g)
        common = poly_gcd(f, g).degree > 0
        assert (res == 0) == common


def test_resultant_multiplicative_in_roots():
    # Res(f, g*h) = Res(f, g) Res(f, h)
    f = from_ints([-2, 0, 1])
    g = from_ints([1, 1])
    h = from_ints([-3, 2, 1])
    assert resultant(f, g * h) == resultant(f, g) * resultant(f, h)


def test_gcd_and_xgcd():
    f = from_ints([-1, 0, 1])  # (x-1)(x+1)
    g = from_ints([-1, 1]) * from_ints([3, 1])
    d = poly_gcd(f, g)
    assert d == from_ints([-1, 1]).monic()
    dd, s, t = poly_xgcd(f, g)
    assert dd == d
    assert s * f + t * g == d


def test_squarefree_decomposition():
    f = from_ints([-1, 1]) ** 2 * from_ints([1, 1]) * from_ints([0, 1]) ** 3
    parts = squarefree_decomposition(f)
    rebuilt = RatPoly([1])
    for p, m in parts:
        rebuilt = rebuilt * p ** m
    assert rebuilt.monic() == f.monic()
    assert squarefree_part(f).degree == 3


def test_cyclotomic_basics():
    assert cyclotomic(1) == from_ints([-1, 1])
    assert cyclotomic(2) == from_ints([1, 1])
    assert cyclotomic(4) == from_ints([1, 0, 1])
    assert cyclotomic(12) == from_ints([1, 0, -1, 0, 1])
    for n in (3, 5, 8, 9, 15):
        assert cyclotomic(n).degree == euler_phi(n)
        # roots are n-th roots of unity: Phi_n divides x^n - 1
        xn1 = RatPoly([-1] + [0] * (n - 1) + [1])
        assert xn1 % cyclotomic(n) == RatPoly()


def test_discriminant_quadratic():
    # ax^2 + bx + c has discriminant b^2 - 4ac
    f = RatPoly([F(3), F(-5), F(2)])
    assert discriminant(f) == 25 - 24
