import random
from fractions import Fraction as F

import pytest

from solact.newton import NewtonPolygon, newton_polygon, val_p
from solact.poly import RatPoly, from_ints


def test_val_p():
    assert val_p(F(12), 2) == 2
    assert val_p(F(5, 8), 2) == -3
    assert val_p(F(-9), 3) == 2
    with pytest.raises(ValueError):
        val_p(F(0), 2)


def test_spec_example_split_roots():
    np_ = newton_polygon(from_ints([6, -5, 1]), 2)   # roots 2, 3
    assert sorted(np_.valuation_multiset()) == [F(0), F(1)]


def test_spec_example_ramified():
    np_ = newton_polygon(from_ints([-2, 0, 1]), 2)   # sqrt(2)
    assert np_.segments == ((F(-1, 2), 2),)
    assert np_.valuation_multiset() == [F(1, 2), F(1, 2)]


def test_spec_example_mixed():
    np_ = newton_polygon(from_ints([4, 2, 0, 1]), 2)
    assert sorted(np_.valuation_multiset(), reverse=True) == [F(1), F(1, 2), F(1, 2)]


def test_zero_constant_term_rejected():
    with pytest.raises(ValueError, match="zero root"):
        newton_polygon(from_ints([0, 1, 1]), 3)


def test_slopes_strictly_increasing_and_total_rise():
    rng = random.Random(7)
    for _ in range(40):
        deg = rng.randint(1, 8)
        coeffs = [rng.randint(-40, 40) for _ in range(deg + 1)]
        if coeffs[0] == 0 or coeffs[-1] == 0:
            continue
        f = from_ints(coeffs)
        for p in (2, 3, 5):
            np_ = newton_polygon(f, p)
            slopes = [s for s, _ in np_.segments]
            assert slopes == sorted(set(slopes))
            assert sum(l for _, l in np_.segments) == f.degree
            rise = sum(-s * l for s, l in np_.segments)
            assert rise == val_p(f[0], p) - val_p(f.lc(), p)


def test_rational_coefficients():
    f = RatPoly([F(1, 4), F(1), F(1)])
    np_ = newton_polygon(f, 2)
    # product of root valuations' total equals v_2(1/4) - v_2(1) = -2
    assert sum(-s * l for s, l in np_.segments) == -2
