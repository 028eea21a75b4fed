import math
import random
from fractions import Fraction as F

import pytest

from solact.intervals import (ComplexBox, PrecisionError, RatInterval,
                              all_roots, eval_interval, isolate_real_roots,
                              log_abs_interval, log_interval, round_out)
from solact.poly import from_ints


def test_interval_arithmetic():
    a = RatInterval(F(1), F(2))
    b = RatInterval(F(-1), F(3))
    assert (a + b).lo == 0 and (a + b).hi == 5
    assert (a * b).lo == -2 and (a * b).hi == 6
    assert (-a).lo == -2
    assert a.intersect(RatInterval(F(3, 2), F(5))).lo == F(3, 2)
    with pytest.raises(ZeroDivisionError):
        a / b
    assert (a / RatInterval(F(2), F(4))).lo == F(1, 4)


def test_round_out_contains():
    iv = RatInterval(F(1, 3), F(2, 3))
    r = round_out(iv, 16)
    assert r.lo <= iv.lo and iv.hi <= r.hi
    assert r.lo.denominator <= 2 ** 16


def test_log_interval_certified():
    for q in (F(2), F(3), F(10, 7), F(1, 5)):
        iv = log_interval(q, 96)
        true = math.log(q)
        assert iv.lo <= F(true).limit_denominator(10 ** 14) + F(1, 10 ** 12)
        assert float(iv.lo) <= true <= float(iv.hi) or abs(float(iv.mid()) - true) < 1e-12
        assert iv.width() < F(1, 2 ** 90)


def test_log_interval_rejects_nonpositive():
    with pytest.raises(ValueError):
        log_interval(F(0), 64)
    with pytest.raises(ValueError):
        log_interval(F(-3), 64)


def test_isolate_real_roots_counts():
    # (x-1)(x-2)(x+5): three real roots
    f = from_ints([-1, 1]) * from_ints([-2, 1]) * from_ints([5, 1])
    ivs = isolate_real_roots(f.monic())
    assert len(ivs) == 3
    # x^2+1: none
    assert isolate_real_roots(from_ints([1, 0, 1])) == []


def test_isolate_exact_rational_roots():
    f = from_ints([0, 1]) * from_ints([-1, 2])
    ivs = isolate_real_roots(f.monic())
    points = [a for a, b in ivs if a == b]
    assert F(0) in points


def test_all_roots_counts_and_refinement():
    f = from_ints([-1, -1, 1])    # golden ratio
    reals, cplx = all_roots(f)
    assert len(reals) == 2 and not cplx
    phi = reals[1].refine_to(F(1, 2 ** 100))
    true = (1 + 5 ** 0.5) / 2
    assert phi.lo <= F(true).limit_denominator(10 ** 15) <= phi.hi \
        or abs(float(phi.mid()) - true) < 1e-15
    assert phi.width() <= F(1, 2 ** 100)


def test_all_roots_complex_certified():
    f = from_ints([4, 0, 1])      # roots +-2i
    reals, cplx = all_roots(f)
    assert not reals and len(cplx) == 1
    box = cplx[0].refine_to(F(1, 2 ** 80))
    assert box.im.lo > 0
    m2 = box.mag2()
    assert m2.contains(F(4))


def test_all_roots_mixed():
    f = from_ints([1, 0, 1]) * from_ints([-2, 1]) * from_ints([-1, -1, 1])
    reals, cplx = all_roots(f)
    assert len(reals) + 2 * len(cplx) == f.degree
    assert len(cplx) == 1


def test_all_roots_requires_squarefree():
    with pytest.raises(ValueError):
        all_roots(from_ints([-1, 1]) * from_ints([-1, 1]))


def test_eval_interval_encloses():
    f = from_ints([1, -3, 2])
    x = RatInterval(F(0), F(1))
    out = eval_interval(f, x)
    rng = random.Random(1)
    for _ in range(20):
        t = F(rng.randint(0, 100), 100)
        assert out.contains(f(t))


def test_log_abs_interval():
    x = RatInterval(F(2), F(2))
    lg = log_abs_interval(x, 80)
    assert abs(float(lg.mid()) - math.log(2)) < 1e-20
    with pytest.raises(ValueError):
        log_abs_interval(RatInterval(F(-1), F(1)), 64)
