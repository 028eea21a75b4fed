import math
import random
from fractions import Fraction as F

import pytest

from solact.action import SolenoidAction
from solact.linalg import QMatrix
from solact.numfield import NumberFieldAction
from solact.poly import RatPoly, from_ints
from solact.weights import (SignCertificationError, archimedean_weights,
                            bad_primes, block_bad_primes,
                            check_product_formula, coarse_classes,
                            exposed_classes, padic_weights,
                            stable_horospherical)

T23 = SolenoidAction((QMatrix([[2]]), QMatrix([[3]])))
NF23 = NumberFieldAction(from_ints([-2, 1]), (RatPoly([2]), RatPoly([3])),
                         QMatrix.identity(1))
GOLDEN = from_ints([-1, -1, 1])


def golden_field(*mults):
    return NumberFieldAction(GOLDEN, tuple(RatPoly(m) for m in mults),
                             QMatrix.identity(2))


def all_weights(nf, prec=96):
    ws = list(archimedean_weights(nf, prec))
    for p in block_bad_primes(nf):
        ws.extend(padic_weights(nf, p))
    return ws


def test_bad_primes_examples():
    assert bad_primes(T23).primes == (2, 3)
    uni = SolenoidAction((QMatrix([[1, 1], [0, 1]]),))
    assert bad_primes(uni).primes == ()
    tw = SolenoidAction((QMatrix([[0, -2], [2, 0]]), QMatrix([[3, 0], [0, 3]])))
    assert bad_primes(tw).primes == (2, 3)


def test_block_bad_primes_detects_hidden_unit_failure():
    # zeta = (3+4i)/5 has norm 1 but nonzero valuations at the split prime 5
    gauss = from_ints([1, 0, 1])
    nf = NumberFieldAction(gauss, (RatPoly([F(3, 5), F(4, 5)]),), QMatrix.identity(2))
    assert 5 in block_bad_primes(nf)
    ws = padic_weights(nf, 5)
    assert sorted(w.vals for w in ws) == [(F(-1),), (F(1),)]


def test_archimedean_weights_examples():
    ws = archimedean_weights(NF23, 96)
    assert len(ws) == 1 and ws[0].delta == 1
    e = ws[0].entries(96)
    assert abs(float(e[0].mid()) - math.log(2)) < 1e-20
    assert abs(float(e[1].mid()) - math.log(3)) < 1e-20

    g = golden_field([0, 1])
    wg = archimedean_weights(g, 96)
    assert [w.delta for w in wg] == [1, 1]
    vals = sorted(float(w.entries(96)[0].mid()) for w in wg)
    phi = (1 + 5 ** 0.5) / 2
    assert abs(vals[0] + math.log(phi)) < 1e-12
    assert abs(vals[1] - math.log(phi)) < 1e-12

    tw = NumberFieldAction(from_ints([4, 0, 1]), (RatPoly([0, 1]), RatPoly([3])),
                           QMatrix.identity(2))
    wt = archimedean_weights(tw, 96)
    assert len(wt) == 1 and wt[0].delta == 2
    assert abs(float(wt[0].entries(96)[0].mid()) - math.log(2)) < 1e-12
    assert abs(float(wt[0].entries(96)[1].mid()) - math.log(3)) < 1e-12


def test_padic_weights_examples():
    w2 = padic_weights(NF23, 2)
    assert len(w2) == 1 and w2[0].delta == 1 and w2[0].vals == (F(1), F(0))
    w3 = padic_weights(NF23, 3)
    assert w3[0].vals == (F(0), F(1))
    # 2+theta on the golden field: charpoly x^2-5x+5, ramified at 5
    g = golden_field([2, 1])
    w5 = padic_weights(g, 5)
    assert len(w5) == 1 and w5[0].delta == 2 and w5[0].vals == (F(1, 2),)


def test_padic_weights_split_prime_joint_matching():
    # golden field at p=11: theta has valuations (0, 0)? both conjugates are
    # units; use zeta = theta and 2+theta jointly so marginals differ
    g = golden_field([0, 1], [2, 1])
    # 11 splits x^2-x-1; norms: N(theta) = -1, N(2+theta) = 5
    assert 11 not in block_bad_primes(g)
    w5 = padic_weights(g, 5)
    # N(2+theta) = 5: the two places over 5 ... x^2-5x+5 ramifies: delta 2
    assert sum(w.delta for w in w5) == 2
    for w in w5:
        assert w.vals[0] == 0  # theta is a 5-adic unit


def test_padic_marginal_reaggregation():
    """Cluster vectors re-aggregate to the Newton polygon marginals."""
    from solact.newton import newton_polygon
    rng = random.Random(6)
    fields = [GOLDEN, from_ints([1, 0, 1]), from_ints([-2, 0, 1]),
              from_ints([-1, 3, 0, 1])]
    for f in fields:
        nf0 = NumberFieldAction(f, (RatPoly([0, 1]),), QMatrix.identity(f.degree))
        mults = []
        for _ in range(2):
            g = RatPoly([F(rng.randint(-6, 6), rng.choice([1, 2]))
                         for _ in range(f.degree)])
            if g.is_zero() or nf0.mult_matrix(g).charpoly()[0] == 0:
                g = RatPoly([2])
            mults.append(g)
        nf = NumberFieldAction(f, tuple(mults), QMatrix.identity(f.degree))
        for p in block_bad_primes(nf):
            ws = padic_weights(nf, p)
            assert sum(w.delta for w in ws) == f.degree
            for j in range(2):
                marginal = sorted(newton_polygon(
                    nf.element_charpoly([1 if t == j else 0 for t in range(2)]),
                    p).valuation_multiset())
                reagg = sorted(v for w in ws for v in [w.vals[j]] * w.delta)
                assert reagg == marginal


def test_coarse_classes_x2x3():
    cls, zeros = coarse_classes(all_weights(NF23))
    assert not zeros
    assert len(cls) == 3
    dirs = {c.direction() for c in cls if not c.members[0].is_archimedean()}
    assert dirs == {(F(-1), F(0)), (F(0), F(-1))}
    arch = [c for c in cls if c.members[0].is_archimedean()]
    assert len(arch) == 1 and arch[0].delta_total == 1


def test_coarse_classes_merge_identical_blocks():
    ws = all_weights(NF23) + all_weights(NF23)
    cls, _ = coarse_classes(ws)
    assert len(cls) == 3
    assert all(c.delta_total == 2 for c in cls)
    assert all(c.certainty == "exact" for c in cls)


def test_coarse_classes_opposite_golden():
    # zeta = (theta, 1+theta): weights (log phi, 2 log phi), (-log phi, -2 log phi)
    g = golden_field([0, 1], [1, 1])
    cls, zeros = coarse_classes(all_weights(g))
    assert not zeros
    assert len(cls) == 2
    assert all(len(c.members) == 1 for c in cls)


def test_coarse_classes_order_independent():
    ws = all_weights(NF23)
    cls1, _ = coarse_classes(ws)
    cls2, _ = coarse_classes(list(reversed(ws)))
    sig1 = sorted(tuple(sorted(w.place.label() for w in c.members)) for c in cls1)
    sig2 = sorted(tuple(sorted(w.place.label() for w in c.members)) for c in cls2)
    assert sig1 == sig2


def test_stable_horospherical_examples():
    cls, _ = coarse_classes(all_weights(NF23))
    rep = stable_horospherical(cls, [1, 1])
    stable_places = {w.place.prime for c in rep.stable for w in c.members}
    assert stable_places == {2, 3}
    assert rep.total_dimension == 2
    assert rep.per_place_split == {"2": 1, "3": 1}

    rep_neg = stable_horospherical(cls, [-1, -1])
    assert len(rep_neg.stable) == 1
    assert rep_neg.per_place_split == {"inf": 1}

    rep_zero = stable_horospherical(cls, [0, 0])
    assert not rep_zero.stable and len(rep_zero.neutral) == 3


def test_stable_unstable_duality():
    cls, _ = coarse_classes(all_weights(NF23))
    for n in ([1, 0], [1, 1], [2, -1]):
        plus = stable_horospherical(cls, n)
        minus = stable_horospherical(cls, [-e for e in n])
        stable_idx = {c.index for c in plus.stable}
        unstable_idx = {c.index for c in minus.stable}
        neutral_idx = {c.index for c in plus.neutral}
        assert stable_idx | unstable_idx | neutral_idx == {c.index for c in cls}
        assert stable_idx.isdisjoint(unstable_idx)
        assert {c.index for c in minus.neutral} == neutral_idx


def test_exposed_classes_examples():
    cls, _ = coarse_classes(all_weights(NF23))
    padic = [c for c in cls if not c.members[0].is_archimedean()]
    verdicts = dict((c.index, v) for c, v in exposed_classes(padic))
    assert set(verdicts.values()) == {"exposed"}
    single = exposed_classes([cls[0]])
    assert single[0][1] == "exposed"


def test_exposed_opposite_pair_not_exposed():
    g = golden_field([0, 1], [1, 1])
    cls, _ = coarse_classes(all_weights(g))
    assert len(cls) == 2
    verdicts = [v for _, v in exposed_classes(cls)]
    # chi and -chi: neither is exposed (the other weight vanishes on ker chi)
    assert all(v in ("not_exposed", "inconclusive") for v in verdicts)


def test_product_formula_examples():
    res = check_product_formula(NF23, [1, 1], 96)
    assert res.contains_zero() and res.width() < F(1, 10 ** 9)
    g = golden_field([2, 1])
    res2 = check_product_formula(g, [3], 96)
    assert res2.contains_zero() and res2.width() < F(1, 10 ** 9)


def test_product_formula_generatorwise():
    tw = NumberFieldAction(from_ints([4, 0, 1]), (RatPoly([0, 1]), RatPoly([3])),
                           QMatrix.identity(2))
    for j in range(2):
        n = [1 if t == j else 0 for t in range(2)]
        res = check_product_formula(tw, n, 96)
        assert res.contains_zero()
