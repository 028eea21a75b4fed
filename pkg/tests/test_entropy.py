import math
import random
from fractions import Fraction as F

import pytest

from solact.action import SolenoidAction
from solact.entropy import (ActionAnalysis, HomogeneousMeasure,
                            entropy_contribution, entropy_linear_form,
                            haar_entropy, haar_entropy_direct,
                            homogeneous_entropy, induced_action, kappa,
                            shape_identity_report)
from solact.linalg import QMatrix, QSubspace
from solact.poly import RatPoly, from_ints

T23 = SolenoidAction((QMatrix([[2]]), QMatrix([[3]])))
TWISTED = SolenoidAction((QMatrix([[0, -2], [2, 0]]), QMatrix([[3, 0], [0, 3]])))
TOL = F(1, 10 ** 9)


@pytest.fixture(scope="module")
def an23():
    return ActionAnalysis(T23, seed=0, prec=96)


def close(iv, x, tol=TOL):
    return iv.lo - tol <= F(x).limit_denominator(10 ** 15) <= iv.hi + tol


def test_haar_entropy_log2(an23):
    rep = haar_entropy(an23, [1, 0])
    iv = rep.total.interval(96)
    assert close(iv, math.log(2)) and iv.width() < TOL
    assert rep.total.plog == {2: F(1)}


def test_haar_entropy_log6(an23):
    rep = haar_entropy(an23, [1, 1])
    iv = rep.total.interval(96)
    assert close(iv, math.log(6)) and iv.width() < TOL
    assert rep.total.plog == {2: F(1), 3: F(1)}


def test_haar_entropy_zero(an23):
    rep = haar_entropy(an23, [0, 0])
    assert rep.total.is_exactly_zero()


def test_class_additivity(an23):
    rep = haar_entropy(an23, [2, -1])
    total = rep.total.interval(96)
    acc = F(0)
    # exact parts add up exactly
    plog_sum = {}
    for v in rep.per_class.values():
        for p, c in v.plog.items():
            plog_sum[p] = plog_sum.get(p, F(0)) + c
    assert plog_sum == rep.total.plog


def test_entropy_contribution_examples(an23):
    c2 = next(c for c in an23.classes
              if not c.members[0].is_archimedean() and c.members[0].prime == 2)
    ec = entropy_contribution(an23, [1, 1], [c2.index])
    assert ec.plog == {2: F(1)} and ec.arch.lo == ec.arch.hi == 0
    stable = [c.index for c in an23.stable([1, 1]).stable]
    ec_full = entropy_contribution(an23, [1, 1], stable)
    h_full = haar_entropy(an23, [1, 1]).total
    assert ec_full.plog == h_full.plog
    assert entropy_contribution(an23, [1, 1], []).is_exactly_zero()


def test_contribution_bounded_by_entropy(an23):
    h = haar_entropy(an23, [1, 1]).total.interval(96)
    c2 = next(c for c in an23.classes
              if not c.members[0].is_archimedean() and c.members[0].prime == 2)
    part = entropy_contribution(an23, [1, 1], [c2.index]).interval(96)
    assert part.hi <= h.hi


def test_kappa_examples(an23):
    c2 = next(c for c in an23.classes
              if not c.members[0].is_archimedean() and c.members[0].prime == 2)
    k = kappa(an23, [1, 1], [c2.index])
    target = math.log(2) / math.log(6)
    assert close(k.value, target) and k.value.width() < TOL
    assert k.strictly_below_one and not k.exact_one

    stable = [c.index for c in an23.stable([1, 1]).stable]
    k1 = kappa(an23, [1, 1], stable)
    assert k1.exact_one and k1.value.lo == k1.value.hi == 1

    k0 = kappa(an23, [1, 1], [])
    assert k0.value.lo == k0.value.hi == 0


def test_kappa_zero_denominator(an23):
    with pytest.raises(ValueError, match="no positive entropy"):
        kappa(an23, [0, 0], [0])


def test_entropy_linear_form(an23):
    c2 = next(c for c in an23.classes
              if not c.members[0].is_archimedean() and c.members[0].prime == 2)
    rep = entropy_linear_form(an23, c2.index, sample=[(1, 0), (2, 0), (3, 1)])
    assert rep.c.contains(F(1))
    for n, residual in rep.samples:
        assert residual.contains_zero()
    # k-scaling on the exact part: h(2n) = 2 h(n)
    e1 = entropy_contribution(an23, [1, 0], [c2.index])
    e2 = entropy_contribution(an23, [2, 0], [c2.index])
    assert e2.plog == {p: 2 * c for p, c in e1.plog.items()}


def test_linear_form_arch_class(an23):
    arch = next(c for c in an23.classes if c.members[0].is_archimedean())
    rep = entropy_linear_form(an23, arch.index)
    assert rep.c.contains(F(1))
    assert all(r.contains_zero() for _, r in rep.samples)


def test_symmetry_and_homogeneity(an23):
    for n in ([1, 0], [1, 1], [2, -1]):
        h = haar_entropy(an23, n).total
        h_neg = haar_entropy(an23, [-e for e in n]).total
        assert h.plog == h_neg.plog
        for k in (2, 3, 5):
            hk = haar_entropy(an23, [k * e for e in n]).total
            assert hk.plog == {p: k * c for p, c in h.plog.items()}


def test_direct_route_agrees(an23):
    for n in ([1, 0], [1, 1], [3, -2]):
        flag_route = haar_entropy(an23, n).total.interval(96)
        direct = haar_entropy_direct(T23, n, 96)
        assert not (flag_route.hi < direct.lo or direct.hi < flag_route.lo)


def test_direct_route_twisted():
    an = ActionAnalysis(TWISTED, seed=0, prec=96)
    for n in ([1, 0], [1, 1], [-1, 2]):
        flag_route = haar_entropy(an, n).total.interval(96)
        direct = haar_entropy_direct(TWISTED, n, 96)
        assert not (flag_route.hi < direct.lo or direct.hi < flag_route.lo)


def test_homogeneous_measure_validation():
    prod = SolenoidAction((QMatrix.block_diagonal([QMatrix([[2]]), QMatrix([[3]])]),))
    bad = HomogeneousMeasure(2, QSubspace(2, [[1, 1]]))
    assert not bad.check_invariant(prod)
    with pytest.raises(ValueError):
        induced_action(prod, bad)


def test_homogeneous_entropy_diagonal():
    prod = SolenoidAction(
        (QMatrix.block_diagonal([QMatrix([[2]]), QMatrix([[2]])]),
         QMatrix.block_diagonal([QMatrix([[3]]), QMatrix([[3]])])))
    diag = HomogeneousMeasure(2, QSubspace(2, [[1, -1]]))
    assert diag.check_invariant(prod)
    rep = homogeneous_entropy(prod, diag, [1, 1], prec=96)
    assert close(rep.total.interval(96), math.log(6))
    assert rep.total.plog == {2: F(1), 3: F(1)}


def test_homogeneous_entropy_full_product():
    prod = SolenoidAction(
        (QMatrix.block_diagonal([QMatrix([[2]]), QMatrix([[2]])]),
         QMatrix.block_diagonal([QMatrix([[3]]), QMatrix([[3]])])))
    full = HomogeneousMeasure(2, QSubspace(2))
    rep = homogeneous_entropy(prod, full, [1, 1], prec=96)
    assert rep.total.plog == {2: F(2), 3: F(2)}


def test_shape_identity_diagonal():
    prod = SolenoidAction(
        (QMatrix.block_diagonal([QMatrix([[2]]), QMatrix([[2]])]),
         QMatrix.block_diagonal([QMatrix([[3]]), QMatrix([[3]])])))
    diag = HomogeneousMeasure(2, QSubspace(2, [[1, -1]]))
    rep = shape_identity_report(prod, diag, block=0, radius=3, prec=96)
    assert rep.constant_certified
    assert rep.constant.contains(F(1))
    assert rep.max_width < TOL


def test_shape_identity_full_product():
    prod = SolenoidAction(
        (QMatrix.block_diagonal([QMatrix([[2]]), QMatrix([[2]])]),
         QMatrix.block_diagonal([QMatrix([[3]]), QMatrix([[3]])])))
    full = HomogeneousMeasure(2, QSubspace(2))
    rep = shape_identity_report(prod, full, block=0, radius=3, prec=96)
    assert rep.constant_certified
    assert rep.constant.contains(F(2))
    assert rep.max_width < TOL


def test_shape_identity_twisted_graph():
    """Graph joining of the two-generator pair with the twisted double under
    the restricted lattice (4Z)xZ."""
    lam = [[4, 0], [0, 1]]
    g1 = T23.restrict_lattice(lam)
    g2 = TWISTED.restrict_lattice(lam)
    prod = SolenoidAction(tuple(QMatrix.block_diagonal([a, b])
                                for a, b in zip(g1.generators, g2.generators)))
    ann = QSubspace(3, [[1, -1, 0]])
    gmeas = HomogeneousMeasure(3, ann)
    assert gmeas.check_invariant(prod)
    assert gmeas.surjects_onto_factors([1, 2])
    rep = homogeneous_entropy(prod, gmeas, [1, 1], prec=96)
    # dual of G is 2-dimensional; both quotient blocks are (16,3)-scalar
    assert close(rep.total.interval(96), 2 * math.log(48))
    sir = shape_identity_report(prod, gmeas, block=0, radius=2, prec=96)
    assert sir.constant_certified


def test_flag_additivity_block_sum():
    tri = SolenoidAction((QMatrix([[2, 1], [0, 3]]),))
    an = ActionAnalysis(tri, prec=96)
    rep = haar_entropy(an, [1])
    assert len(rep.per_block) == 2
    total = rep.per_block[0] + rep.per_block[1]
    assert total.plog == rep.total.plog
    assert rep.total.plog == {2: F(1), 3: F(1)}  # log 6 = log 2 + log 3
