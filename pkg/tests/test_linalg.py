import random
from fractions import Fraction as F

import pytest

from solact.linalg import (QMatrix, QSubspace, commutant, jordan_chevalley,
                           kernel_basis, quotient_matrix, rref)
from solact.poly import RatPoly, from_ints, poly_gcd, squarefree_part


def rand_matrix(rng, n, den=3):
    return QMatrix([[F(rng.randint(-6, 6), rng.randint(1, den)) for _ in range(n)]
                    for _ in range(n)])


def test_charpoly_minpoly_examples():
    i2 = QMatrix.identity(2)
    assert i2.charpoly() == from_ints([1, -2, 1])
    assert i2.minpoly() == from_ints([-1, 1])
    rot = QMatrix([[0, -2], [2, 0]])
    assert rot.charpoly() == from_ints([4, 0, 1])
    comp = QMatrix.companion(from_ints([-1, -1, 1]))
    assert comp.charpoly() == comp.minpoly() == from_ints([-1, -1, 1])


def test_cayley_hamilton_random():
    rng = random.Random(2)
    for _ in range(15):
        n = rng.randint(1, 5)
        m = rand_matrix(rng, n)
        cp = m.charpoly()
        z = cp(m)
        assert all(e == 0 for row in z.entries for e in row)
        assert (cp % m.minpoly()).is_zero()


def test_inverse_and_det():
    m = QMatrix([[2, 1], [1, 1]])
    assert m * m.inverse() == QMatrix.identity(2)
    assert m.det() == 1
    with pytest.raises(ValueError):
        QMatrix([[1, 1], [1, 1]]).inverse()


def test_jordan_chevalley_examples():
    a = QMatrix([[2, 1], [0, 2]])
    d, u = jordan_chevalley(a)
    assert d == QMatrix([[2, 0], [0, 2]])
    assert u == QMatrix([[1, F(1, 2)], [0, 1]])
    b = QMatrix([[0, 1], [1, 0]])
    d2, u2 = jordan_chevalley(b)
    assert d2 == b and u2 == QMatrix.identity(2)
    blk = QMatrix.block_diagonal([a, b])
    d3, u3 = jordan_chevalley(blk)
    assert d3 == QMatrix.block_diagonal([d, d2])
    assert u3 == QMatrix.block_diagonal([u, u2])


def test_jordan_chevalley_conjugation_equivariance():
    a = QMatrix([[2, 1, 0], [0, 2, 0], [0, 0, 3]])
    p = QMatrix([[1, 1, 0], [0, 1, 2], [1, 0, 1]])
    d, u = jordan_chevalley(a)
    dc, uc = jordan_chevalley(p * a * p.inverse())
    assert dc == p * d * p.inverse()
    assert uc == p * u * p.inverse()


def test_jordan_chevalley_random_properties():
    rng = random.Random(9)
    done = 0
    while done < 12:
        n = rng.randint(2, 4)
        m = rand_matrix(rng, n)
        if m.charpoly()[0] == 0:
            continue
        done += 1
        d, u = jordan_chevalley(m)
        assert d * u == m == u * d
        assert squarefree_part(d.minpoly()) == d.minpoly().monic()
        nil = u - QMatrix.identity(n)
        acc = QMatrix.identity(n)
        for _ in range(n):
            acc = acc * nil
        assert all(e == 0 for row in acc.entries for e in row)


def test_jordan_chevalley_rejects_singular():
    with pytest.raises(ValueError):
        jordan_chevalley(QMatrix([[0, 0], [0, 1]]))


def test_commutant_examples():
    assert len(commutant([QMatrix.identity(2) * F(2)])) == 4
    assert len(commutant([QMatrix.companion(from_ints([-1, -1, 1]))])) == 2
    gens = [QMatrix([[0, -2], [2, 0]]), QMatrix.identity(2) * 3]
    basis = commutant(gens)
    assert len(basis) == 2
    for b in basis:
        for g in gens:
            assert b * g == g * b


def test_commutant_dimension_conjugation_invariant():
    g1 = QMatrix([[0, -2], [2, 0]])
    g2 = QMatrix.identity(2) * 3
    p = QMatrix([[1, 2], [1, 3]])
    before = len(commutant([g1, g2]))
    after = len(commutant([p * g1 * p.inverse(), p * g2 * p.inverse()]))
    assert before == after


def test_subspace_canonical_basis():
    s1 = QSubspace(3, [[1, 1, 0], [0, 0, 2]])
    s2 = QSubspace(3, [[2, 2, 4], [0, 0, 1]])
    assert s1 == s2
    assert s1.dim == 2
    assert s1.contains([3, 3, 7])
    assert not s1.contains([1, 0, 0])


def test_subspace_sum_intersect():
    a = QSubspace(3, [[1, 0, 0]])
    b = QSubspace(3, [[0, 1, 0]])
    assert a.sum(b).dim == 2
    assert a.intersect(b).dim == 0
    c = QSubspace(3, [[1, 1, 0], [0, 1, 0]])
    assert a.intersect(c).dim == 1


def test_quotient_matrix_triangular():
    v = QSubspace(2, [[1, 0]])
    q = quotient_matrix(QMatrix([[2, 1], [0, 3]]), v)
    assert q == QMatrix([[3]])


def test_kernel_basis():
    m = QMatrix([[1, 2, 3], [2, 4, 6]])
    ker = kernel_basis(m)
    assert len(ker) == 2
    for v in ker:
        assert m * v == (F(0), F(0))
