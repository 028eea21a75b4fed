"""Number-field form of an A-irreducible block.

An irreducible block of commuting matrices is multiplication by field
elements zeta_1, ..., zeta_d on K = Q[x]/(f) for the minimal polynomial f
of a primitive element theta; `diagonalize_block` finds this data and
verifies the multiplication tables by exact matrix identities.  Field
elements are polynomials of degree < deg f; inversion goes through the
extended gcd, norms and characteristic polynomials through multiplication
matrices, and root-of-unity detection through comparison with cyclotomic
polynomials.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .linalg import QMatrix
from .poly import RatPoly, cyclotomic, euler_phi, poly_gcd, poly_xgcd
from .polyfactor import factor_poly


@dataclass(frozen=True)
class NumberFieldAction:
    """Field data of an irreducible block: K = Q[x]/(f), zeta_j = g_j(theta)."""

    f: RatPoly
    multipliers: tuple[RatPoly, ...]
    basis_map: QMatrix

    @property
    def degree(self) -> int:
        return self.f.degree

    @property
    def d(self) -> int:
        return len(self.multipliers)

    def element(self, poly: RatPoly) -> "FieldElement":
        return FieldElement(self.f, poly % self.f)

    def one(self) -> "FieldElement":
        return self.element(RatPoly([1]))

    def theta(self) -> "FieldElement":
        return self.element(RatPoly([0, 1]))

    def zeta(self, j: int) -> "FieldElement":
        return self.element(self.multipliers[j])

    def zeta_power(self, n: Sequence[int]) -> "FieldElement":
        """zeta^n = prod zeta_j^{n_j}, negative exponents via exact inverses."""
        out = self.one()
        for j, e in enumerate(n):
            if e:
                out = out * self.zeta(j) ** e
        return out

    def mult_matrix(self, g: RatPoly) -> QMatrix:
        """Multiplication by g(theta) on the power basis 1, theta, ..."""
        k = self.degree
        g = g % self.f
        cols = []
        cur = g
        for _ in range(k):
            cols.append([cur[i] for i in range(k)])
            cur = (cur * RatPoly([0, 1])) % self.f
        return QMatrix([[cols[j][i] for j in range(k)] for i in range(k)])

    def element_charpoly(self, n: Sequence[int]) -> RatPoly:
        """Characteristic polynomial of multiplication by zeta^n on K."""
        return self.mult_matrix(self.zeta_power(n).poly).charpoly()


class FieldElement:
    """Element of Q[x]/(f), stored as the reduced polynomial."""

    __slots__ = ("f", "poly")

    def __init__(self, f: RatPoly, poly: RatPoly):
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "poly", poly % f)

    def __setattr__(self, *a):
        raise AttributeError("FieldElement is immutable")

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.f == other.f and self.poly == other.poly
        if isinstance(other, (int, Fraction)):
            return self.poly == RatPoly([other])
        return NotImplemented

    def __hash__(self):
        return hash((self.f, self.poly))

    def __repr__(self):
        return f"FieldElement({self.poly!r} mod {self.f!r})"

    def __add__(self, other):
        other = self._coerce(other)
        return FieldElement(self.f, self.poly + other.poly)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.f, -self.poly)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.f, self.poly * other)
        other = self._coerce(other)
        return FieldElement(self.f, (self.poly * other.poly) % self.f)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        d, s, _ = poly_xgcd(self.poly, self.f)
        if d.degree != 0:
            raise ZeroDivisionError("element not invertible (reducible modulus?)")
        return FieldElement(self.f, s * (1 / d[0]))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, e: int) -> "FieldElement":
        if e < 0:
            return self.inverse() ** (-e)
        out = FieldElement(self.f, RatPoly([1]))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.f != self.f:
                raise ValueError("elements of different fields")
            return other
        return FieldElement(self.f, RatPoly([other]))

    def norm(self) -> Fraction:
        """Field norm: product of conjugates (f monic)."""
        from .poly import resultant
        if self.is_zero():
            return Fraction(0)
        return resultant(self.f, self.poly)

    def minimal_poly(self) -> RatPoly:
        """Monic minimal polynomial over Q."""
        host = NumberFieldAction(self.f, (self.poly,), QMatrix.identity(self.f.degree))
        return host.mult_matrix(self.poly).minpoly()


# ---------------------------------------------------------------------------
# block diagonalization
# ---------------------------------------------------------------------------

def _coefficient_ladder(d: int, seed: int):
    """Deterministic stream of integer coefficient vectors, small first."""
    rng = random.Random(seed)
    yield tuple(1 if j == 0 else 0 for j in range(d))
    for j in range(1, d):
        yield tuple(1 if t <= j else 0 for t in range(d))
    bound = 2
    while True:
        for _ in range(16 * d):
            yield tuple(rng.randint(-min(bound, 8), min(bound, 8)) for _ in range(d))
        bound = min(bound * 2, 10 ** 6)
        if bound > 8:
            for _ in range(16 * d):
                yield tuple(rng.randint(-bound, bound) for _ in range(d))


def diagonalize_block(block: Sequence[QMatrix], seed: int = 0) -> NumberFieldAction:
    """Number-field data of an A-irreducible block of commuting matrices.

    Finds a primitive element theta = sum c_j zeta_j by a seeded ladder of
    small integer combinations, then reads the multipliers off conjugation
    by the Krylov (power) basis and verifies every multiplication table
    exactly.
    """
    gens = list(block)
    k = gens[0].rows
    d = len(gens)
    for c in _coefficient_ladder(d, seed):
        theta = gens[0] * Fraction(c[0])
        for g, cj in zip(gens[1:], c[1:]):
            if cj:
                theta = theta + g * Fraction(cj)
        f = theta.minpoly()
        if f.degree != k:
            continue
        facs = factor_poly(f)
        if len(facs) != 1 or facs[0][1] != 1:
            raise ValueError("block is not A-irreducible (reducible minimal polynomial)")
        # cyclic vector e_1: power basis columns v, theta v, ...
        cols = []
        v = tuple(Fraction(1) if i == 0 else Fraction(0) for i in range(k))
        cur = v
        for _ in range(k):
            cols.append(cur)
            cur = theta * cur
        p_mat = QMatrix([[cols[j][i] for j in range(k)] for i in range(k)])
        p_inv = p_mat.inverse()
        nf_multipliers = []
        for g in gens:
            conj = p_inv * g * p_mat
            gj = RatPoly([conj.entries[i][0] for i in range(k)])
            nf_multipliers.append(gj)
        nf = NumberFieldAction(f, tuple(nf_multipliers), p_mat)
        for g, gj in zip(gens, nf_multipliers):
            if poly_gcd(f, gj).degree != 0:
                raise ValueError("multiplier not invertible in the field")
            if p_mat * nf.mult_matrix(gj) != g * p_mat:
                raise RuntimeError("multiplication table verification failed")
        return nf
    raise RuntimeError("primitive element ladder exhausted")  # pragma: no cover


# ---------------------------------------------------------------------------
# roots of unity
# ---------------------------------------------------------------------------

def order_from_minimal_poly(q: RatPoly) -> Optional[int]:
    """Multiplicative order when q is a cyclotomic polynomial, else None."""
    # a root of unity is an algebraic integer with unit constant term
    if q.degree < 1:
        return None
    if any(c.denominator != 1 for c in q.coeffs):
        return None
    if abs(q[0]) != 1:
        return None
    t = q.degree
    bound = max(2 * t * t + 1, 8)   # phi(n) >= sqrt(n/2), so n <= 2 t^2
    for n in range(1, bound + 1):
        if euler_phi(n) == t and q == cyclotomic(n):
            return n
    return None


def is_root_of_unity(e: FieldElement) -> Optional[int]:
    """The exact multiplicative order if e is a root of unity, else None."""
    if e.is_zero():
        raise ValueError("zero element")
    return order_from_minimal_poly(e.minimal_poly())


# ---------------------------------------------------------------------------
# embeddings between fields (Trager norms)
# ---------------------------------------------------------------------------

def _kpoly_trim(p: list[FieldElement]) -> list[FieldElement]:
    while p and p[-1].is_zero():
        p.pop()
    return p


def _kpoly_mul(a: list[FieldElement], b: list[FieldElement], zero: FieldElement):
    if not a or not b:
        return []
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x.is_zero():
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return _kpoly_trim(out)


def _kpoly_rem(a: list[FieldElement], b: list[FieldElement]):
    a = list(a)
    db = len(b) - 1
    inv = b[-1].inverse()
    while len(a) - 1 >= db:
        _kpoly_trim(a)
        if len(a) - 1 < db:
            break
        c = a[-1] * inv
        k = len(a) - 1 - db
        for i in range(len(b)):
            a[k + i] = a[k + i] - c * b[i]
        a.pop()
    return _kpoly_trim(a)


def _kpoly_gcd(a: list[FieldElement], b: list[FieldElement]):
    a, b = list(a), list(b)
    while b:
        a, b = b, _kpoly_rem(a, b)
    if a:
        inv = a[-1].inverse()
        a = [x * inv for x in a]
    return a


def factor_over_field(f1: RatPoly, f2: RatPoly, seed: int = 0,
                      ) -> list[list[FieldElement]]:
    """Monic irreducible factors of f1 over K = Q[x]/(f2), as K-coefficient
    lists in ascending degree.

    Trager reduction: factor the norm Res_y(f2(y), f1(x - s y)) over Q for a
    shift s making it squarefree, then pull factors back by gcds over K.
    Requires f1 squarefree.
    """
    f1 = f1.monic()
    f2 = f2.monic()
    if f1.degree < 1 or f2.degree < 1:
        raise ValueError("factorization needs nonconstant polynomials")
    if f2.degree == 1:
        c = -f2[0]
        out = []
        for fac, _ in factor_poly(f1, seed):
            fac = fac.monic()
            out.append([FieldElement(f2, RatPoly([cf])) for cf in fac.coeffs])
        return out
    host = NumberFieldAction(f2, (RatPoly([0, 1]),), QMatrix.identity(f2.degree))
    theta = host.theta()
    one = host.one()
    zero = FieldElement(f2, RatPoly())
    f1_k = [FieldElement(f2, RatPoly([c])) for c in f1.coeffs]
    if f1.degree == 1:
        return [f1_k]
    for s in _shift_stream():
        norm = _trager_norm(f1, f2, s)
        if poly_gcd(norm, norm.derivative()).degree != 0:
            continue
        factors: list[list[FieldElement]] = []
        for fac, _ in factor_poly(norm, seed):
            shift = [theta * Fraction(s), one]  # x + s*theta
            fac_k = _kpoly_compose(fac, shift, zero, f2)
            g = _kpoly_gcd(f1_k, fac_k)
            if len(g) - 1 >= 1:
                factors.append(g)
        total = sum(len(g) - 1 for g in factors)
        if total != f1.degree:
            continue  # defensive: a bad shift slipped through
        factors.sort(key=_kpoly_sort_key)
        return factors
    raise RuntimeError("shift stream exhausted")  # pragma: no cover


def _kpoly_sort_key(g: list[FieldElement]):
    return (len(g), tuple(tuple(ce.poly.coeffs) for ce in g))


def embeddings_between(f1: RatPoly, f2: RatPoly, seed: int = 0) -> list[FieldElement]:
    """All roots of f1 in Q[x]/(f2), i.e. field embeddings Q[x]/(f1) -> Q[x]/(f2)."""
    f1 = f1.monic()
    f2 = f2.monic()
    if f1.degree < 1 or f2.degree < 1:
        raise ValueError("embeddings need nonconstant polynomials")
    if f1.degree > f2.degree or f2.degree % f1.degree != 0:
        return []
    roots = []
    for g in factor_over_field(f1, f2, seed):
        if len(g) - 1 == 1:
            roots.append(-g[0] * g[1].inverse())
    roots.sort(key=lambda r: tuple(r.poly.coeffs))
    return roots


def relative_mult_matrix(f2: RatPoly, h: list[FieldElement],
                         u: list[FieldElement]) -> QMatrix:
    """Multiplication by u on L = K[y]/(h) as a Q-linear map.

    K = Q[x]/(f2), h a monic K-polynomial, u a K-polynomial of degree
    < deg h; the Q-basis of L is theta^a y^b ordered by (b, a).
    """
    k = f2.degree
    e = len(h) - 1
    zero = FieldElement(f2, RatPoly())
    cols = []
    for b in range(e):
        for a in range(k):
            basis_elt = [zero] * b + [FieldElement(f2, RatPoly([0] * a + [1]))]
            prod = _kpoly_rem(_kpoly_mul(list(u), basis_elt, zero), h)
            col = []
            for bb in range(e):
                ce = prod[bb] if bb < len(prod) else zero
                for aa in range(k):
                    col.append(ce.poly[aa])
            cols.append(col)
    n = k * e
    return QMatrix([[cols[j][i] for j in range(n)] for i in range(n)])


def compositum_element_order(f2: RatPoly, h: list[FieldElement],
                             u: list[FieldElement]) -> Optional[int]:
    """Multiplicative order of u in K[y]/(h) when u is a root of unity."""
    if not _kpoly_trim(list(u)):
        raise ValueError("zero element")
    m = relative_mult_matrix(f2, h, u)
    return order_from_minimal_poly(m.minpoly())


def _shift_stream():
    yield 0
    s = 1
    while s < 10 ** 6:
        yield s
        yield -s
        s += 1


def _kpoly_compose(fac: RatPoly, arg: list[FieldElement], zero: FieldElement, f2: RatPoly):
    acc: list[FieldElement] = []
    for c in reversed(fac.coeffs):
        acc = _kpoly_mul(acc, arg, zero)
        ce = FieldElement(f2, RatPoly([c]))
        if not acc:
            acc = [ce]
        else:
            acc[0] = acc[0] + ce
        _kpoly_trim(acc)
    return acc


def _trager_norm(f1: RatPoly, f2: RatPoly, s: int) -> RatPoly:
    """Res_y(f2(y), f1(x - s*y)) as a polynomial in x."""
    from .poly import resultant_in
    # f1(x - s y) expanded as a polynomial in y with RatPoly-in-x coefficients
    x_poly = RatPoly([0, 1])
    # binomial expansion of (x - s y)^i: coefficient of y^t is C(i,t) (-s)^t x^(i-t)
    deg = f1.degree
    coeffs_y: list[RatPoly] = [RatPoly() for _ in range(deg + 1)]
    binom = [[0] * (deg + 1) for _ in range(deg + 1)]
    for i in range(deg + 1):
        binom[i][0] = 1
        for t in range(1, i + 1):
            binom[i][t] = binom[i - 1][t - 1] + (binom[i - 1][t] if t <= i - 1 else 0)
    for i in range(deg + 1):
        ci = f1[i]
        if ci == 0:
            continue
        for t in range(i + 1):
            term = x_poly ** (i - t) * (Fraction(binom[i][t]) * Fraction(-s) ** t * ci)
            coeffs_y[t] = coeffs_y[t] + term
    f2_y = [RatPoly([c]) for c in f2.coeffs]
    res = resultant_in(RatPoly(), f2_y, coeffs_y)
    return res if isinstance(res, RatPoly) else RatPoly([res])
