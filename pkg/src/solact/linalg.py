"""Exact linear algebra over Q.

QMatrix is an immutable dense rational matrix; QSubspace is a subspace of
Q^m held in reduced row echelon form, which makes the basis canonical (two
equal subspaces have identical bases).  Characteristic polynomials are
computed division-free (Berkowitz), minimal polynomials by Krylov linear
dependence, and the Jordan-Chevalley decomposition by Newton iteration on
the squarefree part of the minimal polynomial, all staying inside Q.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .poly import RatPoly, poly_gcd, squarefree_part

Vector = tuple[Fraction, ...]


def vec(entries: Iterable) -> Vector:
    return tuple(Fraction(e) for e in entries)


class QMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        rows = tuple(tuple(Fraction(e) for e in row) for row in entries)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", len(rows[0]) if rows else 0)

    def __setattr__(self, *a):
        raise AttributeError("QMatrix is immutable")

    @staticmethod
    def identity(n: int) -> "QMatrix":
        return QMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(r: int, c: int) -> "QMatrix":
        return QMatrix([[0] * c for _ in range(r)])

    @staticmethod
    def diagonal(diag: Sequence) -> "QMatrix":
        n = len(diag)
        return QMatrix([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def companion(f: RatPoly) -> "QMatrix":
        """Companion matrix of a monic polynomial."""
        f = f.monic()
        n = f.degree
        if n < 1:
            raise ValueError("companion needs degree >= 1")
        cols = []
        for j in range(n):
            col = [Fraction(0)] * n
            if j < n - 1:
                col[j + 1] = Fraction(1)
            else:
                col = [-f[i] for i in range(n)]
            cols.append(col)
        return QMatrix([[cols[j][i] for j in range(n)] for i in range(n)])

    @staticmethod
    def block_diagonal(blocks: Sequence["QMatrix"]) -> "QMatrix":
        n = sum(b.rows for b in blocks)
        out = [[Fraction(0)] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[off + i][off + j] = b.entries[i][j]
            off += b.rows
        return QMatrix(out)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def col(self, j: int) -> Vector:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = "; ".join(" ".join(str(e) for e in row) for row in self.entries)
        return f"QMatrix[{body}]"

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __add__(self, other) -> "QMatrix":
        if isinstance(other, (int, Fraction)):
            # scalar embeds as c * I so polynomials evaluate on matrices
            if not self.is_square():
                raise ValueError("scalar add to non-square matrix")
            other = QMatrix.identity(self.rows) * Fraction(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return QMatrix([[a + b for a, b in zip(r1, r2)]
                        for r1, r2 in zip(self.entries, other.entries)])

    __radd__ = __add__

    def __sub__(self, other) -> "QMatrix":
        if isinstance(other, (int, Fraction)):
            return self + (-Fraction(other))
        return self + (other * Fraction(-1))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QMatrix([[e * other for e in row] for row in self.entries])
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            bt = list(zip(*other.entries))
            return QMatrix([[sum(a * b for a, b in zip(row, colv)) for colv in bt]
                            for row in self.entries])
        if isinstance(other, tuple):
            if self.cols != len(other):
                raise ValueError("shape mismatch")
            return tuple(sum(a * b for a, b in zip(row, other)) for row in self.entries)
        return NotImplemented

    __rmul__ = lambda self, other: self * other if isinstance(other, (int, Fraction)) else NotImplemented

    def __pow__(self, n: int) -> "QMatrix":
        if not self.is_square():
            raise ValueError("power of non-square matrix")
        if n < 0:
            return self.inverse() ** (-n)
        result = QMatrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def transpose(self) -> "QMatrix":
        return QMatrix(list(zip(*self.entries))) if self.rows else self

    def trace(self) -> Fraction:
        return sum(self.entries[i][i] for i in range(self.rows))

    def inverse(self) -> "QMatrix":
        if not self.is_square():
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        aug = [list(self.entries[i]) + [Fraction(1) if i == j else Fraction(0)
                                        for j in range(n)] for i in range(n)]
        r, pivots = _rref_in_place(aug)
        if r < n or any(p >= n for p in pivots):
            raise ValueError("singular matrix")
        return QMatrix([row[n:] for row in aug])

    def det(self) -> Fraction:
        if not self.is_square():
            raise ValueError("determinant of non-square matrix")
        return self.charpoly()[0] * (-1) ** self.rows

    def charpoly(self) -> RatPoly:
        """Characteristic polynomial det(xI - A), by Berkowitz's division-free method."""
        if not self.is_square():
            raise ValueError("charpoly of non-square matrix")
        n = self.rows
        if n == 0:
            return RatPoly([1])
        desc = _berkowitz([list(r) for r in self.entries])
        return RatPoly(list(reversed(desc)))

    def minpoly(self) -> RatPoly:
        """Minimal polynomial, monic, via Krylov dependence of powers."""
        if not self.is_square():
            raise ValueError("minpoly of non-square matrix")
        n = self.rows
        power = QMatrix.identity(n)
        flats: list[list[Fraction]] = []
        for k in range(n + 1):
            flat = [e for row in power.entries for e in row]
            if flats:
                a_rows = [[fp[i] for fp in flats] for i in range(n * n)]
                sol = solve_linear(a_rows, flat)
                if sol is not None:
                    # A^k = sum sol_j A^j  ->  minpoly = x^k - sum sol_j x^j
                    return RatPoly([-c for c in sol] + [Fraction(1)])
            flats.append(flat)
            power = power * self
        raise RuntimeError("minpoly search failed")  # pragma: no cover

    def restrict_to(self, basis: Sequence[Vector]) -> "QMatrix":
        """Matrix of this map on the invariant subspace spanned by basis."""
        cols = []
        bm = [list(b) for b in basis]
        for b in basis:
            img = self * b
            sol = solve_linear([list(col) for col in zip(*bm)], list(img))
            if sol is None:
                raise ValueError("subspace not invariant")
            cols.append(sol)
        k = len(basis)
        return QMatrix([[cols[j][i] for j in range(k)] for i in range(k)])


# ---------------------------------------------------------------------------
# echelon machinery
# ---------------------------------------------------------------------------

def _rref_in_place(rows: list[list[Fraction]]) -> tuple[int, list[int]]:
    """Reduced row echelon form; returns (rank, pivot columns)."""
    if not rows:
        return 0, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [e * inv for e in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return r, pivots


def rref(vectors: Sequence[Sequence]) -> tuple[list[Vector], list[int]]:
    rows = [[Fraction(e) for e in v] for v in vectors]
    rank, pivots = _rref_in_place(rows)
    return [tuple(row) for row in rows[:rank]], pivots


def solve_linear(a_rows: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Solve A x = b with A given row-wise; returns one solution or None."""
    rows = [list(map(Fraction, r)) + [Fraction(bb)] for r, bb in zip(a_rows, b)]
    ncols = len(a_rows[0]) if a_rows else 0
    rank, pivots = _rref_in_place(rows)
    for row in rows[rank:]:
        if row[-1] != 0:
            return None
    for i in range(rank):
        if pivots[i] == ncols:
            return None
    sol = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        sol[p] = rows[i][-1]
    return sol


def kernel_basis(m: QMatrix) -> list[Vector]:
    """Echelonized basis of the right kernel."""
    rows = [list(r) for r in m.entries]
    rank, pivots = _rref_in_place(rows)
    free = [j for j in range(m.cols) if j not in pivots]
    out = []
    for j in free:
        v = [Fraction(0)] * m.cols
        v[j] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -rows[i][j]
        out.append(tuple(v))
    basis, _ = rref(out)
    return basis


class QSubspace:
    """Subspace of Q^m with canonical (rref) basis."""

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient: int, vectors: Sequence[Sequence] = ()):
        basis, pivots = rref([list(v) for v in vectors]) if vectors else ([], [])
        for v in basis:
            if len(v) != ambient:
                raise ValueError("vector length != ambient dimension")
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", tuple(basis))
        object.__setattr__(self, "pivots", tuple(pivots))

    def __setattr__(self, *a):
        raise AttributeError("QSubspace is immutable")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return (isinstance(other, QSubspace) and self.ambient == other.ambient
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"QSubspace(dim {self.dim} of Q^{self.ambient})"

    def contains(self, v: Sequence) -> bool:
        return all(r == 0 for r in self.reduce(v))

    def contains_subspace(self, other: "QSubspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def reduce(self, v: Sequence) -> Vector:
        """Residual of v after subtracting its projection along pivot columns."""
        w = [Fraction(e) for e in v]
        for row, p in zip(self.basis, self.pivots):
            if w[p] != 0:
                f = w[p]
                w = [a - f * b for a, b in zip(w, row)]
        return tuple(w)

    def sum(self, other: "QSubspace") -> "QSubspace":
        return QSubspace(self.ambient, list(self.basis) + list(other.basis))

    def intersect(self, other: "QSubspace") -> "QSubspace":
        # kernel of [B1^T | B2^T] stacked: x in both spans
        if self.dim == 0 or other.dim == 0:
            return QSubspace(self.ambient)
        rows = []
        for i in range(self.ambient):
            rows.append([b[i] for b in self.basis] + [-b[i] for b in other.basis])
        ker = kernel_basis(QMatrix(rows))
        vecs = []
        for k in ker:
            v = [Fraction(0)] * self.ambient
            for c, b in zip(k[:self.dim], self.basis):
                v = [a + c * e for a, e in zip(v, b)]
            vecs.append(v)
        return QSubspace(self.ambient, vecs)

    def complement_columns(self) -> list[int]:
        """Indices of standard basis vectors completing this subspace (echelon lift)."""
        return [j for j in range(self.ambient) if j not in self.pivots]

    def is_invariant_under(self, m: QMatrix) -> bool:
        return all(self.contains(m * b) for b in self.basis)

    @staticmethod
    def full(n: int) -> "QSubspace":
        return QSubspace(n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])


def quotient_matrix(m: QMatrix, sub: QSubspace) -> QMatrix:
    """Matrix induced by m on Q^n / sub, in the echelon-lift basis.

    The basis of the quotient is {e_j + sub : j not a pivot column of sub}.
    """
    comp = sub.complement_columns()
    cols = []
    for j in comp:
        e = tuple(Fraction(1) if i == j else Fraction(0) for i in range(m.rows))
        w = sub.reduce(m * e)
        cols.append([w[c] for c in comp])
    k = len(comp)
    return QMatrix([[cols[j][i] for j in range(k)] for i in range(k)])


def lift_from_quotient(sub: QSubspace, coords: Sequence[Fraction]) -> Vector:
    comp = sub.complement_columns()
    v = [Fraction(0)] * sub.ambient
    for c, j in zip(coords, comp):
        v[j] = Fraction(c)
    return tuple(v)


# ---------------------------------------------------------------------------
# Berkowitz characteristic polynomial
# ---------------------------------------------------------------------------

def _berkowitz(a: list[list[Fraction]]) -> list[Fraction]:
    """Coefficients of det(xI - A), descending degree."""
    k = len(a)
    if k == 1:
        return [Fraction(1), -a[0][0]]
    top = a[0][0]
    r_row = a[0][1:]
    c_col = [a[i][0] for i in range(1, k)]
    m_sub = [row[1:] for row in a[1:]]
    diags = []
    cur = c_col
    diags.append(sum(x * y for x, y in zip(r_row, cur)))
    for _ in range(k - 2):
        cur = [sum(m_sub[i][j] * cur[j] for j in range(k - 1)) for i in range(k - 1)]
        diags.append(sum(x * y for x, y in zip(r_row, cur)))
    col = [Fraction(1), -top] + [-d for d in diags]  # length k + 1
    sub = _berkowitz(m_sub)                          # length k
    out = []
    for i in range(k + 1):
        s = Fraction(0)
        for j in range(max(0, i - k), min(i, k - 1) + 1):
            s += col[i - j] * sub[j]
        out.append(s)
    return out


# ---------------------------------------------------------------------------
# Jordan-Chevalley decomposition
# ---------------------------------------------------------------------------

def jordan_chevalley(m: QMatrix) -> tuple[QMatrix, QMatrix]:
    """Unique D (semisimple) and U (unipotent) with m = D U = U D over Q.

    Newton iteration x <- x - f(x) / f'(x) in Q[m], where f is the squarefree
    part of the minimal polynomial; converges in the nilpotent ideal.
    """
    if not m.is_square():
        raise ValueError("non-square matrix")
    n = m.rows
    mp = m.minpoly()
    if mp[0] == 0:
        raise ValueError("singular matrix")
    f = squarefree_part(mp)
    if f == mp:
        return m, QMatrix.identity(n)
    d = m
    steps = 0
    while True:
        fd = f(d)
        if all(e == 0 for row in fd.entries for e in row):
            break
        dfd = f.derivative()(d)
        d = d - fd * dfd.inverse()
        steps += 1
        if steps > n + 2:
            raise RuntimeError("Jordan-Chevalley iteration failed to converge")
    u = d.inverse() * m
    return d, u


# ---------------------------------------------------------------------------
# commutant of a set of matrices
# ---------------------------------------------------------------------------

def commutant(generators: Sequence[QMatrix]) -> list[QMatrix]:
    """Echelonized basis of {B : B A_j = A_j B for all j}."""
    if not generators:
        raise ValueError("no generators")
    n = generators[0].rows
    for g in generators:
        if not g.is_square() or g.rows != n:
            raise ValueError("dimension mismatch")
    rows = []
    for g in generators:
        # constraint (B g - g B) = 0, entry (i, j): sum_k B[i,k] g[k,j] - g[i,k] B[k,j]
        for i in range(n):
            for j in range(n):
                coeff = [Fraction(0)] * (n * n)
                for k_ in range(n):
                    coeff[i * n + k_] += g.entries[k_][j]
                    coeff[k_ * n + j] -= g.entries[i][k_]
                rows.append(coeff)
    ker = kernel_basis(QMatrix(rows))
    return [QMatrix([v[i * n:(i + 1) * n] for i in range(n)]) for v in ker]


def algebra_closure(generators: Sequence[QMatrix]) -> list[QMatrix]:
    """Basis of the unital algebra Q[A_1, ..., A_d] inside End(Q^n)."""
    n = generators[0].rows
    basis_rows: list[list[Fraction]] = []
    elems: list[QMatrix] = []

    def try_add(mat: QMatrix) -> bool:
        flat = [e for row in mat.entries for e in row]
        red = list(flat)
        for b in basis_rows:
            p = next(i for i, e in enumerate(b) if e != 0)
            if red[p] != 0:
                f = red[p]
                red = [a - f * c for a, c in zip(red, b)]
        if all(e == 0 for e in red):
            return False
        lead = next(e for e in red if e != 0)
        basis_rows.append([e / lead for e in red])
        basis_rows.sort(key=lambda b: next(i for i, e in enumerate(b) if e != 0))
        elems.append(mat)
        return True

    try_add(QMatrix.identity(n))
    frontier = [QMatrix.identity(n)]
    while frontier:
        new_frontier = []
        for mat in frontier:
            for g in generators:
                cand = mat * g
                if try_add(cand):
                    new_frontier.append(cand)
        frontier = new_frontier
    return elems
