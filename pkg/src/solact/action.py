"""Z^d-actions by commuting rational matrices and their invariant structure.

The matrices are the dual-side data of an algebraic action on a solenoid:
invariant subspaces of Q^m correspond to closed invariant adelic subgroups,
minimal invariant subspaces (socle members) to irreducible algebraic factor
actions.  Everything here is exact; the irreducibility decision is complete
(never heuristic) and returns a proper invariant subspace as witness
whenever the action is reducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .linalg import (QMatrix, QSubspace, Vector, algebra_closure, kernel_basis,
                     quotient_matrix, rref, solve_linear, vec)
from .poly import RatPoly
from .polyfactor import factor_poly


@dataclass(frozen=True)
class SolenoidAction:
    """d commuting invertible rational m x m matrices (the dual action)."""

    generators: tuple[QMatrix, ...]
    label: Optional[str] = None

    def __post_init__(self):
        if not self.generators:
            raise ValueError("at least one generator required")
        m = self.generators[0].rows
        for g in self.generators:
            if not g.is_square() or g.rows != m:
                raise ValueError("generators must be square of equal size")

    @property
    def d(self) -> int:
        return len(self.generators)

    @property
    def m(self) -> int:
        return self.generators[0].rows

    def power(self, n: Sequence[int]) -> QMatrix:
        """The matrix of alpha^n for an integer vector n."""
        if len(n) != self.d:
            raise ValueError("exponent vector has wrong length")
        out = QMatrix.identity(self.m)
        for g, e in zip(self.generators, n):
            out = out * g ** e
        return out

    def restrict_lattice(self, basis: Sequence[Sequence[int]]) -> "SolenoidAction":
        """Action of the finite-index subgroup with the given basis vectors."""
        gens = tuple(self.power(b) for b in basis)
        return SolenoidAction(gens, label=self.label)

    def restricted_to(self, sub: QSubspace) -> "SolenoidAction":
        gens = tuple(g.restrict_to(list(sub.basis)) for g in self.generators)
        return SolenoidAction(gens, label=self.label)

    def quotient_by(self, sub: QSubspace) -> "SolenoidAction":
        return SolenoidAction(tuple(quotient_matrix(g, sub) for g in self.generators),
                              label=self.label)


@dataclass
class Diagnostics:
    ok: bool
    problems: list[str] = field(default_factory=list)


def validate(action: SolenoidAction) -> Diagnostics:
    """Exact commutation and invertibility check; reports first violations."""
    problems = []
    gens = action.generators
    for idx, g in enumerate(gens):
        if g.charpoly()[0] == 0:
            problems.append(f"generator {idx + 1} is singular")
            break
    for i in range(len(gens)):
        done = False
        for j in range(i + 1, len(gens)):
            if gens[i] * gens[j] != gens[j] * gens[i]:
                problems.append(f"generators {i + 1} and {j + 1} do not commute")
                done = True
                break
        if done:
            break
    return Diagnostics(ok=not problems, problems=problems)


# ---------------------------------------------------------------------------
# complete irreducibility decision
# ---------------------------------------------------------------------------

def _krylov_span(mats: Sequence[QMatrix], v: Vector) -> QSubspace:
    """Smallest subspace containing v and invariant under all mats."""
    m = len(v)
    vectors = [v]
    space = QSubspace(m, vectors)
    frontier = [v]
    while frontier:
        new = []
        for w in frontier:
            for g in mats:
                img = g * w
                if not space.contains(img):
                    vectors.append(img)
                    space = QSubspace(m, vectors)
                    new.append(img)
        frontier = new
    return space


def _poly_krylov(g: QMatrix, v: Vector) -> QSubspace:
    return _krylov_span([g], v)


def _algebra_element(alg: list[QMatrix], coeffs: Sequence[int]) -> QMatrix:
    out = alg[0] * Fraction(coeffs[0])
    for b, c in zip(alg[1:], coeffs[1:]):
        if c:
            out = out + b * Fraction(c)
    return out


def _in_power_span(g: QMatrix, h: QMatrix, degree: int) -> bool:
    """Is h in the span of I, g, ..., g^(degree-1)?"""
    n = g.rows
    powers = []
    p = QMatrix.identity(n)
    for _ in range(degree):
        powers.append([e for row in p.entries for e in row])
        p = p * g
    target = [e for row in h.entries for e in row]
    a_rows = [[pw[i] for pw in powers] for i in range(n * n)]
    return solve_linear(a_rows, target) is not None


def find_invariant_subspace(action: SolenoidAction, seed: int = 0,
                            ) -> Optional[QSubspace]:
    """A proper nonzero invariant subspace, or None when A-irreducible.

    Complete decision: seeded generic elements first (the measure-one fast
    path), then a deterministic escalation that either certifies
    irreducibility by exhibiting an algebra element with irreducible minimal
    polynomial of full degree, or produces a witness subspace.
    """
    m = action.m
    if m == 1:
        return None
    gens = action.generators
    alg = algebra_closure(gens)
    e1 = vec([1] + [0] * (m - 1))
    if len(alg) < m:
        w = _krylov_span(gens, e1)
        if 0 < w.dim < m:
            return w
        # orbit of e1 is full; some other coordinate vector has a small orbit
        for i in range(1, m):
            ei = vec([1 if j == i else 0 for j in range(m)])
            w = _krylov_span(gens, ei)
            if 0 < w.dim < m:
                return w
        raise RuntimeError("algebra dimension below m but no small orbit")

    # nilradical: kernel of the trace form on the algebra
    gram = QMatrix([[(a * b).trace() for b in alg] for a in alg])
    for combo in kernel_basis(gram):
        n_elt = alg[0] * Fraction(0)
        for c, b in zip(combo, alg):
            if c:
                n_elt = n_elt + b * c
        if any(e != 0 for row in n_elt.entries for e in row):
            w = QSubspace(m, kernel_basis(n_elt))
            if 0 < w.dim < m:
                return w

    # reduced algebra of dimension m: hunt for a primitive element
    rng = random.Random(seed)
    candidates: list[QMatrix] = []
    for attempt in range(32):
        bound = 2 + attempt // 8
        coeffs = [rng.randint(-bound, bound) for _ in range(len(alg))]
        if all(c == 0 for c in coeffs):
            coeffs[attempt % len(alg)] = 1
        candidates.append(_algebra_element(alg, coeffs))
    candidates.extend(alg[1:])

    g = None
    g_mp = None
    for cand in candidates:
        mp = cand.minpoly()
        facs = factor_poly(mp)
        if len(facs) > 1 or facs[0][1] > 1:
            q0 = facs[0][0].monic()
            w = QSubspace(m, kernel_basis(q0(cand)))
            if 0 < w.dim < m:
                return w
            continue
        if mp.degree == m:
            return None
        if g is None or mp.degree > g_mp.degree:
            g, g_mp = cand, mp

    # deterministic escalation from the best element seen
    if g is None:  # pragma: no cover - candidates always exist
        g, g_mp = alg[1], alg[1].minpoly()
    rounds = 0
    while rounds <= m + 1:
        rounds += 1
        deg = g_mp.degree
        if deg == m:
            return None
        if len(alg) == deg:
            # the algebra is the field Q[g]; module has rank >= 2 over it
            w = _poly_krylov(g, e1)
            if 0 < w.dim < m:
                return w
            raise RuntimeError("field algebra with full Krylov span")
        h = next((b for b in alg if not _in_power_span(g, b, deg)), None)
        if h is None:
            raise RuntimeError("algebra dimension exceeds Q[g] but no witness")
        progressed = False
        for c in range(1, m * m + 2):
            cand = g + h * Fraction(c)
            mp = cand.minpoly()
            facs = factor_poly(mp)
            if len(facs) > 1 or facs[0][1] > 1:
                q0 = facs[0][0].monic()
                w = QSubspace(m, kernel_basis(q0(cand)))
                if 0 < w.dim < m:
                    return w
                continue
            if mp.degree > deg:
                g, g_mp = cand, mp
                progressed = True
                break
        if not progressed:
            raise RuntimeError("primitive element escalation failed")
    raise RuntimeError("irreducibility decision did not terminate")


def is_irreducible(action: SolenoidAction, seed: int = 0) -> bool:
    """True iff there is no proper nonzero rational invariant subspace."""
    return find_invariant_subspace(action, seed) is None


def minimal_invariant_subspace(action: SolenoidAction, seed: int = 0) -> QSubspace:
    """A minimal nonzero invariant subspace (in ambient coordinates)."""
    m = action.m
    current = QSubspace.full(m)
    current_action = action
    while True:
        w = find_invariant_subspace(current_action, seed)
        if w is None:
            return current
        # w lives in current's coordinates; map back to ambient
        ambient_vecs = []
        for bv in w.basis:
            v = [Fraction(0)] * m
            for c, amb in zip(bv, current.basis):
                v = [a + c * e for a, e in zip(v, amb)]
            ambient_vecs.append(v)
        current = QSubspace(m, ambient_vecs)
        current_action = action.restricted_to(current)


# ---------------------------------------------------------------------------
# invariant flags
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InvariantFlag:
    """Maximal chain of invariant subspaces with A-irreducible quotients.

    subspaces runs from {0} to Q^m; quotient_blocks[i] holds the d matrices
    of the action induced on subspaces[i+1]/subspaces[i], written in the
    echelon-lift basis recorded in block_bases[i] (ambient representatives
    of the quotient basis).
    """

    subspaces: tuple[QSubspace, ...]
    quotient_blocks: tuple[tuple[QMatrix, ...], ...]
    block_bases: tuple[tuple[Vector, ...], ...]

    @property
    def length(self) -> int:
        return len(self.quotient_blocks)


def invariant_flag(action: SolenoidAction, seed: int = 0) -> InvariantFlag:
    """Flag {0} < V_1 < ... < V_r = Q^m with irreducible quotients."""
    m = action.m
    subspaces = [QSubspace(m)]
    blocks = []
    bases = []
    while subspaces[-1].dim < m:
        below = subspaces[-1]
        quot_action = action.quotient_by(below)
        wbar = minimal_invariant_subspace(quot_action, seed)
        comp = below.complement_columns()
        # ambient representatives of the quotient-minimal subspace
        reps = []
        for bv in wbar.basis:
            v = [Fraction(0)] * m
            for c, j in zip(bv, comp):
                v[j] = c
            reps.append(tuple(v))
        v_next = QSubspace(m, list(below.basis) + reps)
        block_mats = tuple(g.restrict_to(list(wbar.basis)) for g in quot_action.generators)
        subspaces.append(v_next)
        blocks.append(block_mats)
        bases.append(tuple(reps))
    return InvariantFlag(tuple(subspaces), tuple(blocks), tuple(bases))


def flag_block_actions(flag: InvariantFlag, label=None) -> list[SolenoidAction]:
    return [SolenoidAction(bl, label=label) for bl in flag.quotient_blocks]


# ---------------------------------------------------------------------------
# socle: minimal invariant subspaces grouped into isotypic components
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SocleComponent:
    """One isotypic family of minimal invariant subspaces.

    representative: one minimal subspace of the family (ambient coords);
    block: the d matrices of the action on it; multiplicity: number of
    copies inside the socle; isotypic: their sum; isotypic_flag: a chain
    splitting the isotypic component into simple steps when multiplicity
    exceeds one.
    """

    representative: QSubspace
    block: tuple[QMatrix, ...]
    multiplicity: int
    isotypic: QSubspace
    isotypic_flag: tuple[QSubspace, ...]


def _hom_space(block: Sequence[QMatrix], action: SolenoidAction) -> list[QMatrix]:
    """Basis of {L : Q^k -> Q^m with L B_j = A_j L for all j}."""
    k = block[0].rows
    m = action.m
    rows = []
    for bj, aj in zip(block, action.generators):
        # constraint (L bj - aj L)[i, c] = 0
        for i in range(m):
            for c in range(k):
                coeff = [Fraction(0)] * (m * k)
                for t in range(k):
                    coeff[i * k + t] += bj.entries[t][c]
                for s in range(m):
                    coeff[s * k + c] -= aj.entries[i][s]
                rows.append(coeff)
    ker = kernel_basis(QMatrix(rows))
    return [QMatrix([v[i * k:(i + 1) * k] for i in range(m)]) for v in ker]


def socle_irreducibles(action: SolenoidAction, seed: int = 0) -> list[SocleComponent]:
    """All minimal invariant subspaces, up to isomorphism, with multiplicity."""
    m = action.m
    gens = action.generators
    alg = algebra_closure(gens)
    gram = QMatrix([[(a * b).trace() for b in alg] for a in alg])
    nil_combos = kernel_basis(gram)
    nil_elements = []
    for combo in nil_combos:
        n_elt = alg[0] * Fraction(0)
        for c, b in zip(combo, alg):
            if c:
                n_elt = n_elt + b * c
        if any(e != 0 for row in n_elt.entries for e in row):
            nil_elements.append(n_elt)
    if nil_elements:
        stacked = QMatrix([row for n_elt in nil_elements for row in n_elt.entries])
        soc = QSubspace(m, kernel_basis(stacked))
    else:
        soc = QSubspace.full(m)

    components: list[SocleComponent] = []
    covered = QSubspace(m)
    while covered.dim < soc.dim:
        # work inside soc modulo what is already covered
        soc_action = action.restricted_to(soc)
        cov_in_soc = _coords_in(soc, covered)
        quot = soc_action.quotient_by(cov_in_soc)
        wbar = minimal_invariant_subspace(quot, seed)
        block = tuple(g.restrict_to(list(wbar.basis)) for g in quot.generators)
        homs = _hom_space(block, action)
        if not homs:
            raise RuntimeError("isotypic closure found no homomorphisms")
        k = block[0].rows
        images = []
        iso = QSubspace(m)
        flag_chain = []
        for L in homs:
            img = QSubspace(m, [L.col(j) for j in range(k)])
            if img.dim == 0:
                continue
            new_iso = iso.sum(img)
            if new_iso.dim > iso.dim:
                iso = new_iso
                flag_chain.append(iso)
            images.append(img)
        rep = next(img for img in images if img.dim == k)
        rep_block = tuple(g.restrict_to(list(rep.basis)) for g in gens)
        components.append(SocleComponent(
            representative=rep,
            block=rep_block,
            multiplicity=iso.dim // k,
            isotypic=iso,
            isotypic_flag=tuple(flag_chain) if iso.dim > k else (),
        ))
        covered = covered.sum(iso)
    components.sort(key=lambda c: (c.representative.dim, c.representative.basis))
    return components


def _coords_in(space: QSubspace, sub: QSubspace) -> QSubspace:
    """Express sub (contained in space) in space's basis coordinates."""
    if sub.dim == 0:
        return QSubspace(space.dim)
    a_rows = [[b[i] for b in space.basis] for i in range(space.ambient)]
    coords = []
    for v in sub.basis:
        sol = solve_linear(a_rows, list(v))
        if sol is None:
            raise ValueError("subspace not contained in ambient space")
        coords.append(sol)
    return QSubspace(space.dim, coords)
