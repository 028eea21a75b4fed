"""Places and Lyapunov weight data of number-field blocks.

A weight vector attaches to each place sigma of a block's field the linear
functional n -> sum_j n_j log|zeta_j|_sigma.  p-adic entries are exact
rationals times log p (computed from Newton polygons, never from p-adic
root finding); archimedean entries are certified intervals from root
enclosures.  Coarse classes group weights by positive proportionality,
exactly on the p-adic side and interval-certified otherwise.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .intervals import (ComplexRoot, PrecisionError, RatInterval, RealRoot,
                        all_roots, eval_box, eval_interval, log_abs_interval,
                        log_interval)
from .newton import newton_polygon, val_p
from .numfield import NumberFieldAction, is_root_of_unity
from .poly import RatPoly

DEFAULT_PREC = 128
MAX_PREC = 4096


class SeparationError(Exception):
    """Joint p-adic valuation matching failed on every separating direction."""


class SignCertificationError(Exception):
    """A pairing sign could not be certified at maximum precision."""


@dataclass(frozen=True)
class Place:
    kind: str                  # "inf" or "p"
    prime: Optional[int]       # None for archimedean places
    index: int                 # root index or cluster id within the block
    is_complex: bool = False

    def label(self) -> str:
        if self.kind == "inf":
            return f"inf.{self.index}" + ("c" if self.is_complex else "r")
        return f"{self.prime}.{self.index}"


class PAdicWeight:
    """Weight at a place over p: entry_j = -v_p(zeta_j at the place) * log p."""

    def __init__(self, place: Place, delta: int, vals: Sequence[Fraction],
                 block: int = 0):
        self.place = place
        self.delta = delta
        self.vals = tuple(Fraction(v) for v in vals)
        self.block = block

    @property
    def d(self) -> int:
        return len(self.vals)

    def is_archimedean(self) -> bool:
        return False

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.vals)

    def direction_exact(self) -> tuple[Fraction, ...]:
        """Entries divided by log p: the exact rational vector (-v_j)."""
        return tuple(-v for v in self.vals)

    def pairing_coefficient(self, n: Sequence[int]) -> Fraction:
        """chi . n = (this value) * log p, exactly."""
        return sum(Fraction(-v) * e for v, e in zip(self.vals, n))

    def entry_interval(self, j: int, prec: int = DEFAULT_PREC) -> RatInterval:
        return RatInterval.point(-self.vals[j]) * log_interval(self.prime, prec)

    def pairing_interval(self, n: Sequence[int], prec: int = DEFAULT_PREC) -> RatInterval:
        return RatInterval.point(self.pairing_coefficient(n)) * log_interval(self.prime, prec)

    def pairing_sign(self, n: Sequence[int], prec: int = DEFAULT_PREC) -> int:
        c = self.pairing_coefficient(n)
        return (c > 0) - (c < 0)

    @property
    def prime(self) -> int:
        return self.place.prime

    def __repr__(self):
        return f"PAdicWeight(p={self.prime}, delta={self.delta}, -v={self.direction_exact()})"


class ArchWeight:
    """Weight at an archimedean place, backed by a refinable root enclosure."""

    def __init__(self, place: Place, delta: int, nf: NumberFieldAction,
                 root, block: int = 0):
        self.place = place
        self.delta = delta
        self.nf = nf
        self.root = root               # RealRoot or ComplexRoot
        self.block = block
        self._cache: dict[int, list[RatInterval]] = {}

    @property
    def d(self) -> int:
        return len(self.nf.multipliers)

    def is_archimedean(self) -> bool:
        return True

    def is_zero(self) -> bool:
        """Exact zero only when every multiplier is a root of unity."""
        return all(is_root_of_unity(self.nf.zeta(j)) is not None
                   for j in range(self.d))

    def entries(self, prec: int = DEFAULT_PREC) -> list[RatInterval]:
        if prec in self._cache:
            return self._cache[prec]
        target = Fraction(1, 2 ** prec)
        out = []
        for g in self.nf.multipliers:
            out.append(self._log_abs(g, target, prec))
        self._cache[prec] = out
        return out

    def _log_abs(self, g: RatPoly, target: Fraction, prec: int) -> RatInterval:
        width = target
        for _ in range(64):
            if isinstance(self.root, RealRoot):
                x = self.root.refine_to(width)
                val = eval_interval(g, x)
                if not val.contains_zero():
                    out = log_abs_interval(val, prec + 16)
                    if out.width() <= target:
                        return out
            else:
                box = self.root.refine_to(width)
                val = eval_box(g, box)
                m2 = val.mag2()
                if m2.lo > 0:
                    out = log_interval(m2, prec + 16) * Fraction(1, 2)
                    if out.width() <= target:
                        return out
            width /= 2 ** 8
        raise PrecisionError("could not certify log|g(root)| at requested width")

    def entry_interval(self, j: int, prec: int = DEFAULT_PREC) -> RatInterval:
        return self.entries(prec)[j]

    def pairing_interval(self, n: Sequence[int], prec: int = DEFAULT_PREC) -> RatInterval:
        es = self.entries(prec)
        acc = RatInterval.point(0)
        for e, c in zip(es, n):
            acc = acc + e * Fraction(c)
        return acc

    def pairing_sign(self, n: Sequence[int], prec: int = DEFAULT_PREC) -> int:
        """Certified sign of chi . n; raises when undecidable at MAX_PREC."""
        if all(c == 0 for c in n):
            return 0
        p = prec
        while p <= MAX_PREC:
            iv_ = self.pairing_interval(n, p)
            s = iv_.sign()
            if s is not None:
                return s
            p *= 2
        # exact-zero fallback: zeta^n a root of unity forces |zeta^n|_sigma = 1
        if is_root_of_unity(self.nf.zeta_power(n)) is not None:
            return 0
        raise SignCertificationError(
            f"sign of pairing at place {self.place.label()} undecided for n={tuple(n)}")

    def __repr__(self):
        es = self.entries(32)
        return f"ArchWeight(delta={self.delta}, entries~{[float(e.mid()) for e in es]})"


Weight = PAdicWeight | ArchWeight


# ---------------------------------------------------------------------------
# bad primes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BadPlaceSet:
    primes: tuple[int, ...]
    always_includes_infinity: bool = True

    def __contains__(self, p: int) -> bool:
        return p in self.primes


def _prime_factors(n: int) -> set[int]:
    n = abs(int(n))
    out = set()
    if n <= 1:
        return out
    for p in (2, 3, 5):
        while n % p == 0:
            out.add(p)
            n //= p
    f = 7
    inc = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while f * f <= n and f < 1_000_000:
        if n % f == 0:
            out.add(f)
            while n % f == 0:
                n //= f
        f += inc[i % 8]
        i += 1
    if n > 1:
        out |= _factor_large(n)
    return out


def _factor_large(n: int) -> set[int]:
    """Pollard rho for leftover cofactors beyond the trial-division bound."""
    if n == 1:
        return set()
    if _is_probable_prime(n):
        return {n}
    d = _pollard_rho(n)
    return _factor_large(d) | _factor_large(n // d)


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise RuntimeError("factorization failed")


def bad_primes(action) -> BadPlaceSet:
    """Primes at which some generator leaves GL(m, Z_p): denominator primes
    of the generators and their inverses."""
    primes: set[int] = set()
    for g in action.generators:
        for mat in (g, g.inverse()):
            for row in mat.entries:
                for e in row:
                    primes |= _prime_factors(e.denominator)
    return BadPlaceSet(tuple(sorted(primes)))


def block_bad_primes(nf: NumberFieldAction) -> list[int]:
    """Primes where some multiplier has a nonzero valuation at some place.

    Exact criterion: p qualifies iff the characteristic polynomial of some
    zeta_j fails to be p-integral with p-unit constant term.
    """
    primes: set[int] = set()
    for j in range(nf.d):
        cp = nf.element_charpoly([1 if t == j else 0 for t in range(nf.d)])
        for c in cp.coeffs:
            primes |= _prime_factors(c.denominator)
        primes |= _prime_factors(cp[0].numerator)
        primes |= _prime_factors(cp[0].denominator)
    return sorted(primes)


# ---------------------------------------------------------------------------
# archimedean weights
# ---------------------------------------------------------------------------

def archimedean_weights(nf: NumberFieldAction, prec: int = DEFAULT_PREC,
                        block: int = 0) -> list[ArchWeight]:
    """One weight per real root (delta 1) and conjugate pair (delta 2)."""
    reals, cplx = all_roots(nf.f)
    weights: list[ArchWeight] = []
    idx = 0
    for r in sorted(reals, key=lambda rt: rt.interval.lo):
        place = Place("inf", None, idx, is_complex=False)
        weights.append(ArchWeight(place, 1, nf, r, block))
        idx += 1
    for c in sorted(cplx, key=lambda rt: (rt.box.re.lo, rt.box.im.lo)):
        place = Place("inf", None, idx, is_complex=True)
        weights.append(ArchWeight(place, 2, nf, c, block))
        idx += 1
    total = sum(w.delta for w in weights)
    if total != nf.degree:
        raise RuntimeError("archimedean local degrees do not sum to the field degree")
    for w in weights:
        w.entries(prec)
    return weights


# ---------------------------------------------------------------------------
# p-adic weights via Newton polygons and separating directions
# ---------------------------------------------------------------------------

def padic_weights(nf: NumberFieldAction, p: int, block: int = 0,
                  ) -> list[PAdicWeight]:
    """Embedding valuation vectors (v_p(tau zeta_1), ..., v_p(tau zeta_d)).

    Marginal valuation multisets come from Newton polygons of the
    multiplier characteristic polynomials; the joint pairing is
    reconstructed by evaluating along an injective base-B direction, all
    exactly.  Clusters of equal vectors are merged with delta = size.
    """
    k = nf.degree
    d = nf.d
    marginals: list[list[Fraction]] = []
    for j in range(d):
        cp = nf.element_charpoly([1 if t == j else 0 for t in range(d)])
        np_ = newton_polygon(cp, p)
        ms = np_.valuation_multiset()
        if len(ms) != k:
            raise SeparationError("marginal multiset has wrong size")
        marginals.append(sorted(ms))
    value_sets = [sorted(set(m)) for m in marginals]
    if all(len(vs) == 1 for vs in value_sets):
        vec = tuple(vs[0] for vs in value_sets)
        return [PAdicWeight(Place("p", p, 0), k, vec, block)]
    if d == 1:
        out = []
        for i, (v, mult) in enumerate(_group(marginals[0])):
            out.append(PAdicWeight(Place("p", p, i), mult, (v,), block))
        return out

    tuples = _match_joint_valuations(nf, p, marginals, value_sets)
    out = []
    for i, (vec, mult) in enumerate(_group(tuples)):
        out.append(PAdicWeight(Place("p", p, i), mult, vec, block))
    return out


def _group(items: list) -> list[tuple[object, int]]:
    out = []
    for it in sorted(items):
        if out and out[-1][0] == it:
            out[-1] = (it, out[-1][1] + 1)
        else:
            out.append((it, 1))
    return out


def _match_joint_valuations(nf: NumberFieldAction, p: int,
                            marginals: list[list[Fraction]],
                            value_sets: list[list[Fraction]]) -> list[tuple]:
    k = nf.degree
    d = nf.d
    denom = 1
    for vs in value_sets:
        for v in vs:
            denom = denom * v.denominator // math.gcd(denom, v.denominator)
    scaled_max = max((abs(int(v * denom)) for vs in value_sets for v in vs), default=0)
    certified_base = 2 * scaled_max + 1
    bases = [b for b in range(2, 65) if b < certified_base] + [certified_base]
    perms = [tuple(range(d))]
    rng = random.Random(1)
    for _ in range(3):
        perm = list(range(d))
        rng.shuffle(perm)
        perms.append(tuple(perm))
    for base in bases:
        for perm in perms:
            grid = {}
            collision = False
            for combo in itertools.product(*[value_sets[j] for j in perm]):
                key = sum(Fraction(c) * base ** i for i, c in enumerate(combo))
                if key in grid:
                    collision = True
                    break
                grid[key] = combo
            if collision:
                continue
            direction = [0] * d
            for i, j in enumerate(perm):
                direction[j] = base ** i
            cp = nf.element_charpoly(direction)
            joint = newton_polygon(cp, p).valuation_multiset()
            decoded = []
            ok = True
            for val in joint:
                if val not in grid:
                    ok = False
                    break
                combo = grid[val]
                vec = [None] * d
                for i, j in enumerate(perm):
                    vec[j] = combo[i]
                decoded.append(tuple(vec))
            if not ok:
                continue
            for j in range(d):
                if sorted(t[j] for t in decoded) != marginals[j]:
                    ok = False
                    break
            if ok:
                return decoded
    raise SeparationError(f"separation failure at p={p}")


# ---------------------------------------------------------------------------
# coarse Lyapunov classes
# ---------------------------------------------------------------------------

@dataclass
class CoarseClass:
    members: list[Weight]
    certainty: str                    # "exact" or "numeric"
    warning: bool = False
    index: int = 0

    @property
    def delta_total(self) -> int:
        return sum(w.delta for w in self.members)

    def direction(self):
        """Canonical direction: primitive integer vector for p-adic-pure
        classes, a representative interval vector otherwise."""
        padics = [w for w in self.members if not w.is_archimedean()]
        if len(padics) == len(self.members):
            return _primitive_direction(padics[0].direction_exact())
        rep = self.members[0]
        return tuple(rep.entry_interval(j) for j in range(rep.d))

    def pairing_sign(self, n: Sequence[int], prec: int = DEFAULT_PREC) -> int:
        """Certified common sign of chi . n over the class members."""
        signs = {w.pairing_sign(n, prec) for w in self.members}
        if len(signs) == 1:
            return signs.pop()
        raise SignCertificationError(
            f"class {self.index} members disagree on the sign at n={tuple(n)}")

    def dimension_split(self) -> dict[str, int]:
        """Q_sigma-dimension of the class subgroup, keyed by place of Q."""
        out: dict[str, int] = {}
        for w in self.members:
            key = "inf" if w.is_archimedean() else str(w.place.prime)
            out[key] = out.get(key, 0) + w.delta
        return out


def _primitive_direction(v: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    den = 1
    for e in v:
        den = den * e.denominator // math.gcd(den, e.denominator)
    ints = [int(e * den) for e in v]
    g = 0
    for e in ints:
        g = math.gcd(g, abs(e))
    if g == 0:
        return tuple(Fraction(0) for _ in v)
    lead = next(e for e in ints if e != 0)
    if lead < 0:
        pass  # orientation matters: keep the true sign
    return tuple(Fraction(e, g) for e in ints)


def _rational_parallel_positive(v: tuple[Fraction, ...], w: tuple[Fraction, ...]) -> bool:
    ratio = None
    for a, b in zip(v, w):
        if (a == 0) != (b == 0):
            return False
        if a != 0:
            r = b / a
            if r <= 0:
                return False
            if ratio is None:
                ratio = r
            elif r != ratio:
                return False
    return ratio is not None


def _numeric_not_proportional(a: Weight, b: Weight, prec: int) -> bool:
    """Certified refutation of positive proportionality at this precision."""
    ea = [a.entry_interval(j, prec) for j in range(a.d)]
    eb = [b.entry_interval(j, prec) for j in range(b.d)]
    for i in range(len(ea)):
        for j in range(i + 1, len(ea)):
            minor = ea[i] * eb[j] - ea[j] * eb[i]
            if not minor.contains_zero():
                return True
    # positive alignment: some certified ratio must be positive
    t_lo, t_hi = None, None
    for x, y in zip(ea, eb):
        sx, sy = x.sign(), y.sign()
        if sx is not None and sy is not None and sx != 0 and sy != 0:
            if sx != sy:
                return True
        if sx is not None and sx != 0:
            r = y / x
            if t_lo is None:
                t_lo, t_hi = r.lo, r.hi
            else:
                t_lo, t_hi = max(t_lo, r.lo), min(t_hi, r.hi)
                if t_lo > t_hi:
                    return True
    if t_hi is not None and t_hi <= 0:
        return True
    return False


def _same_arch_data(a: ArchWeight, b: ArchWeight) -> bool:
    return (a.nf.f == b.nf.f and a.nf.multipliers == b.nf.multipliers
            and a.place.index == b.place.index)


def proportional_verdict(a: Weight, b: Weight, prec: int = DEFAULT_PREC,
                         ) -> tuple[bool, str]:
    """(proportional?, certainty).  Refutations are always certified."""
    if not a.is_archimedean() and not b.is_archimedean():
        ok = _rational_parallel_positive(a.direction_exact(), b.direction_exact())
        return ok, "exact"
    if a.is_archimedean() and b.is_archimedean() and _same_arch_data(a, b):
        return True, "exact"
    p = prec
    while p <= MAX_PREC:
        if _numeric_not_proportional(a, b, p):
            return False, "exact"
        if p >= 4 * prec:
            break
        p *= 2
    return True, "numeric"


def coarse_classes(weights: Sequence[Weight], prec: int = DEFAULT_PREC,
                   ) -> tuple[list[CoarseClass], list[Weight]]:
    """Partition nonzero weights by positive proportionality.

    Returns (classes, zero_weights).  Undecided pairs are merged with
    certainty "numeric" (over-splitting would break the horospherical
    direct-sum decomposition); refutations are certified.
    """
    nonzero = []
    zeros = []
    for w in weights:
        (zeros if w.is_zero() else nonzero).append(w)
    parent = list(range(len(nonzero)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    certainty: dict[int, str] = {}
    for i in range(len(nonzero)):
        for j in range(i + 1, len(nonzero)):
            if find(i) == find(j):
                continue
            ok, cert = proportional_verdict(nonzero[i], nonzero[j], prec)
            if ok:
                ri, rj = find(i), find(j)
                parent[rj] = ri
                if cert == "numeric":
                    certainty[ri] = "numeric"
    groups: dict[int, list[int]] = {}
    for i in range(len(nonzero)):
        groups.setdefault(find(i), []).append(i)
    classes = []
    for root, idxs in groups.items():
        members = [nonzero[i] for i in idxs]
        all_padic = all(not w.is_archimedean() for w in members)
        cert = "exact" if (all_padic or len(members) == 1) else certainty.get(root, "exact")
        classes.append(CoarseClass(members=members, certainty=cert,
                                   warning=certainty.get(root) == "numeric"))
    classes.sort(key=_class_sort_key)
    for i, c in enumerate(classes):
        c.index = i
    return classes, zeros


def _class_sort_key(c: CoarseClass):
    w = c.members[0]
    if w.is_archimedean():
        return (1, 0, w.block, w.place.index)
    return (0, w.place.prime, w.block, w.place.index)


# ---------------------------------------------------------------------------
# horospherical decomposition and exposed classes
# ---------------------------------------------------------------------------

@dataclass
class HorosphericalReport:
    n: tuple[int, ...]
    stable: list[CoarseClass]
    neutral: list[CoarseClass]
    expanding: list[CoarseClass]
    total_dimension: int
    per_place_split: dict[str, int]


def stable_horospherical(classes: Sequence[CoarseClass], n: Sequence[int],
                         prec: int = DEFAULT_PREC) -> HorosphericalReport:
    """Classes with certified chi . n < 0 and their dimension data."""
    stable, neutral, expanding = [], [], []
    for c in classes:
        s = c.pairing_sign(n, prec)
        (stable if s < 0 else neutral if s == 0 else expanding).append(c)
    split: dict[str, int] = {}
    for c in stable:
        for key, dim in c.dimension_split().items():
            split[key] = split.get(key, 0) + dim
    return HorosphericalReport(tuple(n), stable, neutral, expanding,
                               sum(c.delta_total for c in stable), split)


def exposed_classes(classes: Sequence[CoarseClass], prec: int = DEFAULT_PREC,
                    ) -> list[tuple[CoarseClass, str]]:
    """For each class, decide feasibility of {n: chi.n = 0, chi'.n < 0 for others}.

    Returns (class, verdict) with verdict in {"exposed", "not_exposed",
    "inconclusive"}.  Exact rational linear programming when every class
    direction is exact; interval-checked candidates otherwise.
    """
    out = []
    for c in classes:
        others = [o for o in classes if o is not c]
        if not others:
            out.append((c, "exposed"))
            continue
        if all(o.certainty == "exact" and not o.members[0].is_archimedean()
               for o in list(others) + [c]):
            d0 = c.direction()
            dirs = [o.direction() for o in others]
            feasible = _exact_exposure_lp(d0, dirs)
            out.append((c, "exposed" if feasible else "not_exposed"))
        else:
            out.append((c, _numeric_exposure(c, others, prec)))
    return out


def _exact_exposure_lp(d0: tuple[Fraction, ...], dirs: list[tuple[Fraction, ...]]) -> bool:
    """Feasibility of d0.n = 0 and dir.n < 0 for all dirs, over the rationals."""
    d = len(d0)
    # parametrize kernel of d0
    pivot = next((i for i, e in enumerate(d0) if e != 0), None)
    if pivot is None:
        kernel = [[Fraction(1) if i == j else Fraction(0) for j in range(d)]
                  for i in range(d)]
    else:
        kernel = []
        for i in range(d):
            if i == pivot:
                continue
            v = [Fraction(0)] * d
            v[i] = Fraction(1)
            v[pivot] = -d0[i] / d0[pivot]
            kernel.append(v)
    rows = []
    for w in dirs:
        rows.append([sum(w[t] * kv[t] for t in range(d)) for kv in kernel])
    return _strict_homogeneous_feasible(rows)


def _strict_homogeneous_feasible(rows: list[list[Fraction]]) -> bool:
    """Feasibility of R x < 0 (strict, homogeneous) by Fourier-Motzkin."""
    rows = [list(r) for r in rows]
    if not rows:
        return True
    nvars = len(rows[0])
    if nvars == 0:
        return not rows
    for _ in range(nvars - 1):
        var = len(rows[0]) - 1
        pos = [r for r in rows if r[var] > 0]
        neg = [r for r in rows if r[var] < 0]
        zer = [r[:var] for r in rows if r[var] == 0]
        new_rows = list(zer)
        for pr in pos:
            for nr in neg:
                comb = [pr[t] * (-nr[var]) + nr[t] * pr[var] for t in range(var)]
                new_rows.append(comb)
        rows = new_rows
        if not rows:
            return True
    # one variable: rows a*x < 0
    has_pos = any(r[0] > 0 for r in rows)
    has_neg = any(r[0] < 0 for r in rows)
    has_zero = any(r[0] == 0 for r in rows)
    if has_zero:
        return False
    return not (has_pos and has_neg)


def _numeric_exposure(c: CoarseClass, others: list[CoarseClass], prec: int) -> str:
    """Certify exposure from a rational candidate built on midpoint directions.

    A candidate n with chi.n ~ 0 and chi'.n < 0 is corrected onto the true
    kernel of chi via n' = n - (chi.n / chi_j0) e_j0; interval bounds on the
    correction certify the strict inequalities for the true weights.
    """
    rep = c.members[0]
    d = rep.d
    mid0 = [rep.entry_interval(j, prec).mid() for j in range(d)]
    mids = [[o.members[0].entry_interval(j, prec).mid() for j in range(d)]
            for o in others]
    cand = _candidate_kernel_point(mid0, mids)
    if cand is None:
        return "inconclusive"
    chi_cand = rep.pairing_interval(cand, prec)
    j0 = None
    for j in range(d):
        e = rep.entry_interval(j, prec)
        if not e.contains_zero():
            j0, chi_j0 = j, e
            break
    if j0 is None:
        return "inconclusive"
    shift = chi_cand / chi_j0
    for o in others:
        for om in o.members:
            total = om.pairing_interval(cand, prec) - shift * om.entry_interval(j0, prec)
            if total.sign() != -1:
                return "inconclusive"
    return "exposed"


def _candidate_kernel_point(mid0: list[Fraction], mids: list[list[Fraction]],
                            ) -> Optional[list[int]]:
    """A rational point with mid0.n = 0 and mids.n < 0, scaled to integers."""
    d = len(mid0)
    pivot = next((i for i, e in enumerate(mid0) if e != 0), None)
    kernel = []
    for i in range(d):
        if i == pivot:
            continue
        v = [Fraction(0)] * d
        v[i] = Fraction(1)
        if pivot is not None:
            v[pivot] = -mid0[i] / mid0[pivot]
        kernel.append(v)
    if not kernel:
        return None
    # greedy search over small integer combinations of the kernel basis
    best = None
    for combo in itertools.product(range(-3, 4), repeat=len(kernel)):
        if all(c == 0 for c in combo):
            continue
        n = [sum(Fraction(c) * kv[t] for c, kv in zip(combo, kernel)) for t in range(d)]
        vals = [sum(mv[t] * n[t] for t in range(d)) for mv in mids]
        if all(v < 0 for v in vals):
            margin = max(vals)
            if best is None or margin < best[0]:
                best = (margin, n)
    if best is None:
        return None
    n = best[1]
    den = 1
    for e in n:
        den = den * e.denominator // math.gcd(den, e.denominator)
    return [int(e * den) for e in n]


# ---------------------------------------------------------------------------
# product formula
# ---------------------------------------------------------------------------

def check_product_formula(nf: NumberFieldAction, n: Sequence[int],
                          prec: int = DEFAULT_PREC) -> RatInterval:
    """Residual interval of sum_sigma delta(sigma) log|zeta^n|_sigma; contains 0."""
    arch = archimedean_weights(nf, prec)
    acc = RatInterval.point(0)
    for w in arch:
        acc = acc + w.pairing_interval(n, prec) * w.delta
    for p in block_bad_primes(nf):
        coeff = Fraction(0)
        for w in padic_weights(nf, p):
            coeff += w.pairing_coefficient(n) * w.delta
        if coeff:
            acc = acc + RatInterval.point(coeff) * log_interval(p, prec)
    return acc
