"""Haar entropy and entropy contributions of algebraic Z^d-actions.

Entropy of alpha^n with respect to Haar measure is the contracting-side sum
sum_sigma delta(sigma) max(0, -chi_sigma . n) over the places of each
A-irreducible block, with the flag providing additivity across blocks.
p-adic terms stay exact (rational multiples of log p); archimedean terms
are certified intervals.  Units are nats throughout.

ActionAnalysis caches the flag, the number-field data of every block, the
pooled weights, and the coarse classes of one action.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .action import InvariantFlag, SolenoidAction, invariant_flag, validate
from .intervals import RatInterval, log_interval
from .linalg import QMatrix, QSubspace
from .newton import newton_polygon
from .numfield import NumberFieldAction, diagonalize_block
from .poly import RatPoly, squarefree_decomposition
from .polyfactor import factor_poly
from .weights import (DEFAULT_PREC, ArchWeight, CoarseClass, PAdicWeight,
                      SignCertificationError, Weight, archimedean_weights,
                      block_bad_primes, coarse_classes, padic_weights,
                      proportional_verdict, stable_horospherical)
from .weights import _prime_factors


@dataclass
class EntropyValue:
    """Exact rational multiples of log p plus a certified archimedean interval."""

    plog: dict[int, Fraction] = field(default_factory=dict)
    arch: RatInterval = field(default_factory=lambda: RatInterval.point(0))

    def __add__(self, other: "EntropyValue") -> "EntropyValue":
        plog = dict(self.plog)
        for p, c in other.plog.items():
            plog[p] = plog.get(p, Fraction(0)) + c
        plog = {p: c for p, c in plog.items() if c != 0}
        return EntropyValue(plog, self.arch + other.arch)

    def scaled(self, k: Fraction) -> "EntropyValue":
        k = Fraction(k)
        return EntropyValue({p: c * k for p, c in self.plog.items()},
                            self.arch * k)

    def interval(self, prec: int = DEFAULT_PREC) -> RatInterval:
        acc = self.arch
        for p, c in sorted(self.plog.items()):
            acc = acc + RatInterval.point(c) * log_interval(p, prec)
        return acc

    def is_exactly_zero(self) -> bool:
        return not self.plog and self.arch.lo == self.arch.hi == 0

    @staticmethod
    def zero() -> "EntropyValue":
        return EntropyValue()

    def to_json(self, prec: int = DEFAULT_PREC) -> dict:
        total = self.interval(prec)
        return {
            "exact_log_terms": {str(p): str(c) for p, c in sorted(self.plog.items())},
            "arch_interval": [_dec(self.arch.lo), _dec(self.arch.hi)],
            "value_interval": [_dec(total.lo), _dec(total.hi)],
        }


def _dec(q: Fraction, digits: int = 30) -> str:
    sign = "-" if q < 0 else ""
    q = abs(q)
    scaled = int(q * 10 ** digits)
    s = str(scaled).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


class ActionAnalysis:
    """Flag, block fields, weights, and coarse classes of one action, cached."""

    def __init__(self, action: SolenoidAction, seed: int = 0,
                 prec: int = DEFAULT_PREC):
        diag = validate(action)
        if not diag.ok:
            raise ValueError("invalid action: " + "; ".join(diag.problems))
        self.action = action
        self.seed = seed
        self.prec = prec
        self.flag: InvariantFlag = invariant_flag(action, seed)
        self.blocks: list[NumberFieldAction] = [
            diagonalize_block(bl, seed) for bl in self.flag.quotient_blocks]
        self.weights: list[Weight] = []
        for bi, nf in enumerate(self.blocks):
            self.weights.extend(archimedean_weights(nf, prec, block=bi))
            for p in block_bad_primes(nf):
                self.weights.extend(padic_weights(nf, p, block=bi))
        self.classes, self.zero_weights = coarse_classes(self.weights, prec)

    @property
    def d(self) -> int:
        return self.action.d

    def block_weights(self, bi: int) -> list[Weight]:
        return [w for w in self.weights if w.block == bi]

    def stable(self, n: Sequence[int]):
        return stable_horospherical(self.classes, n, self.prec)

    def class_of_weight(self, w: Weight) -> Optional[CoarseClass]:
        for c in self.classes:
            if any(m is w for m in c.members):
                return c
        return None


def _decided_pairing_interval(w: Weight, n: Sequence[int], prec: int) -> RatInterval:
    """Pairing interval refined until its sign is decided (or exactly zero)."""
    from .weights import MAX_PREC
    p = prec
    while True:
        iv = w.pairing_interval(n, p)
        if iv.sign() is not None:
            return iv
        if p > MAX_PREC:
            return iv
        p *= 2


def _weight_contribution(w: Weight, n: Sequence[int], prec: int) -> Optional[EntropyValue]:
    """delta * max(0, -chi.n) as an EntropyValue; None when not contracting."""
    s = w.pairing_sign(n, prec)
    if s >= 0:
        return None
    if isinstance(w, PAdicWeight):
        coeff = -w.pairing_coefficient(n) * w.delta
        return EntropyValue({w.prime: coeff})
    iv = _decided_pairing_interval(w, n, prec)
    return EntropyValue({}, (-iv) * w.delta)


@dataclass
class EntropyReport:
    n: tuple[int, ...]
    per_block: list[EntropyValue]
    per_class: dict[int, EntropyValue]
    total: EntropyValue
    units: str = "nats"

    def to_json(self, prec: int = DEFAULT_PREC) -> dict:
        return {
            "n": list(self.n),
            "units": self.units,
            "total": self.total.to_json(prec),
            "per_block": [v.to_json(prec) for v in self.per_block],
            "per_class": {str(k): v.to_json(prec) for k, v in sorted(self.per_class.items())},
        }


def haar_entropy(analysis: ActionAnalysis, n: Sequence[int],
                 prec: Optional[int] = None) -> EntropyReport:
    """Entropy of alpha^n for Haar measure, per block and per coarse class."""
    prec = prec or analysis.prec
    n = tuple(int(e) for e in n)
    per_block = []
    for bi in range(len(analysis.blocks)):
        acc = EntropyValue.zero()
        for w in analysis.block_weights(bi):
            c = _weight_contribution(w, n, prec)
            if c is not None:
                acc = acc + c
        per_block.append(acc)
    per_class: dict[int, EntropyValue] = {}
    for cls in analysis.classes:
        sign = cls.pairing_sign(n, prec)
        if sign >= 0:
            continue
        acc = EntropyValue.zero()
        for w in cls.members:
            c = _weight_contribution(w, n, prec)
            if c is not None:
                acc = acc + c
        per_class[cls.index] = acc
    total = EntropyValue.zero()
    for v in per_block:
        total = total + v
    class_sum = EntropyValue.zero()
    for v in per_class.values():
        class_sum = class_sum + v
    if class_sum.plog != total.plog:
        raise RuntimeError("class additivity violated in exact parts")
    return EntropyReport(n, per_block, per_class, total)


def entropy_contribution(analysis: ActionAnalysis, n: Sequence[int],
                         class_indices: Sequence[int],
                         prec: Optional[int] = None) -> EntropyValue:
    """Entropy contribution of the invariant subgroup spanned by the classes.

    Classes outside the stable set of n are dropped first (their leafwise
    contribution vanishes), so the result is the place-restricted sum."""
    prec = prec or analysis.prec
    n = tuple(int(e) for e in n)
    acc = EntropyValue.zero()
    for ci in class_indices:
        cls = analysis.classes[ci]
        if cls.pairing_sign(n, prec) >= 0:
            continue
        for w in cls.members:
            c = _weight_contribution(w, n, prec)
            if c is not None:
                acc = acc + c
    return acc


@dataclass
class KappaResult:
    value: RatInterval
    exact_one: bool
    strictly_below_one: bool
    numerator: EntropyValue
    denominator: EntropyValue


def kappa(analysis: ActionAnalysis, n: Sequence[int],
          class_indices: Sequence[int], block: int = 0,
          prec: Optional[int] = None) -> KappaResult:
    """The ratio h(alpha^n, V) / h(alpha^n) on a designated irreducible block.

    Exactly 1 when V covers every stable class of the block; certified < 1
    for proper V; errors when the block has no entropy at n."""
    prec = prec or analysis.prec
    n = tuple(int(e) for e in n)
    block_ws = analysis.block_weights(block)
    stable_ws = []
    for w in block_ws:
        if w.pairing_sign(n, prec) < 0:
            stable_ws.append(w)
    den = EntropyValue.zero()
    for w in stable_ws:
        den = den + _weight_contribution(w, n, prec)
    den_iv = den.interval(prec)
    if den.is_exactly_zero() or not den_iv.sign() == 1:
        raise ValueError("no positive entropy in designated block for this n")
    selected = set()
    for ci in class_indices:
        for w in analysis.classes[ci].members:
            selected.add(id(w))
    num = EntropyValue.zero()
    covered = 0
    for w in stable_ws:
        if id(w) in selected:
            num = num + _weight_contribution(w, n, prec)
            covered += 1
    if covered == len(stable_ws):
        return KappaResult(RatInterval.point(1), True, False, num, den)
    if covered == 0:
        return KappaResult(RatInterval.point(0), False, True, num, den)
    num_iv = num.interval(prec)
    val = num_iv / den_iv
    gap = (den + num.scaled(-1)).interval(prec)
    strictly = gap.sign() == 1
    val = val.intersect(RatInterval(Fraction(0), Fraction(1)))
    return KappaResult(val, False, strictly, num, den)


@dataclass
class LinearFormReport:
    class_index: int
    c: RatInterval
    samples: list[tuple[tuple[int, ...], RatInterval]]   # (n, residual interval)


def entropy_linear_form(analysis: ActionAnalysis, class_index: int,
                        sample: Optional[list[tuple[int, ...]]] = None,
                        prec: Optional[int] = None) -> LinearFormReport:
    """Fit h(alpha^n, W^[chi]) = c |chi.n| over a sample cone with certified
    residual intervals containing zero."""
    prec = prec or analysis.prec
    cls = analysis.classes[class_index]
    rep = cls.members[0]
    d = analysis.d
    if sample is None:
        sample = [n for n in _grid(d, 3) if cls.pairing_sign(n, prec) < 0]
        if not sample:
            raise ValueError("class has empty stable cone in the sample grid")
    ratios = []
    h_values = []
    for n in sample:
        h = entropy_contribution(analysis, n, [class_index], prec)
        habs = h.interval(prec)
        denom = -_decided_pairing_interval(rep, n, prec)
        ratios.append(habs / denom)
        h_values.append((n, habs, denom))
    lo = max(r.lo for r in ratios)
    hi = min(r.hi for r in ratios)
    if lo > hi:
        raise RuntimeError("linear-form constant intervals do not intersect")
    c = RatInterval(lo, hi)
    residuals = []
    for n, habs, denom in h_values:
        residuals.append((tuple(n), habs - c * denom))
    return LinearFormReport(class_index, c, residuals)


def _grid(d: int, radius: int):
    from itertools import product
    for n in product(range(-radius, radius + 1), repeat=d):
        if any(n):
            yield n


# ---------------------------------------------------------------------------
# homogeneous measures on invariant subgroups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HomogeneousMeasure:
    """Haar measure on a closed invariant adelic subgroup G of the solenoid.

    G is recorded by its annihilator inside the dual Q^m: the dual group of
    G is Q^m / annihilator, and G is invariant under the action exactly when
    the annihilator is invariant under the dual generator matrices."""

    ambient: int
    annihilator: QSubspace

    def __post_init__(self):
        if self.annihilator.ambient != self.ambient:
            raise ValueError("annihilator lives in the wrong space")

    def check_invariant(self, action: SolenoidAction) -> bool:
        return all(self.annihilator.is_invariant_under(g) for g in action.generators)

    def surjects_onto_factors(self, dims: Sequence[int]) -> bool:
        """Projections of G onto the listed product factors are all onto,
        i.e. the annihilator meets each factor's dual only in 0."""
        off = 0
        for dim in dims:
            for b in self.annihilator.basis:
                if all(e == 0 for i, e in enumerate(b) if not off <= i < off + dim) \
                        and any(e != 0 for e in b):
                    return False
            off += dim
        return True


def induced_action(action: SolenoidAction, g: HomogeneousMeasure) -> SolenoidAction:
    """The action on the dual of G: the quotient by the annihilator."""
    if not g.check_invariant(action):
        raise ValueError("subgroup is not invariant under the action")
    return action.quotient_by(g.annihilator)


def homogeneous_entropy(action: SolenoidAction, g: HomogeneousMeasure,
                        n: Sequence[int], seed: int = 0,
                        prec: int = DEFAULT_PREC) -> EntropyReport:
    """Entropy of alpha^n restricted to G, as Haar entropy of the induced
    dual-quotient action."""
    sub_analysis = ActionAnalysis(induced_action(action, g), seed, prec)
    return haar_entropy(sub_analysis, n, prec)


@dataclass
class ShapeIdentityReport:
    block: int
    ratios: dict[int, list[tuple[tuple[int, ...], RatInterval]]]  # class -> (n, ratio)
    constant: RatInterval
    max_width: Fraction
    constant_certified: bool

    def to_json(self, prec: int = DEFAULT_PREC) -> dict:
        return {
            "designated_block": self.block,
            "kappa_interval": [_dec(self.constant.lo), _dec(self.constant.hi)],
            "max_width": _dec(self.max_width),
            "constant_certified": self.constant_certified,
            "per_class": {
                str(ci): [{"n": list(n), "ratio": [_dec(r.lo), _dec(r.hi)]}
                          for n, r in rows]
                for ci, rows in sorted(self.ratios.items())
            },
        }


def shape_identity_report(action: SolenoidAction, g: HomogeneousMeasure,
                          block: int = 0, radius: int = 3, seed: int = 0,
                          prec: int = DEFAULT_PREC) -> ShapeIdentityReport:
    """Ratio table h_G(n, W^[chi]) / h_lambda(n, W^[chi]) per coarse class of
    the designated irreducible block, across a sample of n.

    For homogeneous measures the ratio is a single constant kappa; the
    report certifies constancy across classes and sample directions."""
    analysis = ActionAnalysis(action, seed, prec)
    if block >= len(analysis.blocks):
        raise ValueError("designated flag position out of range")
    block_action = SolenoidAction(analysis.flag.quotient_blocks[block])
    ref = ActionAnalysis(block_action, seed, prec)
    sub = ActionAnalysis(induced_action(action, g), seed, prec)

    ratios: dict[int, list[tuple[tuple[int, ...], RatInterval]]] = {}
    lo_all, hi_all = None, None
    max_width = Fraction(0)
    any_positive = False
    for cls in ref.classes:
        rows = []
        rep = cls.members[0]
        for n in _grid(action.d, radius):
            if cls.pairing_sign(n, prec) >= 0:
                continue
            h_ref = entropy_contribution(ref, n, [cls.index], prec).interval(prec)
            if h_ref.sign() != 1:
                continue
            any_positive = True
            h_g = EntropyValue.zero()
            for w in sub.weights:
                ok, _cert = proportional_verdict(rep, w, prec)
                if ok and w.pairing_sign(n, prec) < 0:
                    contrib = _weight_contribution(w, n, prec)
                    if contrib is not None:
                        h_g = h_g + contrib
            ratio = h_g.interval(prec) / h_ref
            rows.append((tuple(n), ratio))
            max_width = max(max_width, ratio.width())
            lo_all = ratio.lo if lo_all is None else max(lo_all, ratio.lo)
            hi_all = ratio.hi if hi_all is None else min(hi_all, ratio.hi)
        ratios[cls.index] = rows
    if not any_positive:
        raise ValueError("designated block has zero entropy on the whole sample")
    certified = lo_all is not None and lo_all <= hi_all
    if certified:
        constant = RatInterval(lo_all, hi_all)
    else:
        constant = RatInterval.hull([r.lo for rows in ratios.values() for _, r in rows]
                                    + [r.hi for rows in ratios.values() for _, r in rows])
    return ShapeIdentityReport(block, ratios, constant, max_width, certified)


# ---------------------------------------------------------------------------
# direct whole-matrix entropy (independent route, used for cross-checks)
# ---------------------------------------------------------------------------

def haar_entropy_direct(action: SolenoidAction, n: Sequence[int],
                        prec: int = DEFAULT_PREC) -> RatInterval:
    """Expanding-side entropy of alpha^n from the characteristic polynomial
    of the whole matrix: sum of log|lambda| over eigenvalues outside the
    unit circle at every place.  Equals the flag route by the product
    formula; computed without flags or number-field data."""
    from .intervals import all_roots, log_abs_interval, log_interval as _li
    m_n = action.power(list(n))
    cp = m_n.charpoly()
    acc = RatInterval.point(0)
    primes: set[int] = set()
    for c in cp.coeffs:
        primes |= _prime_factors(c.denominator)
    primes |= _prime_factors(cp[0].numerator)
    primes |= _prime_factors(cp[0].denominator)
    for p in sorted(primes):
        expanding = Fraction(0)
        for slope, length in newton_polygon(cp, p).segments:
            if slope > 0:
                expanding += slope * length
        if expanding:
            acc = acc + RatInterval.point(expanding) * _li(p, prec)
    for part, mult in squarefree_decomposition(cp):
        for fac, _ in factor_poly(part):
            if _is_cyclotomic_poly(fac.monic()):
                continue  # all roots on the unit circle, contributing nothing
            reals, cplx = all_roots(fac)
            target = Fraction(1, 2 ** prec)
            for r in reals:
                width = target
                for _ in range(8):
                    x = r.refine_to(width)
                    a = x.abs()
                    if a.lo > 1:
                        acc = acc + log_abs_interval(x, prec) * mult
                        break
                    if a.hi < 1:
                        break
                    width /= 2 ** 64
                else:
                    raise SignCertificationError("real root too close to the unit circle")
            for cbox in cplx:
                width = target
                for _ in range(8):
                    box = cbox.refine_to(width)
                    m2 = box.mag2()
                    if m2.lo > 1:
                        # a conjugate pair contributes 2 log|z| = log|z|^2
                        acc = acc + log_interval(m2, prec) * Fraction(mult)
                        break
                    if m2.hi < 1:
                        break
                    width /= 2 ** 64
                else:
                    raise SignCertificationError("complex root too close to the unit circle")
    return acc


def _is_cyclotomic_poly(f: RatPoly) -> bool:
    from .poly import cyclotomic, euler_phi
    t = f.degree
    if t < 1 or any(c.denominator != 1 for c in f.coeffs) or abs(f[0]) != 1:
        return False
    bound = max(2 * t * t + 1, 8)
    return any(euler_phi(nn) == t and f == cyclotomic(nn) for nn in range(1, bound + 1))
