"""Factorization of rational polynomials into irreducibles.

Classic Zassenhaus route: squarefree split (Yun), factorization modulo a
good prime (distinct-degree then Cantor-Zassenhaus equal-degree splitting
with a seeded PRNG), quadratic Hensel lifting past the Mignotte bound, and
subset recombination.  Factors are returned integer-primitive with positive
leading coefficient, sorted by degree then coefficients.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from functools import reduce

from .poly import RatPoly, squarefree_decomposition

_PRIME_POOL = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
    71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139,
    149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211,
]


# -- arithmetic in GF(p)[x]; ascending integer coefficient lists -------------

def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _mod_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _trim(out)


def _mod_rem(f, g, p):
    f = list(f)
    dg = len(g) - 1
    inv = pow(g[-1], -1, p)
    while len(f) - 1 >= dg:
        _trim(f)
        if len(f) - 1 < dg:
            break
        c = f[-1] * inv % p
        k = len(f) - 1 - dg
        for i in range(len(g)):
            f[k + i] = (f[k + i] - c * g[i]) % p
        f.pop()
    return _trim(f)


def _mod_divmod(f, g, p):
    f = list(f)
    dg = len(g) - 1
    inv = pow(g[-1], -1, p)
    q = [0] * max(0, len(f) - dg)
    while len(f) - 1 >= dg:
        _trim(f)
        if len(f) - 1 < dg:
            break
        c = f[-1] * inv % p
        k = len(f) - 1 - dg
        q[k] = c
        for i in range(len(g)):
            f[k + i] = (f[k + i] - c * g[i]) % p
        f.pop()
    return _trim(q), _trim(f)


def _mod_gcd(f, g, p):
    a, b = list(f), list(g)
    while b:
        a, b = b, _mod_rem(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _mod_pow(base, e: int, modulus, p):
    result = [1]
    base = _mod_rem(list(base), modulus, p)
    while e:
        if e & 1:
            result = _mod_rem(_mod_mul(result, base, p), modulus, p)
        base = _mod_rem(_mod_mul(base, base, p), modulus, p)
        e >>= 1
    return result


def _mod_monic(f, p):
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def _deriv_mod(f, p):
    return _trim([i * c % p for i, c in enumerate(f)][1:])


# -- factorization in GF(p)[x] ----------------------------------------------

def _distinct_degree(f, p):
    """Split monic squarefree f into (product of irreducibles of degree d, d)."""
    out = []
    h = [0, 1]
    v = list(f)
    d = 0
    while len(v) - 1 >= 2 * (d + 1):
        d += 1
        h = _mod_pow(h, p, v, p)
        sub = _trim([(c - (1 if i == 1 else 0)) % p for i, c in enumerate(h + [0, 0])])
        g = _mod_gcd(v, sub, p)
        if len(g) - 1 > 0:
            out.append((g, d))
            v, _ = _mod_divmod(v, g, p)
            h = _mod_rem(h, v, p)
    if len(v) - 1 > 0:
        out.append((v, len(v) - 1))
    return out


def _equal_degree(f, d: int, p, rng: random.Random):
    """Cantor-Zassenhaus split of monic squarefree f, all factors of degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        r = [rng.randrange(p) for _ in range(n)] + [1]
        r = _trim(r)
        g = _mod_gcd(f, r, p)
        if 0 < len(g) - 1 < n:
            break
        h = _mod_pow(r, (p ** d - 1) // 2, f, p)
        h = _trim([(c - (1 if i == 0 else 0)) % p for i, c in enumerate(h + [0])])
        g = _mod_gcd(f, h, p)
        if 0 < len(g) - 1 < n:
            break
    q, _ = _mod_divmod(f, g, p)
    return _equal_degree(_mod_monic(g, p), d, p, rng) + _equal_degree(_mod_monic(q, p), d, p, rng)


def _factor_mod_p(f, p, seed: int):
    rng = random.Random(seed)
    factors = []
    for g, d in _distinct_degree(_mod_monic(f, p), p):
        factors.extend(_equal_degree(_mod_monic(g, p), d, p, rng))
    return factors


# -- Hensel lifting -----------------------------------------------------------

def _zx_mul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _trim(out)


def _zx_sub(f, g):
    out = list(f) + [0] * max(0, len(g) - len(f))
    for i, c in enumerate(g):
        out[i] -= c
    return _trim(out)


def _centered(f, m):
    out = []
    for c in f:
        c %= m
        if 2 * c > m:
            c -= m
        out.append(c)
    return _trim(out)


def _hensel_step(m, f, g, h, s, t):
    """One quadratic lift: f = g*h mod m, s*g+t*h = 1 mod m -> same mod m^2.

    h must be monic; degree invariants deg s < deg h, deg t < deg g are
    preserved.  (von zur Gathen & Gerhard, Alg. 15.10.)
    """
    mm = m * m
    e = _centered(_zx_sub(f, _zx_mul(g, h)), mm)
    q, r = _poly_divmod_mod(_zx_mul(s, e), h, mm)
    g1 = _centered(_zx_add(_zx_add(g, _zx_mul(t, e)), _zx_mul(q, g)), mm)
    h1 = _centered(_zx_add(h, r), mm)
    b = _centered(_zx_sub(_zx_add(_zx_mul(s, g1), _zx_mul(t, h1)), [1]), mm)
    c, d = _poly_divmod_mod(_zx_mul(s, b), h1, mm)
    s1 = _centered(_zx_sub(s, d), mm)
    t1 = _centered(_zx_sub(_zx_sub(t, _zx_mul(t, b)), _zx_mul(c, g1)), mm)
    return g1, h1, s1, t1


def _zx_add(f, g):
    out = list(f) + [0] * max(0, len(g) - len(f))
    for i, c in enumerate(g):
        out[i] += c
    return _trim(out)


def _poly_divmod_mod(f, g, m):
    """divmod in (Z/m)[x] where lc(g) is invertible mod m."""
    f = [c % m for c in f]
    _trim(f)
    dg = len(g) - 1
    inv = pow(g[-1] % m, -1, m)
    q = [0] * max(0, len(f) - dg)
    while len(f) - 1 >= dg:
        _trim(f)
        if len(f) - 1 < dg:
            break
        c = f[-1] * inv % m
        k = len(f) - 1 - dg
        q[k] = c
        for i in range(len(g)):
            f[k + i] = (f[k + i] - c * g[i]) % m
        f.pop()
    return _trim(q), _trim(f)


def _final_modulus(p: int, target: int) -> int:
    m = p
    while m < target:
        m *= m
    return m


def _multifactor_hensel(f, mods, p, m_final):
    """Monic lifts u_i mod m_final with f = lc(f) * prod u_i (mod m_final).

    f is an integer polynomial with f = lc(f) * prod mods (mod p), the mods
    monic mod p and pairwise coprime; p does not divide lc(f).
    """
    if len(mods) == 1:
        inv = pow(f[-1] % m_final, -1, m_final)
        return [_centered([c * inv % m_final for c in f], m_final)]
    half = len(mods) // 2
    g = [f[-1] % p]
    for u in mods[:half]:
        g = [c % p for c in _zx_mul(g, u)]
    h = [1]
    for u in mods[half:]:
        h = [c % p for c in _zx_mul(h, u)]
    d, s, t = _mod_xgcd(g, h, p)
    inv = pow(d[0], -1, p)
    s = [c * inv % p for c in s]
    t = [c * inv % p for c in t]
    # normalize Bezout degrees: deg s < deg h, deg t < deg g
    if len(s) - 1 >= len(h) - 1 > 0:
        q, s = _mod_divmod(s, h, p)
        t = _trim([(a + b) % p for a, b in
                   itertools.zip_longest(t, _mod_mul(q, g, p), fillvalue=0)])
    m = p
    while m < m_final:
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m *= m
    return (_multifactor_hensel(g, mods[:half], p, m_final)
            + _multifactor_hensel(h, mods[half:], p, m_final))


def _mod_xgcd(f, g, p):
    r0, r1 = list(f), list(g)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _mod_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _trim([(a - b) % p for a, b in
                            itertools.zip_longest(s0, _mod_mul(q, s1, p), fillvalue=0)])
        t0, t1 = t1, _trim([(a - b) % p for a, b in
                            itertools.zip_longest(t0, _mod_mul(q, t1, p), fillvalue=0)])
    return r0, s0, t0


# -- recombination -------------------------------------------------------------

def _mignotte_bound(f: list[int]) -> int:
    norm = math.isqrt(sum(c * c for c in f)) + 1
    return 2 ** (len(f)) * norm * abs(f[-1])


def _zx_content(f: list[int]) -> int:
    return reduce(math.gcd, (abs(c) for c in f), 0)


def _zx_primitive(f: list[int]) -> list[int]:
    g = _zx_content(f)
    if g == 0:
        return []
    if f[-1] < 0:
        g = -g
    return [c // g for c in f]


def _zx_divides(g: list[int], f: list[int]) -> list[int] | None:
    """Exact division f // g over Z if it divides, else None."""
    f = list(f)
    dg = len(g) - 1
    q = [0] * max(0, len(f) - dg)
    while len(f) - 1 >= dg:
        _trim(f)
        if len(f) - 1 < dg:
            break
        if f[-1] % g[-1] != 0:
            return None
        c = f[-1] // g[-1]
        k = len(f) - 1 - dg
        q[k] = c
        for i in range(len(g)):
            f[k + i] -= c * g[i]
        f.pop()
    _trim(f)
    if f:
        return None
    return q


def _zassenhaus(f: list[int], seed: int) -> list[list[int]]:
    """Factor a primitive squarefree integer polynomial, positive lc."""
    if len(f) - 1 <= 1:
        return [f]
    attempt = 0
    for p in _PRIME_POOL:
        if f[-1] % p == 0:
            continue
        fp = [c % p for c in f]
        if len(_mod_gcd(fp, _deriv_mod(fp, p), p)) - 1 != 0:
            continue
        modular = _factor_mod_p(fp, p, seed + attempt)
        attempt += 1
        if len(modular) == 1:
            return [f]
        modular.sort(key=lambda u: (len(u), u))
        bound = 2 * _mignotte_bound(f) + 1
        modulus = _final_modulus(p, bound)
        lifted = _multifactor_hensel(f, modular, p, modulus)
        return _recombine(f, lifted, modulus)
    raise RuntimeError("prime pool exhausted in factorization")


def _recombine(f: list[int], lifted: list[list[int]], m: int) -> list[list[int]]:
    factors = []
    pool = list(range(len(lifted)))
    s = 1
    while 2 * s <= len(pool):
        found = True
        while found and 2 * s <= len(pool):
            found = False
            for combo in itertools.combinations(pool, s):
                cand = [f[-1]]
                for i in combo:
                    cand = _centered(_zx_mul(cand, lifted[i]), m)
                cand = _zx_primitive(cand)
                quot = _zx_divides(cand, f)
                if quot is not None:
                    factors.append(cand)
                    f = _zx_primitive(quot)
                    pool = [i for i in pool if i not in combo]
                    found = True
                    break
        s += 1
    if len(f) - 1 > 0:
        factors.append(_zx_primitive(f))
    return factors


def factor_poly(f: RatPoly, seed: int = 0) -> list[tuple[RatPoly, int]]:
    """Factor f over Q into irreducibles.

    Returns (factor, multiplicity) pairs; factors are integer-primitive with
    positive leading coefficient, sorted by degree then by coefficients.  The
    product of factors^multiplicities equals f up to a rational unit.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    out: list[tuple[RatPoly, int]] = []
    # pull out the x^v factor so the squarefree machinery sees a unit constant
    v = 0
    coeffs = list(f.coeffs)
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        v += 1
    if v:
        out.append((RatPoly([0, 1]), v))
    g = RatPoly(coeffs)
    if g.degree >= 1:
        for part, mult in squarefree_decomposition(g):
            ints = [int(c) for c in part.primitive().coeffs]
            for fac in _zassenhaus(ints, seed):
                out.append((RatPoly(fac), mult))
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    return out


def is_irreducible_poly(f: RatPoly, seed: int = 0) -> bool:
    if f.degree < 1:
        return False
    facs = factor_poly(f, seed)
    return len(facs) == 1 and facs[0][1] == 1


def roots_in_q(f: RatPoly) -> list[Fraction]:
    """All rational roots, with multiplicity ignored."""
    roots = []
    for fac, _ in factor_poly(f):
        if fac.degree == 1:
            roots.append(-fac[0] / fac[1])
    return sorted(set(roots))
