"""Exact census of inequivalent two-term scattered linear sets, with oracles.

The closed count works over the divisor structure of r (q = p^r): the number
of degree-r' elements of F_q, the subset of them on the unit circle of the
half field, and a parity-dependent epsilon term, everything scaled by phi(n)/2.
Two independent oracles cross-check it: a direct orbit count of the norm
classes under x -> x^(+-p^k) (discrete-log arithmetic, no closed formula), and
a full PGammaL(2, q^n) orbit partition of the actual point sets at small sizes.
Explicit lower/upper bounds are evaluated in exact rational arithmetic, with
rational enclosures of the few irrational p-power terms.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from . import kernels
from .gftower import (CeilingExceeded, FieldTower, divisor_sum, divisors,
                      euler_phi, factorize, get_tower, is_prime)
from .linpoly import LPParams, lp_poly, value_counts

DEFAULT_ORBIT_CEILING = 1 << 20
DEFAULT_BRUTE_CEILING = 1 << 12

R1_EVEN_N_NOTE = ("r = 1, even n: the full formula includes the divisor-2 term, so the "
                  "count differs from the bare epsilon*phi(n)/2 shortcut")
N3_NOTE = ("n = 3: the count enumerates norm classes; geometrically all valid "
           "parameters collapse to the pseudoregulus class")


class CensusError(ValueError):
    pass


def _distinct_primes(m: int) -> list[int]:
    return [prime for prime, _ in factorize(m)]


def degree_count(p: int, rp: int) -> int:
    """Number of elements of F_{p^rp} lying in no proper subfield (degree exactly rp)."""
    if rp < 1:
        raise ValueError("rp must be positive")
    primes = _distinct_primes(rp)
    total = 0
    for mask in range(1 << len(primes)):
        prod = 1
        bits = 0
        for i, prime in enumerate(primes):
            if mask >> i & 1:
                prod *= prime
                bits += 1
        total += (-1) ** bits * p ** (rp // prod)
    return total


def degree_norm_one_count(p: int, rp: int) -> int:
    """Count of degree-rp elements x with x^(p^k + 1) = 1 for some 0 <= k < rp.

    Nonzero only for rp = 1 (k = 0, x^2 = 1) and even rp (k = rp/2).
    """
    if rp < 1:
        raise ValueError("rp must be positive")
    if rp == 1:
        return 2 if p % 2 else 1
    if rp % 2:
        return 0
    fac = factorize(rp)
    primes = [prime for prime, _ in fac]
    if primes == [2]:
        return p ** (rp // 2) - (1 if p % 2 else 0)
    odd_primes = [prime for prime in primes if prime != 2]
    total = 0
    for mask in range(1 << len(odd_primes)):
        prod = 1
        bits = 0
        for i, prime in enumerate(odd_primes):
            if mask >> i & 1:
                prod *= prime
                bits += 1
        total += (-1) ** bits * p ** (rp // (2 * prod))
    return total


def degree_count_enum(p: int, rp: int) -> int:
    """Oracle: exhaustive subfield-membership count over F_{p^rp} via discrete logs."""
    M = p**rp - 1
    ls = np.arange(M, dtype=np.int64)
    in_proper = np.zeros(M, dtype=bool)
    for d in divisors(rp):
        if d == rp:
            continue
        in_proper |= (ls * (p**d - 1)) % M == 0
    count = int((~in_proper).sum())
    return count + (1 if rp == 1 else 0)  # zero lies in F_p only


def degree_norm_one_count_enum(p: int, rp: int) -> int:
    """Oracle: exhaustive count of degree-rp solutions of x^(p^k+1) = 1, any k < rp."""
    M = p**rp - 1
    ls = np.arange(M, dtype=np.int64)
    in_proper = np.zeros(M, dtype=bool)
    for d in divisors(rp):
        if d == rp:
            continue
        in_proper |= (ls * (p**d - 1)) % M == 0
    circle = np.zeros(M, dtype=bool)
    for k in range(rp):
        circle |= (ls * (p**k + 1)) % M == 0
    return int((circle & ~in_proper).sum())


def epsilon_term(p: int, n: int) -> int:
    if p == 2:
        return 0
    return (p - 1) // 2 if n % 2 else (p - 3) // 2


@dataclass(frozen=True)
class CensusTerm:
    rp: int
    degree_size: int
    norm_one_size: int
    contribution: Fraction
    source: str  # "r" for divisors of r, "2r" for the even-n extra divisors


@dataclass(frozen=True)
class CensusReport:
    p: int
    r: int
    n: int
    q: int
    lam: int
    epsilon: int
    terms: tuple[CensusTerm, ...]
    lower: Fraction | None = None
    upper: Fraction | None = None
    orbit_lambda: int | None = None
    brute_lambda: int | None = None
    gronwall: float | None = None
    notes: tuple[str, ...] = ()

    @property
    def oracle_lambda(self) -> int | None:
        return self.brute_lambda if self.brute_lambda is not None else self.orbit_lambda

    @property
    def verified(self) -> bool | None:
        oracles = [v for v in (self.orbit_lambda, self.brute_lambda) if v is not None]
        if not oracles:
            return None
        return all(v == self.lam for v in oracles)

    def to_json(self) -> dict:
        return {
            "p": self.p, "r": self.r, "n": self.n, "q": self.q,
            "lambda": self.lam,
            "epsilon": self.epsilon,
            "terms": [{"r_prime": t.rp, "F": t.degree_size, "K": t.norm_one_size,
                       "contribution": str(t.contribution), "source": t.source}
                      for t in self.terms],
            "lower": str(self.lower) if self.lower is not None else None,
            "upper": str(self.upper) if self.upper is not None else None,
            "orbit_lambda": self.orbit_lambda,
            "brute_lambda": self.brute_lambda,
            "oracle_lambda": self.oracle_lambda,
            "verified": self.verified,
            "gronwall_ratio": self.gronwall,
            "notes": list(self.notes),
        }


def _check_params(p: int, r: int, n: int):
    if not is_prime(p):
        raise CensusError(f"p = {p} is not prime")
    if r < 1:
        raise CensusError("r must be positive")
    if n < 3:
        raise CensusError("census needs n >= 3")
    if p**r == 2:
        raise CensusError("q = 2 admits no valid parameters")


def census_excess(p: int, r: int, n: int) -> tuple[Fraction, tuple[CensusTerm, ...]]:
    """The divisor sum (count/(phi(n)/2) - epsilon) plus its per-divisor breakdown."""
    _check_params(p, r, n)
    terms = []
    total = Fraction(0)
    for rp in divisors(r):
        if rp == 1:
            continue
        f, k = degree_count(p, rp), degree_norm_one_count(p, rp)
        contrib = Fraction(f + k, 2 * rp)
        terms.append(CensusTerm(rp, f, k, contrib, "r"))
        total += contrib
    if n % 2 == 0:
        for rp in divisors(2 * r):
            if r % rp == 0:
                continue
            f, k = degree_count(p, rp), degree_norm_one_count(p, rp)
            contrib = Fraction(f - k, 2 * rp)
            terms.append(CensusTerm(rp, f, k, contrib, "2r"))
            total += contrib
    return total, tuple(terms)


def closed_count(p: int, r: int, n: int) -> CensusReport:
    """Exact number of inequivalent valid two-term sets, by the closed formula."""
    excess, terms = census_excess(p, r, n)
    eps = epsilon_term(p, n)
    lam = (excess + eps) * Fraction(euler_phi(n), 2)
    if lam.denominator != 1 or lam < 0:
        raise RuntimeError(f"census total {lam} is not a nonnegative integer")
    notes = []
    if r == 1 and n % 2 == 0:
        notes.append(R1_EVEN_N_NOTE)
    if n == 3:
        notes.append(N3_NOTE)
    return CensusReport(p=p, r=r, n=n, q=p**r, lam=int(lam), epsilon=eps,
                        terms=terms, notes=tuple(notes))


# ---------------------------------------------------------------------------
# orbit oracle (discrete-log arithmetic, independent of the closed formula)
# ---------------------------------------------------------------------------

_ORBIT_CACHE: dict[tuple[int, int, int], int] = {}


def orbit_oracle_count(p: int, r: int, n: int,
                       ceiling: int = DEFAULT_ORBIT_CEILING) -> int:
    """Orbits of the valid norm values under x -> x^(+-p^k); times phi(n)/2 gives the count.

    Works in F_{q^w} with w = 1 for odd n and w = 2 for even n, on discrete
    logs: the excluded set is the norm-one subgroup, the group action is
    multiplication by +-p^k on Z/(p^(w*r) - 1).
    """
    _check_params(p, r, n)
    w = 1 if n % 2 else 2
    if p ** (w * r) > ceiling:
        raise CeilingExceeded(
            f"orbit oracle needs p^(w*r) = {p**(w*r)} <= {ceiling}")
    key = (p, r, w)
    if key in _ORBIT_CACHE:
        return _ORBIT_CACHE[key]
    q = p**r
    M = p ** (w * r) - 1
    ls = np.arange(M, dtype=np.int64)
    perm_p = (ls * p) % M
    perm_inv = (M - ls) % M
    labels = ls.copy()
    while True:
        nxt = np.minimum(labels, np.minimum(labels[perm_p], labels[perm_inv]))
        if np.array_equal(nxt, labels):
            break
        labels = nxt
    valid = ls % (q - 1) != 0
    count = int(np.unique(labels[valid]).size)
    _ORBIT_CACHE[key] = count
    return count


# ---------------------------------------------------------------------------
# full brute-force orbit partition of the actual point sets
# ---------------------------------------------------------------------------

def _apply_matrix_values(tw: FieldTower, mat: tuple[int, int, int, int],
                         v: np.ndarray) -> np.ndarray | None:
    """Sorted image of a value set under one matrix, or None when it hits infinity."""
    a, b, c, d = (np.int64(x) for x in mat)
    den = tw.addv(np.int64(a), tw.mulv(np.int64(b), v))
    if np.any(den == 0):
        return None
    num = tw.addv(np.int64(c), tw.mulv(np.int64(d), v))
    return np.sort(tw.mulv(num, tw.invv(den)))


def valid_lp_parameters(tw: FieldTower) -> list[LPParams]:
    """All normalized (s, theta) with gcd(s, n) = 1, s < n/2, N(theta) not in {0, 1}."""
    out = []
    for s in range(1, (tw.n + 1) // 2):
        if math.gcd(s, tw.n) != 1:
            continue
        for theta in range(1, tw.order):
            if tw.norm(theta) not in (0, 1):
                out.append(LPParams(tw, s, theta))
    return out


def brute_force_count(p: int, r: int, n: int,
                      ceiling: int = DEFAULT_BRUTE_CEILING) -> int:
    """Number of PGammaL(2, q^n)-orbits among all valid two-term point sets.

    Pure definition-level oracle: each orbit representative is swept over the
    entire group; hash hits are verified exactly before candidates are merged.
    """
    _check_params(p, r, n)
    tw = get_tower(p, r, n)
    if tw.order > ceiling:
        raise CeilingExceeded(f"field order {tw.order} exceeds ceiling {ceiling}")
    params = valid_lp_parameters(tw)
    sets = [np.flatnonzero(value_counts(lp_poly(par))).astype(np.int64) for par in params]
    tables = tw.kernel_tables
    zob = tables.zobrist
    hashes = np.array([int(zob[s].sum()) for s in sets], dtype=np.int64)
    order = np.argsort(hashes, kind="stable")
    hsort = hashes[order]
    assigned = np.full(len(sets), -1, dtype=np.int64)
    classes = 0
    for i in range(len(sets)):
        if assigned[i] >= 0:
            continue
        assigned[i] = classes
        for k in range(tw.m):
            v = tw.frobv(sets[i], k)
            hits, wit = kernels.orbit_scan(v, hsort, tables)
            for slot in np.flatnonzero(hits):
                j = int(order[slot])
                mat = kernels.matrix_from_rank(tw, int(wit[slot]))
                img = _apply_matrix_values(tw, mat, v)
                if img is None or not np.array_equal(img, sets[j]):
                    # hash collision: fall back to an exact pair scan
                    target = np.zeros(tw.order + 1, dtype=bool)
                    target[sets[j]] = True
                    if kernels.first_witness(v, target, tables) < 0:
                        continue
                if assigned[j] >= 0 and assigned[j] != classes:
                    raise RuntimeError("orbit sweep tried to merge two classes")
                assigned[j] = classes
        classes += 1
    if np.any(assigned < 0):
        raise RuntimeError("orbit partition left unassigned candidates")
    return classes


# ---------------------------------------------------------------------------
# explicit bounds (exact rational arithmetic with root enclosures)
# ---------------------------------------------------------------------------

def _pow_interval(p: int, e: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Rational enclosure of p**e for e with denominator 1, 2 or 4."""
    num, den = e.numerator, e.denominator
    if den == 1:
        v = Fraction(p**num)
        return v, v
    scale = 1 << bits
    t = p**num * scale**den
    root = isqrt(t) if den == 2 else isqrt(isqrt(t))
    return Fraction(root, scale), Fraction(root + 1, scale)


def _iv(x) -> tuple[Fraction, Fraction]:
    f = Fraction(x)
    return f, f


def _iv_add(a, b):
    return a[0] + b[0], a[1] + b[1]


def _iv_sub(a, b):
    return a[0] - b[1], a[1] - b[0]


def _iv_scale(a, c: Fraction):
    if c < 0:
        raise ValueError("positive scaling only")
    return a[0] * c, a[1] * c


def _iv_recip(a):
    if a[0] <= 0:
        raise ValueError("reciprocal of a nonpositive interval")
    return 1 / a[1], 1 / a[0]


def _bound_intervals(p: int, r: int, n: int, bits: int):
    """Interval enclosures of the lower and upper bounds on the census excess."""
    fac = factorize(r)
    ell = len(fac)
    r1 = fac[0][0]
    is_pow2 = ell == 1 and r1 == 2
    s1 = fac[0][1] if r1 == 2 else 0
    sig_r = divisor_sum(r)
    sig_2r = divisor_sum(2 * r)

    def powi(e):
        return _pow_interval(p, Fraction(e), bits)

    if n % 2:
        lower = _iv(Fraction(p**r - p, 2 * r))
        head = Fraction(p**r, 2 * r)
        if r % 2:
            tail = _iv_add(_iv(1), _iv_scale(_iv_recip(powi(r - r // r1)), Fraction(sig_r - r - 1)))
            upper = _iv_scale(tail, head)
        elif is_pow2:
            tail = _iv_add(_iv(1), _iv_scale(_iv_recip(powi(Fraction(r, 2))), Fraction(sig_r - r - 1)))
            upper = _iv_add(_iv_scale(tail, head),
                            _iv(sum(p ** 2 ** (i - 1) for i in range(1, s1 + 1))))
        else:
            tail = _iv_add(_iv(1), _iv_scale(_iv_recip(powi(Fraction(r, 2))), Fraction(sig_r - r)))
            tail = _iv_add(tail, _iv_scale(_iv_recip(powi(Fraction(3 * r, 4))), Fraction(sig_r - r - 1)))
            upper = _iv_scale(tail, head)
        return lower, upper

    head = Fraction(p ** (2 * r), 4 * r)
    if r % 2:
        tail = _iv_add(_iv(1), _iv_scale(_iv_recip(powi(r)), Fraction(sig_2r - 2 * r - 1)))
        upper = _iv_scale(tail, head)
    elif is_pow2:
        tail = _iv_add(_iv(1), _iv_scale(_iv_recip(powi(r)), Fraction(sig_2r - 2 * r - 1)))
        upper = _iv_add(_iv_scale(tail, head),
                        _iv(sum(p ** 2 ** (i - 1) for i in range(1, s1 + 1))))
    else:
        tail = _iv_add(_iv(1), _iv_scale(_iv_recip(powi(r)), Fraction(sig_2r - 2 * r - 1)))
        tail = _iv_add(tail, _iv_scale(_iv_recip(powi(Fraction(3 * r, 2))), Fraction(2)))
        tail = _iv_add(tail, _iv_scale(_iv_recip(powi(Fraction(7 * r, 4))), Fraction(2 * (sig_r - r - 1))))
        upper = _iv_scale(tail, head)

    if is_pow2:
        lower = _iv(Fraction(p ** (2 * r) - p, 4 * r)
                    - sum(p ** 2 ** (i - 1) for i in range(1, s1 + 2)))
    else:
        tail = _iv_sub(_iv(1), _iv_recip(powi(r)))
        tail = _iv_sub(tail, _iv_scale(_iv_recip(powi(Fraction(3 * r, 2))), Fraction(sig_2r - 2 * r - 1)))
        tail = _iv_sub(tail, _iv_recip(powi(2 * r - 1)))
        lower = _iv_scale(tail, head)
    return lower, upper


def count_bounds(p: int, r: int, n: int, bits: int = 64,
                 max_bits: int = 2048) -> tuple[Fraction, Fraction]:
    """Rational (lower, upper) bound values for the census excess.

    Exact rationals wherever the bound expressions are rational; otherwise
    certified enclosure endpoints refined until they separate the exact excess.
    The relation lower <= excess < upper is verified internally (and a genuine
    violation raises).  The lower bound is attained with equality exactly when
    r is an odd prime and n is odd, where the divisor sum collapses to
    (p^r - p)/(2r); the strict form claimed upstream fails there.
    """
    _check_params(p, r, n)
    if r < 2:
        raise CensusError("bounds require r > 1")
    excess, _ = census_excess(p, r, n)
    while True:
        lower, upper = _bound_intervals(p, r, n, bits)
        lo_ok = lo_bad = up_ok = up_bad = False
        if lower[0] == lower[1]:
            lo_ok = excess >= lower[0]
            lo_bad = not lo_ok
        else:
            # enclosure endpoints strictly bracket the irrational bound value
            lo_ok = excess >= lower[1]
            lo_bad = excess <= lower[0]
        if upper[0] == upper[1]:
            up_ok = excess < upper[0]
            up_bad = not up_ok
        else:
            up_ok = excess <= upper[0]
            up_bad = excess >= upper[1]
        if lo_bad or up_bad:
            raise RuntimeError(
                f"bound sandwich violated at (p, r, n) = ({p}, {r}, {n})")
        if lo_ok and up_ok:
            return lower[1], upper[0]
        bits *= 2
        if bits > max_bits:
            raise RuntimeError("could not certify the bounds at maximum precision")


def gronwall_ratio(r: int) -> float:
    """sigma(r) / (r * ln ln r); report-only (its limsup is e^gamma)."""
    if r < 3:
        raise ValueError("ratio needs r >= 3 for a positive ln ln r")
    return divisor_sum(r) / (r * math.log(math.log(r)))


def census_cell(p: int, r: int, n: int, with_orbit: bool = True,
                with_brute: bool = True,
                orbit_ceiling: int = DEFAULT_ORBIT_CEILING,
                brute_ceiling: int = DEFAULT_BRUTE_CEILING) -> CensusReport:
    """Full per-(p, r, n) report: closed count, bounds, oracles, ratio, notes."""
    base = closed_count(p, r, n)
    lower = upper = None
    if r > 1:
        lower, upper = count_bounds(p, r, n)
    orbit_lam = None
    if with_orbit:
        try:
            orbit_lam = orbit_oracle_count(p, r, n, ceiling=orbit_ceiling) \
                * euler_phi(n) // 2
        except CeilingExceeded:
            orbit_lam = None
    brute_lam = None
    if with_brute:
        try:
            brute_lam = brute_force_count(p, r, n, ceiling=brute_ceiling)
        except CeilingExceeded:
            brute_lam = None
    gron = gronwall_ratio(r) if r >= 3 else None
    return CensusReport(p=p, r=r, n=n, q=base.q, lam=base.lam, epsilon=base.epsilon,
                        terms=base.terms, lower=lower, upper=upper,
                        orbit_lambda=orbit_lam, brute_lambda=brute_lam,
                        gronwall=gron, notes=base.notes)
