"""Named verification suites: exhaustive-oracle sweeps at desk-scale parameters.

Each suite returns a SuiteResult with one detail line per grid cell, so the
CLI can print a report and the test suite can assert per-cell outcomes.  The
grids are pinned here; they are what "the default grid" means everywhere.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import census as census_mod
from .equiv import (antidiagonal_scan, antidiagonal_solutions, automorphisms,
                    brute_force_stabilizer, brute_force_witness,
                    diagonal_solutions, lp_equivalent, no_antidiagonal_witness)
from .gftower import euler_phi, get_tower, is_prime
from .linpoly import (LPParams, LinearizedPoly, adjoint, lp_poly,
                      norm_power_sum, norm_power_top_coeff, value_counts)
from .linset import check_coefficient_identities
from .census import census_excess, count_bounds

SMALL_FIELD_LIMIT = 1 << 12
ENUM_LIMIT = 1 << 16

EQUIV_CELLS = ((3, 1, 3, False), (2, 2, 3, True), (5, 1, 3, True), (3, 1, 4, True))
AUT_CELLS = ((3, 1, 3), (2, 2, 3), (3, 1, 4))
NORMPOWER_CELLS = ((3, 1, 3), (2, 2, 3), (5, 1, 3), (3, 1, 4))
DCOUNT_CELLS = ((3, 1, 3), (2, 2, 3), (5, 1, 3), (3, 1, 4), (2, 2, 4))
CENSUS_BRUTE_CELLS = ((2, 2, 3, 1), (3, 1, 4, 1), (5, 1, 3, 2), (2, 2, 4, 2))
NO_CROSS_CELLS = ((2, 1, 5), (3, 1, 5))
BOUNDS_PRIMES = (2, 3, 5, 7)
BOUNDS_R = tuple(range(2, 11))
BOUNDS_N = (3, 4, 5, 6)

_PRIMES_64 = tuple(p for p in range(2, 64) if is_prime(p))


def small_field_grid(min_n: int, limit: int = SMALL_FIELD_LIMIT) -> tuple[tuple[int, int, int], ...]:
    """All (p, r, n) with n >= min_n and p^(r*n) <= limit."""
    out = []
    for p in _PRIMES_64:
        if p**min_n > limit:
            break
        r = 1
        while p ** (r * min_n) <= limit:
            n = min_n
            while p ** (r * n) <= limit:
                out.append((p, r, n))
                n += 1
            r += 1
    return tuple(sorted(out))


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: int = 0
    lines: list[str] = field(default_factory=list)

    def record(self, ok: bool, label: str, detail: str = ""):
        self.checks += 1
        if not ok:
            self.failures += 1
            self.lines.append(f"FAIL {label}" + (f": {detail}" if detail else ""))

    def note(self, line: str):
        self.lines.append(line)

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _valid_thetas(tw) -> list[int]:
    return [t for t in range(1, tw.order) if tw.norm(t) not in (0, 1)]


def _rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng((seed, *key))


# ---------------------------------------------------------------------------
# adjoint suite: value multisets of f and its adjoint coincide
# ---------------------------------------------------------------------------

def check_adjoint_field(p: int, r: int, n: int, polys: int = 200, seed: int = 0) -> tuple[int, int]:
    tw = get_tower(p, r, n)
    rng = _rng(seed, p, r, n)
    failures = 0
    for _ in range(polys):
        f = LinearizedPoly(tw, tuple(int(c) for c in rng.integers(0, tw.order, tw.n)))
        if not np.array_equal(value_counts(f), value_counts(adjoint(f))):
            failures += 1
    return polys, failures


def run_adjoint(seed: int = 0, polys: int = 200) -> SuiteResult:
    res = SuiteResult("adjoint")
    for p, r, n in small_field_grid(min_n=2):
        checks, failures = check_adjoint_field(p, r, n, polys=polys, seed=seed)
        res.checks += checks
        if failures:
            res.failures += failures
            res.lines.append(f"FAIL adjoint (p={p}, r={r}, n={n}): {failures} mismatches")
    return res


# ---------------------------------------------------------------------------
# coeffs suite: the three coefficient identity families on equal linear sets
# ---------------------------------------------------------------------------

def run_coeffs(seed: int = 0, polys: int = 50) -> SuiteResult:
    res = SuiteResult("coeffs")
    for p, r, n in ((3, 1, 3), (2, 2, 3), (2, 1, 4), (5, 1, 2)):
        tw = get_tower(p, r, n)
        rng = _rng(seed, p, r, n)
        for _ in range(polys):
            f = LinearizedPoly(tw, tuple(int(c) for c in rng.integers(0, tw.order, tw.n)))
            res.record(check_coefficient_identities(f, f).all_hold(),
                       f"coeffs f=g (p={p}, r={r}, n={n})")
            res.record(check_coefficient_identities(f, adjoint(f)).all_hold(),
                       f"coeffs adjoint (p={p}, r={r}, n={n})")
    # scan-discovered equal pairs among scaled two-term maps over F_27
    tw = get_tower(3, 1, 3)
    theta = _valid_thetas(tw)[0]
    f = lp_poly(LPParams(tw, 1, theta))
    target = value_counts(f)
    found = 0
    from .linpoly import scale
    for delta in _valid_thetas(tw):
        g = lp_poly(LPParams(tw, 1, delta))
        for d in range(1, tw.order):
            dg = scale(g, d)
            if np.array_equal(value_counts(dg), target):
                found += 1
                res.record(check_coefficient_identities(f, dg).all_hold(),
                           f"coeffs scan pair d={d}, delta={delta}")
    res.record(found >= 2, "coeffs scan pair discovery")
    return res


# ---------------------------------------------------------------------------
# normpower suite: closed top coefficient equals the field-sum oracle
# ---------------------------------------------------------------------------

def check_normpower_cell(p: int, r: int, n: int) -> tuple[int, int]:
    tw = get_tower(p, r, n)
    failures = 0
    for theta in range(tw.order):
        par = LPParams(tw, 1, theta)
        if norm_power_top_coeff(par) != norm_power_sum(par):
            failures += 1
    return tw.order, failures


def run_normpower(seed: int = 0) -> SuiteResult:
    res = SuiteResult("normpower")
    for p, r, n in NORMPOWER_CELLS:
        checks, failures = check_normpower_cell(p, r, n)
        res.checks += checks
        if failures:
            res.failures += failures
            res.lines.append(f"FAIL normpower (p={p}, r={r}, n={n}): {failures} mismatches")
    return res


# ---------------------------------------------------------------------------
# equiv suite: closed form vs exhaustive group search, plus d-counts,
# the n = 4 antidiagonal census and the n > 4 negative scans
# ---------------------------------------------------------------------------

def _norm_buckets(tw) -> list[list[int]]:
    """Valid thetas grouped by the parity-appropriate norm value."""
    byv: dict[int, list[int]] = {}
    d = tw.r if tw.n % 2 else 2 * tw.r
    for t in _valid_thetas(tw):
        byv.setdefault(tw.norm_to(t, d), []).append(t)
    return [byv[k] for k in sorted(byv)]


def check_equiv_cell(p: int, r: int, n: int, bucketed: bool,
                     ceiling: int = 1 << 12) -> tuple[int, int, list[str]]:
    """Ordered-pair agreement between lp_equivalent and the brute witness scan."""
    tw = get_tower(p, r, n)
    if bucketed:
        buckets = _norm_buckets(tw)
        pairs = [(b1[0], b2[0]) for b1 in buckets for b2 in buckets]
    else:
        thetas = _valid_thetas(tw)
        pairs = [(a, b) for a in thetas for b in thetas]
    checks = failures = 0
    details = []
    for theta, delta in pairs:
        verdict = lp_equivalent(LPParams(tw, 1, theta), LPParams(tw, 1, delta))
        witness = brute_force_witness(lp_poly(LPParams(tw, 1, theta)),
                                      lp_poly(LPParams(tw, 1, delta)), ceiling=ceiling)
        checks += 1
        if verdict.equivalent != (witness is not None):
            failures += 1
            details.append(
                f"disagreement (p={p}, r={r}, n={n}) theta={theta} delta={delta}: "
                f"closed={verdict.equivalent} brute={witness is not None}")
    return checks, failures, details


def check_dcount_cell(p: int, r: int, n: int) -> tuple[int, int]:
    """Diagonal solution counts for theta = delta: 1, 2 or q + 1 by parity."""
    tw = get_tower(p, r, n)
    if n % 2:
        expected = 1 if tw.q % 2 == 0 else 2
    else:
        expected = tw.q + 1
    checks = failures = 0
    for theta in _valid_thetas(tw):
        sols = diagonal_solutions(tw, 1, theta, theta, check_realization=False)
        checks += 1
        if len(sols) != expected:
            failures += 1
    return checks, failures


def check_n4_cross_cell() -> tuple[int, int]:
    """All valid pairs over F_81: closed condition iff nonempty c-scan, count q + 1."""
    tw = get_tower(3, 1, 4)
    thetas = _valid_thetas(tw)
    checks = failures = 0
    for theta in thetas:
        for delta in thetas:
            ok, cs = antidiagonal_solutions(tw, theta, delta)
            scan = antidiagonal_scan(tw, theta, delta)
            checks += 1
            if ok != bool(scan) or (ok and (set(cs) != set(scan) or len(cs) != tw.q + 1)):
                failures += 1
    return checks, failures


def check_no_cross_cell(p: int, r: int, n: int, samples: int = 50,
                        seed: int = 0) -> tuple[int, int]:
    tw = get_tower(p, r, n)
    rng = _rng(seed, p, r, n)
    checks = failures = 0
    for _ in range(samples):
        theta = int(rng.integers(1, tw.order))
        delta = int(rng.integers(1, tw.order))
        s = 1 if rng.integers(0, 2) == 0 else 2
        t = 1 if rng.integers(0, 2) == 0 else 2
        checks += 1
        if not no_antidiagonal_witness(LPParams(tw, s, theta), LPParams(tw, t, delta)):
            failures += 1
    return checks, failures


def run_equiv(seed: int = 0, ceiling: int = 1 << 12) -> SuiteResult:
    res = SuiteResult("equiv")
    for p, r, n, bucketed in EQUIV_CELLS:
        checks, failures, details = check_equiv_cell(p, r, n, bucketed, ceiling=ceiling)
        res.checks += checks
        res.failures += failures
        res.lines.extend("FAIL " + d for d in details)
        res.note(f"equiv (q={p**r}, n={n}) {'bucketed' if bucketed else 'unbucketed'}: "
                 f"{checks} pairs, {failures} disagreements")
    for p, r, n in DCOUNT_CELLS:
        checks, failures = check_dcount_cell(p, r, n)
        res.checks += checks
        if failures:
            res.failures += failures
            res.lines.append(f"FAIL d-counts (p={p}, r={r}, n={n}): {failures}")
    checks, failures = check_n4_cross_cell()
    res.checks += checks
    if failures:
        res.failures += failures
        res.lines.append(f"FAIL n=4 antidiagonal census: {failures} of {checks}")
    for p, r, n in NO_CROSS_CELLS:
        checks, failures = check_no_cross_cell(p, r, n, seed=seed)
        res.checks += checks
        if failures:
            res.failures += failures
            res.lines.append(f"FAIL no-cross scan (p={p}, r={r}, n={n}): {failures}")
    return res


# ---------------------------------------------------------------------------
# aut suite: constructed automorphism group vs brute stabilizer
# ---------------------------------------------------------------------------

def check_aut_cell(p: int, r: int, n: int, ceiling: int = 1 << 12) -> tuple[int, int, list[str]]:
    tw = get_tower(p, r, n)
    checks = failures = 0
    details = []
    for theta in _valid_thetas(tw):
        checks += 1
        try:
            aut = automorphisms(LPParams(tw, 1, theta))
        except RuntimeError as exc:
            failures += 1
            details.append(f"aut construction (p={p}, r={r}, n={n}) theta={theta}: {exc}")
            continue
        stab = brute_force_stabilizer(lp_poly(LPParams(tw, 1, theta)), ceiling=ceiling)
        if aut.elements != stab:
            failures += 1
            details.append(
                f"aut (p={p}, r={r}, n={n}) theta={theta}: constructed {aut.size} "
                f"(= case formula {aut.predicted_size}), brute stabilizer {len(stab)}")
    return checks, failures, details


def run_aut(seed: int = 0, ceiling: int = 1 << 12) -> SuiteResult:
    res = SuiteResult("aut")
    for p, r, n in AUT_CELLS:
        checks, failures, details = check_aut_cell(p, r, n, ceiling=ceiling)
        res.checks += checks
        res.failures += failures
        res.lines.extend("FAIL " + d for d in details[:5])
        if len(details) > 5:
            res.lines.append(f"... {len(details) - 5} more at (p={p}, r={r}, n={n})")
        res.note(f"aut (q={p**r}, n={n}): {checks} parameters, {failures} mismatches")
    return res


# ---------------------------------------------------------------------------
# census suite: triple agreement and the degree-count enumerations
# ---------------------------------------------------------------------------

def census_orbit_grid() -> tuple[tuple[int, int, int], ...]:
    out = []
    for p in (2, 3, 5, 7):
        for r in range(1, 17):
            if p**r == 2:
                continue
            for n in range(3, 13):
                w = 1 if n % 2 else 2
                if p ** (w * r) <= ENUM_LIMIT:
                    out.append((p, r, n))
    return tuple(out)


def run_census(seed: int = 0, brute_ceiling: int = 1 << 12) -> SuiteResult:
    res = SuiteResult("census")
    for p, r, n in census_orbit_grid():
        lam = census_mod.closed_count(p, r, n).lam
        orbit = census_mod.orbit_oracle_count(p, r, n) * euler_phi(n) // 2
        res.record(lam == orbit, f"census orbit (p={p}, r={r}, n={n})",
                   f"closed={lam} orbit={orbit}")
    for p, r, n, expected in CENSUS_BRUTE_CELLS:
        lam = census_mod.closed_count(p, r, n).lam
        brute = census_mod.brute_force_count(p, r, n, ceiling=brute_ceiling)
        res.record(lam == brute == expected, f"census brute (p={p}, r={r}, n={n})",
                   f"closed={lam} brute={brute} expected={expected}")
    for p in (2, 3, 5, 7):
        rp = 1
        while p**rp <= ENUM_LIMIT:
            res.record(census_mod.degree_count(p, rp) == census_mod.degree_count_enum(p, rp),
                       f"degree count (p={p}, r'={rp})")
            res.record(census_mod.degree_norm_one_count(p, rp)
                       == census_mod.degree_norm_one_count_enum(p, rp),
                       f"norm-one count (p={p}, r'={rp})")
            rp += 1
    return res


# ---------------------------------------------------------------------------
# bounds suite
# ---------------------------------------------------------------------------

def check_bounds_cell(p: int, r: int, n: int) -> tuple[bool, bool]:
    """(strict sandwich holds, non-strict sandwich holds)."""
    lower, upper = count_bounds(p, r, n)
    excess, _ = census_excess(p, r, n)
    return (lower < excess < upper, lower <= excess < upper)


def run_bounds(seed: int = 0) -> SuiteResult:
    res = SuiteResult("bounds")
    for p in BOUNDS_PRIMES:
        for r in BOUNDS_R:
            for n in BOUNDS_N:
                strict, weak = check_bounds_cell(p, r, n)
                res.record(strict, f"bounds (p={p}, r={r}, n={n})",
                           "lower bound attained with equality" if weak else "violated")
    return res


# ---------------------------------------------------------------------------
# scattered suite: validity of theta decides scatteredness
# ---------------------------------------------------------------------------

def check_scattered_field(p: int, r: int, n: int) -> tuple[int, int]:
    """Valid theta must give a scattered set of full size, norm-one theta must not."""
    tw = get_tower(p, r, n)
    q, N = tw.q, tw.order
    full_size = (N - 1) // (q - 1)
    checks = failures = 0
    for s in range(1, (n + 1) // 2):
        if math.gcd(s, n) != 1:
            continue
        for theta in range(1, N):
            counts = value_counts(lp_poly(LPParams(tw, s, theta)))
            scattered = int((counts > 0).sum()) == full_size
            checks += 1
            expect_scattered = tw.norm(theta) != 1  # nonzero theta has nonzero norm
            if scattered != expect_scattered:
                failures += 1
    return checks, failures


def run_scattered(seed: int = 0) -> SuiteResult:
    res = SuiteResult("scattered")
    for p, r, n in small_field_grid(min_n=3):
        checks, failures = check_scattered_field(p, r, n)
        res.checks += checks
        if failures:
            res.failures += failures
            res.lines.append(f"FAIL scattered (p={p}, r={r}, n={n}): {failures}")
    return res


SUITES = {
    "adjoint": run_adjoint,
    "coeffs": run_coeffs,
    "normpower": run_normpower,
    "equiv": run_equiv,
    "aut": run_aut,
    "census": run_census,
    "bounds": run_bounds,
    "scattered": run_scattered,
}


def run_suite(name: str, seed: int = 0) -> list[SuiteResult]:
    if name == "all":
        return [SUITES[key](seed=seed) for key in SUITES]
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from "
                         f"{', '.join([*SUITES, 'all'])}")
    return [SUITES[name](seed=seed)]
