"""Deterministic finite-field tower F_p < F_q < F_{q^n} plus number-theory helpers.

Elements of F_{p^m} (m = r*n) are integer encodings sum(c_i * p**i) of their
coordinates over the power basis of a canonical modulus.  The canonical modulus
is the monic irreducible of degree m over F_p whose non-leading coefficient
encoding is smallest; the canonical generator is the primitive element with the
smallest encoding.  Two builds with identical (p, r, n) therefore agree
element-for-element, which makes encodings portable across runs and machines.

F_q sits inside F_{p^m} as the fixed field of x -> x^(p^r); norms and traces to
any subfield F_{p^d} with d | m are pure exponent formulas.  Multiplication runs
on log/antilog tables whenever p^m fits the table budget and falls back to
polynomial arithmetic above it.
"""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

DEFAULT_TABLE_BUDGET = 1 << 20
DEFAULT_PAIR_TABLE_BUDGET = 1 << 12


class CeilingExceeded(ValueError):
    """A requested table or exhaustive scan exceeds the configured ceiling."""


# ---------------------------------------------------------------------------
# integer number theory
# ---------------------------------------------------------------------------

def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def factorize(m: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of m >= 1 as ((prime, exponent), ...), primes ascending."""
    if m < 1:
        raise ValueError("factorize requires m >= 1")
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            e = 0
            while m % f == 0:
                m //= f
                e += 1
            out.append((f, e))
        f += 1 if f == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def divisors(m: int) -> tuple[int, ...]:
    """Sorted divisors of m >= 1."""
    divs = [1]
    for prime, exp in factorize(m):
        divs = [d * prime**k for d in divs for k in range(exp + 1)]
    return tuple(sorted(divs))


def euler_phi(m: int) -> int:
    phi = 1
    for prime, exp in factorize(m):
        phi *= prime ** (exp - 1) * (prime - 1)
    return phi


def divisor_sum(m: int) -> int:
    """sigma(m), the sum of divisors of m."""
    total = 1
    for prime, exp in factorize(m):
        total *= (prime ** (exp + 1) - 1) // (prime - 1)
    return total


@dataclass(frozen=True)
class NumberProfile:
    phi: int
    sigma: int
    divisors: tuple[int, ...]
    factorization: tuple[tuple[int, int], ...]


def number_profile(m: int) -> NumberProfile:
    """phi, sigma, divisor list and factorization of m, mutually consistent."""
    return NumberProfile(euler_phi(m), divisor_sum(m), divisors(m), factorize(m))


def _two_adic(b: int) -> int:
    return (b & -b).bit_length() - 1


def gcd_p_power(p: int, i: int, j: int) -> int:
    """gcd(p**i + 1, p**j - 1) in closed form.

    Equals p**gcd(i,j) + 1 when the 2-adic valuation of i is less than that of
    j, and otherwise 2 for odd p, 1 for p = 2.  i = 0 is rejected: the
    valuation split is only meaningful for i >= 1.
    """
    if i < 1:
        raise ValueError("gcd_p_power requires i >= 1")
    if j < 1:
        raise ValueError("gcd_p_power requires j >= 1")
    if not is_prime(p):
        raise ValueError("p must be prime")
    if _two_adic(i) < _two_adic(j):
        return p ** math.gcd(i, j) + 1
    return 2 if p % 2 else 1


# ---------------------------------------------------------------------------
# polynomial arithmetic over F_p (coefficient lists, low degree first)
# ---------------------------------------------------------------------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    m = len(mod) - 1
    full = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                full[i + j] = (full[i + j] + ai * bj) % p
    for i in range(len(full) - 1, m - 1, -1):
        c = full[i]
        if c:
            full[i] = 0
            for j in range(m):
                full[i - m + j] = (full[i - m + j] - c * mod[j]) % p
    return _poly_trim(full[:m])


def _poly_powmod(a: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mulmod(a, [1], mod, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    _poly_trim(a)
    _poly_trim(b)
    while b:
        inv_lead = pow(b[-1], p - 2, p)
        r = list(a)
        while len(r) >= len(b) and _poly_trim(r):
            shift = len(r) - len(b)
            c = (r[-1] * inv_lead) % p
            for j in range(len(b)):
                r[shift + j] = (r[shift + j] - c * b[j]) % p
            _poly_trim(r)
        a, b = b, r
    return a


def is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """Deterministic irreducibility test for a monic polynomial over F_p."""
    mod = list(coeffs)
    m = len(mod) - 1
    if m < 1 or mod[-1] != 1:
        raise ValueError("modulus must be monic of degree >= 1")
    if m == 1:
        return True
    if mod[0] == 0:
        return False
    if p <= 257:
        for a in range(p):
            if sum(c * pow(a, k, p) for k, c in enumerate(mod)) % p == 0:
                return False
    powers = {}
    h = [0, 1]
    for k in range(1, m + 1):
        h = _poly_powmod(h, p, mod, p)
        powers[k] = h
    if powers[m] != [0, 1]:
        return False
    for prime, _ in factorize(m):
        g = list(powers[m // prime])
        while len(g) < 2:
            g.append(0)
        g[1] = (g[1] - 1) % p
        if not _poly_trim(g):
            return False  # x^(p^(m/prime)) = x mod f, so f splits below degree m
        if len(_poly_gcd(g, mod, p)) != 1:
            return False
    return True


def canonical_modulus(p: int, m: int) -> tuple[int, ...]:
    """Monic irreducible of degree m over F_p minimizing the low-coefficient encoding."""
    for t in range(p**m):
        coeffs = []
        tt = t
        for _ in range(m):
            coeffs.append(tt % p)
            tt //= p
        coeffs.append(1)
        if is_irreducible(tuple(coeffs), p):
            return tuple(coeffs)
    raise RuntimeError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# the tower
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KernelTables:
    """Extended lookup tables for the group-sweep kernels.

    Value encodings live in [0, n); index n is the point at infinity.  mul is
    (n+1)x(n+1) with infinity absorbing, add is (n)x(n), inv maps 0 to the
    infinity index, and zobrist is a fixed random int64 key per value used for
    order-independent set hashes.
    """
    n: int
    mul: np.ndarray
    add: np.ndarray
    inv: np.ndarray
    zobrist: np.ndarray


class FieldTower:
    """Arithmetic context for F_p < F_{p^r} = F_q < F_{q^n}."""

    def __init__(self, p: int, r: int, n: int, modulus: tuple[int, ...] | None = None,
                 table_budget: int = DEFAULT_TABLE_BUDGET,
                 pair_table_budget: int = DEFAULT_PAIR_TABLE_BUDGET,
                 tables: bool = True):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if r < 1 or n < 1:
            raise ValueError("r and n must be positive")
        self.p = p
        self.r = r
        self.n = n
        self.m = r * n
        self.q = p**r
        self.order = p**self.m
        self.mult_order = self.order - 1
        self.table_budget = table_budget
        self.pair_table_budget = pair_table_budget

        if modulus is None:
            modulus = canonical_modulus(p, self.m)
        else:
            modulus = tuple(int(c) % p for c in modulus[:-1]) + (int(modulus[-1]),)
            if len(modulus) != self.m + 1 or modulus[-1] != 1:
                raise ValueError("modulus override must be monic of degree r*n")
            if not is_irreducible(modulus, p):
                raise ValueError("modulus override is reducible")
        self.modulus = modulus

        self.powp = p ** np.arange(self.m, dtype=np.int64)
        self._digits = self._all_digits()
        self.frob_matrix = self._frobenius_matrix()

        if tables and self.order > table_budget:
            raise CeilingExceeded(
                f"field of order {self.order} exceeds table budget {table_budget}")
        self.generator = self._find_generator()
        self.has_tables = tables
        if tables:
            self.exp, self.log = self._build_log_tables()
        else:
            # scalar arithmetic falls back to polynomial multiplication
            self.exp = self.log = None

        self.zero = 0
        self.one = 1
        self.minus_one = self.neg(1)

    # -- construction helpers ------------------------------------------------

    def _all_digits(self) -> np.ndarray:
        d = np.empty((self.order, self.m), dtype=np.int16)
        t = np.arange(self.order, dtype=np.int64)
        for i in range(self.m):
            d[:, i] = t % self.p
            t //= self.p
        return d

    def _digits_of(self, x: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(x % self.p)
            x //= self.p
        return out

    def _encode(self, digs: list[int]) -> int:
        return int(sum(int(c) * self.p**i for i, c in enumerate(digs)))

    def _mul_raw(self, x: int, y: int) -> int:
        a = _poly_trim(self._digits_of(x))
        b = _poly_trim(self._digits_of(y))
        if not a or not b:
            return 0
        return self._encode(_poly_mulmod(a, b, list(self.modulus), self.p))

    def _pow_raw(self, x: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._mul_raw(result, x)
            x = self._mul_raw(x, x)
            e >>= 1
        return result

    def _find_generator(self) -> int:
        M = self.mult_order
        if M == 1:
            return 1
        prime_parts = [M // prime for prime, _ in factorize(M)]
        for cand in range(2, self.order):
            if all(self._pow_raw(cand, e) != 1 for e in prime_parts):
                return cand
        raise RuntimeError("no primitive element found")  # unreachable

    def _frobenius_matrix(self) -> np.ndarray:
        """x -> x^p as an m x m matrix over F_p (columns are images of basis powers)."""
        cols = [self._digits_of(self._pow_raw(self.p**j, self.p)) for j in range(self.m)]
        return np.array(cols, dtype=np.int64).T % self.p

    def _build_log_tables(self) -> tuple[np.ndarray, np.ndarray]:
        M = self.mult_order
        exp = np.empty(max(M, 1), dtype=np.int64)
        block = min(M, 1024)
        cur = 1
        seed = []
        for _ in range(block):
            seed.append(cur)
            cur = self._mul_raw(cur, self.generator)
        exp[:block] = seed
        if M > block:
            # multiply whole blocks by g^block as one F_p-linear map
            g_blk = cur
            w = np.array([self._digits_of(self._mul_raw(g_blk, self.p**j))
                          for j in range(self.m)], dtype=np.int64).T
            v = self._digits[np.array(seed, dtype=np.int64)].T.astype(np.int64)
            pos = block
            while pos < M:
                v = (w @ v) % self.p
                chunk = self.powp @ v
                take = min(block, M - pos)
                exp[pos:pos + take] = chunk[:take]
                pos += take
        log = np.full(self.order, -1, dtype=np.int64)
        log[exp[:M]] = np.arange(M, dtype=np.int64)
        if M and int((log[1:] >= 0).sum()) != M:
            raise RuntimeError("generator is not primitive")  # unreachable
        return exp, log

    # -- scalar arithmetic ---------------------------------------------------

    def add(self, x: int, y: int) -> int:
        s = (self._digits[x].astype(np.int64) + self._digits[y]) % self.p
        return int(s @ self.powp)

    def neg(self, x: int) -> int:
        s = (-self._digits[x].astype(np.int64)) % self.p
        return int(s @ self.powp)

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        M = self.mult_order
        if M == 0:
            return 1
        if self.exp is None:
            return self._mul_raw(x, y)
        return int(self.exp[(self.log[x] + self.log[y]) % M])

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inversion of zero")
        M = self.mult_order
        if M <= 1:
            return 1
        if self.exp is None:
            return self._pow_raw(x, self.order - 2)
        return int(self.exp[(M - self.log[x]) % M])

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow_(self, x: int, e: int) -> int:
        """x**e with the exponent reduced mod p^m - 1 for nonzero x."""
        if x == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        M = self.mult_order
        if M <= 1:
            return 1
        if self.exp is None:
            return self._pow_raw(x, e % M)
        return int(self.exp[(int(self.log[x]) * e) % M])

    def frob(self, x: int, k: int) -> int:
        """x -> x^(p^k); k is reduced mod r*n."""
        return self.pow_(x, self.p ** (k % self.m))

    def norm_to(self, x: int, d: int) -> int:
        """Norm from F_{p^m} down to F_{p^d}: x^((p^m-1)/(p^d-1))."""
        if self.m % d:
            raise ValueError(f"d = {d} does not divide r*n = {self.m}")
        if x == 0:
            return 0
        return self.pow_(x, self.mult_order // (self.p**d - 1))

    def trace_to(self, x: int, d: int) -> int:
        """Trace from F_{p^m} down to F_{p^d}: sum of x^(p^(d*i))."""
        if self.m % d:
            raise ValueError(f"d = {d} does not divide r*n = {self.m}")
        acc = np.zeros(self.m, dtype=np.int64)
        for i in range(self.m // d):
            acc += self._digits[self.frob(x, d * i)]
        return int((acc % self.p) @ self.powp)

    def norm(self, x: int) -> int:
        """Norm to F_q."""
        return self.norm_to(x, self.r)

    def multiplicative_order(self, x: int) -> int:
        if x == 0:
            raise ValueError("0 has no multiplicative order")
        M = self.mult_order
        if M <= 1:
            return 1
        if self.log is None:
            order = 1
            y = x
            while y != 1:
                y = self._mul_raw(y, x)
                order += 1
            return order
        return M // math.gcd(int(self.log[x]), M)

    def is_in_subfield(self, x: int, d: int) -> bool:
        return self.frob(x, d) == x

    def subfield_elements(self, d: int) -> tuple[int, ...]:
        """All x with x^(p^d) = x, i.e. the copy of F_{p^d} inside the tower."""
        if self.m % d:
            raise ValueError(f"d = {d} does not divide r*n = {self.m}")
        x = np.arange(self.order, dtype=np.int64)
        return tuple(int(v) for v in x[self.frobv(x, d) == x])

    # -- vector arithmetic on encoding arrays --------------------------------

    def _require_tables(self):
        if self.exp is None:
            raise RuntimeError("vectorized arithmetic needs log/antilog tables; "
                               "build the tower with tables=True")

    def addv(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        s = (self._digits[x].astype(np.int64) + self._digits[y]) % self.p
        return s @ self.powp

    def negv(self, x: np.ndarray) -> np.ndarray:
        s = (-self._digits[x].astype(np.int64)) % self.p
        return s @ self.powp

    def mulv(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        self._require_tables()
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        out = np.zeros(np.broadcast(x, y).shape, dtype=np.int64)
        nz = (x != 0) & (y != 0)
        M = max(self.mult_order, 1)
        lg = (self.log[np.broadcast_to(x, out.shape)[nz]]
              + self.log[np.broadcast_to(y, out.shape)[nz]]) % M
        out[nz] = self.exp[lg]
        return out

    def invv(self, x: np.ndarray) -> np.ndarray:
        self._require_tables()
        x = np.asarray(x, dtype=np.int64)
        if np.any(x == 0):
            raise ZeroDivisionError("inversion of zero")
        M = max(self.mult_order, 1)
        return self.exp[(M - self.log[x]) % M]

    def powv(self, x: np.ndarray, e: int) -> np.ndarray:
        self._require_tables()
        x = np.asarray(x, dtype=np.int64)
        out = np.zeros(x.shape, dtype=np.int64)
        nz = x != 0
        M = max(self.mult_order, 1)
        out[nz] = self.exp[(self.log[x[nz]] * (e % M if e >= 0 else e)) % M]
        if e == 0:
            out[~nz] = 1
        return out

    def frobv(self, x: np.ndarray, k: int) -> np.ndarray:
        return self.powv(x, self.p ** (k % self.m))

    def sum_digits(self, x: np.ndarray) -> int:
        """Field sum of an array of encodings."""
        acc = self._digits[np.asarray(x, dtype=np.int64)].astype(np.int64).sum(axis=0) % self.p
        return int(acc @ self.powp)

    # -- kernel tables -------------------------------------------------------

    @cached_property
    def kernel_tables(self) -> KernelTables:
        N = self.order
        if N > self.pair_table_budget:
            raise CeilingExceeded(
                f"field of order {N} exceeds pair-table budget {self.pair_table_budget}")
        M = max(self.mult_order, 1)
        mul = np.full((N + 1, N + 1), N, dtype=np.int16)
        mul[0, :N] = 0
        mul[:N, 0] = 0
        lg = self.log[1:N]
        for lo in range(1, N, 512):
            hi = min(lo + 512, N)
            mul[lo:hi, 1:N] = self.exp[(lg[lo - 1:hi - 1, None] + lg[None, :]) % M]
        mul[1:N, N] = N
        mul[0, N] = N  # unreachable for invertible maps; infinity absorbs
        add = np.empty((N, N), dtype=np.int16)
        x = np.arange(N, dtype=np.int64)
        for lo in range(0, N, 512):
            hi = min(lo + 512, N)
            s = (self._digits[lo:hi, None, :].astype(np.int64) + self._digits[None, :, :]) % self.p
            add[lo:hi] = s @ self.powp
        inv = np.empty(N, dtype=np.int16)
        inv[0] = N
        inv[1:] = self.exp[(M - self.log[1:N]) % M]
        rng = np.random.default_rng(0x5CA77E0 ^ (self.p << 24) ^ self.order)
        zobrist = rng.integers(-(1 << 62), 1 << 62, size=N + 1, dtype=np.int64)
        return KernelTables(n=N, mul=mul, add=add, inv=inv, zobrist=zobrist)

    # -- element I/O ----------------------------------------------------------

    def parse_element(self, text: str) -> int:
        """Parse 'g^k' (power of the canonical generator) or a decimal encoding."""
        text = text.strip()
        if text.startswith("g^"):
            k = int(text[2:])
            return self.pow_(self.generator, k)
        if text == "g":
            return self.generator
        x = int(text)
        if not 0 <= x < self.order:
            raise ValueError(f"encoding {x} out of range for field of order {self.order}")
        return x

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.tower is not self:
                raise ValueError("cross-tower operand")
            return value
        if isinstance(value, str):
            return FieldElement(self, self.parse_element(value))
        return FieldElement(self, int(value))

    def __repr__(self) -> str:
        return f"FieldTower(p={self.p}, r={self.r}, n={self.n})"


class FieldElement:
    """Scalar of F_{q^n} bound to its tower; arithmetic enforces same-tower operands."""

    __slots__ = ("tower", "enc")

    def __init__(self, tower: FieldTower, enc: int):
        if not 0 <= enc < tower.order:
            raise ValueError(f"encoding {enc} out of range")
        self.tower = tower
        self.enc = int(enc)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.tower is not self.tower:
                raise ValueError("cross-tower operands")
            return other.enc
        return self.tower.element(other).enc

    def __add__(self, other):
        return FieldElement(self.tower, self.tower.add(self.enc, self._coerce(other)))

    def __sub__(self, other):
        return FieldElement(self.tower, self.tower.sub(self.enc, self._coerce(other)))

    def __mul__(self, other):
        return FieldElement(self.tower, self.tower.mul(self.enc, self._coerce(other)))

    def __truediv__(self, other):
        return FieldElement(self.tower, self.tower.div(self.enc, self._coerce(other)))

    def __neg__(self):
        return FieldElement(self.tower, self.tower.neg(self.enc))

    def __pow__(self, e: int):
        return FieldElement(self.tower, self.tower.pow_(self.enc, e))

    def inverse(self):
        return FieldElement(self.tower, self.tower.inv(self.enc))

    def frobenius(self, k: int):
        return FieldElement(self.tower, self.tower.frob(self.enc, k))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.tower is other.tower and self.enc == other.enc
        if isinstance(other, int):
            return self.enc == other
        return NotImplemented

    def __hash__(self):
        return hash((id(self.tower), self.enc))

    def __int__(self):
        return self.enc

    def __repr__(self):
        return f"FieldElement({self.enc})"


_TOWER_CACHE: dict[tuple[int, int, int], FieldTower] = {}


def build_field(p: int, r: int, n: int, modulus: tuple[int, ...] | None = None,
                table_budget: int = DEFAULT_TABLE_BUDGET,
                pair_table_budget: int = DEFAULT_PAIR_TABLE_BUDGET,
                tables: bool = True) -> FieldTower:
    """Construct the tower; overrides bypass the canonical-modulus scan.

    tables=False skips the log/antilog tables (scalar arithmetic then runs on
    polynomial multiplication), lifting the table budget for scalar-only use.
    """
    return FieldTower(p, r, n, modulus=modulus, table_budget=table_budget,
                      pair_table_budget=pair_table_budget, tables=tables)


def get_tower(p: int, r: int, n: int) -> FieldTower:
    """Canonical tower with default budgets, cached per (p, r, n)."""
    key = (p, r, n)
    if key not in _TOWER_CACHE:
        _TOWER_CACHE[key] = build_field(p, r, n)
    return _TOWER_CACHE[key]
