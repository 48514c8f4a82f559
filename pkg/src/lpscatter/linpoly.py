"""The algebra of q-polynomials sum(a_i X^(q^i)) acting F_q-linearly on F_{q^n}.

Internally every polynomial is stored over the q-basis (exponents q^i), with n
coefficient slots.  The two-term family X^(q^s) + theta*X^(q^(n-s)) with
gcd(s, n) = 1 is the main object of study; its parameters are carried by
LPParams, whose validity flag is the scattering condition N_{q^n/q}(theta)
outside {0, 1}.
"""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .gftower import FieldTower


@dataclass(frozen=True)
class LinearizedPoly:
    """f = sum(coeffs[i] * X^(q^i)) over F_{q^n}, coefficients as encodings."""

    tower: FieldTower
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.tower.n:
            raise ValueError("coefficient array must have exactly n slots")
        if any(not 0 <= c < self.tower.order for c in self.coeffs):
            raise ValueError("coefficient encoding out of range")

    def sigma_degree(self) -> int:
        """Largest i with a nonzero coefficient; -1 for the zero map."""
        for i in range(self.tower.n - 1, -1, -1):
            if self.coeffs[i]:
                return i
        return -1

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def __repr__(self):
        return f"LinearizedPoly({list(self.coeffs)})"


@dataclass(frozen=True)
class LPParams:
    """Parameters (s, theta) of the two-term polynomial X^sigma + theta*X^(sigma^(n-1))."""

    tower: FieldTower
    s: int
    theta: int

    def __post_init__(self):
        n = self.tower.n
        if n < 3:
            raise ValueError("two-term family needs n >= 3")
        if not 1 <= self.s < n:
            raise ValueError("s must satisfy 1 <= s < n")
        if math.gcd(self.s, n) != 1:
            raise ValueError(f"gcd(s={self.s}, n={n}) must be 1")
        if not 0 <= self.theta < self.tower.order:
            raise ValueError("theta encoding out of range")

    @cached_property
    def valid(self) -> bool:
        """Scattering condition: the norm of theta down to F_q avoids 0 and 1."""
        return self.tower.norm(self.theta) not in (0, 1)


def zero_poly(tower: FieldTower) -> LinearizedPoly:
    return LinearizedPoly(tower, (0,) * tower.n)


def identity_poly(tower: FieldTower) -> LinearizedPoly:
    return LinearizedPoly(tower, (1,) + (0,) * (tower.n - 1))


def monomial(tower: FieldTower, i: int, coeff: int = 1) -> LinearizedPoly:
    c = [0] * tower.n
    c[i % tower.n] = coeff
    return LinearizedPoly(tower, tuple(c))


def lp_poly(params: LPParams) -> LinearizedPoly:
    """X^(q^s) + theta*X^(q^(n-s)); theta = 0 degenerates to the pseudoregulus map."""
    tw, n = params.tower, params.tower.n
    c = [0] * n
    c[params.s] = 1  # s != n-s whenever n >= 3 and gcd(s, n) = 1
    c[n - params.s] = params.theta
    return LinearizedPoly(tw, tuple(c))


def scale(f: LinearizedPoly, d: int) -> LinearizedPoly:
    tw = f.tower
    return LinearizedPoly(tw, tuple(tw.mul(d, c) for c in f.coeffs))


def add_polys(f: LinearizedPoly, g: LinearizedPoly) -> LinearizedPoly:
    tw = f.tower
    return LinearizedPoly(tw, tuple(tw.add(a, b) for a, b in zip(f.coeffs, g.coeffs)))


def evaluate(f: LinearizedPoly, x: int) -> int:
    tw = f.tower
    acc = 0
    for i, a in enumerate(f.coeffs):
        if a:
            acc = tw.add(acc, tw.mul(a, tw.frob(x, tw.r * i)))
    return acc


def evaluate_all(f: LinearizedPoly) -> np.ndarray:
    """f(x) for every x in the field, indexed by encoding."""
    tw = f.tower
    N = tw.order
    xs = np.arange(N, dtype=np.int64)
    acc = np.zeros((N, tw.m), dtype=np.int64)
    for i, a in enumerate(f.coeffs):
        if a:
            term = tw.mulv(np.int64(a), tw.frobv(xs, tw.r * i))
            acc += tw._digits[term]
    return (acc % tw.p) @ tw.powp


def compose(f: LinearizedPoly, g: LinearizedPoly) -> LinearizedPoly:
    """f(g(X)) reduced mod X^(q^n) - X."""
    tw = f.tower
    if g.tower is not tw:
        raise ValueError("cross-tower composition")
    n = tw.n
    out = [0] * n
    for i, a in enumerate(f.coeffs):
        if not a:
            continue
        for j, b in enumerate(g.coeffs):
            if not b:
                continue
            k = (i + j) % n
            out[k] = tw.add(out[k], tw.mul(a, tw.frob(b, tw.r * i)))
    return LinearizedPoly(tw, tuple(out))


def adjoint(f: LinearizedPoly) -> LinearizedPoly:
    """The map f^ with Tr(y*f(z)) = Tr(z*f^(y)) for all y, z.

    Coefficientwise: slot (n-i) mod n receives a_i^(q^(n-i)).
    """
    tw = f.tower
    n = tw.n
    out = [0] * n
    for i, a in enumerate(f.coeffs):
        if a:
            j = (n - i) % n
            out[j] = tw.add(out[j], tw.frob(a, tw.r * j))
    return LinearizedPoly(tw, tuple(out))


def value_counts(f: LinearizedPoly) -> np.ndarray:
    """counts[b] = #{x != 0 : f(x)/x = b}, as a dense array over encodings."""
    tw = f.tower
    N = tw.order
    vals = evaluate_all(f)[1:]
    xs = np.arange(1, N, dtype=np.int64)
    b = tw.mulv(vals, tw.invv(xs))
    return np.bincount(b, minlength=N)


def value_multiset(f: LinearizedPoly) -> dict[int, int]:
    counts = value_counts(f)
    return {int(b): int(c) for b, c in enumerate(counts) if c}


def kernel_size(f: LinearizedPoly) -> int:
    """Number of roots of f on the whole field (at least 1, from x = 0)."""
    return int((evaluate_all(f) == 0).sum())


def is_bijective(f: LinearizedPoly) -> bool:
    return kernel_size(f) == 1


def inverse(f: LinearizedPoly) -> LinearizedPoly | None:
    """Compositional inverse mod X^(q^n) - X, or None when f is not bijective.

    Coefficients are recovered by interpolating the inverse map on the F_q-basis
    g^0 .. g^(n-1) (a Moore-matrix linear solve), then verified by composition.
    """
    tw = f.tower
    if not is_bijective(f):
        return None
    n = tw.n
    basis = [tw.pow_(tw.generator, j) for j in range(n)]
    rows = [[tw.frob(evaluate(f, e), tw.r * i) for i in range(n)] for e in basis]
    rhs = list(basis)
    # Gaussian elimination over F_{q^n}
    for col in range(n):
        piv = next((row for row in range(col, n) if rows[row][col]), None)
        if piv is None:
            raise RuntimeError("Moore matrix is singular for a bijective map")
        rows[col], rows[piv] = rows[piv], rows[col]
        rhs[col], rhs[piv] = rhs[piv], rhs[col]
        inv_p = tw.inv(rows[col][col])
        rows[col] = [tw.mul(inv_p, v) for v in rows[col]]
        rhs[col] = tw.mul(inv_p, rhs[col])
        for row in range(n):
            if row != col and rows[row][col]:
                c = rows[row][col]
                rows[row] = [tw.sub(a, tw.mul(c, b)) for a, b in zip(rows[row], rows[col])]
                rhs[row] = tw.sub(rhs[row], tw.mul(c, rhs[col]))
    g = LinearizedPoly(tw, tuple(rhs))
    ident = identity_poly(tw)
    if compose(g, f) != ident or compose(f, g) != ident:
        raise RuntimeError("interpolated inverse failed verification")
    return g


def is_bijective_lp(params: LPParams) -> bool:
    """Bijectivity of the two-term map, closed form cross-checked by a kernel scan.

    The map is bijective iff n is even, or n is odd and N_{q^n/q}(theta) != -1;
    in the failing odd case the kernel has exactly q elements.
    """
    tw = params.tower
    if params.theta == 0:
        return True  # pure Frobenius power
    if tw.n % 2 == 0:
        verdict = True
    else:
        verdict = tw.norm(params.theta) != tw.minus_one
    ks = kernel_size(lp_poly(params))
    if verdict != (ks == 1):
        raise RuntimeError("closed-form bijectivity disagrees with kernel scan")
    if not verdict and ks != tw.q:
        raise RuntimeError(f"non-bijective two-term map has kernel size {ks}, expected q")
    return verdict


def norm_power_top_coeff(params: LPParams) -> int:
    """Coefficient of X^(q^n - 1) in (f(X)/X)^(1 + q + ... + q^(n-1)) for the two-term f.

    Closed form: 1 + N_{q^n/q}(theta) for odd n, and additionally the two
    conjugates of N_{q^n/q^2}(theta) for even n.
    """
    tw = params.tower
    out = tw.add(1, tw.norm(params.theta))
    if tw.n % 2 == 0:
        n2 = tw.norm_to(params.theta, 2 * tw.r)
        out = tw.add(out, tw.add(n2, tw.frob(n2, tw.r * params.s)))
    return out


def parse_poly(tower: FieldTower, text: str) -> LinearizedPoly:
    """Parse 'a0,a1,...,a(n-1)' (element encodings) or the shorthand
    'lp:s=<s>,theta=<element>'."""
    text = text.strip()
    if text.startswith("lp:"):
        fields = dict(item.split("=", 1) for item in text[3:].split(","))
        s = int(fields["s"])
        theta = tower.parse_element(fields["theta"])
        return lp_poly(LPParams(tower, s, theta))
    coeffs = tuple(tower.parse_element(item) for item in text.split(","))
    return LinearizedPoly(tower, coeffs)


def format_poly(f: LinearizedPoly) -> str:
    return ",".join(str(c) for c in f.coeffs)


def norm_power_sum(params: LPParams) -> int:
    """Independent oracle: -sum over x != 0 of (f(x)/x)^((q^n-1)/(q-1))."""
    tw = params.tower
    N = tw.order
    f = lp_poly(params)
    vals = evaluate_all(f)[1:]
    xs = np.arange(1, N, dtype=np.int64)
    b = tw.mulv(vals, tw.invv(xs))
    e = (N - 1) // (tw.q - 1)
    return tw.neg(tw.sum_digits(tw.powv(b, e)))
