import math

import numpy as np
import pytest

from lpscatter.gftower import (
    CeilingExceeded,
    build_field,
    canonical_modulus,
    gcd_p_power,
    get_tower,
    is_irreducible,
    number_profile,
)


def brute_irreducible_quadratics(p):
    """All monic irreducible quadratics over F_p (no roots <=> irreducible for deg 2)."""
    out = []
    for c0 in range(p):
        for c1 in range(p):
            if all((a * a + c1 * a + c0) % p for a in range(p)):
                out.append((c0, c1, 1))
    return out


def test_prime_field_modulus_is_x():
    tw = build_field(2, 1, 1)
    assert tw.modulus == (0, 1)
    assert tw.order == 2
    assert tw.generator == 1
    assert tw.mul(1, 1) == 1
    assert tw.add(1, 1) == 0


def test_canonical_modulus_f9_least_quadratic():
    tw = build_field(3, 1, 2)
    expected = min(brute_irreducible_quadratics(3), key=lambda c: c[0] + 3 * c[1])
    assert tw.modulus == expected
    assert tw.order == 9


def test_subfield_recognition_f4_in_f64():
    tw = build_field(2, 2, 3)
    sub = tw.subfield_elements(2)
    assert len(sub) == 4
    # closed under multiplication and addition
    for x in sub:
        for y in sub:
            assert tw.mul(x, y) in sub
            assert tw.add(x, y) in sub


@pytest.mark.parametrize("p,r,n", [(2, 1, 3), (3, 1, 2), (5, 1, 2), (2, 2, 2), (3, 1, 3)])
def test_field_axioms_and_lagrange(p, r, n):
    tw = get_tower(p, r, n)
    N = tw.order
    for x in range(1, N):
        assert tw.mul(x, tw.inv(x)) == 1
        assert tw.pow_(x, N - 1) == 1
    # distributivity spot check on the full grid for the smallest fields
    if N <= 27:
        for x in range(N):
            for y in range(N):
                for z in range(N):
                    lhs = tw.mul(x, tw.add(y, z))
                    rhs = tw.add(tw.mul(x, y), tw.mul(x, z))
                    assert lhs == rhs


@pytest.mark.parametrize("p,r,n", [(3, 1, 2), (5, 1, 2), (3, 1, 3), (7, 1, 2)])
def test_generator_half_power_is_minus_one(p, r, n):
    tw = get_tower(p, r, n)
    assert tw.pow_(tw.generator, (tw.order - 1) // 2) == tw.minus_one


def test_generator_has_full_order():
    for p, r, n in [(2, 1, 4), (3, 1, 2), (2, 2, 3), (5, 1, 3)]:
        tw = get_tower(p, r, n)
        assert tw.multiplicative_order(tw.generator) == tw.order - 1


@pytest.mark.parametrize("p,r,n", [(2, 2, 3), (3, 1, 3), (5, 1, 2)])
def test_frobenius_properties(p, r, n):
    tw = get_tower(p, r, n)
    N, m = tw.order, tw.m
    xs = np.arange(N, dtype=np.int64)
    assert np.array_equal(tw.frobv(xs, 0), xs)
    assert np.array_equal(tw.frobv(xs, m), xs)
    for x in range(N):
        for y in range(N):
            k = (x + y) % m
            assert tw.frob(tw.add(x, y), k) == tw.add(tw.frob(x, k), tw.frob(y, k))
            assert tw.frob(tw.mul(x, y), k) == tw.mul(tw.frob(x, k), tw.frob(y, k))
    for k in range(m):
        for l in range(m):
            for x in (1, 2, N - 1, tw.generator):
                assert tw.frob(tw.frob(x, k), l) == tw.frob(x, k + l)
    # bijection
    assert len({tw.frob(x, 1) for x in range(N)}) == N


@pytest.mark.parametrize("p,r,n", [(2, 2, 3), (3, 1, 3), (3, 2, 1), (5, 1, 2)])
def test_norm_and_trace(p, r, n):
    tw = get_tower(p, r, n)
    N, m = tw.order, tw.m
    for d in [d for d in range(1, m + 1) if m % d == 0]:
        sub = set(tw.subfield_elements(d))
        assert tw.norm_to(1, d) == 1
        assert tw.trace_to(0, d) == 0
        traces = set()
        for x in range(N):
            nx = tw.norm_to(x, d)
            tx = tw.trace_to(x, d)
            assert nx in sub and tx in sub
            traces.add(tx)
            if x:
                assert tw.pow_(nx, tw.p**d - 1) == 1
        assert traces == sub  # trace onto F_{p^d} is surjective
        # multiplicativity / additivity
        for x in range(0, N, max(1, N // 7)):
            for y in range(0, N, max(1, N // 5)):
                assert tw.norm_to(tw.mul(x, y), d) == tw.mul(tw.norm_to(x, d), tw.norm_to(y, d))
                assert tw.trace_to(tw.add(x, y), d) == tw.add(tw.trace_to(x, d), tw.trace_to(y, d))
        # norm of a generator generates the subfield's multiplicative group
        g_im = tw.norm_to(tw.generator, d)
        assert tw.multiplicative_order(g_im) == tw.p**d - 1
    # x in F_q has norm x^n down to F_q
    for x in tw.subfield_elements(tw.r):
        assert tw.norm_to(x, tw.r) == tw.pow_(x, tw.n) or x == 0
    # x in F_{p^d} has trace (m/d)*x down to F_{p^d}
    for d in [d for d in range(1, m + 1) if m % d == 0]:
        for x in tw.subfield_elements(d):
            expected = 0
            for _ in range(m // d):
                expected = tw.add(expected, x)
            assert tw.trace_to(x, d) == expected


def test_norm_trace_reject_bad_divisor():
    tw = get_tower(2, 2, 3)
    with pytest.raises(ValueError):
        tw.norm_to(3, 4)
    with pytest.raises(ValueError):
        tw.trace_to(3, 5)


def test_gcd_p_power_examples_and_sweep():
    assert gcd_p_power(3, 1, 2) == math.gcd(3 + 1, 9 - 1) == 4
    assert gcd_p_power(3, 2, 3) == math.gcd(10, 26) == 2
    assert gcd_p_power(2, 2, 6) == math.gcd(5, 63) == 1
    for p in (2, 3, 5, 7):
        for i in range(1, 13):
            for j in range(1, 13):
                assert gcd_p_power(p, i, j) == math.gcd(p**i + 1, p**j - 1)
    with pytest.raises(ValueError):
        gcd_p_power(3, 0, 2)


def test_number_profile():
    one = number_profile(1)
    assert (one.phi, one.sigma, one.divisors) == (1, 1, (1,))
    twelve = number_profile(12)
    assert twelve.phi == 4 and twelve.sigma == 28
    assert twelve.divisors == (1, 2, 3, 4, 6, 12)
    five = number_profile(5)
    assert five.phi == 4 and five.sigma == 6
    for m in range(1, 200):
        prof = number_profile(m)
        assert prof.sigma == sum(prof.divisors)
        assert prof.phi == sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)
        rebuilt = 1
        for prime, exp in prof.factorization:
            rebuilt *= prime**exp
        assert rebuilt == m


def test_construction_is_deterministic():
    a = build_field(3, 1, 3)
    b = build_field(3, 1, 3)
    assert a.modulus == b.modulus
    assert a.generator == b.generator
    assert np.array_equal(a.exp, b.exp)


def test_encoding_roundtrip_and_identities():
    tw = get_tower(3, 1, 2)
    assert tw.zero == 0 and tw.one == 1
    for x in range(tw.order):
        assert tw._encode(tw._digits_of(x)) == x


def test_modulus_override():
    # x^2 + 1 and x^2 + x + 2 are both irreducible over F_3
    tw = build_field(3, 1, 2, modulus=(2, 1, 1))
    assert tw.modulus == (2, 1, 1)
    assert tw.multiplicative_order(tw.generator) == 8
    with pytest.raises(ValueError):
        build_field(3, 1, 2, modulus=(0, 0, 1))  # x^2 is reducible
    with pytest.raises(ValueError):
        build_field(3, 1, 2, modulus=(1, 1))  # wrong degree
    with pytest.raises(ValueError):
        build_field(4, 1, 2)  # non-prime p


def test_table_budget_ceiling():
    with pytest.raises(CeilingExceeded):
        build_field(2, 1, 5, table_budget=16)


def test_canonical_modulus_is_irreducible_for_sampled_degrees():
    for p, m in [(2, 8), (2, 12), (3, 5), (5, 4), (7, 3), (13, 2)]:
        mod = canonical_modulus(p, m)
        assert len(mod) == m + 1 and mod[-1] == 1
        assert is_irreducible(mod, p)


def test_field_element_wrapper():
    tw = get_tower(3, 1, 2)
    other = get_tower(3, 1, 3)
    x = tw.element("g^3")
    y = tw.element(5)
    assert int(x * x.inverse()) == 1
    assert (x + y - y).enc == x.enc
    assert (x / y * y).enc == x.enc
    assert x.frobenius(tw.m) == x
    with pytest.raises(ValueError):
        _ = x + other.element(2)
    with pytest.raises(ZeroDivisionError):
        tw.element(0).inverse()
    with pytest.raises(ValueError):
        tw.parse_element("99")
    assert tw.parse_element("g^0") == 1
    assert tw.parse_element(str(tw.generator)) == tw.generator


def test_kernel_tables_agree_with_scalar_ops():
    tw = get_tower(3, 1, 3)
    kt = tw.kernel_tables
    N = tw.order
    rng = np.random.default_rng(7)
    for _ in range(300):
        x = int(rng.integers(0, N))
        y = int(rng.integers(0, N))
        assert int(kt.mul[x, y]) == tw.mul(x, y)
        assert int(kt.add[x, y]) == tw.add(x, y)
    assert int(kt.inv[0]) == N
    for x in range(1, N):
        assert int(kt.inv[x]) == tw.inv(x)
    assert int(kt.mul[5, N]) == N  # infinity absorbs


def test_pair_table_budget():
    tw = build_field(2, 1, 5, pair_table_budget=16)
    with pytest.raises(CeilingExceeded):
        _ = tw.kernel_tables


def test_frobenius_matrix_represents_p_power():
    tw = get_tower(2, 2, 3)
    for x in range(tw.order):
        digs = np.array(tw._digits_of(x), dtype=np.int64)
        img = int(((tw.frob_matrix @ digs) % tw.p) @ tw.powp)
        assert img == tw.frob(x, 1)
    power = np.linalg.matrix_power(tw.frob_matrix, tw.m) % tw.p
    assert np.array_equal(power, np.eye(tw.m, dtype=np.int64))


def test_tower_without_tables_scalar_arithmetic():
    tw = build_field(2, 1, 21, tables=False)  # 2^21 is above the default budget
    g = tw.generator
    assert tw.mul(g, tw.inv(g)) == 1
    assert tw.pow_(g, tw.order - 1) == 1
    assert tw.frob(tw.frob(7, 5), tw.m - 5) == 7
    with pytest.raises(RuntimeError):
        tw.mulv(np.array([1, 2]), np.array([3, 4]))
