"""Hot kernels for exhaustive PGL(2, q^n) sweeps, with numba and numpy backends.

Every kernel works on one Frobenius twist at a time: the caller applies
x -> x^(p^k) to the value set first, and the kernels enumerate the normalized
matrix transversal of PGL(2, N) acting on values by the fractional-linear map
m -> (c + d*m) / (a + b*m), with index N playing the point at infinity.

Matrix enumeration order (the "rank") is lexicographic on the normalized
entries (a, b, c, d): first the a = 0, b = 1 block over (c, d) with c != 0,
then the a = 1 block over (b, c, d) with d != b*c skipped.  There are
N^3 - N matrices in total.

Backend selection: the LPSCATTER_BACKEND environment variable may force
"numba" or "numpy"; the default is numba when importable, else numpy.
"""

import os

import numpy as np

try:
    from numba import njit, prange
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    HAVE_NUMBA = False

_env = os.environ.get("LPSCATTER_BACKEND", "auto").strip().lower()
if _env in ("numba", "numpy"):
    _BACKEND = _env
elif HAVE_NUMBA:
    _BACKEND = "numba"
else:
    _BACKEND = "numpy"
if _BACKEND == "numba" and not HAVE_NUMBA:
    raise ImportError("LPSCATTER_BACKEND=numba but numba is not importable")


def active_backend() -> str:
    return _BACKEND


def use_backend(name: str) -> str:
    """Switch the kernel backend at runtime (used by tests and benchmarks)."""
    global _BACKEND
    name = name.strip().lower()
    if name not in ("numba", "numpy"):
        raise ValueError("backend must be 'numba' or 'numpy'")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    previous = _BACKEND
    _BACKEND = name
    return previous


def pgl_size(N: int) -> int:
    return N**3 - N


# ---------------------------------------------------------------------------
# numba kernels
# ---------------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _nb_first_witness(v, target, mul, add, inv):
        N = inv.shape[0]
        ns = v.shape[0]
        rank = 0
        for c in range(1, N):
            for d in range(N):
                ok = True
                for j in range(ns):
                    m = v[j]
                    img = mul[add[c, mul[d, m]], inv[m]]
                    if not target[img]:
                        ok = False
                        break
                if ok:
                    return rank
                rank += 1
        w = np.empty(ns, np.int64)
        for b in range(N):
            for j in range(ns):
                w[j] = inv[add[1, mul[b, v[j]]]]
            for c in range(N):
                bc = mul[b, c]
                for d in range(N):
                    if d == bc:
                        continue
                    ok = True
                    for j in range(ns):
                        img = mul[add[c, mul[d, v[j]]], w[j]]
                        if not target[img]:
                            ok = False
                            break
                    if ok:
                        return rank
                    rank += 1
        return np.int64(-1)

    @njit(cache=True)
    def _nb_stabilizer(v, target, mul, add, inv, out):
        N = inv.shape[0]
        ns = v.shape[0]
        cap = out.shape[0]
        cnt = 0
        rank = 0
        for c in range(1, N):
            for d in range(N):
                ok = True
                for j in range(ns):
                    m = v[j]
                    img = mul[add[c, mul[d, m]], inv[m]]
                    if not target[img]:
                        ok = False
                        break
                if ok:
                    if cnt == cap:
                        return -1
                    out[cnt] = rank
                    cnt += 1
                rank += 1
        w = np.empty(ns, np.int64)
        for b in range(N):
            for j in range(ns):
                w[j] = inv[add[1, mul[b, v[j]]]]
            for c in range(N):
                bc = mul[b, c]
                for d in range(N):
                    if d == bc:
                        continue
                    ok = True
                    for j in range(ns):
                        img = mul[add[c, mul[d, v[j]]], w[j]]
                        if not target[img]:
                            ok = False
                            break
                    if ok:
                        if cnt == cap:
                            return -1
                        out[cnt] = rank
                        cnt += 1
                    rank += 1
        return cnt

    @njit(cache=True, parallel=True)
    def _nb_orbit_scan(v, mul, add, inv, zob, hsort):
        N = inv.shape[0]
        ns = v.shape[0]
        H = hsort.shape[0]
        blk0 = (N - 1) * N
        per_b = N * (N - 1)
        hits = np.zeros((N + 1, H), np.uint8)
        wit = np.full((N + 1, H), -1, np.int64)
        for bi in prange(N + 1):
            if bi == N:
                # a = 0, b = 1 block; denominator is the value itself
                rank = 0
                for c in range(1, N):
                    for d in range(N):
                        h = np.int64(0)
                        for j in range(ns):
                            m = v[j]
                            h += zob[mul[add[c, mul[d, m]], inv[m]]]
                        t = np.searchsorted(hsort, h)
                        while t < H and hsort[t] == h:
                            hits[bi, t] = 1
                            if wit[bi, t] < 0:
                                wit[bi, t] = rank
                            t += 1
                        rank += 1
            else:
                b = bi
                w = np.empty(ns, np.int64)
                for j in range(ns):
                    w[j] = inv[add[1, mul[b, v[j]]]]
                du = np.empty(ns, np.int64)
                base = blk0 + b * per_b
                for d in range(N):
                    for j in range(ns):
                        du[j] = mul[d, v[j]]
                    for c in range(N):
                        bc = mul[b, c]
                        if d == bc:
                            continue
                        h = np.int64(0)
                        for j in range(ns):
                            h += zob[mul[add[c, du[j]], w[j]]]
                        t = np.searchsorted(hsort, h)
                        if t < H and hsort[t] == h:
                            jj = d - 1 if d > bc else d
                            rank = base + c * (N - 1) + jj
                            while t < H and hsort[t] == h:
                                hits[bi, t] = 1
                                if wit[bi, t] < 0:
                                    wit[bi, t] = rank
                                t += 1
        return hits, wit


# ---------------------------------------------------------------------------
# numpy fallbacks
# ---------------------------------------------------------------------------

def _np_dv(v, mul):
    N = mul.shape[0] - 1
    return mul[np.arange(N, dtype=np.int64)[:, None], v[None, :]]


def _np_first_witness(v, target, mul, add, inv):
    N = inv.shape[0]
    ns = v.shape[0]
    dv = _np_dv(v, mul)  # (N, ns): d*m for every d
    w0 = inv[v].astype(np.int64)
    for c in range(1, N):
        imgs = mul[add[c, dv].astype(np.int64), w0[None, :]]
        ok = target[imgs].all(axis=1)
        t = np.flatnonzero(ok)
        if t.size:
            return (c - 1) * N + int(t[0])
    base = (N - 1) * N
    per_b = N * (N - 1)
    for b in range(N):
        w = inv[add[1, mul[b, v]].astype(np.int64)].astype(np.int64)
        for c in range(N):
            imgs = mul[add[c, dv].astype(np.int64), w[None, :]]
            ok = target[imgs].all(axis=1)
            bc = int(mul[b, c])
            ok[bc] = False
            t = np.flatnonzero(ok)
            if t.size:
                d = int(t[0])
                jj = d - 1 if d > bc else d
                return base + b * per_b + c * (N - 1) + jj
    return -1


def _np_stabilizer(v, target, mul, add, inv):
    N = inv.shape[0]
    dv = _np_dv(v, mul)
    w0 = inv[v].astype(np.int64)
    ranks = []
    for c in range(1, N):
        imgs = mul[add[c, dv].astype(np.int64), w0[None, :]]
        ok = target[imgs].all(axis=1)
        for d in np.flatnonzero(ok):
            ranks.append((c - 1) * N + int(d))
    base = (N - 1) * N
    per_b = N * (N - 1)
    for b in range(N):
        w = inv[add[1, mul[b, v]].astype(np.int64)].astype(np.int64)
        for c in range(N):
            imgs = mul[add[c, dv].astype(np.int64), w[None, :]]
            ok = target[imgs].all(axis=1)
            bc = int(mul[b, c])
            ok[bc] = False
            for d in np.flatnonzero(ok):
                d = int(d)
                jj = d - 1 if d > bc else d
                ranks.append(base + b * per_b + c * (N - 1) + jj)
    return np.array(sorted(ranks), dtype=np.int64)


def _np_orbit_scan(v, mul, add, inv, zob, hsort):
    N = inv.shape[0]
    H = hsort.shape[0]
    hits = np.zeros(H, np.uint8)
    wit = np.full(H, -1, np.int64)
    dv = _np_dv(v, mul)

    def probe(hrow, ranks):
        idx = np.searchsorted(hsort, hrow)
        valid = idx < H
        eq = np.zeros(hrow.shape[0], bool)
        eq[valid] = hsort[idx[valid]] == hrow[valid]
        for i in np.flatnonzero(eq):
            t = int(idx[i])
            hh = hrow[i]
            while t < H and hsort[t] == hh:
                if not hits[t]:
                    hits[t] = 1
                    wit[t] = ranks[i]
                t += 1

    w0 = inv[v].astype(np.int64)
    for c in range(1, N):
        imgs = mul[add[c, dv].astype(np.int64), w0[None, :]]
        h = zob[imgs].sum(axis=1)
        probe(h, (c - 1) * N + np.arange(N, dtype=np.int64))
    base = (N - 1) * N
    per_b = N * (N - 1)
    d_all = np.arange(N, dtype=np.int64)
    for b in range(N):
        w = inv[add[1, mul[b, v]].astype(np.int64)].astype(np.int64)
        for c in range(N):
            imgs = mul[add[c, dv].astype(np.int64), w[None, :]]
            h = zob[imgs].sum(axis=1)
            bc = int(mul[b, c])
            jj = d_all - (d_all > bc)
            ranks = base + b * per_b + c * (N - 1) + jj
            keep = d_all != bc
            probe(h[keep], ranks[keep])
    return hits, wit


# ---------------------------------------------------------------------------
# dispatchers
# ---------------------------------------------------------------------------

def _prep(v):
    v = np.ascontiguousarray(np.asarray(v, dtype=np.int64))
    if v.size == 0:
        raise ValueError("empty value set")
    return v


def first_witness(v, target, tables) -> int:
    """Rank of the first matrix mapping value set v into the target indicator, or -1."""
    v = _prep(v)
    if _BACKEND == "numba":
        return int(_nb_first_witness(v, target, tables.mul, tables.add, tables.inv))
    return int(_np_first_witness(v, target, tables.mul, tables.add, tables.inv))


def stabilizer_ranks(v, target, tables) -> np.ndarray:
    """All matrix ranks mapping v into target (ascending)."""
    v = _prep(v)
    if _BACKEND == "numba":
        cap = 1 << 14
        while True:
            out = np.empty(cap, np.int64)
            cnt = _nb_stabilizer(v, target, tables.mul, tables.add, tables.inv, out)
            if cnt >= 0:
                return out[:cnt].copy()
            cap *= 4
    return _np_stabilizer(v, target, tables.mul, tables.add, tables.inv)


def orbit_scan(v, hashes_sorted, tables) -> tuple[np.ndarray, np.ndarray]:
    """Scan all matrices; for each sorted candidate hash return (hit, witness rank).

    A candidate is hit when some matrix image of v has that set hash.  Witness
    ranks identify one matching matrix per hit and are verified by the caller.
    """
    v = _prep(v)
    hashes_sorted = np.ascontiguousarray(np.asarray(hashes_sorted, dtype=np.int64))
    if _BACKEND == "numba":
        hits2d, wit2d = _nb_orbit_scan(v, tables.mul, tables.add, tables.inv,
                                       tables.zobrist, hashes_sorted)
        hits = hits2d.max(axis=0)
        wit = np.full(hashes_sorted.shape[0], -1, np.int64)
        for row in range(hits2d.shape[0]):
            fresh = (wit < 0) & (wit2d[row] >= 0)
            wit[fresh] = wit2d[row][fresh]
        return hits, wit
    return _np_orbit_scan(v, tables.mul, tables.add, tables.inv,
                          tables.zobrist, hashes_sorted)


def matrix_from_rank(tower, rank: int) -> tuple[int, int, int, int]:
    """Invert the rank enumeration back to the normalized matrix (a, b, c, d)."""
    N = tower.order
    blk0 = (N - 1) * N
    if rank < 0 or rank >= pgl_size(N):
        raise ValueError("rank out of range")
    if rank < blk0:
        return (0, 1, 1 + rank // N, rank % N)
    r2 = rank - blk0
    per_b = N * (N - 1)
    b, r3 = divmod(r2, per_b)
    c, jj = divmod(r3, N - 1)
    bc = tower.mul(b, c)
    d = jj + 1 if jj >= bc else jj
    return (1, b, c, d)
