"""Linear sets on the projective line PG(1, q^n) and the semilinear group action.

A projective point is stored as a normalized coordinate pair (x, y) with the
first nonzero coordinate equal to 1, so each point has exactly one
representative: either (1, m) or the infinity point (0, 1).  The linear set of
a q-polynomial f collects the points (1, f(x)/x) with multiplicities q^w - 1,
where w is the weight of the point.
"""

import math
from dataclasses import dataclass, field

from .gftower import FieldTower
from .linpoly import LinearizedPoly, value_counts

INFTY = None  # points are plain tuples; (0, 1) is the infinity point


def normalize_point(tower: FieldTower, x: int, y: int) -> tuple[int, int]:
    """Unique representative of <(x, y)>: first nonzero coordinate scaled to 1."""
    if x:
        return (1, tower.div(y, x))
    if y:
        return (0, 1)
    raise ValueError("(0, 0) is not a projective point")


@dataclass(frozen=True)
class LinearSet:
    """Point set with weights; invariants checked on construction."""

    tower: FieldTower
    points: tuple[tuple[int, int], ...]
    weights: tuple[int, ...]
    rank: int

    def __post_init__(self):
        tw = self.tower
        q = tw.q
        if list(self.points) != sorted(set(self.points)):
            raise ValueError("points must be sorted and duplicate-free")
        if len(self.points) != len(self.weights):
            raise ValueError("weights must parallel points")
        total = sum(q**w - 1 for w in self.weights)
        if total != q**self.rank - 1:
            raise ValueError("weights do not partition the nonzero vectors of U")
        if len(self.points) > (q**self.rank - 1) // (q - 1):
            raise ValueError("point count exceeds the rank bound")

    @property
    def weight_map(self) -> dict[tuple[int, int], int]:
        return dict(zip(self.points, self.weights))

    @property
    def size(self) -> int:
        return len(self.points)

    def is_scattered(self) -> bool:
        by_weight = all(w == 1 for w in self.weights)
        by_size = self.size == (self.tower.q**self.rank - 1) // (self.tower.q - 1)
        if by_weight != by_size:
            raise RuntimeError("weight and size characterizations disagree")
        return by_weight

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "size": self.size,
            "scattered": self.is_scattered(),
            "weights": [{"point": f"[{x}:{y}]", "w": w}
                        for (x, y), w in zip(self.points, self.weights)],
        }


def points_of(f: LinearizedPoly) -> LinearSet:
    """The linear set {<(x, f(x))> : x != 0}, with weights read off value counts."""
    tw = f.tower
    q, n = tw.q, tw.n
    counts = value_counts(f)
    points = []
    weights = []
    for b in range(tw.order):
        c = int(counts[b])
        if not c:
            continue
        w = round(math.log(c + 1, q))
        if q**w != c + 1:
            raise ValueError(f"value count {c} is not of the form q^w - 1")
        points.append((1, b))
        weights.append(w)
    return LinearSet(tw, tuple(points), tuple(weights), rank=n)


def is_scattered(f: LinearizedPoly) -> bool:
    return points_of(f).is_scattered()


@dataclass(frozen=True)
class SemilinearMap:
    """Element of PGammaL(2, q^n): normalized matrix (a, b; c, d) plus x -> x^(p^k).

    The stored matrix is the unique representative with its first nonzero entry
    (in the order a, b, c, d) equal to 1.  Acting on a point <(x, y)> gives
    <(a*x^tau + b*y^tau, c*x^tau + d*y^tau)>.
    """

    tower: FieldTower = field(repr=False)
    a: int
    b: int
    c: int
    d: int
    k: int

    def __post_init__(self):
        tw = self.tower
        det = tw.sub(tw.mul(self.a, self.d), tw.mul(self.b, self.c))
        if det == 0:
            raise ValueError("matrix must be invertible")
        first = next(v for v in (self.a, self.b, self.c, self.d) if v)
        if first != 1:
            raise ValueError("matrix is not normalized")
        if not 0 <= self.k < tw.m:
            raise ValueError("frobenius exponent out of range")

    @classmethod
    def of(cls, tower: FieldTower, a: int, b: int, c: int, d: int, k: int) -> "SemilinearMap":
        """Normalize an arbitrary invertible matrix to its class representative."""
        first = next((v for v in (a, b, c, d) if v), None)
        if first is None:
            raise ValueError("zero matrix")
        u = tower.inv(first)
        return cls(tower, tower.mul(u, a), tower.mul(u, b),
                   tower.mul(u, c), tower.mul(u, d), k % tower.m)

    @classmethod
    def identity(cls, tower: FieldTower) -> "SemilinearMap":
        return cls(tower, 1, 0, 0, 1, 0)

    def matrix(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def apply_point(self, pt: tuple[int, int]) -> tuple[int, int]:
        tw = self.tower
        xt, yt = tw.frob(pt[0], self.k), tw.frob(pt[1], self.k)
        x2 = tw.add(tw.mul(self.a, xt), tw.mul(self.b, yt))
        y2 = tw.add(tw.mul(self.c, xt), tw.mul(self.d, yt))
        return normalize_point(tw, x2, y2)

    def compose(self, other: "SemilinearMap") -> "SemilinearMap":
        """self after other: (M, tau) o (N, ups) = (M * N^tau, tau*ups)."""
        tw = self.tower
        if other.tower is not tw:
            raise ValueError("cross-tower composition")
        na, nb = tw.frob(other.a, self.k), tw.frob(other.b, self.k)
        nc, nd = tw.frob(other.c, self.k), tw.frob(other.d, self.k)
        return SemilinearMap.of(
            tw,
            tw.add(tw.mul(self.a, na), tw.mul(self.b, nc)),
            tw.add(tw.mul(self.a, nb), tw.mul(self.b, nd)),
            tw.add(tw.mul(self.c, na), tw.mul(self.d, nc)),
            tw.add(tw.mul(self.c, nb), tw.mul(self.d, nd)),
            self.k + other.k,
        )

    def to_json(self) -> dict:
        return {"matrix": [self.a, self.b, self.c, self.d], "frobenius": self.k}


def apply_map(L: LinearSet, phi: SemilinearMap) -> LinearSet:
    """Image linear set; each point keeps its weight under the semilinear action."""
    if phi.tower is not L.tower:
        raise ValueError("cross-tower application")
    imgs = [phi.apply_point(pt) for pt in L.points]
    if len(set(imgs)) != len(imgs):
        raise RuntimeError("projective action failed to stay injective")
    order = sorted(range(len(imgs)), key=lambda i: imgs[i])
    return LinearSet(L.tower, tuple(imgs[i] for i in order),
                     tuple(L.weights[i] for i in order), rank=L.rank)


@dataclass(frozen=True)
class CoeffIdentityReport:
    """The three coefficient identity families that equal linear sets must satisfy."""

    constant_term: bool
    paired_products: bool
    triple_products: bool

    def all_hold(self) -> bool:
        return self.constant_term and self.paired_products and self.triple_products


def check_coefficient_identities(f: LinearizedPoly, g: LinearizedPoly) -> CoeffIdentityReport:
    """Evaluate the identities a_0 = b_0, a_k a_{n-k}^(q^k) = b_k b_{n-k}^(q^k),
    and the degree-three family; all must hold whenever L_f = L_g."""
    tw = f.tower
    if g.tower is not tw:
        raise ValueError("cross-tower comparison")
    n, r = tw.n, tw.r
    a, b = f.coeffs, g.coeffs

    first = a[0] == b[0]

    paired = True
    for k in range(1, n):
        lhs = tw.mul(a[k], tw.frob(a[n - k], r * k))
        rhs = tw.mul(b[k], tw.frob(b[n - k], r * k))
        if lhs != rhs:
            paired = False
            break

    def triple(cs, k):
        t1 = tw.mul(cs[1], tw.mul(tw.frob(cs[k - 1], r), tw.frob(cs[n - k], r * k)))
        t2 = tw.mul(cs[k], tw.mul(tw.frob(cs[n - 1], r), tw.frob(cs[(n - k + 1) % n], r * k)))
        return tw.add(t1, t2)

    triples = all(triple(a, k) == triple(b, k) for k in range(2, n))
    return CoeffIdentityReport(first, paired, triples)
