"""Brute-force ground truth for small 0/1 instances.

Everything here is independent of the simplex engine: vertices come from a
2^n feasibility scan, adjacency from tight-constraint combinatorics, shadow
polygons from an exact 2D hull.  All arithmetic is integer or Fraction;
numpy is used only for vectorized integer work.

Adjacency is decided two equivalent ways:

* ``adjacent``      - the defining test: the constraints tight at both
                      endpoints (equalities, tight inequality rows, shared
                      zero coordinates, and the implied x <= 1 facets on
                      shared one coordinates) have rank n-1.
* neighbor queries  - the smallest-face test: u ~ w iff no third vertex
                      satisfies every constraint that is tight at both u
                      and w.  The smallest face containing two vertices is
                      spanned by the 0/1 points on it, so an edge holds
                      exactly two.  This variant vectorizes: for a fixed
                      vertex the per-candidate counts come out of one
                      superset-sum table over the vertex's tight set.

The tests assert both tests agree on every small instance in the suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import rank
from .model import Lp01Instance, Vertex01

ENUMERATION_LIMIT = 22

# Per-vertex neighbor queries switch from the direct O(N^2 q) scan to the
# superset-sum table once the vertex count makes the scan noticeable.
_DIRECT_QUERY_MAX_VERTICES = 96
_SOS_MAX_TIGHT_BITS = 22


class TooLargeError(ValueError):
    """Instance is beyond the 2^n enumeration reach of the oracle."""


def enumerate_vertices(inst: Lp01Instance) -> list[Vertex01]:
    """All 0/1 points satisfying Ax=b, Dx<=d, in lexicographic order.

    For a valid 0/1 polytope these are exactly the vertices: a 0/1 point of
    a 0/1 polytope cannot be a proper convex combination of other 0/1
    points.
    """
    n = inst.n
    if n > ENUMERATION_LIMIT:
        raise TooLargeError(f"n = {n} exceeds enumeration limit {ENUMERATION_LIMIT}")
    A = np.array(inst.A, dtype=np.int64).reshape(inst.m, n)
    b = np.array(inst.b, dtype=np.int64)
    D = np.array(inst.D, dtype=np.int64).reshape(inst.p, n)
    d = np.array(inst.d, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.uint64)  # MSB-first: lexicographic order
    out: list[Vertex01] = []
    total = 1 << n
    chunk = 1 << 16
    for start in range(0, total, chunk):
        ks = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        X = ((ks[:, None] >> shifts[None, :]) & 1).astype(np.int64)
        ok = np.ones(len(ks), dtype=bool)
        if inst.m:
            ok &= np.all(X @ A.T == b, axis=1)
        if inst.p:
            ok &= np.all(X @ D.T <= d, axis=1)
        out.extend(tuple(int(v) for v in row) for row in X[ok])
    return out


@dataclass(frozen=True)
class SkeletonGraph:
    """1-skeleton: vertex list plus symmetric adjacency by vertex index."""

    vertices: tuple[Vertex01, ...]
    adjacency: tuple[frozenset[int], ...]
    method: str = "smallest-face"

    def index(self, x) -> int:
        x = tuple(int(e) for e in x)
        try:
            return self.vertices.index(x)
        except ValueError:
            raise KeyError(f"{x} is not a vertex") from None

    def neighbors_of(self, x) -> list[Vertex01]:
        return [self.vertices[j] for j in sorted(self.adjacency[self.index(x)])]


def adjacent(inst: Lp01Instance, u, w) -> bool:
    """Rank test: constraints tight at both endpoints have rank n-1.

    The tight set is taken from the instance's description (equalities,
    tight rows of D, shared zeros against x >= 0) plus the implied facets
    x(i) <= 1 for coordinates at 1 in both endpoints, which are valid for
    any 0/1 feasible region.
    """
    u = tuple(int(e) for e in u)
    w = tuple(int(e) for e in w)
    if u == w:
        return False
    n = inst.n
    rows: list[tuple[int, ...]] = list(inst.A)
    for row, rhs in zip(inst.D, inst.d):
        if (
            sum(a * e for a, e in zip(row, u)) == rhs
            and sum(a * e for a, e in zip(row, w)) == rhs
        ):
            rows.append(row)
    for i in range(n):
        if u[i] == w[i] == 0 or u[i] == w[i] == 1:
            rows.append(tuple(int(i == j) for j in range(n)))
    return rank(rows) == n - 1 if rows else n == 1


class PolytopeOracle:
    """Cached per-instance enumeration, tight sets, and neighbor queries."""

    def __init__(self, inst: Lp01Instance):
        self.inst = inst
        self.vertices: list[Vertex01] = enumerate_vertices(inst)
        self._index = {v: i for i, v in enumerate(self.vertices)}
        self._V = np.array(self.vertices, dtype=np.int64).reshape(len(self.vertices), inst.n)
        # Tight-indicator over the instance's own inequality description:
        # p rows of D, then the n nonnegativity rows.
        D = np.array(inst.D, dtype=np.int64).reshape(inst.p, inst.n)
        d = np.array(inst.d, dtype=np.int64)
        tight_d = (self._V @ D.T == d) if inst.p else np.zeros((len(self.vertices), 0), dtype=bool)
        self._T = np.hstack([tight_d, self._V == 0])
        self._neighbor_cache: dict[int, frozenset[int]] = {}
        self._affine_dim: int | None = None

    # -- vertex bookkeeping -------------------------------------------------

    def __len__(self) -> int:
        return len(self.vertices)

    def index(self, x) -> int:
        x = tuple(int(e) for e in x)
        if x not in self._index:
            raise KeyError(f"{x} is not a vertex of {self.inst.name}")
        return self._index[x]

    # -- adjacency ----------------------------------------------------------

    def neighbor_indices(self, i: int) -> frozenset[int]:
        if i not in self._neighbor_cache:
            self._neighbor_cache[i] = self._query_neighbors(i)
        return self._neighbor_cache[i]

    def neighbors(self, x) -> list[Vertex01]:
        return [self.vertices[j] for j in sorted(self.neighbor_indices(self.index(x)))]

    def _query_neighbors(self, i: int) -> frozenset[int]:
        N = len(self.vertices)
        cols = np.flatnonzero(self._T[i])
        Tq = self._T[:, cols]
        q = len(cols)
        if N <= _DIRECT_QUERY_MAX_VERTICES or q > _SOS_MAX_TIGHT_BITS:
            # common(j) subset-of t(k) checked directly for all j, k
            common = Tq & Tq[i]  # (N, q); row j = tight set shared by i and j
            viol = common.astype(np.int64) @ (~Tq).astype(np.int64).T  # (N, N)
            counts = (viol == 0).sum(axis=1)
        else:
            masks = Tq.astype(np.int64) @ (np.int64(1) << np.arange(q, dtype=np.int64))
            table = np.zeros(1 << q, dtype=np.int32)
            np.add.at(table, masks, 1)
            idx = np.arange(1 << q)
            for bit in range(q):
                lower = idx[(idx & (1 << bit)) == 0]
                table[lower] += table[lower | (1 << bit)]
            counts = table[masks & masks[i]]
        out = frozenset(int(j) for j in np.flatnonzero(counts == 2) if j != i)
        return out

    def skeleton(self) -> SkeletonGraph:
        adj = tuple(self.neighbor_indices(i) for i in range(len(self.vertices)))
        return SkeletonGraph(tuple(self.vertices), adj)

    # -- objective geometry ---------------------------------------------------

    def improving_neighbor_indices(self, i: int, w) -> list[int]:
        w = [int(e) for e in w]
        base = sum(a * e for a, e in zip(w, self.vertices[i]))
        return [
            j
            for j in sorted(self.neighbor_indices(i))
            if sum(a * e for a, e in zip(w, self.vertices[j])) > base
        ]

    def max_objective(self, c) -> int:
        vals = self._V @ np.array([int(e) for e in c], dtype=np.int64)
        return int(vals.max())

    def argmax_objective(self, c) -> list[Vertex01]:
        vals = self._V @ np.array([int(e) for e in c], dtype=np.int64)
        best = vals.max()
        return [self.vertices[int(j)] for j in np.flatnonzero(vals == best)]

    def steepest_ratio(self, x, c) -> Fraction:
        """max over edge-directions g at x of c.g / ||g||_1, exactly.

        Computed as the max over all other vertices u of
        c.(u-x) / ||u-x||_1: every edge-direction at x of a 0/1 polytope is
        u - x for the adjacent vertex u, and the mediant inequality (all of
        C(x) lies in one orthant, so 1-norms add along conic combinations)
        shows no non-adjacent vertex can beat every edge-direction.
        """
        i = self.index(x)
        cvec = np.array([int(e) for e in c], dtype=np.int64)
        diffs = self._V - self._V[i]
        nums = diffs @ cvec
        dens = np.abs(diffs).sum(axis=1)
        best_n, best_d = None, None
        for j in range(len(self.vertices)):
            if j == i:
                continue
            nm, dn = int(nums[j]), int(dens[j])
            if best_n is None or nm * best_d > best_n * dn:
                best_n, best_d = nm, dn
        if best_n is None:
            raise ValueError("polytope has a single vertex; no edge-directions")
        return Fraction(best_n, best_d)

    def steepest_edge_directions(self, x, c) -> tuple[Fraction, list[Vertex01]]:
        """Argmax set of c.g/||g||_1 over true edge-directions (skeleton-based)."""
        i = self.index(x)
        c = [int(e) for e in c]
        best: Fraction | None = None
        dirs: list[Vertex01] = []
        for j in sorted(self.neighbor_indices(i)):
            g = tuple(a - b for a, b in zip(self.vertices[j], self.vertices[i]))
            r = Fraction(sum(a * e for a, e in zip(c, g)), sum(abs(e) for e in g))
            if best is None or r > best:
                best, dirs = r, [g]
            elif r == best:
                dirs.append(g)
        if best is None:
            raise ValueError("vertex has no neighbors")
        return best, dirs

    def affine_dimension(self) -> int:
        if self._affine_dim is None:
            self._affine_dim = self._compute_affine_dimension()
        return self._affine_dim

    def _compute_affine_dimension(self) -> int:
        # incremental fraction-free echelon over the difference vectors
        n = self.inst.n
        echelon: dict[int, list[int]] = {}  # leading column -> row
        r = 0
        base = self._V[0]
        for row in self._V[1:]:
            work = [int(e) for e in row - base]
            for col in range(n):
                if work[col] == 0:
                    continue
                if col not in echelon:
                    echelon[col] = work
                    r += 1
                    break
                piv = echelon[col]
                f, p = work[col], piv[col]
                work = [p * w - f * v for w, v in zip(work, piv)]
            if r == n:
                break
        return r


_oracle_cache: dict[tuple, PolytopeOracle] = {}


def oracle_for(inst: Lp01Instance) -> PolytopeOracle:
    """Memoized on the feasible region (A, b, D, d); objectives don't matter."""
    key = (inst.A, inst.b, inst.D, inst.d, inst.n)
    if key not in _oracle_cache:
        _oracle_cache[key] = PolytopeOracle(inst)
    return _oracle_cache[key]


def skeleton(inst: Lp01Instance) -> SkeletonGraph:
    return oracle_for(inst).skeleton()


def improving_neighbors(inst: Lp01Instance, x, w) -> list[Vertex01]:
    """Neighbors u of x with w.u > w.x."""
    orc = oracle_for(inst)
    return [orc.vertices[j] for j in orc.improving_neighbor_indices(orc.index(x), w)]


def steepest_edges(inst: Lp01Instance, x, c) -> tuple[Fraction, list[Vertex01]]:
    return oracle_for(inst).steepest_edge_directions(x, c)


def affine_dimension(inst: Lp01Instance) -> int:
    return oracle_for(inst).affine_dimension()


# -- shadow polygons --------------------------------------------------------


@dataclass(frozen=True)
class ShadowPolygon:
    """2D image of the vertex set under x -> (v.x, c.x), with its upper path."""

    points: tuple[tuple[int, int], ...]  # distinct projected vertices
    hull: tuple[tuple[int, int], ...]  # counterclockwise convex hull
    upper: tuple[tuple[int, int], ...]  # upper path, e1-increasing


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_ccw(pts: list[tuple[int, int]]) -> list[tuple[int, int]]:
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts
    lower: list[tuple[int, int]] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[int, int]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _upper_chain(pts: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Strict upper chain from (min x, max y there) to (max x, max y there)."""
    best_y: dict[int, int] = {}
    for x, y in pts:
        if x not in best_y or y > best_y[x]:
            best_y[x] = y
    tops = sorted(best_y.items())
    if len(tops) == 1:
        return [tops[0]]
    chain: list[tuple[int, int]] = []
    for p in tops:
        while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) >= 0:
            chain.pop()
        chain.append(p)
    return chain


def shadow_polygon(vertices, v, c) -> ShadowPolygon:
    """Project the vertex set along (v, c) and extract hull and upper path.

    The upper path runs from the c-best point of the v-minimal face to the
    c-best point of the v-maximal face; its vertices are the polygon
    vertices on or above the segment joining those two points.  Collinear
    projections are interior points of upper edges, not upper-path
    vertices.
    """
    v = [int(e) for e in v]
    c = [int(e) for e in c]
    pts = [
        (sum(a * e for a, e in zip(v, u)), sum(a * e for a, e in zip(c, u)))
        for u in vertices
    ]
    distinct = tuple(sorted(set(pts)))
    return ShadowPolygon(points=distinct, hull=tuple(_hull_ccw(pts)), upper=tuple(_upper_chain(pts)))


def upper_path(inst: Lp01Instance, v, c) -> ShadowPolygon:
    return shadow_polygon(oracle_for(inst).vertices, v, c)


def _on_segment(p, a, b) -> bool:
    if _cross(a, p, b) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def is_coherent(path, v, c, vertices, *, poly: ShadowPolygon | None = None) -> bool:
    """Does the path project onto the upper path, covering it up to the c-max?

    Checks: the path is strictly v-monotone; every projected path vertex is
    an upper-path vertex or an interior point of an upper edge; and every
    upper-path vertex up to (and including) the first e2-maximum is the
    image of some path vertex.  Pass a precomputed polygon to reuse the
    projection work.
    """
    if not path:
        return False
    v = [int(e) for e in v]
    c = [int(e) for e in c]
    if poly is None:
        poly = shadow_polygon(vertices, v, c)
    chain = poly.upper
    proj = [
        (sum(a * e for a, e in zip(v, u)), sum(a * e for a, e in zip(c, u)))
        for u in path
    ]
    for p, q in zip(proj, proj[1:]):
        if not p[0] < q[0]:
            return False
    chain_set = set(chain)
    for p in proj:
        if p in chain_set:
            continue
        if not any(_on_segment(p, a, b) for a, b in zip(chain, chain[1:])):
            return False
    top = max(y for _, y in chain)
    first_max = next(k for k, (_, y) in enumerate(chain) if y == top)
    hit = set(proj)
    return all(u in hit for u in chain[: first_max + 1])


# -- combinatorial path constructions ----------------------------------------


def ordered_aux_vector(inst: Lp01Instance, x0, c, sigma=None) -> tuple[int, ...]:
    """Ordered-shadow auxiliary: v(k) = (-1)^{x0(k)} (||c||_1 + 2)^{sigma(k)}."""
    n = inst.n
    sigma = tuple(sigma) if sigma is not None else tuple(range(1, n + 1))
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError("sigma must be a permutation of 1..n")
    c_star = sum(abs(int(e)) for e in c) + 2
    return tuple((-1) ** int(x0[k]) * c_star ** sigma[k] for k in range(n))


def altchar_path(inst: Lp01Instance, x0, c, sigma=None) -> list[Vertex01]:
    """The f-minimal improving path: the ordered shadow rule's combinatorics.

    f(u) = max sigma-position where u differs from x0 (0 if none).  From the
    current vertex, restrict to c-improving neighbors with minimal f, then
    step to the one with maximal c.  Exact c-ties are resolved by minimal
    v-increase under the ordered-shadow auxiliary (the pivot rule's own
    deterministic resolution; see module tests), then by vertex order.
    """
    orc = oracle_for(inst)
    n = inst.n
    sigma = tuple(sigma) if sigma is not None else tuple(range(1, n + 1))
    x0 = tuple(int(e) for e in x0)
    aux = ordered_aux_vector(inst, x0, c, sigma)
    c = [int(e) for e in c]

    def f_value(u: Vertex01) -> int:
        return max((sigma[k] for k in range(n) if u[k] != x0[k]), default=0)

    path = [x0]
    current = orc.index(x0)
    while True:
        improving = orc.improving_neighbor_indices(current, c)
        if not improving:
            return path
        fmin = min(f_value(orc.vertices[j]) for j in improving)
        pool = [j for j in improving if f_value(orc.vertices[j]) == fmin]
        cur = orc.vertices[current]

        def key(j: int):
            u = orc.vertices[j]
            gain = sum(a * (e - w) for a, e, w in zip(c, u, cur))
            vstep = sum(a * (e - w) for a, e, w in zip(aux, u, cur))
            return (-gain, vstep, j)

        current = min(pool, key=key)
        path.append(orc.vertices[current])


def greedy_matroid_path(inst: Lp01Instance, c) -> list[Vertex01]:
    """Greedy independent-set path on a uniform-matroid instance.

    S_0 = {} and S_{i+1} = S_i plus the heaviest remaining element of
    positive weight while |S| < r; ties by lowest element index.  Vertices
    are the indicator vectors of the S_i.
    """
    if not inst.D or any(e != 1 for e in inst.D[0]) or inst.A:
        raise ValueError("greedy_matroid_path expects a uniform_matroid instance")
    r = inst.d[0]
    n = inst.n
    c = [int(e) for e in c]
    order = sorted(range(n), key=lambda j: (-c[j], j))
    support: list[int] = []
    path: list[Vertex01] = [(0,) * n]
    for j in order:
        if len(support) == r or c[j] <= 0:
            break
        support.append(j)
        path.append(tuple(int(k in support) for k in range(n)))
    return path
