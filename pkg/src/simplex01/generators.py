"""Deterministic generators for the named 0/1 polytopes.

Every generator emits an Lp01Instance with integer data, a canonical start
vertex, and (where one is natural) a default objective.  Identical parameters
yield bit-identical instances.
"""

from __future__ import annotations

import random
from itertools import combinations

from .model import Lp01Instance, Vertex01


def _identity_rows(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def cube(n: int, c=None) -> Lp01Instance:
    """The 0/1 cube [0,1]^n.  x <= 1 is stated explicitly in D.

    Explicit upper-bound rows give the oracle's rank-based adjacency test its
    facets; nonnegativity stays implicit as everywhere else.
    """
    if not 1 <= n <= 22:
        raise ValueError("cube: need 1 <= n <= 22")
    return Lp01Instance(
        name=f"cube({n})",
        A=(),
        b=(),
        D=_identity_rows(n),
        d=(1,) * n,
        c=tuple(c) if c is not None else (1,) * n,
        start_vertex=(0,) * n,
    )


def pyramid() -> Lp01Instance:
    """The 0/1 pyramid over a square: conv{000, 010, 100, 110, 001}.

    Minimal description x1+x3 <= 1, x2+x3 <= 1, x >= 0.  The default
    objective (50, -1, 0) is maximized at (1,0,0); the designated start
    vertex is the apex (0,0,1), where the steepest-edge baselines go wrong.
    """
    return Lp01Instance(
        name="pyramid",
        A=(),
        b=(),
        D=((1, 0, 1), (0, 1, 1)),
        d=(1, 1),
        c=(50, -1, 0),
        start_vertex=(0, 0, 1),
    )


def hypersimplex(n: int, k: int, c=None) -> Lp01Instance:
    """The hypersimplex: 0/1 points with coordinate sum k."""
    if not (1 <= k < n <= 20):
        raise ValueError("hypersimplex: need 1 <= k < n <= 20")
    return Lp01Instance(
        name=f"hypersimplex({n},{k})",
        A=((1,) * n,),
        b=(k,),
        D=_identity_rows(n),
        d=(1,) * n,
        c=tuple(c) if c is not None else (1,) * n,
        start_vertex=(1,) * k + (0,) * (n - k),
    )


def birkhoff(n: int, c=None) -> Lp01Instance:
    """Doubly stochastic matrices: n^2 variables x[i,j] in row-major order.

    Row-sum and column-sum equalities, with the last row-sum dropped (the
    unique dependency involves all 2n rows, so any 2n-1 of them are
    independent).  Start vertex: the identity permutation.
    """
    if not 2 <= n <= 4:
        raise ValueError("birkhoff: need 2 <= n <= 4")
    nn = n * n

    def var(i: int, j: int) -> int:
        return i * n + j

    rows = []
    rhs = []
    for i in range(n - 1):  # row sums, last one dropped
        row = [0] * nn
        for j in range(n):
            row[var(i, j)] = 1
        rows.append(tuple(row))
        rhs.append(1)
    for j in range(n):  # column sums
        row = [0] * nn
        for i in range(n):
            row[var(i, j)] = 1
        rows.append(tuple(row))
        rhs.append(1)
    start = [0] * nn
    for i in range(n):
        start[var(i, i)] = 1
    return Lp01Instance(
        name=f"birkhoff({n})",
        A=tuple(rows),
        b=tuple(rhs),
        D=(),
        d=(),
        c=tuple(c) if c is not None else (1,) * nn,
        start_vertex=tuple(start),
    )


def _k_edges(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def perfect_matching(n: int, c=None) -> Lp01Instance:
    """Perfect matchings of the complete graph K_n (n even, n <= 6).

    Degree equalities x(delta(v)) = 1, plus for n >= 6 the Edmonds odd-set
    cuts x(delta(S)) >= 1 for odd 3 <= |S| <= n-3, written as <= rows by
    negation.  Each unordered cut appears once (S canonical: contains
    vertex 0).  Start vertex: the matching {01, 23, ...}.
    """
    if n % 2 or n > 6 or n < 2:
        raise ValueError("perfect_matching: need n even, 2 <= n <= 6")
    edges = _k_edges(n)
    ne = len(edges)
    eq_rows = []
    for v in range(n):
        eq_rows.append(tuple(int(v in e) for e in edges))
    d_rows: list[tuple[int, ...]] = []
    d_rhs: list[int] = []
    for size in range(3, n - 2, 2):
        for S in combinations(range(n), size):
            if 0 not in S:
                continue  # delta(S) = delta(complement)
            in_s = set(S)
            cut = tuple(-int((e[0] in in_s) != (e[1] in in_s)) for e in edges)
            d_rows.append(cut)
            d_rhs.append(-1)
    start = [0] * ne
    for v in range(0, n, 2):
        start[edges.index((v, v + 1))] = 1
    return Lp01Instance(
        name=f"matching({n})",
        A=tuple(eq_rows),
        b=(1,) * n,
        D=tuple(d_rows),
        d=tuple(d_rhs),
        c=tuple(c) if c is not None else (1,) * ne,
        start_vertex=tuple(start),
    )


def matching_edges(n: int) -> list[tuple[int, int]]:
    """Variable order of perfect_matching(n): edges of K_n lexicographically."""
    return _k_edges(n)


def uniform_matroid(n: int, r: int, c=None) -> Lp01Instance:
    """Independent sets of the uniform matroid U(n,r): sum x <= r, x <= 1."""
    if not (1 <= r <= n <= 20):
        raise ValueError("uniform_matroid: need 1 <= r <= n <= 20")
    return Lp01Instance(
        name=f"U({n},{r})",
        A=(),
        b=(),
        D=((1,) * n,) + _identity_rows(n),
        d=(r,) + (1,) * n,
        c=tuple(c) if c is not None else (1,) * n,
        start_vertex=(0,) * n,
    )


def random_objective(n: int, seed, *, bound: int = 100, positive: bool = False) -> tuple[int, ...]:
    """Seeded integer objective in [-bound, bound] (or [1, bound] if positive)."""
    rng = random.Random(seed)
    lo = 1 if positive else -bound
    return tuple(rng.randint(lo, bound) for _ in range(n))


def generic_perturbation(c, seed, *, scale: int = 1000) -> tuple[int, ...]:
    """Integral genericity perturbation: scale*c + uniform{-(scale//2 - 1) .. scale//2 - 1}."""
    rng = random.Random(seed)
    half = scale // 2 - 1
    return tuple(scale * ci + rng.randint(-half, half) for ci in c)


FAMILIES = {
    "cube": cube,
    "pyramid": pyramid,
    "hypersimplex": hypersimplex,
    "birkhoff": birkhoff,
    "matching": perfect_matching,
    "uniform-matroid": uniform_matroid,
}


def generate(family: str, params: tuple[int, ...] = (), c=None) -> Lp01Instance:
    """Build an instance by family name; params are the family's naturals."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; known: {sorted(FAMILIES)}")
    fn = FAMILIES[family]
    if family == "pyramid":
        inst = fn()
        return inst.with_objective(c) if c is not None else inst
    return fn(*params, c=c)
