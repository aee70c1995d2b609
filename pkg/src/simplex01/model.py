"""0/1 linear programs and their slack-augmented standard form.

An instance is  max { c^T x : A x = b, D x <= d, x >= 0 }  with integer data,
where the feasible region is expected to be a 0/1 polytope.  Nonnegativity is
implicit: it is never stored as rows of D.  ``standardize`` appends one slack
column per inequality row, giving  max { c'^T x : A' x = b', x >= 0 }  with

    A' = [ A 0 ]     b' = [ b ]     c' = [ c ]
         [ D I ]          [ d ]          [ 0 ]

Original variables keep their indices; column n + i is the slack of
inequality row i.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from math import comb

from .exact import rank

Vertex01 = tuple[int, ...]

IntMatrix = tuple[tuple[int, ...], ...]
IntVector = tuple[int, ...]


def _int_matrix(rows, width_hint: int | None = None) -> IntMatrix:
    out = tuple(tuple(int(e) for e in row) for row in rows)
    width = len(out[0]) if out else width_hint
    if out and any(len(r) != width for r in out):
        raise ValueError("ragged matrix")
    return out


@dataclass(frozen=True)
class Lp01Instance:
    """Integer data of a 0/1-LP, plus an optional designated start vertex."""

    name: str
    A: IntMatrix  # m x n equality rows
    b: IntVector
    D: IntMatrix  # p x n inequality rows (excluding x >= 0)
    d: IntVector
    c: IntVector  # maximized
    start_vertex: Vertex01 | None = None

    def __post_init__(self):
        object.__setattr__(self, "A", _int_matrix(self.A, len(self.c)))
        object.__setattr__(self, "D", _int_matrix(self.D, len(self.c)))
        object.__setattr__(self, "b", tuple(int(e) for e in self.b))
        object.__setattr__(self, "d", tuple(int(e) for e in self.d))
        object.__setattr__(self, "c", tuple(int(e) for e in self.c))
        if self.start_vertex is not None:
            object.__setattr__(self, "start_vertex", tuple(int(e) for e in self.start_vertex))
        if len(self.A) != len(self.b):
            raise ValueError("A and b row counts differ")
        if len(self.D) != len(self.d):
            raise ValueError("D and d row counts differ")
        for M in (self.A, self.D):
            if M and len(M[0]) != self.n:
                raise ValueError("matrix width does not match len(c)")
        if self.start_vertex is not None and len(self.start_vertex) != self.n:
            raise ValueError("start_vertex length does not match len(c)")

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def p(self) -> int:
        return len(self.D)

    def with_objective(self, c) -> "Lp01Instance":
        return replace(self, c=tuple(int(e) for e in c))

    def is_feasible_point(self, x) -> bool:
        """Exact feasibility of a rational point: Ax=b, Dx<=d, x>=0."""
        x = tuple(Fraction(e) for e in x)
        if len(x) != self.n or any(e < 0 for e in x):
            return False
        for row, rhs in zip(self.A, self.b):
            if sum(a * e for a, e in zip(row, x)) != rhs:
                return False
        for row, rhs in zip(self.D, self.d):
            if sum(a * e for a, e in zip(row, x)) > rhs:
                return False
        return True


@dataclass(frozen=True)
class StandardFormLp:
    """Slack-augmented equality form of an Lp01Instance."""

    Aprime: IntMatrix  # m' x n'
    bprime: IntVector
    cprime: IntVector
    n_original: int
    slack_of_row: dict[int, int] = field(compare=False)  # D row index -> slack column
    kept_eq_rows: tuple[int, ...] = ()  # rows of A surviving rank reduction

    @property
    def m_prime(self) -> int:
        return len(self.Aprime)

    @property
    def n_prime(self) -> int:
        return len(self.cprime)

    def is_slack(self, j: int) -> bool:
        return j >= self.n_original

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.Aprime)


def independent_equality_rows(inst: Lp01Instance) -> tuple[int, ...]:
    """Lex-first maximal independent subset of the rows of A."""
    kept: list[int] = []
    for i in range(inst.m):
        rows = [inst.A[k] for k in kept] + [inst.A[i]]
        if rank(rows) == len(rows):
            kept.append(i)
    return tuple(kept)


def standardize(inst: Lp01Instance) -> StandardFormLp:
    """Equality form with one slack per inequality row.

    Redundant equality rows are dropped first (lex-first independent subset)
    so that A' has full row rank, which the engine's basis algebra assumes.
    """
    kept = independent_equality_rows(inst)
    n, p = inst.n, inst.p
    rows = []
    for i in kept:
        rows.append(inst.A[i] + (0,) * p)
    for i in range(p):
        slack = tuple(int(i == j) for j in range(p))
        rows.append(inst.D[i] + slack)
    bprime = tuple(inst.b[i] for i in kept) + inst.d
    cprime = inst.c + (0,) * p
    slack_of_row = {i: n + i for i in range(p)}
    return StandardFormLp(
        Aprime=tuple(rows),
        bprime=bprime,
        cprime=cprime,
        n_original=n,
        slack_of_row=slack_of_row,
        kept_eq_rows=kept,
    )


def project_solution(std: StandardFormLp, x_prime) -> tuple[Fraction, ...]:
    """First n coordinates: the point of P associated with a standard-form point."""
    if len(x_prime) != std.n_prime:
        raise ValueError("length does not match n'")
    return tuple(Fraction(e) for e in x_prime[: std.n_original])


def lift_auxiliary(std: StandardFormLp, v) -> tuple[Fraction, ...]:
    """Pad an original-space vector with zeros on the slack coordinates."""
    if len(v) != std.n_original:
        raise ValueError("length does not match n")
    return tuple(Fraction(e) for e in v) + (Fraction(0),) * (std.n_prime - std.n_original)


def lift_vertex(inst: Lp01Instance, x) -> tuple[Fraction, ...]:
    """Feasible point of the standard form over a feasible point of P: (x, d - Dx)."""
    x = tuple(Fraction(e) for e in x)
    slacks = tuple(rhs - sum(a * e for a, e in zip(row, x)) for row, rhs in zip(inst.D, inst.d))
    return x + slacks


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    skipped: bool = False


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed or c.skipped for c in self.checks)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _tight_rank_at_point(inst: Lp01Instance, x: Vertex01) -> int:
    """Rank of the constraints of the instance's own description tight at x."""
    rows: list[tuple[int, ...]] = list(inst.A)
    for row, rhs in zip(inst.D, inst.d):
        if sum(a * e for a, e in zip(row, x)) == rhs:
            rows.append(row)
    for i, e in enumerate(x):
        if e == 0:
            rows.append(tuple(int(i == j) for j in range(inst.n)))
    return rank(rows) if rows else 0

# Basis-enumeration ceiling for the fractional-vertex scan in validate().
BASIS_ENUMERATION_CAP = 200_000


def validate(inst: Lp01Instance, *, enumeration_limit: int = 20) -> ValidationReport:
    """Standing-assumption checks; failures are reported, never raised.

    Checks: full row rank of A; start vertex feasibility/0-1-ness; and, when
    n <= enumeration_limit, that every feasible 0/1 point is a vertex of the
    feasible region and that no fractional vertex exists.  The fractional
    scan enumerates bases of the standard form and is skipped (and flagged)
    above BASIS_ENUMERATION_CAP.
    """
    checks: list[CheckResult] = []

    r = rank(inst.A) if inst.A else 0
    checks.append(
        CheckResult(
            "equality-rank",
            r == inst.m,
            f"rank(A) = {r} of {inst.m} rows" + ("" if r == inst.m else "; redundant rows will be dropped"),
        )
    )

    if inst.start_vertex is None:
        checks.append(CheckResult("start-vertex", True, "absent", skipped=True))
    else:
        sv = inst.start_vertex
        ok = all(e in (0, 1) for e in sv) and inst.is_feasible_point(sv)
        checks.append(CheckResult("start-vertex", ok, f"{sv} feasible 0/1" if ok else f"{sv} infeasible or not 0/1"))

    if inst.n > enumeration_limit:
        checks.append(CheckResult("zero-one-points-are-vertices", True, "n too large", skipped=True))
        checks.append(CheckResult("no-fractional-vertex", True, "n too large", skipped=True))
        return ValidationReport(tuple(checks))

    from .oracle import enumerate_vertices  # local import: oracle depends on model

    points = enumerate_vertices(inst)
    bad = [x for x in points if _tight_rank_at_point(inst, x) < inst.n]
    checks.append(
        CheckResult(
            "zero-one-points-are-vertices",
            not bad,
            f"{len(points)} feasible 0/1 points" if not bad else f"non-vertex 0/1 points: {bad[:3]}",
        )
    )

    std = standardize(inst)
    n_p, m_p = std.n_prime, std.m_prime
    if comb(n_p, m_p) > BASIS_ENUMERATION_CAP:
        checks.append(
            CheckResult("no-fractional-vertex", True, f"C({n_p},{m_p}) bases exceed cap", skipped=True)
        )
    else:
        fractional = _find_fractional_vertex(std)
        checks.append(
            CheckResult(
                "no-fractional-vertex",
                fractional is None,
                "all basic feasible solutions project to 0/1 points"
                if fractional is None
                else f"fractional vertex {fractional}",
            )
        )
    return ValidationReport(tuple(checks))


def _find_fractional_vertex(std: StandardFormLp) -> tuple[Fraction, ...] | None:
    """Scan every feasible basis; return a non-0/1 projected BFS if one exists."""
    from .exact import SingularMatrixError, solve_square

    bvec = tuple(Fraction(e) for e in std.bprime)
    for cols in combinations(range(std.n_prime), std.m_prime):
        M = tuple(tuple(Fraction(row[j]) for j in cols) for row in std.Aprime)
        try:
            xb = solve_square(M, bvec)
        except SingularMatrixError:
            continue
        if any(e < 0 for e in xb):
            continue
        x = dict(zip(cols, xb))
        proj = tuple(x.get(j, Fraction(0)) for j in range(std.n_original))
        if any(e not in (0, 1) for e in proj):
            return proj
    return None
