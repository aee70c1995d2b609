"""Revised simplex over exact rationals.

The engine works on the slack-augmented standard form.  A basis is an
ordered tuple of m' column indices; position i of the basis owns row i of
the ratio test.  Per pivot the basis inverse is recomputed exactly (no
incremental updates: correctness first at desk scale).

Conventions:

* pivot direction of a nonbasic j:  z(j) = 1, z(B) = -A'_B^{-1} A'_j,
  zero elsewhere, so A'z = 0 and the reduced cost of j equals c'^T z;
* ratio test over u = A'_B^{-1} A'_j per Eq.-style r* = min x'(B(i))/u(i)
  over u(i) > 0; a pivot is degenerate exactly when r* = 0 as a rational;
* leaving ties are broken lexicographically on the rows of
  (1/u(i)) [x'(B) | A'_B^{-1} A'_ref], with the reference columns fixed to
  the phase's starting basis, which makes every row lexicographically
  positive from the first iteration on and rules out cycling from any
  feasible start.

Entering-column choice is delegated entirely to a pivot rule object; the
engine only ever asks it for a column.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import RatMatrix, RatVector, SingularMatrixError, invert, lex_compare, rank
from .model import StandardFormLp, Vertex01

Basis = tuple[int, ...]

DEFAULT_PIVOT_CAP = 10**6


class UnboundedDirectionError(RuntimeError):
    """u <= 0 in a ratio test; impossible on a valid bounded 0/1 instance."""


class CycleSuspectedError(RuntimeError):
    """Pivot count exceeded the cap; indicates an engine defect, not an instance."""


class InfeasibleVertexError(ValueError):
    """Requested start vertex violates the instance constraints."""


def as_vertex01(coords) -> Vertex01:
    out = []
    for e in coords:
        f = Fraction(e)
        if f.denominator != 1 or f.numerator not in (0, 1):
            raise ValueError(f"point is not 0/1: {tuple(coords)}")
        out.append(int(f))
    return tuple(out)


@dataclass(frozen=True)
class PivotStep:
    entering: int
    leaving: int
    ratio: Fraction
    degenerate: bool
    objective_after: Fraction
    vertex_after: Vertex01


@dataclass(frozen=True)
class PivotTrace:
    steps: tuple[PivotStep, ...]
    optimal: Vertex01
    optimal_value: Fraction

    @property
    def counts(self) -> tuple[int, int]:
        """(nondegenerate, degenerate) pivot counts."""
        deg = sum(1 for s in self.steps if s.degenerate)
        return (len(self.steps) - deg, deg)

    @property
    def vertex_path(self) -> tuple[Vertex01, ...]:
        """Distinct vertices visited, in order (changes exactly at nondegenerate steps)."""
        path: list[Vertex01] = []
        for s in self.steps:
            if not path or s.vertex_after != path[-1]:
                path.append(s.vertex_after)
        return tuple(path)


class Factorization:
    """Exact per-basis algebra: inverse, BFS, reduced costs, pivot columns."""

    def __init__(self, std: StandardFormLp, basis: Basis, columns: list[tuple[int, ...]]):
        self.std = std
        self.basis = basis
        self.columns = columns
        m = std.m_prime
        if len(basis) != m:
            raise ValueError(f"basis size {len(basis)} != m' = {m}")
        A_B: RatMatrix = tuple(
            tuple(Fraction(columns[j][i]) for j in basis) for i in range(m)
        )
        self.inv: RatMatrix = invert(A_B)  # raises SingularMatrixError on bad basis
        b = std.bprime
        self.x_B: RatVector = tuple(
            sum((self.inv[i][k] * b[k] for k in range(m)), Fraction(0)) for i in range(m)
        )
        self.nonbasic = tuple(j for j in range(std.n_prime) if j not in set(basis))
        self._reduced: dict[int, Fraction] | None = None

    def row_weighted(self, weights) -> RatVector:
        """w = weights_B^T A'_B^{-1} for a full-length weight vector."""
        m = self.std.m_prime
        wb = [Fraction(weights[j]) for j in self.basis]
        return tuple(
            sum((wb[i] * self.inv[i][k] for i in range(m)), Fraction(0)) for k in range(m)
        )

    def products(self, weights, row: RatVector | None = None) -> dict[int, Fraction]:
        """weights^T z^j for every nonbasic j (reduced costs when weights = c')."""
        if row is None:
            row = self.row_weighted(weights)
        out: dict[int, Fraction] = {}
        for j in self.nonbasic:
            col = self.columns[j]
            out[j] = Fraction(weights[j]) - sum(
                (row[k] * col[k] for k in range(len(row)) if col[k]), Fraction(0)
            )
        return out

    @property
    def reduced_costs(self) -> dict[int, Fraction]:
        if self._reduced is None:
            self._reduced = self.products(self.std.cprime)
        return self._reduced

    def direction_u(self, j: int) -> RatVector:
        """u = A'_B^{-1} A'_j; the basic part of the pivot direction is -u."""
        col = self.columns[j]
        m = self.std.m_prime
        return tuple(
            sum((self.inv[i][k] * col[k] for k in range(m) if col[k]), Fraction(0))
            for i in range(m)
        )

    def bfs_full(self) -> RatVector:
        x = [Fraction(0)] * self.std.n_prime
        for pos, j in enumerate(self.basis):
            x[j] = self.x_B[pos]
        return tuple(x)

    def vertex(self) -> Vertex01:
        return as_vertex01(self.bfs_full()[: self.std.n_original])

    def objective(self) -> Fraction:
        c = self.std.cprime
        return sum((Fraction(c[j]) * self.x_B[pos] for pos, j in enumerate(self.basis)), Fraction(0))

    def direction_full(self, j: int) -> RatVector:
        z = [Fraction(0)] * self.std.n_prime
        z[j] = Fraction(1)
        u = self.direction_u(j)
        for pos, jj in enumerate(self.basis):
            z[jj] = -u[pos]
        return tuple(z)


def _columns(std: StandardFormLp) -> list[tuple[int, ...]]:
    return [std.column(j) for j in range(std.n_prime)]


def factorize(std: StandardFormLp, basis: Basis) -> Factorization:
    return Factorization(std, tuple(basis), _columns(std))


def bfs(std: StandardFormLp, basis: Basis) -> RatVector:
    """Basic solution of an (independent-column) basis; feasibility not assumed."""
    return factorize(std, basis).bfs_full()


def reduced_costs(std: StandardFormLp, basis: Basis) -> dict[int, Fraction]:
    return factorize(std, basis).reduced_costs


def direction(std: StandardFormLp, basis: Basis, j: int) -> RatVector:
    """Full pivot direction z^j: z(j)=1, z(B) = -A'_B^{-1}A'_j; satisfies A'z = 0."""
    f = factorize(std, basis)
    if j in f.basis:
        raise ValueError(f"column {j} is basic")
    z = [Fraction(0)] * std.n_prime
    z[j] = Fraction(1)
    u = f.direction_u(j)
    for pos, jj in enumerate(f.basis):
        z[jj] = -u[pos]
    return tuple(z)


def ratio_test(x_B, u) -> tuple[Fraction, tuple[int, ...]]:
    """r* = min over u(i) > 0 of x_B(i)/u(i), plus all argmin row positions."""
    best: Fraction | None = None
    tied: list[int] = []
    for i, ui in enumerate(u):
        if ui > 0:
            r = Fraction(x_B[i]) / ui
            if best is None or r < best:
                best, tied = r, [i]
            elif r == best:
                tied.append(i)
    if best is None:
        raise UnboundedDirectionError("no positive entry in u; direction is unbounded")
    return best, tuple(tied)


def ratio_test_for(std: StandardFormLp, basis: Basis, u) -> tuple[Fraction, tuple[int, ...]]:
    return ratio_test(factorize(std, basis).x_B, tuple(Fraction(e) for e in u))


def lexicographic_leaving(
    factor: Factorization, u, tied_rows, ref_basis: Basis | None = None
) -> int:
    """Row whose scaled row of [x'(B) | A'_B^{-1} A'_ref] is lex-smallest.

    With ref_basis = the phase's starting basis the compared rows start out
    as [x_B | I], i.e. lexicographically positive, which is the precondition
    of the classical no-cycling argument.  ref_basis=None compares plain
    A'_B^{-1} rows (identical whenever A'_ref is the identity).  The winner
    is unique: distinct rows of an invertible matrix cannot be proportional.
    """
    if len(tied_rows) == 1:
        return tied_rows[0]
    m = factor.std.m_prime
    if ref_basis is None:
        ref_cols = None
    else:
        ref_cols = [factor.columns[j] for j in ref_basis]

    def scaled_row(i: int) -> list[Fraction]:
        inv_row = factor.inv[i]
        if ref_cols is None:
            tail = list(inv_row)
        else:
            tail = [
                sum((inv_row[k] * col[k] for k in range(m) if col[k]), Fraction(0))
                for col in ref_cols
            ]
        scale = 1 / Fraction(u[i])
        return [factor.x_B[i] * scale] + [e * scale for e in tail]

    best = tied_rows[0]
    best_row = scaled_row(best)
    for i in tied_rows[1:]:
        row = scaled_row(i)
        if lex_compare(row, best_row) < 0:
            best, best_row = i, row
    return best


def lexicographic_leaving_for(
    std: StandardFormLp, basis: Basis, entering: int, tied_rows, ref_basis: Basis | None = None
) -> int:
    f = factorize(std, basis)
    return lexicographic_leaving(f, f.direction_u(entering), tuple(tied_rows), ref_basis)


def basis_from_vertex(std: StandardFormLp, vertex) -> Basis:
    """A feasible basis whose basic solution lifts the given 0/1 vertex.

    Take every column with a positive lifted coordinate (those are forced),
    then complete to rank m' with independent zero columns: slack columns
    first (ascending), then original columns (ascending).  Completing with
    a slack only relaxes one inequality row in the basic-cone description;
    putting an original variable at zero into the basis drops its
    nonnegativity from that description and can push the basic cone out of
    the orthant containing the feasible cone, which degrades the
    steepest-edge rule's start (it may then make a non-steepest first move
    that no degenerate escape can prevent).
    """
    n, m = std.n_original, std.m_prime
    lifted = _lift_in_std(std, vertex)
    if any(e < 0 for e in lifted):
        raise InfeasibleVertexError(f"{tuple(vertex)} violates an inequality")
    support = [j for j in range(std.n_prime) if lifted[j] > 0]
    chosen = list(support)
    cols = _columns(std)
    if rank([[cols[j][i] for j in chosen] for i in range(m)] if chosen else []) < len(chosen):
        raise InfeasibleVertexError(f"{tuple(vertex)} is not a vertex (dependent support)")
    r = len(chosen)
    zero_slacks = [j for j in range(n, std.n_prime) if lifted[j] == 0]
    zero_originals = [j for j in range(n) if lifted[j] == 0]
    for j in zero_slacks + zero_originals:
        if r == m:
            break
        trial = chosen + [j]
        if rank([[cols[k][i] for k in trial] for i in range(m)]) > r:
            chosen = trial
            r += 1
    if r < m:
        raise InfeasibleVertexError("could not complete basis; A' is rank-deficient")
    return tuple(chosen)


def _lift_in_std(std: StandardFormLp, vertex) -> RatVector:
    v = [Fraction(e) for e in vertex]
    if len(v) != std.n_original:
        raise ValueError("vertex length does not match n")
    x = list(v) + [Fraction(0)] * (std.n_prime - std.n_original)
    for i, row in enumerate(std.Aprime):
        lhs = sum(Fraction(row[j]) * v[j] for j in range(std.n_original))
        rhs = Fraction(std.bprime[i])
        slack_col = next((j for j in range(std.n_original, std.n_prime) if row[j]), None)
        if slack_col is None:  # pure equality row
            if lhs != rhs:
                raise InfeasibleVertexError(f"{tuple(vertex)} violates equality row {i}")
        else:
            x[slack_col] = rhs - lhs
    return tuple(x)


def solve(std: StandardFormLp, rule, start_basis: Basis, *, max_pivots: int = DEFAULT_PIVOT_CAP) -> PivotTrace:
    """Run the simplex loop to optimality.

    The rule is consulted only for the entering column; the leaving variable
    always comes from the exact ratio test with lexicographic tie-breaking.
    Terminates when the rule reports no improving column (all reduced costs
    <= 0).  Exceeding max_pivots raises CycleSuspectedError: theory forbids
    cycling, so the cap is a defect alarm.
    """
    columns = _columns(std)
    basis = tuple(start_basis)
    ref = basis
    factor = Factorization(std, basis, columns)
    if any(e < 0 for e in factor.x_B):
        raise InfeasibleVertexError("start basis is infeasible")
    rule.setup(factor)
    steps: list[PivotStep] = []
    while True:
        j = rule.entering(factor)
        if j is None:
            if any(r > 0 for r in factor.reduced_costs.values()):
                raise AssertionError("rule stopped with improving columns left")
            break
        if len(steps) >= max_pivots:
            raise CycleSuspectedError(f"exceeded {max_pivots} pivots")
        basis, step, factor = _pivot(std, columns, basis, factor, j, ref)
        steps.append(step)
        rule.after_pivot(factor, step)
    return PivotTrace(steps=tuple(steps), optimal=factor.vertex(), optimal_value=factor.objective())


def _pivot(
    std: StandardFormLp,
    columns,
    basis: Basis,
    factor: Factorization,
    entering: int,
    ref: Basis,
) -> tuple[Basis, PivotStep, Factorization]:
    u = factor.direction_u(entering)
    r_star, tied = ratio_test(factor.x_B, u)
    pos = lexicographic_leaving(factor, u, tied, ref)
    leaving = basis[pos]
    new_basis = tuple(entering if k == pos else basis[k] for k in range(len(basis)))
    new_factor = Factorization(std, new_basis, columns)
    if any(e < 0 for e in new_factor.x_B):
        raise AssertionError("pivot lost feasibility; ratio test is broken")
    step = PivotStep(
        entering=entering,
        leaving=leaving,
        ratio=r_star,
        degenerate=(r_star == 0),
        objective_after=new_factor.objective(),
        vertex_after=new_factor.vertex(),
    )
    return new_basis, step, new_factor


def replay(std: StandardFormLp, start_basis: Basis, moves) -> list[Basis]:
    """Re-apply a recorded (entering, leaving) sequence, validating each pivot.

    Returns the basis sequence including the start.  Raises if a move does
    not name a basic/nonbasic pair or if the leaving variable's row is not
    among the ratio-test argmin rows (which would mean the trace is not a
    legal simplex run).
    """
    columns = _columns(std)
    basis = tuple(start_basis)
    out = [basis]
    for entering, leaving in moves:
        factor = Factorization(std, basis, columns)
        if leaving not in basis or entering in basis:
            raise ValueError(f"illegal move ({entering}, {leaving}) at basis {basis}")
        u = factor.direction_u(entering)
        _, tied = ratio_test(factor.x_B, u)
        pos = basis.index(leaving)
        if pos not in tied:
            raise ValueError(f"move ({entering}, {leaving}) fails the ratio test")
        basis = tuple(entering if k == pos else basis[k] for k in range(len(basis)))
        out.append(basis)
    return out
