"""Entering-column rules: two baselines and the three 0/1-polytope rules.

All rules see the same per-basis Factorization and return a nonbasic column
index, or None at optimality (no positive reduced cost).  Ties in any argmax
are broken by lowest column index.

The three rules of interest all work with an auxiliary vector v on the
original coordinates, zero-padded onto the slacks:

* true steepest edge: v = 1 - 2x for the *current* vertex x.  If some
  improving column has v^T z <= 0, enter the lowest such column (a
  degenerate escape move); otherwise enter the argmax of cbar(j) / v^T z^j.
  Along nondegenerate pivots this walks steepest edges of the original
  polytope in the 1-norm.
* slim shadow: v = 1 - 2x0 for the *start* vertex, fixed for the whole run.
* ordered shadow: v(k) = (-1)^{x0(k)} (||c||_1 + 2)^{sigma(k)}, fixed.

The shadow rules require their start basis to satisfy the cone property
(every improving pivot direction has v^T z > 0); prepare_initial_basis
establishes it by degenerate pivots before the main loop.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .engine import (
    Basis,
    DEFAULT_PIVOT_CAP,
    Factorization,
    PivotStep,
    factorize,
    lexicographic_leaving,
    ratio_test,
)
from .model import StandardFormLp, Vertex01

RULE_KINDS = ("dantzig", "steepest1", "true-steepest", "slim-shadow", "ordered-shadow")


class NondegenerateEscapeError(RuntimeError):
    """Preparation hit a nondegenerate pivot; the start vertex was not on the upper path."""


class RuleInvariantError(RuntimeError):
    """Internal contradiction in a rule (cannot happen on valid inputs)."""


def _lift(std: StandardFormLp, v) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(e)) for e in v) + (Fraction(0),) * (std.n_prime - std.n_original)


def _sign_vector(x: Vertex01) -> tuple[int, ...]:
    """v = 1 - 2x: +1 on zero coordinates, -1 on one coordinates."""
    return tuple(1 - 2 * int(e) for e in x)


class DantzigRule:
    """Largest reduced cost."""

    kind = "dantzig"

    def setup(self, factor: Factorization) -> None:
        pass

    def entering(self, factor: Factorization) -> int | None:
        best = None
        best_val: Fraction | None = None
        for j in factor.nonbasic:
            r = factor.reduced_costs[j]
            if r > 0 and (best_val is None or r > best_val):
                best, best_val = j, r
        return best

    def after_pivot(self, factor: Factorization, step: PivotStep) -> None:
        pass


class SteepestEdge1Rule:
    """Classical steepest edge in the 1-norm of the *projected* direction.

    Maximizes cbar(j) / ||pi(z^j)||_1 over improving columns, where pi drops
    the slack coordinates.  This is the baseline the true rule fixes: at a
    degenerate basis the chosen direction need not be a steepest
    edge-direction of the polytope.
    """

    kind = "steepest1"

    def setup(self, factor: Factorization) -> None:
        pass

    def entering(self, factor: Factorization) -> int | None:
        n = factor.std.n_original
        best = None
        best_ratio: Fraction | None = None
        for j in factor.nonbasic:
            r = factor.reduced_costs[j]
            if r <= 0:
                continue
            u = factor.direction_u(j)
            norm = Fraction(1 if j < n else 0)
            for pos, col in enumerate(factor.basis):
                if col < n and u[pos]:
                    norm += abs(u[pos])
            if norm == 0:
                continue  # direction has no original-space movement; cbar would be 0
            ratio = r / norm
            if best_ratio is None or ratio > best_ratio:
                best, best_ratio = j, ratio
        return best

    def after_pivot(self, factor: Factorization, step: PivotStep) -> None:
        pass


class TrueSteepestEdgeRule:
    """The steepest-edge rule that is steepest among *all* edges, not just basic ones."""

    kind = "true-steepest"

    def __init__(self):
        self.v_prime: tuple[Fraction, ...] | None = None
        self.ratio_log: list[Fraction] = []

    def setup(self, factor: Factorization) -> None:
        self.v_prime = _lift(factor.std, _sign_vector(factor.vertex()))

    def entering(self, factor: Factorization) -> int | None:
        aux = factor.products(self.v_prime)
        best = None
        best_ratio: Fraction | None = None
        for j in factor.nonbasic:
            r = factor.reduced_costs[j]
            if r <= 0:
                continue
            if aux[j] <= 0:
                return j  # degenerate escape: lowest such column
            ratio = r / aux[j]
            if best_ratio is None or ratio > best_ratio:
                best, best_ratio = j, ratio
        if best is not None:
            if aux[best] <= 0:
                raise RuleInvariantError("argmax branch saw v^T z <= 0")
            self.ratio_log.append(best_ratio)
        return best

    def after_pivot(self, factor: Factorization, step: PivotStep) -> None:
        if not step.degenerate:
            self.v_prime = _lift(factor.std, _sign_vector(step.vertex_after))


@dataclass(frozen=True)
class AuxVector:
    """A shadow rule's fixed projection vector and its provenance."""

    v: tuple[int, ...]
    v_prime: tuple[Fraction, ...]
    rule: str
    start_vertex: Vertex01


class _ShadowRule:
    """Common machinery: maximize cbar(j) / v^T z^j with a fixed auxiliary.

    Improving columns with v^T z <= 0 can reappear after degenerate pivots
    (the basic cone widens while the vertex stays put); they are handled as
    escape moves exactly as in the preparation phase: pivot on the lowest
    such column first.  On a vertex of the upper path such a move is always
    degenerate; a positive ratio on an escape pivot is a defect and raises
    NondegenerateEscapeError.  Only the max-slope selections enter
    ratio_log, which is what the slope-monotonicity law speaks about.
    """

    kind = "shadow"

    def __init__(self):
        self.aux: AuxVector | None = None
        self.ratio_log: list[Fraction] = []
        self.escape_count = 0
        self._escape_pending = False

    def make_aux(self, std: StandardFormLp, start_vertex: Vertex01) -> AuxVector:
        raise NotImplementedError

    def setup(self, factor: Factorization) -> None:
        if self.aux is None:
            self.aux = self.make_aux(factor.std, factor.vertex())

    def entering(self, factor: Factorization) -> int | None:
        aux = factor.products(self.aux.v_prime)
        best = None
        best_ratio: Fraction | None = None
        for j in factor.nonbasic:
            r = factor.reduced_costs[j]
            if r <= 0:
                continue
            if aux[j] <= 0:
                self.escape_count += 1
                self._escape_pending = True
                return j  # lowest escape column
            ratio = r / aux[j]
            if best_ratio is None or ratio > best_ratio:
                best, best_ratio = j, ratio
        if best is not None:
            self.ratio_log.append(best_ratio)
        return best

    def after_pivot(self, factor: Factorization, step: PivotStep) -> None:
        if self._escape_pending:
            self._escape_pending = False
            if not step.degenerate:
                raise NondegenerateEscapeError(
                    f"escape pivot on column {step.entering} moved the vertex; "
                    "the current vertex was not on the upper path"
                )


class SlimShadowRule(_ShadowRule):
    kind = "slim-shadow"

    def make_aux(self, std: StandardFormLp, start_vertex: Vertex01) -> AuxVector:
        v = _sign_vector(start_vertex)
        return AuxVector(v=v, v_prime=_lift(std, v), rule=self.kind, start_vertex=start_vertex)


class OrderedShadowRule(_ShadowRule):
    kind = "ordered-shadow"

    def __init__(self, sigma=None):
        super().__init__()
        self.sigma = tuple(sigma) if sigma is not None else None

    def make_aux(self, std: StandardFormLp, start_vertex: Vertex01) -> AuxVector:
        c = std.cprime[: std.n_original]
        c_star = sum(abs(int(e)) for e in c) + 2
        n = std.n_original
        sigma = self.sigma if self.sigma is not None else tuple(range(1, n + 1))
        if sorted(sigma) != list(range(1, n + 1)):
            raise ValueError("sigma must be a permutation of 1..n")
        v = tuple((-1) ** int(start_vertex[k]) * c_star ** sigma[k] for k in range(n))
        return AuxVector(v=v, v_prime=_lift(std, v), rule=self.kind, start_vertex=start_vertex)


def make_rule(kind: str, *, sigma=None):
    if kind == "dantzig":
        return DantzigRule()
    if kind == "steepest1":
        return SteepestEdge1Rule()
    if kind == "true-steepest":
        return TrueSteepestEdgeRule()
    if kind == "slim-shadow":
        return SlimShadowRule()
    if kind == "ordered-shadow":
        return OrderedShadowRule(sigma=sigma)
    raise ValueError(f"unknown rule {kind!r}; known: {RULE_KINDS}")


def needs_preparation(rule) -> bool:
    return isinstance(rule, _ShadowRule)


def prepare_initial_basis(
    std: StandardFormLp,
    basis: Basis,
    aux: AuxVector,
    *,
    max_pivots: int = DEFAULT_PIVOT_CAP,
) -> tuple[Basis, list[PivotStep]]:
    """Degenerate pivots until no improving column has v^T z <= 0.

    While some column j has cbar(j) > 0 and v^T z^j <= 0, pivot on the
    lowest such j with lexicographic leaving.  At a start vertex that
    minimizes v these pivots are necessarily degenerate; a positive ratio
    raises NondegenerateEscapeError (the start vertex was not on the upper
    path, i.e. the auxiliary vector does not belong to this start).
    """
    basis = tuple(basis)
    ref = basis
    steps: list[PivotStep] = []
    factor = factorize(std, basis)
    while True:
        aux_products = factor.products(aux.v_prime)
        j = next(
            (
                jj
                for jj in factor.nonbasic
                if factor.reduced_costs[jj] > 0 and aux_products[jj] <= 0
            ),
            None,
        )
        if j is None:
            return basis, steps
        if len(steps) >= max_pivots:
            raise NondegenerateEscapeError(f"preparation exceeded {max_pivots} pivots")
        u = factor.direction_u(j)
        r_star, tied = ratio_test(factor.x_B, u)
        if r_star != 0:
            raise NondegenerateEscapeError(
                f"preparation pivot on column {j} has ratio {r_star} > 0"
            )
        pos = lexicographic_leaving(factor, u, tied, ref)
        leaving = basis[pos]
        basis = tuple(j if k == pos else basis[k] for k in range(len(basis)))
        factor = factorize(std, basis)
        steps.append(
            PivotStep(
                entering=j,
                leaving=leaving,
                ratio=r_star,
                degenerate=True,
                objective_after=factor.objective(),
                vertex_after=factor.vertex(),
            )
        )
