"""Run orchestration: solve with a named rule, verify against the oracle, report.

A run is: build a feasible basis from the start vertex, apply the shadow
rules' preparation phase when needed, solve, then check whichever theorem
bound applies to the rule (slim: #nondegenerate <= n; ordered: <= affine
dimension d from the oracle; true steepest: every nondegenerate step is a
steepest edge-direction).  verify_trace runs the full battery of oracle
checks on a finished trace; everything oracle-based is skipped (and flagged)
when the instance exceeds the enumeration limit.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import oracle as orc
from .engine import (
    PivotStep,
    PivotTrace,
    basis_from_vertex,
    solve,
)
from .model import CheckResult, Lp01Instance, Vertex01, standardize
from .rules import make_rule, needs_preparation, prepare_initial_basis


class ParseError(ValueError):
    """Malformed instance JSON; the message names the offending field."""


# Oracle-backed verification is attempted up to this many variables; the
# oracle itself can enumerate a little further, but the full check battery
# (skeletons, shadow polygons) is meant for n <= 20.
VERIFY_LIMIT = 20


@dataclass(frozen=True)
class BoundCheck:
    name: str
    bound: int | None
    actual: int
    held: bool | None  # None = not checkable (enumeration infeasible), flagged

    @property
    def description(self) -> str:
        if self.held is None:
            return f"{self.name}: unchecked (bound unavailable), actual {self.actual}"
        if self.bound is None:
            return f"{self.name}: {'held' if self.held else 'VIOLATED'}"
        rel = "<=" if self.held else ">"
        return f"{self.name}: {self.actual} {rel} {self.bound}"


@dataclass(frozen=True)
class RunReport:
    instance: str
    rule: str
    start_vertex: Vertex01
    nondegenerate: int
    degenerate: int
    optimal_value: str  # exact rational text
    bound_checked: BoundCheck
    oracle_checks: tuple[CheckResult, ...] = ()

    @property
    def ok(self) -> bool:
        bound_ok = self.bound_checked.held is not False
        return bound_ok and all(c.passed or c.skipped for c in self.oracle_checks)

    def to_dict(self) -> dict:
        return {
            "instance": self.instance,
            "rule": self.rule,
            "start_vertex": list(self.start_vertex),
            "nondegenerate": self.nondegenerate,
            "degenerate": self.degenerate,
            "optimal_value": self.optimal_value,
            "bound": {
                "name": self.bound_checked.name,
                "bound": self.bound_checked.bound,
                "actual": self.bound_checked.actual,
                "held": self.bound_checked.held,
            },
            "oracle_checks": [
                {"name": c.name, "passed": c.passed, "skipped": c.skipped, "detail": c.detail}
                for c in self.oracle_checks
            ],
            "ok": self.ok,
        }


@dataclass
class RunResult:
    """Everything a caller might want: the report plus the raw artifacts."""

    report: RunReport
    trace: PivotTrace  # full pivot sequence, preparation included
    start_vertex: Vertex01
    start_basis: tuple[int, ...]
    prepared_basis: tuple[int, ...]
    rule: object = field(repr=False)
    prep_steps: tuple[PivotStep, ...] = ()

    @property
    def vertex_path(self) -> tuple[Vertex01, ...]:
        path = [self.start_vertex]
        for s in self.trace.steps:
            if s.vertex_after != path[-1]:
                path.append(s.vertex_after)
        return tuple(path)


def _resolve_start(inst: Lp01Instance, start) -> Vertex01:
    if start is None or start == "auto":
        if inst.start_vertex is None:
            raise ValueError(f"{inst.name} has no designated start vertex; pass one")
        return inst.start_vertex
    return tuple(int(e) for e in start)


def run_solve(
    inst: Lp01Instance,
    rule_kind: str,
    start="auto",
    *,
    sigma=None,
    check_oracle: bool = False,
    max_pivots: int | None = None,
) -> RunResult:
    """Solve the instance with one rule and fill a RunReport."""
    start_vertex = _resolve_start(inst, start)
    std = standardize(inst)
    basis0 = basis_from_vertex(std, start_vertex)
    rule = make_rule(rule_kind, sigma=sigma)
    prep_steps: tuple[PivotStep, ...] = ()
    basis = basis0
    if needs_preparation(rule):
        rule.aux = rule.make_aux(std, start_vertex)
        basis, prep = prepare_initial_basis(std, basis0, rule.aux)
        prep_steps = tuple(prep)
    kwargs = {} if max_pivots is None else {"max_pivots": max_pivots}
    trace = solve(std, rule, basis, **kwargs)
    full = PivotTrace(
        steps=prep_steps + trace.steps,
        optimal=trace.optimal,
        optimal_value=trace.optimal_value,
    )
    nondeg, deg = full.counts
    bound = _bound_check(inst, rule_kind, start_vertex, full, sigma=sigma)
    checks: tuple[CheckResult, ...] = ()
    if check_oracle:
        checks = tuple(verify_trace(inst, full, rule_kind, start_vertex, sigma=sigma))
    report = RunReport(
        instance=inst.name,
        rule=rule_kind,
        start_vertex=start_vertex,
        nondegenerate=nondeg,
        degenerate=deg,
        optimal_value=str(full.optimal_value),
        bound_checked=bound,
        oracle_checks=checks,
    )
    return RunResult(
        report=report,
        trace=full,
        start_vertex=start_vertex,
        start_basis=basis0,
        prepared_basis=basis,
        rule=rule,
        prep_steps=prep_steps,
    )


def _oracle_feasible(inst: Lp01Instance) -> bool:
    return inst.n <= VERIFY_LIMIT


def _bound_check(inst, rule_kind, start_vertex, trace, *, sigma=None) -> BoundCheck:
    nondeg, _ = trace.counts
    if rule_kind == "slim-shadow":
        return BoundCheck("slim-shadow <= n", inst.n, nondeg, nondeg <= inst.n)
    if rule_kind == "ordered-shadow":
        if not _oracle_feasible(inst):
            return BoundCheck("ordered-shadow <= d", None, nondeg, None)
        d = orc.affine_dimension(inst)
        return BoundCheck("ordered-shadow <= d", d, nondeg, nondeg <= d)
    if rule_kind == "true-steepest":
        if not _oracle_feasible(inst):
            return BoundCheck("true-steepest steepness", None, nondeg, None)
        ok = _steepness_holds(inst, trace, start_vertex)
        return BoundCheck("true-steepest steepness", None, nondeg, ok)
    return BoundCheck(f"{rule_kind} (no bound)", None, nondeg, True)


def _walk(trace: PivotTrace, start_vertex: Vertex01):
    """(vertex_before, vertex_after) over the nondegenerate steps."""
    cur = start_vertex
    for s in trace.steps:
        if not s.degenerate:
            yield cur, s.vertex_after
            cur = s.vertex_after


def _steepness_holds(inst, trace, start_vertex) -> bool:
    poly = orc.oracle_for(inst)
    for before, after in _walk(trace, start_vertex):
        g = tuple(a - b for a, b in zip(after, before))
        ratio = Fraction(
            sum(ci * gi for ci, gi in zip(inst.c, g)), sum(abs(gi) for gi in g)
        )
        if ratio != poly.steepest_ratio(before, inst.c):
            return False
    return True


def _aux_for(inst, rule_kind, start_vertex, sigma):
    if rule_kind == "slim-shadow":
        return tuple(1 - 2 * int(e) for e in start_vertex)
    if rule_kind == "ordered-shadow":
        return orc.ordered_aux_vector(inst, start_vertex, inst.c, sigma)
    return None


def verify_trace(
    inst: Lp01Instance,
    trace: PivotTrace,
    rule_kind: str | None = None,
    start_vertex: Vertex01 | None = None,
    *,
    sigma=None,
) -> list[CheckResult]:
    """Oracle-side verification of a finished trace; each check named pass/fail.

    Generic checks: exact feasibility and 0/1-ness of every visited vertex,
    objective monotonicity (strict exactly at nondegenerate steps), vertex
    changes exactly at nondegenerate steps, and the skeleton walk
    (consecutive distinct vertices adjacent, by the rank test).  Rule checks:
    steepness for true-steepest; coherence, the Corollary length law, and
    optimum attainment for the shadow rules; path equality with the
    f-minimal construction for ordered shadow.  Skeleton and dimension
    checks are skipped (flagged, not failed) above the enumeration limit;
    the slim bound only needs n and is always checked.
    """
    if start_vertex is None:
        raise ValueError("verify_trace needs the run's start vertex")
    checks: list[CheckResult] = []
    feasible = _oracle_feasible(inst)
    nondeg, deg = trace.counts

    ok = inst.is_feasible_point(start_vertex) and all(
        inst.is_feasible_point(s.vertex_after) and all(e in (0, 1) for e in s.vertex_after)
        for s in trace.steps
    )
    checks.append(CheckResult("vertices-feasible-01", ok))

    obj_ok = True
    prev_obj = Fraction(sum(ci * xi for ci, xi in zip(inst.c, start_vertex)))
    prev_vertex = start_vertex
    for s in trace.steps:
        increased = s.objective_after > prev_obj
        moved = s.vertex_after != prev_vertex
        if s.degenerate and (increased or moved or s.objective_after != prev_obj):
            obj_ok = False
        if not s.degenerate and (not increased or not moved):
            obj_ok = False
        if s.degenerate != (s.ratio == 0):
            obj_ok = False
        prev_obj, prev_vertex = s.objective_after, s.vertex_after
    checks.append(CheckResult("objective-monotone", obj_ok))

    path = [start_vertex]
    for s in trace.steps:
        if s.vertex_after != path[-1]:
            path.append(s.vertex_after)

    if feasible:
        walk_ok = all(orc.adjacent(inst, u, w) for u, w in zip(path, path[1:]))
        checks.append(CheckResult("skeleton-walk", walk_ok))
        poly = orc.oracle_for(inst)
        opt_ok = trace.optimal_value == poly.max_objective(inst.c)
        checks.append(CheckResult("optimum-attained", opt_ok))
    else:
        checks.append(CheckResult("skeleton-walk", True, "enumeration infeasible", skipped=True))
        checks.append(CheckResult("optimum-attained", True, "enumeration infeasible", skipped=True))

    if rule_kind == "true-steepest":
        if feasible:
            checks.append(CheckResult("steepness", _steepness_holds(inst, trace, start_vertex)))
        else:
            checks.append(CheckResult("steepness", True, "enumeration infeasible", skipped=True))

    if rule_kind == "slim-shadow":
        checks.append(CheckResult("bound-slim", nondeg <= inst.n, f"{nondeg} <= n = {inst.n}"))

    if rule_kind in ("slim-shadow", "ordered-shadow"):
        aux = _aux_for(inst, rule_kind, start_vertex, sigma)
        if feasible:
            poly = orc.oracle_for(inst)
            coh = orc.is_coherent(path, aux, inst.c, poly.vertices)
            checks.append(CheckResult("coherence", coh))
            values = {sum(a * e for a, e in zip(aux, u)) for u in poly.vertices}
            checks.append(
                CheckResult(
                    "length-law",
                    nondeg <= len(values) - 1,
                    f"{nondeg} <= |{{v^T u}}| - 1 = {len(values) - 1}",
                )
            )
            if rule_kind == "ordered-shadow":
                d = poly.affine_dimension()
                checks.append(CheckResult("bound-ordered", nondeg <= d, f"{nondeg} <= d = {d}"))
                alt = orc.altchar_path(inst, start_vertex, inst.c, sigma)
                checks.append(
                    CheckResult(
                        "altchar-path-equal",
                        list(path) == list(alt),
                        f"solver {len(path)} vertices vs f-minimal {len(alt)}",
                    )
                )
        else:
            checks.append(CheckResult("coherence", True, "enumeration infeasible", skipped=True))
            checks.append(CheckResult("length-law", True, "enumeration infeasible", skipped=True))
            if rule_kind == "ordered-shadow":
                checks.append(
                    CheckResult("bound-ordered", True, "enumeration infeasible", skipped=True)
                )
    return checks


def compare_rules(inst: Lp01Instance, rule_kinds, start="auto", *, check_oracle=False) -> list[RunResult]:
    """One run per rule from a shared start; per-rule errors recorded, others continue."""
    results: list[RunResult] = []
    for kind in rule_kinds:
        try:
            results.append(run_solve(inst, kind, start, check_oracle=check_oracle))
        except Exception as exc:  # noqa: BLE001 - reported per rule, run continues
            start_vertex = _resolve_start(inst, start)
            report = RunReport(
                instance=inst.name,
                rule=kind,
                start_vertex=start_vertex,
                nondegenerate=-1,
                degenerate=-1,
                optimal_value="error",
                bound_checked=BoundCheck(f"{kind} failed: {exc}", None, -1, False),
            )
            results.append(
                RunResult(
                    report=report,
                    trace=PivotTrace((), start_vertex, Fraction(0)),
                    start_vertex=start_vertex,
                    start_basis=(),
                    prepared_basis=(),
                    rule=None,
                )
            )
    return results


def comparison_csv(results) -> str:
    out = io.StringIO()
    w = csv.writer(out)
    w.writerow(["instance", "rule", "nondegenerate", "degenerate", "optimal_value", "bound", "ok"])
    for r in results:
        rep = r.report
        w.writerow(
            [
                rep.instance,
                rep.rule,
                rep.nondegenerate,
                rep.degenerate,
                rep.optimal_value,
                rep.bound_checked.description,
                rep.ok,
            ]
        )
    return out.getvalue()


# -- instance JSON ------------------------------------------------------------

_FIELDS = ("name", "A", "b", "D", "d", "c", "start_vertex")


def _require_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where}: expected an integer, got {value!r}")
    return value


def _int_list(value, where: str) -> tuple[int, ...]:
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected a list")
    return tuple(_require_int(e, f"{where}[{i}]") for i, e in enumerate(value))


def _int_matrix_field(value, where: str) -> tuple[tuple[int, ...], ...]:
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected a list of rows")
    return tuple(_int_list(row, f"{where}[{i}]") for i, row in enumerate(value))


def instance_to_dict(inst: Lp01Instance) -> dict:
    return {
        "name": inst.name,
        "A": [list(r) for r in inst.A],
        "b": list(inst.b),
        "D": [list(r) for r in inst.D],
        "d": list(inst.d),
        "c": list(inst.c),
        "start_vertex": list(inst.start_vertex) if inst.start_vertex is not None else None,
    }


def instance_from_dict(data: dict) -> Lp01Instance:
    if not isinstance(data, dict):
        raise ParseError("top level: expected an object")
    for key in _FIELDS:
        if key not in data:
            raise ParseError(f"missing field {key!r}")
    name = data["name"]
    if not isinstance(name, str):
        raise ParseError("name: expected a string")
    sv = data["start_vertex"]
    start = None if sv is None else _int_list(sv, "start_vertex")
    if start is not None and any(e not in (0, 1) for e in start):
        raise ParseError("start_vertex: entries must be 0 or 1")
    try:
        return Lp01Instance(
            name=name,
            A=_int_matrix_field(data["A"], "A"),
            b=_int_list(data["b"], "b"),
            D=_int_matrix_field(data["D"], "D"),
            d=_int_list(data["d"], "d"),
            c=_int_list(data["c"], "c"),
            start_vertex=start,
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def save_instance(inst: Lp01Instance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(instance_to_dict(inst), fh, indent=2)
        fh.write("\n")


def load_instance(path) -> Lp01Instance:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return instance_from_dict(data)


# -- trace CSV ----------------------------------------------------------------

TRACE_COLUMNS = ("iter", "entering", "leaving", "ratio", "degenerate", "objective", "vertex")


def trace_to_csv(trace: PivotTrace) -> str:
    out = io.StringIO()
    w = csv.writer(out)
    w.writerow(TRACE_COLUMNS)
    for i, s in enumerate(trace.steps):
        w.writerow(
            [
                i,
                s.entering,
                s.leaving,
                str(s.ratio),
                int(s.degenerate),
                str(s.objective_after),
                "".join(str(e) for e in s.vertex_after),
            ]
        )
    return out.getvalue()


def trace_from_csv(text: str) -> list[PivotStep]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != TRACE_COLUMNS:
        raise ParseError(f"trace header must be {','.join(TRACE_COLUMNS)}")
    steps = []
    for row in rows[1:]:
        if len(row) != len(TRACE_COLUMNS):
            raise ParseError(f"trace row has {len(row)} fields")
        _, entering, leaving, ratio, degenerate, objective, vertex = row
        steps.append(
            PivotStep(
                entering=int(entering),
                leaving=int(leaving),
                ratio=Fraction(ratio),
                degenerate=bool(int(degenerate)),
                objective_after=Fraction(objective),
                vertex_after=tuple(int(ch) for ch in vertex),
            )
        )
    return steps


def save_trace(trace: PivotTrace, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(trace_to_csv(trace))


def save_report(reports, path) -> None:
    data = [r.to_dict() for r in reports] if isinstance(reports, list) else reports.to_dict()
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")
