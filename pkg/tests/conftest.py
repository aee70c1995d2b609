"""Shared acceptance-suite machinery: the instance roster and cached runs.

Every (instance, objective, rule) combination is solved exactly once per
session; the acceptance criteria all read from this cache.
"""

from __future__ import annotations

import functools

from simplex01.generators import (
    birkhoff,
    cube,
    generic_perturbation,
    hypersimplex,
    perfect_matching,
    pyramid,
    random_objective,
    uniform_matroid,
)
from simplex01.harness import RunResult, run_solve
from simplex01.model import Lp01Instance

N_OBJECTIVES = 25


def suite_instances() -> list[Lp01Instance]:
    """The acceptance roster: every family across its documented sizes."""
    out: list[Lp01Instance] = [cube(n) for n in range(3, 13)]
    out.append(pyramid())
    out.extend(hypersimplex(n, k) for n, k in
               [(4, 2), (5, 2), (6, 2), (6, 3), (7, 3), (8, 4)])
    out.extend(birkhoff(n) for n in (3, 4))
    out.extend(perfect_matching(n) for n in (4, 6))
    out.extend(uniform_matroid(n, r) for n, r in
               [(4, 2), (5, 2), (6, 3), (7, 3), (8, 4)])
    return out


def seeded(inst: Lp01Instance, i: int, *, positive: bool = False) -> Lp01Instance:
    """Objective variant i of an instance; seeds are derived from the name."""
    tag = f"{inst.name}|{i}" + ("|pos" if positive else "")
    return inst.with_objective(random_objective(inst.n, tag, positive=positive))


def generic(inst: Lp01Instance, i: int) -> Lp01Instance:
    """Seeded integral genericity perturbation of a seeded objective."""
    base = seeded(inst, i)
    return base.with_objective(generic_perturbation(base.c, f"{inst.name}|{i}|generic"))


@functools.lru_cache(maxsize=None)
def solved(inst: Lp01Instance, kind: str) -> RunResult:
    return run_solve(inst, kind)


def nondegenerate_walk(result: RunResult):
    """(vertex_before, vertex_after) over the nondegenerate steps of a run."""
    cur = result.start_vertex
    for s in result.trace.steps:
        if not s.degenerate:
            yield cur, s.vertex_after
            cur = s.vertex_after
