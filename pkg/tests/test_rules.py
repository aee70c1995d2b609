from fractions import Fraction

import pytest

from simplex01.engine import basis_from_vertex, factorize, solve
from simplex01.generators import (
    birkhoff,
    cube,
    hypersimplex,
    pyramid,
    random_objective,
    uniform_matroid,
)
from simplex01.harness import run_solve
from simplex01.model import standardize
from simplex01.oracle import oracle_for
from simplex01.rules import (
    NondegenerateEscapeError,
    make_rule,
    prepare_initial_basis,
)


class TestDantzig:
    def test_largest_reduced_cost(self):
        std = standardize(cube(2, c=(1, 2)))
        f = factorize(std, (2, 3))
        rule = make_rule("dantzig")
        rule.setup(f)
        assert rule.entering(f) == 1

    def test_absent_at_optimum(self):
        std = standardize(cube(2, c=(1, 2)))
        f = factorize(std, (0, 1))
        rule = make_rule("dantzig")
        rule.setup(f)
        assert rule.entering(f) is None

    def test_tie_lowest_index(self):
        std = standardize(cube(2, c=(1, 1)))
        f = factorize(std, (2, 3))
        rule = make_rule("dantzig")
        rule.setup(f)
        assert rule.entering(f) == 0


class TestSteepest1:
    def test_pyramid_bad_basis_selects_wrong_edge(self):
        std = standardize(pyramid())
        f = factorize(std, (1, 2))
        rule = make_rule("steepest1")
        rule.setup(f)
        j = rule.entering(f)
        z = f.direction_full(j)
        assert tuple(z[:3]) == (1, 1, -1)
        norm = sum(abs(e) for e in z[:3])
        assert f.reduced_costs[j] / norm == Fraction(49, 3)

    def test_cube_origin(self):
        std = standardize(cube(2, c=(1, 2)))
        f = factorize(std, (2, 3))
        rule = make_rule("steepest1")
        rule.setup(f)
        assert rule.entering(f) == 1

    def test_absent_at_optimum(self):
        std = standardize(cube(2, c=(1, 2)))
        f = factorize(std, (0, 1))
        rule = make_rule("steepest1")
        rule.setup(f)
        assert rule.entering(f) is None


class TestTrueSteepest:
    def test_pyramid_bad_basis_clause_one(self):
        std = standardize(pyramid())
        f = factorize(std, (1, 2))
        rule = make_rule("true-steepest")
        rule.setup(f)
        assert rule.v_prime == (1, 1, -1, 0, 0)
        j = rule.entering(f)
        z = f.direction_full(j)
        assert tuple(z[:3]) == (0, -1, 0)  # degenerate escape direction

    def test_pyramid_second_basis_steepest(self):
        std = standardize(pyramid())
        f = factorize(std, (4, 2))  # after the escape pivot: basic {s2, x3}
        rule = make_rule("true-steepest")
        rule.setup(f)
        j = rule.entering(f)
        z = f.direction_full(j)
        assert tuple(z[:3]) == (1, 0, -1)
        assert rule.ratio_log[-1] == 25  # cbar / v^T z = 50 / 2

    def test_cube_origin_all_denominators_one(self):
        std = standardize(cube(3, c=(1, 2, 3)))
        f = factorize(std, (3, 4, 5))
        rule = make_rule("true-steepest")
        rule.setup(f)
        assert rule.entering(f) == 2  # argmax of cbar / 1

    def test_v_refresh_after_nondegenerate_pivot(self):
        inst = cube(2, c=(3, 1))
        std = standardize(inst)
        rule = make_rule("true-steepest")
        solve(std, rule, (2, 3))
        # final vertex (1,1): v = (-1,-1) padded
        assert rule.v_prime == (-1, -1, 0, 0)


class TestShadowEntering:
    def test_cube_slim_denominators_one(self):
        std = standardize(cube(3, c=(1, 2, 3)))
        f = factorize(std, (3, 4, 5))
        rule = make_rule("slim-shadow")
        rule.setup(f)
        assert rule.aux.v == (1, 1, 1)
        assert rule.entering(f) == 2

    def test_cube_ordered_picks_lowest_coordinate(self):
        std = standardize(cube(3, c=(1, 2, 3)))
        f = factorize(std, (3, 4, 5))
        rule = make_rule("ordered-shadow")
        rule.setup(f)
        assert rule.aux.v == (8, 64, 512)  # c* = 6 + 2 = 8
        assert rule.entering(f) == 0  # ratios 1/8 > 1/32 > 3/512

    def test_absent_at_optimum(self):
        std = standardize(cube(2, c=(1, 2)))
        f = factorize(std, (0, 1))
        for kind in ("slim-shadow", "ordered-shadow"):
            rule = make_rule(kind)
            rule.setup(f)
            assert rule.entering(f) is None

    def test_escape_column_chosen_at_unprepared_basis(self):
        # pyramid bad basis without preparation: the improving direction
        # with v^T z <= 0 is taken as an escape move, lowest column first
        std = standardize(pyramid())
        f = factorize(std, (1, 2))
        rule = make_rule("slim-shadow")
        rule.aux = rule.make_aux(std, (0, 0, 1))
        j = rule.entering(f)
        assert j == 4 and rule.escape_count == 1
        z = f.direction_full(j)
        assert tuple(z[:3]) == (0, -1, 0)

    def test_escape_must_be_degenerate(self):
        # an auxiliary for the wrong start vertex makes the escape move
        # nondegenerate, which the rule flags as a defect
        inst = cube(2, c=(-1, -1))
        std = standardize(inst)
        rule = make_rule("slim-shadow")
        rule.aux = rule.make_aux(std, (0, 0))
        basis = basis_from_vertex(std, (1, 1))
        with pytest.raises(NondegenerateEscapeError):
            solve(std, rule, basis)

    def test_ordered_rejects_bad_sigma(self):
        std = standardize(cube(3))
        f = factorize(std, (3, 4, 5))
        rule = make_rule("ordered-shadow", sigma=(1, 1, 2))
        with pytest.raises(ValueError):
            rule.setup(f)


class TestPrepare:
    def test_cube_origin_no_pivot(self):
        std = standardize(cube(3, c=(1, 2, 3)))
        rule = make_rule("slim-shadow")
        aux = rule.make_aux(std, (0, 0, 0))
        basis, steps = prepare_initial_basis(std, (3, 4, 5), aux)
        assert basis == (3, 4, 5) and steps == []

    def test_pyramid_bad_basis_one_degenerate_pivot(self):
        std = standardize(pyramid())
        rule = make_rule("slim-shadow")
        aux = rule.make_aux(std, (0, 0, 1))
        basis, steps = prepare_initial_basis(std, (1, 2), aux)
        assert len(steps) == 1
        assert steps[0].degenerate
        assert steps[0].entering == 4  # slack realizing (0,-1,0)
        # property holds now: shadow entering works without violation
        f = factorize(std, basis)
        rule.aux = aux
        assert rule.entering(f) is not None

    def test_birkhoff_preparation_terminates(self):
        inst = birkhoff(3, c=random_objective(9, "prep", bound=50))
        std = standardize(inst)
        start = basis_from_vertex(std, inst.start_vertex)
        rule = make_rule("slim-shadow")
        aux = rule.make_aux(std, inst.start_vertex)
        basis, steps = prepare_initial_basis(std, start, aux)
        assert all(s.degenerate for s in steps)
        assert len(steps) <= 30

    def test_wrong_aux_raises_nondegenerate_escape(self):
        # auxiliary built for the wrong start vertex: the "preparation"
        # wants to walk downhill in v, which needs a nondegenerate pivot
        inst = cube(2, c=(-1, -1))
        std = standardize(inst)
        basis = basis_from_vertex(std, (1, 1))
        rule = make_rule("slim-shadow")
        aux = rule.make_aux(std, (0, 0))  # claims the v-min is at the origin
        with pytest.raises(NondegenerateEscapeError):
            prepare_initial_basis(std, basis, aux)


class TestShadowRuns:
    def test_slim_cube_path(self):
        res = run_solve(cube(3, c=(1, 2, 3)), "slim-shadow")
        assert res.vertex_path == ((0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1))

    def test_ordered_cube_path_fig3(self):
        res = run_solve(cube(3, c=(1, 2, 3)), "ordered-shadow")
        assert res.vertex_path == ((0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1))

    def test_ordered_sigma_changes_path(self):
        res = run_solve(cube(3, c=(1, 2, 3)), "ordered-shadow", sigma=(3, 2, 1))
        assert res.vertex_path == ((0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1))

    def test_hypersimplex_slim_two_steps(self):
        import random

        rng = random.Random("slim-delta")
        for _ in range(5):
            c = tuple(rng.randint(-40, 40) for _ in range(6))
            res = run_solve(hypersimplex(6, 2, c=c), "slim-shadow")
            assert res.report.nondegenerate <= 2

    def test_matroid_slim_equals_greedy_step_count(self):
        import random

        rng = random.Random("matroid-steps")
        for _ in range(8):
            c = tuple(rng.randint(-9, 9) for _ in range(5))
            res = run_solve(uniform_matroid(5, 2, c=c), "slim-shadow")
            expected = min(2, sum(1 for e in c if e > 0))
            assert res.report.nondegenerate == expected  # min(r, #positive)

    def test_hypersimplex_slim_from_every_vertex(self):
        # constant support k = 2: at most 2 steps from any start vertex
        inst = hypersimplex(6, 2, c=(5, -3, 8, 1, -2, 4))
        for v in oracle_for(inst).vertices:
            res = run_solve(inst, "slim-shadow", start=v)
            assert res.report.nondegenerate <= 2

    def test_birkhoff4_slim_vs_ordered_bounds(self):
        # sparsity gives slim <= 4; the dimension bound gives ordered <= 9
        inst = birkhoff(4, c=random_objective(16, "b4-bounds"))
        slim = run_solve(inst, "slim-shadow")
        ordered = run_solve(inst, "ordered-shadow")
        assert slim.report.nondegenerate <= 4
        assert ordered.report.nondegenerate <= 9

    def test_slope_log_non_increasing(self):
        inst = birkhoff(4, c=random_objective(16, "slope", bound=60))
        for kind in ("slim-shadow", "ordered-shadow"):
            res = run_solve(inst, kind)
            log = res.rule.ratio_log
            assert all(a >= b for a, b in zip(log, log[1:]))
