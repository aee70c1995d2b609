from fractions import Fraction

import pytest

from simplex01.engine import (
    InfeasibleVertexError,
    UnboundedDirectionError,
    basis_from_vertex,
    bfs,
    direction,
    factorize,
    lexicographic_leaving_for,
    ratio_test,
    ratio_test_for,
    reduced_costs,
    replay,
    solve,
)
from simplex01.exact import SingularMatrixError
from simplex01.generators import birkhoff, cube, pyramid, random_objective
from simplex01.model import standardize
from simplex01.oracle import oracle_for
from simplex01.rules import make_rule


def F(x):
    return Fraction(x)


class TestBfs:
    def test_cube2_slack_basis(self):
        std = standardize(cube(2))
        assert bfs(std, (2, 3)) == (0, 0, 1, 1)

    def test_cube2_mixed_basis(self):
        std = standardize(cube(2))
        assert bfs(std, (0, 3)) == (1, 0, 0, 1)

    def test_pyramid_apex(self):
        std = standardize(pyramid())
        for basis in [(2, 0), (2, 1), (2, 3), (2, 4)]:
            try:
                x = bfs(std, basis)
            except SingularMatrixError:
                continue
            assert x[:3] == (0, 0, 1)

    def test_singular_basis(self):
        std = standardize(pyramid())
        with pytest.raises(SingularMatrixError):
            bfs(std, (0, 3))  # x1 and its own slack are dependent


class TestReducedCosts:
    def test_cube1_slack_basis(self):
        std = standardize(cube(1))
        assert reduced_costs(std, (1,)) == {0: 1}

    def test_cube1_optimal_basis(self):
        std = standardize(cube(1))
        assert reduced_costs(std, (0,)) == {1: -1}

    def test_optimal_basis_certifies(self):
        inst = cube(3, c=(2, -1, 3))
        std = standardize(inst)
        res_basis = basis_from_vertex(std, (1, 0, 1))
        rc = reduced_costs(std, res_basis)
        assert all(v <= 0 for v in rc.values())
        assert oracle_for(inst).max_objective(inst.c) == 5


class TestDirection:
    def test_cube2_slack_basis(self):
        std = standardize(cube(2))
        assert direction(std, (2, 3), 0) == (1, 0, -1, 0)

    def test_in_kernel_of_aprime(self):
        for inst in (cube(3), pyramid(), birkhoff(3)):
            std = standardize(inst)
            basis = basis_from_vertex(std, inst.start_vertex)
            f = factorize(std, basis)
            for j in f.nonbasic:
                z = direction(std, basis, j)
                for row in std.Aprime:
                    assert sum(a * e for a, e in zip(row, z)) == 0

    def test_pyramid_bad_basis_directions(self):
        std = standardize(pyramid())
        f = factorize(std, (1, 2))  # basic {x2, x3}
        improving = sorted(j for j, r in f.reduced_costs.items() if r > 0)
        projected = [tuple(direction(std, (1, 2), j)[:3]) for j in improving]
        assert projected == [(1, 1, -1), (0, -1, 0)]


class TestRatioTest:
    def test_cube1_enter_x(self):
        std = standardize(cube(1))
        r, tied = ratio_test_for(std, (1,), (1,))
        assert r == 1 and tied == (0,)

    def test_degenerate_apex(self):
        std = standardize(pyramid())
        f = factorize(std, (1, 2))
        u = f.direction_u(4)  # slack of row 2: direction (0,-1,0)
        r, tied = ratio_test(f.x_B, u)
        assert r == 0 and tied == (0,)

    def test_tie_detection(self):
        r, tied = ratio_test((F(2), F(1)), (F(1), F(1)))
        assert r == 1 and tied == (1,)
        r, tied = ratio_test((F(2), F(2)), (F(1), F(1)))
        assert r == 2 and tied == (0, 1)

    def test_unbounded(self):
        with pytest.raises(UnboundedDirectionError):
            ratio_test((F(1),), (F(-1),))


class TestLexicographicLeaving:
    def test_single_tie(self):
        std = standardize(cube(2))
        assert lexicographic_leaving_for(std, (2, 3), 0, (0,)) == 0

    def test_three_by_three_hand_case(self):
        # cube(3) from the origin, entering x1: only row 0 has u > 0
        std = standardize(cube(3))
        assert lexicographic_leaving_for(std, (3, 4, 5), 0, (0,)) == 0

    def test_tie_broken_by_inverse_row(self):
        # 3x3 case checkable by hand: P = {0 <= x <= 1, x1 + x2 <= 1},
        # slack basis at the origin, entering x1: rows 0 and 2 tie at
        # ratio 1.  The scaled rows of [x_B | inv] are (1, 1,0,0) and
        # (1, 0,0,1); the second is lex-smaller, so row 2 leaves.
        from simplex01.model import Lp01Instance

        inst = Lp01Instance(
            name="tie", A=(), b=(), D=((1, 0), (0, 1), (1, 1)), d=(1, 1, 1), c=(1, 0)
        )
        std = standardize(inst)
        f = factorize(std, (2, 3, 4))
        u = f.direction_u(0)
        r, tied = ratio_test(f.x_B, u)
        assert r == 1 and tied == (0, 2)
        assert lexicographic_leaving_for(std, (2, 3, 4), 0, tied) == 2
        assert lexicographic_leaving_for(std, (2, 3, 4), 0, tied, ref_basis=(2, 3, 4)) == 2

    def test_uniqueness_on_degenerate_runs(self):
        # repeated degenerate pivots on birkhoff(3) never revisit a basis
        inst = birkhoff(3, c=random_objective(9, "lex-uniq", bound=5))
        std = standardize(inst)
        start = basis_from_vertex(std, inst.start_vertex)
        trace = solve(std, make_rule("dantzig"), start)
        bases = replay(std, start, [(s.entering, s.leaving) for s in trace.steps])
        seen = set()
        for b, s in zip(bases[1:], trace.steps):
            key = frozenset(b)
            if s.degenerate:
                assert key not in seen
            else:
                seen.clear()
            seen.add(key)


class TestBasisFromVertex:
    def test_cube2_interior_support(self):
        std = standardize(cube(2))
        assert basis_from_vertex(std, (1, 1)) == (0, 1)
        assert bfs(std, (0, 1)) == (1, 1, 0, 0)

    def test_cube2_origin(self):
        std = standardize(cube(2))
        assert basis_from_vertex(std, (0, 0)) == (2, 3)

    def test_pyramid_apex_projects_back(self):
        std = standardize(pyramid())
        b = basis_from_vertex(std, (0, 0, 1))
        assert bfs(std, b)[:3] == (0, 0, 1)

    def test_infeasible_vertex(self):
        std = standardize(pyramid())
        with pytest.raises(InfeasibleVertexError):
            basis_from_vertex(std, (1, 0, 1))


class TestSolve:
    def test_cube3_ordered_shadow_fig3(self):
        inst = cube(3, c=(1, 2, 3))
        std = standardize(inst)
        trace = solve(std, make_rule("ordered-shadow"), basis_from_vertex(std, (0, 0, 0)))
        assert trace.optimal == (1, 1, 1)
        assert trace.optimal_value == 6
        assert trace.counts == (3, 0)
        assert trace.vertex_path == ((1, 0, 0), (1, 1, 0), (1, 1, 1))

    def test_pyramid_true_steepest(self):
        inst = pyramid()
        std = standardize(inst)
        trace = solve(std, make_rule("true-steepest"), basis_from_vertex(std, (0, 0, 1)))
        assert trace.optimal == (1, 0, 0) and trace.optimal_value == 50

    @pytest.mark.parametrize("kind", ["dantzig", "steepest1", "true-steepest"])
    def test_optimum_matches_oracle(self, kind):
        import random

        rng = random.Random(f"solve:{kind}")
        for n in (2, 3, 4):
            inst = cube(n, c=tuple(rng.randint(-20, 20) for _ in range(n)))
            std = standardize(inst)
            trace = solve(std, make_rule(kind), basis_from_vertex(std, (0,) * n))
            assert trace.optimal_value == oracle_for(inst).max_objective(inst.c)

    def test_feasibility_and_monotonicity(self):
        inst = birkhoff(3, c=random_objective(9, 42))
        std = standardize(inst)
        start = basis_from_vertex(std, inst.start_vertex)
        trace = solve(std, make_rule("dantzig"), start)
        prev = factorize(std, start).objective()
        for s in trace.steps:
            assert s.objective_after >= prev
            assert (s.objective_after > prev) == (not s.degenerate)
            prev = s.objective_after

    def test_determinism(self):
        inst = birkhoff(4, c=random_objective(16, 7))
        std = standardize(inst)
        start = basis_from_vertex(std, inst.start_vertex)
        t1 = solve(std, make_rule("dantzig"), start)
        t2 = solve(std, make_rule("dantzig"), start)
        assert t1 == t2

    def test_replay_reproduces_bases(self):
        inst = cube(4, c=(3, 1, 4, 1))
        std = standardize(inst)
        start = basis_from_vertex(std, (0, 0, 0, 0))
        trace = solve(std, make_rule("true-steepest"), start)
        bases = replay(std, start, [(s.entering, s.leaving) for s in trace.steps])
        assert len(bases) == len(trace.steps) + 1
