"""Exact-arithmetic simplex over 0/1 polytopes.

Three pivot rules with proven nondegenerate-pivot bounds (true steepest
edge, slim shadow, ordered shadow), two baselines (Dantzig, 1-norm steepest
edge), a brute-force polytope oracle for desk-scale verification, and
generators for the classical 0/1 polytopes.
"""

from .engine import (
    Basis,
    CycleSuspectedError,
    InfeasibleVertexError,
    PivotStep,
    PivotTrace,
    UnboundedDirectionError,
    basis_from_vertex,
    bfs,
    direction,
    ratio_test_for,
    reduced_costs,
    replay,
    solve,
)
from .exact import Rational, SingularMatrixError, lex_compare, lex_positive, rank, solve_square
from .generators import (
    birkhoff,
    cube,
    generate,
    generic_perturbation,
    hypersimplex,
    perfect_matching,
    pyramid,
    random_objective,
    uniform_matroid,
)
from .harness import (
    BoundCheck,
    ParseError,
    RunReport,
    RunResult,
    compare_rules,
    load_instance,
    run_solve,
    save_instance,
    save_trace,
    verify_trace,
)
from .model import (
    Lp01Instance,
    StandardFormLp,
    ValidationReport,
    Vertex01,
    lift_auxiliary,
    lift_vertex,
    project_solution,
    standardize,
    validate,
)
from .oracle import (
    PolytopeOracle,
    ShadowPolygon,
    SkeletonGraph,
    TooLargeError,
    adjacent,
    affine_dimension,
    altchar_path,
    enumerate_vertices,
    greedy_matroid_path,
    improving_neighbors,
    is_coherent,
    oracle_for,
    skeleton,
    steepest_edges,
    upper_path,
)
from .rules import (
    RULE_KINDS,
    AuxVector,
    NondegenerateEscapeError,
    make_rule,
    prepare_initial_basis,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
