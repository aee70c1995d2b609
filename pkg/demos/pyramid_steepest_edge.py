"""Why the classical 1-norm steepest-edge pivot rule is not steep enough.

The pyramid over a square, maximizing c = (50, -1, 0) from the apex
(0, 0, 1).  The apex is degenerate: four constraints are tight in R^3, so
its bases see only a subset of the true edge-directions.  From the bad
basis whose cone is cut by {x1 >= 0, x1+x3 <= 1, x2+x3 <= 1}, the
steepest-edge baseline commits to an edge of slope 49/3 although an edge of
slope 25 exists; the true steepest-edge rule escapes with one degenerate
pivot and takes the steep edge.
"""

from fractions import Fraction

from simplex01 import pyramid, standardize, steepest_edges, solve, make_rule
from simplex01.engine import factorize

inst = pyramid()
std = standardize(inst)
apex = (0, 0, 1)

value, dirs = steepest_edges(inst, apex, inst.c)
print(f"oracle: steepest edge-directions at {apex}: {dirs} with c.g/||g||_1 = {value}")

bad_basis = (1, 2)  # basic {x2, x3}
f = factorize(std, bad_basis)


def proj(j):
    return tuple(int(e) for e in f.direction_full(j)[:3])


print(f"\nforced start basis {{x2, x3}}, BFS projects to {f.vertex()}")
print("improving pivot directions (projected):",
      [proj(j) for j, r in sorted(f.reduced_costs.items()) if r > 0])

rule = make_rule("steepest1")
rule.setup(f)
j = rule.entering(f)
g = proj(j)
norm = sum(abs(e) for e in g)
print(f"\nsteepest-edge baseline enters column {j}: direction {g}, "
      f"slope {Fraction(f.reduced_costs[j], norm)}  <-- not steepest!")

trace = solve(std, make_rule("true-steepest"), bad_basis)
print("\ntrue steepest-edge run from the same basis:")
for step in trace.steps:
    kind = "degenerate" if step.degenerate else "nondegenerate"
    print(f"  enter {step.entering}, leave {step.leaving}: {kind}, "
          f"now at {step.vertex_after}, objective {step.objective_after}")
print(f"optimum {trace.optimal} with value {trace.optimal_value}; "
      f"the one nondegenerate move is along {dirs[0]}, the steepest edge.")
