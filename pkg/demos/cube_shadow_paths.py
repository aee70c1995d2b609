"""The two shadow rules on the cube: n steps vs d steps, different roads.

Both rules project the polytope to 2D along (v, c) and walk the upper path
of the shadow.  Slim shadow fixes v = 1 - 2x0 (here the all-ones vector),
so it climbs by greatest immediate gain; ordered shadow weights coordinate
k by (||c||_1 + 2)^k, so it fixes low coordinates first and follows the
f-minimal improving path.  Maximizing c = (1,2,3) on the 3-cube from the
origin reproduces the two canonical paths.
"""

from simplex01 import altchar_path, cube, run_solve, upper_path

inst = cube(3, c=(1, 2, 3))

slim = run_solve(inst, "slim-shadow")
print("slim shadow    :", " -> ".join("".join(map(str, v)) for v in slim.vertex_path),
      f"({slim.report.nondegenerate} steps, bound n = 3)")

ordered = run_solve(inst, "ordered-shadow")
print("ordered shadow :", " -> ".join("".join(map(str, v)) for v in ordered.vertex_path),
      f"({ordered.report.nondegenerate} steps, bound d = 3)")

alt = altchar_path(inst, (0, 0, 0), inst.c)
print("f-minimal path :", " -> ".join("".join(map(str, v)) for v in alt), "(identical by design)")

print("\nshadow geometry of the slim run (v = 1):")
poly = upper_path(inst, (1, 1, 1), inst.c)
print("  projected vertex set:", poly.points)
print("  upper path          :", poly.upper)
print("  the run's projections walk that chain:",
      [(sum(v), sum(a * b for a, b in zip(inst.c, v))) for v in slim.vertex_path])

print("\nreversing the coordinate order changes the road, not the bound:")
rev = run_solve(inst, "ordered-shadow", sigma=(3, 2, 1))
print("ordered, sigma = (3,2,1):",
      " -> ".join("".join(map(str, v)) for v in rev.vertex_path))
