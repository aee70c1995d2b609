"""The slim shadow rule replays the matroid greedy algorithm.

On the independent-set polytope of the uniform matroid U(8,4), starting at
the empty set with v = 1, every slim-shadow step adds the heaviest
remaining positive-weight element.  The vertex path therefore equals the
greedy algorithm's chain of supports, and the step count is
min(rank, #positive weights).
"""

from simplex01 import greedy_matroid_path, random_objective, run_solve, uniform_matroid

inst = uniform_matroid(8, 4, c=random_objective(8, seed="greedy-demo", positive=True))
print(f"{inst.name} with weights {inst.c}\n")

res = run_solve(inst, "slim-shadow")
greedy = greedy_matroid_path(inst, inst.c)


def support(v):
    return "{" + ", ".join(str(i + 1) for i, e in enumerate(v) if e) + "}"


print("slim shadow path :", " -> ".join(support(v) for v in res.vertex_path))
print("greedy chain     :", " -> ".join(support(v) for v in greedy))
print("\nidentical:", list(res.vertex_path) == greedy,
      f"| steps = {res.report.nondegenerate} = min(rank 4, positives {sum(1 for e in inst.c if e > 0)})")
