"""Degeneracy at work: the Birkhoff polytope of 4x4 permutation matrices.

24 vertices, dimension 9, 16 variables, and every vertex sits in many
bases, so degenerate pivots are the norm.  The lexicographic leaving rule
keeps every run finite; the slim bound (at most 4 by sparsity: every
permutation has exactly 4 ones) beats the dimension bound (at most 9) here.
"""

from simplex01 import birkhoff, random_objective
from simplex01.harness import compare_rules, comparison_csv

inst = birkhoff(4, c=random_objective(16, seed=51))
print(f"{inst.name}: n = {inst.n} variables, objective {inst.c}\n")

results = compare_rules(inst, ["dantzig", "steepest1", "true-steepest",
                               "slim-shadow", "ordered-shadow"], check_oracle=True)
print(comparison_csv(results))

for r in results:
    rep = r.report
    failed = [c.name for c in rep.oracle_checks if not (c.passed or c.skipped)]
    print(f"{rep.rule:>15}: {rep.degenerate} degenerate pivots survived, "
          f"oracle checks {'all pass' if not failed else 'FAILED: ' + ', '.join(failed)}")
