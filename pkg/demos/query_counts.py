# queries per staircase element for the benchmark families, 2D, small d
from __future__ import annotations

import sys

from recguess.bench import FIGURE_QUERIES, run_sweep, to_csv

dmax = int(sys.argv[1]) if len(sys.argv) > 1 else 8
recs = run_sweep(dims=(2,), dmax=dmax)

print(f"{'family':10} {'d':>3} {'#S':>4} {'asfglm':>7} {'abms':>7}")
rows: dict = {}
for r in recs:
    rows.setdefault((r.family, r.d, r.staircase_size), {})[r.algorithm] = r.queries
for (fam, d, size), q in rows.items():
    print(f"{fam:10} {d:3} {size:4} {q.get('asfglm', ''):7} {q.get('abms', ''):7}")

print()
for (fam, n, algo, d), want in FIGURE_QUERIES.items():
    if n == 2 and d <= dmax:
        got = next(r.queries for r in recs if (r.family, r.d, r.algorithm) == (fam, d, algo))
        print(f"{fam} {algo} d={d}: {got} (figure {want})")

if len(sys.argv) > 2:
    with open(sys.argv[2], "w") as fh:
        fh.write(to_csv(recs))
