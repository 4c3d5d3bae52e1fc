# adaptive BMS on the table with a single 1 at (4, 1)
# prints the visited grid: . tested, x every relation skipped
from __future__ import annotations

from recguess import abms, builtin, parse_ordering

order = parse_ordering("drl:y<x")
res = abms(builtin("delta"), order, 14, order.parse("x^9"))

for g in res.relations:
    print(g.format(), "shift", order.format(g.shift),
          "skipped at", [order.format(s) for s in g.skipped_shifts])

skipped = set(res.fully_skipped_monomials)
top = 9
for j in range(top, -1, -1):
    row = []
    for i in range(top + 1):
        if i + j > top:
            row.append(" ")
        else:
            row.append("x" if (i, j) in skipped else ".")
    print(f"y^{j} " + " ".join(row))
print("    " + " ".join(str(i) for i in range(top + 1)))
print(len(skipped), "fully skipped monomials,", res.skipped_tests, "skipped tests,",
      res.queries, "queries")
