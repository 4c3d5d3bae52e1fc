# BMS and adaptive BMS on the binomial table C(i, j)
from __future__ import annotations

from recguess import abms, bms, builtin, parse_ordering
from recguess.cli import format_trace

order = parse_ordering("drl:y<x")

# plain BMS, stopping at x^3 then x^5
for stop in ("x^3", "x^5"):
    res = bms(builtin("binomial"), order, order.parse(stop))
    print(f"bms to {stop}:", [(g.format(), order.format(g.shift)) for g in res.relations],
          "queries", res.queries)

# with the staircase bound d=5 some tests are pointless and get skipped
res = abms(builtin("binomial"), order, 5, order.parse("x^5"), trace=True)
print()
print(format_trace(res, verbosity=1))
