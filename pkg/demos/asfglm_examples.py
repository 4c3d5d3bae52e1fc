# adaptive scalar-FGLM on small tables, including a wrong guess
from __future__ import annotations

from recguess import abms, abms_reduced, asfglm, builtin, inter_reduce, parse_ordering

drl = parse_ordering("drl:y<x")
lex = parse_ordering("lex:z<y<x")

res = asfglm(builtin("expo"), drl, 2)
for g in res.relations:
    print(g.format(), "checked on", [drl.format(s) for s in g.shift_set])

# too small a bound: two of these are not relations of the table
t = builtin("f11")
res = asfglm(t, drl, 4)
for g in res.relations:
    bad = [(i, j) for i in range(4) for j in range(4) if t.bracket(g, (i, j)) != 0]
    print(g.format(signed=True), "fails at" if bad else "holds", bad[:3] if bad else "")

print(asfglm(builtin("fib3d"), lex, 2).polynomials())
print(abms(builtin("fib3d"), lex, 2, lex.parse("x*z")).polynomials())

# circle table i^2 + j^2 - 1: raw relations, then reduced
raw = abms(builtin("circle"), drl, 4, drl.parse("y^5")).relations
print([g.format() for g in raw])
print([g.format() for g in inter_reduce(raw)])
print(abms_reduced(builtin("circle"), drl, 4, drl.parse("y^5")).polynomials())
