from __future__ import annotations

import pytest

from recguess.algebra import RationalField
from recguess.bms import BmsError, bms, combine, should_skip, stopping_bound
from recguess.monomial import divides, enumerate_monomials, parse_ordering, quotient
from recguess.relation import Relation
from recguess.staircase import Staircase, stabilize
from recguess.table import builtin

from support import random_gb_table

O = parse_ordering("drl:y<x")
Q = RationalField()


def m(text):
    return O.parse(text)


def summary(res):
    return [(g.format(), O.format(g.shift)) for g in res.relations]


def test_binomial_to_x3():
    res = bms(builtin("binomial"), O, m("x^3"))
    assert sorted(summary(res)) == sorted([("y^2", "x"), ("x*y - y - 1", "x"),
                                           ("x^2 - 2*x + 1", "x")])
    assert res.queries == 10


def test_binomial_to_x5():
    res = bms(builtin("binomial"), O, m("x^5"))
    assert sorted(summary(res)) == sorted([("x*y - y - 1", "x^3"), ("y^3", "x^2"),
                                           ("x^3 - 3*x^2 + 3*x - 1", "x^2")])


def test_zero_table():
    res = bms(builtin("zero"), O, m("x^3"))
    assert res.polynomials() == ["1"]


def test_non_degree_ordering_rejected():
    with pytest.raises(ValueError):
        bms(builtin("fib3d"), parse_ordering("lex:z<y<x"), (1, 0, 1))


def test_combine_examples():
    t = builtin("binomial")
    g, h = Relation.parse("x*y - 1", Q, O), Relation.parse("y", Q, O)
    assert combine(g, h, m("x"), t).format() == "x*y - y - 1"
    g, h = Relation.parse("x^2 - x", Q, O), Relation.parse("x - 1", Q, O)
    assert combine(g, h, m("y"), t).format() == "x^2 - 2*x + 1"
    with pytest.raises(BmsError):
        combine(h, h, m("y"), t)


def test_stopping_bound_shape():
    d = 5
    stair = stabilize([(0, d - 1)], 2)
    assert stopping_bound(stair, [(0, d), (1, 0)], O) == (0, 2 * d - 1)


def test_should_skip_examples():
    g = Relation.parse("x*y - y - 1", Q, O)
    stair = stabilize([m("y^2"), m("x^2")])
    assert should_skip(stair, g, m("x*y^4"), 5)
    # delta run: g = y^2 at x^3 y^4 stays within 14
    g = Relation.parse("y^2", Q, O)
    stair = stabilize([m("x^4*y")])
    assert not should_skip(stair, g, m("x^3*y^4"), 14)
    g.skipped_shifts = [m("x*y^4")]
    assert should_skip(stair, g, m("x*y^7"), 14)


def test_trace_phrasing():
    res = bms(builtin("binomial"), O, m("x^3"), trace=True)
    lines = [s["text"] for e in res.trace for s in e["steps"]]
    assert "The relation g1=1 fails since [u_{0,0}]=1." in lines
    assert any(t.startswith("Nothing must be done for the relation") for t in lines)


def test_staircase_monotone_and_new_elements():
    res = bms(builtin("binomial"), O, m("x^5"), trace=True)
    prev: set = set()
    for entry in res.trace:
        ups = [s for s in entry["steps"] if s["event"] == "update"]
        if not ups:
            continue
        cur = {O.parse(s) for s in ups[0]["staircase"]}
        assert prev <= cur
        mp = entry["monomial"]
        for s in cur - prev:
            # new staircase elements pair up as divisors of the current monomial
            assert divides(s, mp) and quotient(mp, s) in cur
        prev = cur


@pytest.mark.parametrize("seed", range(8))
def test_relations_valid_up_to_stop(seed):
    table, gb, stair = random_gb_table(100 + seed, O, 2, 3 + seed % 4, spread=4)
    lms = [g.lm for g in gb]
    stop = stopping_bound(Staircase(2, stair), lms, O)
    res = bms(table.fresh(), O, stop)
    visited = enumerate_monomials(O, stop)
    for g in res.relations:
        for mm in visited:
            if divides(g.lm, mm):
                assert table.bracket(g, quotient(mm, g.lm)) == 0
    assert res.lms == set(lms)
