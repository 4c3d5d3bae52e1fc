from __future__ import annotations

import pytest

from recguess.abms import abms, abms_reduced, should_skip
from recguess.bms import bms, stopping_bound
from recguess.monomial import divides, parse_ordering
from recguess.staircase import Staircase
from recguess.table import builtin, family, staircase_of

from support import random_gb_table

O = parse_ordering("drl:y<x")

DELTA_FULLY_SKIPPED = ["x*y^6", "x^2*y^5", "y^8", "x*y^7", "x^2*y^6", "x^3*y^5", "x^4*y^4",
                       "y^9", "x*y^8", "x^2*y^7", "x^3*y^6", "x^4*y^5", "x^6*y^3"]

# (monomial, relation, remembered, detail): detail is the size for a fresh
# skip and the listed earlier monomials for a remembered one
DELTA_SKIPS = [
    ("x*y^6", "y^2", False, 16), ("x^2*y^5", "y^2", False, 16), ("y^8", "y^2", False, 15),
    ("x*y^7", "y^2", True, ["x*y^6"]), ("x^2*y^6", "y^2", True, ["x*y^6", "x^2*y^5"]),
    ("x^3*y^5", "y^2", True, ["x^2*y^5"]), ("x^4*y^4", "y^2", False, 15),
    ("y^9", "y^2", True, ["y^8"]), ("x*y^8", "y^2", True, ["y^8", "x*y^7"]),
    ("x^2*y^7", "y^2", True, ["x*y^7", "x^2*y^6"]),
    ("x^3*y^6", "y^2", True, ["x^2*y^6", "x^3*y^5"]),
    ("x^4*y^5", "y^2", True, ["x^3*y^5", "x^4*y^4"]), ("x^5*y^4", "y^2", True, ["x^4*y^4"]),
    ("x^6*y^3", "y^2", False, 15), ("x^6*y^3", "x^5", False, 15),
]


def m(text):
    return O.parse(text)


def skip_events(res):
    for entry in res.trace:
        for s in entry["steps"]:
            if s["event"] == "skip":
                yield entry["monomial"], s


def test_binomial_bound_5():
    res = abms(builtin("binomial"), O, 5, m("x^5"))
    ref = bms(builtin("binomial"), O, m("x^5"))
    assert res.polynomials() == ref.polynomials()
    assert [O.format(t) for t in res.fully_skipped_monomials] == ["x*y^4", "x^4*y"]
    assert res.skipped_tests == 6 and res.queries == 19 < ref.queries


def test_binomial_skip_sizes():
    res = abms(builtin("binomial"), O, 5, m("x^5"), trace=True)
    texts = [s["text"] for _, s in skip_events(res)]
    assert len(texts) == 6 and all("raising its size to 7" in t for t in texts)


def test_delta_result():
    res = abms(builtin("delta"), O, 14, m("x^9"))
    assert [(g.format(), O.format(g.shift)) for g in res.relations] == \
        [("y^2", "x^7"), ("x^5", "x^4")]
    assert [O.format(t) for t in res.fully_skipped_monomials] == DELTA_FULLY_SKIPPED
    assert len(Staircase(2, res.staircase.elements)) == 10


def test_delta_skip_trace():
    res = abms(builtin("delta"), O, 14, m("x^6*y^3"), trace=True)
    got = list(skip_events(res))
    assert len(got) == len(DELTA_SKIPS)
    for (mono, step), (mtext, rel, remembered, detail) in zip(got, DELTA_SKIPS):
        assert O.format(mono) == mtext and step["relation"] == rel
        assert step["remembered"] == remembered
        if remembered:
            assert step["text"].startswith(f"We did not test g{step['index'] + 1} in "
                                           + " and ".join(detail) + ".")
        else:
            assert f"raising its size to {detail}." in step["text"]


def test_delta_tests_x3y4():
    res = abms(builtin("delta"), O, 14, m("x^3*y^4"), trace=True)
    last = res.trace[-1]["steps"]
    assert last[0]["event"] == "succeed" and last[0]["relation"] == "y^2"


def test_fib3d_lex():
    L = parse_ordering("lex:z<y<x")
    res = abms(builtin("fib3d"), L, 2, L.parse("x*z"))
    assert sorted(res.polynomials()) == sorted(["z^2 - z - 1", "y - 1", "x - 3*z - 2"])


def test_lex_needs_bound():
    L = parse_ordering("lex:z<y<x")
    with pytest.raises(ValueError):
        abms(builtin("fib3d"), L, None, L.parse("x*z"))


def test_circle_reduced():
    res = abms(builtin("circle"), O, 4, m("y^5"))
    assert [(g.format(), O.format(g.shift)) for g in res.relations] == [
        ("x*y - x - y + 1", "x^2"),
        ("x^2 - 1/3*x*y - y^2 - 5/3*x + 7/3*y - 1/3", "x^2"),
        ("y^3 - 1/2*x*y - 3*y^2 + 1/2*x + 7/2*y - 3/2", "y^2"),
    ]
    red = abms_reduced(builtin("circle"), O, 4, m("y^5"))
    assert red.polynomials() == ["x*y - x - y + 1", "x^2 - y^2 - 2*x + 2*y",
                                 "y^3 - 3*y^2 + 3*y - 1"]
    once = abms_reduced(builtin("circle"), O, 4, m("y^5"), each_step=False)
    assert once.polynomials() == red.polynomials()


def test_should_skip_reexported():
    from recguess.bms import should_skip as inner
    assert should_skip is inner


def test_to_json_has_skip_stats():
    j = abms(builtin("binomial"), O, 5, m("x^5")).to_json()
    assert j["skipped_tests"] == 6 and j["fully_skipped_monomials"] == ["x*y^4", "x^4*y"]


def random_case(seed):
    return random_gb_table(200 + seed, O, 2, 2 + seed % 7, spread=3 + seed % 4)


@pytest.mark.parametrize("seed", range(25))
def test_unbounded_is_bms(seed):
    table, gb, stair = random_case(seed)
    stop = stopping_bound(Staircase(2, stair), [g.lm for g in gb], O)
    a = abms(table.fresh(), O, None, stop)
    b = bms(table.fresh(), O, stop)
    assert [(g.terms, g.shift) for g in a.relations] == [(g.terms, g.shift) for g in b.relations]
    assert a.queries == b.queries and a.staircase.elements == b.staircase.elements


@pytest.mark.parametrize("seed", range(25))
def test_exact_bound_matches_bms(seed):
    table, gb, stair = random_case(seed)
    stop = stopping_bound(Staircase(2, stair), [g.lm for g in gb], O)
    a = abms(table.fresh(), O, len(stair), stop)
    b = bms(table.fresh(), O, stop)
    assert a.lms == b.lms == {g.lm for g in gb}
    assert a.staircase.elements == b.staircase.elements
    assert a.queries <= b.queries
    # zero-dimensional: a pure power of every variable
    for k in range(2):
        assert any(all(e == 0 for j, e in enumerate(lm) if j != k) for lm in a.lms)


@pytest.mark.parametrize("name", ["rectangle", "lshape", "simplex", "shape"])
def test_skip_closure_on_families(name):
    """A skip at m persists at every later multiple of m for the same
    relation while the staircase is unchanged."""
    fam = family(name, 2, 5, verify=False)
    stop = stopping_bound(Staircase(2, staircase_of(fam.expected_lms)), fam.expected_lms,
                          fam.ordering)
    res = abms(fam.table, fam.ordering, fam.expected_staircase_size, stop, trace=True)
    skipped: dict = {}
    for entry in res.trace:
        mono = entry["monomial"]
        for s in entry["steps"]:
            if s["event"] in ("succeed", "fail"):
                assert not any(divides(p, mono) for p in skipped.get(s["relation"], ()))
            elif s["event"] == "skip":
                skipped.setdefault(s["relation"], []).append(mono)
            elif s["event"] == "update":
                skipped = {}
