from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from recguess.monomial import (EQ, GT, LT, divides, drl, enumerate_monomials, lex, mul,
                               parse_ordering, quotient, successor)

DRL2 = parse_ordering("drl:y<x")
LEX3 = parse_ordering("lex:z<y<x")


def mono(o, text):
    return o.parse(text)


def texts(o, ms):
    return [o.format(m) for m in ms]


def drl_greater(a, b):
    """Textbook DRL on slots ordered largest variable first."""
    if sum(a) != sum(b):
        return sum(a) > sum(b)
    diff = [x - y for x, y in zip(a, b)]
    nz = [d for d in diff if d]
    return bool(nz) and nz[-1] < 0


def test_compare_examples():
    assert DRL2.compare(mono(DRL2, "y^2"), mono(DRL2, "x*y")) == LT
    assert LEX3.compare(mono(LEX3, "z^3"), mono(LEX3, "y")) == LT
    assert DRL2.compare(mono(DRL2, "x"), mono(DRL2, "x")) == EQ
    assert DRL2.compare(mono(DRL2, "x^2"), mono(DRL2, "y^2")) == GT


def test_divides_and_quotient():
    xy, m = (1, 1), (3, 2)
    assert divides(xy, m) and quotient(m, xy) == (2, 1)
    assert not divides((2, 0), (1, 3))
    assert quotient(m, m) == (0, 0)
    with pytest.raises(ValueError):
        quotient((1, 3), (2, 0))


def test_enumerate_examples():
    assert texts(DRL2, enumerate_monomials(DRL2, mono(DRL2, "x^2"))) == \
        ["1", "y", "x", "y^2", "x*y", "x^2"]
    assert texts(LEX3, enumerate_monomials(LEX3, mono(LEX3, "x*z"), 3)) == \
        ["1", "z", "z^2", "z^3", "y", "y*z", "y*z^2", "y^2", "y^2*z", "y^3", "x", "x*z"]
    assert enumerate_monomials(DRL2, (0, 0)) == [(0, 0)]
    with pytest.raises(ValueError):
        enumerate_monomials(LEX3, (1, 0, 0))


def test_drl_prefix():
    assert texts(DRL2, enumerate_monomials(DRL2, mono(DRL2, "y^3"))) == \
        ["1", "y", "x", "y^2", "x*y", "x^2", "y^3"]


def test_successor_examples():
    assert successor(mono(DRL2, "x^2"), DRL2) == mono(DRL2, "y^3")
    assert successor(mono(DRL2, "y^5"), DRL2) == mono(DRL2, "x*y^4")
    lex2 = parse_ordering("lex:y<x")
    assert successor(mono(lex2, "y^3"), lex2, 3) == mono(lex2, "x")
    assert successor(mono(lex2, "x^3"), lex2, 3) is None


def test_format_parse():
    assert DRL2.format((0, 0)) == "1"
    assert DRL2.format((3, 2)) == "x^3*y^2"
    assert DRL2.parse("x^3*y^2") == (3, 2)
    assert DRL2.parse("y*x") == (1, 1)
    with pytest.raises(ValueError):
        DRL2.parse("w^2")


def test_spec_roundtrip():
    for spec in ("drl:y<x", "lex:z<y<x", "weight:1,2:y<x"):
        assert parse_ordering(spec).spec() == spec


def test_weight_ordering_ties_follow_drl():
    w = parse_ordering("weight:1,1:y<x")
    ms = enumerate_monomials(w, (0, 3))
    assert ms == enumerate_monomials(DRL2, (0, 3))
    w2 = parse_ordering("weight:2,1:y<x")
    assert w2.less((0, 1), (1, 0)) and w2.less((0, 2), (1, 1)) and w2.less((1, 0), (0, 3))


exps2 = st.tuples(st.integers(0, 6), st.integers(0, 6))
exps3 = st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(0, 5))


@given(exps3, exps3, exps3)
def test_multiplicative(a, b, s):
    for o in (drl(3), lex(3), parse_ordering("weight:3,1,2:z<y<x")):
        assert o.compare(a, b) == o.compare(mul(a, s), mul(b, s))


@given(exps3, exps3)
def test_drl_matches_definition(a, b):
    o = drl(3)
    if a != b:
        assert o.less(b, a) == drl_greater(a, b)


@given(exps2)
def test_enumerate_sorted_and_downward_closed(stop):
    ms = enumerate_monomials(DRL2, stop)
    keys = [DRL2.key(m) for m in ms]
    assert keys == sorted(set(keys))
    assert ms[-1] == stop
    universe = [(i, j) for i in range(sum(stop) + 1) for j in range(sum(stop) + 1)]
    below = {m for m in universe if not DRL2.less(stop, m)}
    assert set(ms) == below


@given(st.integers(0, 4))
def test_successor_matches_enumeration(cap):
    lex2 = parse_ordering("lex:y<x")
    ms = enumerate_monomials(lex2, (cap, 0), cap)
    for a, b in zip(ms, ms[1:]):
        assert successor(a, lex2, cap) == b
    ms = enumerate_monomials(DRL2, (cap, 1))
    for a, b in zip(ms, ms[1:]):
        assert successor(a, DRL2) == b
