from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from recguess.algebra import (FieldElement, FieldError, PrimeField, RationalField, _is_prime,
                              field_add, field_div, field_mul, field_neg, field_sub, parse_field)

F11 = PrimeField(11)


def test_prime_field_examples():
    F = PrimeField(11)
    assert F.add(10, 4) == 3
    assert F.div(3, 4) == 9
    # brute-force inverse, independent of pow(.., -1, p)
    assert [b for b in range(11) if 4 * b % 11 == 1] == [F.inv(4)]


def test_rational_field_example():
    Q = RationalField()
    assert Q.mul(Fraction(1, 3), 3) == 1


def test_division_by_zero():
    with pytest.raises(FieldError):
        PrimeField(7).inv(0)
    with pytest.raises(FieldError):
        RationalField().div(1, 0)


def test_mixed_fields_rejected():
    a = FieldElement(PrimeField(5), 2)
    b = FieldElement(PrimeField(7), 2)
    with pytest.raises(FieldError):
        field_add(a, b)
    with pytest.raises(FieldError):
        field_mul(a, FieldElement(RationalField(), Fraction(2)))


def test_element_wrappers():
    F = PrimeField(11)
    a, b = FieldElement(F, 3), FieldElement(F, 4)
    assert field_div(a, b) == FieldElement(F, 9)
    assert field_sub(a, b) == FieldElement(F, 10)
    assert field_neg(a) == FieldElement(F, 8)


def test_parse_field():
    assert parse_field("fp:11") == PrimeField(11)
    assert isinstance(parse_field("q"), RationalField)
    for bad in ("fp:12", "fp:x", "zz", "fp:1"):
        with pytest.raises(ValueError):
            parse_field(bad)


def test_format_and_parse():
    Q = RationalField()
    assert Q.format(Fraction(-1, 3)) == "-1/3"
    assert Q.parse("-2/6") == Fraction(-1, 3)
    assert F11.parse("1/2") == 6
    assert F11.signed(10) == -1


def test_op_counting():
    F = PrimeField(101)
    F.add(1, 2)
    F.mul(3, 4)
    F.inv(5)
    F.neg(3)  # free
    F.dot([1, 2, 3], [4, 5, 6])
    assert F.ops.as_dict() == {"multiplications": 4, "additions": 3, "divisions": 1, "total": 8}
    assert F.ops.total == 8


def test_spawn_gives_private_counter():
    F = PrimeField(13)
    G = F.spawn()
    G.mul(2, 3)
    assert F.ops.total == 0 and G.ops.total == 1 and F == G


small = st.integers(min_value=-10**6, max_value=10**6)
rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 10**4)


@given(small, small, small)
def test_prime_field_axioms(a, b, c):
    F = PrimeField(65521)
    a, b, c = F.coerce(a), F.coerce(b), F.coerce(c)
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1


@given(rationals, rationals, rationals)
def test_rational_field_axioms(a, b, c):
    Q = RationalField()
    assert Q.add(Q.add(a, b), c) == Q.add(a, Q.add(b, c))
    assert Q.mul(a, Q.add(b, c)) == Q.add(Q.mul(a, b), Q.mul(a, c))
    if a:
        assert Q.mul(a, Q.inv(a)) == 1


@given(st.lists(st.tuples(small, small), max_size=20))
def test_dot_matches_sum(pairs):
    F = PrimeField(65521)
    xs = [F.coerce(x) for x, _ in pairs]
    ys = [F.coerce(y) for _, y in pairs]
    assert F.dot(xs, ys) == sum(x * y for x, y in zip(xs, ys)) % 65521


@given(st.integers(0, 10**12))
def test_primality_matches_sympy(n):
    assert _is_prime(n) == sympy.isprime(n)


def test_primality_strong_pseudoprimes():
    for n in (3215031751, 341550071728321, 3825123056546413051):
        assert not _is_prime(n)
    assert _is_prime(2**61 - 1)
