"""Exact coefficient fields with operation counting.

Two concrete fields are provided: the prime field ``F_p`` (elements are
``int`` residues in ``[0, p-1]``) and the rationals ``Q`` (elements are
:class:`fractions.Fraction`).  Algorithms work on the raw values through the
methods of a :class:`Field` instance, which increments the attached
:class:`OpCounter`.  A run obtains its own counter with :meth:`Field.spawn`,
so independent runs never share counts.

:class:`FieldElement` wraps a value together with its field for the small
public arithmetic API (:func:`field_add` and friends), which checks that
both operands live in the same field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class FieldError(ArithmeticError):
    """Raised on division by zero or mixing elements of different fields."""


@dataclass
class OpCounter:
    multiplications: int = 0
    additions: int = 0
    divisions: int = 0

    @property
    def total(self) -> int:
        return self.multiplications + self.additions + self.divisions

    def reset(self) -> None:
        self.multiplications = self.additions = self.divisions = 0

    def as_dict(self) -> dict:
        return {
            "multiplications": self.multiplications,
            "additions": self.additions,
            "divisions": self.divisions,
            "total": self.total,
        }


_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def _is_prime(n: int) -> bool:
    # Miller-Rabin with these witnesses is exact below 3.3e24
    if n < 2:
        return False
    for q in _WITNESSES:
        if n % q == 0:
            return n == q
    if n >= 3_317_044_064_679_887_385_961_981:
        raise ValueError("prime moduli above 3.3e24 are not supported")
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Base class; subclasses implement the arithmetic on raw values.

    Comparisons and copies are free; every multiplication, addition or
    subtraction and division (an inversion counts as one division) goes
    through the counter.
    """

    spec: str

    def __init__(self, counter: OpCounter | None = None):
        self.ops = counter if counter is not None else OpCounter()

    def spawn(self) -> "Field":
        """Same field, fresh counter."""
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Field) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"{type(self).__name__}({self.spec!r})"

    # raw arithmetic -------------------------------------------------------
    zero = 0
    one = 1

    def coerce(self, value):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def dot(self, xs: Sequence, ys: Sequence):
        raise NotImplementedError

    def format(self, value) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        """Parse ``"3"``, ``"-2"`` or ``"num/den"``."""
        return self.coerce(Fraction(text.strip()))

    def signed(self, value):
        """A small signed representative, used only for display."""
        return value


class PrimeField(Field):
    def __init__(self, p: int, counter: OpCounter | None = None):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        super().__init__(counter)
        self.p = p
        self.spec = f"fp:{p}"

    def spawn(self):
        return PrimeField(self.p)

    def coerce(self, value):
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise FieldError(f"{value} has no image in F_{self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def add(self, a, b):
        self.ops.additions += 1
        return (a + b) % self.p

    def sub(self, a, b):
        self.ops.additions += 1
        return (a - b) % self.p

    def mul(self, a, b):
        self.ops.multiplications += 1
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise FieldError("division by zero")
        self.ops.divisions += 1
        return pow(a, -1, self.p)

    def dot(self, xs, ys):
        n = len(xs)
        if n == 0:
            return 0
        self.ops.multiplications += n
        self.ops.additions += n - 1
        return sum(x * y for x, y in zip(xs, ys)) % self.p

    def signed(self, value):
        return value - self.p if value > self.p // 2 else value

    def format(self, value):
        return str(value)


class RationalField(Field):
    spec = "q"

    def spawn(self):
        return RationalField()

    def coerce(self, value):
        return Fraction(value)

    def add(self, a, b):
        self.ops.additions += 1
        return a + b

    def sub(self, a, b):
        self.ops.additions += 1
        return a - b

    def mul(self, a, b):
        self.ops.multiplications += 1
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise FieldError("division by zero")
        self.ops.divisions += 1
        return 1 / Fraction(a)

    def dot(self, xs, ys):
        n = len(xs)
        if n == 0:
            return Fraction(0)
        self.ops.multiplications += n
        self.ops.additions += n - 1
        return Fraction(sum(x * y for x, y in zip(xs, ys)))

    def format(self, value):
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"


def parse_field(spec: str) -> Field:
    """``"q"`` or ``"fp:<prime>"``."""
    spec = spec.strip().lower()
    if spec in ("q", "qq"):
        return RationalField()
    if spec.startswith("fp:"):
        return PrimeField(int(spec[3:]))
    raise ValueError(f"unknown field spec {spec!r}")


# ---------------------------------------------------------------------------
# element wrapper API


@dataclass(frozen=True, eq=False)
class FieldElement:
    field: Field
    value: object

    def __post_init__(self):
        object.__setattr__(self, "value", self.field.coerce(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.field.spec, self.value))

    def __repr__(self):
        return f"FieldElement({self.field.format(self.value)} in {self.field.spec})"


def _same(a: FieldElement, b: FieldElement) -> Field:
    if a.field != b.field:
        raise FieldError(f"mixed fields {a.field.spec} and {b.field.spec}")
    return a.field


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    F = _same(a, b)
    return FieldElement(F, F.add(a.value, b.value))


def field_sub(a: FieldElement, b: FieldElement) -> FieldElement:
    F = _same(a, b)
    return FieldElement(F, F.sub(a.value, b.value))


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    F = _same(a, b)
    return FieldElement(F, F.mul(a.value, b.value))


def field_div(a: FieldElement, b: FieldElement) -> FieldElement:
    F = _same(a, b)
    return FieldElement(F, F.div(a.value, b.value))


def field_neg(a: FieldElement) -> FieldElement:
    return FieldElement(a.field, a.field.neg(a.value))

