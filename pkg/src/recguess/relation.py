"""Polynomials used as candidate recurrence relations.

A :class:`Relation` is a sparse polynomial ``{monomial: coefficient}`` with
raw field values as coefficients, its leading monomial under an ordering,
and the bookkeeping the guessing algorithms attach to it (how far it has
been verified, where it failed, which shifts were skipped).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

from .algebra import Field
from .monomial import Monomial, Ordering, divides, mul, quotient


class Relation:
    __slots__ = ("field", "ordering", "terms", "lm", "shift", "fail",
                 "shift_set", "skipped_shifts")

    def __init__(self, field: Field, ordering: Ordering, terms: Mapping[Monomial, object],
                 lm: Monomial | None = None):
        self.field = field
        self.ordering = ordering
        self.terms = {m: c for m, c in terms.items() if c != 0}
        if not self.terms:
            raise ValueError("a relation must be a nonzero polynomial")
        self.lm = lm if lm is not None else max(self.terms, key=ordering.key)
        # None stands for "not failed" / "no shift recorded"
        self.shift: Monomial | None = None
        self.fail: Monomial | None = None
        self.shift_set: list | None = None
        self.skipped_shifts: list = []

    # construction -----------------------------------------------------------
    @classmethod
    def monomial(cls, field: Field, ordering: Ordering, m: Monomial) -> "Relation":
        return cls(field, ordering, {m: field.one}, m)

    @classmethod
    def parse(cls, text: str, field: Field, ordering: Ordering) -> "Relation":
        return cls(field, ordering, parse_polynomial(text, field, ordering))

    # queries -----------------------------------------------------------------
    @property
    def lc(self):
        return self.terms[self.lm]

    @property
    def nvars(self) -> int:
        return len(self.lm)

    def support(self) -> list:
        """Support monomials, largest first."""
        return sorted(self.terms, key=self.ordering.key, reverse=True)

    def coefficient(self, m: Monomial):
        return self.terms.get(m, self.field.zero)

    def same_polynomial(self, other: "Relation") -> bool:
        return self.terms == other.terms

    # arithmetic (counted through the field) ----------------------------------
    def times_monomial(self, t: Monomial) -> "Relation":
        """``t * self``; no field operations."""
        if not any(t):
            return self.copy()
        return Relation(self.field, self.ordering,
                        {mul(m, t): c for m, c in self.terms.items()}, mul(self.lm, t))

    def scaled(self, c) -> "Relation":
        F = self.field
        return Relation(F, self.ordering, {m: F.mul(c, a) for m, a in self.terms.items()},
                        self.lm)

    def monic(self) -> "Relation":
        lc = self.lc
        if lc == self.field.one:
            return self.copy()
        return self.scaled(self.field.inv(lc))

    def minus(self, c, t: Monomial, other: "Relation") -> "Relation":
        """``self - c * t * other``; the result must keep ``self.lm`` as leader."""
        F = self.field
        terms = dict(self.terms)
        for m, a in other.terms.items():
            mt = mul(m, t)
            prod = F.mul(c, a)
            old = terms.get(mt)
            terms[mt] = F.neg(prod) if old is None else F.sub(old, prod)
        out = Relation(F, self.ordering, terms)
        return out

    def copy(self) -> "Relation":
        r = Relation(self.field, self.ordering, self.terms, self.lm)
        r.shift, r.fail, r.shift_set = self.shift, self.fail, self.shift_set
        r.skipped_shifts = list(self.skipped_shifts)
        return r

    # text --------------------------------------------------------------------
    def format(self, signed: bool = False) -> str:
        return format_polynomial(self.terms, self.field, self.ordering, signed)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Relation({self.format()!r})"

    def to_json(self) -> dict:
        F, o = self.field, self.ordering
        out = {
            "polynomial": self.format(),
            "terms": [[list(m), F.format(self.terms[m])] for m in self.support()],
            "lm": o.format(self.lm),
        }
        if self.shift is not None:
            out["shift"] = o.format(self.shift)
        if self.shift_set is not None:
            out["shift_set"] = [o.format(s) for s in self.shift_set]
        if self.fail is not None:
            out["fail"] = o.format(self.fail)
        out["skipped_shifts"] = [o.format(s) for s in self.skipped_shifts]
        return out


def reduce_by(f: Relation, others: Iterable[Relation]) -> Relation:
    """Fully reduce ``f`` modulo monic ``others`` (their leaders must differ from f's)."""
    others = list(others)
    F, key = f.field, f.ordering.key
    terms = dict(f.terms)
    # walk support monomials from the top; reduction only creates smaller ones
    done: set = set()
    while True:
        cands = [m for m in terms if m not in done and m != f.lm]
        if not cands:
            break
        m = max(cands, key=key)
        g = next((g for g in others if divides(g.lm, m)), None)
        if g is None:
            done.add(m)
            continue
        c = terms.pop(m)
        t = quotient(m, g.lm)
        for s, a in g.terms.items():
            if s == g.lm:
                continue
            st = mul(s, t)
            prod = F.mul(c, a)
            old = terms.get(st)
            terms[st] = F.neg(prod) if old is None else F.sub(old, prod)
            if terms[st] == 0:
                del terms[st]
    return Relation(F, f.ordering, terms, f.lm)


def inter_reduce(relations: Iterable[Relation]) -> list:
    """Reduced form of a minimal basis: monic, no support term divisible by another leader."""
    rels = [r.monic() for r in relations]
    out = []
    for i, r in enumerate(rels):
        red = reduce_by(r, rels[:i] + rels[i + 1:])
        red.shift, red.fail, red.shift_set = r.shift, r.fail, r.shift_set
        red.skipped_shifts = list(r.skipped_shifts)
        out.append(red)
    return out


def is_reduced(relations: Iterable[Relation]) -> bool:
    rels = list(relations)
    for r in rels:
        for g in rels:
            if g is r:
                continue
            if any(divides(g.lm, m) for m in r.terms):
                return False
    return True


# ---------------------------------------------------------------------------
# text


def format_polynomial(terms: Mapping, field: Field, ordering: Ordering,
                      signed: bool = False) -> str:
    """Render like ``x^2 - 1/3*x*y - 5``; prime-field residues print as stored
    unless ``signed``."""
    if not terms:
        return "0"
    out = []
    for m in sorted(terms, key=ordering.key, reverse=True):
        c = terms[m]
        if signed:
            c = field.signed(c)
        neg = c < 0
        mag = -c if neg else c
        text_c = str(mag) if isinstance(mag, int) else field.format(mag)
        mono = ordering.format(m)
        if mono == "1":
            body = text_c
        elif text_c == "1":
            body = mono
        else:
            body = f"{text_c}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


_TERM = re.compile(r"([+-]?)([^+-]+)")


def parse_polynomial(text: str, field: Field, ordering: Ordering) -> dict:
    """Parse ``"x*y - y - 1"``, ``"x^2 - 1/3*x*y"`` or ``"2*x^3+4"``."""
    src = text.replace(" ", "")
    if not src:
        raise ValueError("empty polynomial")
    terms: dict = {}
    pos = 0
    for match in _TERM.finditer(src):
        if match.start() != pos:
            raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
        pos = match.end()
        sign, body = match.groups()
        factors = body.split("*")
        coeff = Fraction(1)
        mono_parts = []
        for f in factors:
            if re.fullmatch(r"\d+(/\d+)?", f):
                coeff *= Fraction(f)
            else:
                mono_parts.append(f)
        m = ordering.parse("*".join(mono_parts)) if mono_parts else (0,) * ordering.nvars
        terms[m] = terms.get(m, 0) + (-coeff if sign == "-" else coeff)
    if pos != len(src):
        raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
    out = {m: field.coerce(c) for m, c in terms.items()}
    return {m: c for m, c in out.items() if c != 0}
