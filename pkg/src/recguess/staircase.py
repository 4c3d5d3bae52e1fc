"""Staircases (divisor-closed monomial sets), their borders and BMS edges."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .monomial import Monomial, divides, divisors


def _maximal(ms: Iterable[Monomial]) -> tuple:
    gens: list = []
    # a non-maximal element divides a maximal one of larger degree
    for m in sorted(set(ms), key=sum, reverse=True):
        if not any(divides(m, g) for g in gens):
            gens.append(m)
    return tuple(sorted(gens))


class Staircase:
    """A finite divisor-closed set, stored by its maximal elements."""

    __slots__ = ("nvars", "generators", "_elements", "_border")

    def __init__(self, nvars: int, generators: Iterable[Monomial] = ()):
        self.nvars = nvars
        self.generators = _maximal(generators)
        self._elements: frozenset | None = None
        self._border: list | None = None

    @property
    def elements(self) -> frozenset:
        if self._elements is None:
            out = set()
            for g in self.generators:
                if g not in out:
                    out.update(divisors(g))
            self._elements = frozenset(out)
        return self._elements

    def __len__(self):
        return len(self.elements)

    def __contains__(self, m: Monomial) -> bool:
        if self._elements is not None:
            return m in self._elements
        return any(divides(m, g) for g in self.generators)

    def __iter__(self):
        return iter(sorted(self.elements))

    def __eq__(self, other):
        if isinstance(other, Staircase):
            return self.generators == other.generators
        if isinstance(other, (set, frozenset)):
            return self.elements == other
        return NotImplemented

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return f"Staircase({list(self.generators)})"

    def sorted(self, ordering) -> list:
        return ordering.sort(self.elements)

    def border(self) -> list:
        return border(self)

    def max_element(self, ordering) -> Monomial | None:
        if not self.generators:
            return None
        return ordering.max(*self.generators)

    def size_with(self, extra: Iterable[Monomial], limit: int | None = None) -> int:
        """``len(stabilize(self ∪ extra))``; stops counting once above ``limit``."""
        elems = self.elements
        total = len(elems)
        seen = set()
        for e in extra:
            if e in elems:
                continue
            for t in divisors(e):
                if t not in elems and t not in seen:
                    seen.add(t)
                    total += 1
                    if limit is not None and total > limit:
                        return total
        return total


def stabilize(ms: Iterable[Monomial], nvars: int | None = None) -> Staircase:
    ms = list(ms)
    if nvars is None:
        if not ms:
            raise ValueError("nvars is needed for an empty set")
        nvars = len(ms[0])
    return Staircase(nvars, ms)


def border(S: Staircase) -> list:
    """Minimal monomials outside ``S`` for divisibility, sorted by exponent tuple."""
    if S._border is None:
        S._border = _border(S)
    return list(S._border)


def _border(S: Staircase) -> list:
    n = S.nvars
    if not S.generators:
        return [(0,) * n]
    elems = S.elements
    out = set()
    for s in elems:
        for k in range(n):
            m = s[:k] + (s[k] + 1,) + s[k + 1:]
            if m in elems or m in out:
                continue
            if all(m[j] == 0 or (m[:j] + (m[j] - 1,) + m[j + 1:]) in elems for j in range(n)):
                out.add(m)
    return sorted(out)


@dataclass
class EdgeEntry:
    """Edge element ``[h, fail(h)/LM(h)]``; ``h`` is scaled so that it
    evaluates to 1 at its failing shift."""

    relation: object
    ratio: Monomial

    @property
    def fail(self) -> Monomial:
        return tuple(a + b for a, b in zip(self.ratio, self.relation.lm))


def staircase_from_edge(entries: Iterable[EdgeEntry], nvars: int) -> Staircase:
    return Staircase(nvars, [e.ratio for e in entries])
