"""Monomials as exponent tuples, monomial orderings and ordered enumeration.

A monomial in ``n`` variables is a plain ``tuple`` of ``n`` nonnegative
integers; slot ``k`` is the exponent of ``ordering.variables[k]``.  With the
usual names the slots follow ``x, y, z``, so the table index ``u_{i,j}`` is
the monomial ``x^i*y^j`` whatever precedence the ordering uses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Sequence

Monomial = tuple

_STANDARD_NAMES = ("x", "y", "z", "w", "v", "u", "t", "s")

LT, EQ, GT = -1, 0, 1


def one(n: int) -> Monomial:
    return (0,) * n


def degree(m: Monomial) -> int:
    return sum(m)


def mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(i + j for i, j in zip(a, b))


def divides(a: Monomial, b: Monomial) -> bool:
    """True when ``a`` divides ``b``."""
    return all(i <= j for i, j in zip(a, b))


def strictly_divides(a: Monomial, b: Monomial) -> bool:
    return a != b and divides(a, b)


def quotient(b: Monomial, a: Monomial) -> Monomial:
    """``b / a``; raises ``ValueError`` unless ``a`` divides ``b``."""
    q = tuple(j - i for i, j in zip(a, b))
    if any(e < 0 for e in q):
        raise ValueError(f"{a} does not divide {b}")
    return q


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(i, j) for i, j in zip(a, b))


def divisors(m: Monomial) -> Iterator[Monomial]:
    def rec(k):
        if k == len(m):
            yield ()
            return
        for rest in rec(k + 1):
            for e in range(m[k] + 1):
                yield (e,) + rest

    return rec(0)


def monomials_of_degree(n: int, deg: int) -> Iterator[Monomial]:
    if n == 1:
        yield (deg,)
        return
    for e in range(deg, -1, -1):
        for rest in monomials_of_degree(n - 1, deg - e):
            yield (e,) + rest


def _default_slots(names: Sequence[str]) -> tuple[str, ...]:
    if all(v in _STANDARD_NAMES for v in names):
        return tuple(v for v in _STANDARD_NAMES if v in names)
    indexed = [re.fullmatch(r"([A-Za-z_]+)(\d+)", v) for v in names]
    if all(indexed) and len({m.group(1) for m in indexed}) == 1:
        return tuple(sorted(names, key=lambda v: int(re.search(r"\d+$", v).group())))
    return tuple(names)


@dataclass(frozen=True)
class Ordering:
    """A monomial ordering.

    ``precedence`` lists slot indices from the largest variable to the
    smallest.  ``weights`` (WEIGHT only) is indexed by slot.
    """

    kind: str
    variables: tuple
    precedence: tuple
    weights: tuple | None = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        kind = self.kind.lower()
        object.__setattr__(self, "kind", kind)
        if kind not in ("drl", "lex", "weight"):
            raise ValueError(f"unknown ordering kind {self.kind!r}")
        n = len(self.variables)
        if sorted(self.precedence) != list(range(n)):
            raise ValueError("precedence must be a permutation of the variable slots")
        if kind == "weight":
            if self.weights is None or len(self.weights) != n:
                raise ValueError("weight ordering needs one weight per variable")
            if any(w <= 0 for w in self.weights):
                raise ValueError("weights must be positive")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def degree_compatible(self) -> bool:
        return self.kind != "lex"

    def wdeg(self, m: Monomial) -> int:
        """Weighted degree (plain degree unless WEIGHT)."""
        if self.kind == "weight":
            return sum(w * e for w, e in zip(self.weights, m))
        return sum(m)

    def key(self, m: Monomial) -> tuple:
        """Sort key: ``a < b`` in the ordering iff ``key(a) < key(b)``."""
        k = self._cache.get(m)
        if k is not None:
            return k
        prec = self.precedence
        if self.kind == "lex":
            k = tuple(m[i] for i in prec)
        else:
            # reverse lexicographic tie-break on the smallest variable first
            k = (sum(m),) + tuple(-m[i] for i in reversed(prec[1:]))
            if self.kind == "weight":
                k = (self.wdeg(m),) + k
        self._cache[m] = k
        return k

    def compare(self, a: Monomial, b: Monomial) -> int:
        if len(a) != len(b):
            raise ValueError("monomials in different numbers of variables")
        ka, kb = self.key(a), self.key(b)
        return LT if ka < kb else GT if ka > kb else EQ

    def less(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) < self.key(b)

    def max(self, *ms: Monomial) -> Monomial:
        return max(ms, key=self.key)

    def min(self, *ms: Monomial) -> Monomial:
        return min(ms, key=self.key)

    def sort(self, ms) -> list:
        return sorted(ms, key=self.key)

    # text ------------------------------------------------------------------
    def spec(self) -> str:
        chain = "<".join(self.variables[i] for i in reversed(self.precedence))
        if self.kind == "weight":
            ws = ",".join(str(self.weights[i]) for i in range(self.nvars))
            return f"weight:{ws}:{chain}"
        return f"{self.kind}:{chain}"

    def format(self, m: Monomial) -> str:
        return format_monomial(m, self.variables)

    def parse(self, text: str) -> Monomial:
        return parse_monomial(text, self.variables)

    def __str__(self):
        return self.spec()


def parse_ordering(spec: str) -> Ordering:
    """Parse ``drl:y<x``, ``lex:z<y<x`` or ``weight:w1,w2:y<x``.

    Weights are listed in slot order (``x`` first for the usual names).
    """
    parts = spec.strip().split(":")
    kind = parts[0].lower()
    if kind == "weight":
        if len(parts) != 3:
            raise ValueError(f"bad weight ordering spec {spec!r}")
        chain, wtext = parts[2], parts[1]
    else:
        if len(parts) != 2:
            raise ValueError(f"bad ordering spec {spec!r}")
        chain, wtext = parts[1], None
    names = [v.strip() for v in chain.split("<")]
    if any(not v for v in names) or len(set(names)) != len(names):
        raise ValueError(f"bad variable chain in {spec!r}")
    largest_first = names[::-1]
    slots = _default_slots(largest_first)
    precedence = tuple(slots.index(v) for v in largest_first)
    weights = None
    if wtext is not None:
        weights = tuple(int(w) for w in wtext.split(","))
    return Ordering(kind, slots, precedence, weights)


def drl(nvars: int) -> Ordering:
    """DRL with ``x > y > z ...`` on the standard names."""
    names = _STANDARD_NAMES[:nvars]
    return Ordering("drl", names, tuple(range(nvars)))


def lex(nvars: int) -> Ordering:
    names = _STANDARD_NAMES[:nvars]
    return Ordering("lex", names, tuple(range(nvars)))


def format_monomial(m: Monomial, variables: Sequence[str]) -> str:
    parts = []
    for v, e in zip(variables, m):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) if parts else "1"


def parse_monomial(text: str, variables: Sequence[str]) -> Monomial:
    text = text.replace(" ", "")
    exps = [0] * len(variables)
    if text == "1":
        return tuple(exps)
    for factor in text.split("*"):
        name, _, power = factor.partition("^")
        if name not in variables:
            raise ValueError(f"unknown variable {name!r} in monomial {text!r}")
        try:
            e = int(power) if power else 1
        except ValueError:
            raise ValueError(f"bad exponent in monomial {text!r}") from None
        if e < 0:
            raise ValueError(f"negative exponent in monomial {text!r}")
        exps[variables.index(name)] += e
    return tuple(exps)


# ---------------------------------------------------------------------------
# enumeration


def _weighted_upto(weights: Sequence[int], bound: int) -> Iterator[Monomial]:
    n = len(weights)

    def rec(k, left):
        if k == n:
            yield ()
            return
        for e in range(left // weights[k] + 1):
            for rest in rec(k + 1, left - e * weights[k]):
                yield (e,) + rest

    return rec(0, bound)


def _universe(ord: Ordering, wbound: int) -> list:
    """Monomials of (weighted) degree at most ``wbound``, sorted."""
    if ord.kind == "weight":
        ms = list(_weighted_upto(ord.weights, wbound))
    else:
        ms = [m for d in range(wbound + 1) for m in monomials_of_degree(ord.nvars, d)]
    return sorted(ms, key=ord.key)


def enumerate_monomials(ord: Ordering, stop: Monomial, degree_cap: int | None = None) -> list:
    """All monomials ``m <= stop`` in increasing order (within ``degree_cap``)."""
    if len(stop) != ord.nvars:
        raise ValueError("stop monomial has the wrong number of variables")
    if ord.degree_compatible:
        ms = _universe(ord, ord.wdeg(stop))
    else:
        if degree_cap is None:
            raise ValueError("a degree cap is required for a non-degree ordering")
        ms = _universe(Ordering("drl", ord.variables, ord.precedence), degree_cap)
        ms.sort(key=ord.key)
    if degree_cap is not None:
        ms = [m for m in ms if sum(m) <= degree_cap]
    kstop = ord.key(stop)
    return [m for m in ms if ord.key(m) <= kstop]


def successor(m: Monomial, ord: Ordering, degree_cap: int | None = None) -> Monomial | None:
    """The least monomial greater than ``m``; ``None`` past the degree cap."""
    km = ord.key(m)
    if degree_cap is not None:
        univ = _universe(Ordering("drl", ord.variables, ord.precedence), degree_cap)
        later = [t for t in univ if ord.key(t) > km]
        return min(later, key=ord.key) if later else None
    if not ord.degree_compatible:
        raise ValueError("a degree cap is required for a non-degree ordering")
    w = ord.wdeg(m)
    limit = w + max(ord.weights or (1,))
    while True:
        cands = [t for t in _universe(ord, limit) if ord.key(t) > km]
        if cands:
            return min(cands, key=ord.key)
        limit += 1


def iterate_monomials(ord: Ordering, stop: Monomial | None = None,
                      degree_cap: int | None = None) -> Iterator[Monomial]:
    """Lazy increasing stream of monomials (unbounded if both limits are None)."""
    if stop is not None:
        yield from enumerate_monomials(ord, stop, degree_cap)
        return
    if not ord.degree_compatible:
        if degree_cap is None:
            raise ValueError("a degree cap is required for a non-degree ordering")
        yield from sorted(_universe(Ordering("drl", ord.variables, ord.precedence), degree_cap),
                          key=ord.key)
        return
    w = 0
    while degree_cap is None or w <= degree_cap:
        if ord.kind == "weight":
            layer = [t for t in _weighted_upto(ord.weights, w) if ord.wdeg(t) == w]
        else:
            layer = list(monomials_of_degree(ord.nvars, w))
        yield from sorted(layer, key=ord.key)
        w += 1
