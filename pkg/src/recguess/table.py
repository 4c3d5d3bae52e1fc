"""Sequence oracles.

A :class:`TableOracle` hands out terms ``u_i`` of a multidimensional
sequence, remembers every index it has produced and counts the distinct
ones.  Sources are explicit maps, closed formulas, a filler driven by a
Gröbner basis of relations (:func:`from_gb`) and exponential sums over
point sets (the benchmark families of :func:`family`).
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

import numpy as np

from .algebra import Field, PrimeField, RationalField, parse_field
from .monomial import (Monomial, Ordering, divides, drl, lex, monomials_of_degree,
                       parse_ordering)
from .relation import Relation, parse_polynomial


class MissingEntry(KeyError):
    """An explicit table was queried outside its support."""

    def __init__(self, idx):
        super().__init__(idx)
        self.idx = idx

    def __str__(self):
        return f"table has no entry at index {list(self.idx)}"


class InconsistentTable(ValueError):
    """The relations given to :func:`from_gb` disagree at some index."""

    def __init__(self, idx, detail=""):
        super().__init__(f"relations are inconsistent at index {list(idx)}{detail}")
        self.idx = idx


class FamilyError(RuntimeError):
    """No seed produced a table with the requested leading monomials."""


class TableOracle:
    """Memoizing sequence source.

    ``source`` maps an exponent tuple to a value the field can coerce.  The
    oracle's ``field`` carries the operation counter of the run using it;
    :meth:`fresh` gives a copy with an empty cache and a new counter.
    """

    def __init__(self, nvars: int, field: Field, source: Callable[[Monomial], object],
                 name: str = "table"):
        self.nvars = nvars
        self.field = field
        self.source = source
        self.name = name
        self.cache: dict = {}

    @property
    def distinct_queries(self) -> int:
        return len(self.cache)

    def fresh(self) -> "TableOracle":
        return TableOracle(self.nvars, self.field.spawn(), self.source, self.name)

    def query(self, idx: Monomial):
        v = self.cache.get(idx)
        if v is None:
            if len(idx) != self.nvars:
                raise ValueError(f"index {idx} has the wrong number of variables")
            v = self.field.coerce(self.source(idx))
            self.cache[idx] = v
        return v

    __getitem__ = query

    def bracket(self, f: Relation, shift: Monomial):
        """``[shift * f]``: sum of coefficient times the shifted term."""
        coeffs = []
        vals = []
        for m, c in f.terms.items():
            coeffs.append(c)
            vals.append(self.query(tuple(a + b for a, b in zip(m, shift))))
        return self.field.dot(coeffs, vals)

    def grid(self, rows: int, cols: int) -> list:
        """``u_{i,j}`` for a 2D table, without counting queries."""
        return [[self.field.coerce(self.source((i, j))) for j in range(cols)]
                for i in range(rows)]

    def __repr__(self):
        return f"TableOracle({self.name!r}, nvars={self.nvars}, field={self.field.spec})"


# ---------------------------------------------------------------------------
# explicit and closed-form sources


def explicit(entries: Mapping[Monomial, object], field: Field, nvars: int | None = None,
             name: str = "explicit") -> TableOracle:
    data = {tuple(k): field.coerce(v) for k, v in entries.items()}
    if nvars is None:
        if not data:
            raise ValueError("nvars is needed for an empty table")
        nvars = len(next(iter(data)))

    def source(idx):
        try:
            return data[idx]
        except KeyError:
            raise MissingEntry(idx) from None

    return TableOracle(nvars, field, source, name)


def closed_form(fn: Callable[..., object], nvars: int, field: Field | None = None,
                name: str = "closed form") -> TableOracle:
    field = field or RationalField()
    return TableOracle(nvars, field, lambda idx: fn(*idx), name)


def _fib(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def _f11_table() -> TableOracle:
    F = PrimeField(11)
    o = parse_ordering("drl:y<x")
    rels = [Relation.parse(s, F, o) for s in
            ("y^2 - y", "x^2*y - x*y", "x^4 - 6*x^3 + 11*x^2 - 6*x")]
    vals = {(0, 0): 1, (0, 1): 2, (1, 0): 3, (1, 1): 4, (2, 0): 3, (3, 0): -1}
    return from_gb(rels, vals, o, F, name="f11")


_BUILTINS = {
    "binomial": (2, lambda i, j: math.comb(i, j)),
    "delta": (2, lambda i, j: int((i, j) == (4, 1))),
    "expo": (2, lambda i, j: 2**i * 3**j * (i + 1)),
    "circle": (2, lambda i, j: i * i + j * j - 1),
    "fib2d": (2, lambda i, j: _fib(i + 1)),
    "fib3d": (3, lambda i, j, k: _fib(4 * i + k + 1)),
    "zero": (2, lambda i, j: 0),
    "factorial": (2, lambda i, j: math.factorial(i) * math.factorial(j)),
}

BUILTIN_NAMES = tuple(sorted(list(_BUILTINS) + ["f11"]))


def builtin(name: str, field: Field | None = None) -> TableOracle:
    """Sequences of the worked examples.

    ``binomial`` C(i,j); ``delta`` 1 at (4,1) and 0 elsewhere; ``expo``
    2^i 3^j (i+1); ``circle`` i^2+j^2-1; ``fib2d`` F(i+1); ``fib3d``
    F(4i+k+1); ``f11`` the order-6 table over F_11 generated by
    y^2-y, x^2y-xy, x^4-6x^3+11x^2-6x; ``zero``; ``factorial`` i! j!
    (not linear recurrent).
    """
    if name == "f11":
        if field is not None and field != PrimeField(11):
            raise ValueError("the f11 table lives over fp:11")
        return _f11_table()
    if name not in _BUILTINS:
        raise KeyError(f"unknown builtin table {name!r}; known: {', '.join(BUILTIN_NAMES)}")
    nvars, fn = _BUILTINS[name]
    return closed_form(fn, nvars, field or RationalField(), name)


# ---------------------------------------------------------------------------
# tables generated by a Gröbner basis


def staircase_of(lms: Iterable[Monomial]) -> list:
    """Monomials divisible by none of ``lms``; requires a pure power of each variable."""
    lms = list(lms)
    n = len(lms[0])
    caps = []
    for k in range(n):
        pure = [m[k] for m in lms if all(e == 0 for j, e in enumerate(m) if j != k) and m[k] > 0]
        if not pure:
            raise ValueError("leading monomials do not define a finite staircase")
        caps.append(min(pure))
    out = []

    def rec(prefix):
        if len(prefix) == n:
            m = tuple(prefix)
            if not any(divides(l, m) for l in lms):
                out.append(m)
            return
        for e in range(caps[len(prefix)]):
            rec(prefix + [e])

    rec([])
    return out


class _GbFiller:
    def __init__(self, relations, values, ordering, field):
        self.F = field
        self.rels = [r.monic() for r in relations]
        self.memo = dict(values)

    def __call__(self, idx):
        memo = self.memo
        if idx in memo:
            return memo[idx]
        F = self.F
        stack = [idx]
        while stack:
            m = stack[-1]
            if m in memo:
                stack.pop()
                continue
            g = next(g for g in self.rels if divides(g.lm, m))
            t = tuple(a - b for a, b in zip(m, g.lm))
            deps = [(tuple(a + b for a, b in zip(s, t)), c) for s, c in g.terms.items()
                    if s != g.lm]
            missing = [d for d, _ in deps if d not in memo]
            if missing:
                stack.extend(missing)
                continue
            acc = F.zero
            for d, c in deps:
                acc = F.add(acc, F.mul(c, memo[d]))
            memo[m] = F.neg(acc)
            stack.pop()
        return memo[idx]


def from_gb(relations: list, staircase_values: Mapping[Monomial, object], ordering: Ordering,
            field: Field | None = None, check: bool = True, name: str = "from_gb") -> TableOracle:
    """Table whose terms are forced by ``relations`` from the staircase values.

    A term outside the staircase is solved from the first relation whose
    leading monomial divides it.  With ``check`` every relation is verified
    at every shift whose leading index has degree at most
    ``2 * (max staircase degree) + 2``; a nonzero bracket raises
    :class:`InconsistentTable`.
    """
    if not relations:
        raise ValueError("at least one relation is needed")
    field = field or relations[0].field
    work = field.spawn()
    rels = [Relation(work, ordering, {m: work.coerce(c) for m, c in r.terms.items()})
            for r in relations]
    lms = [r.lm for r in rels]
    for a in lms:
        if any(a != b and divides(a, b) for b in lms):
            raise ValueError("leading monomials must form an antichain")
    stair = staircase_of(lms)
    values = {tuple(k): work.coerce(v) for k, v in staircase_values.items()}
    if set(values) != set(stair):
        raise ValueError("staircase values must be given exactly on the staircase "
                         f"{sorted(stair)}")
    filler = _GbFiller(rels, values, ordering, work)
    nvars = len(lms[0])
    if check:
        window = 2 * max(sum(s) for s in stair) + 2
        probe = TableOracle(nvars, work.spawn(), filler)
        for g in filler.rels:
            dg = sum(g.lm)
            for deg in range(window - dg + 1):
                for v in monomials_of_degree(nvars, deg):
                    if probe.bracket(g, v) != 0:
                        raise InconsistentTable(tuple(a + b for a, b in zip(v, g.lm)),
                                                f" (relation {g.format()})")
    return TableOracle(nvars, field, filler, name)


# ---------------------------------------------------------------------------
# exponential sums and benchmark families


class _ExpSum:
    """``u_i = sum_k c_k * p_k^i`` over F_p, vectorized over the points."""

    def __init__(self, points: list, coeffs: list, p: int):
        self.p = p
        self.coords = [np.array([pt[v] for pt in points], dtype=np.int64)
                       for v in range(len(points[0]))]
        self.coeffs = np.array(coeffs, dtype=np.int64)
        self.powers = [[np.ones(len(points), dtype=np.int64)] for _ in self.coords]

    def _pow(self, v, e):
        tab = self.powers[v]
        while len(tab) <= e:
            tab.append(tab[-1] * self.coords[v] % self.p)
        return tab[e]

    def __call__(self, idx):
        acc = self.coeffs
        for v, e in enumerate(idx):
            if e:
                acc = acc * self._pow(v, e) % self.p
        return int(acc.sum() % self.p)


def exponential_sum(points: list, coeffs: list, field: PrimeField,
                    name: str = "exponential sum") -> TableOracle:
    return TableOracle(len(points[0]), field, _ExpSum(points, coeffs, field.p), name)


FAMILIES = ("rectangle", "lshape", "simplex", "shape")


@dataclass
class FamilyTable:
    table: TableOracle
    ordering: Ordering
    expected_lms: set
    expected_staircase_size: int
    seed: int


def family_ordering(name: str, nvars: int) -> Ordering:
    return lex(nvars) if name == "shape" else drl(nvars)


def family_lms(name: str, nvars: int, d: int) -> set:
    if nvars not in (2, 3):
        raise ValueError("families are defined in 2 or 3 variables")
    if d < 2:
        raise ValueError("d must be at least 2")
    unit = [tuple(int(j == k) for j in range(nvars)) for k in range(nvars)]

    def power(k, e):
        return tuple(e * u for u in unit[k])

    if name == "rectangle":
        exps = [d, d // 2, -(-d // 3)][:nvars]
        return {power(k, e) for k, e in enumerate(exps)}
    if name == "lshape":
        out = {power(k, d) for k in range(nvars)}
        for a in range(nvars):
            for b in range(a + 1, nvars):
                out.add(tuple(x + y for x, y in zip(unit[a], unit[b])))
        return out
    if name == "simplex":
        return set(monomials_of_degree(nvars, d))
    if name == "shape":
        return {power(nvars - 1, d)} | {unit[k] for k in range(nvars - 1)}
    raise ValueError(f"unknown family {name!r}; known: {', '.join(FAMILIES)}")


def _distinct(rng, p, count, avoid=()):
    out, seen = [], set(avoid)
    while len(out) < count:
        a = rng.randrange(1, p)
        if a not in seen:
            seen.add(a)
            out.append(a)
    return out


def _family_points(name, nvars, d, p, rng) -> list:
    if name == "rectangle":
        sides = [d, d // 2, -(-d // 3)][:nvars]
        axes = [_distinct(rng, p, s) for s in sides]
        pts = [()]
        for ax in axes:
            pts = [pt + (a,) for pt in pts for a in ax]
        return pts
    if name == "lshape":
        pts = [(0,) * nvars]
        for k in range(nvars):
            for a in _distinct(rng, p, d - 1):
                pts.append(tuple(a if j == k else 0 for j in range(nvars)))
        shift = [rng.randrange(p) for _ in range(nvars)]
        return [tuple((a + s) % p for a, s in zip(pt, shift)) for pt in pts]
    if name == "simplex":
        count = math.comb(d + nvars - 1, nvars)
        pts = set()
        while len(pts) < count:
            pts.add(tuple(rng.randrange(p) for _ in range(nvars)))
        return sorted(pts)
    if name == "shape":
        last = _distinct(rng, p, d)
        return [tuple(rng.randrange(p) for _ in range(nvars - 1)) + (z,) for z in last]
    raise ValueError(f"unknown family {name!r}")


def family(name: str, nvars: int, d: int, field: PrimeField | None = None, seed: int = 0,
           verify: bool = True, max_retries: int = 5) -> FamilyTable:
    """A benchmark table whose ideal of relations has the family's leading monomials.

    The table is an exponential sum over a point configuration whose
    vanishing ideal has the wanted leading monomials (grid, axis cross,
    generic points, points with distinct last coordinates).  With
    ``verify`` the table is checked with asFGLM and regenerated from the
    next seed on a mismatch.
    """
    from .asfglm import RunSfglm, asfglm

    field = field or PrimeField(65521)
    lms = family_lms(name, nvars, d)
    size = len(staircase_of(lms))
    if field.p <= size:
        raise ValueError("the prime must exceed the staircase size")
    ordering = family_ordering(name, nvars)
    for attempt in range(max_retries):
        s = seed + attempt
        rng = random.Random(f"{name}:{nvars}:{d}:{s}")
        pts = _family_points(name, nvars, d, field.p, rng)
        coeffs = [rng.randrange(1, field.p) for _ in pts]
        table = exponential_sum(pts, coeffs, field, name=f"{name}{nvars}d{d}")
        if not verify:
            return FamilyTable(table, ordering, lms, size, s)
        try:
            res = asfglm(table.fresh(), ordering, size)
        except RunSfglm:
            continue
        if {g.lm for g in res.relations} == lms:
            return FamilyTable(table, ordering, lms, size, s)
    raise FamilyError(f"no valid {name} table in {nvars} variables for d={d} "
                      f"after {max_retries} seeds from {seed}")


# ---------------------------------------------------------------------------
# files


def load_table(path_or_obj) -> tuple:
    """Read a JSON table; returns ``(oracle, ordering or None)``.

    Explicit tables: ``{"nvars", "field", "entries": [[[i, j], "value"], ...]}``.
    GB-driven tables: ``{"nvars", "field", "order", "relations": [...],
    "staircase_values": [[[i, j], "value"], ...]}``.
    """
    if isinstance(path_or_obj, (str, bytes)) or hasattr(path_or_obj, "__fspath__"):
        with open(path_or_obj) as fh:
            text = fh.read()
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path_or_obj}: line {exc.lineno} column {exc.colno}: "
                             f"{exc.msg}") from None
    else:
        obj = path_or_obj
    field = parse_field(obj.get("field", "q"))
    nvars = int(obj["nvars"])

    def pairs(key):
        out = {}
        for n, item in enumerate(obj[key]):
            try:
                exps, val = item
                exps = tuple(int(e) for e in exps)
                if len(exps) != nvars:
                    raise ValueError("wrong number of exponents")
                out[exps] = field.coerce(Fraction(str(val)))
            except (TypeError, ValueError) as exc:
                raise ValueError(f"{key}[{n}]: {exc}") from None
        return out

    if "entries" in obj:
        return explicit(pairs("entries"), field, nvars), None
    if "relations" in obj:
        ordering = parse_ordering(obj["order"])
        if ordering.nvars != nvars:
            raise ValueError("ordering and nvars disagree")
        rels = [Relation(field, ordering, parse_polynomial(s, field, ordering))
                for s in obj["relations"]]
        return from_gb(rels, pairs("staircase_values"), ordering, field), ordering
    raise ValueError("table JSON needs either 'entries' or 'relations'")


def dump_explicit(entries: Mapping[Monomial, object], field: Field) -> dict:
    return {
        "nvars": len(next(iter(entries))),
        "field": field.spec,
        "entries": [[list(k), field.format(v)] for k, v in sorted(entries.items())],
    }
