"""Independent oracles and shared fixtures data for the test suite.

The Buchberger–Möller routine below computes the reduced Gröbner basis of
the vanishing ideal of a point set by plain linear algebra on evaluation
vectors.  It shares no code with the package beyond the ordering key, so
it serves as ground truth for tables built from point sets.
"""

from __future__ import annotations

import functools
import heapq
import random
import time

from recguess.algebra import PrimeField
from recguess.bench import run_sweep
from recguess.monomial import Ordering
from recguess.relation import Relation
from recguess.table import from_gb

P = 65521


def _evaluate(points, m, p):
    out = []
    for pt in points:
        v = 1
        for a, e in zip(pt, m):
            v = v * pow(a, e, p) % p
        out.append(v)
    return out


def vanishing_ideal(points, ordering: Ordering, p: int = P) -> tuple:
    """Reduced monic GB of the ideal of ``points`` and its staircase.

    Returns ``(gb, staircase)`` with ``gb`` a list of ``{monomial: coeff}``
    dicts (coefficients in ``[0, p)``).
    """
    n = ordering.nvars
    key = ordering.key
    rows: list = []  # (pivot, vector, combination)
    stair: list = []
    gb: list = []
    lms: list = []
    one = (0,) * n
    heap = [(key(one), one)]
    seen = {one}
    while heap:
        _, t = heapq.heappop(heap)
        if any(all(a <= b for a, b in zip(g, t)) for g in lms):
            continue
        vec = _evaluate(points, t, p)
        comb = {t: 1}
        for piv, rv, rc in rows:
            c = vec[piv]
            if c:
                vec = [(a - c * b) % p for a, b in zip(vec, rv)]
                for m, a in rc.items():
                    comb[m] = (comb.get(m, 0) - c * a) % p
        comb = {m: a for m, a in comb.items() if a}
        piv = next((i for i, a in enumerate(vec) if a), None)
        if piv is None:
            gb.append(comb)
            lms.append(t)
            continue
        inv = pow(vec[piv], -1, p)
        rows.append((piv, [a * inv % p for a in vec], {m: a * inv % p for m, a in comb.items()}))
        stair.append(t)
        for k in range(n):
            u = tuple(e + (j == k) for j, e in enumerate(t))
            if u not in seen:
                seen.add(u)
                heapq.heappush(heap, (key(u), u))
    return gb, stair


def random_points(rng: random.Random, n: int, count: int, p: int = P, shape: bool = False,
                  spread: int | None = None) -> list:
    """Distinct points; with ``spread`` the coordinates come from a small
    box, which gives non-generic staircases."""
    pts: set = set()
    lasts: set = set()
    while len(pts) < count:
        pt = tuple(rng.randrange(spread or p) for _ in range(n))
        if shape and pt[-1] in lasts:
            continue
        lasts.add(pt[-1])
        pts.add(pt)
    return sorted(pts)


def random_gb_table(seed: int, ordering: Ordering, n: int, count: int, shape: bool = False,
                    p: int = P, spread: int | None = None) -> tuple:
    """A ``from_gb`` table for the vanishing ideal of random points.

    Random staircase values make the table a generic exponential sum over
    the points, so its ideal of relations is the vanishing ideal.
    Returns ``(table, gb_relations, staircase)``.
    """
    rng = random.Random(seed)
    F = PrimeField(p)
    pts = random_points(rng, n, count, p, shape, spread)
    gb, stair = vanishing_ideal(pts, ordering, p)
    rels = [Relation(F, ordering, g) for g in gb]
    values = {s: rng.randrange(1, p) for s in stair}
    return from_gb(rels, values, ordering, F, check=False), rels, stair


def bracket_value(table, rel: Relation, shift) -> int:
    F = table.field
    acc = F.zero
    for m, c in rel.terms.items():
        acc = acc + c * F.coerce(table.source(tuple(a + b for a, b in zip(m, shift))))
    return acc % F.p if isinstance(F, PrimeField) else acc


@functools.lru_cache(maxsize=None)
def sweep(nvars: int) -> tuple:
    """Full benchmark sweep (both algorithms) and its wall time in seconds,
    computed once per session."""
    t0 = time.perf_counter()
    recs = tuple(run_sweep(dims=(nvars,)))
    return recs, time.perf_counter() - t0
