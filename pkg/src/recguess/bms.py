"""Berlekamp–Massey–Sakata, linear-algebra variant, with an optional
staircase-size skip criterion (the adaptive variant lives in ``abms``).

The state after visiting ``m`` is a list ``G`` of relations valid for all
their shifts up to ``m`` and an edge: for each ratio ``fail(h)/LM(h)`` met
so far, one relation ``h`` that failed there, scaled so that its failing
bracket equals 1.  The staircase is the divisor closure of the ratios and
``LM(G)`` is its border.
"""

from __future__ import annotations

import numpy as np

from . import fastfp
from .monomial import Monomial, Ordering, divides, enumerate_monomials, mul, quotient
from .relation import Relation, inter_reduce
from .result import GuessResult
from .staircase import EdgeEntry, Staircase, border
from .table import TableOracle


class BmsError(RuntimeError):
    pass


def combine(f1: Relation, f2: Relation, v: Monomial, table: TableOracle) -> Relation:
    """``f1 - (e1/e2) f2`` where ``e_i = [v f_i]``: both fail with ratio ``v``
    and the result does not fail there."""
    F = table.field
    e2 = table.bracket(f2, v)
    if e2 == 0:
        raise BmsError("second relation does not fail at the given shift")
    e1 = table.bracket(f1, v)
    c = F.div(e1, e2)
    terms = dict(f1.terms)
    for m, a in f2.terms.items():
        terms[m] = F.sub(terms.get(m, F.zero), F.mul(c, a))
    terms = {m: a for m, a in terms.items() if a != 0}
    if not terms:
        raise BmsError("combination is the zero polynomial")
    return Relation(F, f1.ordering, terms)


def stopping_bound(staircase: Staircase, lms, ordering: Ordering) -> Monomial:
    """``s_max * max(g_max, s_max)``: past this monomial the guessed basis is final."""
    s_max = staircase.max_element(ordering)
    g_max = ordering.max(*lms)
    if s_max is None:
        return g_max
    return mul(s_max, ordering.max(g_max, s_max))


def staircase_bound(staircase: Staircase, ordering: Ordering) -> Monomial:
    """``s_max^2``: past this monomial the staircase is final."""
    s_max = staircase.max_element(ordering)
    return mul(s_max, s_max)


def should_skip(staircase: Staircase, g: Relation, m: Monomial, d: int,
                memory: bool = True) -> bool:
    """Whether testing ``g`` at ``m`` may be skipped under the bound ``d``.

    A failure would add ``LM(g)`` and ``v = m/LM(g)`` to the staircase; the
    test is pointless when that pushes the stabilized size past ``d``.  With
    ``memory`` a shift divisible by an earlier skipped shift is skipped too.
    """
    v = quotient(m, g.lm)
    if memory and any(divides(s, v) for s in g.skipped_shifts):
        return True
    if v in staircase:
        return False
    return staircase.size_with((g.lm, v), limit=d) > d


def _skipped_neighbours(m: Monomial, lm: Monomial, skipped: list) -> list:
    """The monomials ``m / x_k`` at which the relation was skipped, for trace text."""
    out = []
    for k in range(len(m)):
        if m[k] == 0:
            continue
        p = m[:k] + (m[k] - 1,) + m[k + 1:]
        if divides(lm, p) and any(divides(s, quotient(p, lm)) for s in skipped):
            out.append(p)
    return out


def _pos(t: Monomial, s: Monomial) -> Monomial:
    return tuple(max(a - b, 0) for a, b in zip(s, t))


def _fmt_bracket(g: Relation, v: Monomial, table_name: str = "u") -> str:
    F = g.field
    parts = []
    for m in g.support():
        idx = ",".join(str(a + b) for a, b in zip(m, v))
        c = F.signed(g.terms[m])
        mag = -c if c < 0 else c
        body = f"{table_name}_{{{idx}}}" if mag == 1 else f"{F.format(mag)}*{table_name}_{{{idx}}}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return "[" + " ".join(parts) + "]"


def run_bms(table: TableOracle, ordering: Ordering, stop: Monomial, *, d: int | None = None,
            degree_cap: int | None = None, skip_memory: bool = True,
            reduce_each_step: bool = False, trace: bool = False,
            algorithm: str | None = None, fast: bool | None = None) -> GuessResult:
    """Shared engine of ``bms`` and ``abms``; ``d=None`` disables skipping.

    ``fast`` selects the packed numpy arithmetic over F_p (default: whenever
    the field allows it and neither tracing nor inter-reduction is asked for).
    Both backends perform and count the same operations.
    """
    n = ordering.nvars
    if table.nvars != n or len(stop) != n:
        raise ValueError("table, ordering and stop monomial disagree on the number of variables")
    if not ordering.degree_compatible and degree_cap is None:
        if d is None:
            raise ValueError("a non-degree ordering needs the bound d (or a degree cap)")
        degree_cap = 2 * d - 1
    F = table.field
    fmt = ordering.format
    key = ordering.key
    visited = enumerate_monomials(ordering, stop, degree_cap)

    if fast is None:
        fast = fastfp.supported(F) and not trace and not reduce_each_step
    ctx = None
    if fast:
        if trace or reduce_each_step or not fastfp.supported(F):
            raise ValueError("the packed backend needs F_p and no trace or inter-reduction")
        top = max(sum(m) for m in visited)
        try:
            ctx = fastfp.FpContext(table, ordering, (2 if ordering.degree_compatible else 4) * top + 4)
        except fastfp.PackingOverflow:
            ctx = None
    bracket = ctx.bracket if ctx is not None else table.bracket
    G: list = [ctx.one() if ctx is not None else Relation.monomial(F, ordering, (0,) * n)]
    edge: list = []
    stair = Staircase(n)
    log: list | None = [] if trace else None
    skipped_tests = 0
    fully_skipped: list = []

    for m in visited:
        failures: dict = {}
        applicable = skipped_here = 0
        step: list | None = [] if log is not None else None
        for i, g in enumerate(G):
            if not divides(g.lm, m):
                if step is not None:
                    step.append({"event": "nothing", "relation": g.format(), "index": i,
                                 "text": f"Nothing must be done for the relation g{i + 1}={g.format()}."})
                continue
            applicable += 1
            v = quotient(m, g.lm)
            if d is not None and should_skip(stair, g, m, d, skip_memory):
                skipped_here += 1
                earlier = list(g.skipped_shifts)
                if not any(divides(s, v) for s in g.skipped_shifts):
                    remembered = False
                    g.skipped_shifts = [s for s in g.skipped_shifts if not divides(v, s)] + [v]
                else:
                    remembered = True
                if step is not None:
                    if remembered:
                        prev = sorted(_skipped_neighbours(m, g.lm, earlier), key=key)
                        where = (" and ".join(fmt(p) for p in prev) if prev
                                 else f"a divisor of {fmt(m)}")
                        why = f"We did not test g{i + 1} in {where}. We skip testing g{i + 1}."
                    else:
                        size = stair.size_with((g.lm, v))
                        why = (f"Should the relation g{i + 1}={g.format()} fail in {fmt(m)}, we "
                               f"would have to add {fmt(g.lm)} and {fmt(v)} in the staircase, "
                               f"raising its size to {size}. We skip testing g{i + 1}.")
                    step.append({"event": "skip", "relation": g.format(), "index": i,
                                 "shift": v, "remembered": remembered, "text": why})
                continue
            e = bracket(g, v)
            if step is not None:
                verdict = "succeeds" if e == 0 else "fails"
                step.append({"event": "succeed" if e == 0 else "fail", "relation": g.format(),
                             "index": i, "shift": v, "value": F.format(F.signed(e)),
                             "text": f"The relation g{i + 1}={g.format()} {verdict} since "
                                     f"{_fmt_bracket(g, v)}={F.format(F.signed(e))}."})
            if e != 0:
                failures[i] = (v, e)
        skipped_tests += skipped_here
        if applicable and skipped_here == applicable:
            fully_skipped.append(m)

        if failures:
            G, edge, stair = _update(G, edge, stair, m, failures, ordering, F, n)
            if reduce_each_step:
                G = inter_reduce(G)
            if step is not None:
                step.append({"event": "update",
                             "staircase": [fmt(s) for s in stair.sorted(ordering)],
                             "relations": [g.format() for g in G],
                             "text": "We update G := {" + ", ".join(g.format() for g in G)
                                     + "} and S := {" + ", ".join(
                                         f"[{en.relation.format()}, {fmt(en.ratio)}]" for en in edge)
                                     + "}."})
        if log is not None:
            log.append({"monomial": m, "text": f"For the monomial {fmt(m)}", "steps": step})

    if ctx is not None:
        G = [ctx.to_relation(g) for g in G]
    # reported shift: the largest v with v * LM(g) visited
    for g in G:
        g.shift = None
        for m in reversed(visited):
            if divides(g.lm, m):
                g.shift = quotient(m, g.lm)
                break
    G = [g if g.lc == F.one else g.monic() for g in G]
    G.sort(key=lambda g: key(g.lm))
    name = algorithm or ("bms" if d is None else "abms")
    return GuessResult(name, ordering, G, stair, table.distinct_queries, F.ops, F.spec,
                       bound=d, stop=stop, trace=log, skipped_tests=skipped_tests,
                       fully_skipped_monomials=fully_skipped)


def _update(G, edge, stair, m, failures, ordering, F, n):
    key = ordering.key
    # candidate edge: old entries plus the new failures scaled to bracket 1
    cand = list(edge)
    for i, (v, e) in failures.items():
        cand.append(EdgeEntry(G[i].scaled(F.inv(e)), v))
    by_ratio: dict = {}
    for en in cand:
        old = by_ratio.get(en.ratio)
        if old is None or key(en.relation.lm) < key(old.relation.lm):
            by_ratio[en.ratio] = en
    new_edge = list(by_ratio.values())
    outside = [v for v, _ in failures.values() if v not in stair]
    new_stair = Staircase(n, stair.generators + tuple(outside)) if outside else stair

    # divisibility lookups are vectorized: rows sorted by the ordering, the
    # first row dividing a monomial is the smallest one
    g_order = sorted(range(len(G)), key=lambda i: key(G[i].lm))
    g_lms = np.array([G[i].lm for i in g_order], dtype=np.int64)
    e_order = e_ratios = None
    new_G = []
    for lm in sorted(border(new_stair), key=key):
        hit = (g_lms <= np.array(lm)).all(axis=1)
        j = g_order[int(hit.argmax())]
        g = G[j]
        t = quotient(lm, g.lm)
        if j in failures and divides(lm, m):
            w = quotient(m, lm)
            if e_order is None:
                e_order = sorted(range(len(edge)), key=lambda i: key(edge[i].fail))
                e_ratios = np.array([edge[i].ratio for i in e_order], dtype=np.int64).reshape(-1, n)
            hit = (e_ratios >= np.array(w)).all(axis=1)
            if not hit.any():
                raise BmsError(f"no edge relation to repair {g.format()} at {ordering.format(m)}")
            h = edge[e_order[int(hit.argmax())]]
            e = failures[j][1]
            q = quotient(h.ratio, w)
            base = g.times_monomial(t)
            new = base.minus(e, q, h.relation)
            if new.lm != lm:
                raise BmsError("combination changed the leading monomial")
            new.skipped_shifts = []
        elif lm == g.lm:
            new = g
        else:
            new = g.times_monomial(t)
            new.skipped_shifts = _minimal([_pos(t, s) for s in g.skipped_shifts])
        new_G.append(new)
    return new_G, new_edge, new_stair


def _minimal(ms):
    ms = list(dict.fromkeys(ms))
    return [a for a in ms if not any(b != a and divides(b, a) for b in ms)]


def bms(table: TableOracle, ordering: Ordering, stop: Monomial, trace: bool = False,
        fast: bool | None = None) -> GuessResult:
    if not ordering.degree_compatible:
        raise ValueError("BMS needs a degree-compatible ordering")
    return run_bms(table, ordering, stop, trace=trace, fast=fast)
