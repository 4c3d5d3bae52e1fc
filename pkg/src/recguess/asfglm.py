"""Adaptive Scalar-FGLM and its tweaked variant.

The staircase grows one monomial at a time: a candidate ``t`` joins ``S``
when the bordered matrix ``H_{S+t,S+t}`` stays invertible, otherwise it is
the leading monomial of a relation ``t + sum alpha_s s``.  Once ``#S``
reaches the bound ``d`` the remaining candidates are solved without any
further rank test.
"""

from __future__ import annotations

import heapq

from . import fastfp
from .monomial import Monomial, Ordering, divides
from .multihankel import HankelElimination
from .result import GuessResult
from .staircase import Staircase
from .table import TableOracle


class RunSfglm(RuntimeError):
    """The candidate set ran out before the staircase reached the bound.

    ``partial`` holds the staircase and relations found so far.
    """

    def __init__(self, partial: GuessResult):
        super().__init__(f"candidates exhausted with a staircase of size "
                         f"{len(partial.staircase)} < {partial.bound}; run sFGLM")
        self.partial = partial


class IterationLimit(RuntimeError):
    """The unbounded variant exceeded its staircase-size safeguard."""

    def __init__(self, partial: GuessResult, limit: int):
        super().__init__(f"staircase grew beyond {limit} without terminating")
        self.partial = partial


def asfglm(table: TableOracle, ordering: Ordering, d: int, trace: bool = False,
           fast: bool | None = None) -> GuessResult:
    if d < 1:
        raise ValueError("d must be at least 1")
    return _run(table, ordering, d, tweaked=False, trace=trace, fast=fast)


def asfglm_tweaked(table: TableOracle, ordering: Ordering, d: int,
                   trace: bool = False, fast: bool | None = None) -> GuessResult:
    """asFGLM whose drained relations must also pass the extra row check."""
    if d < 1:
        raise ValueError("d must be at least 1")
    return _run(table, ordering, d, tweaked=True, trace=trace, fast=fast)


def no_bound_mode(table: TableOracle, ordering: Ordering, max_size: int = 1000,
                  trace: bool = False, fast: bool | None = None) -> GuessResult:
    """asFGLM without early termination; only for linear recurrent tables."""
    return _run(table, ordering, None, tweaked=False, trace=trace, max_size=max_size, fast=fast)


def _run(table, ordering, d, tweaked, trace, max_size=None, fast=None) -> GuessResult:
    n = ordering.nvars
    if table.nvars != n:
        raise ValueError("table and ordering have different numbers of variables")
    key = ordering.key
    fmt = ordering.format
    if fast is None:
        fast = fastfp.supported(table.field)
    elif fast and not fastfp.supported(table.field):
        raise ValueError("the numpy elimination needs a word-sized prime field")
    elim = (fastfp.FpHankelElimination if fast else HankelElimination)(table)
    unit = [tuple(int(j == k) for j in range(n)) for k in range(n)]
    one: Monomial = (0,) * n
    heap = [(key(one), one)]
    queued = {one}
    relations: list = []
    dead: list = []  # leading monomials whose multiples leave L
    log = [] if trace else None
    name = "asfglm-tweaked" if tweaked else ("asfglm" if d is not None else "asfglm-nobound")

    def result(failure=None):
        return GuessResult(name, ordering, relations, Staircase(n, elim.S),
                           table.distinct_queries, table.field.ops, table.field.spec,
                           bound=d, trace=log, failure=failure)

    def pop():
        while heap:
            _, t = heapq.heappop(heap)
            queued.discard(t)
            if not any(divides(g, t) for g in dead):
                return t
        return None

    while True:
        t = pop()
        if t is None:
            break
        before = list(elim.S)
        full, alpha = elim.try_extend(t)
        if not full:
            g = elim.relation(t, alpha, ordering)
            g.shift_set = before + [t]
            relations.append(g)
            dead.append(t)
            if log is not None:
                log.append({"event": "relation", "t": t, "relation": g.format(),
                            "text": f"H_{{S+{fmt(t)}}} is not full rank: relation {g.format()}"})
            continue
        if log is not None:
            log.append({"event": "staircase", "t": t,
                        "text": f"H_{{S+{fmt(t)}}} is full rank: {fmt(t)} joins the staircase"})
        for u in unit:
            m = tuple(a + b for a, b in zip(t, u))
            if m not in queued and not any(divides(g, m) for g in dead):
                queued.add(m)
                heapq.heappush(heap, (key(m), m))
        if max_size is not None and len(elim.S) > max_size:
            raise IterationLimit(result("IterationLimit"), max_size)
        if d is not None and len(elim.S) >= d:
            _drain(elim, ordering, pop, dead, relations, tweaked, log)
            return result()
    if d is None:
        return result()
    raise RunSfglm(result("RunSfglm"))


def _drain(elim, ordering, pop, dead, relations, tweaked, log):
    fmt = ordering.format
    while True:
        t = pop()
        if t is None:
            return
        if tweaked:
            alpha, ok = elim.solve_checked(t)
        else:
            alpha, ok = elim.solve(t), True
        dead.append(t)
        g = elim.relation(t, alpha, ordering)
        if ok:
            g.shift_set = list(elim.S) + ([t] if tweaked else [])
            relations.append(g)
        if log is not None:
            verdict = "" if not tweaked else (" passes its row check" if ok
                                              else " fails its row check and is dropped")
            log.append({"event": "drain", "t": t, "relation": g.format(), "kept": ok,
                        "text": f"solving for {fmt(t)} gives {g.format()}{verdict}"})
