"""Adaptive BMS: BMS that skips the tests whose failure would push the
staircase beyond a known bound ``d``.

Each relation remembers the shifts at which it was skipped; it is not
tested again at a multiple of one of them.  The reported shift of a
relation is the largest ``v`` with ``v * LM(g)`` visited, whether or not
every such test was performed; ``skipped_shifts`` lists the gaps.
"""

from __future__ import annotations

from .bms import run_bms, should_skip
from .monomial import Monomial, Ordering
from .relation import inter_reduce
from .result import GuessResult
from .table import TableOracle

__all__ = ["abms", "abms_reduced", "inter_reduce", "should_skip"]


def abms(table: TableOracle, ordering: Ordering, d: int | None, stop: Monomial,
         degree_cap: int | None = None, skip_memory: bool = True,
         trace: bool = False, fast: bool | None = None) -> GuessResult:
    """Run adaptive BMS up to ``stop``.

    ``d=None`` disables skipping (plain BMS).  For LEX the visited
    monomials are capped at degree ``2d - 1`` unless ``degree_cap`` is given.
    """
    if d is not None and d < 1:
        raise ValueError("d must be at least 1")
    return run_bms(table, ordering, stop, d=d, degree_cap=degree_cap,
                   skip_memory=skip_memory, trace=trace, fast=fast,
                   algorithm="abms" if d is not None else "bms")


def abms_reduced(table: TableOracle, ordering: Ordering, d: int | None, stop: Monomial,
                 degree_cap: int | None = None, each_step: bool = True,
                 trace: bool = False) -> GuessResult:
    """Adaptive BMS returning a reduced basis, inter-reducing after every
    update (``each_step``) or only once at the end."""
    res = run_bms(table, ordering, stop, d=d, degree_cap=degree_cap,
                  reduce_each_step=each_step, trace=trace, algorithm="abms-reduced")
    res.relations = inter_reduce(res.relations)
    return res
