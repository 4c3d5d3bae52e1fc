"""Benchmark harness: query and operation counts over the four table families."""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from .abms import abms
from .algebra import PrimeField, parse_field
from .asfglm import RunSfglm, asfglm
from .bms import bms, stopping_bound
from .monomial import enumerate_monomials, mul
from .staircase import Staircase
from .table import FAMILIES, FamilyError, family, family_lms, staircase_of

ALGORITHMS = ("bms", "abms", "asfglm")

CSV_FIELDS = ("family", "nvars", "d", "algorithm", "field", "seed", "staircase_size", "queries",
              "basic_ops", "queries_per_S", "ops_per_S3", "ops_per_query", "lms_ok", "wall_ms")

# (family, nvars, algorithm) -> largest d plotted
DEFAULT_CAPS = {("rectangle", 2, "abms"): 20, ("rectangle", 3, "abms"): 10,
                ("rectangle", 2, "bms"): 20, ("rectangle", 3, "bms"): 10}


@dataclass
class BenchRecord:
    family: str
    nvars: int
    d: int
    algorithm: str
    field: str
    seed: int
    staircase_size: int
    queries: int
    basic_ops: int
    lms_ok: bool
    wall_ms: float
    n_lms: int = 0
    visited: int = 0
    error: str | None = None
    extra: dict = field(default_factory=dict)

    @property
    def queries_per_S(self) -> float:
        return self.queries / self.staircase_size if self.staircase_size else math.nan

    @property
    def ops_per_S3(self) -> float:
        return self.basic_ops / self.staircase_size**3 if self.staircase_size else math.nan

    @property
    def ops_per_query(self) -> float:
        return self.basic_ops / self.queries if self.queries else math.nan

    def row(self) -> dict:
        return {
            "family": self.family, "nvars": self.nvars, "d": self.d,
            "algorithm": self.algorithm, "field": self.field, "seed": self.seed,
            "staircase_size": self.staircase_size, "queries": self.queries,
            "basic_ops": self.basic_ops,
            "queries_per_S": f"{self.queries_per_S:.6g}",
            "ops_per_S3": f"{self.ops_per_S3:.6g}",
            "ops_per_query": f"{self.ops_per_query:.6g}",
            "lms_ok": str(self.lms_ok).lower(),
            "wall_ms": f"{self.wall_ms:.1f}",
        }


def query_bounds(staircase: Iterable, lms: Iterable, nvars: int) -> dict:
    """Query bounds for a staircase ``S`` and leading monomials ``LM(G)``.

    aBMS: between ``#(S + S+)`` and ``C(n + d_S + d_max, n)``;
    asFGLM: at least ``#(2S)`` and fewer than ``#(2S+)``, with
    ``S+ = S ∪ LM(G)``.
    """
    S = list(staircase)
    lms = list(lms)
    plus = S + lms
    d_S = max(sum(s) for s in S)
    d_max = max(d_S, max(sum(g) for g in lms))
    return {
        "abms_lower": len({mul(a, b) for a in S for b in plus}),
        "abms_upper": math.comb(nvars + d_S + d_max, nvars),
        "asfglm_lower": len({mul(a, b) for a in S for b in S}),
        "asfglm_upper": len({mul(a, b) for a in plus for b in plus}),
    }


def bounds_hold(rec: BenchRecord) -> bool:
    lms = family_lms(rec.family, rec.nvars, rec.d)
    b = query_bounds(staircase_of(lms), lms, rec.nvars)
    if rec.algorithm == "asfglm":
        return b["asfglm_lower"] <= rec.queries < b["asfglm_upper"]
    return b["abms_lower"] <= rec.queries <= b["abms_upper"]


def run_cell(family_name: str, nvars: int, d: int, algorithm: str,
             field_spec: str = "fp:65521", seed: int = 0) -> BenchRecord:
    """Run one algorithm on one family table and check the guessed leading monomials.

    aBMS and BMS get the true staircase size as bound and stop at
    ``s_max * max(g_max, s_max)``.
    """
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    F = parse_field(field_spec)
    if not isinstance(F, PrimeField):
        raise ValueError("benchmark tables live over a prime field")
    fam = family(family_name, nvars, d, F, seed, verify=(family_name == "simplex"))
    ordering = fam.ordering
    size = fam.expected_staircase_size
    lms = fam.expected_lms
    table = fam.table.fresh()
    stair = Staircase(nvars, staircase_of(lms))
    stop = stopping_bound(stair, lms, ordering)
    rec = BenchRecord(family_name, nvars, d, algorithm, F.spec, fam.seed, size, 0, 0,
                      False, 0.0, n_lms=len(lms))
    t0 = time.perf_counter()
    try:
        if algorithm == "asfglm":
            res = asfglm(table, ordering, size)
        elif algorithm == "abms":
            res = abms(table, ordering, size, stop)
            rec.visited = len(enumerate_monomials(ordering, stop, None if ordering.degree_compatible
                                                  else 2 * size - 1))
        else:
            if not ordering.degree_compatible:
                raise ValueError("BMS needs a degree ordering")
            res = bms(table, ordering, stop)
            rec.visited = len(enumerate_monomials(ordering, stop))
    except (RunSfglm, ValueError) as exc:
        rec.error = str(exc)
        rec.wall_ms = (time.perf_counter() - t0) * 1000
        return rec
    rec.wall_ms = (time.perf_counter() - t0) * 1000
    rec.queries = res.queries
    rec.basic_ops = res.basic_ops
    rec.lms_ok = res.lms == lms
    rec.staircase_size = len(res.staircase)
    return rec


def sweep_cells(families: Iterable[str], dims: Iterable[int], dmin: int, dmax: int | None,
                algorithms: Iterable[str], caps: dict | None = None) -> list:
    caps = DEFAULT_CAPS if caps is None else caps
    cells = []
    for fam in families:
        if fam not in FAMILIES:
            raise ValueError(f"unknown family {fam!r}")
        for n in dims:
            top = dmax if dmax is not None else (25 if n == 2 else 15)
            for d in range(dmin, top + 1):
                for algo in algorithms:
                    if algo == "bms" and fam == "shape":
                        continue
                    cap = caps.get((fam, n, algo))
                    if cap is not None and d > cap:
                        continue
                    cells.append((fam, n, d, algo))
    return cells


def _run(args):
    return run_cell(*args)


def run_sweep(families=FAMILIES, dims=(2,), dmin: int = 2, dmax: int | None = None,
              algorithms=("asfglm", "abms"), field_spec: str = "fp:65521", seed: int = 0,
              caps: dict | None = None, workers: int = 1) -> list:
    """Records for the cross product of cells, in a deterministic order."""
    cells = sweep_cells(families, dims, dmin, dmax, algorithms, caps)
    args = [(f, n, d, a, field_spec, seed) for f, n, d, a in cells]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(_run, args))
    return [_run(a) for a in args]


def to_csv(records: Iterable[BenchRecord]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()


def fitted_constants(records: Iterable[BenchRecord]) -> list:
    """``basic_ops`` over the asymptotic cost model, per record.

    BMS/aBMS: ``(#S)^2 * #visited``; asFGLM: ``(#S)^2 * (#S + #LM(G))``.
    """
    out = []
    for r in records:
        S = r.staircase_size
        if r.algorithm == "asfglm":
            model = S * S * (S + r.n_lms)
        else:
            model = S * S * max(r.visited, 1)
        out.append(r.basic_ops / model)
    return out


def constant_check(records: Iterable[BenchRecord], fit_dmax: int = 8) -> dict:
    """Fit the cost-model constant on cells with ``d <= fit_dmax`` and
    compare with the largest constant needed beyond.

    Returns ``{(family, nvars, algorithm): (c_fit, c_after)}``; the bound
    is stable when ``c_after <= c_fit``.
    """
    records = list(records)
    groups: dict = {}
    for r, c in zip(records, fitted_constants(records)):
        fit, after = groups.setdefault((r.family, r.nvars, r.algorithm), ([], []))
        (fit if r.d <= fit_dmax else after).append(c)
    return {k: (max(f, default=0.0), max(a, default=0.0)) for k, (f, a) in groups.items()}


# values read off the query figures, (family, nvars, algorithm, d) -> queries
FIGURE_QUERIES = {
    ("shape", 2, "asfglm", 4): 11,
    ("shape", 2, "abms", 4): 14,
    ("lshape", 2, "asfglm", 4): 30,
    ("lshape", 2, "abms", 4): 36,
    ("rectangle", 2, "asfglm", 4): 25,
    ("rectangle", 2, "abms", 4): 41,
    ("simplex", 2, "asfglm", 4): 36,
    ("simplex", 2, "abms", 4): 36,
    ("lshape", 2, "asfglm", 25): 723,
    ("rectangle", 3, "abms", 4): 207,
    ("lshape", 3, "asfglm", 4): 69,
    ("lshape", 3, "abms", 15): 4557,
    ("shape", 3, "asfglm", 4): 18,
    ("shape", 3, "abms", 4): 18,
}

# operation count read off the operation figure, kept as a reference only
FIGURE_OPS = {("lshape", 2, "asfglm", 4): 215}
