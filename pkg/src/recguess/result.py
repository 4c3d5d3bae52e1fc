"""Common result type of the guessing algorithms."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import OpCounter
from .monomial import Ordering
from .staircase import Staircase


@dataclass
class GuessResult:
    algorithm: str
    ordering: Ordering
    relations: list
    staircase: Staircase
    queries: int
    ops: OpCounter
    field_spec: str = "q"
    bound: int | None = None
    stop: tuple | None = None
    trace: list | None = None
    skipped_tests: int = 0
    fully_skipped_monomials: list = field(default_factory=list)
    failure: str | None = None

    @property
    def basic_ops(self) -> int:
        return self.ops.total

    @property
    def lms(self) -> set:
        return {g.lm for g in self.relations}

    def relation(self, lm) -> object:
        """The relation with leading monomial ``lm`` (a tuple or its text)."""
        if isinstance(lm, str):
            lm = self.ordering.parse(lm)
        for g in self.relations:
            if g.lm == lm:
                return g
        raise KeyError(lm)

    def polynomials(self) -> list:
        return [g.format() for g in self.relations]

    def to_json(self) -> dict:
        o = self.ordering
        out = {
            "algorithm": self.algorithm,
            "ordering": o.spec(),
            "field": self.field_spec,
            "bound": self.bound,
            "stop": o.format(self.stop) if self.stop is not None else None,
            "relations": [g.to_json() for g in self.relations],
            "staircase": [o.format(s) for s in self.staircase.sorted(o)],
            "staircase_size": len(self.staircase),
            "queries": self.queries,
            "basic_ops": self.basic_ops,
            "ops": self.ops.as_dict(),
        }
        if self.algorithm.startswith("abms"):
            out["skipped_tests"] = self.skipped_tests
            out["fully_skipped_monomials"] = [o.format(m) for m in self.fully_skipped_monomials]
        if self.failure:
            out["failure"] = self.failure
        return out
