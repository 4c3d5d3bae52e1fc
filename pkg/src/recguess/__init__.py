"""Guessing linear recurrence relations of multidimensional tables.

Berlekamp–Massey–Sakata (``bms``), its adaptive variant (``abms``) and
adaptive scalar FGLM (``asfglm``) over exact fields, with counters for
table queries and field operations.
"""

from __future__ import annotations

from .abms import abms, abms_reduced
from .algebra import FieldError, OpCounter, PrimeField, RationalField, parse_field
from .asfglm import IterationLimit, RunSfglm, asfglm, asfglm_tweaked, no_bound_mode
from .bms import bms, should_skip, stopping_bound
from .monomial import Ordering, drl, lex, parse_monomial, parse_ordering
from .relation import Relation, inter_reduce, is_reduced
from .result import GuessResult
from .staircase import Staircase, border, stabilize
from .table import (FamilyError, InconsistentTable, MissingEntry, TableOracle, builtin,
                    closed_form, explicit, family, from_gb, load_table)

__all__ = [
    "FamilyError", "FieldError", "GuessResult", "InconsistentTable", "IterationLimit",
    "MissingEntry", "OpCounter", "Ordering", "PrimeField", "RationalField", "Relation",
    "RunSfglm", "Staircase", "TableOracle", "abms", "abms_reduced", "asfglm", "asfglm_tweaked",
    "bms", "border", "builtin", "closed_form", "drl", "explicit", "family", "from_gb",
    "inter_reduce", "is_reduced", "lex", "load_table", "no_bound_mode", "parse_field",
    "parse_monomial", "parse_ordering", "should_skip", "stabilize", "stopping_bound",
]
