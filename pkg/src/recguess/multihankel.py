"""Multi-Hankel matrices ``H_{U,T}`` and exact elimination on them.

``H_{U,T}[r][c] = u_{U_r + T_c}``.  The square matrices ``H_{S,S}`` met by
asFGLM are symmetric with nonzero leading principal minors, so they admit
an ``L D L^T`` factorization without pivoting.  :class:`HankelElimination`
keeps that factorization and grows it one monomial at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import Field, FieldError
from .monomial import Monomial, mul
from .relation import Relation
from .table import TableOracle


class SingularMatrix(FieldError):
    pass


@dataclass
class MultiHankel:
    rows: list
    cols: list
    entries: list
    field: Field

    @property
    def shape(self):
        return len(self.rows), len(self.cols)

    def transpose(self) -> "MultiHankel":
        return MultiHankel(self.cols, self.rows,
                           [list(r) for r in zip(*self.entries)] if self.entries
                           else [[] for _ in self.cols], self.field)


def build(table: TableOracle, U: Sequence[Monomial], T: Sequence[Monomial]) -> MultiHankel:
    U, T = list(U), list(T)
    entries = [[table.query(mul(r, c)) for c in T] for r in U]
    return MultiHankel(U, T, entries, table.field)


def rank(entries: Sequence[Sequence], field: Field) -> int:
    """Rank by Gaussian elimination (first nonzero pivot), counted in ``field``."""
    F = field
    A = [list(r) for r in entries]
    if not A:
        return 0
    nrows, ncols = len(A), len(A[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        for i in range(r + 1, nrows):
            if A[i][c] == 0:
                continue
            f = F.mul(A[i][c], inv)
            row_r, row_i = A[r], A[i]
            for k in range(c + 1, ncols):
                row_i[k] = F.sub(row_i[k], F.mul(f, row_r[k]))
            row_i[c] = F.zero
        r += 1
        if r == nrows:
            break
    return r


def is_full_rank(H: MultiHankel) -> bool:
    n, m = H.shape
    if n != m:
        raise ValueError("full-rank test needs a square matrix")
    return rank(H.entries, H.field) == n


def solve(entries: Sequence[Sequence], rhs: Sequence, field: Field) -> list:
    """Solve ``A x = rhs`` for square invertible ``A``."""
    F = field
    n = len(entries)
    A = [list(r) + [b] for r, b in zip(entries, rhs)]
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        A[c], A[piv] = A[piv], A[c]
        inv = F.inv(A[c][c])
        A[c] = [F.mul(inv, a) if k > c else (F.one if k == c else a)
                for k, a in enumerate(A[c])]
        for i in range(n):
            if i == c or A[i][c] == 0:
                continue
            f = A[i][c]
            A[i] = [F.sub(a, F.mul(f, b)) if k > c else (F.zero if k == c else a)
                    for k, (a, b) in enumerate(zip(A[i], A[c]))]
    return [A[i][n] for i in range(n)]


class HankelElimination:
    """Incremental ``H_{S,S} = L D L^T`` for a growing staircase ``S``.

    Every operation queries the table only for the entries it needs: the
    column ``u_{s*t}`` (``s`` in ``S``) and, for rank tests, the corner
    ``u_{t*t}``.
    """

    def __init__(self, table: TableOracle):
        self.table = table
        self.F = table.field
        self.S: list = []
        self.L: list = []  # L[k] = strictly lower part of row k
        self.dinv: list = []

    def __len__(self):
        return len(self.S)

    def _column(self, t: Monomial) -> list:
        q = self.table.query
        return [q(mul(s, t)) for s in self.S]

    def _reduce(self, col: list) -> tuple:
        """Forward substitution ``y = L^{-1} col`` and ``z = D^{-1} y``."""
        F = self.F
        y, z = [], []
        for k, c in enumerate(col):
            if k:
                c = F.sub(c, F.dot(self.L[k], y))
            y.append(c)
            z.append(F.mul(c, self.dinv[k]))
        return y, z

    def _back(self, z: list) -> list:
        """``alpha = -L^{-T} z``."""
        F = self.F
        n = len(z)
        a = [F.zero] * n
        for k in range(n - 1, -1, -1):
            acc = z[k]
            for j in range(k + 1, n):
                lj = self.L[j][k]
                if lj != 0:
                    acc = F.sub(acc, F.mul(lj, a[j]))
            a[k] = acc
        return [F.neg(v) for v in a]

    def schur(self, t: Monomial) -> tuple:
        """Schur complement of ``H_{S,S}`` in ``H_{S+t,S+t}`` and the reduced column."""
        F = self.F
        y, z = self._reduce(self._column(t))
        corner = self.table.query(mul(t, t))
        sc = F.sub(corner, F.dot(y, z)) if y else corner
        return sc, z

    def try_extend(self, t: Monomial) -> tuple:
        """Test ``H_{S+t,S+t}``; on full rank append ``t`` and return ``(True, None)``,
        otherwise return ``(False, alpha)`` with ``H_{S,S} alpha = -H_{S,t}``."""
        sc, z = self.schur(t)
        if sc != 0:
            self.S.append(t)
            self.L.append(z)
            self.dinv.append(self.F.inv(sc))
            return True, None
        return False, self._back(z)

    def solve(self, t: Monomial) -> list:
        """``alpha`` with ``H_{S,S} alpha + H_{S,t} = 0``."""
        _, z = self._reduce(self._column(t))
        return self._back(z)

    def solve_checked(self, t: Monomial) -> tuple:
        """``alpha`` and whether the extra row ``t`` also annihilates ``t + S alpha``."""
        sc, z = self.schur(t)
        return self._back(z), sc == 0

    def relation(self, t: Monomial, alpha: list, ordering) -> Relation:
        F = self.F
        terms = {t: F.one}
        for s, a in zip(self.S, alpha):
            if a != 0:
                terms[s] = a
        return Relation(F, ordering, terms, t)


def solve_relation(table: TableOracle, S: Sequence[Monomial], target: Monomial,
                   ordering=None) -> dict:
    """``alpha`` (as ``{s: alpha_s}``) with ``H_{S,S} alpha + H_{S,{target}} = 0``."""
    S = list(S)
    H = build(table, S, S)
    col = build(table, S, [target]).entries
    F = table.field
    alpha = solve(H.entries, [F.neg(r[0]) for r in col], F)
    return dict(zip(S, alpha))


def relation_from_alpha(table: TableOracle, alpha: dict, target: Monomial, ordering) -> Relation:
    F = table.field
    terms = {target: F.one}
    terms.update({s: a for s, a in alpha.items() if a != 0})
    return Relation(F, ordering, terms, target)


def check_relation_row(table: TableOracle, S: Sequence[Monomial], alpha: dict,
                       target: Monomial, row: Monomial | None = None) -> bool:
    """True iff row ``row`` (default ``target``) of ``[H_{.,S} H_{.,target}]``
    annihilates ``(alpha, 1)``, that is ``[row * (target + sum alpha_s s)] = 0``."""
    row = target if row is None else row
    F = table.field
    acc = table.query(mul(row, target))
    for s in S:
        a = alpha.get(s, F.zero)
        if a != 0:
            acc = F.add(acc, F.mul(a, table.query(mul(row, s))))
    return acc == 0
