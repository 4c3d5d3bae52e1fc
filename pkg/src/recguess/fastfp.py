"""Vectorized prime-field kernels for the benchmark-sized runs.

Polynomials are stored as sorted arrays of packed monomial keys with
coefficient arrays; table terms live in a dense grid next to the
oracle's cache.  Every routine increments the field counter exactly as
the generic code path does, so counts do not depend on the backend (the
test suite checks this).
"""

from __future__ import annotations

import numpy as np

from .algebra import PrimeField
from .monomial import Monomial, Ordering
from .multihankel import HankelElimination
from .relation import Relation
from .table import TableOracle

MAX_GRID = 1 << 24


def supported(field) -> bool:
    return isinstance(field, PrimeField) and field.p < (1 << 31)


class PackingOverflow(RuntimeError):
    pass


class FpContext:
    """Packing of exponent tuples into integers plus a dense term grid."""

    def __init__(self, table: TableOracle, ordering: Ordering, max_exponent: int):
        self.table = table
        self.F = table.field
        self.p = self.F.p
        self.ordering = ordering
        self.n = table.nvars
        base = 1
        while base <= max_exponent:
            base *= 2
        self.base = base
        if base**self.n > MAX_GRID:
            raise PackingOverflow("grid too large for the packed representation")
        self.weights = np.array([base ** (self.n - 1 - i) for i in range(self.n)], dtype=np.int64)
        self.vals = np.zeros(base**self.n, dtype=np.int64)
        self.have = np.zeros(base**self.n, dtype=bool)
        for idx, v in table.cache.items():
            if max(idx) < base:
                k = self.pack(idx)
                self.vals[k] = v
                self.have[k] = True

    def pack(self, m: Monomial) -> int:
        k = 0
        for e in m:
            if e >= self.base:
                raise PackingOverflow(f"exponent {e} exceeds the packing base")
            k = k * self.base + e
        return k

    def unpack(self, k: int) -> Monomial:
        out = []
        for _ in range(self.n):
            k, e = divmod(k, self.base)
            out.append(e)
        return tuple(reversed(out))

    def _fetch(self, idx: np.ndarray) -> np.ndarray:
        miss = ~self.have[idx]
        if miss.any():
            q = self.table.query
            for k in np.unique(idx[miss]).tolist():
                self.vals[k] = q(self.unpack(k))
                self.have[k] = True
        return self.vals[idx]

    def bracket(self, g: "FpRelation", v: Monomial):
        g.check_room(v)
        vals = self._fetch(g.keys + self.pack(v))
        k = len(g.keys)
        ops = self.F.ops
        ops.multiplications += k
        ops.additions += k - 1
        return int((g.coefs * vals).sum() % self.p)

    def one(self) -> "FpRelation":
        z = (0,) * self.n
        return FpRelation(self, np.array([0], dtype=np.int64), np.array([1], dtype=np.int64),
                          z, z)

    def to_relation(self, g: "FpRelation") -> Relation:
        terms = {self.unpack(k): c for k, c in zip(g.keys.tolist(), g.coefs.tolist())}
        r = Relation(self.F, self.ordering, terms, g.lm)
        r.skipped_shifts = list(g.skipped_shifts)
        r.shift = g.shift
        return r


class FpRelation:
    """Packed polynomial; mirrors the arithmetic methods of :class:`Relation`."""

    __slots__ = ("ctx", "keys", "coefs", "lm", "maxexp", "skipped_shifts", "shift")

    def __init__(self, ctx, keys, coefs, lm, maxexp):
        self.ctx = ctx
        self.keys = keys
        self.coefs = coefs
        self.lm = lm
        self.maxexp = maxexp
        self.skipped_shifts: list = []
        self.shift = None

    def check_room(self, t: Monomial):
        base = self.ctx.base
        if any(a + b >= base for a, b in zip(self.maxexp, t)):
            raise PackingOverflow("shifted support leaves the packing grid")

    @property
    def lc(self):
        i = int(np.searchsorted(self.keys, self.ctx.pack(self.lm)))
        return int(self.coefs[i])

    def times_monomial(self, t: Monomial) -> "FpRelation":
        self.check_room(t)
        return FpRelation(self.ctx, self.keys + self.ctx.pack(t), self.coefs,
                          tuple(a + b for a, b in zip(self.lm, t)),
                          tuple(a + b for a, b in zip(self.maxexp, t)))

    def scaled(self, c) -> "FpRelation":
        self.ctx.F.ops.multiplications += len(self.keys)
        return FpRelation(self.ctx, self.keys, self.coefs * c % self.ctx.p, self.lm, self.maxexp)

    def monic(self) -> "FpRelation":
        lc = self.lc
        if lc == 1:
            return self
        return self.scaled(self.ctx.F.inv(lc))

    def minus(self, c, t: Monomial, other: "FpRelation") -> "FpRelation":
        ctx = self.ctx
        p = ctx.p
        other.check_room(t)
        okeys = other.keys + ctx.pack(t)
        ocoefs = (p - other.coefs * c % p) % p
        keys = np.concatenate((self.keys, okeys))
        coefs = np.concatenate((self.coefs, ocoefs))
        uniq, inv = np.unique(keys, return_inverse=True)
        summed = np.zeros(len(uniq), dtype=np.int64)
        np.add.at(summed, inv, coefs)
        summed %= p
        ops = ctx.F.ops
        ops.multiplications += len(okeys)
        ops.additions += len(keys) - len(uniq)
        nz = summed != 0
        maxexp = tuple(max(a, b + s) for a, b, s in zip(self.maxexp, other.maxexp, t))
        return FpRelation(ctx, uniq[nz], summed[nz], self.lm, maxexp)

    def format(self) -> str:
        return self.ctx.to_relation(self).format()


class FpHankelElimination(HankelElimination):
    """:class:`HankelElimination` with numpy dot products over F_p."""

    def __init__(self, table: TableOracle):
        super().__init__(table)
        self.p = table.field.p
        self.Lmat = np.zeros((16, 16), dtype=np.int64)

    def _reduce(self, col):
        F, p = self.F, self.p
        k = len(col)
        y = np.zeros(k, dtype=np.int64)
        z = np.zeros(k, dtype=np.int64)
        dinv = self.dinv
        L = self.Lmat
        for i in range(k):
            c = col[i]
            if i:
                c = (c - int(L[i, :i] @ y[:i] % p)) % p
            y[i] = c
            z[i] = c * dinv[i] % p
        ops = F.ops
        if k:
            ops.multiplications += k * (k - 1) // 2 + k
            ops.additions += (k - 1) * (k - 2) // 2 + (k - 1)
        return y, z

    def _back(self, z):
        F, p = self.F, self.p
        n = len(z)
        a = np.zeros(n, dtype=np.int64)
        L = self.Lmat
        nnz = 0
        for k in range(n - 1, -1, -1):
            col = L[k + 1:n, k]
            nnz += int(np.count_nonzero(col))
            a[k] = (int(z[k]) - int(col @ a[k + 1:n] % p)) % p
        F.ops.multiplications += nnz
        F.ops.additions += nnz
        return [(-int(v)) % p for v in a]

    def schur(self, t):
        F, p = self.F, self.p
        y, z = self._reduce(self._column(t))
        corner = self.table.query(tuple(2 * e for e in t))
        if len(y):
            F.ops.multiplications += len(y)
            F.ops.additions += len(y)
            sc = (corner - int(y @ z % p)) % p
        else:
            sc = corner
        return sc, z

    def try_extend(self, t):
        sc, z = self.schur(t)
        if sc != 0:
            k = len(self.S)
            if k >= self.Lmat.shape[0]:
                grown = np.zeros((2 * k, 2 * k), dtype=np.int64)
                grown[:k, :k] = self.Lmat[:k, :k]
                self.Lmat = grown
            self.Lmat[k, :k] = z
            self.S.append(t)
            self.L.append(None)
            self.dinv.append(self.F.inv(sc))
            return True, None
        return False, self._back(z)

    def relation(self, t, alpha, ordering):
        return super().relation(t, [int(a) for a in alpha], ordering)
