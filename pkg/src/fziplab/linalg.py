"""Exact linear algebra over the supported fields.

Three conventions used throughout the package:

* subspaces are stored as row-reduced row spans (lists of row vectors);
* operator matrices act on column vectors;
* integer lattices (used to build modules with guaranteed integral action
  matrices) keep echelon bases with positive, not necessarily unit, pivots.

Dense elimination over a prime field is routed through the selected kernel
backend; every other field goes through the generic single-pivot loop.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from . import _kernels
from .fields import Field, PrimeField

__all__ = [
    "rref",
    "rank",
    "matmul",
    "identity",
    "invert",
    "nullspace",
    "express_in_rows",
    "row_space",
    "subspace_sum",
    "in_span",
    "complement_in",
    "IntLattice",
    "IntCSC",
    "csc_from_coldict",
    "csc_compose",
    "csc_mod",
]


def rref(rows: Sequence[Sequence[Any]], field: Field):
    """Reduced row echelon form; returns (rows, pivot_columns), zero rows dropped."""
    if isinstance(field, PrimeField):
        return _kernels.rref_mod_p([list(r) for r in rows], field.p)
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(mat)):
            if not field.is_zero(mat[i][c]):
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = field.inv(mat[r][c])
        mat[r] = [field.mul(inv, x) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not field.is_zero(mat[i][c]):
                f = mat[i][c]
                mat[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows, field: Field) -> int:
    return len(rref(rows, field)[0])


def matmul(a, b, field: Field):
    """Dense product (lists of rows)."""
    if isinstance(field, PrimeField):
        return _kernels.matmul_mod_p([list(r) for r in a], [list(r) for r in b], field.p)
    if not a:
        return []
    if len(a[0]) != len(b):
        raise ValueError("dimension mismatch")
    ncols = len(b[0]) if b else 0
    zero = field.zero()
    out = []
    for row in a:
        acc = [zero] * ncols
        for x, brow in zip(row, b):
            if field.is_zero(x):
                continue
            for j, y in enumerate(brow):
                if not field.is_zero(y):
                    acc[j] = field.add(acc[j], field.mul(x, y))
        out.append(acc)
    return out


def identity(n: int, field: Field):
    zero, one = field.zero(), field.one()
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def invert(mat, field: Field):
    """Inverse of a square matrix, or None if singular."""
    n = len(mat)
    aug = [list(row) + ident_row for row, ident_row in zip(mat, identity(n, field))]
    red, pivots = rref(aug, field)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in red]


def nullspace(rows, field: Field, ncols: int | None = None):
    """Basis (as rows) of {x : M x = 0} where the equations are ``rows``."""
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty equation set")
        ncols = len(rows[0])
    red, pivots = rref(rows, field)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    zero, one = field.zero(), field.one()
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            vec[pc] = field.neg(red[r][fc])
        basis.append(vec)
    return basis


def express_in_rows(basis_rows, vector, field: Field):
    """Coefficients writing ``vector`` as a combination of ``basis_rows``, or None."""
    if not basis_rows:
        return [] if all(field.is_zero(x) for x in vector) else None
    ncols = len(vector)
    k = len(basis_rows)
    # solve c * B = v by eliminating on the transpose
    aug = [[basis_rows[i][j] for i in range(k)] + [vector[j]] for j in range(ncols)]
    red, pivots = rref(aug, field)
    coeffs = [field.zero()] * k
    for r, pc in enumerate(pivots):
        if pc == k:
            return None  # inconsistent
        coeffs[pc] = red[r][k]
    # verify (guards against a rank-deficient basis)
    for j in range(ncols):
        acc = field.zero()
        for i in range(k):
            acc = field.add(acc, field.mul(coeffs[i], basis_rows[i][j]))
        if not field.is_zero(field.sub(acc, vector[j])):
            return None
    return coeffs


def row_space(rows, field: Field):
    return rref(rows, field)[0]


def subspace_sum(a_rows, b_rows, field: Field):
    return rref(list(a_rows) + list(b_rows), field)[0]


def in_span(rref_rows, vector, field: Field) -> bool:
    v = list(vector)
    for row in rref_rows:
        pc = next((j for j, x in enumerate(row) if not field.is_zero(x)), None)
        if pc is None:
            continue
        if not field.is_zero(v[pc]):
            f = v[pc]
            v = [field.sub(x, field.mul(f, y)) for x, y in zip(v, row)]
    return all(field.is_zero(x) for x in v)


def complement_in(sub_rows, super_rows, field: Field):
    """Rows of ``super_rows`` extending ``sub_rows`` to a basis of their joint span."""
    current = rref(list(sub_rows), field)[0]
    chosen = []
    for row in super_rows:
        if not in_span(current, row, field):
            chosen.append(list(row))
            current = rref(current + [list(row)], field)[0]
    return chosen


class IntLattice:
    """A lattice in Z^n kept as an echelon basis with positive pivots.

    ``add`` folds a vector in and reports whether the lattice grew or any
    basis row changed; ``coords`` writes a lattice vector in the current
    basis with guaranteed integer coefficients.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    def _pivot_of(self, v):
        for j, x in enumerate(v):
            if x:
                return j
        return None

    def add(self, vector) -> bool:
        v = [int(x) for x in vector]
        changed = False
        i = 0
        while True:
            pj = self._pivot_of(v)
            if pj is None:
                return changed
            while i < len(self.rows) and self.pivots[i] < pj:
                i += 1
            if i == len(self.rows) or self.pivots[i] > pj:
                if v[pj] < 0:
                    v = [-x for x in v]
                self.rows.insert(i, v)
                self.pivots.insert(i, pj)
                return True
            row = self.rows[i]
            a, b = row[pj], v[pj]
            if b % a == 0:
                q = b // a
                v = [x - q * y for x, y in zip(v, row)]
            else:
                g, s, t = _xgcd(a, b)
                new_row = [s * x + t * y for x, y in zip(row, v)]
                v = [(a // g) * y - (b // g) * x for x, y in zip(row, v)]
                self.rows[i] = new_row
                changed = True

    def coords(self, vector) -> list[int]:
        v = [int(x) for x in vector]
        out = [0] * len(self.rows)
        for i, (row, pj) in enumerate(zip(self.rows, self.pivots)):
            if v[pj]:
                if v[pj] % row[pj]:
                    raise ValueError("vector is not in the lattice")
                q = v[pj] // row[pj]
                out[i] = q
                v = [x - q * y for x, y in zip(v, row)]
        if any(v):
            raise ValueError("vector is not in the lattice")
        return out

    @property
    def dim(self) -> int:
        return len(self.rows)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass
class IntCSC:
    """Column-compressed integer sparse matrix."""

    nrows: int
    ncols: int
    indptr: list[int]
    rows: list[int]
    data: list[int]

    @property
    def nnz(self) -> int:
        return len(self.rows)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.data)

    def col(self, j: int) -> list[tuple[int, int]]:
        return [
            (self.rows[t], self.data[t]) for t in range(self.indptr[j], self.indptr[j + 1])
        ]

    def max_abs(self) -> int:
        return max((abs(v) for v in self.data), default=0)

    def to_dense(self):
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j in range(self.ncols):
            for t in range(self.indptr[j], self.indptr[j + 1]):
                out[self.rows[t]][j] = self.data[t]
        return out


def csc_from_coldict(nrows: int, ncols: int, cols: dict[int, dict[int, int]]) -> IntCSC:
    indptr = [0]
    rows: list[int] = []
    data: list[int] = []
    for j in range(ncols):
        entries = cols.get(j)
        if entries:
            for r in sorted(entries):
                v = entries[r]
                if v:
                    rows.append(r)
                    data.append(v)
        indptr.append(len(rows))
    return IntCSC(nrows, ncols, indptr, rows, data)


def csc_compose(a: IntCSC, b: IntCSC) -> IntCSC:
    """Exact integer product a @ b."""
    if a.ncols != b.nrows:
        raise ValueError("dimension mismatch")
    indptr, rows, data = _kernels.sparse_compose_int(
        a.nrows, a.ncols, a.indptr, a.rows, a.data, b.ncols, b.indptr, b.rows, b.data
    )
    return IntCSC(a.nrows, b.ncols, list(indptr), list(rows), list(data))


def csc_mod(a: IntCSC, p: int) -> IntCSC:
    indptr = [0]
    rows: list[int] = []
    data: list[int] = []
    for j in range(a.ncols):
        for t in range(a.indptr[j], a.indptr[j + 1]):
            v = a.data[t] % p
            if v:
                rows.append(a.rows[t])
                data.append(v)
        indptr.append(len(rows))
    return IntCSC(a.nrows, a.ncols, indptr, rows, data)
