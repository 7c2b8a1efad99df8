"""Pure-Python kernel backend.

Same contracts as the compiled backend in ``_fast.pyx``; this one is the
fallback selected when the extension is unavailable (or when the
``FZIPLAB_PURE`` environment variable is set).  Integer work here uses
Python's unbounded ints, so there is no overflow to guard against.
"""

from __future__ import annotations

BACKEND = "reference"


def rref_mod_p(rows, p):
    """Row-reduce an integer matrix mod p.

    Returns (reduced_rows, pivot_columns) with unit pivots and zeros above
    and below each pivot; zero rows are dropped.  ``rows`` is not modified.
    """
    mat = [[int(x) % p for x in row] for row in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(mat)):
            if mat[i][c] % p:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = pow(mat[r][c], p - 2, p)
        if inv != 1:
            mat[r] = [(x * inv) % p for x in mat[r]]
        row_r = mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                row_i = mat[i]
                for j in range(c, ncols):
                    if row_r[j]:
                        row_i[j] = (row_i[j] - f * row_r[j]) % p
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def matmul_mod_p(a, b, p):
    """Dense product of two integer matrices mod p (lists of lists)."""
    if not a:
        return []
    inner = len(a[0])
    if inner != len(b):
        raise ValueError("dimension mismatch")
    ncols = len(b[0]) if b else 0
    bt = [[row[j] for row in b] for j in range(ncols)]
    out = []
    for row in a:
        out_row = []
        for col in bt:
            s = 0
            for x, y in zip(row, col):
                if x and y:
                    s += x * y
            out_row.append(s % p)
        out.append(out_row)
    return out


def sparse_compose_int(m, k, a_indptr, a_rows, a_data, n, b_indptr, b_rows, b_data):
    """Exact integer product A @ B of two CSC sparse matrices.

    A is m-by-k, B is k-by-n, both in column-compressed form (indptr per
    column, row indices, values).  Returns (indptr, rows, data) for the
    m-by-n product in the same form, rows sorted within each column.
    Accepts any indexable int sequences; arithmetic is exact.
    """
    out_indptr = [0]
    out_rows = []
    out_data = []
    for j in range(n):
        acc = {}
        for t in range(b_indptr[j], b_indptr[j + 1]):
            i = b_rows[t]
            v = int(b_data[t])
            if not v:
                continue
            for s in range(a_indptr[i], a_indptr[i + 1]):
                r = a_rows[s]
                acc[r] = acc.get(r, 0) + v * int(a_data[s])
        for r in sorted(acc):
            v = acc[r]
            if v:
                out_rows.append(r)
                out_data.append(v)
        out_indptr.append(len(out_rows))
    return out_indptr, out_rows, out_data
