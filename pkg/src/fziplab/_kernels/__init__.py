"""Kernel backend selection.

The compiled extension is preferred when importable; set ``FZIPLAB_PURE=1``
to force the pure-Python reference backend.  Both expose the same three
functions; the dispatcher below also guards the compiled integer-sparse
path against int64 overflow and reroutes those calls to the reference
implementation (which uses unbounded ints).
"""

from __future__ import annotations

import os

from . import reference

_IMPL = reference
if not os.environ.get("FZIPLAB_PURE"):
    try:
        from . import _fast  # type: ignore[attr-defined]

        _IMPL = _fast
    except ImportError:
        pass

BACKEND = _IMPL.BACKEND

# conservative bound: |entry(A@B)| <= max|A| * max|B| * max column count
_INT64_SAFE = 2**62


def backend_name() -> str:
    return BACKEND


def rref_mod_p(rows, p):
    return _IMPL.rref_mod_p(rows, p)


def matmul_mod_p(a, b, p):
    return _IMPL.matmul_mod_p(a, b, p)


def sparse_compose_int(m, k, a_indptr, a_rows, a_data, n, b_indptr, b_rows, b_data):
    if _IMPL is not reference:
        import numpy as np

        max_a = max((abs(int(v)) for v in a_data), default=0)
        max_b = max((abs(int(v)) for v in b_data), default=0)
        if max_a * max_b * max(k, 1) < _INT64_SAFE:
            return _IMPL.sparse_compose_int(
                m,
                k,
                np.asarray(a_indptr, dtype=np.int64),
                np.asarray(a_rows, dtype=np.int64),
                np.asarray(a_data, dtype=np.int64),
                n,
                np.asarray(b_indptr, dtype=np.int64),
                np.asarray(b_rows, dtype=np.int64),
                np.asarray(b_data, dtype=np.int64),
            )
    return reference.sparse_compose_int(
        m, k, a_indptr, a_rows, a_data, n, b_indptr, b_rows, b_data
    )
