"""Compare the compiled kernels against the pure-Python reference backend.

Runs the three kernel entry points on representative workloads: dense
mod-p row reduction and matrix products at a few sizes, and exact sparse
integer composition on differentials taken from a real standard complex.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from fziplab._kernels import reference  # noqa: E402

try:
    from fziplab._kernels import _fast
except ImportError:
    _fast = None


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _dense(rng, nrows, ncols, p):
    return [[rng.randrange(p) for _ in range(ncols)] for _ in range(nrows)]


def _sparse_pairs():
    """Consecutive differentials of a mid-sized standard complex."""
    from fziplab.catalog import builtin
    from fziplab.complexes import std_complex
    from fziplab.gmodule import weyl_module
    from fziplab.parabolic import ParabolicData
    from fziplab.rootdata import Vec

    datum, mu = builtin("C2-siegel")
    pdata = ParabolicData(datum, mu)
    fws = datum.fundamental_weights()
    lam = Vec(tuple(fws[0] + fws[1]))
    cx = std_complex(pdata, weyl_module(datum, lam), 6)
    pairs = []
    for j in range(2, cx.length + 1):
        a, b = cx.diffs[j - 2], cx.diffs[j - 1]
        pairs.append((f"d{j - 1}.d{j} ({a.nrows}x{a.ncols} @ {b.nrows}x{b.ncols})", a, b))
    return pairs


def _row(label, t_ref, t_fast):
    if t_fast is None:
        print(f"{label:<44} {t_ref * 1e3:>10.2f} ms {'n/a':>12}")
    else:
        print(
            f"{label:<44} {t_ref * 1e3:>10.2f} ms {t_fast * 1e3:>9.2f} ms "
            f"{t_ref / t_fast:>6.1f}x"
        )


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="timing repetitions, best kept")
    parser.add_argument("--seed", type=int, default=5)
    args = parser.parse_args(argv)

    if _fast is None:
        print("compiled backend not importable; timing the reference backend only")
    print(f"{'workload':<44} {'reference':>13} {'compiled':>12} {'ratio':>6}")

    rng = random.Random(args.seed)
    p = 11
    for nrows, ncols in ((60, 120), (150, 150), (240, 200)):
        mat = _dense(rng, nrows, ncols, p)
        t_ref = _time(lambda: reference.rref_mod_p([r[:] for r in mat], p), args.repeat)
        t_fast = (
            _time(lambda: _fast.rref_mod_p([r[:] for r in mat], p), args.repeat)
            if _fast
            else None
        )
        _row(f"rref_mod_p {nrows}x{ncols} (p={p})", t_ref, t_fast)

    for n in (80, 160):
        a = _dense(rng, n, n, p)
        b = _dense(rng, n, n, p)
        t_ref = _time(lambda: reference.matmul_mod_p(a, b, p), args.repeat)
        t_fast = _time(lambda: _fast.matmul_mod_p(a, b, p), args.repeat) if _fast else None
        _row(f"matmul_mod_p {n}x{n} (p={p})", t_ref, t_fast)

    for label, a, b in _sparse_pairs():
        call_args = (a.nrows, a.ncols, a.indptr, a.rows, a.data, b.ncols, b.indptr, b.rows, b.data)
        t_ref = _time(lambda: reference.sparse_compose_int(*call_args), args.repeat)
        if _fast:
            import numpy as np

            np_args = (
                a.nrows,
                a.ncols,
                np.asarray(a.indptr, dtype=np.int64),
                np.asarray(a.rows, dtype=np.int64),
                np.asarray(a.data, dtype=np.int64),
                b.ncols,
                np.asarray(b.indptr, dtype=np.int64),
                np.asarray(b.rows, dtype=np.int64),
                np.asarray(b.data, dtype=np.int64),
            )
            t_fast = _time(lambda: _fast.sparse_compose_int(*np_args), args.repeat)
        else:
            t_fast = None
        _row(f"sparse_compose_int {label}", t_ref, t_fast)


if __name__ == "__main__":
    main()
