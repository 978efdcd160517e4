"""Compare the compiled and pure-Python F2 elimination kernels.

    python benchmarks/bench_f2.py [--sizes 64,256,1024] [--repeat 5]

Also times one end-to-end workload (the A(1) Ext chart) under each backend
and checks that both backends give identical answers.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from tatedescent.f2 import matrix as fm
from tatedescent.f2 import _pykernel


def _rows(n: int, seed: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.getrandbits(n) for _ in range(n)]


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _ext_workload():
    from tatedescent.catalog import unit
    from tatedescent.stable import ExtCalculator, _PREBUILT, _RESOLVERS

    _RESOLVERS.clear()
    _PREBUILT.clear()
    one = unit("A1")
    return ExtCalculator(one, one, (0, 10)).dims((0, 24))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="64,256,1024")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    try:
        from tatedescent.f2 import _bitkernel
    except ImportError:
        print("compiled kernel not built; only the Python kernel is available")
        _bitkernel = None
    print(f"{'n':>6} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for n in (int(x) for x in args.sizes.split(",")):
        rows = _rows(n, n)
        tp = _best(lambda: _pykernel.rref_rows(list(rows), n), args.repeat)
        if _bitkernel is None:
            print(f"{n:>6} {tp:>10.4f} {'-':>10} {'-':>8}")
            continue
        tc = _best(lambda: _bitkernel.rref_rows(list(rows), n), args.repeat)
        if _pykernel.rref_rows(list(rows), n) != _bitkernel.rref_rows(list(rows), n):
            print(f"backends disagree at n={n}", file=sys.stderr)
            return 2
        print(f"{n:>6} {tp:>10.4f} {tc:>10.4f} {tp / tc:>8.1f}")
    results = {}
    for name in ("python", "cython"):
        if name == "cython" and _bitkernel is None:
            continue
        fm.set_kernel(name)
        t0 = time.perf_counter()
        results[name] = _ext_workload()
        print(f"Ext_A(1)(1,1), s<=10, t<=24 [{name}]: {time.perf_counter() - t0:.3f} s")
    if len(results) == 2 and results["python"] != results["cython"]:
        print("end-to-end results differ between backends", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
