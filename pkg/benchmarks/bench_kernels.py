"""Time the compiled kernels against the numpy fallback.

Imports both implementations directly (the ORBITALE_KERNELS variable
only picks which one the package binds), runs each on identical
inputs and prints a table of median wall times.

Usage: python3 benchmarks/bench_kernels.py [--repeats N] [--wl-size N]
"""

import argparse
import time

import numpy as np

from orbitale import _kernels
from orbitale._kernels import _pykernels

try:
    from orbitale._kernels import _ckernels
except ImportError:
    _ckernels = None


def median_time(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return sorted(times)[len(times) // 2]


def order60_matrix(rng, degree):
    # cycles of lengths 3, 4 and 5, the rest fixed: an order-60 element
    p = np.arange(degree, dtype=np.int32)
    pts = rng.permutation(degree)[:12]
    for cyc in (pts[:3], pts[3:7], pts[7:12]):
        p[cyc] = np.roll(cyc, -1)
    rows = [np.arange(degree, dtype=np.int32)]
    acc = p
    while not np.array_equal(acc, rows[0]):
        rows.append(acc)
        acc = acc[p]
    return np.vstack(rows)


def circulant_5regular(n):
    indptr = np.arange(0, 5 * n + 1, 5, dtype=np.int32)
    v = np.arange(n)
    nbrs = np.column_stack(
        [(v - 2) % n, (v - 1) % n, (v + 1) % n, (v + 2) % n, (v + n // 2) % n]
    )
    return indptr, np.sort(nbrs, axis=1).ravel().astype(np.int32)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--wl-size", type=int, default=6000, help="vertex count for wl_refine")
    ap.add_argument("--coset-degree", type=int, default=266)
    ap.add_argument("--coset-calls", type=int, default=2000, help="min-rep calls per repeat")
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    print(f"package backend: {_kernels.BACKEND}")
    backends = [("py", _pykernels)]
    if _ckernels is not None:
        backends.append(("c", _ckernels))
    else:
        print("compiled backend missing, timing the fallback only")

    h_mat = order60_matrix(rng, args.coset_degree)
    gs = [rng.permutation(args.coset_degree).astype(np.int32) for _ in range(args.coset_calls)]
    indptr, indices = circulant_5regular(args.wl_size)
    colors = np.zeros(args.wl_size, dtype=np.int32)
    colors[0] = 1

    rows = []
    for name, impl in backends:
        t = median_time(lambda: [impl.coset_min_rep(g, h_mat) for g in gs], args.repeats)
        rows.append((f"coset_min_rep x{args.coset_calls} ({h_mat.shape[0]}x{args.coset_degree})", name, t))
        t = median_time(lambda: impl.wl_refine(indptr, indices, colors), args.repeats)
        rows.append((f"wl_refine (n={args.wl_size}, 5-regular)", name, t))

    checks = {}
    for name, impl in backends:
        out, nc = impl.wl_refine(indptr, indices, colors)
        checks[name] = (out.tobytes(), nc)
        rep = impl.coset_min_rep(gs[0], h_mat)
        checks[name] += (rep.tobytes(),)
    if len(checks) == 2:
        assert checks["py"] == checks["c"], "backends disagree"

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  backend  median")
    for label, name, t in rows:
        print(f"{label:<{width}}  {name:<7}  {t * 1000:9.2f} ms")
    by_label = {}
    for label, name, t in rows:
        by_label.setdefault(label, {})[name] = t
    for label, times in by_label.items():
        if len(times) == 2:
            print(f"{label}: c is {times['py'] / times['c']:.1f}x faster")


if __name__ == "__main__":
    main()
