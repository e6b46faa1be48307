"""Timing comparison of the compiled and pure-Python kernel backends.

Runs the three hot kernels (Jacobi eigenvalues, semidefinite Cholesky,
path sampling) on the same inputs through both implementations and
prints a small table.  Usage: python benchmarks/bench_kernels.py
[--size N] [--paths P] [--repeat R]
"""

import argparse
import time

import numpy as np

from sifbm import COMPILED_AVAILABLE, ChainPoint, chain, gram
from sifbm import _kernels_py

if COMPILED_AVAILABLE:
    from sifbm import _kernels as _compiled
else:
    _compiled = None


def best_of(repeat, fn, *args):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--size", type=int, default=48,
                        help="Gram matrix dimension (default 48)")
    parser.add_argument("--paths", type=int, default=2000,
                        help="sample paths per timing (default 2000)")
    parser.add_argument("--repeat", type=int, default=5,
                        help="repetitions, best time kept (default 5)")
    args = parser.parse_args()

    pts = [ChainPoint(0.25 * (k + 1)) for k in range(args.size)]
    g = np.ascontiguousarray(gram(chain(), 0.35, pts).entries)
    lower, ok = _kernels_py.cholesky_semidefinite(g, 1e-13 * args.size * g.max())
    assert ok
    lower = np.ascontiguousarray(lower)

    cases = [
        ("jacobi_eigenvalues",
         lambda mod: mod.jacobi_eigenvalues(g, 50, 1e-13)),
        ("cholesky_semidefinite",
         lambda mod: mod.cholesky_semidefinite(g, 1e-13 * args.size * g.max())),
        ("sample_paths",
         lambda mod: mod.sample_paths(lower, 42, args.paths)),
    ]

    print(f"matrix {args.size}x{args.size}, {args.paths} paths, "
          f"best of {args.repeat}")
    header = f"{'kernel':<24}{'python':>12}{'compiled':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, call in cases:
        t_py = best_of(args.repeat, call, _kernels_py)
        if _compiled is None:
            print(f"{name:<24}{t_py * 1e3:>10.2f}ms{'n/a':>12}{'n/a':>10}")
            continue
        t_c = best_of(args.repeat, call, _compiled)
        a = call(_compiled)
        b = call(_kernels_py)
        if isinstance(a, tuple):
            a, b = a[0], b[0]
        identical = np.array_equal(np.asarray(a), np.asarray(b))
        print(f"{name:<24}{t_py * 1e3:>10.2f}ms{t_c * 1e3:>10.2f}ms"
              f"{t_py / t_c:>9.1f}x  bit-identical={identical}")
    if _compiled is None:
        print("compiled extension not built; python timings only")


if __name__ == "__main__":
    main()
