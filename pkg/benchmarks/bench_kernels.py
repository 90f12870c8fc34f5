"""Compare the compiled row-reduction kernel against the pure-Python one.

Usage: python benchmarks/bench_kernels.py [--sizes 8,16,32] [--repeat 5]

Both kernels run on the same random integer matrices; outputs are checked
for equality before any timing is reported.  Two workloads are timed:
"sparse" matrices with entries in {-1, 0, 1}, which is what the hom and Ext
solvers produce, and "dense" low-rank matrices with small entries.  On dense
inputs the fraction-free elimination grows past 64 bits quickly, so the
compiled kernel hands those back to the Python path and gains nothing.
"""

from __future__ import annotations

import argparse
import random
import sys
import timeit

from qcmodel import _kernel_py

try:
    from qcmodel import _kernel
except ImportError:
    _kernel = None


def random_rows(rng: random.Random, m: int, n: int, rank: int) -> list[list[int]]:
    """An m x n integer matrix of the given rank (small entries, some dependence)."""
    basis = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(rank)]
    rows = []
    for _ in range(m):
        coeffs = [rng.randint(-2, 2) for _ in range(rank)]
        rows.append([sum(c * b[j] for c, b in zip(coeffs, basis)) for j in range(n)])
    return rows


def sparse_rows(rng: random.Random, m: int, n: int, density: float = 0.15) -> list[list[int]]:
    return [[rng.choice((-1, 1)) if rng.random() < density else 0 for _ in range(n)] for _ in range(m)]


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="8,16,32,48")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    opts = ap.parse_args(argv)
    if _kernel is None:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation` first")
        return 1
    rng = random.Random(opts.seed)
    print(f"{'workload':>8} {'size':>6} {'rank':>6} {'python ms':>11} {'compiled ms':>12} {'speedup':>8}")
    for kind in ("sparse", "dense"):
        for n in (int(s) for s in opts.sizes.split(",")):
            if kind == "sparse":
                rows = sparse_rows(rng, n, 2 * n)
                ncols = 2 * n
            else:
                rows = random_rows(rng, n, n, max(1, (3 * n) // 4))
                ncols = n
            ref = _kernel_py.echelon(rows, ncols)
            if _kernel.echelon(rows, ncols) != ref:
                print(f"kernels disagree on {kind} size {n}", file=sys.stderr)
                return 2
            tp = min(timeit.repeat(lambda: _kernel_py.echelon(rows, ncols), number=1, repeat=opts.repeat))
            tc = min(timeit.repeat(lambda: _kernel.echelon(rows, ncols), number=1, repeat=opts.repeat))
            print(f"{kind:>8} {n:>6} {len(ref[1]):>6} {tp * 1e3:>11.2f} {tc * 1e3:>12.2f} {tp / tc:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
