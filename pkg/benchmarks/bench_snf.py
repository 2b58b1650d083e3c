"""Time the pure Python reduction kernel against the compiled one on
identical inputs, and confirm bit-identical outputs while doing so.

    python3 benchmarks/bench_snf.py [--trials N] [--seed S]

Entry growth during elimination dominates the cost on dense inputs, so
the default cases mix small dense matrices with the sparse, mostly
unit-entry shapes that boundary matrices actually have.
"""

import argparse
import random
import time

from fourfold._snf_py import snf_inplace as snf_py

try:
    from fourfold._snf_cy import snf_inplace as snf_cy
except ImportError:
    snf_cy = None


def dense(rng, m, n, lo, hi):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]


def sparse(rng, m, n, density, lo, hi):
    out = [[0] * n for _ in range(m)]
    for i in range(m):
        for j in range(n):
            if rng.random() < density:
                v = 0
                while v == 0:
                    v = rng.randint(lo, hi)
                out[i][j] = v
    return out


CASES = [
    ("dense 6x6, entries to 40", lambda rng: (6, 6, dense(rng, 6, 6, -40, 40))),
    ("dense 12x12, entries to 9", lambda rng: (12, 12, dense(rng, 12, 12, -9, 9))),
    ("dense 24x24, entries to 4", lambda rng: (24, 24, dense(rng, 24, 24, -4, 4))),
    ("sparse 80x60, 10% fill, entries to 2",
     lambda rng: (80, 60, sparse(rng, 80, 60, 0.10, -2, 2))),
    ("boundary-like 120x40, 6% fill, unit entries",
     lambda rng: (120, 40, sparse(rng, 120, 40, 0.06, -1, 1))),
]


def run_once(fn, m, n, data):
    d = [row[:] for row in data]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    uinv = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    vinv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    start = time.perf_counter()
    fn(d, u, uinv, v, vinv, m, n)
    return time.perf_counter() - start, (d, u, uinv, v, vinv)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=5, help="matrices per case")
    ap.add_argument("--seed", type=int, default=20260822)
    args = ap.parse_args(argv)

    if snf_cy is None:
        print("compiled kernel not built; timing the pure kernel only")
    header = "%-42s %12s" % ("case", "python")
    if snf_cy is not None:
        header += " %12s %9s" % ("compiled", "speedup")
    print(header)
    for label, make in CASES:
        rng = random.Random(args.seed)
        inputs = [make(rng) for _ in range(args.trials)]
        t_py = 0.0
        t_cy = 0.0
        for m, n, data in inputs:
            dt, out_py = run_once(snf_py, m, n, data)
            t_py += dt
            if snf_cy is not None:
                dt, out_cy = run_once(snf_cy, m, n, data)
                t_cy += dt
                if out_py != out_cy:
                    raise SystemExit("kernels disagree on %s" % label)
        line = "%-42s %10.2fms" % (label, 1000.0 * t_py / args.trials)
        if snf_cy is not None:
            line += " %10.2fms %8.1fx" % (
                1000.0 * t_cy / args.trials,
                t_py / t_cy if t_cy > 0 else float("inf"),
            )
        print(line)


if __name__ == "__main__":
    main()
