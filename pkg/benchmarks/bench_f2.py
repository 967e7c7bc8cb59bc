"""Compare the compiled and pure-Python F2 rank kernels.

    python benchmarks/bench_f2.py [--sizes 64 256 1024] [--density 0.05] [--repeat 3]

Also times both on the differential of the packaged Poincare nice diagram
when ``--complex`` is given (that includes building the complex once).
"""

from __future__ import annotations

import argparse
import random
import time

from nicehf import f2
from nicehf.f2 import F2Matrix, rank


def random_matrix(rng: random.Random, n: int, density: float) -> F2Matrix:
    bits = []
    for _ in range(n):
        v = 0
        for j in range(n):
            if rng.random() < density:
                v |= 1 << j
        bits.append(v)
    return F2Matrix(n, n, bits)


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 256, 1024, 2048])
    ap.add_argument("--density", type=float, default=0.05)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--complex", action="store_true", help="also time the Poincare differential")
    args = ap.parse_args()
    if f2._f2core is None:
        raise SystemExit("compiled kernel not built; run `pip install -e . --no-build-isolation`")
    rng = random.Random(args.seed)
    cases = [(f"random {n}x{n} p={args.density}", random_matrix(rng, n, args.density)) for n in args.sizes]
    if args.complex:
        from importlib.resources import files

        from nicehf.diagram import parse_diagram
        from nicehf.floer import differential

        d = parse_diagram(files("nicehf").joinpath("data/poincare_nice.hd").read_text())
        m = differential(d).matrix
        cases.append((f"Poincare differential {m.rows}x{m.cols}", m))
    print(f"{'case':<36} {'rank':>6} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, m in cases:
        r_py, r_cy = rank(m, "python"), rank(m, "cython")
        assert r_py == r_cy, name
        t_py = best_of(lambda: rank(m, "python"), args.repeat)
        t_cy = best_of(lambda: rank(m, "cython"), args.repeat)
        print(f"{name:<36} {r_py:>6} {t_py:>10.4f} {t_cy:>10.4f} {t_py / t_cy:>7.1f}x")


if __name__ == "__main__":
    main()
