"""Benchmark the compiled kernels against the pure numpy fallback.

Run:  python benchmarks/bench_kernels.py [--sizes 4,8,16,32,64] [--repeat 5]

Also asserts bitwise agreement between the two backends on every timed input.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from maxjsr import _kernels_py
from maxjsr.kernels import BACKEND, _impl as active_impl


def _time(fn, *args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="4,8,16,32,64,128")
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if BACKEND == "python":
        print("compiled backend unavailable; timing the fallback against itself")
    backends = [("python", _kernels_py)]
    if BACKEND == "native":
        backends.append(("native", active_impl))

    rng = np.random.default_rng(args.seed)
    sizes = [int(s) for s in args.sizes.split(",")]

    print(f"{'kernel':<12} {'n':>5} " + " ".join(f"{name:>12}" for name, _ in backends) + "  speedup")
    for n in sizes:
        a = rng.random((n, n))
        b = rng.random((n, n))
        with np.errstate(divide="ignore"):
            w = np.where(rng.random((n, n)) < 0.7, np.log(rng.random((n, n))), -np.inf)

        results = {}
        times = []
        for name, impl in backends:
            times.append(_time(impl.max_mul, a, b, repeat=args.repeat))
            results[name] = np.asarray(impl.max_mul(a, b))
        if len(backends) == 2:
            assert np.array_equal(results["python"], results["native"]), "backends disagree"
        speed = times[0] / times[-1] if len(times) == 2 else 1.0
        print(f"{'max_mul':<12} {n:>5} " + " ".join(f"{t * 1e6:>10.1f}us" for t in times) + f"  {speed:6.1f}x")

        tables = {}
        times = []
        for name, impl in backends:
            times.append(_time(impl.karp_table, w, repeat=args.repeat))
            tables[name] = impl.karp_table(w)
        if len(backends) == 2:
            d_py, p_py = tables["python"]
            d_nat, p_nat = tables["native"]
            assert np.array_equal(d_py, np.asarray(d_nat)), "karp tables disagree"
            assert np.array_equal(p_py, np.asarray(p_nat)), "karp parents disagree"
        speed = times[0] / times[-1] if len(times) == 2 else 1.0
        print(f"{'karp_table':<12} {n:>5} " + " ".join(f"{t * 1e6:>10.1f}us" for t in times) + f"  {speed:6.1f}x")


if __name__ == "__main__":
    main()
