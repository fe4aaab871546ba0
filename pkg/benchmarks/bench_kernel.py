"""Time the compiled and pure-Python lattice kernels on the same workloads.

    python benchmarks/bench_kernel.py [--repeat 3]
"""
import argparse
import time

from partisan_symmetry.oracle import LatticeSpec, enumerate_extremes
from partisan_symmetry.oracle.backend import get_scan

CASES = ((4, 20), (5, 12), (6, 10), (6, 20))


def best_time(spec, backend, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        table = enumerate_extremes(spec, backend=backend, witnesses=False)
        best = min(best, time.perf_counter() - t)
    return best, table


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    try:
        get_scan("cython")
        backends = ("cython", "python")
    except ImportError:
        print("compiled kernel not built; timing the Python fallback only")
        backends = ("python",)
    print(f"{'n':>3} {'D':>4} {'multisets':>10} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for n, D in CASES:
        spec = LatticeSpec(n, D)
        times, tables = [], []
        for b in backends:
            t, table = best_time(spec, b, args.repeat)
            times.append(t)
            tables.append(table)
        if len(tables) == 2:
            a, c = tables
            assert all(vars(a.cells[k]) == vars(c.cells[k]) for k in a.cells), "backends disagree"
        speed = f"{times[1] / times[0]:9.1f}x" if len(times) == 2 else ""
        print(f"{n:>3} {D:>4} {spec.size:>10,} " + " ".join(f"{t:>9.3f}s" for t in times) + "  " + speed)


if __name__ == "__main__":
    main()
