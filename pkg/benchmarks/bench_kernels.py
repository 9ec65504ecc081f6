"""Time the compiled and pure-Python kernels side by side.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from taitkneser import kernels
from taitkneser.conics import GRAM, Family
from taitkneser.osculate import random_parameters


def bench(label, fn, repeat):
    best = min(timeit.repeat(fn, number=1, repeat=repeat))
    print(f"  {label:<28} {best * 1e3:9.2f} ms")
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    trace = random_parameters("circle", 400, rng)
    m1 = random_parameters("hooke", 2000, rng)
    m2 = random_parameters("hooke", 2000, rng)

    results = {}
    for name in kernels.available_backends():
        mod = kernels.get_backend(name)
        print(f"{name}:")
        results[name] = (
            bench("interval matrix 400x400", lambda: mod.pairwise_interval_matrix(trace, GRAM[Family.CIRCLE]),
                  args.repeat),
            bench("hooke scan 2000 pairs", lambda: mod.hooke_scan(m1, m2), args.repeat),
        )
    if len(results) == 2:
        py, cy = results["python"], results["cython"]
        print(f"speedup: interval matrix {py[0] / cy[0]:.1f}x, hooke scan {py[1] / cy[1]:.1f}x")


if __name__ == "__main__":
    main()
