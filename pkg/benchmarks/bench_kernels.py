"""Time the numeric kernels under the numba and numpy backends.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``. The first
numba call of each kernel is a warm-up so compilation is not timed.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from torsemi import kernels
from torsemi._accel import HAS_NUMBA, using_backend
from torsemi.corpus import exhaustive_semirings
from torsemi.monoid import AffineMonoid, normalize


def workloads():
    pts = kernels.box_points([15, 15, 15])
    normals = np.array([[1, 0, 0], [0, 1, 0], [2, -1, 1], [-1, 3, 1]], dtype=np.int64)
    eqs = np.zeros((0, 3), dtype=np.int64)
    gens = np.array([[2, 1, 0], [1, 3, 1], [0, 2, 5]], dtype=np.int64)
    s = normalize(AffineMonoid.from_generators([(1, 0, 0), (1, 2, 0), (1, 1, 3)]))
    lat = s.lattice_points(12)
    lat = lat[lat.any(axis=1)]
    lat = lat[np.argsort(lat.sum(axis=1), kind="stable")]
    ineqs = np.array(s.cone.facet_normals, dtype=np.int64)
    tables = exhaustive_semirings(3)
    adds = np.stack([t.add_array for t in tables if t.order == 3])
    z = tables[-1]
    semigroups = kernels.commutative_semigroups(3)
    return {
        "box_points": lambda: kernels.box_points([30, 30, 30]),
        "cone_mask": lambda: kernels.cone_mask(pts, eqs, normals),
        "zero_patterns": lambda: kernels.zero_patterns(pts, normals),
        "reach_table": lambda: kernels.reach_table(gens, (20, 30, 30)),
        "irreducible_indices": lambda: kernels.irreducible_indices(lat, ineqs),
        "table_violations": lambda: [kernels.table_violations(a, a) for a in adds[:50]],
        "prime_multiples": lambda: kernels.prime_multiples(z.add_array, list(range(2, 2000))),
        "difference_relation": lambda: [kernels.difference_relation(a) for a in adds],
        "commutative_semigroups": lambda: kernels.commutative_semigroups(3),
        "distributive_pairs": lambda: kernels.distributive_pairs(semigroups, semigroups),
    }


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    jobs = workloads()
    backends = ["numpy"] + (["numba"] if HAS_NUMBA else [])
    results = {}
    for b in backends:
        with using_backend(b):
            for name, fn in jobs.items():
                fn()  # warm-up (compiles under numba)
                results[name, b] = best_of(fn, args.repeat)
    print(f"{'kernel':<24}" + "".join(f"{b:>12}" for b in backends) + ("    speedup" if HAS_NUMBA else ""))
    for name in jobs:
        row = f"{name:<24}" + "".join(f"{results[name, b] * 1e3:>10.2f}ms" for b in backends)
        if HAS_NUMBA:
            row += f"{results[name, 'numpy'] / results[name, 'numba']:>10.1f}x"
        print(row)


if __name__ == "__main__":
    main()
