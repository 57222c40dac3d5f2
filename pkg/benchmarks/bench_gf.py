"""Compare the compiled and pure prime-field kernels.

The realistic workload is many small rank/nullspace calls (constraint systems
for morphism spaces), so the benchmark measures batches of modest matrices
rather than one large elimination.

Run:  python benchmarks/bench_gf.py
"""

import time

import numpy as np

from gentlecat import _gfpure

try:
    from gentlecat import _gfcore
except ImportError:
    _gfcore = None

P = 32003


def batch(impl, mats):
    t0 = time.perf_counter()
    total = 0
    for m in mats:
        total += impl.rank(m, P)
        impl.nullspace(m, P)
    return time.perf_counter() - t0, total


def main():
    rng = np.random.default_rng(7)
    shapes = [(12, 18)] * 400 + [(40, 60)] * 60 + [(150, 200)] * 6
    mats = [rng.integers(0, P, size=s, dtype=np.int64) for s in shapes]

    t_pure, chk_pure = batch(_gfpure, mats)
    print(f"pure  numpy backend: {t_pure:8.3f}s  (rank checksum {chk_pure})")
    if _gfcore is None:
        print("compiled backend not built; run pip install -e . first")
        return
    t_core, chk_core = batch(_gfcore, mats)
    print(f"compiled    backend: {t_core:8.3f}s  (rank checksum {chk_core})")
    assert chk_pure == chk_core
    print(f"speedup: {t_pure / t_core:.2f}x")


if __name__ == "__main__":
    main()
