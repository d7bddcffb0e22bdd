"""Timing comparison of the compiled and pure-Python Jacobi kernels.

Usage::

    python benchmarks/bench_backends.py              # kernel microbenchmarks
    python benchmarks/bench_backends.py --trajectory # end-to-end trajectory

The 4x4 batch mirrors the hot loop of a trajectory run: one negativity
eigensolve per time point.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from spinhop import BasisLayout, ModelSpec, TimeGrid, backend, encode_state, run_trajectory
from spinhop.linalg import JACOBI_MAX_SWEEPS, JACOBI_TOL


def _random_hermitian(rng, n):
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return m + m.conj().T


def _run_kernel(kernel, matrices):
    t0 = time.perf_counter()
    for m in matrices:
        a = np.array(m, dtype=np.complex128, order="C")
        v = np.eye(a.shape[0], dtype=np.complex128, order="C")
        tol = JACOBI_TOL * float(np.sqrt((np.abs(a) ** 2).sum()))
        kernel(a, v, tol, JACOBI_MAX_SWEEPS)
    return time.perf_counter() - t0


def bench_kernels():
    kernels = backend.available()
    rng = np.random.default_rng(42)
    cases = [
        ("4x4    x 2000", [_random_hermitian(rng, 4) for _ in range(2000)]),
        ("8x8    x  500", [_random_hermitian(rng, 8) for _ in range(500)]),
        ("16x16  x  100", [_random_hermitian(rng, 16) for _ in range(100)]),
        ("24x24  x  100", [_random_hermitian(rng, 24) for _ in range(100)]),
    ]
    print(f"available kernels: {sorted(kernels)}")
    print(f"{'case':<14} " + " ".join(f"{name:>12}" for name in sorted(kernels)) + "  speedup")
    for label, mats in cases:
        timings = {name: _run_kernel(k, mats) for name, k in kernels.items()}
        cols = " ".join(f"{timings[name]:>11.4f}s" for name in sorted(timings))
        if len(timings) == 2:
            speedup = timings["python"] / timings["cython"]
            print(f"{label:<14} {cols}  {speedup:6.1f}x")
        else:
            print(f"{label:<14} {cols}")


def bench_trajectory():
    spec = ModelSpec.xy(10.0)
    initial = encode_state(BasisLayout(2), 1, "up", "down-down")
    grid = TimeGrid()
    results = {}
    for name in sorted(backend.available()):
        backend.set_backend(name)
        t0 = time.perf_counter()
        run_trajectory(spec, "exact", initial, grid)
        results[name] = time.perf_counter() - t0
    print(f"full 2001-point trajectory (16-dim, eta/J=10):")
    for name, dt in results.items():
        print(f"  {name:>8}: {dt:.3f} s")
    if len(results) == 2:
        print(f"  speedup: {results['python'] / results['cython']:.1f}x")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trajectory", action="store_true", help="time a full run")
    args = parser.parse_args()
    if args.trajectory:
        bench_trajectory()
    else:
        bench_kernels()
