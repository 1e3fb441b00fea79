"""Side-by-side timing of the numba and numpy kernel backends.

Run with ``python3 benchmarks/bench_backends.py``.  Imports both backend
modules directly, so the ``CIRCLEDYN_BACKEND`` env flag is irrelevant here.
The jitted functions are warmed up (compiled) before timing.
"""

from __future__ import annotations

import time

import numpy as np

from circledyn.kernels import numpy_backend

try:
    from circledyn.kernels import numba_backend
except ImportError:
    numba_backend = None

A = np.array([-1.5 / (2.0 * np.pi)])  # gapped family coefficients
B = np.array([])

CASES = {
    "lift (n=1_000_000)": lambda m: m.lift(X_BIG, A, B),
    "d1 (n=1_000_000)": lambda m: m.d1(X_BIG, A, B),
    "orbit_multiplier (n=20_000, 32 steps)": lambda m: m.orbit_multiplier(
        X_MED, 32, A, B
    ),
    "orbit_multiplier (n=64, 512 steps)": lambda m: m.orbit_multiplier(
        X_SMALL, 512, A, B
    ),
    "invert (n=20_000)": lambda m: m.invert(Y_MED, LO_MED, HI_MED, A, B),
    "invert (n=64, 200 calls)": lambda m: [
        m.invert(Y_SMALL, LO_SMALL, HI_SMALL, A, B) for _ in range(200)
    ],
    "periodic_residual (s=10, 65_536 cells)": lambda m: m.periodic_residual(
        10, 65536, A, B
    ),
}

rng = np.random.default_rng(0)
X_BIG = rng.uniform(0.0, 1.0, 1_000_000)
X_MED = rng.uniform(0.0, 1.0, 20_000)
X_SMALL = rng.uniform(0.0, 1.0, 64)
Y_MED = numpy_backend.lift(np.sort(rng.uniform(0.0, 1.0, 20_000)), A, B)
LO_MED = np.zeros_like(Y_MED)
HI_MED = np.ones_like(Y_MED) + 1e-12
Y_SMALL = Y_MED[::313][:64]
LO_SMALL = np.zeros_like(Y_SMALL)
HI_SMALL = np.ones_like(Y_SMALL) + 1e-12


def best_of(fn, repeats: int = 5) -> float:
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    backends = [("numpy", numpy_backend)]
    if numba_backend is not None:
        print("warming up numba (jit compilation)...")
        for case in CASES.values():
            case(numba_backend)
        backends.append(("numba", numba_backend))
    else:
        print("numba not importable; timing numpy only")

    width = max(len(name) for name in CASES)
    header = f"{'kernel':<{width}}" + "".join(f"  {n:>12}" for n, _ in backends)
    if len(backends) == 2:
        header += f"  {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, case in CASES.items():
        row = f"{name:<{width}}"
        timings = []
        for _, mod in backends:
            t = best_of(lambda: case(mod))
            timings.append(t)
            row += f"  {t * 1e3:>10.2f}ms"
        if len(timings) == 2:
            row += f"  {timings[0] / timings[1]:>8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
