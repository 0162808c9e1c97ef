"""Compare the compiled kernel extension against the NumPy fallback.

Runs the three kernels on representative workloads and prints per-call
timings and speedups.  Usage:

    python benchmarks/kernel_benchmark.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from darkport import _kernels_py

try:
    from darkport import _kernels
except ImportError:
    _kernels = None


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5, help="timing repetitions")
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    b = rng.uniform(0.0, 40.0, 2000)
    x = rng.uniform(0.0, 40.0, 2000)
    xy = rng.normal(size=(200, 200, 2)) * 260.0 + 100.0

    workloads = [
        ("rician_cdf_sf (2000 points)", lambda mod: mod.rician_cdf_sf(b, x)),
        ("batch_ml_moments (200x200)", lambda mod: mod.batch_ml_moments(xy)),
        ("batch_radial_count (200x200)", lambda mod: mod.batch_radial_count(xy, 390.0)),
    ]

    backends = [("python", _kernels_py)]
    if _kernels is not None:
        backends.append(("compiled", _kernels))
    else:
        print("compiled extension not available; timing the fallback only\n")

    print(f"{'kernel':<32} " + " ".join(f"{name:>12}" for name, _ in backends) + "  speedup")
    for label, call in workloads:
        times = [_time(lambda mod=mod: call(mod), args.repeat) for _, mod in backends]
        cells = " ".join(f"{t * 1e3:>10.2f}ms" for t in times)
        speedup = f"{times[0] / times[-1]:>6.1f}x" if len(times) == 2 else "   n/a"
        print(f"{label:<32} {cells}  {speedup}")

    # agreement spot check alongside the timings
    if _kernels is not None:
        c1, s1 = _kernels.rician_cdf_sf(b, x)
        c2, s2 = _kernels_py.rician_cdf_sf(b, x)
        print(
            f"\nmax |compiled - python|: cdf {np.max(np.abs(c1 - c2)):.3e}, "
            f"sf {np.max(np.abs(s1 - s2)):.3e}"
        )


if __name__ == "__main__":
    main()
