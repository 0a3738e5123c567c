"""Time the numba loop kernels against the numpy versions.

    python3 benchmarks/bench_kernels.py [--repeat 20]

The first numba call (compilation, or loading the on-disk cache) is timed
separately and excluded from the per-call numbers.
"""

import argparse
import time
import timeit

import numpy as np

from quartic_qes import kernels
from quartic_qes._accel import HAVE_NUMBA
from quartic_qes.qes import closed_form_n1, make_solution


def cases():
    beta2s = np.linspace(-5, 5, 2000)
    E, b2 = closed_form_n1("even", -0.7, 0.1)
    coeffs = make_solution(1, "even", -0.7, b2, 0.1, E).coeffs
    x = np.linspace(-20, 20, 200_001)
    b1s = np.linspace(-0.9, -0.5, 11)
    modes = np.exp(-np.outer(b1s**2, np.linspace(-8, 8, 801) ** 2)).astype(complex)
    y = np.linspace(0, 10, 401)
    w = np.ones_like(b1s)
    return {
        "scan_continuity N=6": ((6, 1.0, 0.1, beta2s, False), kernels.scan_continuity_numpy, kernels.scan_continuity_loop),
        "psi_derivs 2e5 pts": ((coeffs, -0.7, b2, 0.1, False, x), kernels.psi_derivs_numpy, kernels.psi_derivs_loop),
        "superpose 11x401x801": ((b1s, w, modes, y), kernels.superpose_modes_numpy, kernels.superpose_modes_loop),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    if not HAVE_NUMBA:
        print("numba unavailable (or disabled); the loop column runs as plain Python")
    print(f"{'kernel':<24}{'first call s':>14}{'numpy ms':>12}{'loop ms':>12}{'speedup':>10}")
    for name, (a, fnp, floop) in cases().items():
        t0 = time.perf_counter()
        floop(*a)
        first = time.perf_counter() - t0
        rep = args.repeat if HAVE_NUMBA else 1
        tnp = min(timeit.repeat(lambda: fnp(*a), number=1, repeat=args.repeat)) * 1e3
        tl = min(timeit.repeat(lambda: floop(*a), number=1, repeat=rep)) * 1e3
        print(f"{name:<24}{first:>14.3f}{tnp:>12.3f}{tl:>12.3f}{tnp / tl:>10.2f}")


if __name__ == "__main__":
    main()
