"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Setting BEAMSPEC_DISABLE_JIT=1 makes the library itself use the numpy
path; this script calls both implementations directly.
"""
import argparse
import time

import numpy as np

from beamspec import fdoracle, kernels, spectrum
from beamspec.supports import get_case


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_scan(repeat):
    ends, orders = spectrum._rows(get_case("BC"))
    args = (ends, orders, spectrum.SCAN_START, spectrum.SCAN_STEP, 28 * np.pi, 25)
    t_np, z_np = best_of(lambda: kernels.scan_roots_numpy(*args), repeat)
    t_jit, z_jit = best_of(lambda: kernels.scan_roots_jit(*args), repeat)
    return t_np, t_jit, float(np.max(np.abs(z_np - z_jit) / z_np))


def bench_leapfrog(repeat, m=200, steps=2000):
    op = fdoracle.assemble_operator("AA", fdoracle.StaggeredGrid(1.0, m))
    K = op.A
    dt = 0.9 * fdoracle.stable_step(op, 1.0)
    x = op.grid.nodes[op.free_nodes]
    u = np.sin(np.pi * x)
    v = np.zeros_like(u)
    t_np, (U1, _) = best_of(lambda: kernels.leapfrog_numpy(K, u, v, dt, steps, steps), repeat)
    t_jit, (U2, _) = best_of(lambda: kernels.leapfrog_jit(K, u, v, dt, steps, steps), repeat)
    return t_np, t_jit, float(np.max(np.abs(U1 - U2)))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if kernels.numba is None:
        raise SystemExit("numba is not installed; nothing to compare")
    # warm the JIT cache so compile time is not measured
    bench_scan(1)
    bench_leapfrog(1, m=10, steps=2)
    print(f"{'kernel':<28}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}{'max diff':>12}")
    for label, (t_np, t_jit, diff) in (
        ("root scan, BC, 25 roots", bench_scan(args.repeat)),
        ("leapfrog, AA, m=200, 2000", bench_leapfrog(args.repeat)),
    ):
        print(f"{label:<28}{t_np:>12.4f}{t_jit:>12.4f}{t_np / t_jit:>9.1f}x{diff:>12.2e}")


if __name__ == "__main__":
    main()
