"""Compare the compiled and pure-numpy kernel backends.

Usage: python benchmarks/bench_kernels.py [--qubits N] [--repeats R]
"""
import argparse
import time

import numpy as np

import nugate.backend.python as py

try:
    import nugate.backend._core as core
except ImportError:
    core = None


def timeit(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_backend(impl, num_qubits, repeats, seed=0):
    gen = np.random.default_rng(seed)
    n = 1 << num_qubits
    amps = gen.normal(size=n) + 1j * gen.normal(size=n)
    amps /= np.linalg.norm(amps)
    angles = gen.random(4)
    ct, st = np.cos(angles), np.sin(angles)
    gate1 = np.linalg.qr(gen.normal(size=(2, 2)) + 1j * gen.normal(size=(2, 2)))[0]

    results = {}
    a = amps.copy()
    results["apply_1q"] = timeit(lambda: impl.apply_1q(a, num_qubits // 2, gate1), repeats)
    b = amps.copy()
    results["apply_anc_rotation"] = timeit(
        lambda: impl.apply_anc_rotation(b, num_qubits - 1, (0, 1), ct, st), repeats
    )
    c = amps.copy()
    results["reflect_about_zero"] = timeit(
        lambda: impl.reflect_about_zero(c, (1 << num_qubits) - 1), repeats
    )

    w = np.full(16, 1 / 16)
    ang = gen.random(16) * 0.4
    s2, c2 = np.sin(ang) ** 2, np.cos(ang) ** 2
    draw_gen = np.random.default_rng(1)
    results["rus_ensemble(20k traj)"] = timeit(
        lambda: impl.rus_ensemble(w, s2, c2, 20000, 100, lambda k: draw_gen.random(k)),
        1,
    )
    return results


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--qubits", type=int, default=20)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    print(f"register: {args.qubits} qubits ({1 << args.qubits} amplitudes)")
    res_py = bench_backend(py, args.qubits, args.repeats)
    if core is None:
        print("compiled backend not built; showing python backend only")
        for k, v in res_py.items():
            print(f"{k:28s} python {v * 1e3:9.2f} ms")
        return
    res_core = bench_backend(core, args.qubits, args.repeats)
    print(f"{'kernel':28s} {'python':>12s} {'cython':>12s} {'speedup':>9s}")
    for k in res_py:
        p, c = res_py[k], res_core[k]
        print(f"{k:28s} {p * 1e3:9.2f} ms {c * 1e3:9.2f} ms {p / c:8.1f}x")


if __name__ == "__main__":
    main()
