"""Time the numba kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--levels 20]

Both backends get identical inputs.  The first numba call (compilation,
or loading from the on-disk cache) is timed separately and excluded from
the steady-state numbers.
"""
import argparse
import time

import numpy as np

from matsuvdw._kernels import load_backend
from matsuvdw.models import random_spectrum
from matsuvdw.polarizability import polarizability_function
from matsuvdw.spectrum import ThermalState


def _inputs(levels, seed=0):
    rng = np.random.default_rng(seed)
    a = random_spectrum(rng, levels)
    b = random_spectrum(rng, levels)
    t = ThermalState(1.3)
    pa = polarizability_function(a, t)
    pb = polarizability_function(b, t)
    p = np.exp(-1.3 * a.energies)
    p /= p.sum()
    table_a = np.ascontiguousarray(np.outer(np.ones(levels), p))
    q = np.exp(-1.3 * b.energies)
    q /= q.sum()
    table_b = np.ascontiguousarray(np.outer(np.ones(levels), q))
    ga, ma = np.ascontiguousarray(a.gaps), np.ascontiguousarray(a.transition_weights)
    gb, mb = np.ascontiguousarray(b.gaps), np.ascontiguousarray(b.transition_weights)
    ones_a, ones_b = np.ones(levels), np.ones(levels)
    return {
        "lorentzian_partial_sum (n=1e5)": ("lorentzian_partial_sum", (1.0, 1.0, 100_000)),
        "product_partial_sum (n=1e5)": ("product_partial_sum", (1.0, 1.3, 1.0, 100_000)),
        "alpha_on_grid (1e4 points)": (
            "alpha_on_grid", (pa.weights, pa.omegas, pa.static_extra, np.linspace(0, 50, 10_000))),
        "pair_partial_sum (n=4096)": (
            "pair_partial_sum", (pa.weights, pa.omegas, pa.static_extra,
                                 pb.weights, pb.omegas, pb.static_extra, 1.3, 1e-4, 4096, 1)),
        "quad_bracket_sum": (
            "quad_bracket_sum", (table_a, ga, ma, table_b, gb, mb, 1.3, 1e-4)),
        "shift_table": ("shift_table", (ones_a, ga, ma, ones_b, gb, mb, 1e-12)),
    }


def _best_of(fn, args, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--levels", type=int, default=20)
    args = parser.parse_args(argv)

    numpy_impl = load_backend("numpy")
    try:
        numba_impl = load_backend("numba")
    except ImportError:
        numba_impl = None
        print("numba not importable; timing the numpy backend only")

    cases = _inputs(args.levels)
    print(f"{'kernel':<34}{'numpy [ms]':>12}{'numba [ms]':>12}{'first call':>12}{'speedup':>9}")
    for label, (name, call_args) in cases.items():
        t_np = _best_of(getattr(numpy_impl, name), call_args, args.repeat)
        if numba_impl is None:
            print(f"{label:<34}{1e3 * t_np:>12.3f}")
            continue
        fn = getattr(numba_impl, name)
        t0 = time.perf_counter()
        fn(*call_args)
        first = time.perf_counter() - t0
        t_nb = _best_of(fn, call_args, args.repeat)
        print(f"{label:<34}{1e3 * t_np:>12.3f}{1e3 * t_nb:>12.3f}{1e3 * first:>12.1f}"
              f"{t_np / t_nb:>9.1f}")


if __name__ == "__main__":
    main()
