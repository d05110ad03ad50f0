"""Benchmark the compiled averaging kernel against its pure-numpy twin.

Usage: python benchmarks/bench_kernels.py [--nodes N] [--points M] [--repeat R]

The compiled backend is used automatically when available; setting
QDCASCADE_FORCE_PY=1 before import forces the numpy fallback, which is what
this script measures directly by importing both modules.
"""

import argparse
import time

import numpy as np

from qdcascade._kernels import _purepy
from qdcascade.constants import HBAR_UEV_NS
from qdcascade.emission import quadrature_rule

try:
    from qdcascade._kernels import _core
except ImportError:
    _core = None


def time_backend(func, args, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = func(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--nodes", type=int, default=256,
                        help="quadrature node count (default 256)")
    parser.add_argument("--points", type=int, default=1001,
                        help="tau grid points (default 1001)")
    parser.add_argument("--repeat", type=int, default=5,
                        help="repetitions, best time reported (default 5)")
    args = parser.parse_args()

    nodes, weights = quadrature_rule(2.47, args.nodes)
    phases = np.linspace(0.0, 5.0, args.points) / HBAR_UEV_NS
    call_args = (0.4, nodes, weights, phases, HBAR_UEV_NS)

    t_py, rho_py = time_backend(_purepy.averaged_entangled_density,
                                call_args, args.repeat)
    print(f"pure-numpy backend : {t_py * 1e3:8.2f} ms "
          f"({args.nodes} nodes x {args.points} points)")

    if _core is None:
        print("compiled backend   : not built (install with the C extension "
              "to compare)")
        return

    t_c, rho_c = time_backend(_core.averaged_entangled_density,
                              call_args, args.repeat)
    diff = np.max(np.abs(rho_c - rho_py))
    print(f"compiled backend   : {t_c * 1e3:8.2f} ms")
    print(f"speedup            : {t_py / t_c:8.2f}x")
    print(f"max |difference|   : {diff:.3e}")


if __name__ == "__main__":
    main()
