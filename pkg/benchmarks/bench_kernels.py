"""Compare the compiled and pure-Python enumeration kernels.

Usage: ``python3 benchmarks/bench_kernels.py [--repeat N] [--seed S]``.
Each workload runs on every available backend; results must agree and the
best wall time over ``--repeat`` runs is reported.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from paramsoc import kernels
from paramsoc.hedonic import Partition, nash_search_symmetric
from paramsoc.hedonic.stability import search_blocking
from paramsoc.multiwinner.objectives import cost_matrix, harmonic_weights
from paramsoc.oracles import GeneratorSpec, generate


def workloads(seed: int):
    lin = generate(GeneratorSpec(seed, "random_linear", {"m": 16, "n": 40}))
    app = generate(GeneratorSpec(seed, "random_approval", {"m": 18, "n": 60, "b": 4}))
    fa = generate(GeneratorSpec(seed, "random_fe", {"n": 16, "density": 0.15, "model": "fa"}))
    add = generate(GeneratorSpec(seed, "random_additive", {"n": 16, "umax": 4, "density": 0.4, "symmetric": 1}))
    cost = cost_matrix(lin)
    _, weights = harmonic_weights(5)
    yield "cc_best m=16 n=40 k=5", lambda: kernels.cc_best(cost, lin.m, 5)
    yield "mav_best m=18 n=60 k=5", lambda: kernels.mav_best(app.approval_masks, [0] * app.n, app.m, 5)
    yield "pav_best m=18 n=60 k=5", lambda: kernels.pav_best(app.approval_masks, weights, app.m, 5)
    grand = Partition.grand(fa.n)
    yield "core search fa n=16", lambda: search_blocking(fa, grand, weak=True, node_budget=None)
    settled = nash_search_symmetric(add)
    yield "core search additive n=16", lambda: search_blocking(add, settled, weak=True, node_budget=None)


def best_time(fn, repeat: int) -> tuple[float, object]:
    times, result = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def normalize(result):
    if isinstance(result, tuple):
        return tuple(normalize(x) for x in result)
    if isinstance(result, np.ndarray):
        return tuple(result.tolist())
    return result


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=3)
    args = parser.parse_args()
    backends = kernels.available_backends()
    print(f"{'workload':28s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name, fn in workloads(args.seed):
        row, results = [], []
        for b in backends:
            with kernels.using_backend(b):
                t, res = best_time(fn, args.repeat)
            row.append(t)
            results.append(normalize(res))
        if any(r != results[0] for r in results):
            raise SystemExit(f"{name}: backends disagree: {results}")
        line = f"{name:28s}" + "".join(f"{t:11.4f}s" for t in row)
        if len(row) > 1:
            line += f"{row[0] / max(row[1], 1e-9):11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
