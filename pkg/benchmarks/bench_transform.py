"""Time the compiled and pure-Python transform backends on random step functions.

    python benchmarks/bench_transform.py --p 2 --digits 12 16 20
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from vilenkin.stepfn import StepFunction
from vilenkin.transform import available_backends, fourier


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--digits", type=int, nargs="+", default=[8, 12, 16, 20])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    backends = available_backends()
    print(f"p={args.p} backends={','.join(backends)}")
    print(f"{'cells':>10} " + " ".join(f"{b:>12}" for b in backends) + "   max|diff|")
    for n in args.digits:
        lo = -(n // 2)
        size = args.p ** n
        vals = rng.standard_normal(size) + 1j * rng.standard_normal(size)
        f = StepFunction(args.p, "primal", lo, lo + n, vals)
        out, secs = {}, {}
        for b in backends:
            out[b] = fourier(f, backend=b)
            secs[b] = best_of(lambda: fourier(f, backend=b), args.repeat)
        ref = out[backends[0]].values
        diff = max(float(np.max(np.abs(out[b].values - ref))) for b in backends)
        print(f"{size:>10} " + " ".join(f"{secs[b] * 1e3:>10.2f}ms" for b in backends)
              + f"   {diff:.1e}")


if __name__ == "__main__":
    main()
