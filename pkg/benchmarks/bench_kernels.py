"""Time the numba kernels against their pure-numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--n 14] [--repeat 5]

Inputs come from a seeded random topology and operation pair on n points, so
both implementations see exactly the same tables.  The first numba call
(compilation, or loading from the on-disk cache) is excluded from timings.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from estarlab import _kernels as K


def _inputs(n: int, seed: int) -> dict:
    rng = np.random.default_rng(seed)
    size = 1 << n
    full = size - 1
    nb = np.array([int(rng.integers(0, size)) | (1 << x) for x in range(n)], dtype=K.MASK_DTYPE)
    antichains = [K._minimal_elements_np(rng.integers(1, size, size=8).astype(K.MASK_DTYPE) | (1 << x))
                  for x in range(n)]
    flat = np.concatenate(antichains).astype(K.MASK_DTYPE)
    offsets = np.zeros(n + 1, dtype=K.MASK_DTYPE)
    offsets[1:] = np.cumsum([len(a) for a in antichains])
    ok = K._coverage_np(n, flat, offsets)
    fmap = rng.integers(0, n, size=n).astype(K.MASK_DTYPE)
    masks = rng.integers(0, size, size=2000).astype(K.MASK_DTYPE)
    return {
        "pointwise_tables": (n, nb),
        "upward_closure": (n, rng.random(size) < 0.01),
        "subset_or": (n, np.where(rng.random(size) < 0.1, np.arange(size), 0).astype(K.MASK_DTYPE)),
        "superset_and": (n, np.where(rng.random(size) < 0.1, np.arange(size), full).astype(K.MASK_DTYPE)),
        "minimal_elements": (masks,),
        "meet_antichain": (masks[:300], masks[300:600]),
        "coverage": (n, flat, offsets),
        "stable_family": (n, ok),
        "pointwise_closure": (n, ok),
        "image_table": (n, fmap),
        "preimage_table": (n, fmap),
    }


def _time(fn, args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def _same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=14, help="number of points (table size 2**n)")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    inputs = _inputs(args.n, args.seed)
    print(f"n={args.n}  tables of {1 << args.n} entries  best of {args.repeat}")
    print(f"{'kernel':20s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for name in K.KERNELS:
        np_impl, jit_impl = K.implementations(name)
        a = inputs[name]
        t_np = _time(np_impl, a, args.repeat)
        if jit_impl is None:
            print(f"{name:20s} {t_np * 1e3:10.3f} {'-':>10s} {'-':>8s}")
            continue
        if not _same(np_impl(*a), jit_impl(*a)):  # also warms the jit
            raise SystemExit(f"{name}: numpy and numba results differ")
        t_jit = _time(jit_impl, a, args.repeat)
        print(f"{name:20s} {t_np * 1e3:10.3f} {t_jit * 1e3:10.3f} {t_np / t_jit:7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
