"""Compare the numba and numpy kernels on random data.

Usage: python3 benchmarks/bench_kernels.py [--sizes 5 9 15] [--repeat 5]

Each kernel is warmed up once (compilation is excluded), then timed as the
best of ``--repeat`` runs.  Both backends must agree to 1e-10 relative error.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qtfa import _kernels as K
from qtfa._accel import HAVE_NUMBA
from qtfa.phase_space import modulus


def best_of(fn, repeat: int) -> float:
    fn()
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def cases(N: int, rng):
    c = lambda *s: rng.standard_normal(s) + 1j * rng.standard_normal(s)  # noqa: E731
    m = modulus(N)
    S, T = c(N, N), c(N, N)
    F, G = c(N, N, N, N), c(N, N, N, N)
    return {
        "cohen_table": (lambda: K._cohen_table_numba(S, T, m.powers), lambda: K._cohen_table_numpy(S, T)),
        "cohen_synthesis": (lambda: K._cohen_synthesis_numba(S, F, m.powers), lambda: K._cohen_synthesis_numpy(S, F)),
        "twisted_convolution": (
            lambda: K._twisted_numba(K._pretwist(F, m), G, m.powers),
            lambda: K._twisted_numpy(F, G),
        ),
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[5, 9, 15])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if not HAVE_NUMBA:
        print("numba is disabled (QTFA_NO_NUMBA set); nothing to compare")
        return 1
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<22}{'N':>4}{'numba ms':>12}{'numpy ms':>12}{'speedup':>10}{'rel diff':>11}")
    ok = True
    for N in args.sizes:
        for name, (fast, ref) in cases(N, rng).items():
            a, b = fast(), ref()
            diff = float(np.abs(a - b).max() / max(1.0, np.abs(b).max()))
            ok &= diff < 1e-10
            t_nb, t_np = best_of(fast, args.repeat), best_of(ref, args.repeat)
            print(f"{name:<22}{N:>4}{1e3 * t_nb:>12.3f}{1e3 * t_np:>12.3f}{t_np / t_nb:>10.1f}{diff:>11.1e}")
    print("backends agree" if ok else "BACKENDS DISAGREE")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
