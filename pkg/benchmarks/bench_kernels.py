"""Compare the compiled kernels with the NumPy fallback.

    python benchmarks/bench_kernels.py [--n 20] [--repeat 5]

Prints the best-of-``repeat`` wall time per kernel and the speedup of the
compiled version. Both backends are checked to agree before timing.
"""

import argparse
import math
import time

import numpy as np

from rqaoa import _pykernels
from rqaoa.analytic import PairTerms
from rqaoa.graphs import GraphSpec, generate

try:
    from rqaoa import _kernels
except ImportError:
    _kernels = None


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(n, rng):
    inst = generate(GraphSpec("random_regular", n, seed=1))
    ip, ix = inst.incidence()
    masks, w = inst.masks(), inst.weight_array()
    diag = _pykernels.diagonal(n, masks, w, inst.constant)
    amps = (rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)) / math.sqrt(2 << n)
    big = generate(GraphSpec("random_regular", 200, seed=2))
    terms = PairTerms(big)
    gammas = np.linspace(0, math.pi, 64, endpoint=False)

    def mixer(k):
        return lambda: k.apply_mixer(amps.copy(), n, 0.3)

    def phase(k):
        return lambda: k.apply_phase(amps.copy(), diag, 0.7)

    return {
        f"gray_code_max (n={n})": lambda k: lambda: k.gray_code_max(n, masks, w, inst.constant, ip, ix),
        f"diagonal (n={n})": lambda k: lambda: k.diagonal(n, masks, w, inst.constant),
        f"apply_phase (n={n})": phase,
        f"apply_mixer (n={n})": mixer,
        "level1_terms (rr3 n=200, 64 gammas)": lambda k: lambda: k.level1_terms(
            gammas, terms.a, terms.b, terms.ptr, terms.juv),
    }


def check_agreement(n, rng):
    inst = generate(GraphSpec("random_regular", min(n, 16), seed=3))
    m = inst.n
    ip, ix = inst.incidence()
    args = (m, inst.masks(), inst.weight_array(), inst.constant)
    assert _kernels.gray_code_max(*args, ip, ix) == _pykernels.gray_code_max(*args, ip, ix)
    d1, d2 = _kernels.diagonal(*args), _pykernels.diagonal(*args)
    assert np.array_equal(d1, d2)
    a = rng.normal(size=1 << m) + 1j * rng.normal(size=1 << m)
    b = a.copy()
    for k, arr in ((_kernels, a), (_pykernels, b)):
        k.apply_phase(arr, d1, 0.4)
        k.apply_mixer(arr, m, 0.9)
    assert np.allclose(a, b, atol=1e-12)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=20, help="qubits / spins (default 20)")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _kernels is None:
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation`")
    rng = np.random.default_rng(0)
    check_agreement(args.n, rng)
    print(f"{'kernel':40s} {'numpy [ms]':>12s} {'cython [ms]':>12s} {'speedup':>8s}")
    for name, make in cases(args.n, rng).items():
        t_py = best_time(make(_pykernels), args.repeat)
        t_cy = best_time(make(_kernels), args.repeat)
        print(f"{name:40s} {1e3 * t_py:12.2f} {1e3 * t_cy:12.2f} {t_py / t_cy:7.1f}x")


if __name__ == "__main__":
    main()
