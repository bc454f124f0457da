"""Time the compiled kernels against the pure-Python fallback.

Usage::

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each kernel runs on identical inputs under both backends; results are
compared before timings are printed, so a speedup is only reported for
matching output.
"""

import argparse
import sys
import timeit

import numpy as np

from curvebound import _kernels
from curvebound.graph import generate
from curvebound.spectral import normalized_laplacian


def cases(quick):
    q = generate("hypercube:4" if quick else "hypercube:6")
    lap = normalized_laplacian(q)
    m = 100 if quick else 400
    diag, off_sq = [4.0] * m, [4.0] * (m - 1)
    cheeger_masks = list(generate("torus:4,2" if quick else "cycle:18").neighbor_masks)
    part_masks = list(generate("cycle:8" if quick else "cycle:11").neighbor_masks)
    return [
        (f"jacobi n={lap.shape[0]}", lambda k: k.jacobi_eigenvalues(lap)[0]),
        (f"bisect m={m}", lambda k: k.bisect_eigenvalues(diag, off_sq, None, m, 0.0, 8.0, 1e-12)),
        (f"sturm m={m}", lambda k: k.sturm_count(diag, off_sq, None, 2.0)),
        (f"cheeger n={len(cheeger_masks)}", lambda k: k.cheeger_enum(cheeger_masks, _kernels.OUTER)),
        (f"partitions n={len(part_masks)}", lambda k: k.partition_enum(part_masks, 3)),
    ]


def same(a, b):
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return np.allclose(a, b, atol=1e-10)
    if isinstance(a, (list, tuple)) and a and isinstance(a[0], float):
        return np.allclose(a, b, atol=1e-10)
    return a == b


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--quick", action="store_true", help="small inputs for a smoke run")
    args = parser.parse_args(argv)

    backends = _kernels.backends()
    if "cython" not in backends:
        print("compiled backend unavailable; only the fallback can be timed", file=sys.stderr)
    print(f"{'kernel':<22}" + "".join(f"{name:>12}" for name in sorted(backends)) + f"{'speedup':>10}")
    for label, fn in cases(args.quick):
        outputs = {name: fn(k) for name, k in backends.items()}
        ref = outputs["python"]
        if not all(same(ref, out) for out in outputs.values()):
            print(f"{label}: backends disagree", file=sys.stderr)
            return 1
        times = {
            name: min(timeit.repeat(lambda k=k: fn(k), number=1, repeat=args.repeat)) for name, k in backends.items()
        }
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        cells = "".join(f"{times[name] * 1e3:>10.2f}ms" for name in sorted(backends))
        print(f"{label:<22}{cells}{speed:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
