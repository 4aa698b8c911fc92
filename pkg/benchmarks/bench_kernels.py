"""Time the compiled numeric kernels against the interpreted fallback.

Both backends come from the same source file, so this doubles as an
end-to-end check: every timed workload is also compared for bitwise
equality before the table is printed.

Usage:
    python benchmarks/bench_kernels.py [--scale S] [--repeats R] [--seed N]

Workload sizes are tuned so the interpreted pass stays under a minute;
--scale multiplies all of them.
"""

import argparse
import importlib.util
import math
import pathlib
import time

import numpy as np

from intrinsic_metrics import domains as D
from intrinsic_metrics import _kernels as K_active

SRC = pathlib.Path(D.__file__).with_name("_kernels.py")


def load_interpreted():
    spec = importlib.util.spec_from_file_location("ik_kernels_interpreted", SRC)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def pair_workload(dom, code, n, seed):
    """Return a closure evaluating one metric kernel on n fixed pairs."""
    rng = np.random.default_rng(seed)
    pts = D.sample_points(dom, 2 * n, rng)
    X = np.ascontiguousarray(pts[:n])
    Y = np.ascontiguousarray(pts[n:])
    kind, dim, theta, parity, pieces = D._pack(dom)

    def run(K):
        return K.metric_many(code, 0.0, kind, dim, theta, parity, pieces, X, Y)

    return run


def field_workload(dom, resolution, center):
    kind, dim, theta, parity, pieces = D._pack(dom)
    xs = np.linspace(-1.1, 1.1, resolution)
    ys = np.linspace(-1.1, 1.1, resolution)

    def run(K):
        return K.field_eval(K.M_T, 0.0, kind, dim, theta, parity, pieces,
                            center[0], center[1], xs, ys)

    return run


def best_of(run, module, repeats):
    result = run(module)
    elapsed = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        run(module)
        elapsed = min(elapsed, time.perf_counter() - start)
    return result, elapsed


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--scale", type=float, default=1.0,
                        help="multiply all workload sizes (default 1.0)")
    parser.add_argument("--repeats", type=int, default=3,
                        help="timing repeats per backend, best is kept")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    pure = load_interpreted()
    compiled = K_active if K_active.BACKEND == "compiled" else None
    if compiled is None:
        print("compiled extension not available; timing the interpreted "
              "backend only")

    def n(base):
        return max(16, int(base * args.scale))

    pent = D.pentagram()
    workloads = [
        ("t halfplane pairs", n(100000),
         pair_workload(D.HalfSpace(), K_active.M_T, n(100000), args.seed)),
        ("rho halfplane pairs", n(100000),
         pair_workload(D.HalfSpace(), K_active.M_RHO, n(100000), args.seed)),
        ("t pentagram pairs", n(20000),
         pair_workload(pent, K_active.M_T, n(20000), args.seed)),
        ("sratio ball pairs", n(400),
         pair_workload(D.UnitBall(), K_active.M_SRATIO, n(400), args.seed)),
        ("t pentagram field", n(192) ** 2,
         field_workload(pent, n(192), (0.0, 0.0))),
    ]

    print(f"{'workload':<22}{'size':>10}{'python':>12}{'compiled':>12}"
          f"{'speedup':>10}  equal")
    for name, size, run in workloads:
        ref, t_pure = best_of(run, pure, max(1, args.repeats // 2))
        if compiled is None:
            print(f"{name:<22}{size:>10}{t_pure * 1e3:>10.1f}ms"
                  f"{'-':>12}{'-':>10}")
            continue
        out, t_comp = best_of(run, compiled, args.repeats)
        equal = bool(np.array_equal(ref, out))
        print(f"{name:<22}{size:>10}{t_pure * 1e3:>10.1f}ms"
              f"{t_comp * 1e3:>10.2f}ms{t_pure / t_comp:>9.0f}x  {equal}")
        if not equal:
            raise SystemExit("backends disagree on " + name)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
