"""Time the numba and numpy kernels on the lattice-box gcd sweep.

    python benchmarks/bench_kernels.py --bound 4 --repeat 3
"""
import argparse
import time

import numpy as np

from traceform import _kernels
from traceform.dynkin import _box_inputs, character_box
from traceform.lattice import parse_group_spec

MAX_POINTS = 2_000_000
DEFAULT_GROUPS = ("SL12/mu2", "SL10/mu5", "E7ad", "E8", "Spin12")


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_group(label, bound, repeat, backends):
    spec = parse_group_spec(label)
    fgram, mem, den, quot, divisor = _box_inputs(spec)
    # the explicit point list grows like (bound+1)^rank, so shrink its box
    vbound = bound
    while vbound > 1 and (vbound + 1) ** spec.root_system.rank > MAX_POINTS:
        vbound -= 1
    pts = character_box(spec, vbound)
    rows = []
    results = {}
    for backend in backends:
        # first call compiles under numba; keep it out of the timing
        _kernels.box_gcd(1, fgram, mem, den, quot, divisor, backend=backend)
        _kernels.closed_values(pts[:1], fgram, quot, divisor, backend=backend)
        t_gcd, g = best_of(lambda: _kernels.box_gcd(bound, fgram, mem, den, quot, divisor, backend=backend), repeat)
        t_vals, v = best_of(lambda: _kernels.closed_values(pts, fgram, quot, divisor, backend=backend), repeat)
        results[backend] = (tuple(g), v[0])
        rows.append((label, backend, len(pts), t_gcd, t_vals))
    ref = results[backends[0]]
    agree = all(r[0] == ref[0] and np.array_equal(r[1], ref[1]) for r in results.values())
    return rows, agree


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("groups", nargs="*", default=list(DEFAULT_GROUPS))
    ap.add_argument("--bound", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = [b for b in ("numpy", "numba") if b in _kernels.KERNELS]
    print(f"{'group':<10} {'backend':<7} {'points':>8} {'box_gcd s':>10} {'values s':>10}")
    ok = True
    for label in args.groups:
        rows, agree = bench_group(label, args.bound, args.repeat, backends)
        ok &= agree
        for label_, backend, n, t1, t2 in rows:
            print(f"{label_:<10} {backend:<7} {n:>8} {t1:>10.4f} {t2:>10.4f}")
        if len(rows) == 2:
            print(f"{'':<10} speedup {'':>8} {rows[0][3] / rows[1][3]:>10.1f} {rows[0][4] / rows[1][4]:>10.1f}")
        print(f"{'':<10} results {'agree' if agree else 'DIFFER'}")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
