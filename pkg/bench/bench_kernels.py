"""Time the compiled and pure-Python kernels on the same inputs.

    python3 bench/bench_kernels.py [--repeat 3] [--seed 0]

Both backends must return identical results; the script checks that
before timing anything.
"""

import argparse
import random
import time

from colorsat.constructions import build_prop3, build_thm9
from colorsat.graph import EdgeColoredGraph
from colorsat.kernels import backends


def random_graph(rng, n, t, p):
    return EdgeColoredGraph(n, t, [(u, v, rng.randint(1, t)) for u in range(n) for v in range(u + 1, n)
                                   if rng.random() < p])


def workloads(seed):
    rng = random.Random(seed)
    small = [random_graph(rng, rng.randint(5, 8), rng.randint(2, 3), rng.random()) for _ in range(400)]
    mid = [random_graph(rng, 16, 3, 0.3) for _ in range(40)]
    sat = [build_prop3(n) for n in range(11, 31)] + [build_thm9(n, 3) for n in range(9, 31)]
    return [
        ("canon_label, 400 random graphs n<=8", "canon", small),
        ("canon_label, 40 random graphs n=16", "canon", mid),
        ("canon_label, prop3/thm9 n<=30", "canon", sat),
        ("tri_scan, prop3/thm9 n<=30", "scan", sat),
        ("tri_find, 400 random graphs n<=8", "find", small),
    ]


def run(impl, kind, graphs):
    out = []
    for g in graphs:
        m = g.matrix
        if kind == "canon":
            out.append(impl.canon_label(g.n, m, g.t))
        elif kind == "scan":
            out.append(impl.tri_scan(g.n, m, g.t, 2, 10, False))
        else:
            out.append(impl.tri_find(g.n, m, g.t, 2))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    impls = backends()
    if "cython" not in impls:
        print("compiled kernels not built; only the Python backend is available")
    print(f"{'workload':42s}" + "".join(f"{name:>12s}" for name in impls) + ("     speedup" if len(impls) > 1 else ""))
    for label, kind, graphs in workloads(args.seed):
        results = {name: run(impl, kind, graphs) for name, impl in impls.items()}
        first = next(iter(results.values()))
        if any(r != first for r in results.values()):
            raise SystemExit(f"backends disagree on {label}")
        times = {}
        for name, impl in impls.items():
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                run(impl, kind, graphs)
                best = min(best, time.perf_counter() - t0)
            times[name] = best
        row = f"{label:42s}" + "".join(f"{times[name] * 1000:10.1f}ms" for name in impls)
        if "cython" in times:
            row += f"{times['python'] / times['cython']:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
