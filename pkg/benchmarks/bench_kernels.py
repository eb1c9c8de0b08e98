"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
from __future__ import annotations

import argparse
import timeit

from arborrep import _kernels_py as pure
from arborrep.families import DefiningVector, ggs_build, s3_regular_wreath

try:
    from arborrep import _kernels as compiled
except ImportError:  # extension not built
    compiled = None


def workloads():
    ggs = ggs_build(DefiningVector(3, 1, (1, 2, 0)), 5)
    wreath = s3_regular_wreath(3)
    cases = []
    for name, g, n in [("ggs p=3 L_5", ggs, 5), ("s3 wreath L_3", wreath, 3)]:
        gens = g.level_generators(n)
        size = g.shape.level_size(n)
        cases.append((name, gens, size))
    return cases


def bench(repeat: int) -> None:
    header = f"{'kernel':<22}{'workload':<16}{'pure (ms)':>12}{'cython (ms)':>14}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, gens, size in workloads():
        table, rank = pure.pair_orbits(gens, size)
        first = {}
        for idx, lab in enumerate(table):
            first.setdefault(lab, divmod(idx, size))
        reps = [first[k] for k in range(rank)]
        elements = [list(g) for g in gens] * 200
        jobs = {
            "pair_orbits": lambda m: m.pair_orbits(gens, size),
            "intersection_numbers": lambda m: m.intersection_numbers(table, size, rank, reps),
            "fixed_points": lambda m: m.fixed_points(elements),
        }
        for kname, job in jobs.items():
            t_pure = min(timeit.repeat(lambda: job(pure), number=1, repeat=repeat)) * 1e3
            if compiled is None:
                print(f"{kname:<22}{name:<16}{t_pure:>12.2f}{'n/a':>14}{'':>10}")
                continue
            assert job(pure) == job(compiled), kname
            t_c = min(timeit.repeat(lambda: job(compiled), number=1, repeat=repeat)) * 1e3
            print(f"{kname:<22}{name:<16}{t_pure:>12.2f}{t_c:>14.2f}{t_pure / t_c:>9.1f}x")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    bench(parser.parse_args().repeat)
