"""Pure-Python kernels; reference semantics for the compiled ``_kernels`` module."""
from __future__ import annotations

from typing import Sequence


def pair_orbits(generators: Sequence[Sequence[int]], n: int) -> tuple[list[int], int]:
    """Label ordered pairs ``(x, y)`` (flat index ``x*n + y``) by diagonal orbit.

    Labels are assigned in order of first appearance in row-major order.
    """
    size = n * n
    label = [-1] * size
    count = 0
    for start in range(size):
        if label[start] >= 0:
            continue
        label[start] = count
        stack = [start]
        while stack:
            c = stack.pop()
            x, y = divmod(c, n)
            for g in generators:
                d = g[x] * n + g[y]
                if label[d] < 0:
                    label[d] = count
                    stack.append(d)
        count += 1
    return label, count


def intersection_numbers(table: Sequence[int], n: int, r: int,
                         reps: Sequence[tuple[int, int]]) -> list[int]:
    """Flat ``p[k][i][j]`` counts of ``z`` with ``(x,z)`` in ``i`` and ``(z,y)`` in ``j``."""
    out = [0] * (r * r * r)
    for k, (x, y) in enumerate(reps):
        row = x * n
        base = k * r * r
        for z in range(n):
            out[base + table[row + z] * r + table[z * n + y]] += 1
    return out


def fixed_points(elements: Sequence[Sequence[int]]) -> list[int]:
    return [sum(1 for i, x in enumerate(g) if i == x) for g in elements]
