"""Brute-force reference computations, independent of the library's algorithms."""
from __future__ import annotations

from fractions import Fraction


def compose(g, h):
    """g after h."""
    return tuple(g[x] for x in h)


def closure(generators, n):
    """Every element of the generated group, by breadth-first multiplication."""
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    gens = [tuple(g) for g in generators]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def union_find_pair_orbits(generators, n):
    parent = list(range(n * n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in generators:
        for x in range(n):
            for y in range(n):
                a, b = find(x * n + y), find(g[x] * n + g[y])
                if a != b:
                    parent[a] = b
    return len({find(c) for c in range(n * n)})


def burnside_pair_count(elements, n):
    """Orbits on ordered pairs: the mean of squared fixed-point counts."""
    total = sum(sum(1 for x in range(n) if g[x] == x) ** 2 for g in elements)
    q = Fraction(total, len(elements))
    assert q.denominator == 1
    return int(q)


def naive_classes(elements):
    elems = list(elements)
    inv = {g: tuple(sorted(range(len(g)), key=lambda i: g[i])) for g in elems}
    remaining = set(elems)
    sizes = []
    while remaining:
        g = next(iter(remaining))
        cls = {compose(compose(h, g), inv[h]) for h in elems}
        remaining -= cls
        sizes.append(len(cls))
    return sorted(sizes)


def is_shift_periodic(entries, p):
    """Some shift ``t`` with ``e_i = e_{i+t} (mod p)`` for all ``i``."""
    m = len(entries)
    return any(all((entries[i] - entries[(i + t) % m]) % p == 0 for i in range(m))
               for t in range(1, m))
