"""Exact permutation-group algorithms on small finite domains.

Permutations are tuples of images over ``range(n)``; ``mul(g, h)`` is
``g o h`` (apply ``h`` first). The stabiliser chain is built by the
deterministic Schreier-Sims algorithm: every Schreier generator is sifted, so
strong generation is verified rather than probable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Sequence

from . import kernels

Perm = tuple[int, ...]

PAIR_CELL_CAP = 16_000_000


class PermError(ValueError):
    pass


def identity(n: int) -> Perm:
    return tuple(range(n))


def mul(g: Perm, h: Perm) -> Perm:
    return tuple(map(g.__getitem__, h))


def inverse(g: Perm) -> Perm:
    inv = [0] * len(g)
    for i, x in enumerate(g):
        inv[x] = i
    return tuple(inv)


def is_identity(g: Perm) -> bool:
    return all(i == x for i, x in enumerate(g))


def check_perm(g: Sequence[int], n: int) -> Perm:
    g = tuple(int(x) for x in g)
    if len(g) != n or sorted(g) != list(range(n)):
        raise PermError(f"not a permutation of {n} points: {g}")
    return g


def perm_order(g: Perm) -> int:
    from math import lcm
    seen = [False] * len(g)
    o = 1
    for i in range(len(g)):
        if not seen[i]:
            j, c = i, 0
            while not seen[j]:
                seen[j] = True
                j = g[j]
                c += 1
            o = lcm(o, c)
    return o


# ---------------------------------------------------------------------------
# Orbits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitPartition:
    points: tuple[int, ...]
    ids: tuple[int, ...]
    count: int

    @property
    def size(self) -> int:
        return len(self.points)

    def orbit_of(self, point: int) -> int:
        return self.ids[self.points.index(point)]

    def orbits(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.count)]
        for p, i in zip(self.points, self.ids):
            out[i].append(p)
        return out

    @property
    def is_transitive(self) -> bool:
        return self.count == 1


def orbits(generators: Sequence[Perm], n: int,
           subset: Sequence[int] | None = None) -> OrbitPartition:
    """Orbit partition of ``range(n)`` or of an invariant subset.

    Orbit ids are numbered by their smallest-position point in ``subset`` order.
    """
    points = tuple(range(n)) if subset is None else tuple(subset)
    if subset is not None:
        _check_invariant(generators, points)
    pos = {p: i for i, p in enumerate(points)}
    ids = [-1] * len(points)
    count = 0
    for start in range(len(points)):
        if ids[start] >= 0:
            continue
        ids[start] = count
        stack = [points[start]]
        while stack:
            x = stack.pop()
            for g in generators:
                y = g[x]
                j = pos[y]
                if ids[j] < 0:
                    ids[j] = count
                    stack.append(y)
        count += 1
    return OrbitPartition(points, tuple(ids), count)


def orbit(generators: Sequence[Perm], point: int) -> list[int]:
    seen = {point}
    out = [point]
    for x in out:
        for g in generators:
            y = g[x]
            if y not in seen:
                seen.add(y)
                out.append(y)
    return out


@dataclass(frozen=True)
class PairPartition:
    """Orbits of the diagonal action on ordered pairs; ``table[x][y]`` is the orbit id."""
    n: int
    table: tuple[tuple[int, ...], ...]
    count: int


def orbits_on_pairs(generators: Sequence[Perm], n: int) -> PairPartition:
    if n * n > PAIR_CELL_CAP:
        raise PermError(f"{n}^2 pair cells exceed the cap {PAIR_CELL_CAP}")
    flat, count = kernels.pair_orbits(generators, n)
    table = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
    return PairPartition(n, table, count)


def _check_invariant(generators: Sequence[Perm], subset: Sequence[int]) -> None:
    s = set(subset)
    for g in generators:
        if any(g[x] not in s for x in subset):
            raise PermError("subset is not invariant under the generators")


def restrict(generators: Sequence[Perm], subset: Sequence[int]) -> list[Perm]:
    """Generators renumbered as permutations of ``range(len(subset))``."""
    subset = list(subset)
    _check_invariant(generators, subset)
    pos = {p: i for i, p in enumerate(subset)}
    return [tuple(pos[g[x]] for x in subset) for g in generators]


# ---------------------------------------------------------------------------
# Stabiliser chains
# ---------------------------------------------------------------------------


@dataclass
class ChainLevel:
    point: int
    gens: list[Perm]
    orbit: list[int]
    # coset representative u_b with u_b(point) = b, and its inverse
    reps: dict[int, Perm]
    inv_reps: dict[int, Perm]
    # Schreier back-pointers: b -> (predecessor, generator index)
    back: dict[int, tuple[int, int]] = field(default_factory=dict)
    checked: set[tuple[int, int]] = field(default_factory=set)

    def extend(self, n: int) -> None:
        """Grow orbit and transversal under the current generators."""
        i = 0
        while i < len(self.orbit):
            b = self.orbit[i]
            ub = self.reps[b]
            for k, s in enumerate(self.gens):
                c = s[b]
                if c not in self.reps:
                    u = mul(s, ub)
                    self.reps[c] = u
                    self.inv_reps[c] = inverse(u)
                    self.back[c] = (b, k)
                    self.orbit.append(c)
            i += 1


@dataclass
class StabChain:
    degree: int
    levels: list[ChainLevel]
    generators: list[Perm]

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    @property
    def strong_generators(self) -> list[Perm]:
        seen: dict[Perm, None] = {}
        for lv in self.levels:
            for g in lv.gens:
                seen.setdefault(g, None)
        return list(seen)

    @property
    def orbit_sizes(self) -> list[int]:
        return [len(lv.orbit) for lv in self.levels]

    def order(self) -> int:
        return prod(self.orbit_sizes)

    def sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            b = g[lv.point]
            inv = lv.inv_reps.get(b)
            if inv is None:
                return g, i
            g = mul(inv, g)
        return g, len(self.levels)

    def contains(self, g: Sequence[int]) -> bool:
        if len(g) != self.degree:
            raise PermError(f"degree mismatch: {len(g)} != {self.degree}")
        h, i = self.sift(tuple(g))
        return i == len(self.levels) and is_identity(h)

    def tail(self, k: int) -> "StabChain":
        """The chain of the pointwise stabiliser of the first ``k`` base points."""
        gens = self.levels[k].gens if k < len(self.levels) else []
        return StabChain(self.degree, self.levels[k:], list(gens))


def schreier_sims(generators: Iterable[Sequence[int]], n: int,
                  base: Sequence[int] = (), known_order: int | None = None) -> StabChain:
    """Base and strong generating set with every Schreier generator sifted.

    ``base`` is a requested base prefix. With ``known_order`` the construction
    stops as soon as the fundamental orbits multiply to that order, which is
    exact because partial orbits can only undercount.
    """
    gens: list[Perm] = []
    for g in generators:
        g = check_perm(g, n)
        if not is_identity(g) and g not in gens:
            gens.append(g)
    base = list(base)
    if len(set(base)) != len(base) or any(not 0 <= b < n for b in base):
        raise PermError(f"invalid base prefix {base}")
    for g in gens:
        if all(g[b] == b for b in base):
            base.append(next(i for i in range(n) if g[i] != i))

    ident = identity(n)
    levels: list[ChainLevel] = []
    fixed: list[int] = []
    for b in base:
        lv_gens = [g for g in gens if all(g[x] == x for x in fixed)]
        lv = ChainLevel(b, lv_gens, [b], {b: ident}, {b: ident})
        lv.extend(n)
        levels.append(lv)
        fixed.append(b)
    chain = StabChain(n, levels, gens)

    def complete() -> bool:
        return known_order is not None and chain.order() == known_order

    i = len(levels) - 1
    while i >= 0 and not complete():
        lv = levels[i]
        added = False
        for bi in range(len(lv.orbit)):
            b = lv.orbit[bi]
            for k, s in enumerate(lv.gens):
                if (b, k) in lv.checked:
                    continue
                lv.checked.add((b, k))
                sb = s[b]
                sg = mul(lv.inv_reps[sb], mul(s, lv.reps[b]))
                if is_identity(sg):
                    continue
                h, j = chain.sift(sg, i + 1)
                if j == len(levels) and is_identity(h):
                    continue
                if j == len(levels):
                    pt = next(x for x in range(n) if h[x] != x)
                    levels.append(ChainLevel(pt, [], [pt], {pt: ident}, {pt: ident}))
                for lvl in levels[i + 1:j + 1]:
                    lvl.gens.append(h)
                    lvl.extend(n)
                i = j
                added = True
                break
            if added:
                break
        if not added:
            i -= 1
    chain.levels = levels
    return chain


def order(chain: StabChain) -> int:
    return chain.order()


def contains(chain: StabChain, g: Sequence[int]) -> bool:
    return chain.contains(g)


def stabilizer_chain(chain: StabChain, points: Sequence[int]) -> StabChain:
    """Chain of the pointwise stabiliser of ``points``, by base change."""
    points = list(points)
    if not points:
        return chain
    full = schreier_sims(chain.strong_generators, chain.degree, base=points,
                         known_order=chain.order())
    return full.tail(len(points))


def stabilizer(chain: StabChain, points: Sequence[int]) -> list[Perm]:
    return list(stabilizer_chain(chain, points).generators)


def normal_closure(chain: StabChain, seeds: Sequence[Sequence[int]]) -> StabChain:
    n = chain.degree
    seeds = [check_perm(s, n) for s in seeds]
    for s in seeds:
        if not chain.contains(s):
            raise PermError("seed is not an element of the group")
    group_gens = chain.strong_generators
    group_invs = [inverse(g) for g in group_gens]
    gens = [s for s in seeds if not is_identity(s)]
    closure = schreier_sims(gens, n)
    queue = list(gens)
    while queue:
        x = queue.pop(0)
        for g, gi in zip(group_gens, group_invs):
            c = mul(mul(g, x), gi)
            if not closure.contains(c):
                gens.append(c)
                queue.append(c)
                closure = schreier_sims(gens, n)
    return closure


def enumerate_elements(chain: StabChain, cap: int) -> list[Perm]:
    """All group elements, each once, ordered by transversal coordinates."""
    if chain.order() > cap:
        raise PermError(f"group order {chain.order()} exceeds enumeration cap {cap}")
    elems = [identity(chain.degree)]
    for lv in reversed(chain.levels):
        reps = [lv.reps[b] for b in lv.orbit]
        elems = [mul(u, g) for u in reps for g in elems]
    return elems


def fixed_point_counts(elements: Sequence[Perm]) -> list[int]:
    return kernels.fixed_points(elements)
