"""Orbital schemes of transitive permutation actions.

The commutant of a permutation representation has the orbitals as a basis,
so it is commutative exactly when the intersection numbers are symmetric in
their two lower indices.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from . import kernels
from .perm import Perm, PermError, orbits, orbits_on_pairs


class SchemeError(ValueError):
    pass


@dataclass(frozen=True)
class OrbitalScheme:
    n: int
    table: tuple[tuple[int, ...], ...]   # orbital id of (x, y); the diagonal is 0
    rank: int
    valencies: tuple[int, ...]
    diagonal: int = 0

    def representative(self, k: int) -> tuple[int, int]:
        for x, row in enumerate(self.table):
            for y, v in enumerate(row):
                if v == k:
                    return x, y
        raise SchemeError(f"no orbital {k}")

    @cached_property
    def paired(self) -> tuple[int, ...]:
        """``paired[i]`` is the orbital of the transposed pairs of ``i``."""
        out = []
        for k in range(self.rank):
            x, y = self.representative(k)
            out.append(self.table[y][x])
        return tuple(out)

    @cached_property
    def intersection(self) -> "IntersectionTensor":
        return intersection_numbers(self)

    @property
    def is_commutative(self) -> bool:
        return is_commutative(self)


@dataclass(frozen=True)
class IntersectionTensor:
    rank: int
    flat: tuple[int, ...]

    def __getitem__(self, kij: tuple[int, int, int]) -> int:
        k, i, j = kij
        r = self.rank
        return self.flat[(k * r + i) * r + j]


def build_scheme(generators: Sequence[Perm], n: int) -> OrbitalScheme:
    generators = [tuple(g) for g in generators]
    if not orbits(generators, n).is_transitive:
        raise SchemeError("the action is not transitive")
    try:
        pp = orbits_on_pairs(generators, n)
    except PermError as exc:
        raise SchemeError(str(exc)) from exc
    # reindex: diagonal first, then by first appearance in row-major order
    remap = {pp.table[0][0]: 0}
    for row in pp.table:
        for v in row:
            if v not in remap:
                remap[v] = len(remap)
    table = tuple(tuple(remap[v] for v in row) for row in pp.table)
    valency = [0] * pp.count
    for v in table[0]:
        valency[v] += 1
    return OrbitalScheme(n, table, pp.count, tuple(valency))


def intersection_numbers(scheme: OrbitalScheme) -> IntersectionTensor:
    n, r = scheme.n, scheme.rank
    flat = [v for row in scheme.table for v in row]
    reps = [scheme.representative(k) for k in range(r)]
    return IntersectionTensor(r, tuple(kernels.intersection_numbers(flat, n, r, reps)))


def intersection_numbers_at(scheme: OrbitalScheme, x: int, y: int) -> list[list[int]]:
    """``p[i][j]`` computed from an arbitrary pair ``(x, y)`` of its orbital."""
    r = scheme.rank
    out = [[0] * r for _ in range(r)]
    for z in range(scheme.n):
        out[scheme.table[x][z]][scheme.table[z][y]] += 1
    return out


def is_commutative(scheme: OrbitalScheme) -> bool:
    p = scheme.intersection
    r = scheme.rank
    return all(p[k, i, j] == p[k, j, i]
               for k in range(r) for i in range(r) for j in range(i + 1, r))
