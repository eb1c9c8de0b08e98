"""Truncated spherically symmetric rooted trees.

Vertices of level ``n`` are words ``(x_1, ..., x_n)`` with ``0 <= x_i < m_i``.
Within a level they are ranked big-endian in mixed radix, so the children of a
vertex occupy a contiguous block of the next level.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterator, Sequence

MAX_DEPTH = 12
MAX_LEVEL_SIZE = 20000


class TreeError(ValueError):
    pass


class CapacityError(TreeError):
    """A size cap (depth, level size, enumeration) was exceeded."""


@dataclass(frozen=True)
class Vertex:
    word: tuple[int, ...]

    @property
    def level(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.word)) + ")"


ROOT = Vertex(())


@dataclass(frozen=True)
class TreeShape:
    valencies: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(m) for m in self.valencies)
        object.__setattr__(self, "valencies", vals)
        if not vals:
            raise TreeError("depth must be at least 1")
        if any(m < 2 for m in vals):
            raise TreeError(f"every valency must be >= 2, got {vals}")
        if len(vals) > MAX_DEPTH:
            raise CapacityError(f"depth {len(vals)} exceeds cap {MAX_DEPTH}")
        if prod(vals) > MAX_LEVEL_SIZE:
            raise CapacityError(
                f"level size {prod(vals)} exceeds cap {MAX_LEVEL_SIZE}")

    @classmethod
    def regular(cls, m: int, depth: int) -> "TreeShape":
        return cls((m,) * depth)

    @property
    def depth(self) -> int:
        return len(self.valencies)

    def truncate(self, depth: int) -> "TreeShape":
        return TreeShape(self.valencies[:depth])

    def is_regular(self) -> bool:
        return len(set(self.valencies)) == 1

    # -- levels -------------------------------------------------------------

    def level_size(self, n: int) -> int:
        self._check_level(n)
        return prod(self.valencies[:n])

    def level_offset(self, n: int) -> int:
        """Offset of level ``n`` inside the disjoint union ``L_1 + ... + L_D``."""
        if not 1 <= n <= self.depth:
            raise TreeError(f"level {n} not in 1..{self.depth}")
        return sum(self.level_size(i) for i in range(1, n))

    @property
    def domain_size(self) -> int:
        return sum(self.level_size(i) for i in range(1, self.depth + 1))

    def level(self, n: int) -> Iterator[Vertex]:
        for i in range(self.level_size(n)):
            yield self.decode(n, i)

    # -- vertices -----------------------------------------------------------

    def check_vertex(self, v: Vertex) -> None:
        if v.level > self.depth:
            raise TreeError(f"vertex {v} deeper than {self.depth}")
        for x, m in zip(v.word, self.valencies):
            if not 0 <= x < m:
                raise TreeError(f"letter {x} out of range in {v}")

    def encode(self, v: Vertex) -> int:
        self.check_vertex(v)
        idx = 0
        for x, m in zip(v.word, self.valencies):
            idx = idx * m + x
        return idx

    def decode(self, n: int, index: int) -> Vertex:
        size = self.level_size(n)
        if not 0 <= index < size:
            raise TreeError(f"index {index} out of range for level {n}")
        word = []
        for m in reversed(self.valencies[:n]):
            index, x = divmod(index, m)
            word.append(x)
        return Vertex(tuple(reversed(word)))

    def point(self, v: Vertex) -> int:
        """Position of a non-root vertex in the disjoint-union domain."""
        if v.level == 0:
            raise TreeError("the root is not a point of the level domain")
        return self.level_offset(v.level) + self.encode(v)

    def vertex_at(self, point: int) -> Vertex:
        for n in range(1, self.depth + 1):
            size = self.level_size(n)
            if point < size:
                return self.decode(n, point)
            point -= size
        raise TreeError("point outside the level domain")

    def children(self, v: Vertex) -> list[Vertex]:
        self.check_vertex(v)
        if v.level >= self.depth:
            raise TreeError(f"vertex {v} sits at the working depth")
        return [Vertex(v.word + (x,)) for x in range(self.valencies[v.level])]

    def descendant_points(self, v: Vertex) -> list[int]:
        return [self.point(c) for c in self.children(v)]

    def _check_level(self, n: int) -> None:
        if not 0 <= n <= self.depth:
            raise TreeError(f"level {n} not in 0..{self.depth}")


def parent(v: Vertex) -> Vertex:
    if v.level == 0:
        raise TreeError("the root has no parent")
    return Vertex(v.word[:-1])


def spine(n: int) -> Vertex:
    """The all-zero vertex of level ``n``."""
    return Vertex((0,) * n)


def common_prefix(u: Vertex, v: Vertex) -> int:
    k = 0
    for x, y in zip(u.word, v.word):
        if x != y:
            break
        k += 1
    return k


def vertex_distance(u: Vertex, v: Vertex) -> int:
    if u.level != v.level:
        raise TreeError("vertex_distance needs vertices of one level")
    return 2 * (u.level - common_prefix(u, v))


def mixed_radix(word: Sequence[int], radices: Sequence[int]) -> int:
    idx = 0
    for x, m in zip(word, radices):
        idx = idx * m + x
    return idx
