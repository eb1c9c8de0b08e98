"""Constructors for the standard example groups.

Child letters are residues ``0..m-1``; the coset label ``i + mZ`` with
``1 <= i <= m`` becomes the letter ``i mod m``, so position ``m`` of a GGS
defining vector is the letter 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import gcd
from typing import Sequence

from . import modp
from .automata import (Automaton, LevelAction, LevelStagedGenerator, State, commutator,
                       cyclic_shift, is_bijection, materialize, power)
from .group import TreeGroup
from .perm import orbits
from .tree import TreeError, TreeShape, Vertex, spine


class FamilyError(ValueError):
    pass


# ---------------------------------------------------------------------------
# GGS groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DefiningVector:
    p: int
    k: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if not modp.is_prime(self.p):
            raise FamilyError(f"p = {self.p} is not prime")
        if self.k < 1:
            raise FamilyError("k must be at least 1")
        m = self.m
        entries = tuple(int(x) % m for x in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != m:
            raise FamilyError(f"defining vector needs m = {m} entries, got {len(entries)}")
        if entries[-1] != 0:
            raise FamilyError("the last entry e_m must be 0")
        if all(x % self.p == 0 for x in entries):
            raise FamilyError(f"no entry is nonzero mod p = {self.p}")

    @property
    def m(self) -> int:
        return self.p ** self.k

    def __getitem__(self, i: int) -> int:
        """``e_i`` with cyclic 1-based indexing."""
        return self.entries[(i - 1) % self.m]


def ggs_is_aperiodic(e: DefiningVector) -> bool:
    """Every 2 x m matrix with rows ``e_i`` and ``e_{i+t}`` has rank 2 over GF(p)."""
    m, p = e.m, e.p
    for t in range(1, m):
        rows = [[e[i] % p for i in range(1, m + 1)],
                [e[i + t] % p for i in range(1, m + 1)]]
        if len(modp.rref(rows, p)[0]) < 2:
            return False
    return True


def ggs_is_centered(e: DefiningVector) -> bool:
    """``e_{m/2}`` is the only entry generating ``Z/m``; false for odd ``m``."""
    m = e.m
    if m % 2:
        return False
    gens = [i for i in range(1, m + 1) if gcd(e[i], m) == 1]
    return gens == [m // 2]


def ggs_prediction(e: DefiningVector) -> bool | None:
    """Predicted local 2-transitivity; ``None`` where the criterion does not apply."""
    if e.p == 2 and ggs_is_centered(e):
        return None
    return ggs_is_aperiodic(e)


def ggs_automaton(e: DefiningVector) -> Automaton:
    m = e.m
    ident = tuple(range(m))
    idle = ("id",) * m

    def a_pow(j: int) -> str:
        j %= m
        return "id" if j == 0 else ("a" if j == 1 else f"a^{j}")

    states = [State("id", ident, idle)]
    states += [State(a_pow(j), cyclic_shift(m, j), idle) for j in range(1, m)]
    states.append(State("b", ident, tuple("b" if x == 0 else a_pow(e[x]) for x in range(m))))
    return Automaton(m, tuple(states), ("a", "b"))


def ggs_build(e: DefiningVector, depth: int) -> TreeGroup:
    aut = ggs_automaton(e)
    shape = TreeShape.regular(e.m, depth)
    gens = {name: materialize(aut, shape, name) for name in aut.generators}
    return TreeGroup(shape, gens, "ggs", {"p": e.p, "k": e.k, "e": list(e.entries)})


def ggs_H_generators(group: TreeGroup) -> list[LevelAction]:
    """The commutators ``[b^k, a^l]`` for ``1 <= k, l <= m - 1``."""
    a, b = group.generators["a"], group.generators["b"]
    m = group.shape.valencies[0]
    return [commutator(power(b, k), power(a, l))
            for k in range(1, m) for l in range(1, m)]


def ggs_commutator_labels(e: DefiningVector, k: int, l: int) -> list[int]:
    """Exponents ``c_j`` with label ``alpha^{c_j}`` of ``[b^k, a^l]`` at child ``j``.

    Read off the section formula: the section at position ``j`` carries the
    rooted part ``a^{k (e_j - e_{j-l})}``.
    """
    m = e.m
    return [(k * (e[j] - e[j - l])) % m for j in range(m)]


# ---------------------------------------------------------------------------
# Iterated wreath products
# ---------------------------------------------------------------------------


def wreath_build(level_generators: Sequence[Sequence[Sequence[int]]], depth: int,
                 repeat_last: bool = False) -> TreeGroup:
    """Truncated iterated wreath product of the given transitive level groups.

    Generators are one label per level generator, placed at the all-zero
    vertex; conjugation spreads them over the whole level.
    """
    levels = [list(map(tuple, gens)) for gens in level_generators]
    if not levels:
        raise FamilyError("at least one level group is required")
    if len(levels) < depth:
        if not repeat_last:
            raise FamilyError(f"{len(levels)} level groups given for depth {depth}")
        levels += [levels[-1]] * (depth - len(levels))
    levels = levels[:depth]
    degrees = []
    for n, gens in enumerate(levels):
        if not gens:
            raise FamilyError(f"level {n + 1}: no generators")
        m = len(gens[0])
        if any(not is_bijection(g, m) for g in gens):
            raise FamilyError(f"level {n + 1}: generators are not permutations of 0..{m - 1}")
        if not orbits(gens, m).is_transitive:
            raise FamilyError(f"level {n + 1}: level group is intransitive")
        degrees.append(m)
    shape = TreeShape(tuple(degrees))
    gens = {}
    for n, lg in enumerate(levels):
        for j, s in enumerate(lg):
            gens[f"x{n}_{j}"] = materialize(LevelStagedGenerator.single(shape, spine(n), s), shape)
    return TreeGroup(shape, gens, "iterated_wreath",
                     {"levels": [[list(g) for g in lg] for lg in levels]})


def s3_elements() -> list[tuple[int, ...]]:
    return sorted(permutations(range(3)))


def regular_s3_generators() -> list[tuple[int, ...]]:
    """Left multiplication by ``(0 1)`` and ``(0 1 2)`` on the six elements of S3."""
    elems = s3_elements()
    index = {g: i for i, g in enumerate(elems)}
    out = []
    for s in [(1, 0, 2), (1, 2, 0)]:
        out.append(tuple(index[tuple(s[h[x]] for x in range(3))] for h in elems))
    return out


def symmetric_generators(m: int) -> list[tuple[int, ...]]:
    if m == 2:
        return [(1, 0)]
    return [(1, 0) + tuple(range(2, m)), cyclic_shift(m)]


def s3_regular_wreath(depth: int) -> TreeGroup:
    g = wreath_build([regular_s3_generators()], depth, repeat_last=True)
    g.params = {"builtin": "s3_regular"}
    return g


def full_symmetric_wreath(valencies: Sequence[int]) -> TreeGroup:
    g = wreath_build([symmetric_generators(m) for m in valencies], len(valencies))
    g.params = {"builtin": "full_symmetric", "degrees": list(valencies)}
    return g


# ---------------------------------------------------------------------------
# Dihedral group on the binary tree
# ---------------------------------------------------------------------------


def dihedral_automaton() -> Automaton:
    return Automaton(2, (State("id", (0, 1), ("id", "id")),
                         State("a", (1, 0), ("id", "id")),
                         State("b", (0, 1), ("a", "b"))), ("a", "b"))


def dihedral_build(depth: int) -> TreeGroup:
    aut = dihedral_automaton()
    shape = TreeShape.regular(2, depth)
    return TreeGroup(shape, {n: materialize(aut, shape, n) for n in aut.generators},
                     "dihedral_binary", {})


# ---------------------------------------------------------------------------
# Congruence subgroup GL^1_{N+1}(R) on the projective-space tree
# ---------------------------------------------------------------------------


class PadicRing:
    """``Z / p^r``."""
    kind = "p-adic"

    def __init__(self, p: int, r: int):
        self.p, self.r, self.mod = p, r, p ** r
        self.zero, self.one, self.pi = 0, 1, p % self.mod

    def add(self, x, y):
        return (x + y) % self.mod

    def mul(self, x, y):
        return x * y % self.mod

    def inv(self, x):
        if x % self.p == 0:
            raise ArithmeticError("not a unit")
        return pow(x, -1, self.mod)

    def div_pi(self, x):
        if x % self.p:
            raise ArithmeticError(f"{x} is not divisible by p")
        return x // self.p

    def from_digits(self, digits: Sequence[int]):
        return sum(d * self.p ** i for i, d in enumerate(digits)) % self.mod

    def digits(self, x, n: int) -> list[int]:
        out = []
        for _ in range(n):
            x, d = divmod(x, self.p)
            out.append(d)
        return out


class LaurentRing:
    """``F_p[t] / (t^r)``; elements are coefficient tuples, lowest degree first."""
    kind = "laurent"

    def __init__(self, p: int, r: int):
        self.p, self.r = p, r
        self.zero = (0,) * r
        self.one = (1,) + (0,) * (r - 1)
        self.pi = (0, 1) + (0,) * (r - 2) if r > 1 else self.zero

    def add(self, x, y):
        return tuple((a + b) % self.p for a, b in zip(x, y))

    def mul(self, x, y):
        out = [0] * self.r
        for i, a in enumerate(x):
            if a:
                for j in range(self.r - i):
                    out[i + j] = (out[i + j] + a * y[j]) % self.p
        return tuple(out)

    def inv(self, x):
        if x[0] % self.p == 0:
            raise ArithmeticError("not a unit")
        c0 = pow(x[0], -1, self.p)
        out = [0] * self.r
        out[0] = c0
        for n in range(1, self.r):
            s = sum(x[i] * out[n - i] for i in range(1, n + 1))
            out[n] = (-s * c0) % self.p
        return tuple(out)

    def div_pi(self, x):
        if x[0] % self.p:
            raise ArithmeticError("not divisible by t")
        return tuple(x[1:]) + (0,)

    def from_digits(self, digits: Sequence[int]):
        d = list(digits)[:self.r]
        return tuple(d) + (0,) * (self.r - len(d))

    def digits(self, x, n: int) -> list[int]:
        return list(x[:n]) + [0] * max(0, n - self.r)


RING_KINDS = {"p-adic": PadicRing, "laurent": LaurentRing}


@dataclass(frozen=True)
class ProjectiveVertex:
    """The point ``(1 : pi a_2 : ... : pi a_{N+1})``; ``digits[c]`` are the
    pi-adic digits of ``a_{c+2}`` modulo ``pi^level``."""
    level: int
    digits: tuple[tuple[int, ...], ...]

    def letters(self, p: int) -> tuple[int, ...]:
        """Tree word: letter ``j`` packs the ``pi^j`` digits of all coordinates in base p."""
        return tuple(sum(self.digits[c][j] * p ** c for c in range(len(self.digits)))
                     for j in range(self.level))

    @classmethod
    def from_letters(cls, word: Sequence[int], p: int, N: int) -> "ProjectiveVertex":
        digits = [[0] * len(word) for _ in range(N)]
        for j, x in enumerate(word):
            for c in range(N):
                x, digits[c][j] = divmod(x, p)
        return cls(len(word), tuple(map(tuple, digits)))


def gl_generator_matrices(ring, N: int) -> dict[str, list[list]]:
    out = {}
    for i in range(N + 1):
        for j in range(N + 1):
            g = [[ring.one if a == b else ring.zero for b in range(N + 1)] for a in range(N + 1)]
            g[i][j] = ring.add(g[i][j], ring.pi)
            out[f"E{i + 1}{j + 1}"] = g
    return out


def gl_act(ring, g: Sequence[Sequence], v: ProjectiveVertex) -> ProjectiveVertex:
    """Matrix times column, normalised so the (unit) first coordinate is 1."""
    N = len(g) - 1
    x = [ring.one] + [ring.mul(ring.pi, ring.from_digits(d)) for d in v.digits]
    y = []
    for row in g:
        acc = ring.zero
        for gij, xj in zip(row, x):
            acc = ring.add(acc, ring.mul(gij, xj))
        y.append(acc)
    u = ring.inv(y[0])
    digits = tuple(tuple(ring.digits(ring.div_pi(ring.mul(y[c + 1], u)), v.level))
                   for c in range(N))
    return ProjectiveVertex(v.level, digits)


def gl_build(p: int, N: int, depth: int, ring_kind: str = "p-adic") -> TreeGroup:
    if p == 2:
        raise FamilyError("p = 2 is not supported for the congruence family")
    if not modp.is_prime(p):
        raise FamilyError(f"p = {p} is not prime")
    if N < 1:
        raise FamilyError("N must be at least 1")
    if ring_kind not in RING_KINDS:
        raise FamilyError(f"unknown ring kind {ring_kind!r}")
    ring = RING_KINDS[ring_kind](p, depth + 1)
    shape = TreeShape.regular(p ** N, depth)
    gens = {}
    for name, g in gl_generator_matrices(ring, N).items():
        levels = []
        for n in range(1, depth + 1):
            img = []
            for idx in range(shape.level_size(n)):
                v = ProjectiveVertex.from_letters(shape.decode(n, idx).word, p, N)
                w = gl_act(ring, g, v)
                img.append(shape.encode(Vertex(w.letters(p))))
            levels.append(tuple(img))
        gens[name] = LevelAction(shape, tuple(levels))
    return TreeGroup(shape, gens, "gl_congruence", {"p": p, "N": N, "ring": ring_kind})
