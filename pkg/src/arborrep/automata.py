"""Tree-automorphism generators and their materialisation as level permutations.

Two encodings are supported: finite self-similar automata over a constant
alphabet, and level-staged label rules that prescribe a label at every vertex
above the working depth. Both materialise eagerly into a :class:`LevelAction`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .tree import TreeError, TreeShape, Vertex

Perm = tuple[int, ...]


def is_bijection(p: Sequence[int], n: int | None = None) -> bool:
    n = len(p) if n is None else n
    return len(p) == n and sorted(p) == list(range(n))


def perm_power(p: Perm, k: int) -> Perm:
    n = len(p)
    k %= _order(p)
    out = tuple(range(n))
    for _ in range(k):
        out = tuple(p[x] for x in out)
    return out


def _order(p: Perm) -> int:
    from math import lcm
    seen = [False] * len(p)
    o = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        j, c = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            c += 1
        o = lcm(o, c)
    return o


def cyclic_shift(m: int, k: int = 1) -> Perm:
    return tuple((x + k) % m for x in range(m))


# ---------------------------------------------------------------------------
# Level actions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LevelAction:
    """An automorphism of a truncated tree, stored as one permutation per level.

    ``levels[n - 1]`` is the permutation of ``L_n`` as an index array.
    """
    shape: TreeShape
    levels: tuple[Perm, ...]

    def __post_init__(self):
        if len(self.levels) != self.shape.depth:
            raise TreeError("one permutation per level is required")
        for n, p in enumerate(self.levels, start=1):
            if not is_bijection(p, self.shape.level_size(n)):
                raise TreeError(f"level {n} array is not a bijection")

    @classmethod
    def identity(cls, shape: TreeShape) -> "LevelAction":
        return cls(shape, tuple(tuple(range(shape.level_size(n)))
                                for n in range(1, shape.depth + 1)))

    @classmethod
    def from_domain_perm(cls, shape: TreeShape, perm: Sequence[int]) -> "LevelAction":
        levels = []
        for n in range(1, shape.depth + 1):
            off, size = shape.level_offset(n), shape.level_size(n)
            levels.append(tuple(perm[off + i] - off for i in range(size)))
        return cls(shape, tuple(levels))

    @property
    def perm(self) -> Perm:
        """The permutation of the disjoint union ``L_1 + ... + L_D``."""
        out: list[int] = []
        for n, p in enumerate(self.levels, start=1):
            off = self.shape.level_offset(n)
            out.extend(off + x for x in p)
        return tuple(out)

    def on_level(self, n: int) -> Perm:
        return self.levels[n - 1]

    def __call__(self, v: Vertex) -> Vertex:
        if v.level == 0:
            return v
        return self.shape.decode(v.level, self.levels[v.level - 1][self.shape.encode(v)])

    def __mul__(self, other: "LevelAction") -> "LevelAction":
        return compose(self, other)

    def is_identity(self) -> bool:
        return all(p == tuple(range(len(p))) for p in self.levels)

    def truncate(self, depth: int) -> "LevelAction":
        return LevelAction(self.shape.truncate(depth), self.levels[:depth])

    def is_prefix_compatible(self) -> bool:
        for n in range(2, self.shape.depth + 1):
            m = self.shape.valencies[n - 1]
            lower, upper = self.levels[n - 1], self.levels[n - 2]
            if any(lower[i] // m != upper[i // m] for i in range(len(lower))):
                return False
        return True


def compose(g: LevelAction, h: LevelAction) -> LevelAction:
    """``g o h``: apply ``h`` first."""
    if g.shape != h.shape:
        raise TreeError("cannot compose actions on different shapes")
    return LevelAction(g.shape, tuple(tuple(pg[x] for x in ph)
                                      for pg, ph in zip(g.levels, h.levels)))


def invert(g: LevelAction) -> LevelAction:
    levels = []
    for p in g.levels:
        inv = [0] * len(p)
        for i, x in enumerate(p):
            inv[x] = i
        levels.append(tuple(inv))
    return LevelAction(g.shape, tuple(levels))


def power(g: LevelAction, k: int) -> LevelAction:
    if k < 0:
        g, k = invert(g), -k
    out = LevelAction.identity(g.shape)
    for _ in range(k):
        out = compose(out, g)
    return out


def commutator(g: LevelAction, h: LevelAction) -> LevelAction:
    """``[g, h] = g h g^-1 h^-1``."""
    return compose(compose(g, h), compose(invert(g), invert(h)))


def label_at(g: LevelAction, v: Vertex) -> Perm:
    """The permutation ``s`` of child letters with ``g(vx) = g(v) s(x)``."""
    shape = g.shape
    shape.check_vertex(v)
    n = v.level
    if n >= shape.depth:
        raise TreeError(f"no label at depth {n}: children are not materialised")
    m = shape.valencies[n]
    base = shape.encode(v) * m
    return tuple(g.levels[n][base + x] % m for x in range(m))


# ---------------------------------------------------------------------------
# Automata
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class State:
    name: str
    output: Perm
    transitions: tuple[str, ...]


@dataclass(frozen=True)
class Automaton:
    degree: int
    states: tuple[State, ...]
    generators: tuple[str, ...] = ()

    def __post_init__(self):
        names = [s.name for s in self.states]
        if len(set(names)) != len(names):
            raise TreeError("duplicate state names")
        for s in self.states:
            if not is_bijection(s.output, self.degree):
                raise TreeError(f"state {s.name!r}: output is not a bijection "
                                f"on 0..{self.degree - 1}")
            if len(s.transitions) != self.degree:
                raise TreeError(f"state {s.name!r}: need {self.degree} transitions")
            for t in s.transitions:
                if t not in names:
                    raise TreeError(f"state {s.name!r}: undeclared state {t!r}")
        for gname in self.generators:
            if gname not in names:
                raise TreeError(f"undeclared generator state {gname!r}")

    @property
    def table(self) -> Mapping[str, State]:
        return {s.name: s for s in self.states}

    @classmethod
    def from_json(cls, data: Mapping) -> "Automaton":
        try:
            degree = int(data["degree"])
            states = tuple(State(str(s["name"]), tuple(int(x) for x in s["output"]),
                                 tuple(str(t) for t in s["transitions"]))
                           for s in data["states"])
            gens = tuple(str(g) for g in data.get("generators", ()))
        except (KeyError, TypeError) as exc:
            raise TreeError(f"malformed automaton: {exc}") from exc
        return cls(degree, states, gens)

    def to_json(self) -> dict:
        return {"degree": self.degree,
                "states": [{"name": s.name, "output": list(s.output),
                            "transitions": list(s.transitions)} for s in self.states],
                "generators": list(self.generators)}


@dataclass(frozen=True)
class LevelStagedGenerator:
    """Labels prescribed vertex by vertex: ``labels[n][i]`` acts below vertex ``i`` of ``L_n``."""
    labels: tuple[tuple[Perm, ...], ...]
    allowed: tuple[frozenset[Perm], ...] | None = None

    def __post_init__(self):
        if self.allowed is None:
            return
        for n, row in enumerate(self.labels):
            bad = [lab for lab in row if lab not in self.allowed[n]]
            if bad:
                raise TreeError(f"level {n}: label {bad[0]} not in the declared set")

    @classmethod
    def single(cls, shape: TreeShape, v: Vertex, label: Perm) -> "LevelStagedGenerator":
        """Identity everywhere except ``label`` at vertex ``v``."""
        shape.check_vertex(v)
        rows = []
        for n in range(shape.depth):
            m = shape.valencies[n]
            ident = tuple(range(m))
            row = [ident] * shape.level_size(n)
            if n == v.level:
                row[shape.encode(v)] = tuple(label)
            rows.append(tuple(row))
        return cls(tuple(rows))


def materialize(gen, shape: TreeShape, state: str | None = None) -> LevelAction:
    """Materialise an automaton state or a staged generator to ``shape.depth``."""
    if isinstance(gen, Automaton):
        if state is None:
            raise TreeError("an automaton state name is required")
        return _materialize_state(gen, state, shape)
    if isinstance(gen, LevelStagedGenerator):
        return _materialize_staged(gen, shape)
    raise TypeError(f"cannot materialise {type(gen).__name__}")


def _materialize_state(aut: Automaton, state: str, shape: TreeShape) -> LevelAction:
    if set(shape.valencies) != {aut.degree}:
        raise TreeError(f"automaton of degree {aut.degree} needs a "
                        f"{aut.degree}-regular shape, got {shape.valencies}")
    table = aut.table
    if state not in table:
        raise TreeError(f"undeclared state {state!r}")
    m = aut.degree
    # (image index, section state) for every vertex of the current level
    current = [(0, state)]
    levels = []
    for _ in range(shape.depth):
        nxt = [None] * (len(current) * m)
        for i, (img, st) in enumerate(current):
            s = table[st]
            for x in range(m):
                nxt[i * m + x] = (img * m + s.output[x], s.transitions[x])
        levels.append(tuple(img for img, _ in nxt))
        current = nxt
    return LevelAction(shape, tuple(levels))


def _materialize_staged(gen: LevelStagedGenerator, shape: TreeShape) -> LevelAction:
    if len(gen.labels) < shape.depth:
        raise TreeError("staged generator does not cover every level above the depth")
    images = [0]
    levels = []
    for n in range(shape.depth):
        m = shape.valencies[n]
        row = gen.labels[n]
        if len(row) != len(images):
            raise TreeError(f"level {n}: expected {len(images)} labels, got {len(row)}")
        nxt = [0] * (len(images) * m)
        for i, img in enumerate(images):
            lab = row[i]
            if not is_bijection(lab, m):
                raise TreeError(f"level {n}: label {lab} is not a permutation of 0..{m - 1}")
            for x in range(m):
                nxt[i * m + x] = img * m + lab[x]
        levels.append(tuple(nxt))
        images = nxt
    return LevelAction(shape, tuple(levels))
