"""A finitely generated group of tree automorphisms, truncated at a working depth."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Mapping

from . import perm
from .automata import LevelAction
from .tree import TreeShape, Vertex


@dataclass(eq=False)
class TreeGroup:
    shape: TreeShape
    generators: Mapping[str, LevelAction]
    family: str = "custom"
    params: dict[str, Any] = field(default_factory=dict)
    _stab_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.generators = dict(self.generators)
        for name, g in self.generators.items():
            if g.shape != self.shape:
                raise ValueError(f"generator {name!r} lives on another shape")

    @property
    def depth(self) -> int:
        return self.shape.depth

    @cached_property
    def perms(self) -> list[perm.Perm]:
        """Generators as permutations of the disjoint union of levels."""
        return [g.perm for g in self.generators.values()]

    @cached_property
    def chain(self) -> perm.StabChain:
        return perm.schreier_sims(self.perms, self.shape.domain_size)

    def order(self) -> int:
        """Order of the image in ``Aut`` of the truncated tree."""
        return self.chain.order()

    def level_points(self, n: int) -> list[int]:
        off = self.shape.level_offset(n)
        return list(range(off, off + self.shape.level_size(n)))

    def level_generators(self, n: int) -> list[perm.Perm]:
        return [g.on_level(n) for g in self.generators.values()]

    def level_chain(self, n: int) -> perm.StabChain:
        return perm.schreier_sims(self.level_generators(n), self.shape.level_size(n))

    def stabilizer_chain(self, *vertices: Vertex) -> perm.StabChain:
        """Chain of the common stabiliser of the given vertices (root entries ignored)."""
        pts = tuple(dict.fromkeys(self.shape.point(v) for v in vertices if v.level))
        if pts not in self._stab_cache:
            self._stab_cache[pts] = perm.stabilizer_chain(self.chain, pts)
        return self._stab_cache[pts]

    def local_generators(self, v: Vertex, stab: perm.StabChain | None = None) -> list[perm.Perm]:
        """Generators of the image of ``St(v)`` on ``D(v)``, as permutations of child letters."""
        stab = self.stabilizer_chain(v) if stab is None else stab
        return perm.restrict(stab.generators, self.shape.descendant_points(v))

    def truncate(self, depth: int) -> "TreeGroup":
        return TreeGroup(self.shape.truncate(depth),
                         {k: g.truncate(depth) for k, g in self.generators.items()},
                         self.family, dict(self.params))
