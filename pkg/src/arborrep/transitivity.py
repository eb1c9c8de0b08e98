"""Geometric predicates on tree actions: spherical, local 2-, and distance
transitivity, plus local and boundary Gelfand verdicts.

Every verdict concerns the truncation to the group's working depth and says
nothing beyond it.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import chartab, perm
from .group import TreeGroup
from .scheme import build_scheme, is_commutative
from .tree import Vertex, parent, spine


@dataclass(frozen=True)
class Witness:
    level: int
    u: Vertex
    v: Vertex
    stabilizer_order: int   # order of the common stabiliser's image on D(u) x D(v)
    pairs: int
    orbit_count: int


@dataclass
class TransitivityReport:
    depth: int
    spherical: dict[int, bool] = field(default_factory=dict)
    locally2: dict[int, bool] = field(default_factory=dict)
    distance: dict[int, bool] = field(default_factory=dict)
    witness: Witness | None = None

    @property
    def first_failure(self) -> int | None:
        bad = [n for n, ok in sorted(self.locally2.items()) if not ok]
        return bad[0] if bad else None

    @property
    def is_locally_2_transitive(self) -> bool:
        return all(self.spherical.values()) and all(self.locally2.values())


def is_spherically_transitive(group: TreeGroup) -> dict[int, bool]:
    return {n: perm.orbits(group.level_generators(n), group.shape.level_size(n)).is_transitive
            for n in range(1, group.depth + 1)}


def level_rank(group: TreeGroup, n: int) -> int:
    return perm.orbits_on_pairs(group.level_generators(n), group.shape.level_size(n)).count


def level_scheme(group: TreeGroup, n: int):
    return build_scheme(group.level_generators(n), group.shape.level_size(n))


def _pair_witness(group: TreeGroup, u: Vertex, v: Vertex) -> Witness:
    """Action of ``St(u) & St(v)`` on ``D(u) x D(v)``."""
    stab = group.stabilizer_chain(u, v)
    du = group.shape.descendant_points(u)
    dv = group.shape.descendant_points(v)
    gens = perm.restrict(stab.generators, du + dv)
    k = len(du)
    image_order = perm.schreier_sims(gens, len(du) + len(dv)).order()
    # pairs (i, j) of D(u) x D(v) encoded as i * len(dv) + j
    pair_gens = [tuple(g[i] * len(dv) + (g[k + j] - k)
                       for i in range(k) for j in range(len(dv))) for g in gens]
    count = perm.orbits(pair_gens, k * len(dv)).count
    return Witness(u.level, u, v, image_order, k * len(dv), count)


def spine_check(group: TreeGroup, n: int) -> tuple[bool, Vertex | None]:
    """For ``v`` in ``L_n`` off the spine: is ``St(u_{n+1}) & St(v)`` transitive on ``D(v)``?

    One ``v`` per orbit of ``St(u_{n+1})`` on ``L_n`` suffices, since that
    stabiliser conjugates the condition along its orbits.
    """
    shape = group.shape
    u_next = spine(n + 1)
    stab = group.stabilizer_chain(u_next)
    level = group.level_points(n)
    part = perm.orbits(stab.generators, shape.domain_size, level) if stab.generators else None
    seen = set()
    u_n = spine(n)
    for idx, pt in enumerate(level):
        v = shape.decode(n, idx)
        if v == u_n:
            continue
        oid = part.ids[idx] if part is not None else idx
        if oid in seen:
            continue
        seen.add(oid)
        inter = group.stabilizer_chain(u_next, v)
        gens = perm.restrict(inter.generators, shape.descendant_points(v))
        if not perm.orbits(gens, shape.valencies[n]).is_transitive:
            return False, v
    return True, None


def is_locally_2_transitive(group: TreeGroup) -> TransitivityReport:
    """Spine criterion at every level ``1 <= n < depth``."""
    report = TransitivityReport(group.depth)
    report.spherical = is_spherically_transitive(group)
    if not all(report.spherical.values()):
        for n in range(1, group.depth):
            report.locally2[n] = False
        return report
    for n in range(1, group.depth):
        ok, v = spine_check(group, n)
        report.locally2[n] = ok
        if not ok and report.witness is None:
            report.witness = _pair_witness(group, parent(spine(n + 1)), v)
    return report


def definition_check(group: TreeGroup, n: int) -> bool:
    """Direct check: every pair of distinct ``u, v`` in ``L_n`` and ``D(u) x D(v)``."""
    shape = group.shape
    verts = list(shape.level(n))
    for u in verts:
        for v in verts:
            if u == v:
                continue
            w = _pair_witness(group, u, v)
            if w.orbit_count != 1:
                return False
    return True


def is_distance_transitive(group: TreeGroup) -> dict[int, bool]:
    """Rank of ``L_n`` equals ``n + 1`` (orbitals refine the ``n + 1`` distance classes)."""
    return {n: level_rank(group, n) == n + 1 for n in range(1, group.depth + 1)}


def local_gelfand(group: TreeGroup, v: Vertex) -> bool:
    gens = group.local_generators(v)
    return is_commutative(build_scheme(gens, group.shape.valencies[v.level]))


def boundary_gelfand(group: TreeGroup) -> dict[int, bool]:
    return {n: is_commutative(level_scheme(group, n)) for n in range(1, group.depth + 1)}


@dataclass(frozen=True)
class RankIdentityLevel:
    level: int
    rank: int
    predicted: int

    @property
    def ok(self) -> bool:
        return self.rank == self.predicted


def rank_identity_check(group: TreeGroup,
                        cap: int = chartab.ORDER_CAP) -> tuple[bool, list[RankIdentityLevel]]:
    """Compare the pair-orbit rank of ``L_n`` with ``1 + sum of squared local multiplicities``."""
    records = [chartab.local_decomposition(group, spine(j), cap) for j in range(group.depth)]
    rows = []
    acc = 1
    for n in range(1, group.depth + 1):
        acc += records[n - 1].sum_squares
        rows.append(RankIdentityLevel(n, level_rank(group, n), acc))
    return all(r.ok for r in rows), rows
