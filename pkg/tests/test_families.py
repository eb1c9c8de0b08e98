from itertools import product

import pytest

from arborrep import chartab, perm, zeta
from arborrep.automata import label_at, power
from arborrep.families import (DefiningVector, FamilyError, LaurentRing, PadicRing,
                               ProjectiveVertex, dihedral_build, full_symmetric_wreath,
                               ggs_build, ggs_commutator_labels, ggs_H_generators,
                               ggs_is_aperiodic, ggs_is_centered, ggs_prediction, gl_act,
                               gl_build, gl_generator_matrices, regular_s3_generators,
                               s3_regular_wreath, wreath_build)
from arborrep.transitivity import boundary_gelfand, is_locally_2_transitive, level_rank
from arborrep.tree import CapacityError, ROOT, Vertex, spine

from oracles import is_shift_periodic


def valid_vectors(p, k):
    m = p ** k
    for head in product(range(m), repeat=m - 1):
        if any(x % p for x in head):
            yield DefiningVector(p, k, head + (0,))


M3 = list(valid_vectors(3, 1))
M4 = list(valid_vectors(2, 2))


# -- defining vectors ---------------------------------------------------------


def test_vector_validation():
    with pytest.raises(FamilyError):
        DefiningVector(3, 1, (3, 6, 0))
    with pytest.raises(FamilyError):
        DefiningVector(3, 1, (1, 2, 1))
    with pytest.raises(FamilyError):
        DefiningVector(3, 1, (1, 2))
    with pytest.raises(FamilyError):
        DefiningVector(4, 1, (1, 2, 3, 0))
    e = DefiningVector(3, 1, (1, 2, 0))
    assert (e[1], e[2], e[3], e[4], e[0]) == (1, 2, 0, 1, 0)


def test_there_are_eight_valid_ternary_vectors():
    assert len(M3) == 8


@pytest.mark.parametrize("e", M3 + M4 + list(valid_vectors(5, 1))[:40],
                         ids=lambda e: "".join(map(str, e.entries)) + f"p{e.p}")
def test_rank_criterion_matches_shift_definition(e):
    assert ggs_is_aperiodic(e) == (not is_shift_periodic(e.entries, e.p))


def test_predicate_examples():
    assert all(ggs_is_aperiodic(e) for e in M3)
    assert not ggs_is_aperiodic(DefiningVector(2, 2, (1, 0, 1, 0)))
    assert ggs_is_aperiodic(DefiningVector(2, 1, (1, 0)))
    assert ggs_is_centered(DefiningVector(2, 1, (1, 0)))
    assert not ggs_is_centered(DefiningVector(2, 2, (1, 1, 2, 0)))
    assert not any(ggs_is_centered(e) for e in M3)
    assert ggs_prediction(DefiningVector(3, 1, (1, 2, 0))) is True
    assert ggs_prediction(DefiningVector(2, 2, (1, 0, 1, 0))) is False
    assert ggs_prediction(DefiningVector(2, 1, (1, 0))) is None


# -- the equivalence between aperiodicity and local 2-transitivity -------------


@pytest.mark.parametrize("e", M3, ids=lambda e: "".join(map(str, e.entries)))
def test_prediction_matches_ternary_groups(e):
    g = ggs_build(e, 3)
    assert is_locally_2_transitive(g).is_locally_2_transitive is ggs_prediction(e) is True


def test_prediction_matches_quaternary_groups():
    checked = 0
    for e in M4:
        pred = ggs_prediction(e)
        if pred is None:
            continue
        assert is_locally_2_transitive(ggs_build(e, 2)).is_locally_2_transitive == pred, e
        checked += 1
    assert checked > 40


def test_prediction_matches_quinary_groups():
    for head in [(1, 0, 0, 0), (1, 2, 3, 4), (0, 0, 0, 1), (2, 4, 1, 3)]:
        e = DefiningVector(5, 1, head + (0,))
        assert is_locally_2_transitive(ggs_build(e, 2)).is_locally_2_transitive


def test_infinite_dihedral_ggs_is_the_dihedral_family():
    e = DefiningVector(2, 1, (1, 0))
    g = ggs_build(e, 4)
    d = dihedral_build(4)
    assert [g.level_chain(n).order() for n in range(1, 5)] == \
           [d.level_chain(n).order() for n in range(1, 5)]
    assert is_locally_2_transitive(g).locally2 == {1: True, 2: False, 3: False}


# -- GGS structure -----------------------------------------------------------------


def test_ggs_image_orders():
    g = ggs_build(DefiningVector(3, 1, (1, 2, 0)), 3)
    assert g.level_chain(1).order() == 3
    assert g.level_chain(2).order() == 27
    a = g.generators["a"]
    for n in (1, 2, 3):
        assert perm.perm_order(a.on_level(n)) == 3


@pytest.mark.parametrize("e", M3 + [DefiningVector(2, 2, (1, 1, 2, 0)),
                                    DefiningVector(2, 2, (3, 2, 1, 0))],
                         ids=lambda e: "".join(map(str, e.entries)))
def test_commutator_labels_match_materialization(e):
    g = ggs_build(e, 2)
    a, b = g.generators["a"], g.generators["b"]
    m = e.m
    from arborrep.automata import commutator
    for k in range(1, m):
        for l in range(1, m):
            c = commutator(power(b, k), power(a, l))
            assert c.on_level(1) == tuple(range(m))
            predicted = ggs_commutator_labels(e, k, l)
            for j in range(m):
                lab = label_at(c, Vertex((j,)))
                assert lab == tuple((x + predicted[j]) % m for x in range(m))


@pytest.mark.parametrize("e", M3, ids=lambda e: "".join(map(str, e.entries)))
def test_H_stabilizers_act_transitively(e):
    g = ggs_build(e, 3)
    H = [h.perm for h in ggs_H_generators(g)]
    assert len(H) == (e.m - 1) ** 2
    for h in ggs_H_generators(g):
        assert h.on_level(1) == tuple(range(e.m))
    chain = perm.schreier_sims(H, g.shape.domain_size)
    for n in (1, 2):
        for u in g.shape.level(n):
            stab = perm.stabilizer(chain, [g.shape.point(u)])
            local = perm.restrict(stab, g.shape.descendant_points(u))
            assert perm.orbits(local, e.m).is_transitive


def _embed_below(g3, u, h2):
    """The automorphism acting as ``h2`` below the level-1 vertex ``u``, trivially elsewhere."""
    shape = g3.shape
    img = list(range(shape.domain_size))
    for n in (1, 2):
        for w in h2.shape.level(n):
            src = shape.point(Vertex(u.word + w.word))
            img[src] = shape.point(Vertex(u.word + h2(w).word))
    return tuple(img)


def test_derived_subgroup_contains_H_times_H():
    e = DefiningVector(3, 1, (1, 2, 0))
    g3 = ggs_build(e, 3)
    a, b = g3.generators["a"].perm, g3.generators["b"].perm
    ab = perm.mul(perm.mul(a, b), perm.mul(perm.inverse(a), perm.inverse(b)))
    derived = perm.normal_closure(g3.chain, [ab])
    H2 = ggs_H_generators(ggs_build(e, 2))
    u, v = Vertex((0,)), Vertex((1,))
    for h in H2:
        left = _embed_below(g3, u, h)
        right = _embed_below(g3, v, h)
        # the derived subgroup projects onto H x 1 and 1 x H on the two subtrees;
        # a witness in the derived subgroup exists with these two sections
        sub = g3.shape.descendant_points(u) + g3.shape.descendant_points(v)
        below = [p for p in range(g3.shape.domain_size)
                 if g3.shape.vertex_at(p).level >= 2
                 and g3.shape.vertex_at(p).word[0] in (0, 1)]
        pts = sorted(set(sub) | set(below))
        image = perm.schreier_sims(perm.restrict(derived.strong_generators, pts), len(pts))
        pos = {p: i for i, p in enumerate(pts)}
        for x in (left, right):
            assert image.contains(tuple(pos[x[p]] for p in pts))


# -- wreath products ---------------------------------------------------------------


def test_wreath_builtins():
    g = s3_regular_wreath(2)
    assert g.shape.valencies == (6, 6)
    local = g.local_generators(ROOT)
    assert {x for x in local if x != tuple(range(6))} == set(regular_s3_generators())
    assert perm.schreier_sims(local, 6).order() == 6
    # regular: no non-identity element fixes a point
    for x in perm.enumerate_elements(perm.schreier_sims(local, 6), 6)[1:]:
        assert all(x[i] != i for i in range(6))
    f = full_symmetric_wreath((3, 3))
    assert all(perm.orbits(f.level_generators(n), f.shape.level_size(n)).is_transitive
               for n in (1, 2))
    assert f.order() == 6 * 6 ** 3


def test_wreath_errors():
    with pytest.raises(FamilyError):
        wreath_build([[(1, 0, 2)]], 1)
    with pytest.raises(FamilyError):
        wreath_build([[(1, 2, 0)]], 2)
    with pytest.raises(FamilyError):
        wreath_build([], 1)
    with pytest.raises(FamilyError):
        wreath_build([[(0, 0)]], 1)


def test_dihedral_family():
    d = dihedral_build(4)
    assert d.level_chain(3).order() == 16
    assert [d.level_chain(n).order() for n in (1, 2, 3, 4)] == [2, 8, 16, 32]


# -- GL congruence family -------------------------------------------------------------


def _oracle_act(p, level, matrix, a):
    """Brute force: find ``a'`` with ``(1, p a') ~ matrix (1, p a)`` over Z/p^(level+1)."""
    mod = p ** (level + 1)
    x = (1, p * a)
    y = [sum(matrix[i][j] * x[j] for j in range(2)) % mod for i in range(2)]
    hits = {b for b in range(p ** level) for lam in range(mod) if lam % p
            and (lam * y[0] - 1) % mod == 0 and (lam * y[1] - p * b) % mod == 0}
    assert len(hits) == 1
    return hits.pop()


def test_gl_action_against_brute_force():
    p, depth = 3, 3
    ring = PadicRing(p, depth + 1)
    for name, g in gl_generator_matrices(ring, 1).items():
        for level in (1, 2, 3):
            for a in range(p ** level):
                digits = ring.digits(a, level)
                v = ProjectiveVertex(level, (tuple(digits),))
                w = gl_act(ring, g, v)
                assert ring.from_digits(w.digits[0]) == _oracle_act(p, level, g, a), (name, a)


def test_gl_examples():
    ring = PadicRing(3, 2)
    gens = gl_generator_matrices(ring, 1)
    v = ProjectiveVertex(1, ((0,),))
    assert gl_act(ring, gens["E21"], v).letters(3) == (1,)
    for a in range(3):
        v = ProjectiveVertex(1, ((a,),))
        assert gl_act(ring, gens["E12"], v) == v
    ident = [[1, 0], [0, 1]]
    assert all(gl_act(ring, ident, ProjectiveVertex(1, ((a,),))) == ProjectiveVertex(1, ((a,),))
               for a in range(3))
    with pytest.raises(FamilyError):
        gl_build(2, 1, 2)
    with pytest.raises(FamilyError):
        gl_build(9, 1, 2)
    with pytest.raises(FamilyError):
        gl_build(3, 1, 2, "adelic")
    with pytest.raises(CapacityError):
        gl_build(3, 2, 5)


def test_ring_arithmetic_agrees_on_units():
    for ring in (PadicRing(3, 4), LaurentRing(3, 4)):
        for digits in product(range(3), repeat=4):
            x = ring.from_digits(digits)
            if digits[0]:
                assert ring.mul(x, ring.inv(x)) == ring.one
            assert ring.digits(x, 4) == list(digits)


def test_projective_letters_roundtrip():
    for word in product(range(9), repeat=2):
        assert ProjectiveVertex.from_letters(word, 3, 2).letters(3) == word


@pytest.mark.parametrize("N,depth", [(1, 3), (2, 2)])
def test_gl_family_properties(N, depth):
    reports = {}
    for kind in ("p-adic", "laurent"):
        g = gl_build(3, N, depth, kind)
        assert is_locally_2_transitive(g).is_locally_2_transitive
        assert all(boundary_gelfand(g).values())
        recs = [chartab.local_decomposition(g, spine(j)) for j in range(depth)]
        for rec in recs:
            assert rec.pairs == ((1, 1),) * (3 ** N - 1)
        sizes = [g.shape.level_size(j) for j in range(depth)]
        poly = zeta.boundary_zeta(recs, sizes, depth)
        assert zeta.compare(poly, zeta.gl_closed_form(3, N, depth))
        reports[kind] = (tuple(r.pairs for r in recs), poly.terms,
                         tuple(level_rank(g, n) for n in range(1, depth + 1)))
    assert reports["p-adic"] == reports["laurent"]
