import pytest
from hypothesis import given, strategies as st

from arborrep.tree import (MAX_DEPTH, CapacityError, ROOT, TreeError, TreeShape, Vertex,
                           common_prefix, mixed_radix, parent, spine, vertex_distance)

shapes = st.lists(st.integers(2, 5), min_size=1, max_size=4).map(lambda v: TreeShape(tuple(v)))


def test_level_sizes_are_partial_products():
    t = TreeShape((2, 3, 4))
    assert [t.level_size(n) for n in range(4)] == [1, 2, 6, 24]
    assert t.domain_size == 2 + 6 + 24
    assert [t.level_offset(n) for n in (1, 2, 3)] == [0, 2, 8]


def test_big_endian_indexing():
    t = TreeShape((2, 3))
    assert [v.word for v in t.level(2)] == [(a, b) for a in range(2) for b in range(3)]
    assert t.encode(Vertex((1, 2))) == 5
    assert mixed_radix((1, 2), (2, 3)) == 5


@given(shapes, st.data())
def test_encode_decode_roundtrip(t, data):
    n = data.draw(st.integers(1, t.depth))
    i = data.draw(st.integers(0, t.level_size(n) - 1))
    v = t.decode(n, i)
    assert v.level == n
    assert t.encode(v) == i
    assert t.vertex_at(t.point(v)) == v


@given(shapes, st.data())
def test_children_are_consecutive_block(t, data):
    n = data.draw(st.integers(0, t.depth - 1))
    v = t.decode(n, data.draw(st.integers(0, t.level_size(n) - 1))) if n else ROOT
    kids = t.children(v)
    assert len(kids) == t.valencies[n]
    assert all(parent(c) == v for c in kids)
    idx = [t.encode(c) for c in kids]
    assert idx == list(range(idx[0], idx[0] + len(kids)))


def test_distance_and_spine():
    assert spine(3) == Vertex((0, 0, 0))
    assert vertex_distance(Vertex((0, 1)), Vertex((0, 2))) == 2
    assert vertex_distance(Vertex((0, 1)), Vertex((1, 1))) == 4
    assert vertex_distance(Vertex((1, 1)), Vertex((1, 1))) == 0
    assert common_prefix(Vertex((0, 1, 2)), Vertex((0, 1, 0))) == 2
    with pytest.raises(TreeError):
        vertex_distance(Vertex((0,)), Vertex((0, 1)))


def test_caps_and_bad_input():
    with pytest.raises(CapacityError):
        TreeShape.regular(2, MAX_DEPTH + 1)
    with pytest.raises(CapacityError):
        TreeShape.regular(3, 10)
    with pytest.raises(TreeError):
        TreeShape((1, 2))
    t = TreeShape((2, 2))
    with pytest.raises(TreeError):
        t.children(Vertex((0, 0)))
    with pytest.raises(TreeError):
        t.encode(Vertex((2,)))
    with pytest.raises(TreeError):
        parent(ROOT)
    with pytest.raises(TreeError):
        t.point(ROOT)
