from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from arborrep import chartab
from arborrep.families import DefiningVector, full_symmetric_wreath, ggs_build, s3_regular_wreath
from arborrep.tree import spine
from arborrep.zeta import (DirichletPolynomial, ZetaError, boundary_zeta, compare, evaluate,
                           gl_closed_form, gl_closed_form_value)


def test_boundary_zeta_for_ggs():
    recs = [((1, 1), (1, 1))] * 3
    poly = boundary_zeta(recs, [1, 3, 9], 3)
    assert poly.terms == ((1, 3), (3, 2), (9, 2))
    assert poly.depth == 3
    assert boundary_zeta([], [], 0).terms == ((1, 1),)


def test_closed_form_expansions():
    assert gl_closed_form(3, 1, 3).terms == ((1, 3), (3, 2), (9, 2))
    assert gl_closed_form(3, 2, 2).terms == ((1, 9), (9, 8))
    assert gl_closed_form(5, 2, 1).terms == ((1, 25),)
    assert gl_closed_form(7, 1, 0).terms == ((1, 1),)


def test_evaluation():
    p = gl_closed_form(3, 1, 3)
    assert evaluate(p, float("inf")) == 3
    assert evaluate(DirichletPolynomial(((1, 1),), 4), 7) == 1
    assert evaluate(p, 2) == 3 + Fraction(20, 81)
    tail = Fraction(2, 9 ** 3) / (1 - Fraction(1, 9))
    assert gl_closed_form_value(3, 1, 2) - tail == evaluate(p, 2)
    assert evaluate(p, 0) == 7
    assert evaluate(p, -1) == 3 + 6 + 18
    assert abs(evaluate(p, 2.0) - float(evaluate(p, 2))) < 1e-12
    assert isinstance(evaluate(p, 0.5), float)


@given(st.integers(2, 7), st.integers(1, 3), st.integers(1, 6), st.integers(1, 5))
def test_truncations_converge_to_closed_form(q, N, depth, s):
    poly = gl_closed_form(q, N, depth)
    qN = Fraction(q ** N)
    tail = (qN - 1) * qN ** (-s * depth) / (1 - qN ** -s)
    assert evaluate(poly, s) + tail == gl_closed_form_value(q, N, s)


def test_compare():
    a = DirichletPolynomial(((1, 3),), 1)
    assert compare(a, a)
    c = compare(a, DirichletPolynomial(((1, 2),), 1))
    assert not c and c.dimension == 1 and (c.left, c.right) == (3, 2)
    with pytest.raises(ZetaError):
        compare(a, DirichletPolynomial(((1, 3),), 2))


def test_polynomial_invariants():
    with pytest.raises(ZetaError):
        DirichletPolynomial(((3, 1), (1, 1)), 1)
    with pytest.raises(ZetaError):
        DirichletPolynomial(((1, 0),), 1)
    poly = DirichletPolynomial.from_terms([(3, 1), (1, 2), (3, 4), (9, 0)], 2)
    assert poly.terms == ((1, 2), (3, 5))
    with pytest.raises(ZetaError):
        boundary_zeta([((1, 1),)], [1], 2)


@pytest.mark.parametrize("group", [
    lambda: ggs_build(DefiningVector(3, 1, (1, 2, 0)), 4),
    lambda: s3_regular_wreath(2),
    lambda: full_symmetric_wreath((3, 2, 2)),
    lambda: ggs_build(DefiningVector(2, 2, (1, 1, 2, 0)), 2),
])
def test_dimension_bookkeeping(group):
    g = group()
    recs = [chartab.local_decomposition(g, spine(j)) for j in range(g.depth)]
    sizes = [g.shape.level_size(j) for j in range(g.depth + 1)]
    local_degrees = {d for r in recs for d, _ in r.pairs}
    for n in range(g.depth + 1):
        poly = boundary_zeta(recs, sizes, n)
        assert poly.total_dimension == sizes[n]
        for dim, _ in poly.terms[1:] if poly.terms[0][0] == 1 else poly.terms:
            assert any(dim == sizes[j] * d for j in range(n) for d in local_degrees)
