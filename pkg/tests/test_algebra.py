import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dexact_index.algebra import Quiver, Relation, build_algebra, injective_module, simple_module
from dexact_index.errors import InfiniteDimensional
from dexact_index.exactla import GF, QQ, Mat
from dexact_index.repmod import Representation, hom_dim


def square(coeff=1, field=None):
    q = Quiver(4, [("a", 0, 1), ("b", 1, 3), ("c", 0, 2), ("d", 2, 3)])
    rel = Relation.parse(f"b*a - {coeff}*d*c", q)
    return build_algebra(q, [rel], field) if field else build_algebra(q, [rel])


def test_dimensions(a2, aus):
    assert a2.dimension == 3
    assert aus.dimension == 5
    assert square().dimension == 9


def test_loop_is_infinite():
    with pytest.raises(InfiniteDimensional):
        build_algebra(Quiver(1, [("x", 0, 0)]))


def test_loop_with_nilpotent_relation():
    q = Quiver(1, [("x", 0, 0)])
    A = build_algebra(q, [Relation.parse("x*x*x", q)])
    assert A.dimension == 3


def test_composition_convention(aus):
    # b*a means a then b; that path dies, while a and b alone survive
    assert aus.paths(0, 2) == []
    assert len(aus.paths(0, 1)) == 1 and len(aus.paths(1, 2)) == 1


def test_projectives_and_injectives(a2, aus):
    P1, P2 = a2.projective(0), a2.projective(1)
    assert P1.dims == (1, 1) and P1.maps[0].tolist() == [[1]]
    assert P2.dims == (0, 1)
    assert a2.injective(1).dims == (1, 1)
    assert a2.injective(0).dims == (1, 0)
    assert aus.projective(0).dims == (1, 1, 0)
    assert aus.injective(2).dims == (0, 1, 1)
    assert simple_module(aus, 1).dims == (0, 1, 0)


def test_commutativity_relation_identifies_paths():
    A = square()
    long = A.paths(0, 3)
    assert len(long) == 1
    # both composites are the same basis element up to the coefficient
    nf_ab = A.normal_form((0, 1))
    nf_cd = A.normal_form((2, 3))
    assert set(nf_ab) == set(nf_cd) == {0}


def test_prime_field_algebra():
    A = square(coeff=3, field=GF(5))
    assert A.dimension == 9 and A.projective(0).dims == (1, 1, 1, 1)


def _mult_vec(A, vec, r, i, j):
    """(sum of basis paths in (i, j)) times path r."""
    out = {}
    for k, c in vec.items():
        p = A.paths(i, j)[k]
        for k2, c2 in A.multiply(p, r, i).items():
            out[k2] = out.get(k2, 0) + c * c2
    return {k: v for k, v in out.items() if v}


def _left_mult(A, p, vec, j, l, i):
    out = {}
    for k, c in vec.items():
        q = A.paths(j, l)[k]
        for k2, c2 in A.multiply(p, q, i).items():
            out[k2] = out.get(k2, 0) + c * c2
    return {k: v for k, v in out.items() if v}


@pytest.mark.parametrize("make", [lambda: square(), lambda: square(2)])
def test_multiplication_associative_and_unital(make):
    A = make()
    n = A.n_vertices
    triples = []
    for i, j, k, l in itertools.product(range(n), repeat=4):
        for p in A.paths(i, j):
            for q in A.paths(j, k):
                for r in A.paths(k, l):
                    triples.append((i, j, k, l, p, q, r))
    assert triples
    for i, j, k, l, p, q, r in triples:
        lhs = _mult_vec(A, A.multiply(p, q, i), r, i, k)
        rhs = _left_mult(A, p, A.multiply(q, r, j), j, l, i)
        assert lhs == rhs
        assert A.multiply((), p, i) == A.normal_form(p, i) == A.multiply(p, (), i)


@st.composite
def a3_reps(draw, algebra):
    dims = tuple(draw(st.integers(0, 2)) for _ in range(3))
    maps = []
    for arr in algebra.quiver.arrows:
        rows, cols = dims[arr.target], dims[arr.source]
        entries = [[Fraction(draw(st.integers(-2, 2))) for _ in range(cols)] for _ in range(rows)]
        maps.append(Mat(rows, cols, entries, QQ))
    return Representation(algebra, dims, maps)


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_hom_from_projective_is_evaluation(a3, data):
    M = data.draw(a3_reps(a3))
    for v in range(3):
        assert hom_dim(a3.projective(v), M) == M.dims[v]
        assert hom_dim(M, a3.injective(v)) == M.dims[v]
