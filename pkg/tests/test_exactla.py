from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dexact_index.errors import FieldMismatch, ShapeError
from dexact_index.exactla import (GF, QQ, Fp, IntMat, Mat, kernel_basis, quotient_group, rank, rref,
                                  smith_normal_form, solve, Span)

from oracles import determinantal_invariants, sympy_invariants, sympy_rank


def M(rows, field=QQ):
    return Mat.from_rows(rows, field)


def test_rref_proportional_rows():
    R, piv, r = rref(M([[1, 2], [2, 4]]))
    assert r == 1 and piv == [0]
    assert R.tolist() == [[1, 2], [0, 0]]


def test_rref_identity_is_fixed():
    I = Mat.identity(3)
    R, piv, r = rref(I)
    assert R == I and r == 3


def test_rref_swap():
    R, _, r = rref(M([[0, 1], [1, 0]]))
    assert R.tolist() == [[1, 0], [0, 1]] and r == 2


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatch):
        Mat(1, 2, [[Fraction(1), Fp(1, 5)]], QQ)


def test_kernel_examples():
    assert kernel_basis(Mat.zeros(2, 3)).cols == 3
    assert kernel_basis(Mat.identity(3)).cols == 0
    K = kernel_basis(M([[1, 1]]))
    assert K.cols == 1 and K[0, 0] == -K[1, 0] != 0


def test_solve_examples():
    b = [Fraction(3), Fraction(-1)]
    assert list(solve(Mat.identity(2), b)) == b
    x = solve(M([[1, 1]]), [2])
    assert x[0] + x[1] == 2
    assert solve(M([[1], [0]]), [0, 1]) is None


def test_prime_field_arithmetic():
    F = GF(7)
    a, b = F(3), F(5)
    assert a + b == F(1) and a * b == F(1) and a / b == F(2)
    assert F(-1) == F(6)
    with pytest.raises(ValueError):
        GF(9)


def test_prime_field_rank_differs_from_rationals():
    rows = [[1, 1], [1, -1]]
    assert rank(M(rows)) == 2
    assert rank(M(rows, GF(2))) == 1


def test_snf_examples():
    _, D, _ = smith_normal_form(IntMat.from_rows([[6, 0], [0, 4]]))
    assert D.tolist() == [[2, 0], [0, 12]]
    _, D, _ = smith_normal_form(IntMat.from_rows([[2, 4], [6, 8]]))
    assert D.tolist() == [[2, 0], [0, 4]]
    U, D, V = smith_normal_form(IntMat(2, 3))
    assert D == IntMat(2, 3) and U == IntMat.identity(2) and V == IntMat.identity(3)


def test_snf_matches_minor_gcds():
    rows = [[4, 6, 2], [2, 8, -4], [6, 14, -2]]
    _, D, _ = smith_normal_form(IntMat.from_rows(rows))
    diag = [D[i, i] for i in range(3) if D[i, i]]
    assert diag == determinantal_invariants(rows)


def test_quotient_group_examples():
    G = quotient_group([], 3)
    assert G.describe() == "Z^3" and G.canonical([1, -2, 5]) == (1, -2, 5)
    G = quotient_group([[1, -1, 1]], 3)
    assert G.rank == 2 and G.torsion == [] and G.invariant_factors == [1]
    G = quotient_group([[2, 0]], 2)
    assert G.describe() == "Z/2 + Z"
    assert G.canonical([3, 5]) == G.canonical([1, 5]) != G.canonical([0, 5])


def test_shape_errors():
    with pytest.raises(ShapeError):
        Mat.identity(2) @ Mat.identity(3)
    with pytest.raises(ShapeError):
        quotient_group([[1, 2]], 3)


small_int = st.integers(-6, 6)


@st.composite
def rational_matrices(draw, max_dim=5):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.lists(small_int, min_size=c, max_size=c), min_size=r, max_size=r))
    return rows


@settings(max_examples=60, deadline=None)
@given(rational_matrices())
def test_rank_nullity_and_oracle(rows):
    A = M(rows)
    K = kernel_basis(A)
    assert rank(A) + K.cols == A.cols
    assert (A @ K).is_zero()
    assert rank(A) == sympy_rank(rows)


@settings(max_examples=40, deadline=None)
@given(rational_matrices(), st.integers(0, 10**6))
def test_span_membership(rows, seed):
    import random
    rnd = random.Random(seed)
    S = Span([[Fraction(x) for x in r] for r in rows], len(rows[0]))
    coef = [rnd.randint(-3, 3) for _ in rows]
    combo = [sum(a * r[i] for a, r in zip(coef, rows)) for i in range(len(rows[0]))]
    c = S.coords([Fraction(x) for x in combo])
    assert c is not None
    back = [sum(cj * S.basis[j][i] for j, cj in enumerate(c)) for i in range(len(rows[0]))]
    assert back == combo


@st.composite
def int_matrices(draw, max_dim=8, bound=20):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    return draw(st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c), min_size=r, max_size=r))


@settings(max_examples=40, deadline=None)
@given(int_matrices(max_dim=5, bound=9))
def test_snf_invariants_agree_with_sympy(rows):
    _, D, _ = smith_normal_form(IntMat.from_rows(rows))
    diag = [D[i, i] for i in range(min(D.shape)) if D[i, i]]
    assert diag == sympy_invariants(rows)


@settings(max_examples=60, deadline=None)
@given(int_matrices(max_dim=6, bound=9), st.lists(st.integers(-9, 9), min_size=6, max_size=6))
def test_canonical_coset_properties(rows, v):
    n = len(rows[0])
    v = v[:n]
    G = quotient_group(rows, n)
    c = G.canonical(v)
    assert G.canonical(c) == c
    diff = [a - b for a, b in zip(c, v)]
    # the difference is an integer combination of the relations
    x = solve(M([list(col) for col in zip(*rows)]), diff)
    assert x is not None
    assert G.canonical([a + b for a, b in zip(v, rows[0])]) == c
