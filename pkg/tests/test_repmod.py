import random

import pytest

from dexact_index.errors import ShapeError
from dexact_index.repmod import (Morphism, Representation, build_catalog, cokernel, decompose, direct_sum,
                                 factor_through, factor_through_left, hom_basis, hom_dim, image, is_indecomposable,
                                 is_isomorphic, kernel)

from helpers import decompose_roundtrip, universal_checks
from oracles import hom_dim_bruteforce


def test_hom_examples(cat2):
    assert hom_dim(cat2["P1"], cat2["S2"]) == 0
    assert hom_dim(cat2["S1"], cat2["S1"]) == 1
    assert hom_dim(cat2["S2"], cat2["P1"]) == 1


@pytest.mark.parametrize("name", ["cat2", "cat3", "cat_aus"])
def test_hom_dims_match_bruteforce(name, request):
    cat = request.getfixturevalue(name)
    for M in cat:
        for N in cat:
            assert hom_dim(M, N) == hom_dim_bruteforce(M, N), (M.name, N.name)


def test_kernel_and_cokernel_examples(cat2):
    P1, S1, S2 = cat2["P1"], cat2["S1"], cat2["S2"]
    p = hom_basis(P1, S1)[0]
    K, inc = kernel(p)
    assert K.dims == (0, 1)
    i = hom_basis(S2, P1)[0]
    C, pr = cokernel(i)
    assert C.dims == (1, 0)
    assert kernel(Morphism.identity(P1))[0].total_dim == 0
    assert cokernel(Morphism.identity(P1))[0].total_dim == 0
    assert kernel(Morphism.zero(P1, S1))[0].dims == P1.dims
    assert cokernel(Morphism.zero(P1, S1))[0].dims == S1.dims


def test_image_factorisation(cat2):
    p = hom_basis(cat2["P1"], cat2["S1"])[0]
    I, inc, co = image(p)
    assert inc @ co == p and inc.is_mono() and co.is_epi()


def test_direct_sum_examples(a2, cat2):
    Z, _, _ = direct_sum([], a2)
    assert Z.total_dim == 0
    S, injs, projs = direct_sum([cat2["S1"], cat2["S2"]])
    assert S.dims == (1, 1) and S.maps[0].is_zero()
    for k, (i, p) in enumerate(zip(injs, projs)):
        assert (p @ i).is_iso()
    S0, _, _ = direct_sum([cat2["P1"], Representation.zero(a2)])
    assert is_isomorphic(S0, cat2["P1"]) is not None


def test_is_isomorphic_examples(cat2):
    P1, S1, S2 = cat2["P1"], cat2["S1"], cat2["S2"]
    f = is_isomorphic(P1, P1)
    assert f is not None and f.is_iso()
    assert is_isomorphic(S1, S2) is None
    S, _, _ = direct_sum([S1, S2])
    assert is_isomorphic(P1, S) is None


def test_decompose_examples(cat2, a2):
    S, _, _ = direct_sum([cat2["P1"], cat2["S1"], cat2["S1"]])
    got = {s.module.name: s.multiplicity for s in decompose(S, cat2)}
    assert got == {"P1": 1, "S1": 2}
    assert [(s.module.name, s.multiplicity) for s in decompose(cat2["S1"], cat2)] == [("S1", 1)]
    assert decompose(Representation.zero(a2)) == []


def test_catalog_sizes(cat2, cat3, cat_aus):
    assert cat2.names == ["S2", "S1", "P1"]
    assert cat_aus.names == ["S3", "S2", "S1", "P2", "P1"]
    assert len(cat3) == 6


@pytest.mark.parametrize("name", ["cat2", "cat3", "cat_aus"])
def test_catalog_duplicate_free_and_indecomposable(name, request):
    cat = request.getfixturevalue(name)
    for i, M in enumerate(cat):
        assert is_indecomposable(M)
        for N in list(cat)[i + 1:]:
            assert is_isomorphic(M, N) is None


def test_user_catalog_rejects_duplicates(a2, cat2):
    with pytest.raises(ValueError):
        build_catalog(a2, "user", [cat2["S1"], cat2["S1"]])
    c = build_catalog(a2, "user", [cat2["P1"], cat2["S2"]])
    assert [M.dims for M in c] == [(0, 1), (1, 1)]


def test_hom_from_projective_is_evaluation_on_catalog(cat_aus, aus):
    for M in cat_aus:
        for v in range(3):
            assert hom_dim(aus.projective(v), M) == M.dims[v]


def test_factorisation_helpers(cat2):
    P1, S1, S2 = cat2["P1"], cat2["S1"], cat2["S2"]
    p = hom_basis(P1, S1)[0]
    h = factor_through(p, p)
    assert p @ h == p
    i = hom_basis(S2, P1)[0]
    with pytest.raises(ShapeError):
        factor_through(i, p)
    assert factor_through(Morphism.zero(S2, S1), p) == Morphism.zero(S2, P1)
    h = factor_through_left(p, p)
    assert h @ p == p


def test_decompose_randomized_sums(cat2, cat3, cat_aus):
    rng = random.Random(7)
    cats = [cat2, cat3, cat_aus]
    for k in range(200):
        decompose_roundtrip(cats[k % 3], rng)


@pytest.mark.parametrize("name", ["cat2", "cat3", "cat_aus"])
def test_kernel_cokernel_universal_properties(name, request):
    cat = request.getfixturevalue(name)
    for M in cat:
        for N in cat:
            for f in hom_basis(M, N):
                universal_checks(f, list(cat))
