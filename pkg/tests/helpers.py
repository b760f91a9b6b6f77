"""Shared builders for randomized modules and brute-force checks."""
import random
from fractions import Fraction

from dexact_index.exactla import Mat, rank
from dexact_index.repmod import (Morphism, Representation, cokernel, decompose, direct_sum, factor_through,
                                 factor_through_left, hom_basis, hom_dim, kernel)


def random_invertible(n, rng, field):
    while True:
        A = Mat(n, n, [[field(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)], field)
        if rank(A) == n:
            return A


def scramble(M, rng):
    """An isomorphic copy of M under random base changes, with the isomorphism."""
    fld = M.field
    q = M.algebra.quiver
    g = [random_invertible(d, rng, fld) for d in M.dims]
    maps = [g[a.target] @ M.maps[i] @ g[a.source].inverse() for i, a in enumerate(q.arrows)]
    N = Representation(M.algebra, M.dims, maps)
    return N, Morphism(M, N, g)


def random_sum(catalog, rng, max_terms=4):
    picks = [rng.randrange(len(catalog)) for _ in range(rng.randint(1, max_terms))]
    S, _, _ = direct_sum([catalog[i] for i in picks])
    counts = [0] * len(catalog)
    for i in picks:
        counts[i] += 1
    return S, tuple(counts)


def hom_rank(f, Y, post=True):
    """Rank of Hom(Y, f) (post=True) or Hom(f, Y)."""
    basis = hom_basis(Y, f.source) if post else hom_basis(f.target, Y)
    vecs = [(f @ h).flatten() if post else (h @ f).flatten() for h in basis]
    if not vecs or not vecs[0]:
        return 0
    return rank(Mat(len(vecs), len(vecs[0]), vecs, f.source.field))


def decompose_roundtrip(cat, rng):
    M, counts = random_sum(cat, rng)
    N, _ = scramble(M, rng)
    parts = decompose(N, cat)
    got = [0] * len(cat)
    total = Morphism.zero(N, N)
    for s in parts:
        got[cat.index_of(s.module)] += s.multiplicity
        for inc, pr in zip(s.inclusions, s.projections):
            assert (pr @ inc) == Morphism.identity(s.module)
            total = total + inc @ pr
    assert tuple(got) == counts
    assert total == Morphism.identity(N)
    return counts


def universal_checks(f, tests):
    K, inc = kernel(f)
    C, pr = cokernel(f)
    assert (f @ inc).is_zero() and inc.is_mono()
    assert (pr @ f).is_zero() and pr.is_epi()
    for Y in tests:
        # Hom(Y, K) is exactly the kernel of Hom(Y, f), through inc
        assert hom_dim(Y, K) == hom_dim(Y, f.source) - hom_rank(f, Y)
        for h in hom_basis(Y, K):
            g = inc @ h
            assert factor_through(g, inc) == h
        # Hom(C, Y) is exactly the kernel of Hom(f, Y), through pr
        assert hom_dim(C, Y) == hom_dim(f.target, Y) - hom_rank(f, Y, post=False)
        for h in hom_basis(C, Y):
            g = h @ pr
            assert factor_through_left(g, pr) == h
        for g in hom_basis(Y, f.source):
            if not (f @ g).is_zero():
                assert factor_through(g, inc) is None
