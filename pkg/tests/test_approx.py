import itertools

from dexact_index.approx import (AddSubcategory, check_gen, is_generating, minimal_right_approximation,
                                 minimize, right_approximation, _assemble)
from dexact_index.repmod import Morphism, Representation, direct_sum, factor_through, hom_basis, image


def test_approximation_examples(cat2):
    X = AddSubcategory.from_names(cat2, ["P1", "S2"])
    a = right_approximation(X, cat2["S1"])
    assert [s.name for s in a.summands] == ["P1"] and a.map.is_epi()
    a = right_approximation(AddSubcategory.from_names(cat2, ["P1"]), cat2["S2"])
    assert a.source.total_dim == 0


def test_member_gets_split_epi(cat2):
    X = AddSubcategory.whole(cat2)
    for C in cat2:
        a = right_approximation(X, C)
        assert factor_through(Morphism.identity(C), a.map) is not None


def test_minimize_examples(cat2):
    P1, S1 = cat2["P1"], cat2["S1"]
    p = hom_basis(P1, S1)[0]
    from dexact_index.approx import Approximation, _assemble
    doubled = _assemble([P1, P1], [p, p], S1, P1.algebra)
    m = minimize(doubled)
    assert [s.name for s in m.summands] == ["P1"]
    assert minimize(m).summands == m.summands
    Z = Representation.zero(P1.algebra)
    padded = _assemble([P1, Z], [Morphism.identity(P1), Morphism.zero(Z, P1)], P1, P1.algebra)
    m = minimize(padded)
    assert len(m.summands) == 1 and m.map.is_iso()


def _is_right_approximation(a, X):
    for M in X.members:
        for g in hom_basis(M, a.map.target):
            if factor_through(g, a.map) is None:
                return False
    return True


def test_approximation_property_everywhere(cat2, cat3, cat_aus):
    for cat in (cat2, cat3, cat_aus):
        subsets = [AddSubcategory(cat, c) for k in (1, 2) for c in itertools.combinations(range(len(cat)), k)]
        subsets.append(AddSubcategory.projectives(cat))
        for X in subsets:
            for C in cat:
                a = right_approximation(X, C)
                m = minimize(a)
                assert _is_right_approximation(a, X) and _is_right_approximation(m, X)
                assert image(a.map)[0].dims == image(m.map)[0].dims
                _assert_minimal(m, a, X)


def _assert_minimal(m, a, X):
    """No summand of m can be dropped, and no smaller subfamily of a's summands works."""
    C = m.map.target
    for j in range(len(m.summands)):
        keep = [k for k in range(len(m.summands)) if k != j]
        smaller = _assemble([m.summands[k] for k in keep], [m.components[k] for k in keep], C, C.algebra)
        assert not _is_right_approximation(smaller, X)
    n = len(a.summands)
    for k in range(len(m.summands)):
        for sub in itertools.combinations(range(n), k):
            b = _assemble([a.summands[i] for i in sub], [a.components[i] for i in sub], C, C.algebra)
            assert not _is_right_approximation(b, X)


def test_generating_examples(cat2, mod2):
    assert is_generating(AddSubcategory.from_names(cat2, ["P1", "S2"]), mod2)
    assert not is_generating(AddSubcategory.from_names(cat2, ["S1"]), mod2)
    assert is_generating(AddSubcategory.whole(cat2), mod2)


def test_generating_is_monotone(cat3, mod3):
    subsets = [AddSubcategory(cat3, c) for k in range(1, len(cat3) + 1)
               for c in itertools.combinations(range(len(cat3)), k)]
    gen = {X.indices: is_generating(X, mod3) for X in subsets}
    for X in subsets:
        for Y in subsets:
            if gen[X.indices] and X.issubset(Y):
                assert gen[Y.indices]


def test_check_gen(cat2, mod2):
    assert check_gen(AddSubcategory.from_names(cat2, ["P1", "S2"]), mod2).passed
    assert check_gen(AddSubcategory.whole(cat2), mod2).passed
    r = check_gen(AddSubcategory.from_names(cat2, ["S1"]), mod2)
    assert not r.passed and "S2" in r.failing and not r.counterexamples


def test_contains(cat2):
    X = AddSubcategory.from_names(cat2, ["P1", "S2"])
    S, _, _ = direct_sum([cat2["P1"], cat2["S2"], cat2["P1"]])
    assert X.contains(S)
    T, _, _ = direct_sum([cat2["P1"], cat2["S1"]])
    assert not X.contains(T)
    assert X.contains(Representation.zero(cat2.algebra))
