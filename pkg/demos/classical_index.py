"""Index of every indecomposable over kA2 and kA3 with respect to the projectives.

With d = 1 the index of M is [P0] - [P1] for a minimal projective
presentation, so the numbers below should match a hand computation.
"""
from dexact_index import AddSubcategory, Quiver, build_algebra, build_catalog, index_dct, t_resolution
from dexact_index.kgroups import describe_object

for n in (2, 3):
    alg = build_algebra(Quiver(n, [(chr(97 + i), i, i + 1) for i in range(n - 1)]))
    cat = build_catalog(alg)
    proj = AddSubcategory.projectives(cat)
    print(f"kA{n}: {len(cat)} indecomposables, projectives {proj.names}")
    for M in cat:
        res = t_resolution(M, proj, 1)
        terms = ", ".join(describe_object(t, cat) for t in res.terms)
        print(f"  {M.name:<3} dims {M.dims}  terms [{terms}]  index {index_dct(M, proj, 1)}")
    print()
