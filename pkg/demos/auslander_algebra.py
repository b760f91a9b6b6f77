"""A 2-cluster-tilting subcategory of the Auslander algebra of kA2.

Computes the relative Grothendieck group, the index of each indecomposable
and runs the theta_X check over the family of admissible 2-exact sequences.
"""
from dexact_index import ModuleCategory, build_relative_k0, index_dct
from dexact_index.algfile import bundled, load
from dexact_index.kgroups import theorem_a_report

cfg = load(bundled("aus_ka2.alg"))
cat = cfg.catalog()
T = cfg.subcategory("T", cat)
print("catalog:", cat.names)
print("T =", T.names, " d =", cfg.d)

K = build_relative_k0(T, ModuleCategory(cat))
print("K0 relative to T:", K.describe(), f"({len(K.relations)} relations)")
for M in cat:
    print(f"  index({M.name}) = {index_dct(M, T, cfg.d)}")

amb = cfg.ambient(cat)
rep = theorem_a_report(cfg.subcategory("proj", cat), amb)
print(f"theta_X check on add(T): {'pass' if rep.passed else 'FAIL'} over {len(rep.instances)} sequences")
