"""The S2 -> P1 -> S1 sequence over kA2 against X = add(P1 + S2 + S1).

This sequence is not admissible for the exact structure induced by X, so the
two sides of the theta_X formula differ by a nonzero error functor.
"""
from dexact_index import DSequence, build_relative_k0, verify_theorem_A
from dexact_index.algfile import bundled, load
from dexact_index.repmod import hom_basis

cfg = load(bundled("ka2.alg"))
cat = cfg.catalog()
mod = cfg.ambient(cat)
X = cfg.subcategory("X", cat)
K = build_relative_k0(X, mod)
print("K0 relative to X:", K.describe())

s = DSequence.from_maps([hom_basis(cat["S2"], cat["P1"])[0], hom_basis(cat["P1"], cat["S1"])[0]])
inst = verify_theorem_A(s, X, K, mod)
print("sequence:", inst.sequence)
print("lhs:", inst.lhs, " rhs:", inst.rhs, " equal:", inst.equal)
print("error functor dimensions:", inst.error_term_dims)
