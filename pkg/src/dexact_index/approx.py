"""Additive subcategories add(T), right approximations and the generating condition."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Sequence

from .errors import UnknownSummand
from .exactla import Mat, rank
from .repmod import (Catalog, Morphism, Representation, decompose, direct_sum, factor_through,
                     hom_basis, is_isomorphic, matrix_morphism)


class AddSubcategory:
    """add of a set of catalog members, given by their catalog positions."""

    def __init__(self, catalog: Catalog, members: Sequence[int], label: str = ""):
        idx = sorted(set(int(i) for i in members))
        for i in idx:
            if not 0 <= i < len(catalog):
                raise IndexError(f"catalog has no object {i}")
        self.catalog = catalog
        self.indices = tuple(idx)
        self.label = label or "add(" + "+".join(catalog[i].name for i in idx) + ")"

    @classmethod
    def from_names(cls, catalog: Catalog, names: Sequence[str], label: str = ""):
        return cls(catalog, [catalog.names.index(n) for n in names], label)

    @classmethod
    def projectives(cls, catalog: Catalog):
        alg = catalog.algebra
        return cls(catalog, [catalog.index_of(alg.projective(v)) for v in range(alg.n_vertices)], "proj")

    @classmethod
    def injectives(cls, catalog: Catalog):
        alg = catalog.algebra
        return cls(catalog, [catalog.index_of(alg.injective(v)) for v in range(alg.n_vertices)], "inj")

    @classmethod
    def whole(cls, catalog: Catalog):
        return cls(catalog, range(len(catalog)), "all")

    @property
    def members(self) -> List[Representation]:
        return [self.catalog[i] for i in self.indices]

    @property
    def names(self) -> List[str]:
        return [self.catalog[i].name for i in self.indices]

    def __len__(self):
        return len(self.indices)

    def __contains__(self, M: Representation) -> bool:
        return self.contains(M)

    def contains(self, M: Representation) -> bool:
        try:
            mult = self.catalog.multiplicities(M)
        except UnknownSummand:
            return False
        return all(i in self.indices for i, m in enumerate(mult) if m)

    def issubset(self, other: "AddSubcategory") -> bool:
        return set(self.indices) <= set(other.indices)

    def __repr__(self):
        return f"AddSubcategory({self.label})"


@dataclass
class Approximation:
    """A map ``⊕ summands -> C`` together with its components."""

    map: Morphism
    summands: List[Representation]
    components: List[Morphism]
    target: Representation = field(default=None)

    @property
    def source(self) -> Representation:
        return self.map.source

    def __repr__(self):
        names = "+".join(s.label() for s in self.summands) or "0"
        return f"Approximation({names} -> {self.map.target.label()})"


def _assemble(summands, components, C, algebra):
    if not summands:
        Z = Representation.zero(algebra)
        return Approximation(Morphism.zero(Z, C), [], [], C)
    f, _, _ = matrix_morphism([components], summands, [C])
    # matrix_morphism builds the target as a one-term sum; reattach the real target
    f = Morphism(f.source, C, f.maps, check=False)
    return Approximation(f, list(summands), list(components), C)


def right_approximation(X: AddSubcategory, C: Representation) -> Approximation:
    """Evaluation map ``⊕_j X_j^{dim Hom(X_j, C)} -> C``."""
    summands, comps = [], []
    for M in X.members:
        for h in hom_basis(M, C):
            summands.append(M)
            comps.append(h)
    return _assemble(summands, comps, C, C.algebra)


def _factors_through(g: Morphism, comps: Sequence[Morphism]) -> bool:
    """Does ``g: Y -> C`` factor through the sum of ``comps``?

    Equivalent to ``g`` lying in the span of ``c ∘ h`` over hom-basis
    elements ``h: Y -> source(c)``.
    """
    vecs = [(c @ h).flatten() for c in comps for h in hom_basis(g.source, c.source)]
    if not vecs:
        return False
    fld = g.source.field
    n = len(vecs[0])
    r0 = rank(Mat(len(vecs), n, vecs, fld, _trusted=True))
    return rank(Mat(len(vecs) + 1, n, vecs + [g.flatten()], fld, _trusted=True)) == r0


def minimize(a: Approximation) -> Approximation:
    """Delete source summands whose component factors through the others.

    One backward pass suffices: a kept component did not factor through a
    superset of the summands that survive.
    """
    summands, comps = list(a.summands), list(a.components)
    C = a.map.target
    for j in reversed(range(len(summands))):
        rest = comps[:j] + comps[j + 1:]
        if comps[j].is_zero() or _factors_through(comps[j], rest):
            del summands[j], comps[j]
    return _assemble(summands, comps, C, C.algebra)


def minimal_right_approximation(X: AddSubcategory, C: Representation) -> Approximation:
    return minimize(right_approximation(X, C))


def is_generating(X: AddSubcategory, ambient) -> bool:
    """Every ambient object admits an admissible deflation from add(X)."""
    return all(ambient.is_admissible_deflation(right_approximation(X, C).map) for C in ambient.objects())


@dataclass
class GenRow:
    object: str
    approximation_is_deflation: bool
    some_deflation_exists: bool

    @property
    def consistent(self) -> bool:
        return self.approximation_is_deflation == self.some_deflation_exists


@dataclass
class GenReport:
    subcategory: str
    rows: List[GenRow]

    @property
    def counterexamples(self) -> List[str]:
        """Objects where the two halves of the equivalence disagree."""
        return [r.object for r in self.rows if not r.consistent]

    @property
    def failing(self) -> List[str]:
        """Objects with no admissible deflation from X."""
        return [r.object for r in self.rows if not r.approximation_is_deflation]

    @property
    def passed(self) -> bool:
        return not self.counterexamples and not self.failing

    def __str__(self):
        lines = [f"gen check for {self.subcategory}"]
        for r in self.rows:
            lines.append(f"  {r.object}: approximation deflation={r.approximation_is_deflation} "
                         f"some deflation={r.some_deflation_exists}")
        lines.append("PASS" if self.passed else f"FAIL (no deflation: {', '.join(self.failing) or '-'}; "
                     f"equivalence broken: {', '.join(self.counterexamples) or '-'})")
        return "\n".join(lines)


def _search_deflation(X: AddSubcategory, C: Representation, ambient, limit: int = 12) -> bool:
    """Look for an admissible deflation from add(X) onto C among sub-sums of
    the evaluation components and their duplicates, without consulting the
    approximation's own verdict."""
    full = right_approximation(X, C)
    n = len(full.summands)
    if n == 0:
        Z = Representation.zero(C.algebra)
        return ambient.is_admissible_deflation(Morphism.zero(Z, C))
    idx = list(range(n))
    sizes = range(1, n + 1) if n <= limit else [n]
    for k in sizes:
        for sub in combinations(idx, k):
            a = _assemble([full.summands[i] for i in sub], [full.components[i] for i in sub], C, C.algebra)
            if ambient.is_admissible_deflation(a.map):
                return True
    return False


def check_gen(X: AddSubcategory, ambient) -> GenReport:
    """Instance-wise check that the evaluation approximation is a deflation
    exactly when some deflation from add(X) exists."""
    rows = []
    for C in ambient.objects():
        a = right_approximation(X, C)
        rows.append(GenRow(C.label(), ambient.is_admissible_deflation(a.map), _search_deflation(X, C, ambient)))
    return GenReport(X.label, rows)
