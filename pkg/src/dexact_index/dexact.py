"""d-exact sequences: Yoneda exactness tests, d-kernels, T-resolutions and E_X membership."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

from .approx import AddSubcategory, Approximation, minimal_right_approximation
from .errors import (ApproximationNotMonic, LiftFailed, NotAdmissible, NotInSubcategory,
                     ObjectOutsideSubcategory, ResolutionTooLong, ShapeError, UnknownSummand)
from .exactla import Mat, rank
from .repmod import (Catalog, Morphism, Representation, direct_sum, factor_through, hom_basis,
                     kernel, matrix_morphism)


class DSequence:
    """A complex ``A_{d+1} -> A_d -> ... -> A_1 -> A_0``.

    ``objects[i]`` is ``A_i`` and ``diff(i)`` is ``∂_i : A_i -> A_{i-1}``
    for ``1 <= i <= d+1``.
    """

    def __init__(self, objects: Sequence[Representation], diffs: Sequence[Morphism], check=True):
        self.objects = tuple(objects)
        self._diffs = tuple(diffs)
        if len(self._diffs) != len(self.objects) - 1 or len(self.objects) < 3:
            raise ShapeError("a d-sequence needs d+2 objects and d+1 maps with d >= 1")
        if check:
            for i in range(1, self.d + 2):
                f = self.diff(i)
                if f.source.dims != self.objects[i].dims or f.target.dims != self.objects[i - 1].dims:
                    raise ShapeError(f"map ∂{i} does not connect A{i} and A{i - 1}")
            for i in range(2, self.d + 2):
                if not (self.diff(i - 1) @ self.diff(i)).is_zero():
                    raise ValueError(f"∂{i - 1} ∘ ∂{i} is not zero")

    @classmethod
    def from_maps(cls, maps_high_to_low: Sequence[Morphism], check=True) -> "DSequence":
        """Build from ``[∂_{d+1}, ..., ∂_1]``."""
        diffs = list(reversed(maps_high_to_low))
        objects = [diffs[0].target] + [f.source for f in diffs]
        return cls(objects, diffs, check)

    @property
    def d(self) -> int:
        return len(self.objects) - 2

    def diff(self, i: int) -> Morphism:
        return self._diffs[i - 1]

    @property
    def deflation(self) -> Morphism:
        return self._diffs[0]

    def describe(self) -> str:
        parts = [self.objects[i].label() for i in range(self.d + 1, -1, -1)]
        return " -> ".join(parts)

    def __repr__(self):
        return f"DSequence(d={self.d}: {self.describe()})"


def zero_sequence(M: Representation, d: int, position: int = 1) -> DSequence:
    """``M`` at positions ``position`` and ``position - 1`` joined by the identity, zeros elsewhere."""
    Z = Representation.zero(M.algebra)
    objects = [Z] * (d + 2)
    objects[position] = M
    objects[position - 1] = M
    diffs = []
    for i in range(1, d + 2):
        if i == position:
            diffs.append(Morphism.identity(M))
        else:
            diffs.append(Morphism.zero(objects[i], objects[i - 1]))
    return DSequence(objects, diffs)


def sum_sequences(seqs: Sequence[DSequence]) -> DSequence:
    d = seqs[0].d
    objs = []
    for i in range(d + 2):
        objs.append([s.objects[i] for s in seqs])
    sums = [direct_sum(o)[0] for o in objs]
    diffs = []
    for i in range(1, d + 2):
        blocks = [[s.diff(i) if a == b else None for a, s in enumerate(seqs)] for b in range(len(seqs))]
        f, _, _ = matrix_morphism(blocks, objs[i], objs[i - 1])
        diffs.append(Morphism(sums[i], sums[i - 1], f.maps, check=False))
    return DSequence(sums, diffs)


def _hom_rank(X: Representation, f: Morphism, basis=None) -> int:
    """Rank of ``Hom(X, f)``."""
    basis = hom_basis(X, f.source) if basis is None else basis
    if not basis:
        return 0
    vecs = [(f @ h).flatten() for h in basis]
    n = len(vecs[0])
    if n == 0:
        return 0
    return rank(Mat(len(vecs), n, vecs, f.source.field, _trusted=True))


def _cohom_rank(f: Morphism, Y: Representation, basis=None) -> int:
    """Rank of ``Hom(f, Y)``."""
    basis = hom_basis(f.target, Y) if basis is None else basis
    if not basis:
        return 0
    vecs = [(h @ f).flatten() for h in basis]
    n = len(vecs[0])
    if n == 0:
        return 0
    return rank(Mat(len(vecs), n, vecs, f.source.field, _trusted=True))


def yoneda_left_exact(s: DSequence, tests: Sequence[Representation]) -> bool:
    """``0 -> Hom(X, A_{d+1}) -> ... -> Hom(X, A_0)`` exact except at the end."""
    d = s.d
    for X in tests:
        dims = [len(hom_basis(X, s.objects[i])) for i in range(d + 2)]
        r = {i: _hom_rank(X, s.diff(i)) for i in range(1, d + 2)}
        r[d + 2] = 0
        for i in range(1, d + 2):
            if dims[i] - r[i] != r[i + 1]:
                return False
    return True


def yoneda_right_exact(s: DSequence, tests: Sequence[Representation]) -> bool:
    """``0 -> Hom(A_0, Y) -> ... -> Hom(A_{d+1}, Y)`` exact except at the end."""
    d = s.d
    for Y in tests:
        dims = [len(hom_basis(s.objects[i], Y)) for i in range(d + 2)]
        r = {i: _cohom_rank(s.diff(i), Y) for i in range(1, d + 2)}
        r[0] = 0
        for j in range(0, d + 1):
            if dims[j] - r[j + 1] != r[j]:
                return False
    return True


def vertexwise_left_exact(s: DSequence) -> bool:
    d = s.d
    for v in range(len(s.objects[0].dims)):
        rk = {i: rank(s.diff(i).maps[v]) for i in range(1, d + 2)}
        rk[d + 2] = 0
        for i in range(1, d + 2):
            if s.objects[i].dims[v] - rk[i] != rk[i + 1]:
                return False
    return True


def vertexwise_right_exact(s: DSequence) -> bool:
    d = s.d
    for v in range(len(s.objects[0].dims)):
        rk = {i: rank(s.diff(i).maps[v]) for i in range(1, d + 2)}
        rk[0] = 0
        for j in range(0, d + 1):
            if s.objects[j].dims[v] - rk[j] != rk[j + 1]:
                return False
    return True


# ---------------------------------------------------------------------------
# Ambient structures

class Ambient:
    """Common interface of the supported d-exact categories."""

    d: int
    catalog: Catalog

    def objects(self) -> List[Representation]:
        raise NotImplementedError

    def left_tests(self) -> List[Representation]:
        return self.objects()

    def right_tests(self) -> List[Representation]:
        return self.objects()

    def subcategory(self) -> Optional[AddSubcategory]:
        return None

    def contains(self, M: Representation) -> bool:
        sub = self.subcategory()
        return True if sub is None else sub.contains(M)

    def require(self, *objs: Representation):
        for M in objs:
            if not self.contains(M):
                raise ObjectOutsideSubcategory(f"{M!r} is not in the ambient subcategory")

    def is_left_d_exact(self, s: DSequence) -> bool:
        self._check_d(s)
        self.require(*s.objects)
        return yoneda_left_exact(s, self.left_tests())

    def is_right_d_exact(self, s: DSequence) -> bool:
        self._check_d(s)
        self.require(*s.objects)
        return yoneda_right_exact(s, self.right_tests())

    def is_d_exact(self, s: DSequence) -> bool:
        return self.is_left_d_exact(s) and self.is_right_d_exact(s)

    def d_kernel(self, f: Morphism) -> DSequence:
        raise NotImplementedError

    def is_admissible_deflation(self, f: Morphism) -> bool:
        raise NotImplementedError

    def _check_d(self, s):
        if s.d != self.d:
            raise ShapeError(f"sequence has d={s.d}, ambient has d={self.d}")

    def split_basis(self) -> List[Representation]:
        """Indecomposables generating the ambient category (K0 generators)."""
        return self.objects()


class ModuleCategory(Ambient):
    """mod Λ with all short exact sequences (d = 1)."""

    kind = "module"

    def __init__(self, catalog: Catalog):
        self.catalog = catalog
        self.algebra = catalog.algebra
        self.d = 1

    def objects(self):
        return list(self.catalog.members)

    def left_tests(self):
        return [self.algebra.projective(v) for v in range(self.algebra.n_vertices)]

    def right_tests(self):
        return [self.algebra.injective(v) for v in range(self.algebra.n_vertices)]

    def contains(self, M):
        return M.algebra is self.algebra

    def is_left_d_exact(self, s, yoneda=False):
        self._check_d(s)
        if yoneda:
            return yoneda_left_exact(s, self.left_tests())
        return vertexwise_left_exact(s)

    def is_right_d_exact(self, s, yoneda=False):
        self._check_d(s)
        if yoneda:
            return yoneda_right_exact(s, self.right_tests())
        return vertexwise_right_exact(s)

    def d_kernel(self, f):
        K, inc = kernel(f)
        return DSequence([f.target, f.source, K], [f, inc])

    def is_admissible_deflation(self, f):
        return f.is_epi()

    def __repr__(self):
        return "ModuleCategory"


class DClusterTilting(Ambient):
    """add(T) for a d-cluster-tilting T inside mod Λ, with all d-exact sequences."""

    kind = "dct"

    def __init__(self, T: AddSubcategory, d: int):
        if d < 1:
            raise ValueError("d must be positive")
        self.T = T
        self.catalog = T.catalog
        self.algebra = T.catalog.algebra
        self.d = d

    def objects(self):
        return self.T.members

    def subcategory(self):
        return self.T

    def d_kernel(self, f):
        self.require(f.source, f.target)
        K, inc = kernel(f)
        maps = [f]
        prev_inc = inc
        for _ in range(self.d - 1):
            a = minimal_right_approximation(self.T, K).map
            step = prev_inc @ a
            maps.append(step)
            # kernel of the composite equals kernel of a because prev_inc is monic
            K, prev_inc = kernel(a)
        if not self.T.contains(K):
            raise NotInSubcategory(f"final kernel {K.dims} is not in {self.T.label}")
        maps.append(prev_inc)
        return DSequence.from_maps(list(reversed(maps)))

    def is_admissible_deflation(self, f):
        if not (self.contains(f.source) and self.contains(f.target)):
            return False
        return f.is_epi()

    def __repr__(self):
        return f"DClusterTilting({self.T.label}, d={self.d})"


def default_torsion_provider(U: AddSubcategory):
    def provide(B: Representation) -> Morphism:
        a = minimal_right_approximation(U, B).map
        if not a.is_mono():
            raise ApproximationNotMonic(f"right {U.label}-approximation of {B.dims} is not monic")
        return a
    return provide


class DTorsionClass(Ambient):
    """A d-torsion class U inside a d-abelian parent, with d-kernels built by lifting."""

    kind = "torsion"

    def __init__(self, U: AddSubcategory, parent: Ambient, provider: Callable | None = None):
        self.U = U
        self.parent = parent
        self.catalog = U.catalog
        self.algebra = U.catalog.algebra
        self.d = parent.d
        self.provider = provider or default_torsion_provider(U)

    def objects(self):
        return self.U.members

    def subcategory(self):
        return self.U

    def is_right_d_exact(self, s):
        self._check_d(s)
        self.require(*s.objects)
        return self.parent.is_right_d_exact(s)

    def is_d_exact(self, s):
        """Sequences of the parent's structure with all terms in U."""
        self._check_d(s)
        self.require(*s.objects)
        return self.parent.is_d_exact(s)

    def d_kernel(self, f):
        self.require(f.source, f.target)
        amb = self.parent.d_kernel(f)
        d = self.d
        a = {1: Morphism.identity(f.source)}
        for i in range(2, d + 2):
            a[i] = self.provider(amb.objects[i])
            if not a[i].is_mono():
                raise ApproximationNotMonic(f"approximation of A{i} is not monic")
        g = {1: f, 2: amb.diff(2) @ a[2]}
        for i in range(3, d + 2):
            target = amb.diff(i) @ a[i]
            h = factor_through(target, a[i - 1])
            if h is None:
                raise LiftFailed(f"cannot solve a{i - 1} g{i} = f{i} a{i}")
            g[i] = h
        return DSequence.from_maps([g[i] for i in range(d + 1, 0, -1)])

    def is_admissible_deflation(self, f):
        if not (self.contains(f.source) and self.contains(f.target)):
            return False
        if not f.is_epi():
            return False
        try:
            s = self.parent.d_kernel(f)
        except NotInSubcategory:
            return False
        return all(self.contains(M) for M in s.objects) and self.parent.is_d_exact(s)

    def __repr__(self):
        return f"DTorsionClass({self.U.label}, d={self.d})"


def is_left_d_exact(s: DSequence, ambient: Ambient) -> bool:
    return ambient.is_left_d_exact(s)


def is_d_exact(s: DSequence, ambient: Ambient) -> bool:
    return ambient.is_d_exact(s)


def d_kernel(f: Morphism, ambient: Ambient) -> DSequence:
    return ambient.d_kernel(f)


def is_in_relative_structure(s: DSequence, X: AddSubcategory, ambient: Ambient) -> bool:
    """Membership in E_X: ``Hom(X_j, ∂_1)`` surjective for every member of X."""
    if not ambient.is_d_exact(s):
        raise NotAdmissible("sequence is not d-exact in the ambient structure")
    return deflation_stays_epi(s.deflation, X)


def deflation_stays_epi(f: Morphism, X: AddSubcategory) -> bool:
    for M in X.members:
        if _hom_rank(M, f) != len(hom_basis(M, f.target)):
            return False
    return True


# ---------------------------------------------------------------------------
# T-resolutions

@dataclass
class TResolution:
    """``0 -> T_n -> ... -> T_0 -> C -> 0`` with ``maps[0]: T_0 -> C``."""

    target: Representation
    terms: List[Representation]
    maps: List[Morphism]
    approximations: List[Approximation] = field(default_factory=list)

    @property
    def length(self) -> int:
        """Index of the last nonzero term (-1 when C = 0)."""
        n = -1
        for i, t in enumerate(self.terms):
            if t.total_dim:
                n = i
        return n

    def describe(self) -> str:
        parts = ["0"] + [self.terms[i].label() for i in range(len(self.terms) - 1, -1, -1)] + [self.target.label(), "0"]
        return " -> ".join(parts)

    def is_exact(self) -> bool:
        fld = self.target.field
        chain = self.maps
        for v in range(len(self.target.dims)):
            ranks = [rank(m.maps[v]) for m in chain]
            dims = [t.dims[v] for t in self.terms]
            if ranks[0] != self.target.dims[v]:
                return False
            for i in range(len(self.terms)):
                nxt = ranks[i + 1] if i + 1 < len(ranks) else 0
                if dims[i] - ranks[i] != nxt:
                    return False
        return True


def t_resolution(C: Representation, T: AddSubcategory, d: int) -> TResolution:
    """Minimal T-resolution with terms ``T_0 .. T_n``, ``n <= d``."""
    terms, maps, approxs = [], [], []
    K = C
    inc = Morphism.identity(C)
    for i in range(d + 1):
        a = minimal_right_approximation(T, K)
        if not a.map.is_epi():
            raise ResolutionTooLong(f"the {T.label}-approximation of syzygy {i} ({K.dims}) is not onto")
        terms.append(a.source)
        maps.append(inc @ a.map)
        approxs.append(a)
        K, inc = kernel(a.map)
        if K.total_dim == 0:
            return TResolution(C, terms, maps, approxs)
    raise ResolutionTooLong(f"syzygy {K.dims} remains after {d + 1} steps")


@dataclass
class DCTReport:
    subcategory: str
    d: int
    missing_projectives: List[str]
    missing_injectives: List[str]
    ext_failures: List[str]
    long_resolutions: List[str]

    @property
    def passed(self) -> bool:
        return not (self.missing_projectives or self.missing_injectives or self.ext_failures or self.long_resolutions)

    def failed_parts(self) -> List[str]:
        out = []
        if self.missing_projectives or self.missing_injectives:
            out.append("a")
        if self.ext_failures:
            out.append("b")
        if self.long_resolutions:
            out.append("c")
        return out

    def __str__(self):
        if self.passed:
            return f"{self.subcategory} is {self.d}-cluster-tilting (desk-scale certificate)"
        lines = [f"{self.subcategory} fails d={self.d} certification ({', '.join(self.failed_parts())})"]
        if self.missing_projectives:
            lines.append("  projectives missing: " + ", ".join(self.missing_projectives))
        if self.missing_injectives:
            lines.append("  injectives missing: " + ", ".join(self.missing_injectives))
        for e in self.ext_failures:
            lines.append("  " + e)
        if self.long_resolutions:
            lines.append("  resolution longer than d-1: " + ", ".join(self.long_resolutions))
        return "\n".join(lines)


def projective_resolution(M: Representation, catalog: Catalog, max_len: int = 32) -> TResolution:
    P = AddSubcategory.projectives(catalog)
    return t_resolution(M, P, max_len)


def ext_dim(M: Representation, N: Representation, i: int, catalog: Catalog) -> int:
    """dim Ext^i(M, N) from a minimal projective resolution of M."""
    res = projective_resolution(M, catalog, max_len=max(i + 1, 32))
    terms = res.terms + [Representation.zero(M.algebra)] * (i + 2)
    maps = res.maps

    def dmap(k):
        # map P_k -> P_{k-1} for k >= 1
        return maps[k] if k < len(maps) else Morphism.zero(terms[k], terms[k - 1])

    dim_i = len(hom_basis(terms[i], N))
    # Hom(P_{i}, N) -> Hom(P_{i+1}, N) by precomposition
    out_rank = _cohom_rank(dmap(i + 1), N) if i + 1 < len(res.terms) else 0
    in_rank = _cohom_rank(dmap(i), N) if i >= 1 and i < len(res.terms) else 0
    return dim_i - out_rank - in_rank


def certify_dct(T: AddSubcategory, d: int, ambient: Ambient | None = None) -> DCTReport:
    cat = T.catalog
    alg = cat.algebra
    miss_p = [cat[cat.index_of(alg.projective(v))].name for v in range(alg.n_vertices)
              if cat.index_of(alg.projective(v)) not in T.indices]
    miss_i = [cat[cat.index_of(alg.injective(v))].name for v in range(alg.n_vertices)
              if cat.index_of(alg.injective(v)) not in T.indices]
    ext_fail = []
    for i in range(1, d):
        for A in T.members:
            for B in T.members:
                e = ext_dim(A, B, i, cat)
                if e:
                    ext_fail.append(f"Ext^{i}({A.name},{B.name}) has dimension {e}")
    longs = []
    for C in cat.members:
        try:
            r = t_resolution(C, T, d)
            if r.length > d - 1:
                longs.append(C.name)
        except ResolutionTooLong:
            longs.append(C.name)
    return DCTReport(T.label, d, miss_p, miss_i, ext_fail, longs)


# ---------------------------------------------------------------------------
# Enumerated families

def small_sums(objs: Sequence[Representation], algebra, max_terms: int = 2) -> List[Representation]:
    """0, each object, and sums of up to ``max_terms`` objects (repeats allowed)."""
    out = [Representation.zero(algebra)]
    for k in range(1, max_terms + 1):
        for combo in itertools.combinations_with_replacement(range(len(objs)), k):
            if k == 1:
                out.append(objs[combo[0]])
            else:
                out.append(direct_sum([objs[i] for i in combo])[0])
    return out


def test_morphisms(M: Representation, N: Representation, full_limit: int = 3) -> List[Morphism]:
    """Basis elements, their sum, and all 0/1 combinations when the basis is small."""
    from .repmod import lincomb
    basis = hom_basis(M, N)
    out = [Morphism.zero(M, N)]
    if not basis:
        return out
    if len(basis) <= full_limit:
        for c in itertools.product((0, 1), repeat=len(basis)):
            if any(c):
                out.append(lincomb(c, basis))
        return out
    out.extend(basis)
    out.append(lincomb([1] * len(basis), basis))
    return out


def morphism_family(ambient: Ambient, max_terms: int = 2) -> List[Morphism]:
    objs = small_sums(ambient.objects(), ambient.algebra, max_terms)
    fam = []
    for B1 in objs:
        for B0 in objs:
            fam.extend(test_morphisms(B1, B0))
    return fam


def d_kernel_family(ambient: Ambient, max_terms: int = 2) -> List[DSequence]:
    """d-kernel completions of every enumerated morphism (left d-exact)."""
    out = []
    for f in morphism_family(ambient, max_terms):
        out.append(ambient.d_kernel(f))
    return out


def split_paddings(ambient: Ambient) -> List[DSequence]:
    out = []
    for M in ambient.objects():
        for pos in range(1, ambient.d + 2):
            out.append(zero_sequence(M, ambient.d, pos))
    return out


def resolution_splices(ambient: Ambient, T: AddSubcategory) -> List[DSequence]:
    """Short exact pieces of T-resolutions of ambient objects, as d-sequences.

    Only meaningful for d = 1, where each step ``K_{i+1} -> T_i -> K_i`` is a
    short exact sequence.
    """
    if ambient.d != 1:
        return []
    out = []
    for C in ambient.objects():
        try:
            res = t_resolution(C, T, 8)
        except ResolutionTooLong:
            continue
        for a in res.approximations:
            f = a.map
            Kn, incn = kernel(f)
            if all(ambient.contains(M) for M in (f.target, f.source, Kn)):
                out.append(DSequence([f.target, f.source, Kn], [f, incn]))
    return out


def exact_family(ambient: Ambient, max_terms: int = 2, extra: Sequence[DSequence] = ()) -> List[DSequence]:
    """The enumerated family of d-exact sequences in the ambient structure."""
    seqs = list(split_paddings(ambient))
    for f in morphism_family(ambient, max_terms):
        if not ambient.is_admissible_deflation(f):
            continue
        s = ambient.d_kernel(f)
        if ambient.is_d_exact(s):
            seqs.append(s)
    for s in extra:
        if all(ambient.contains(M) for M in s.objects) and ambient.is_d_exact(s):
            seqs.append(s)
    return seqs
