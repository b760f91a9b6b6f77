"""Split and relative Grothendieck groups, the index, θ_C, θ_X and verification harnesses."""
from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .approx import AddSubcategory, minimal_right_approximation, right_approximation
from .dexact import (Ambient, DSequence, ModuleCategory, deflation_stays_epi, exact_family,
                     is_in_relative_structure, resolution_splices, t_resolution, certify_dct)
from .errors import NotAdmissible, SearchExhausted, UnknownSummand, DecompositionInconclusive
from .exactla import K0Presentation, quotient_group
from .fpfun import FPPresentation, functor_iso, functor_resolution, restrict
from .repmod import Morphism, Representation, decompose, direct_sum, kernel

CAVEAT = "relative to enumerated relations"


class InconclusiveIso(SearchExhausted):
    """A required functor isomorphism could not be certified."""


class SplitK0:
    """K0^sp of an additive category with the given indecomposable generators."""

    def __init__(self, generators: Sequence[Representation], catalog):
        self.generators = list(generators)
        self.catalog = catalog
        self._pos = {catalog.index_of(g): i for i, g in enumerate(self.generators)}

    @property
    def names(self) -> List[str]:
        return [g.label() for g in self.generators]

    @property
    def rank(self) -> int:
        return len(self.generators)

    def split_class(self, M: Representation) -> tuple:
        vec = [0] * len(self.generators)
        for idx, m in enumerate(self.catalog.multiplicities(M)):
            if not m:
                continue
            if idx not in self._pos:
                raise UnknownSummand(f"summand {self.catalog[idx].label()} is not a generator")
            vec[self._pos[idx]] += m
        return tuple(vec)

    def alternating(self, objects: Sequence[Representation]) -> tuple:
        """``Σ (-1)^i [objects[i]]``."""
        acc = [0] * len(self.generators)
        for i, M in enumerate(objects):
            sgn = -1 if i % 2 else 1
            for k, c in enumerate(self.split_class(M)):
                acc[k] += sgn * c
        return tuple(acc)

    def format(self, vec) -> str:
        terms = []
        for c, n in zip(vec, self.names):
            if not c:
                continue
            mag = "" if abs(c) == 1 else f"{abs(c)}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, f"{mag}[{n}]"))
        if not terms:
            return "0"
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, t in terms[1:]:
            s += f" {sign} {t}"
        return s


def split_class(M: Representation, catalog) -> tuple:
    """Multiplicity vector of M over the whole catalog."""
    return SplitK0(catalog.members, catalog).split_class(M)


def describe_object(M: Representation, catalog) -> str:
    if M.total_dim == 0:
        return "0"
    try:
        parts = []
        for i, m in enumerate(catalog.multiplicities(M)):
            if m:
                parts.append(catalog[i].label() + (f"^{m}" if m > 1 else ""))
        return "+".join(parts)
    except (UnknownSummand, DecompositionInconclusive):
        return M.label()


def describe_sequence(s: DSequence, catalog) -> str:
    return " -> ".join(describe_object(s.objects[i], catalog) for i in range(s.d + 1, -1, -1))


@dataclass(frozen=True)
class IndexValue:
    """A canonical coset in a relative Grothendieck group."""

    group: "RelativeK0"
    coset: tuple

    def _same(self, other):
        if other.group is not self.group:
            raise ValueError("cosets from different presentations cannot be compared")

    def __add__(self, other):
        self._same(other)
        return self.group.class_of_vector([a + b for a, b in zip(self.coset, other.coset)])

    def __sub__(self, other):
        self._same(other)
        return self.group.class_of_vector([a - b for a, b in zip(self.coset, other.coset)])

    def __neg__(self):
        return self.group.class_of_vector([-a for a in self.coset])

    def __eq__(self, other):
        if not isinstance(other, IndexValue):
            return NotImplemented
        self._same(other)
        return self.coset == other.coset

    def __hash__(self):
        return hash(self.coset)

    def is_zero(self) -> bool:
        return not any(self.coset)

    def __repr__(self):
        return self.group.split.format(self.coset)


class RelativeK0:
    """K0(C, E_X) presented by ambient generators modulo enumerated relations."""

    def __init__(self, split: SplitK0, relations, provenance, label=""):
        self.split = split
        self.relations = [tuple(r) for r in relations]
        self.provenance = list(provenance)
        self.presentation: K0Presentation = quotient_group(self.relations, split.rank)
        self.label = label
        self.caveat = CAVEAT

    @property
    def rank(self) -> int:
        return self.presentation.rank

    @property
    def torsion(self) -> list:
        return self.presentation.torsion

    def describe(self) -> str:
        return self.presentation.describe()

    def class_of_vector(self, vec) -> IndexValue:
        return IndexValue(self, tuple(self.presentation.canonical(list(vec))))

    def class_in(self, M: Representation) -> IndexValue:
        return self.class_of_vector(self.split.split_class(M))

    def alternating_class(self, objects) -> IndexValue:
        return self.class_of_vector(self.split.alternating(objects))


def build_relative_k0(X: AddSubcategory, ambient: Ambient, family: Sequence[DSequence] | None = None,
                      max_terms: int = 2) -> RelativeK0:
    """Relations are the alternating sums of the E_X-admissible sequences of the family."""
    split = SplitK0(ambient.split_basis(), ambient.catalog)
    if family is None:
        extra = resolution_splices(ambient, X) if ambient.d == 1 else []
        family = exact_family(ambient, max_terms=max_terms, extra=extra)
    rels, prov, seen = [], [], set()
    for s in family:
        if not is_in_relative_structure(s, X, ambient):
            continue
        row = split.alternating([s.objects[i] for i in range(s.d + 2)])
        if not any(row) or row in seen:
            continue
        seen.add(row)
        rels.append(row)
        prov.append(describe_sequence(s, ambient.catalog))
    return RelativeK0(split, rels, prov, label=X.label)


def class_in(K: RelativeK0, M: Representation) -> IndexValue:
    return K.class_in(M)


# ---------------------------------------------------------------------------
# Index with respect to a d-cluster-tilting subcategory

def index_dct(C: Representation, T: AddSubcategory, d: int) -> tuple:
    """``Σ (-1)^i [T_i]`` over the T-members (in catalog order)."""
    res = t_resolution(C, T, d)
    split = SplitK0(T.members, T.catalog)
    return split.alternating(res.terms)


def index_of_vector(vec, T: AddSubcategory, d: int, cache=None) -> tuple:
    """Extend index_dct linearly to a vector over the catalog."""
    out = [0] * len(T)
    for i, c in enumerate(vec):
        if not c:
            continue
        key = i
        if cache is not None and key in cache:
            v = cache[key]
        else:
            v = index_dct(T.catalog[i], T, d)
            if cache is not None:
                cache[key] = v
        for k in range(len(out)):
            out[k] += c * v[k]
    return tuple(out)


# ---------------------------------------------------------------------------
# θ_C and θ_X

def theta_C(p: FPPresentation, ambient: Ambient) -> tuple:
    """Alternating sum of the functor resolution in K0^sp of the ambient."""
    s = functor_resolution(p, ambient)
    split = SplitK0(ambient.split_basis(), ambient.catalog)
    return split.alternating([s.objects[i] for i in range(s.d + 2)])


def theta_X(p: FPPresentation, X: AddSubcategory, K: RelativeK0, ambient: Ambient) -> IndexValue:
    s = functor_resolution(p, ambient)
    return K.alternating_class([s.objects[i] for i in range(s.d + 2)])


def x_presentation(f: Morphism, X: AddSubcategory) -> FPPresentation:
    """A presentation by objects of add(X) of the restriction of ``Coker(C(-, f))`` to X.

    ``X0 = ⊕ X_j^{dim F(X_j)}`` maps onto F|_X; the relations come from a
    right X-approximation of the pullback of ``X0 -> A0 <- A1``.
    """
    F = restrict(FPPresentation(f), X)
    A1, A0 = f.source, f.target
    summands, comps = [], []
    for j, Xj in enumerate(F.objects):
        for c in range(F.dims[j]):
            lift = F._sect[j].col(c)
            from .repmod import lincomb
            summands.append(Xj)
            comps.append(lincomb(lift, F._basis[j], Xj, A0))
    from .repmod import matrix_morphism
    alg = A0.algebra
    if summands:
        u, X0, _ = matrix_morphism([comps], summands, [A0])
        u = Morphism(X0, A0, u.maps, check=False)
    else:
        X0 = Representation.zero(alg)
        u = Morphism.zero(X0, A0)
    h, S, _ = matrix_morphism([[u, -f]], [X0, A1], [A0])
    P, inc = kernel(Morphism(S, A0, h.maps, check=False))
    _, _, projs = direct_sum([X0, A1])
    pr = Morphism(S, X0, projs[0].maps, check=False)
    a = minimal_right_approximation(X, P)
    g = pr @ inc @ a.map
    return FPPresentation(g)


@dataclass
class Instance:
    sequence: str
    lhs: list
    rhs: list
    equal: bool
    error_term_dims: Dict[str, int] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    def to_dict(self):
        return {"sequence": self.sequence, "lhs": list(self.lhs), "rhs": list(self.rhs),
                "equal": self.equal, "error_term_dims": dict(self.error_term_dims)}


@dataclass
class Report:
    check: str
    instances: List[Instance] = field(default_factory=list)
    caveats: List[str] = field(default_factory=list)
    info: Dict[str, object] = field(default_factory=dict)
    inconclusive: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(i.equal for i in self.instances) and not self.inconclusive and self.info.get("ok", True)

    def to_dict(self):
        return {"check": self.check,
                "instances": [i.to_dict() for i in self.instances],
                "caveats": list(self.caveats),
                "summary": {"passed": self.passed, "count": len(self.instances),
                            "failures": sum(1 for i in self.instances if not i.equal),
                            "inconclusive": list(self.inconclusive),
                            **{k: v for k, v in self.info.items()}}}


def _sides(s: DSequence, X: AddSubcategory, K: RelativeK0, ambient: Ambient, check_x_route=True):
    rhs = K.alternating_class([s.objects[i] for i in range(s.d + 2)])
    p = FPPresentation(s.deflation)
    lhs = theta_X(p, X, K, ambient)
    F = restrict(p, X)
    notes = []
    ok = lhs == rhs
    if check_x_route:
        q = x_presentation(s.deflation, X)
        G = restrict(q, X)
        if functor_iso(F, G) is None:
            raise InconclusiveIso("X-presentation does not reproduce the restricted functor")
        lhs2 = theta_X(q, X, K, ambient)
        if lhs2 != lhs:
            notes.append(f"X-presentation route gives {lhs2}")
            ok = False
    return lhs, rhs, ok, F.value_dims(), notes


def verify_theorem_A(s: DSequence, X: AddSubcategory, K: RelativeK0, ambient: Ambient) -> Instance:
    """Compare θ_X of the restricted cokernel functor with Σ(-1)^i [A_i]_X."""
    if not ambient.is_d_exact(s):
        raise NotAdmissible("sequence is not d-exact")
    lhs, rhs, ok, dims, notes = _sides(s, X, K, ambient)
    return Instance(describe_sequence(s, ambient.catalog), list(lhs.coset), list(rhs.coset), ok, dims, notes)


def verify_prop13_property(s: DSequence, X: AddSubcategory, K: RelativeK0, ambient: Ambient,
                           cross_check: bool = False) -> Instance:
    """The same identity for sequences that are only left d-exact.

    ``cross_check`` also recomputes θ_X through an X-presentation, as
    verify_theorem_A always does.
    """
    if not ambient.is_left_d_exact(s):
        raise NotAdmissible("sequence is not left d-exact")
    lhs, rhs, ok, dims, notes = _sides(s, X, K, ambient, cross_check)
    return Instance(describe_sequence(s, ambient.catalog), list(lhs.coset), list(rhs.coset), ok, dims, notes)


def verify_schanuel(p: FPPresentation, q: FPPresentation, ambient: Ambient) -> Instance:
    """θ_C(p) = θ_C(q) for presentations with isomorphic cokernel functors."""
    objs = ambient.objects()
    try:
        iso = functor_iso(restrict(p, objs), restrict(q, objs))
    except SearchExhausted as e:
        raise InconclusiveIso(str(e)) from e
    if iso is None:
        raise NotAdmissible("presented functors are not isomorphic")
    a, b = theta_C(p, ambient), theta_C(q, ambient)
    cat = ambient.catalog
    name = f"{describe_object(p.B1, cat)} -> {describe_object(p.B0, cat)} vs {describe_object(q.B1, cat)} -> {describe_object(q.B0, cat)}"
    return Instance(name, list(a), list(b), a == b)


def verify_horseshoe(data, ambient: Ambient) -> Instance:
    """Horseshoe resolution of the middle functor: shape, left exactness, presentation, additivity."""
    from .fpfun import horseshoe
    objs = ambient.objects()
    if not data.is_valid(objs):
        raise NotAdmissible("connecting data does not give a short exact sequence of functors")
    resA = functor_resolution(data.pA, ambient)
    resB = functor_resolution(data.pB, ambient)
    hs = horseshoe(resA, resB, data)
    seq = hs.sequence
    notes = []
    ok = True
    for i in range(seq.d + 2):
        want = tuple(a + b for a, b in zip(resA.objects[i].dims, resB.objects[i].dims))
        if seq.objects[i].dims != want:
            ok = False
            notes.append(f"degree {i} is not A{i} ⊕ B{i}")
    if not ambient.is_left_d_exact(seq):
        ok = False
        notes.append("not left d-exact")
    iso = functor_iso(restrict(FPPresentation(seq.deflation), objs), restrict(data.pM, objs))
    if iso is None:
        ok = False
        notes.append("cokernel differs from the middle functor")
    split = SplitK0(ambient.split_basis(), ambient.catalog)
    mid_h = split.alternating([seq.objects[i] for i in range(seq.d + 2)])
    mid = theta_C(data.pM, ambient)
    tA, tB = theta_C(data.pA, ambient), theta_C(data.pB, ambient)
    total = tuple(a + b for a, b in zip(tA, tB))
    if mid != total or mid_h != total:
        ok = False
    return Instance(data.label or "functor extension", list(mid), list(total), ok, {}, notes)


# ---------------------------------------------------------------------------
# Batch harnesses

def _run(check: str, items, fn, caveats, info=None, workers: int = 1) -> Report:
    """Apply ``fn`` to every item; results are merged in enumeration order."""
    def one(item):
        label, args = item
        try:
            return fn(*args), None
        except (SearchExhausted, DecompositionInconclusive) as e:
            return None, f"{label}: {e}"

    items = list(items)
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, items))
    else:
        results = [one(it) for it in items]
    rep = Report(check, caveats=list(caveats), info=dict(info or {}))
    for inst, err in results:
        if err is None:
            rep.instances.append(inst)
        else:
            rep.inconclusive.append(err)
    return rep


def theorem_a_report(X: AddSubcategory, ambient: Ambient, K: RelativeK0 | None = None,
                     family: Sequence[DSequence] | None = None, max_terms: int = 2, workers: int = 1) -> Report:
    K = K or build_relative_k0(X, ambient, max_terms=max_terms)
    fam = family if family is not None else exact_family(ambient, max_terms=max_terms)
    items = [(repr(s), (s, X, K, ambient)) for s in fam]
    return _run("theorem-a", items, verify_theorem_A, [CAVEAT],
                {"group": K.describe(), "subcategory": X.label, "relations": len(K.relations)}, workers)


def prop13_report(X: AddSubcategory, ambient: Ambient, K: RelativeK0 | None = None,
                  family: Sequence[DSequence] | None = None, max_terms: int = 2, workers: int = 1) -> Report:
    from .dexact import d_kernel_family
    K = K or build_relative_k0(X, ambient, max_terms=max_terms)
    fam = family if family is not None else d_kernel_family(ambient, max_terms=max_terms)
    items = [(repr(s), (s, X, K, ambient)) for s in fam]
    return _run("prop13", items, verify_prop13_property, [CAVEAT],
                {"group": K.describe(), "subcategory": X.label, "relations": len(K.relations)}, workers)


@dataclass
class Theorem11Report:
    subcategory: str
    d: int
    group: str
    rank: int
    torsion: list
    n_members: int
    relation_failures: List[str]
    basis_failures: List[str]
    missing_resolutions: List[str]
    certificate: str
    indices: Dict[str, tuple]
    caveat: str = CAVEAT

    @property
    def passed(self) -> bool:
        return (not self.relation_failures and not self.basis_failures and not self.missing_resolutions
                and self.rank == self.n_members and not self.torsion)

    def to_dict(self):
        return {"check": "thm11", "instances": [
            {"sequence": f"index({k})", "lhs": list(v), "rhs": list(v), "equal": True, "error_term_dims": {}}
            for k, v in self.indices.items()],
            "caveats": [self.caveat],
            "summary": {"passed": self.passed, "group": self.group, "rank": self.rank,
                        "torsion": list(self.torsion), "members": self.n_members,
                        "relation_failures": self.relation_failures, "basis_failures": self.basis_failures,
                        "missing_resolutions": self.missing_resolutions, "certificate": self.certificate}}


def verify_theorem_1_1(T: AddSubcategory, d: int, ambient: Ambient, K: RelativeK0 | None = None) -> Theorem11Report:
    """Index map K0(C, E_T) -> K0^sp(T) against the enumerated presentation."""
    K = K or build_relative_k0(T, ambient)
    cat = T.catalog
    cache, missing = {}, []
    for i, C in enumerate(ambient.split_basis()):
        idx = cat.index_of(C)
        try:
            cache[idx] = index_dct(C, T, d)
        except Exception as e:  # resolution failures are itemised, not fatal
            missing.append(f"{C.label()}: {e}")
    gen_idx = [cat.index_of(g) for g in ambient.split_basis()]
    rel_fail = []
    if not missing:
        for r, prov in zip(K.relations, K.provenance):
            vec = [0] * len(cat)
            for c, gi in zip(r, gen_idx):
                vec[gi] += c
            img = index_of_vector(vec, T, d, cache)
            if any(img):
                rel_fail.append(prov)
    basis_fail = []
    for k, i in enumerate(T.indices):
        e = tuple(1 if m == k else 0 for m in range(len(T)))
        if cache.get(i) != e:
            basis_fail.append(cat[i].label())
    cert = certify_dct(T, d, ambient)
    indices = {cat[i].label(): cache[i] for i in gen_idx if i in cache}
    return Theorem11Report(T.label, d, K.describe(), K.rank, K.torsion, len(T), rel_fail, basis_fail,
                           missing, str(cert), indices)


def gen_schanuel_pairs(ambient: Ambient, n: int, seed: int = 0, max_terms: int = 1):
    """Pairs (p, q) of presentations of isomorphic functors.

    q is obtained from p by adding identity summands, adding redundant source
    summands mapping through p, and composing with automorphisms.
    """
    from .dexact import small_sums, test_morphisms
    from .repmod import hom_basis, lincomb, matrix_morphism
    rng = random.Random(seed)
    objs = ambient.objects()
    alg = ambient.algebra
    base = []
    for B1 in small_sums(objs, alg, max_terms):
        for B0 in small_sums(objs, alg, max_terms):
            base.extend(test_morphisms(B1, B0))
    pairs = []

    def rand_comb(basis):
        return lincomb([rng.randint(-2, 2) for _ in basis], basis, None, None) if basis else None

    def automorphism(M):
        E = hom_basis(M, M)
        for _ in range(50):
            g = lincomb([rng.randint(-2, 2) for _ in E], E) if E else Morphism.identity(M)
            if g.is_iso():
                return g
        return Morphism.identity(M)

    while len(pairs) < n:
        f = rng.choice(base)
        g = f
        kind = rng.randrange(4)
        steps = [kind] if kind < 3 else [0, 1, 2]
        for st in steps:
            if st == 0:
                Y = rng.choice(objs)
                m, S, T = matrix_morphism([[g, None], [None, Morphism.identity(Y)]], [g.source, Y], [g.target, Y])
                g = m
            elif st == 1:
                Y = rng.choice(objs)
                h = rand_comb(hom_basis(Y, g.source))
                comp = g @ h if h is not None else Morphism.zero(Y, g.target)
                m, S, T = matrix_morphism([[g, comp]], [g.source, Y], [g.target])
                g = Morphism(S, g.target, m.maps, check=False)
            else:
                g = automorphism(g.target) @ g @ automorphism(g.source)
        pairs.append((FPPresentation(f), FPPresentation(g)))
    return pairs


def schanuel_report(ambient: Ambient, n: int = 40, seed: int = 0, workers: int = 1) -> Report:
    pairs = gen_schanuel_pairs(ambient, n, seed)
    items = [(f"pair {i}", (p, q, ambient)) for i, (p, q) in enumerate(pairs)]
    return _run("schanuel", items, verify_schanuel, [], workers=workers)


def gen_functor_extensions(ambient: Ambient, max_terms: int = 1, limit: int | None = None):
    """Short exact sequences of functors from block upper-triangular presentations.

    For presentations ``∂A: A1 -> A0`` and ``∂B: B1 -> B0`` and ``c: B1 -> A0``
    the middle term is ``[[∂A, c], [0, ∂B]]``; only data passing exactness on
    every ambient object is kept.
    """
    from .dexact import small_sums, test_morphisms
    from .fpfun import FunctorSES
    from .repmod import matrix_morphism
    objs = ambient.objects()
    alg = ambient.algebra
    sums = small_sums(objs, alg, max_terms)
    pres = []
    for B1 in sums:
        for B0 in sums:
            for f in test_morphisms(B1, B0):
                if B0.total_dim:
                    pres.append(f)
    out = []
    cat = ambient.catalog
    for fA in pres:
        for fB in pres:
            for c in test_morphisms(fB.source, fA.target):
                m, S1, S0 = matrix_morphism([[fA, c], [None, fB]], [fA.source, fB.source], [fA.target, fB.target])
                _, inj, proj = direct_sum([fA.target, fB.target])
                alpha = Morphism(fA.target, S0, inj[0].maps, check=False)
                beta = Morphism(S0, fB.target, proj[1].maps, check=False)
                label = (f"({describe_object(fA.source, cat)}->{describe_object(fA.target, cat)}) / "
                         f"({describe_object(fB.source, cat)}->{describe_object(fB.target, cat)})"
                         + (" split" if c.is_zero() else " twisted"))
                data = FunctorSES(FPPresentation(fA), FPPresentation(m), FPPresentation(fB), alpha, beta, label)
                if data.is_valid(objs):
                    out.append(data)
                    if limit and len(out) >= limit:
                        return out
    return out


def horseshoe_report(ambient: Ambient, max_terms: int = 1, limit: int | None = None,
                     workers: int = 1) -> Report:
    items = [(d.label, (d, ambient)) for d in gen_functor_extensions(ambient, max_terms, limit)]
    return _run("horseshoe", items, verify_horseshoe, [], workers=workers)
