"""Finitely presented functors given by presentations ``C(-, B1) -> C(-, B0)``.

Functors are evaluated lazily on a finite list of test objects; values are
quotients of hom spaces written in hom-basis coordinates.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .approx import AddSubcategory
from .errors import LiftFailed, SearchExhausted, ShapeError
from .exactla import Mat, Rationals, kernel_basis, rank, solve_matrix
from .repmod import (Morphism, Representation, _complement_projection, _pivot_columns, _section,
                     direct_sum, factor_through, hom_basis, hom_span, lincomb, matrix_morphism)


@dataclass
class FPPresentation:
    """The functor ``Coker(C(-, f))`` for ``f: B1 -> B0``."""

    f: Morphism

    @property
    def B1(self) -> Representation:
        return self.f.source

    @property
    def B0(self) -> Representation:
        return self.f.target

    def __repr__(self):
        return f"FPPresentation({self.B1.label()} -> {self.B0.label()})"


def _objects_of(X) -> List[Representation]:
    if isinstance(X, AddSubcategory):
        return X.members
    return list(X)


def _coords(h: Morphism) -> list:
    return hom_span(h.source, h.target).coords(h.flatten())


class RestrictedFunctor:
    """Values ``F(X_j) = Coker(Hom(X_j, B1) -> Hom(X_j, B0))`` on the members of X."""

    def __init__(self, p: FPPresentation, X):
        self.presentation = p
        self.X = X
        self.objects = _objects_of(X)
        fld = p.f.source.field
        self.field = fld
        self._quot: List[Mat] = []
        self._sect: List[Mat] = []
        self._basis: List[List[Morphism]] = []
        for Xj in self.objects:
            basis0 = hom_basis(Xj, p.B0)
            n = len(basis0)
            self._basis.append(basis0)
            imgs = [_coords(p.f @ h) for h in hom_basis(Xj, p.B1)]
            if n == 0:
                Q = Mat.zeros(0, 0, fld)
            elif imgs:
                A = Mat(n, len(imgs), [[v[i] for v in imgs] for i in range(n)], fld, _trusted=True)
                piv = _pivot_columns(A)
                Q = _complement_projection(A.columns(piv), n, fld)
            else:
                Q = Mat.identity(n, fld)
            self._quot.append(Q)
            self._sect.append(_section(Q, fld) if Q.rows else Mat.zeros(n, 0, fld))
        self.dims = [Q.rows for Q in self._quot]
        self._actions: Dict[Tuple[int, int], List[Mat]] = {}

    @property
    def names(self) -> List[str]:
        return [o.label() for o in self.objects]

    def value_dims(self) -> Dict[str, int]:
        return dict(zip(self.names, self.dims))

    def is_zero(self) -> bool:
        return not any(self.dims)

    def act(self, phi: Morphism, j: int, k: int) -> Mat:
        """``F(phi): F(X_k) -> F(X_j)`` for ``phi: X_j -> X_k``."""
        fld = self.field
        dj, dk = self.dims[j], self.dims[k]
        cols = []
        for c in range(dk):
            lift = self._sect[k].col(c)
            t = lincomb(lift, self._basis[k], self.objects[k], self.presentation.B0)
            v = _coords(t @ phi) if self._basis[j] else []
            cols.append((self._quot[j] @ Mat.column(v, fld)).col(0) if dj else [])
        return Mat(dj, dk, [[cols[c][r] for c in range(dk)] for r in range(dj)], fld, _trusted=True)

    def actions(self, j: int, k: int) -> List[Mat]:
        """Action matrices of the hom-basis elements ``X_j -> X_k``."""
        key = (j, k)
        if key not in self._actions:
            self._actions[key] = [self.act(phi, j, k) for phi in hom_basis(self.objects[j], self.objects[k])]
        return self._actions[key]

    def check_well_defined(self) -> bool:
        """Precomposition maps the image of ``C(X_k, f)`` into the image at ``X_j``."""
        p = self.presentation
        for j, Xj in enumerate(self.objects):
            for k, Xk in enumerate(self.objects):
                for phi in hom_basis(Xj, Xk):
                    for h in hom_basis(Xk, p.B1):
                        t = p.f @ h @ phi
                        if self.dims[j] and any((self._quot[j] @ Mat.column(_coords(t), self.field)).col(0)):
                            return False
        return True

    def __repr__(self):
        vals = ", ".join(f"{n}:{d}" for n, d in zip(self.names, self.dims))
        return f"RestrictedFunctor({vals})"


def restrict(p: FPPresentation, X) -> RestrictedFunctor:
    return RestrictedFunctor(p, X)


def is_zero(F: RestrictedFunctor) -> bool:
    return F.is_zero()


def _nat_basis(F: RestrictedFunctor, G: RestrictedFunctor) -> List[List[Mat]]:
    """Basis of natural transformations F -> G (one matrix per test object)."""
    if len(F.objects) != len(G.objects) or any(a is not b and a.dims != b.dims for a, b in zip(F.objects, G.objects)):
        raise ShapeError("functors are restricted to different subcategories")
    fld = F.field
    n = len(F.objects)
    offs, k = [], 0
    for j in range(n):
        offs.append(k)
        k += G.dims[j] * F.dims[j]
    nvar = k
    if nvar == 0:
        return []
    rows = []
    z = fld.zero
    for j in range(n):
        for kk in range(n):
            Fa, Ga = F.actions(j, kk), G.actions(j, kk)
            for Fm, Gm in zip(Fa, Ga):
                # eta_j F(phi) - G(phi) eta_k = 0, entries (r, c): r < G_j, c < F_k
                for r in range(G.dims[j]):
                    for c in range(F.dims[kk]):
                        row = [z] * nvar
                        for m in range(F.dims[j]):
                            a = Fm._a[m][c]
                            if a:
                                idx = offs[j] + r * F.dims[j] + m
                                row[idx] = row[idx] + a
                        for m in range(G.dims[kk]):
                            a = Gm._a[r][m]
                            if a:
                                idx = offs[kk] + m * F.dims[kk] + c
                                row[idx] = row[idx] - a
                        if any(row):
                            rows.append(row)
    if rows:
        K = kernel_basis(Mat(len(rows), nvar, rows, fld, _trusted=True))
        vecs = [K.col(i) for i in range(K.cols)]
    else:
        vecs = [[fld.one if i == t else z for i in range(nvar)] for t in range(nvar)]
    out = []
    for v in vecs:
        mats = []
        for j in range(n):
            r, c = G.dims[j], F.dims[j]
            o = offs[j]
            mats.append(Mat(r, c, [list(v[o + i * c:o + (i + 1) * c]) for i in range(r)], fld, _trusted=True))
        out.append(mats)
    return out


def _comb(coeffs, nats):
    fld = nats[0][0].field
    out = None
    for c, mats in zip(coeffs, nats):
        c = fld(c)
        if not c:
            continue
        term = [m.scale(c) for m in mats]
        out = term if out is None else [a + b for a, b in zip(out, term)]
    return out


def functor_iso(F: RestrictedFunctor, G: RestrictedFunctor, *, coeff_bound=3, max_tries=2000,
                seed=0) -> Optional[List[Mat]]:
    """A natural isomorphism F -> G, or ``None`` when certified non-isomorphic."""
    if F.dims != G.dims:
        return None
    if F.is_zero():
        return [Mat.zeros(0, 0, F.field) for _ in F.dims]
    fwd = _nat_basis(F, G)
    if len(fwd) != len(_nat_basis(G, F)) or len(fwd) != len(_nat_basis(F, F)) or len(fwd) != len(_nat_basis(G, G)):
        return None
    if not fwd:
        return None

    def invertible(mats):
        return mats is not None and all(m.rows == 0 or rank(m) == m.rows for m in mats)

    for eta in fwd:
        if invertible(eta):
            return eta
    h = len(fwd)
    values = list(range(-coeff_bound, coeff_bound + 1))
    if len(values) ** h <= max_tries:
        combos = itertools.product(values, repeat=h)
    else:
        rng = random.Random(seed)
        combos = (tuple(rng.choice(values) for _ in range(h)) for _ in range(max_tries))
    for c in combos:
        if not any(c):
            continue
        eta = _comb(c, fwd)
        if invertible(eta):
            return eta
    raise SearchExhausted("no invertible natural transformation found within the search bound")


def functor_resolution(p: FPPresentation, ambient):
    """Left d-exact sequence ending in ``p.f``; its Yoneda image resolves the functor."""
    return ambient.d_kernel(p.f)


# ---------------------------------------------------------------------------
# Short exact sequences of functors and the horseshoe construction

@dataclass
class FunctorSES:
    """``M' -> M -> M''`` induced by ``alpha0: A0 -> M0`` and ``beta0: M0 -> B0``."""

    pA: FPPresentation
    pM: FPPresentation
    pB: FPPresentation
    alpha0: Morphism
    beta0: Morphism
    label: str = ""

    def induced(self, Fsrc: RestrictedFunctor, Ftgt: RestrictedFunctor, g0: Morphism, j: int) -> Mat:
        fld = Fsrc.field
        cols = []
        for c in range(Fsrc.dims[j]):
            lift = Fsrc._sect[j].col(c)
            t = lincomb(lift, Fsrc._basis[j], Fsrc.objects[j], Fsrc.presentation.B0)
            v = _coords(g0 @ t) if Ftgt._basis[j] else []
            cols.append((Ftgt._quot[j] @ Mat.column(v, fld)).col(0) if Ftgt.dims[j] else [])
        r, k = Ftgt.dims[j], Fsrc.dims[j]
        return Mat(r, k, [[cols[c][i] for c in range(k)] for i in range(r)], fld, _trusted=True)

    def is_valid(self, objects) -> bool:
        """Maps well defined on cokernels and the sequence exact on every object."""
        if factor_through(self.alpha0 @ self.pA.f, self.pM.f) is None:
            return False
        if factor_through(self.beta0 @ self.pM.f, self.pB.f) is None:
            return False
        FA, FM, FB = (restrict(p, objects) for p in (self.pA, self.pM, self.pB))
        for j in range(len(FA.objects)):
            a = self.induced(FA, FM, self.alpha0, j)
            b = self.induced(FM, FB, self.beta0, j)
            ra = rank(a) if a.rows and a.cols else 0
            rb = rank(b) if b.rows and b.cols else 0
            if ra != FA.dims[j] or rb != FB.dims[j] or FM.dims[j] != ra + rb:
                return False
            if a.cols and b.rows and not (b @ a).is_zero():
                return False
        return True


def _solve_pairs(terms, rhs: Morphism):
    """Solve ``Σ_t L_t(x_t) = rhs`` where each term is ``(basis, linear_map)``.

    Returns one morphism per term, or ``None`` when inconsistent.
    """
    fld = rhs.source.field
    cols, owners = [], []
    for t, (basis, fn) in enumerate(terms):
        for b in basis:
            cols.append(fn(b).flatten())
            owners.append(t)
    target = rhs.flatten()
    if not target:
        return [None for _ in terms]
    if not cols:
        return None if any(target) else [None for _ in terms]
    A = Mat(len(target), len(cols), [[c[i] for c in cols] for i in range(len(target))], fld, _trusted=True)
    x = solve_matrix(A, Mat.column(target, fld))
    if x is None:
        return None
    sol = x.col(0)
    out = []
    for t, (basis, _) in enumerate(terms):
        cs = [sol[i] for i in range(len(sol)) if owners[i] == t]
        out.append(lincomb(cs, basis) if basis else None)
    return out


@dataclass
class HorseshoeResult:
    sequence: object
    gammas: List[Morphism]
    lambda0: Morphism
    components: List[Tuple[Representation, Representation]] = field(default_factory=list)


def horseshoe(resA, resB, data: FunctorSES) -> HorseshoeResult:
    """Degreewise direct sum ``A_i ⊕ B_i`` with maps ``[[∂A_i, γ_i], [0, ∂B_i]]``."""
    from .dexact import DSequence
    d = resA.d
    if resB.d != d:
        raise ShapeError("resolutions have different lengths")
    A0, M0, B0 = data.pA.B0, data.pM.B0, data.pB.B0
    B1 = data.pB.B1
    # λ0 : B0 -> M0 with β0 λ0 ≡ id modulo the image of pB.f
    sol = _solve_pairs([(hom_basis(B0, M0), lambda h: data.beta0 @ h),
                        (hom_basis(B0, B1), lambda h: -(data.pB.f @ h))], Morphism.identity(B0))
    if sol is None:
        raise LiftFailed("the projection onto the quotient functor does not lift")
    lam = sol[0] if sol[0] is not None else Morphism.zero(B0, M0)
    rhs = -(lam @ resB.diff(1))
    sol = _solve_pairs([(hom_basis(B1, A0), lambda h: data.alpha0 @ h),
                        (hom_basis(B1, data.pM.B1), lambda h: -(data.pM.f @ h))], rhs)
    if sol is None:
        raise LiftFailed("no γ1 with α0 γ1 ≡ -λ0 ∂B1")
    gam = {1: sol[0] if sol[0] is not None else Morphism.zero(B1, A0)}
    for i in range(2, d + 2):
        target = -(gam[i - 1] @ resB.diff(i))
        h = factor_through(target, resA.diff(i - 1))
        if h is None:
            raise LiftFailed(f"γ{i} does not exist")
        gam[i] = h
    objs = [[resA.objects[i], resB.objects[i]] for i in range(d + 2)]
    sums = [direct_sum(o)[0] for o in objs]
    diffs = []
    for i in range(1, d + 2):
        blocks = [[resA.diff(i), gam[i]], [None, resB.diff(i)]]
        f, _, _ = matrix_morphism(blocks, objs[i], objs[i - 1])
        diffs.append(Morphism(sums[i], sums[i - 1], f.maps, check=False))
    seq = DSequence(sums, diffs)
    return HorseshoeResult(seq, [gam[i] for i in range(1, d + 2)], lam, [tuple(o) for o in objs])
