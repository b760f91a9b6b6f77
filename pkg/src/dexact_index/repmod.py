"""Representations of bound quivers, morphisms, Hom-spaces and decompositions."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .errors import (CatalogCapExceeded, DecompositionInconclusive, DexactError,
                     SearchExhausted, ShapeError, UnknownSummand)
from .exactla import Mat, Rationals, kernel_basis, rank, solve_matrix, Span


class AlgebraMismatch(DexactError):
    pass


def _same_algebra(*objs):
    alg = objs[0].algebra
    for o in objs[1:]:
        if o.algebra is not alg:
            raise AlgebraMismatch("objects live over different algebras")
    return alg


class Representation:
    """A module over a bound quiver algebra: vector spaces at vertices, matrices on arrows.

    ``maps[a]`` has shape ``dims[target(a)] x dims[source(a)]``.
    """

    __slots__ = ("algebra", "dims", "maps", "name", "_key", "__weakref__")

    def __init__(self, algebra, dims, maps, name=None, check=True):
        self.algebra = algebra
        self.dims = tuple(int(x) for x in dims)
        self.maps = tuple(maps)
        self.name = name
        self._key = None
        if check:
            self._validate()

    def _validate(self):
        q = self.algebra.quiver
        if len(self.dims) != q.n_vertices or len(self.maps) != len(q.arrows):
            raise ShapeError("representation does not match the quiver")
        for a, M in zip(q.arrows, self.maps):
            if M.shape != (self.dims[a.target], self.dims[a.source]):
                raise ShapeError(f"arrow {a.name}: expected {self.dims[a.target]}x{self.dims[a.source]}, got {M.rows}x{M.cols}")
        for rel in self.algebra.relations:
            s = q.path_source(rel[0][1])
            t = q.path_target(rel[0][1])
            acc = Mat.zeros(self.dims[t], self.dims[s], self.field)
            for c, p in rel:
                acc = acc + self.evaluate_path(p).scale(c)
            if not acc.is_zero():
                raise ValueError("representation violates a relation")

    @property
    def field(self):
        return self.algebra.field

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def arrow_map(self, a) -> Mat:
        if isinstance(a, str):
            a = self.algebra.quiver.arrow_index[a]
        return self.maps[a]

    def evaluate_path(self, path, vertex=None) -> Mat:
        if not path:
            return Mat.identity(self.dims[vertex], self.field)
        M = self.maps[path[0]]
        for a in path[1:]:
            M = self.maps[a] @ M
        return M

    def structural_key(self) -> tuple:
        """Exact matrix data; equal keys mean equal (not just isomorphic) modules."""
        if self._key is None:
            self._key = (self.dims, tuple(tuple(M.entries()) for M in self.maps))
        return self._key

    def rank_profile(self) -> tuple:
        return tuple(rank(M) for M in self.maps)

    def sort_key(self):
        return (self.total_dim, self.dims, self.rank_profile())

    @classmethod
    def zero(cls, algebra):
        q = algebra.quiver
        return cls(algebra, [0] * q.n_vertices,
                   [Mat.zeros(0, 0, algebra.field) for _ in q.arrows], name="0", check=False)

    def label(self) -> str:
        return self.name or f"M{self.dims}"

    def __repr__(self):
        dv = "(" + ",".join(map(str, self.dims)) + ")"
        return f"<{self.label()} dim {dv}>"


class Morphism:
    """Module map given by one matrix per vertex (``maps[v]``: source_v -> target_v)."""

    __slots__ = ("source", "target", "maps")

    def __init__(self, source: Representation, target: Representation, maps, check=True):
        self.source = source
        self.target = target
        self.maps = tuple(maps)
        if check:
            self._validate()

    def _validate(self):
        _same_algebra(self.source, self.target)
        q = self.source.algebra.quiver
        if len(self.maps) != q.n_vertices:
            raise ShapeError("wrong number of vertex maps")
        for v, M in enumerate(self.maps):
            if M.shape != (self.target.dims[v], self.source.dims[v]):
                raise ShapeError(f"vertex {v}: map has shape {M.shape}")
        for i, a in enumerate(q.arrows):
            lhs = self.target.maps[i] @ self.maps[a.source]
            rhs = self.maps[a.target] @ self.source.maps[i]
            if lhs != rhs:
                raise ValueError(f"square at arrow {a.name} does not commute")

    @classmethod
    def identity(cls, M: Representation) -> "Morphism":
        return cls(M, M, [Mat.identity(n, M.field) for n in M.dims], check=False)

    @classmethod
    def zero(cls, M: Representation, N: Representation) -> "Morphism":
        return cls(M, N, [Mat.zeros(N.dims[v], M.dims[v], M.field) for v in range(len(M.dims))], check=False)

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """``g @ f`` is the composite "first f, then g"."""
        if other.target is not self.source and other.target.dims != self.source.dims:
            raise ShapeError("morphisms are not composable")
        return Morphism(other.source, self.target, [a @ b for a, b in zip(self.maps, other.maps)], check=False)

    def __add__(self, other):
        return Morphism(self.source, self.target, [a + b for a, b in zip(self.maps, other.maps)], check=False)

    def __sub__(self, other):
        return Morphism(self.source, self.target, [a - b for a, b in zip(self.maps, other.maps)], check=False)

    def __neg__(self):
        return Morphism(self.source, self.target, [-a for a in self.maps], check=False)

    def scale(self, c):
        c = self.source.field(c)
        return Morphism(self.source, self.target, [a.scale(c) for a in self.maps], check=False)

    def is_zero(self) -> bool:
        return all(M.is_zero() for M in self.maps)

    def is_mono(self) -> bool:
        return all(rank(M) == M.cols for M in self.maps)

    def is_epi(self) -> bool:
        return all(rank(M) == M.rows for M in self.maps)

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_mono()

    def inverse(self) -> "Morphism":
        return Morphism(self.target, self.source, [M.inverse() for M in self.maps], check=False)

    def power(self, k: int) -> "Morphism":
        return Morphism(self.source, self.target, [M.power(k) for M in self.maps], check=False)

    def flatten(self) -> list:
        out = []
        for M in self.maps:
            for r in M._a:
                out.extend(r)
        return out

    def __eq__(self, other):
        return isinstance(other, Morphism) and self.maps == other.maps

    __hash__ = None

    def __repr__(self):
        return f"Morphism({self.source!r} -> {self.target!r})"


def lincomb(coeffs, morphs, source=None, target=None) -> Morphism:
    if not morphs:
        return Morphism.zero(source, target)
    f = morphs[0].source.field
    out = None
    for c, m in zip(coeffs, morphs):
        c = f(c)
        if not c:
            continue
        term = m.scale(c) if c != 1 else m
        out = term if out is None else out + term
    if out is None:
        return Morphism.zero(morphs[0].source, morphs[0].target)
    return out


def unflatten(vec, M: Representation, N: Representation) -> Morphism:
    maps = []
    k = 0
    for v in range(len(M.dims)):
        r, c = N.dims[v], M.dims[v]
        maps.append(Mat(r, c, [list(vec[k + i * c:k + (i + 1) * c]) for i in range(r)], M.field, _trusted=True))
        k += r * c
    return Morphism(M, N, maps, check=False)


# ---------------------------------------------------------------------------
# Hom spaces

def _hom_system(M: Representation, N: Representation) -> Mat:
    q = M.algebra.quiver
    f = M.field
    offs = []
    k = 0
    for v in range(q.n_vertices):
        offs.append(k)
        k += N.dims[v] * M.dims[v]
    nvar = k
    rows = []
    z = f.zero
    for ai, a in enumerate(q.arrows):
        s, t = a.source, a.target
        Na, Ma = N.maps[ai]._a, M.maps[ai]._a
        ms, mt, ns, nt = M.dims[s], M.dims[t], N.dims[s], N.dims[t]
        # equation N_a X_s - X_t M_a = 0, entry (i, j) with i < nt, j < ms
        for i in range(nt):
            for j in range(ms):
                row = [z] * nvar
                for kk in range(ns):
                    c = Na[i][kk]
                    if c:
                        idx = offs[s] + kk * ms + j
                        row[idx] = row[idx] + c
                for kk in range(mt):
                    c = Ma[kk][j]
                    if c:
                        idx = offs[t] + i * mt + kk
                        row[idx] = row[idx] - c
                if any(row):
                    rows.append(row)
    return Mat(len(rows), nvar, rows, f, _trusted=True)


@lru_cache(maxsize=8192)
def _hom_basis_cached(M: Representation, N: Representation):
    A = _hom_system(M, N)
    nvar = A.cols
    if nvar == 0:
        return ()
    if A.rows == 0:
        K = Mat.identity(nvar, M.field)
    else:
        K = kernel_basis(A)
    return tuple(unflatten(K.col(j), M, N) for j in range(K.cols))


def hom_basis(M: Representation, N: Representation) -> List[Morphism]:
    """Basis of Hom(M, N) as a list of morphisms."""
    _same_algebra(M, N)
    return list(_hom_basis_cached(M, N))


def hom_dim(M: Representation, N: Representation) -> int:
    return len(hom_basis(M, N))


def hom_span(M: Representation, N: Representation) -> Span:
    """Coordinates of morphisms M -> N in the hom basis (``Span.coords(f.flatten())``)."""
    return _hom_span_cached(M, N)


@lru_cache(maxsize=8192)
def _hom_span_cached(M, N):
    n = sum(a * b for a, b in zip(M.dims, N.dims))
    return Span([h.flatten() for h in hom_basis(M, N)], n, M.field)


# ---------------------------------------------------------------------------
# Kernels, cokernels, images, sums

def _induced_sub(M: Representation, bases: List[Mat], name=None) -> Representation:
    """Subrepresentation spanned vertexwise by the columns of ``bases``."""
    q = M.algebra.quiver
    maps = []
    for ai, a in enumerate(q.arrows):
        image = M.maps[ai] @ bases[a.source]
        X = solve_matrix(bases[a.target], image)
        if X is None:
            raise ValueError("subspace is not a subrepresentation")
        maps.append(X)
    return Representation(M.algebra, [B.cols for B in bases], maps, name=name, check=False)


def kernel(f: Morphism):
    """``(K, incl)`` with ``incl: K -> source`` a kernel of ``f``."""
    M = f.source
    bases = [kernel_basis(A) if A.rows else Mat.identity(A.cols, M.field) for A in f.maps]
    K = _induced_sub(M, bases)
    return K, Morphism(K, M, bases, check=False)


def image(f: Morphism):
    """``(I, incl, corestriction)`` with ``f = incl @ corestriction``."""
    N = f.target
    bases = []
    for A in f.maps:
        if A.cols == 0 or A.rows == 0:
            bases.append(Mat.zeros(A.rows, 0, N.field))
            continue
        piv = _pivot_columns(A)
        bases.append(A.columns(piv))
    I = _induced_sub(N, bases)
    incl = Morphism(I, N, bases, check=False)
    core = []
    for B, A in zip(bases, f.maps):
        core.append(solve_matrix(B, A) if B.cols else Mat.zeros(0, A.cols, N.field))
    return I, incl, Morphism(f.source, I, core, check=False)


def _pivot_columns(A: Mat):
    from .exactla import rref
    return rref(A)[1]


def _complement_projection(B: Mat, n: int, field):
    """For a subspace with basis columns ``B`` of F^n, return ``Q`` whose rows
    project onto a complement (the quotient map F^n -> F^n / col(B))."""
    if B.cols == 0:
        return Mat.identity(n, field)
    # choose the standard basis vectors not hit by the pivots of B^T
    from .exactla import rref
    _, piv, _ = rref(B.T)
    comp = [i for i in range(n) if i not in set(piv)]
    # change of basis P = [B | e_comp]; quotient map = last rows of P^{-1}
    cols = [B.col(j) for j in range(B.cols)]
    for i in comp:
        e = [field.zero] * n
        e[i] = field.one
        cols.append(e)
    P = Mat(n, n, [[c[r] for c in cols] for r in range(n)], field, _trusted=True)
    Pinv = P.inverse()
    return Pinv.submatrix(range(B.cols, n), range(n))


def cokernel(f: Morphism):
    """``(C, proj)`` with ``proj: target -> C`` a cokernel of ``f``."""
    N = f.target
    q = N.algebra.quiver
    fld = N.field
    quots = []
    for v, A in enumerate(f.maps):
        n = N.dims[v]
        if A.cols == 0 or n == 0:
            quots.append(Mat.identity(n, fld))
            continue
        piv = _pivot_columns(A)
        quots.append(_complement_projection(A.columns(piv), n, fld))
    maps = []
    for ai, a in enumerate(q.arrows):
        # the induced map sends class of x to class of N_a x; lift via a section
        Qs, Qt = quots[a.source], quots[a.target]
        sec = _section(Qs, fld)
        maps.append(Qt @ N.maps[ai] @ sec)
    C = Representation(N.algebra, [Q.rows for Q in quots], maps, check=False)
    return C, Morphism(N, C, quots, check=False)


def _section(Q: Mat, fld) -> Mat:
    """A right inverse of a surjective matrix ``Q``."""
    if Q.rows == 0:
        return Mat.zeros(Q.cols, 0, fld)
    X = solve_matrix(Q, Mat.identity(Q.rows, fld))
    return X


def direct_sum(objs: Sequence[Representation], algebra=None):
    """``(S, injections, projections)`` for the direct sum of ``objs``."""
    objs = list(objs)
    if not objs:
        if algebra is None:
            raise ValueError("empty direct sum needs an algebra")
        return Representation.zero(algebra), [], []
    alg = _same_algebra(*objs)
    q = alg.quiver
    fld = alg.field
    dims = [sum(o.dims[v] for o in objs) for v in range(q.n_vertices)]
    maps = [Mat.block_diag([o.maps[ai] for o in objs], fld) for ai in range(len(q.arrows))]
    S = Representation(alg, dims, maps, name="+".join(o.label() for o in objs), check=False)
    injs, projs = [], []
    offs = [0] * q.n_vertices
    for o in objs:
        im, pm = [], []
        for v in range(q.n_vertices):
            I = Mat.zeros(dims[v], o.dims[v], fld)
            for i in range(o.dims[v]):
                I._a[offs[v] + i][i] = fld.one
            im.append(I)
            pm.append(I.T)
        injs.append(Morphism(o, S, im, check=False))
        projs.append(Morphism(S, o, pm, check=False))
        offs = [offs[v] + o.dims[v] for v in range(q.n_vertices)]
    return S, injs, projs


def matrix_morphism(rows: Sequence[Sequence[Optional[Morphism]]], sources, targets):
    """Assemble a morphism ⊕sources -> ⊕targets from a block matrix of components.

    ``rows[i][j]`` is the component ``sources[j] -> targets[i]`` (``None`` = 0).
    """
    S, _, _ = direct_sum(sources, algebra=_alg_of(sources, targets))
    T, _, _ = direct_sum(targets, algebra=_alg_of(sources, targets))
    alg = S.algebra
    fld = alg.field
    maps = []
    for v in range(alg.quiver.n_vertices):
        blocks = []
        for i, t in enumerate(targets):
            brow = []
            for j, s in enumerate(sources):
                c = rows[i][j] if rows and rows[i] else None
                brow.append(c.maps[v] if c is not None else Mat.zeros(t.dims[v], s.dims[v], fld))
            blocks.append(brow)
        maps.append(_block(blocks, T.dims[v], S.dims[v], fld))
    return Morphism(S, T, maps, check=False), S, T


def _alg_of(*lists):
    for l in lists:
        for o in l:
            return o.algebra
    raise ValueError("cannot infer algebra from empty lists")


def _block(blocks, nrows, ncols, fld):
    out = [[fld.zero] * ncols for _ in range(nrows)]
    r0 = 0
    for brow in blocks:
        c0 = 0
        h = brow[0].rows if brow else 0
        for B in brow:
            for i in range(B.rows):
                row = B._a[i]
                o = out[r0 + i]
                for j in range(B.cols):
                    o[c0 + j] = row[j]
            c0 += B.cols
            h = B.rows
        r0 += h
    return Mat(nrows, ncols, out, fld, _trusted=True)


def factor_through(g: Morphism, f: Morphism) -> Optional[Morphism]:
    """Some ``h`` with ``f @ h == g`` (``g: Y -> C``, ``f: X -> C``), or ``None``."""
    if g.target.dims != f.target.dims:
        raise ShapeError("factor_through needs morphisms with a common target")
    Y, X = g.source, f.source
    basis = hom_basis(Y, X)
    target = g.flatten()
    if not basis:
        return Morphism.zero(Y, X) if not any(target) else None
    cols = [(f @ h).flatten() for h in basis]
    A = Mat(len(target), len(cols), [[c[i] for c in cols] for i in range(len(target))], g.source.field, _trusted=True)
    if A.rows == 0:
        return Morphism.zero(Y, X)
    x = solve_matrix(A, Mat.column(target, g.source.field))
    if x is None:
        return None
    return lincomb(x.col(0), basis)


def factor_through_left(g: Morphism, f: Morphism) -> Optional[Morphism]:
    """Some ``h`` with ``h @ f == g`` (``f: A -> X``, ``g: A -> Y``), or ``None``."""
    if g.source.dims != f.source.dims:
        raise ShapeError("factor_through_left needs morphisms with a common source")
    X, Y = f.target, g.target
    basis = hom_basis(X, Y)
    target = g.flatten()
    if not basis:
        return Morphism.zero(X, Y) if not any(target) else None
    cols = [(h @ f).flatten() for h in basis]
    if not target:
        return Morphism.zero(X, Y)
    A = Mat(len(target), len(cols), [[c[i] for c in cols] for i in range(len(target))], g.source.field, _trusted=True)
    x = solve_matrix(A, Mat.column(target, g.source.field))
    if x is None:
        return None
    return lincomb(x.col(0), basis)


# ---------------------------------------------------------------------------
# Isomorphism testing

def _invertible_combination(fs, coeff_bound, rng_seed, max_tries, check):
    """Search small integer combinations of ``fs`` passing ``check``."""
    if not fs:
        return None
    fld = fs[0].source.field
    for f in fs:
        if check(f):
            return f
    h = len(fs)
    if isinstance(fld, Rationals) or not hasattr(fld, "p"):
        values = list(range(-coeff_bound, coeff_bound + 1))
    else:
        values = list(range(fld.p)) if fld.p ** h <= max_tries else list(range(-coeff_bound, coeff_bound + 1))
    total = len(values) ** h
    if total <= max_tries:
        combos = itertools.product(values, repeat=h)
    else:
        rng = random.Random(rng_seed)
        combos = (tuple(rng.choice(values) for _ in range(h)) for _ in range(max_tries))
    for c in combos:
        if not any(c):
            continue
        g = lincomb(c, fs)
        if check(g):
            return g
    return None


def _hom_invariants(M, N):
    return (hom_dim(M, N), hom_dim(N, M), hom_dim(M, M), hom_dim(N, N))


def is_isomorphic(M: Representation, N: Representation, *, coeff_bound=3, max_tries=2000,
                  local=False, seed=0) -> Optional[Morphism]:
    """An explicit isomorphism ``M -> N``, or ``None`` when certified non-isomorphic.

    ``local=True`` asserts that M has a local endomorphism ring (M certified
    indecomposable); the test is then complete.  Otherwise a bounded search is
    used and :class:`SearchExhausted` signals an inconclusive outcome.
    """
    _same_algebra(M, N)
    if M is N:
        return Morphism.identity(M)
    if M.dims != N.dims:
        return None
    if M.total_dim == 0:
        return Morphism(M, N, [Mat.zeros(0, 0, M.field) for _ in M.dims], check=False)
    if M.rank_profile() != N.rank_profile():
        return None
    fwd, bwd = hom_basis(M, N), hom_basis(N, M)
    if len(fwd) != len(bwd) or len(fwd) != hom_dim(M, M) or len(fwd) != hom_dim(N, N):
        return None
    if not fwd:
        return None
    if local:
        # End(M) local: f iso iff g f is not in the radical for some g
        for f in fwd:
            for g in bwd:
                gf = g @ f
                if not _is_nilpotent(gf):
                    return f
        return None
    found = _invertible_combination(fwd, coeff_bound, seed, max_tries, lambda f: f.is_iso())
    if found is None:
        raise SearchExhausted(f"no invertible map found between {M!r} and {N!r}")
    return found


def _is_nilpotent(f: Morphism) -> bool:
    return all(M.rows == 0 or M.power(M.rows).is_zero() for M in f.maps)


# ---------------------------------------------------------------------------
# Decomposition

def _min_poly(f: Morphism):
    """Minimal polynomial of an endomorphism (coefficients, low degree first)."""
    fld = f.source.field
    polys = []
    for M in f.maps:
        n = M.rows
        if n == 0:
            continue
        powers = [Mat.identity(n, fld)]
        vecs = [powers[0].entries()]
        while True:
            P = M @ powers[-1]
            v = P.entries()
            A = Mat(n * n, len(vecs), [[vec[i] for vec in vecs] for i in range(n * n)], fld, _trusted=True)
            x = solve_matrix(A, Mat.column(v, fld))
            if x is not None:
                polys.append([-c for c in x.col(0)] + [fld.one])
                break
            powers.append(P)
            vecs.append(v)
    return polys


def _sympy_poly(coeffs, fld):
    import sympy
    x = sympy.Symbol("x")
    if isinstance(fld, Rationals):
        return sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in coeffs])), x, domain="QQ")
    return sympy.Poly(list(reversed([int(c) for c in coeffs])), x, modulus=fld.p)


def _from_sympy(poly, fld):
    cs = poly.all_coeffs()
    if isinstance(fld, Rationals):
        from fractions import Fraction
        return [Fraction(int(c.p), int(c.q)) for c in reversed(cs)]
    return [fld(int(c)) for c in reversed(cs)]


def _eval_poly(coeffs, f: Morphism) -> Morphism:
    fld = f.source.field
    maps = []
    for M in f.maps:
        n = M.rows
        acc = Mat.zeros(n, n, fld)
        for c in reversed(coeffs):
            acc = acc @ M + Mat.identity(n, fld).scale(c)
        maps.append(acc)
    return Morphism(f.source, f.source, maps, check=False)


def _fitting_power(f: Morphism) -> Morphism:
    return f.power(max(max(f.source.dims, default=0), 1))


def _spectral_type(f: Morphism):
    """Classify an endomorphism.

    Returns ``("scalar", lam)`` when ``f - lam`` is nilpotent, ``("split", g)``
    when ``g`` is an endomorphism with a proper Fitting decomposition, and
    ``("nonsplit", None)`` when the minimal polynomial is a power of an
    irreducible of degree > 1.
    """
    fld = f.source.field
    dim = f.source.total_dim
    ident = Morphism.identity(f.source)
    # cheap tests first: f itself, then f minus a few candidate eigenvalues
    cands = [fld.zero]
    tr = sum((M._a[i][i] for M in f.maps for i in range(M.rows)), fld.zero)
    if isinstance(fld, Rationals) or dim % fld.p:
        cands.append(tr / fld(dim))
    for M in f.maps:
        for i in range(M.rows):
            if M._a[i][i] not in cands:
                cands.append(M._a[i][i])
    for lam in cands[:6]:
        g = f - ident.scale(lam) if lam else f
        h = _fitting_power(g)
        if h.is_zero():
            return "scalar", lam
        if not h.is_iso():
            return "split", g
    total = None
    for coeffs in _min_poly(f):
        P = _sympy_poly(coeffs, fld)
        total = P if total is None else total.lcm(P)
    _, factors = total.factor_list()
    if len(factors) >= 2:
        g = _eval_poly(_from_sympy(factors[0][0], fld), f)
        return "split", g
    base = factors[0][0]
    if base.degree() == 1:
        c = _from_sympy(base.monic(), fld)
        return "scalar", -c[0]
    return "nonsplit", None


def _fitting(M: Representation, g: Morphism):
    """Split ``M = ker g^N ⊕ im g^N``; returns two ``(S, inc, proj)`` triples."""
    N = max(M.dims) if M.dims else 0
    h = g.power(max(N, 1))
    K, iK = kernel(h)
    I, iI, _ = image(h)
    fld = M.field
    pK, pI = [], []
    for v in range(len(M.dims)):
        n = M.dims[v]
        if n == 0:
            pK.append(Mat.zeros(K.dims[v], 0, fld))
            pI.append(Mat.zeros(I.dims[v], 0, fld))
            continue
        B = Mat.hstack([iK.maps[v], iI.maps[v]], rows=n, field=fld)
        Binv = B.inverse()
        pK.append(Binv.submatrix(range(K.dims[v]), range(n)))
        pI.append(Binv.submatrix(range(K.dims[v], n), range(n)))
    return ((K, iK, Morphism(M, K, pK, check=False)), (I, iI, Morphism(M, I, pI, check=False)))


def _is_proper(M, g):
    N = max(M.dims)
    h = g.power(max(N, 1))
    return not h.is_zero() and not h.is_iso()


def _find_split(M: Representation, max_words=400):
    """``None`` when End(M) is certified local, else a splitting endomorphism."""
    E = hom_basis(M, M)
    if len(E) <= 1:
        return None
    shifted = []
    undecided = False
    for b in E:
        kind, val = _spectral_type(b)
        if kind == "split":
            return val
        if kind == "scalar":
            shifted.append(b - Morphism.identity(M).scale(val))
        else:
            undecided = True
    # nilpotency of the algebra spanned by the shifted basis elements
    fld = M.field
    n = sum(a * a for a in M.dims)
    gens = [s for s in shifted if not s.is_zero()]
    layer = list(gens)
    words = 0
    while layer:
        nxt = []
        for x in layer:
            for y in gens:
                p = x @ y
                if p.is_zero():
                    continue
                if not _is_nilpotent(p):
                    return p
                nxt.append(p)
        if not nxt:
            layer = []
            break
        sp = Span([p.flatten() for p in nxt], n, fld)
        layer = [nxt[j] for j in sp.chosen]
        words += 1
        if words > n + 1:
            break
    if not layer and not undecided:
        return None
    # fall back: combinations of basis elements
    rng = random.Random(len(E))
    for _ in range(max_words):
        c = [rng.randint(-2, 2) for _ in E]
        g = lincomb(c, E)
        kind, val = _spectral_type(g)
        if kind == "split":
            return val
        if kind == "scalar":
            s = g - Morphism.identity(M).scale(val)
            if not _is_nilpotent(s):
                return s
    raise DecompositionInconclusive(f"could not certify the endomorphism ring of {M!r}")


@dataclass
class Summand:
    module: Representation
    multiplicity: int
    idempotents: List[Morphism] = dc_field(default_factory=list)
    inclusions: List[Morphism] = dc_field(default_factory=list)
    projections: List[Morphism] = dc_field(default_factory=list)

    def __iter__(self):
        return iter((self.module, self.multiplicity, self.idempotents))


def indecomposable_pieces(M: Representation):
    """Split ``M`` into certified indecomposables: list of ``(S, inc, proj)``."""
    out = []
    stack = [(M, Morphism.identity(M), Morphism.identity(M))]
    while stack:
        X, inc, pr = stack.pop()
        if X.total_dim == 0:
            continue
        g = _find_split(X)
        if g is None:
            out.append((X, inc, pr))
            continue
        (K, iK, pK), (I, iI, pI) = _fitting(X, g)
        stack.append((I, inc @ iI, pI @ pr))
        stack.append((K, inc @ iK, pK @ pr))
    return out


def decompose(M: Representation, catalog: "Catalog | None" = None) -> List[Summand]:
    """Krull-Schmidt decomposition with witnesses.

    The idempotents ``inc @ proj`` of all pieces are mutually orthogonal and
    sum to the identity of ``M``.  When a catalog is given, each group uses
    the catalog member as its module.
    """
    groups: List[Summand] = []
    for X, inc, pr in indecomposable_pieces(M):
        if catalog is not None:
            idx = catalog.index_of(X)
            rep = catalog[idx]
            phi = is_isomorphic(rep, X, local=True)
            inc2, pr2 = inc @ phi, phi.inverse() @ pr
            for s in groups:
                if s.module is rep:
                    s.multiplicity += 1
                    s.idempotents.append(inc @ pr)
                    s.inclusions.append(inc2)
                    s.projections.append(pr2)
                    break
            else:
                groups.append(Summand(rep, 1, [inc @ pr], [inc2], [pr2]))
            continue
        for s in groups:
            phi = is_isomorphic(s.module, X, local=True)
            if phi is not None:
                s.multiplicity += 1
                s.idempotents.append(inc @ pr)
                s.inclusions.append(inc @ phi)
                s.projections.append(phi.inverse() @ pr)
                break
        else:
            groups.append(Summand(X, 1, [inc @ pr], [inc], [pr]))
    if catalog is not None:
        groups.sort(key=lambda s: catalog.index_of(s.module))
    else:
        groups.sort(key=lambda s: s.module.sort_key())
    return groups


def is_indecomposable(M: Representation) -> bool:
    if M.total_dim == 0:
        return False
    return _find_split(M) is None


# ---------------------------------------------------------------------------
# Catalogs

class Catalog:
    """Ordered list of pairwise non-isomorphic indecomposables."""

    def __init__(self, algebra, members: Sequence[Representation]):
        self.algebra = algebra
        self.members = list(members)
        self._by_name = {m.name: i for i, m in enumerate(self.members)}
        self._mult = {}
        self._index = {m.structural_key(): i for i, m in enumerate(self.members)}

    def __len__(self):
        return len(self.members)

    def __getitem__(self, i):
        if isinstance(i, str):
            return self.members[self._by_name[i]]
        return self.members[i]

    def __iter__(self):
        return iter(self.members)

    @property
    def names(self):
        return [m.name for m in self.members]

    def multiplicities(self, M: Representation) -> tuple:
        """Multiplicity of each member as a summand of ``M``."""
        key = M.structural_key()
        hit = self._mult.get(key)
        if hit is not None:
            return hit
        vec = [0] * len(self.members)
        if M.total_dim:
            for X, _, _ in indecomposable_pieces(M):
                vec[self.index_of(X)] += 1
        out = tuple(vec)
        self._mult[key] = out
        return out

    def index_of(self, X: Representation) -> int:
        """Catalog position of an indecomposable ``X``."""
        i = self._index.get(X.structural_key())
        if i is not None:
            return i
        for i, m in enumerate(self.members):
            if m.dims == X.dims and is_isomorphic(m, X, local=True) is not None:
                return i
        raise UnknownSummand(f"{X!r} is not isomorphic to any catalog member")

    def by_dims(self, dims) -> List[int]:
        dims = tuple(dims)
        return [i for i, m in enumerate(self.members) if m.dims == dims]

    def __repr__(self):
        return f"Catalog({', '.join(self.names)})"


def _name_members(algebra, members):
    from .algebra import simple_module
    q = algebra.quiver
    named = {}
    refs = []
    for v in range(q.n_vertices):
        refs.append(("S", v, simple_module(algebra, v)))
    for v in range(q.n_vertices):
        refs.append(("P", v, algebra.projective(v)))
    for v in range(q.n_vertices):
        refs.append(("I", v, algebra.injective(v)))
    out = []
    used = set()
    for k, m in enumerate(members):
        name = None
        for tag, v, R in refs:
            if R.dims == m.dims and is_isomorphic(R, m, local=True) is not None:
                name = f"{tag}{q.vertex_names[v]}"
                break
        if name is None or name in used:
            name = f"M{k + 1}"
        used.add(name)
        out.append(Representation(algebra, m.dims, m.maps, name=name, check=False))
    return out


def build_catalog(algebra, strategy: str = "closure", modules: Sequence[Representation] = (),
                  cap: int = 30, max_objects: int = 200) -> Catalog:
    """Catalog of indecomposables.

    ``closure`` starts from the indecomposable projectives and injectives and
    closes under kernels, cokernels and images of hom-basis morphisms.
    ``user`` validates the supplied ``modules``.
    """
    if strategy == "user":
        members = []
        for m in modules:
            if not is_indecomposable(m):
                raise ValueError(f"{m!r} is not indecomposable")
            for o in members:
                if o.dims == m.dims and is_isomorphic(o, m, local=True) is not None:
                    raise ValueError(f"{m!r} duplicates {o!r}")
            members.append(m)
        members.sort(key=lambda r: r.sort_key())
        return Catalog(algebra, _name_members(algebra, members))
    if strategy != "closure":
        raise ValueError(f"unknown catalog strategy {strategy!r}")
    members: List[Representation] = []

    def add(X):
        added = []
        for piece, _, _ in indecomposable_pieces(X):
            if any(o.dims == piece.dims and is_isomorphic(o, piece, local=True) is not None for o in members):
                continue
            if piece.total_dim > cap:
                raise CatalogCapExceeded(f"indecomposable of dimension {piece.total_dim} exceeds cap {cap}")
            if len(members) >= max_objects:
                raise CatalogCapExceeded(f"more than {max_objects} indecomposables found")
            members.append(piece)
            added.append(piece)
        return added

    n = algebra.quiver.n_vertices
    fresh = []
    for v in range(n):
        fresh += add(algebra.projective(v))
    for v in range(n):
        fresh += add(algebra.injective(v))
    done = set()
    while fresh:
        fresh = []
        snapshot = list(members)
        for X in snapshot:
            for Y in snapshot:
                key = (id(X), id(Y))
                if key in done:
                    continue
                done.add(key)
                for f in hom_basis(X, Y):
                    fresh += add(kernel(f)[0])
                    fresh += add(cokernel(f)[0])
                    fresh += add(image(f)[0])
    members.sort(key=lambda r: r.sort_key())
    return Catalog(algebra, _name_members(algebra, members))
