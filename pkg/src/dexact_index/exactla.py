"""Exact linear algebra over Q and prime fields, plus integer normal forms.

Matrices are small and dense; entries are :class:`fractions.Fraction` over
``QQ`` or :class:`Fp` residues over ``GF(p)``.  A :class:`Mat` is never
mutated after construction, so it can be shared freely.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .errors import FieldMismatch, ShapeError

__all__ = [
    "QQ", "GF", "Fp", "Rationals", "PrimeField", "Mat", "IntMat",
    "rref", "rank", "kernel_basis", "solve", "solve_matrix", "Span",
    "smith_normal_form", "quotient_group", "K0Presentation",
]


# ---------------------------------------------------------------------------
# Fields

class Rationals:
    characteristic = 0
    name = "QQ"

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, Fp):
            raise FieldMismatch(f"cannot coerce {x!r} into QQ")
        return Fraction(x)

    def contains(self, x) -> bool:
        return isinstance(x, Fraction)

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return (_rationals, ())


class Fp:
    """Residue class modulo a prime ``p``; value kept in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _other(self, o):
        if isinstance(o, Fp):
            if o.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({o.p})")
            return o.v
        if isinstance(o, int):
            return o
        if isinstance(o, Fraction):
            return o.numerator * pow(o.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, o):
        ov = self._other(o)
        if ov is NotImplemented:
            return ov
        return Fp(self.v + ov, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        ov = self._other(o)
        if ov is NotImplemented:
            return ov
        return Fp(self.v - ov, self.p)

    def __rsub__(self, o):
        ov = self._other(o)
        if ov is NotImplemented:
            return ov
        return Fp(ov - self.v, self.p)

    def __mul__(self, o):
        ov = self._other(o)
        if ov is NotImplemented:
            return ov
        return Fp(self.v * ov, self.p)

    __rmul__ = __mul__

    def __truediv__(self, o):
        ov = self._other(o)
        if ov is NotImplemented:
            return ov
        if ov % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(p)")
        return Fp(self.v * pow(ov, -1, self.p), self.p)

    def __rtruediv__(self, o):
        ov = self._other(o)
        if ov is NotImplemented:
            return ov
        return Fp(ov, self.p) / self

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pow__(self, k):
        return Fp(pow(self.v, k, self.p), self.p)

    def __eq__(self, o):
        if isinstance(o, Fp):
            return self.p == o.p and self.v == o.v
        if isinstance(o, (int, Fraction)):
            ov = self._other(o)
            return self.v == ov % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v} (mod {self.p})"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class PrimeField:
    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = Fp(0, p)
        self.one = Fp(1, p)

    def __call__(self, x):
        if isinstance(x, Fp):
            if x.p != self.p:
                raise FieldMismatch(f"cannot coerce {x!r} into {self.name}")
            return x
        if isinstance(x, Fraction):
            return Fp(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return Fp(int(x), self.p)

    def contains(self, x) -> bool:
        return isinstance(x, Fp) and x.p == self.p

    def elements(self):
        return [Fp(i, self.p) for i in range(self.p)]

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return (GF, (self.p,))


QQ = Rationals()


def _rationals():
    return QQ


@lru_cache(maxsize=None)
def GF(p: int = 101) -> PrimeField:
    return PrimeField(p)


def field_of(x):
    if isinstance(x, Fp):
        return GF(x.p)
    return QQ


# ---------------------------------------------------------------------------
# Dense matrices

class Mat:
    """Dense matrix over a field; ``entries`` are rows of field elements."""

    __slots__ = ("rows", "cols", "field", "_a")

    def __init__(self, rows: int, cols: int, entries=None, field=QQ, _trusted=False):
        self.rows = rows
        self.cols = cols
        self.field = field
        if entries is None:
            z = field.zero
            self._a = [[z] * cols for _ in range(rows)]
            return
        if _trusted:
            self._a = entries
            return
        flat = isinstance(entries, (list, tuple)) and (len(entries) == 0 or not isinstance(entries[0], (list, tuple)))
        if flat and rows * cols > 0:
            if len(entries) != rows * cols:
                raise ShapeError(f"expected {rows * cols} entries, got {len(entries)}")
            entries = [entries[i * cols:(i + 1) * cols] for i in range(rows)]
        elif flat:
            entries = [[] for _ in range(rows)]
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ShapeError(f"entries do not form a {rows}x{cols} matrix")
        conv = field
        self._a = [[conv(x) for x in r] for r in entries]

    # constructors -------------------------------------------------------
    @classmethod
    def from_rows(cls, rows_: Sequence[Sequence], field=None, cols=None):
        rows_ = [list(r) for r in rows_]
        if field is None:
            field = _infer_field(x for r in rows_ for x in r)
        ncols = len(rows_[0]) if rows_ else (cols or 0)
        return cls(len(rows_), ncols, rows_, field)

    @classmethod
    def identity(cls, n: int, field=QQ):
        z, o = field.zero, field.one
        return cls(n, n, [[o if i == j else z for j in range(n)] for i in range(n)], field, _trusted=True)

    @classmethod
    def zeros(cls, rows: int, cols: int, field=QQ):
        return cls(rows, cols, None, field)

    @classmethod
    def column(cls, values: Sequence, field=None):
        values = list(values)
        if field is None:
            field = _infer_field(values)
        return cls(len(values), 1, [[field(v)] for v in values], field, _trusted=True)

    @classmethod
    def hstack(cls, mats: Sequence["Mat"], rows=None, field=None):
        mats = list(mats)
        if not mats:
            return cls(rows or 0, 0, None, field or QQ)
        f = _common_field(mats)
        r = mats[0].rows
        if any(m.rows != r for m in mats):
            raise ShapeError("hstack: row counts differ")
        data = [[x for m in mats for x in m._a[i]] for i in range(r)]
        return cls(r, sum(m.cols for m in mats), data, f, _trusted=True)

    @classmethod
    def vstack(cls, mats: Sequence["Mat"], cols=None, field=None):
        mats = list(mats)
        if not mats:
            return cls(0, cols or 0, None, field or QQ)
        f = _common_field(mats)
        c = mats[0].cols
        if any(m.cols != c for m in mats):
            raise ShapeError("vstack: column counts differ")
        data = [list(row) for m in mats for row in m._a]
        return cls(sum(m.rows for m in mats), c, data, f, _trusted=True)

    @classmethod
    def block_diag(cls, mats: Sequence["Mat"], field=QQ):
        mats = list(mats)
        if mats:
            field = _common_field(mats)
        R = sum(m.rows for m in mats)
        C = sum(m.cols for m in mats)
        out = cls.zeros(R, C, field)
        r0 = c0 = 0
        for m in mats:
            for i in range(m.rows):
                row = out._a[r0 + i]
                row[c0:c0 + m.cols] = m._a[i]
            r0 += m.rows
            c0 += m.cols
        return out

    # access ---------------------------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._a[i][j]

    def row(self, i):
        return list(self._a[i])

    def col(self, j):
        return [r[j] for r in self._a]

    def tolist(self):
        return [list(r) for r in self._a]

    def entries(self):
        """Row-major flat list."""
        return [x for r in self._a for x in r]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        return Mat(len(rows), len(cols), [[self._a[i][j] for j in cols] for i in rows], self.field, _trusted=True)

    def columns(self, cols: Sequence[int]) -> "Mat":
        return self.submatrix(range(self.rows), cols)

    # arithmetic -----------------------------------------------------------
    def _check(self, other):
        if other.field is not self.field and repr(other.field) != repr(self.field):
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        z = self.field.zero
        B = other._a
        n = other.cols
        out = []
        for r in self._a:
            acc = [z] * n
            for k, x in enumerate(r):
                if x:
                    Bk = B[k]
                    for j in range(n):
                        y = Bk[j]
                        if y:
                            acc[j] = acc[j] + x * y
            out.append(acc)
        return Mat(self.rows, n, out, self.field, _trusted=True)

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return Mat(self.rows, self.cols,
                   [[x + y for x, y in zip(r, s)] for r, s in zip(self._a, other._a)],
                   self.field, _trusted=True)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {self.shape} and {other.shape}")
        return Mat(self.rows, self.cols,
                   [[x - y for x, y in zip(r, s)] for r, s in zip(self._a, other._a)],
                   self.field, _trusted=True)

    def __neg__(self):
        return Mat(self.rows, self.cols, [[-x for x in r] for r in self._a], self.field, _trusted=True)

    def scale(self, c) -> "Mat":
        c = self.field(c)
        return Mat(self.rows, self.cols, [[c * x for x in r] for r in self._a], self.field, _trusted=True)

    def __rmul__(self, c):
        return self.scale(c)

    @property
    def T(self) -> "Mat":
        return Mat(self.cols, self.rows, [list(c) for c in zip(*self._a)] if self.rows else [[] for _ in range(self.cols)],
                   self.field, _trusted=True)

    def is_zero(self) -> bool:
        return not any(x for r in self._a for x in r)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self._a == other._a

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self._a)))

    def __repr__(self):
        body = "; ".join(" ".join(str(x if not isinstance(x, Fp) else x.v) for x in r) for r in self._a)
        return f"Mat({self.rows}x{self.cols} over {self.field!r}: [{body}])"

    # derived ----------------------------------------------------------------
    def rank(self) -> int:
        return rank(self)

    def kernel(self) -> "Mat":
        return kernel_basis(self)

    def inverse(self) -> "Mat":
        if self.rows != self.cols:
            raise ShapeError("inverse of a non-square matrix")
        X = solve_matrix(self, Mat.identity(self.rows, self.field))
        if X is None:
            raise ZeroDivisionError("matrix is singular")
        return X

    def is_invertible(self) -> bool:
        return self.rows == self.cols and rank(self) == self.rows

    def power(self, k: int) -> "Mat":
        out = Mat.identity(self.rows, self.field)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out


def _infer_field(values: Iterable):
    p = None
    saw_fraction = False
    for v in values:
        if isinstance(v, Fp):
            if p is not None and v.p != p:
                raise FieldMismatch(f"entries from GF({p}) and GF({v.p})")
            p = v.p
        elif isinstance(v, Fraction):
            saw_fraction = True
    if p is not None:
        if saw_fraction:
            raise FieldMismatch("rational and prime-field entries mixed")
        return GF(p)
    return QQ


def _common_field(mats):
    f = mats[0].field
    for m in mats[1:]:
        if m.field is not f and repr(m.field) != repr(f):
            raise FieldMismatch(f"{f!r} vs {m.field!r}")
    return f


def _check_entries_field(A: Mat):
    f = A.field
    for r in A._a:
        for x in r:
            if not f.contains(x):
                raise FieldMismatch(f"entry {x!r} does not belong to {f!r}")


def _rref_rows(a, ncols, *, reduced=True):
    """In-place Gauss-Jordan elimination on a list of rows; returns pivots."""
    pivots = []
    nrows = len(a)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = None
        for i in range(r, nrows):
            if a[i][c]:
                p = i
                break
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        row = a[r]
        inv = 1 / row[c]
        if inv != 1:
            row = [x * inv if x else x for x in row]
            a[r] = row
        rng = range(nrows) if reduced else range(r + 1, nrows)
        nz = [j for j in range(c, len(row)) if row[j]]
        for i in rng:
            if i == r:
                continue
            other = a[i]
            f = other[c]
            if f:
                for j in nz:
                    other[j] = other[j] - f * row[j]
        pivots.append(c)
        r += 1
    return pivots


def rref(A: Mat):
    """Reduced row echelon form: returns ``(R, pivots, rank)``."""
    _check_entries_field(A)
    a = [list(r) for r in A._a]
    piv = _rref_rows(a, A.cols)
    return Mat(A.rows, A.cols, a, A.field, _trusted=True), piv, len(piv)


def rank(A: Mat) -> int:
    if A.rows == 0 or A.cols == 0:
        return 0
    a = [list(r) for r in A._a]
    return len(_rref_rows(a, A.cols, reduced=False))


def kernel_basis(A: Mat) -> Mat:
    """Columns of the result form a basis of ``{x : A x = 0}``."""
    _check_entries_field(A)
    n = A.cols
    f = A.field
    a = [list(r) for r in A._a]
    piv = _rref_rows(a, n)
    free = [j for j in range(n) if j not in set(piv)]
    z, o = f.zero, f.one
    cols = []
    for j in free:
        v = [z] * n
        v[j] = o
        for r, pc in enumerate(piv):
            v[pc] = -a[r][j]
        cols.append(v)
    if not cols:
        return Mat(n, 0, [[] for _ in range(n)], f, _trusted=True)
    return Mat(n, len(cols), [list(x) for x in zip(*cols)], f, _trusted=True)


def solve_matrix(A: Mat, B: Mat):
    """Some ``X`` with ``A X = B``, or ``None`` when inconsistent."""
    if A.rows != B.rows:
        raise ShapeError(f"solve: A has {A.rows} rows, B has {B.rows}")
    f = _common_field([A, B])
    n, k = A.cols, B.cols
    a = [list(ra) + list(rb) for ra, rb in zip(A._a, B._a)]
    piv = _rref_rows(a, n)
    z = f.zero
    for i in range(len(piv), A.rows):
        if any(a[i][n + j] for j in range(k)):
            return None
    X = [[z] * k for _ in range(n)]
    for r, pc in enumerate(piv):
        X[pc] = a[r][n:n + k]
    return Mat(n, k, X, f, _trusted=True)


def solve(A: Mat, b):
    """Solve ``A x = b`` for a column ``b`` (list or 1-column Mat)."""
    if not isinstance(b, Mat):
        b = Mat.column([A.field(x) for x in b], A.field)
    if b.rows != A.rows:
        raise ShapeError(f"solve: A has {A.rows} rows, b has length {b.rows}")
    X = solve_matrix(A, b)
    if X is None:
        return None
    return X.col(0)


class Span:
    """A subspace of ``F^n`` given by spanning vectors, with fast coordinates.

    ``coords(v)`` returns coordinates of ``v`` in the chosen basis (a subset
    of the spanning vectors) or ``None`` when ``v`` lies outside the span.
    """

    def __init__(self, vectors: Sequence[Sequence], n: int, field=QQ):
        self.n = n
        self.field = field
        vectors = [list(v) for v in vectors]
        if vectors and n:
            M = Mat(n, len(vectors), [[v[i] for v in vectors] for i in range(n)], field, _trusted=True)
            _, piv, _ = rref(M)
        else:
            piv = []
        self.chosen = piv
        self.basis = [vectors[j] for j in piv]
        self.dim = len(piv)
        self._rows, self._inv, self._B = [], None, None
        if self.dim:
            B = Mat(n, self.dim, [[vectors[j][i] for j in piv] for i in range(n)], field, _trusted=True)
            _, rows_piv, _ = rref(B.T)
            self._rows = rows_piv
            self._inv = B.submatrix(rows_piv, range(self.dim)).inverse()
            self._B = B

    def coords(self, v):
        if self.dim == 0:
            return [] if not any(v) else None
        sub = Mat(self.dim, 1, [[v[i]] for i in self._rows], self.field, _trusted=True)
        c = (self._inv @ sub).col(0)
        # verify the remaining rows
        B = self._B._a
        for i in range(self.n):
            s = self.field.zero
            row = B[i]
            for j in range(self.dim):
                if row[j] and c[j]:
                    s = s + row[j] * c[j]
            if s != v[i]:
                return None
        return c

    def contains(self, v) -> bool:
        return self.coords(v) is not None


# ---------------------------------------------------------------------------
# Integer matrices, Smith normal form, finitely generated abelian groups

class IntMat:
    """Dense matrix of Python integers."""

    __slots__ = ("rows", "cols", "_a")

    def __init__(self, rows: int, cols: int, entries=None):
        self.rows = rows
        self.cols = cols
        if entries is None:
            self._a = [[0] * cols for _ in range(rows)]
        else:
            if entries and not isinstance(entries[0], (list, tuple)):
                if len(entries) != rows * cols:
                    raise ShapeError("wrong number of entries")
                entries = [entries[i * cols:(i + 1) * cols] for i in range(rows)]
            if len(entries) != rows or any(len(r) != cols for r in entries):
                raise ShapeError(f"entries do not form a {rows}x{cols} matrix")
            self._a = [[int(x) for x in r] for r in entries]

    @classmethod
    def from_rows(cls, rows_, cols=None):
        rows_ = [list(r) for r in rows_]
        return cls(len(rows_), len(rows_[0]) if rows_ else (cols or 0), rows_)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    def tolist(self):
        return [list(r) for r in self._a]

    def __getitem__(self, ij):
        return self._a[ij[0]][ij[1]]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        B = other._a
        out = [[sum(r[k] * B[k][j] for k in range(self.cols)) for j in range(other.cols)] for r in self._a]
        return IntMat(self.rows, other.cols, out)

    def __eq__(self, other):
        return isinstance(other, IntMat) and self.shape == other.shape and self._a == other._a

    def __repr__(self):
        return f"IntMat({self._a})"

    def det(self) -> int:
        """Bareiss fraction-free determinant."""
        if self.rows != self.cols:
            raise ShapeError("det of non-square matrix")
        n = self.rows
        a = [list(r) for r in self._a]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1


def _snf(A: IntMat):
    """Return ``(U, D, V, Vinv)`` as nested lists with ``U A V = D``."""
    m, n = A.rows, A.cols
    D = [list(r) for r in A._a]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        D[dst] = [x + q * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for r in D:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]
        # V' = V E with E = I + q e_src e_dst^T, so Vinv' = E^-1 Vinv
        Vi[src] = [x - q * y for x, y in zip(Vi[src], Vi[dst])]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = D[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)
        while True:
            # clear column t and row t by division; smallest remainder becomes pivot
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            best = None
            for i in range(t + 1, m):
                x = D[i][t]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, "r")
            for j in range(t + 1, n):
                x = D[t][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), j, "c")
            if best is not None:
                if best[2] == "r":
                    swap_rows(t, best[1])
                else:
                    swap_cols(t, best[1])
                continue
            p = D[t][t]
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, D, V, Vi


def smith_normal_form(A: IntMat):
    """``(U, D, V)`` with ``U A V = D``, ``U`` and ``V`` unimodular.

    ``D`` is diagonal with non-negative entries ``d1 | d2 | ...`` (zeros last).
    """
    U, D, V, _ = _snf(A)
    return IntMat(A.rows, A.rows, U), IntMat(A.rows, A.cols, D), IntMat(A.cols, A.cols, V)


@dataclass
class K0Presentation:
    """``Z^n`` modulo the row span of an integer relation matrix."""

    n_generators: int
    relations: IntMat
    invariant_factors: list
    free_rank: int
    _V: list = field(repr=False)
    _Vinv: list = field(repr=False)

    @property
    def torsion(self) -> list:
        return [d for d in self.invariant_factors if d > 1]

    @property
    def rank(self) -> int:
        """Free rank of the group."""
        return self.free_rank

    @property
    def relation_rank(self) -> int:
        return len(self.invariant_factors)

    def _to_snf_basis(self, v):
        n = self.n_generators
        return [sum(v[i] * self._V[i][j] for i in range(n)) for j in range(n)]

    def _reduce(self, w):
        w = list(w)
        for i, d in enumerate(self.invariant_factors):
            w[i] %= d
        return w

    def canonical(self, v) -> tuple:
        """Unique representative of the coset ``v + relations``."""
        v = [int(x) for x in v]
        if len(v) != self.n_generators:
            raise ShapeError(f"vector of length {len(v)}, expected {self.n_generators}")
        w = self._reduce(self._to_snf_basis(v))
        n = self.n_generators
        return tuple(sum(w[i] * self._Vinv[i][j] for i in range(n)) for j in range(n))

    def coordinates(self, v) -> tuple:
        """Coordinates in ``Z/d1 + ... + Z^free`` (factors equal to 1 dropped)."""
        w = self._reduce(self._to_snf_basis([int(x) for x in v]))
        r = len(self.invariant_factors)
        tors = [w[i] for i, d in enumerate(self.invariant_factors) if d > 1]
        return tuple(tors + w[r:])

    def is_zero(self, v) -> bool:
        return not any(self.canonical(v))

    def equal(self, u, v) -> bool:
        return self.canonical(u) == self.canonical(v)

    def describe(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def quotient_group(relations, n_generators: int) -> K0Presentation:
    """Present ``Z^n / <rows of relations>`` via the Smith normal form."""
    if isinstance(relations, IntMat):
        R = relations
    else:
        rows_ = [list(r) for r in relations]
        R = IntMat(len(rows_), n_generators, rows_) if rows_ else IntMat(0, n_generators)
    if R.cols != n_generators:
        raise ShapeError(f"relations have {R.cols} columns, expected {n_generators}")
    U, D, V, Vi = _snf(R)
    inv = []
    for i in range(min(R.rows, R.cols)):
        if D[i][i] == 0:
            break
        inv.append(D[i][i])
    return K0Presentation(n_generators, R, inv, n_generators - len(inv), V, Vi)


def int_gcd_list(xs) -> int:
    g = 0
    for x in xs:
        g = gcd(g, int(x))
    return g
