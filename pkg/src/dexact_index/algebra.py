"""Bound quiver algebras kQ/I: path bases, projectives and injectives.

Vertices are numbered ``0 .. n-1``.  A path is stored as a tuple of arrow
indices in *traversal order*: ``(a, b)`` means "first ``a``, then ``b``",
which the composition notation of ``.alg`` files writes as ``b*a``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .errors import InfiniteDimensional
from .exactla import QQ, Mat, _rref_rows

Path = Tuple[int, ...]


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


class Quiver:
    def __init__(self, n_vertices: int, arrows: Sequence, vertex_names: Sequence[str] | None = None):
        self.n_vertices = n_vertices
        arr = []
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(*a)
            if not (0 <= a.source < n_vertices and 0 <= a.target < n_vertices):
                raise ValueError(f"arrow {a.name} has a vertex out of range")
            arr.append(a)
        names = [a.name for a in arr]
        if len(set(names)) != len(names):
            raise ValueError("arrow ids must be unique")
        self.arrows: Tuple[Arrow, ...] = tuple(arr)
        self.arrow_index = {a.name: i for i, a in enumerate(arr)}
        self.vertex_names = list(vertex_names) if vertex_names else [str(i + 1) for i in range(n_vertices)]
        self._out = [[i for i, a in enumerate(arr) if a.source == v] for v in range(n_vertices)]
        self._in = [[i for i, a in enumerate(arr) if a.target == v] for v in range(n_vertices)]

    def outgoing(self, v: int) -> List[int]:
        return self._out[v]

    def incoming(self, v: int) -> List[int]:
        return self._in[v]

    def path_source(self, path: Path, default: int | None = None) -> int:
        return self.arrows[path[0]].source if path else default

    def path_target(self, path: Path, default: int | None = None) -> int:
        return self.arrows[path[-1]].target if path else default

    def is_path(self, path: Path) -> bool:
        return all(self.arrows[x].target == self.arrows[y].source for x, y in zip(path, path[1:]))

    def path_name(self, path: Path, vertex: int | None = None) -> str:
        if not path:
            return f"e{self.vertex_names[vertex]}" if vertex is not None else "e"
        return "*".join(self.arrows[i].name for i in reversed(path))

    def __repr__(self):
        arr = ", ".join(f"{a.name}:{self.vertex_names[a.source]}->{self.vertex_names[a.target]}" for a in self.arrows)
        return f"Quiver({self.n_vertices} vertices; {arr})"


class Relation:
    """A linear combination of parallel paths of length at least two."""

    def __init__(self, terms: Sequence[Tuple[object, Sequence]]):
        self.terms = [(c, tuple(p)) for c, p in terms]

    @classmethod
    def parse(cls, text: str, quiver: Quiver) -> "Relation":
        """Parse composition notation such as ``"b*a - 2*d*c"``."""
        from .algfile import parse_relation
        return parse_relation(text, quiver)

    def resolve(self, quiver: Quiver, field=QQ) -> List[Tuple[object, Path]]:
        out = []
        for c, p in self.terms:
            idx = tuple(quiver.arrow_index[x] if isinstance(x, str) else int(x) for x in p)
            out.append((field(c), idx))
        if not out:
            raise ValueError("empty relation")
        ends = set()
        for _, p in out:
            if len(p) < 2:
                raise ValueError("relation terms must be paths of length >= 2")
            if not quiver.is_path(p):
                raise ValueError(f"{p} is not a path")
            ends.add((quiver.path_source(p), quiver.path_target(p)))
        if len(ends) != 1:
            raise ValueError("relation terms are not parallel")
        return out

    def __repr__(self):
        return f"Relation({self.terms})"


class BoundAlgebra:
    """Finite-dimensional algebra kQ/I with a canonical basis of path classes.

    ``basis[(i, j)]`` lists the standard paths from ``i`` to ``j``; every
    other path is rewritten by ``normal_form`` as a combination of them.
    """

    def __init__(self, quiver: Quiver, relations, field, basis, rewrite, nilpotency):
        self.quiver = quiver
        self.relations = relations
        self.field = field
        self.basis: Dict[Tuple[int, int], List[Path]] = basis
        self._rewrite = rewrite
        self.nilpotency = nilpotency
        self._index = {key: {p: k for k, p in enumerate(ps)} for key, ps in basis.items()}
        self._proj = {}
        self._inj = {}

    @property
    def n_vertices(self) -> int:
        return self.quiver.n_vertices

    @property
    def dimension(self) -> int:
        return sum(len(v) for v in self.basis.values())

    def paths(self, i: int, j: int) -> List[Path]:
        return self.basis.get((i, j), [])

    def endpoints(self, path: Path, vertex: int | None = None):
        q = self.quiver
        if not path:
            return vertex, vertex
        return q.path_source(path), q.path_target(path)

    def normal_form(self, path: Path, vertex: int | None = None) -> Dict[int, object]:
        """Coordinates of a path (traversal order) in ``basis[(source, target)]``."""
        i, j = self.endpoints(path, vertex)
        if len(path) >= self.nilpotency:
            return {}
        idx = self._index.get((i, j), {})
        if path in idx:
            return {idx[path]: self.field.one}
        return dict(self._rewrite[path])

    def multiply(self, p: Path, q: Path, vertex: int | None = None) -> Dict[int, object]:
        """Class of "first ``p`` then ``q``" in the basis."""
        if p and q and self.quiver.path_target(p) != self.quiver.path_source(q):
            return {}
        if not p and not q:
            return self.normal_form((), vertex)
        return self.normal_form(p + q, vertex)

    def projective(self, v: int):
        if v not in self._proj:
            self._proj[v] = projective_module(self, v)
        return self._proj[v]

    def injective(self, v: int):
        if v not in self._inj:
            self._inj[v] = injective_module(self, v)
        return self._inj[v]

    def __repr__(self):
        return f"BoundAlgebra(dim {self.dimension} over {self.field!r}, {self.quiver!r})"


def _enumerate_paths(quiver: Quiver, max_len: int) -> List[List[Path]]:
    levels = [[()]]
    for _ in range(max_len):
        nxt = []
        for p in levels[-1]:
            if not p:
                continue
            for a in quiver.outgoing(quiver.path_target(p)):
                nxt.append(p + (a,))
        if len(levels) == 1:
            nxt = [(i,) for i in range(len(quiver.arrows))]
        levels.append(nxt)
    return levels


def _paths_from(quiver, v, max_len):
    out = [((), v)]
    frontier = [()]
    for _ in range(max_len):
        new = []
        for p in frontier:
            t = quiver.path_target(p, v)
            for a in quiver.outgoing(t):
                new.append(p + (a,))
        out.extend((p, v) for p in new)
        frontier = new
    return out


def _paths_into(quiver, v, max_len):
    out = [((), v)]
    frontier = [()]
    for _ in range(max_len):
        new = []
        for p in frontier:
            s = quiver.path_source(p, v)
            for a in quiver.incoming(s):
                new.append((a,) + p)
        out.extend((p, v) for p in new)
        frontier = new
    return out


def _ideal_elements(quiver, rels, limit):
    """All ``u r w`` whose longest term has length <= ``limit``."""
    out = []
    for r in rels:
        longest = max(len(p) for _, p in r)
        s = quiver.path_source(r[0][1])
        t = quiver.path_target(r[0][1])
        slack = limit - longest
        if slack < 0:
            continue
        lefts = _paths_into(quiver, s, slack)
        rights = _paths_from(quiver, t, slack)
        for u, _ in lefts:
            for w, _ in rights:
                if len(u) + len(w) > slack:
                    continue
                out.append([(c, u + p + w) for c, p in r])
    return out


def _path_order_key(p):
    return (len(p), p)


def build_algebra(quiver: Quiver, relations: Sequence[Relation] = (), field=QQ, path_bound: int = 64) -> BoundAlgebra:
    """Compute a path basis of kQ/I.

    Raises :class:`InfiniteDimensional` when no power of the arrow ideal is
    seen to vanish modulo the relations within ``path_bound``.
    """
    rels = [r.resolve(quiver, field) if isinstance(r, Relation) else Relation(r).resolve(quiver, field)
            for r in relations]
    levels = _enumerate_paths(quiver, 1)
    nil = None
    for L in range(1, path_bound + 1):
        while len(levels) <= L:
            nxt = [p + (a,) for p in levels[-1] for a in quiver.outgoing(quiver.path_target(p))]
            levels.append(nxt)
        elems = _ideal_elements(quiver, rels, L)
        span = _class_spans(quiver, elems, field)
        for k in range(1, L + 1):
            if all(_in_span(span, quiver, p, field) for p in levels[k]):
                nil = k
                break
        if nil is not None:
            break
    if nil is None:
        raise InfiniteDimensional(f"paths do not stabilise within length {path_bound}")
    return _finalise(quiver, rels, field, nil, levels)


def _class_spans(quiver, elems, field):
    by_class: Dict[Tuple[int, int], list] = {}
    for e in elems:
        p0 = e[0][1]
        key = (quiver.path_source(p0), quiver.path_target(p0))
        by_class.setdefault(key, []).append(e)
    spans = {}
    for key, es in by_class.items():
        paths = sorted({p for e in es for _, p in e}, key=_path_order_key, reverse=True)
        col = {p: i for i, p in enumerate(paths)}
        rows = []
        for e in es:
            row = [field.zero] * len(paths)
            for c, p in e:
                row[col[p]] = row[col[p]] + c
            rows.append(row)
        piv = _rref_rows(rows, len(paths))
        spans[key] = (col, rows[:len(piv)], piv)
    return spans


def _in_span(spans, quiver, p, field):
    key = (quiver.path_source(p), quiver.path_target(p))
    if key not in spans:
        return False
    col, rows, piv = spans[key]
    if p not in col:
        return False
    j = col[p]
    # a single path lies in the span iff its unit vector reduces to zero
    vec = [field.zero] * len(col)
    vec[j] = field.one
    for r, pc in zip(rows, piv):
        if vec[pc]:
            f = vec[pc]
            vec = [x - f * y for x, y in zip(vec, r)]
    return not any(vec)


def _finalise(quiver, rels, field, nil, levels):
    short = [p for L in range(1, nil) for p in levels[L]]
    # ideal modulo paths of length >= nil: truncate u r w
    elems = []
    for e in _ideal_elements(quiver, rels, nil - 1 + max((len(p) for r in rels for _, p in r), default=0)):
        t = [(c, p) for c, p in e if len(p) < nil]
        if t:
            elems.append(t)
    by_class: Dict[Tuple[int, int], list] = {}
    for p in short:
        by_class.setdefault((quiver.path_source(p), quiver.path_target(p)), [])
    for e in elems:
        p0 = e[0][1]
        by_class.setdefault((quiver.path_source(p0), quiver.path_target(p0)), []).append(e)
    basis: Dict[Tuple[int, int], List[Path]] = {}
    rewrite: Dict[Path, Dict[int, object]] = {}
    for v in range(quiver.n_vertices):
        basis[(v, v)] = [()]
    for key in sorted(by_class):
        paths = sorted([p for p in short if (quiver.path_source(p), quiver.path_target(p)) == key],
                       key=_path_order_key, reverse=True)
        col = {p: i for i, p in enumerate(paths)}
        rows = []
        for e in by_class[key]:
            row = [field.zero] * len(paths)
            for c, p in e:
                row[col[p]] = row[col[p]] + c
            rows.append(row)
        piv = _rref_rows(rows, len(paths)) if rows else []
        pivset = set(piv)
        standard = sorted([p for i, p in enumerate(paths) if i not in pivset], key=_path_order_key)
        if key[0] == key[1]:
            standard = [()] + standard
        basis[key] = standard
        sidx = {p: k for k, p in enumerate(standard)}
        for r, pc in zip(rows, piv):
            nf = {}
            for j, x in enumerate(r):
                if x and j != pc:
                    nf[sidx[paths[j]]] = -x
            rewrite[paths[pc]] = nf
    basis = {k: v for k, v in basis.items() if v}
    return BoundAlgebra(quiver, rels, field, basis, rewrite, nil)


def projective_module(alg: BoundAlgebra, v: int):
    """``P_v``: paths starting at ``v``; arrows act by appending."""
    from .repmod import Representation
    q = alg.quiver
    n = q.n_vertices
    dims = [len(alg.paths(v, w)) for w in range(n)]
    maps = []
    for a in q.arrows:
        s, t = a.source, a.target
        M = Mat.zeros(dims[t], dims[s], alg.field)
        rows = M._a
        ai = q.arrow_index[a.name]
        for k, p in enumerate(alg.paths(v, s)):
            for i, c in alg.normal_form(p + (ai,)).items():
                rows[i][k] = c
        maps.append(M)
    return Representation(alg, dims, maps, name=f"P{q.vertex_names[v]}")


def injective_module(alg: BoundAlgebra, v: int):
    """``I_v``: dual of the paths ending at ``v``; arrows act by the transpose of prepending."""
    from .repmod import Representation
    q = alg.quiver
    n = q.n_vertices
    dims = [len(alg.paths(w, v)) for w in range(n)]
    maps = []
    for a in q.arrows:
        s, t = a.source, a.target
        M = Mat.zeros(dims[t], dims[s], alg.field)
        rows = M._a
        ai = q.arrow_index[a.name]
        for k, p in enumerate(alg.paths(t, v)):
            for i, c in alg.normal_form((ai,) + p).items():
                rows[k][i] = c
        maps.append(M)
    return Representation(alg, dims, maps, name=f"I{q.vertex_names[v]}")


def simple_module(alg: BoundAlgebra, v: int):
    from .repmod import Representation
    q = alg.quiver
    dims = [int(w == v) for w in range(q.n_vertices)]
    maps = [Mat.zeros(dims[a.target], dims[a.source], alg.field) for a in q.arrows]
    return Representation(alg, dims, maps, name=f"S{q.vertex_names[v]}")
