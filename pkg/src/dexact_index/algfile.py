"""Reader for ``.alg`` algebra definition files.

A file is line oriented and split into sections::

    # linearly oriented A3 with one zero relation
    [quiver]
    vertices 3
    arrow a: 1 -> 2
    arrow b: 2 -> 3

    [relations]
    b*a = 0            # a then b

    [field]
    rational           # or: prime 7

    [subcat T]
    projectives
    dim (1,0,0)

    [config]
    d = 2
    ambient = cluster-tilting T

Paths are written right to left: ``b*a`` means first ``a``, then ``b``.
Vertices are numbered from 1.  Subcategory selectors are ``projectives``,
``injectives``, ``all``, ``name S1``, ``dim (d1,...,dn)`` and
``dim (d1,...,dn) index k`` when several catalog objects share a dimension
vector (k counts from 1 in catalog order).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Tuple

from .algebra import BoundAlgebra, Quiver, Relation, build_algebra
from .errors import ParseError
from .exactla import GF, QQ

SECTIONS = ("quiver", "relations", "field", "subcat", "config")
AMBIENTS = ("module", "cluster-tilting", "torsion")
CONFIG_KEYS = {"d": int, "ambient": str, "cap": int, "max_objects": int, "max_terms": int,
               "path_bound": int, "schanuel_pairs": int, "seed": int}

_ARROW = re.compile(r"arrow\s+([A-Za-z_][A-Za-z0-9_']*)\s*:\s*(\d+)\s*->\s*(\d+)\s*$")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_COEFF = re.compile(r"(\d+(?:/\d+)?)\s*\*?")
_DIM = re.compile(r"dim\s*\(([^)]*)\)\s*(?:index\s+(\d+))?\s*$")


@dataclass
class Selector:
    kind: str  # projectives | injectives | all | name | dim
    value: object = None
    index: int = 1
    line: int = 0


@dataclass
class AlgFile:
    quiver: Quiver
    relations: List[Relation]
    field_spec: Tuple[str, int]
    subcats: Dict[str, List[Selector]] = field(default_factory=dict)
    config: Dict[str, object] = field(default_factory=dict)
    source: str = "<string>"

    @property
    def field(self):
        kind, p = self.field_spec
        return QQ if kind == "rational" else GF(p)

    @property
    def d(self) -> int:
        return int(self.config.get("d", 1))

    def algebra(self) -> BoundAlgebra:
        return build_algebra(self.quiver, self.relations, self.field,
                             path_bound=int(self.config.get("path_bound", 64)))

    def catalog(self, algebra: BoundAlgebra | None = None):
        from .repmod import build_catalog
        return build_catalog(algebra or self.algebra(), cap=int(self.config.get("cap", 30)),
                             max_objects=int(self.config.get("max_objects", 200)))

    def subcategory(self, name: str, catalog):
        """Resolve a named ``[subcat]`` section against a catalog."""
        from .approx import AddSubcategory
        if name not in self.subcats:
            raise ParseError(f"no subcategory named {name!r}")
        alg = catalog.algebra
        idx = []
        for sel in self.subcats[name]:
            if sel.kind == "projectives":
                idx += [catalog.index_of(alg.projective(v)) for v in range(alg.n_vertices)]
            elif sel.kind == "injectives":
                idx += [catalog.index_of(alg.injective(v)) for v in range(alg.n_vertices)]
            elif sel.kind == "all":
                idx += range(len(catalog))
            elif sel.kind == "name":
                if sel.value not in catalog.names:
                    raise ParseError(f"catalog has no object named {sel.value}", sel.line)
                idx.append(catalog.names.index(sel.value))
            else:
                if len(sel.value) != alg.n_vertices:
                    raise ParseError(f"dimension vector {sel.value} has the wrong length", sel.line)
                hits = [i for i, M in enumerate(catalog) if M.dims == sel.value]
                if len(hits) < sel.index:
                    raise ParseError(f"catalog has no object number {sel.index} with dimension vector "
                                     f"{sel.value}", sel.line)
                idx.append(hits[sel.index - 1])
        return AddSubcategory(catalog, idx, name)

    def ambient(self, catalog):
        """The ambient d-exact category named by ``ambient`` in ``[config]``."""
        from .dexact import DClusterTilting, DTorsionClass, ModuleCategory
        kind, _, arg = str(self.config.get("ambient", "module")).partition(" ")
        arg = arg.strip()
        if kind == "module":
            return ModuleCategory(catalog)
        if kind == "cluster-tilting":
            return DClusterTilting(self.subcategory(arg, catalog), self.d)
        return DTorsionClass(self.subcategory(arg, catalog), ModuleCategory(catalog))


def _strip(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def parse_relation(text: str, quiver: Quiver, line: int | None = None, offset: int = 0) -> Relation:
    """Parse ``coeff*path ± ...`` (an optional ``= 0`` is accepted)."""
    body = text
    if "=" in text:
        body, rhs = text.split("=", 1)
        if rhs.strip() != "0":
            raise ParseError("relations must have right-hand side 0", line, offset + len(body) + 2)
    terms = []
    pos = 0
    n = len(body)

    def skip():
        nonlocal pos
        while pos < n and body[pos].isspace():
            pos += 1

    skip()
    sign = 1
    if pos < n and body[pos] in "+-":
        sign = -1 if body[pos] == "-" else 1
        pos += 1
    while True:
        skip()
        col = offset + pos + 1
        coeff = Fraction(1)
        m = _COEFF.match(body, pos)
        if m:
            coeff = Fraction(m.group(1))
            pos = m.end()
            skip()
        names = []
        while True:
            m = _NAME.match(body, pos)
            if not m:
                raise ParseError("expected an arrow name", line, offset + pos + 1)
            if m.group(0) not in quiver.arrow_index:
                raise ParseError(f"unknown arrow {m.group(0)!r}", line, offset + pos + 1)
            names.append(m.group(0))
            pos = m.end()
            skip()
            if pos < n and body[pos] == "*":
                pos += 1
                skip()
                continue
            break
        path = tuple(reversed(names))
        if not quiver.is_path(tuple(quiver.arrow_index[a] for a in path)):
            raise ParseError(f"{'*'.join(names)} is not a path", line, col)
        terms.append((sign * coeff, path))
        if pos >= n:
            break
        if body[pos] not in "+-":
            raise ParseError(f"unexpected character {body[pos]!r}", line, offset + pos + 1)
        sign = -1 if body[pos] == "-" else 1
        pos += 1
    rel = Relation(terms)
    try:
        rel.resolve(quiver)
    except (ValueError, KeyError) as e:
        raise ParseError(str(e), line, offset + 1) from e
    return rel


def _parse_ints(text: str, line: int, col: int) -> Tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ParseError(f"bad dimension vector ({text})", line, col) from None


def loads(text: str, source: str = "<string>") -> AlgFile:
    section = None
    sub_name = None
    n_vertices = None
    arrows = []
    rel_lines = []
    field_spec = None
    subcats: Dict[str, List[Selector]] = {}
    config: Dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        s = line.strip()
        if s.startswith("["):
            m = re.fullmatch(r"\[\s*([a-z]+)(?:\s+([A-Za-z0-9_']+))?\s*\]", s)
            if not m or m.group(1) not in SECTIONS:
                raise ParseError(f"unknown section {s}", lineno, indent + 1)
            section = m.group(1)
            if section == "subcat":
                if not m.group(2):
                    raise ParseError("subcat section needs a name", lineno, indent + 1)
                sub_name = m.group(2)
                if sub_name in subcats:
                    raise ParseError(f"subcategory {sub_name} defined twice", lineno, indent + 1)
                subcats[sub_name] = []
            elif m.group(2):
                raise ParseError(f"section {section} takes no name", lineno, indent + 1)
            continue
        col = indent + 1
        if section is None:
            raise ParseError("content before the first section", lineno, col)
        if section == "quiver":
            if s.startswith("vertices"):
                parts = s.split()
                if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
                    raise ParseError("expected 'vertices N' with N >= 1", lineno, col)
                n_vertices = int(parts[1])
                continue
            m = _ARROW.match(s)
            if not m:
                raise ParseError("expected 'arrow name: i -> j'", lineno, col)
            if n_vertices is None:
                raise ParseError("arrow before 'vertices'", lineno, col)
            src, tgt = int(m.group(2)), int(m.group(3))
            for v, c in ((src, m.start(2)), (tgt, m.start(3))):
                if not 1 <= v <= n_vertices:
                    raise ParseError(f"vertex {v} out of range 1..{n_vertices}", lineno, indent + c + 1)
            if any(a[0] == m.group(1) for a in arrows):
                raise ParseError(f"arrow {m.group(1)} defined twice", lineno, col)
            arrows.append((m.group(1), src - 1, tgt - 1))
        elif section == "relations":
            rel_lines.append((lineno, indent, s))
        elif section == "field":
            parts = s.split()
            if parts == ["rational"]:
                field_spec = ("rational", 0)
            elif len(parts) == 2 and parts[0] == "prime" and parts[1].isdigit():
                p = int(parts[1])
                try:
                    GF(p)
                except ValueError as e:
                    raise ParseError(str(e), lineno, col + len("prime ")) from None
                field_spec = ("prime", p)
            else:
                raise ParseError("expected 'rational' or 'prime P'", lineno, col)
        elif section == "subcat":
            if s in ("projectives", "injectives", "all"):
                subcats[sub_name].append(Selector(s, line=lineno))
            elif s.startswith("name"):
                parts = s.split()
                if len(parts) != 2:
                    raise ParseError("expected 'name OBJECT'", lineno, col)
                subcats[sub_name].append(Selector("name", parts[1], line=lineno))
            else:
                m = _DIM.match(s)
                if not m:
                    raise ParseError("expected a selector: projectives, injectives, all, name X or dim (...)",
                                     lineno, col)
                dims = _parse_ints(m.group(1), lineno, col + m.start(1))
                k = int(m.group(2)) if m.group(2) else 1
                if k < 1:
                    raise ParseError("index counts from 1", lineno, col + m.start(2))
                subcats[sub_name].append(Selector("dim", dims, k, lineno))
        else:
            key, eq, val = s.partition("=")
            key, val = key.strip(), val.strip()
            if not eq or key not in CONFIG_KEYS:
                raise ParseError(f"expected 'key = value' with key in {', '.join(CONFIG_KEYS)}", lineno, col)
            if CONFIG_KEYS[key] is int:
                try:
                    config[key] = int(val)
                except ValueError:
                    raise ParseError(f"{key} must be an integer", lineno, col + s.index("=") + 1) from None
            else:
                config[key] = val
    if n_vertices is None:
        raise ParseError("missing [quiver] section with 'vertices N'", None)
    quiver = Quiver(n_vertices, arrows)
    relations = [parse_relation(s, quiver, ln, ind) for ln, ind, s in rel_lines]
    d = config.get("d", 1)
    if d < 1:
        raise ParseError("d must be at least 1")
    kind, _, arg = str(config.get("ambient", "module")).partition(" ")
    if kind not in AMBIENTS:
        raise ParseError(f"ambient must be one of {', '.join(AMBIENTS)}")
    if kind != "module" and arg.strip() not in subcats:
        raise ParseError(f"ambient {kind} needs a defined subcategory name")
    return AlgFile(quiver, relations, field_spec or ("rational", 0), subcats, config, source)


def load(path) -> AlgFile:
    p = Path(path)
    return loads(p.read_text(encoding="utf-8"), str(p))


def bundled(name: str) -> Path:
    """Path of a bundled example file such as ``"ka2.alg"``."""
    return Path(__file__).parent / "data" / name
