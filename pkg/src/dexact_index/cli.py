"""``dexact-index`` command-line driver.

Exit codes: 0 pass, 1 verification failure, 2 parse error, 3 infinite
dimensional algebra, 4 resolution failure, 5 inconclusive search.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List

from .algfile import AlgFile, load
from .approx import check_gen
from .errors import (DecompositionInconclusive, InfiniteDimensional, ParseError, ResolutionTooLong,
                     SearchExhausted)
from .kgroups import (build_relative_k0, describe_object, horseshoe_report, index_dct, prop13_report,
                      schanuel_report, theorem_a_report, verify_theorem_1_1)
from .repmod import hom_dim

EXIT_PASS, EXIT_FAIL, EXIT_PARSE, EXIT_INFINITE, EXIT_RESOLUTION, EXIT_INCONCLUSIVE = range(6)
CHECKS = ("theorem-a", "prop13", "schanuel", "horseshoe", "thm11", "gen")


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("DEXACT_THREADS", "1")))
    except ValueError:
        return 1


def _emit(args, doc: dict, human: List[str]):
    if args.format == "structured":
        print(json.dumps(doc, indent=2, ensure_ascii=False))
    else:
        print("\n".join(human))


def _format_vector(vec, names) -> str:
    """Signed sum with positive terms first, e.g. ``[P1] - [S2]``."""
    pos = [(c, n) for c, n in zip(vec, names) if c > 0]
    neg = [(c, n) for c, n in zip(vec, names) if c < 0]
    out = ""
    for c, n in pos + neg:
        t = f"{abs(c) if abs(c) != 1 else ''}[{n}]"
        if not out:
            out = t if c > 0 else "-" + t
        else:
            out += (" + " if c > 0 else " - ") + t
    return out or "0"


def _pick_subcat(cfg: AlgFile, requested, *preferred) -> str:
    if requested:
        return requested
    for name in preferred:
        if name in cfg.subcats:
            return name
    if cfg.subcats:
        return next(iter(cfg.subcats))
    raise ParseError("no [subcat] section to use; pass --subcat")


def _find_object(text: str, catalog):
    s = text.strip()
    if s in catalog.names:
        return catalog[s]
    body = s.strip("()")
    try:
        dims = tuple(int(x) for x in body.split(","))
    except ValueError:
        raise ParseError(f"cannot read object {text!r}; give a name or a dimension vector") from None
    hits = [M for M in catalog if M.dims == dims]
    if not hits:
        raise ParseError(f"catalog has no object with dimension vector {dims}")
    if len(hits) > 1:
        raise ParseError(f"dimension vector {dims} is ambiguous: {', '.join(M.name for M in hits)}")
    return hits[0]


def cmd_catalog(args, cfg: AlgFile) -> int:
    cat = cfg.catalog()
    names = cat.names
    table = [[hom_dim(M, N) for N in cat] for M in cat]
    doc = {"check": "catalog",
           "objects": [{"name": M.name, "dims": list(M.dims)} for M in cat],
           "hom_dims": table}
    w = max(len(n) for n in names) + 1
    human = [f"{len(cat)} indecomposables"]
    human += [f"  {i:2d} {M.name:<{w}} dims {M.dims}" for i, M in enumerate(cat)]
    human.append("dim Hom(row, column)")
    human.append(" " * w + "".join(f"{n:>{w}}" for n in names))
    human += [f"{n:<{w}}" + "".join(f"{x:>{w}}" for x in row) for n, row in zip(names, table)]
    _emit(args, doc, human)
    return EXIT_PASS


def cmd_index(args, cfg: AlgFile) -> int:
    from .dexact import t_resolution
    cat = cfg.catalog()
    name = _pick_subcat(cfg, args.subcat, "T", "proj")
    T = cfg.subcategory(name, cat)
    if not args.object:
        raise ParseError("index needs --object")
    C = _find_object(args.object, cat)
    d = cfg.d
    try:
        res = t_resolution(C, T, d)
    except ResolutionTooLong as e:
        msg = f"{C.name} has no {T.label}-resolution of length <= {d}: {e}"
        _emit(args, {"check": "index", "object": C.name, "error": msg}, [msg])
        return EXIT_RESOLUTION
    vec = index_dct(C, T, d)
    terms = [describe_object(t, cat) for t in res.terms]
    doc = {"check": "index", "object": C.name, "subcategory": T.label, "d": d,
           "resolution": terms, "index": dict(zip(T.names, vec)),
           "formatted": _format_vector(vec, T.names)}
    human = [f"{T.label}-resolution of {C.name}: 0 -> " + " -> ".join(reversed(terms)) + f" -> {C.name} -> 0",
             f"index of {C.name} w.r.t. {T.label}: {_format_vector(vec, T.names)}"]
    if args.relative:
        amb = cfg.ambient(cat)
        K = build_relative_k0(T, amb)
        cls = K.class_in(C)
        doc["relative"] = {"group": K.describe(), "coset": list(cls.coset), "class": repr(cls),
                           "caveat": K.caveat}
        human.append(f"class in K0 relative to {T.label}: {cls!r} in {K.describe()} ({K.caveat})")
    _emit(args, doc, human)
    return EXIT_PASS


def _report_lines(rep) -> List[str]:
    lines = [f"{rep.check}: {'PASS' if rep.passed else 'FAIL'} ({len(rep.instances)} instances)"]
    for k, v in rep.info.items():
        lines.append(f"  {k}: {v}")
    for inst in rep.instances:
        mark = "ok " if inst.equal else "BAD"
        err = {k: v for k, v in inst.error_term_dims.items() if v}
        extra = f"  error term {err}" if err else ""
        lines.append(f"  {mark} {inst.sequence}: {inst.lhs} vs {inst.rhs}{extra}")
        lines += [f"      {n}" for n in inst.notes]
    for msg in rep.inconclusive:
        lines.append(f"  inconclusive: {msg}")
    lines += [f"  caveat: {c}" for c in rep.caveats]
    return lines


def cmd_verify(args, cfg: AlgFile) -> int:
    cat = cfg.catalog()
    amb = cfg.ambient(cat)
    workers = _threads()
    which = args.check
    if which == "thm11":
        T = cfg.subcategory(_pick_subcat(cfg, args.subcat, "T", "proj"), cat)
        rep = verify_theorem_1_1(T, cfg.d, amb)
        names = T.names
        human = [f"thm11: {'PASS' if rep.passed else 'FAIL'}; K0 relative to {T.label} is {rep.group}",
                 *[f"  index({k}) = {_format_vector(v, names)}" for k, v in rep.indices.items()],
                 *[f"  relation not killed: {r}" for r in rep.relation_failures],
                 *[f"  member without basis index: {r}" for r in rep.basis_failures],
                 *[f"  no resolution: {r}" for r in rep.missing_resolutions],
                 "  " + rep.certificate.replace("\n", "\n  "),
                 f"  caveat: {rep.caveat}"]
        _emit(args, rep.to_dict(), human)
        return EXIT_PASS if rep.passed else EXIT_FAIL
    if which == "gen":
        X = cfg.subcategory(_pick_subcat(cfg, args.subcat, "X", "proj"), cat)
        g = check_gen(X, amb)
        doc = {"check": "gen",
               "instances": [{"object": r.object, "approximation_is_deflation": r.approximation_is_deflation,
                              "some_deflation_exists": r.some_deflation_exists} for r in g.rows],
               "caveats": [],
               "summary": {"passed": g.passed, "failing": g.failing, "counterexamples": g.counterexamples}}
        _emit(args, doc, str(g).splitlines())
        return EXIT_PASS if g.passed else EXIT_FAIL
    max_terms = int(cfg.config.get("max_terms", 2))
    if which in ("theorem-a", "prop13"):
        X = cfg.subcategory(_pick_subcat(cfg, args.subcat, "X", "proj"), cat)
        fn = theorem_a_report if which == "theorem-a" else prop13_report
        rep = fn(X, amb, max_terms=max_terms, workers=workers)
    elif which == "schanuel":
        rep = schanuel_report(amb, int(cfg.config.get("schanuel_pairs", 40)), args.seed, workers=workers)
    else:
        rep = horseshoe_report(amb, workers=workers)
    _emit(args, rep.to_dict(), _report_lines(rep))
    if rep.inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS if rep.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help=".alg file describing the algebra")
    common.add_argument("--subcat", help="name of a [subcat] section")
    common.add_argument("--format", choices=("human", "structured"), default="human")
    common.add_argument("--seed", type=int, default=None)
    p = argparse.ArgumentParser(prog="dexact-index",
                                description="Indices in relative Grothendieck groups of d-exact categories.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("catalog", parents=[common], help="list indecomposables and hom dimensions")
    pi = sub.add_parser("index", parents=[common], help="T-resolution and index of one object")
    pi.add_argument("--object", help="catalog name or dimension vector such as (0,1)")
    pi.add_argument("--relative", action="store_true", help="also print the class in the relative K0")
    pv = sub.add_parser("verify", parents=[common], help="run a verification batch")
    pv.add_argument("check", choices=CHECKS)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load(args.config)
        if args.seed is None:
            args.seed = int(cfg.config.get("seed", 0))
        cmd = {"catalog": cmd_catalog, "index": cmd_index, "verify": cmd_verify}[args.command]
        return cmd(args, cfg)
    except ParseError as e:
        print(f"{args.config}: {e}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as e:
        print(f"{args.config}: {e}", file=sys.stderr)
        return EXIT_PARSE
    except InfiniteDimensional as e:
        print(f"infinite dimensional: {e}", file=sys.stderr)
        return EXIT_INFINITE
    except ResolutionTooLong as e:
        print(f"resolution failure: {e}", file=sys.stderr)
        return EXIT_RESOLUTION
    except (SearchExhausted, DecompositionInconclusive) as e:
        print(f"inconclusive: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
