"""Command-line entry point.

Exit codes: 0 decided/produced, 1 negative decision, 2 usage or parse error,
3 budget exceeded. Payloads go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import constructions as cons
from .core import (
    BudgetExceeded,
    MixedGraphError,
    Signature,
    parse,
    parse_simple,
    serialize,
    serialize_simple,
)
from .experiments import DEFAULT_ENUM_BUDGET, clique_fraction, enumerate_exact, union_bound_check
from .homsearch import DEFAULT_MAX_CHROMATIC_BUDGET, chromatic_number, find_homomorphism, max_chromatic
from .rigidity import absolute_clique_number, is_clique, relative_clique_number
from .signed import (
    DEFAULT_NAE_BUDGET,
    DEFAULT_SIGNED_EDGE_BUDGET,
    build_gf,
    build_hf,
    is_signed_clique,
    nae_solve,
    parse_coloring,
    parse_nae,
    serialize_coloring,
    signed_clique_colorable,
)

OK, NEGATIVE, USAGE, BUDGET = 0, 1, 2, 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _sig(args) -> Signature:
    return Signature(args.m, args.n)


def cmd_check_clique(args, out):
    w = is_clique(parse(_read(args.file)))
    print(w, file=out)
    return OK if w else NEGATIVE


def cmd_relative_clique(args, out):
    size, vs = relative_clique_number(parse(_read(args.file)))
    print(json.dumps({"size": size, "vertices": list(vs)}), file=out)
    return OK


def cmd_absolute_clique(args, out):
    size, vs = absolute_clique_number(parse(_read(args.file)))
    print(json.dumps({"size": size, "vertices": list(vs)}), file=out)
    return OK


def cmd_chromatic(args, out):
    k, part = chromatic_number(parse(_read(args.file)))
    print(k, file=out)
    print(f"partition {part}".rstrip(), file=out)
    return OK


def cmd_hom(args, out):
    f = find_homomorphism(parse(_read(args.g)), parse(_read(args.h)))
    if f is None:
        print("no-hom", file=out)
        return NEGATIVE
    print(" ".join(["hom", *map(str, f)]), file=out)
    return OK


def cmd_max_chromatic(args, out):
    res = max_chromatic(parse_simple(_read(args.file)), _sig(args), args.budget, args.jobs)
    print(res.value, file=out)
    print(f"partition {res.partition}".rstrip(), file=out)
    out.write(serialize(res.graph))
    return OK


def cmd_construct(args, out):
    kind = args.family
    if kind == "outerplanar-clique":
        fam = cons.outerplanar_clique_family(_sig(args))
    elif kind == "planar-clique":
        fam = cons.planar_clique_family(_sig(args))
    elif kind == "join":
        fam = cons.join_family(parse_simple(_read(args.a)), parse_simple(_read(args.b)))
    elif kind == "iterate":
        fam = cons.iterated_join_family(parse_simple(_read(args.h)), args.k)
    elif kind == "path":
        g = cons.path(args.size)
        fam = cons.Family(g, cons.FamilyDescriptor("path", None, {}, tuple(f"p{i}" for i in range(len(g)))))
    else:
        g = cons.cycle(args.size)
        fam = cons.Family(g, cons.FamilyDescriptor("cycle", None, {}, tuple(f"c{i}" for i in range(len(g)))))
    g = fam.graph
    if isinstance(g, cons.SimpleGraph):
        out.write(serialize_simple(g, fam.descriptor.roles))
    else:
        out.write(serialize(g, fam.descriptor.roles))
    return OK


def cmd_reduce_nae(args, out):
    F = parse_nae(_read(args.file))
    art = build_hf(F) if args.hf_only else build_gf(F, args.doubled_connectors)
    graph = art.hf if args.hf_only else art.gf
    text = serialize_simple(graph, art.roles)
    text += "".join(f"# rep {u} {v}\n" for u, v in art.representative_pairs)
    if args.out == "-":
        out.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        summary = {
            "vertices": graph.vertex_count,
            "edges": len(graph.edges),
            "hf_vertices": art.hf.vertex_count,
            "representative_pairs": len(art.representative_pairs),
        }
        print(json.dumps(summary), file=out)
    return OK


def cmd_nae_solve(args, out):
    a = nae_solve(parse_nae(_read(args.file)), args.budget)
    if a is None:
        print("unsat", file=out)
        return NEGATIVE
    print(" ".join(["sat", *("1" if x else "0" for x in a)]), file=out)
    return OK


def cmd_signed_colorable(args, out):
    col = signed_clique_colorable(parse_simple(_read(args.file)), args.budget, args.strict_all_pairs)
    if col is None:
        print("none", file=out)
        return NEGATIVE
    out.write(serialize_coloring(col))
    return OK


def cmd_verify_signed(args, out):
    G = parse_simple(_read(args.file))
    res = is_signed_clique(G, parse_coloring(_read(args.coloring)), args.strict_all_pairs)
    if res:
        print("signed-clique", file=out)
        return OK
    print("failing-pair {} {}".format(*res.failing_pair), file=out)
    return NEGATIVE


def cmd_experiment(args, out):
    sig = _sig(args)
    if args.kind == "random":
        print(clique_fraction(sig, args.k, args.trials, args.seed, args.jobs).to_line(), file=out)
    elif args.kind == "enumerate":
        total, cliques = enumerate_exact(sig, args.k, args.budget)
        rec = {"m": sig.m, "n": sig.n, "k": args.k, "total": total, "cliques": cliques,
               "fraction": cliques / total}
        print(json.dumps(rec), file=out)
    else:
        print(union_bound_check(sig, args.k, args.budget).to_line(), file=out)
    return OK


def _add_sig(p, required=True):
    p.add_argument("--m", type=int, required=required, help="number of arc colors")
    p.add_argument("--n", type=int, required=required, help="number of edge colors")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mncliques", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    for name, fn, helptext in [
        ("check-clique", cmd_check_clique, "decide whether a mixed graph is an (m,n)-clique"),
        ("relative-clique", cmd_relative_clique, "exact relative clique number"),
        ("absolute-clique", cmd_absolute_clique, "exact absolute clique number"),
        ("chromatic", cmd_chromatic, "exact (m,n)-chromatic number with a partition"),
    ]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file")
        p.set_defaults(func=fn)

    p = sub.add_parser("hom", help="find a homomorphism G -> H")
    p.add_argument("g")
    p.add_argument("h")
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("max-chromatic", help="maximum chromatic number over all colorings of a simple graph")
    p.add_argument("file")
    _add_sig(p)
    p.add_argument("--budget", type=int, default=DEFAULT_MAX_CHROMATIC_BUDGET)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_max_chromatic)

    p = sub.add_parser("construct", help="generate a construction")
    fam = p.add_subparsers(dest="family", required=True, metavar="family")
    for name in ("outerplanar-clique", "planar-clique"):
        q = fam.add_parser(name)
        _add_sig(q)
    q = fam.add_parser("join")
    q.add_argument("a")
    q.add_argument("b")
    q = fam.add_parser("iterate")
    q.add_argument("h")
    q.add_argument("--k", type=int, required=True)
    for name in ("path", "cycle"):
        q = fam.add_parser(name)
        q.add_argument("size", type=int)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("reduce-nae", help="build G_F (or H_F) from a monotone NAE formula")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.add_argument("--hf-only", action="store_true")
    p.add_argument("--doubled-connectors", action="store_true",
                   help="two connector vertices per non-representative pair")
    p.set_defaults(func=cmd_reduce_nae)

    p = sub.add_parser("nae-solve", help="solve a monotone NAE-3SAT formula by enumeration")
    p.add_argument("file")
    p.add_argument("--budget", type=int, default=DEFAULT_NAE_BUDGET)
    p.set_defaults(func=cmd_nae_solve)

    p = sub.add_parser("signed-colorable", help="find a 2-edge-coloring making a signed clique")
    p.add_argument("file")
    p.add_argument("--strict-all-pairs", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_SIGNED_EDGE_BUDGET)
    p.set_defaults(func=cmd_signed_colorable)

    p = sub.add_parser("verify-signed", help="check a 2-edge-coloring is a signed clique")
    p.add_argument("file")
    p.add_argument("coloring")
    p.add_argument("--strict-all-pairs", action="store_true")
    p.set_defaults(func=cmd_verify_signed)

    p = sub.add_parser("experiment", help="random-model experiments")
    kinds = p.add_subparsers(dest="kind", required=True, metavar="kind")
    q = kinds.add_parser("random")
    _add_sig(q)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--trials", type=int, required=True)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--jobs", type=int, default=1)
    for name in ("enumerate", "union-bound"):
        q = kinds.add_parser(name)
        _add_sig(q)
        q.add_argument("--k", type=int, required=True)
        q.add_argument("--budget", type=int, default=DEFAULT_ENUM_BUDGET)
    p.set_defaults(func=cmd_experiment)
    return parser


def dispatch(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args, out)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=err)
        return BUDGET
    except (MixedGraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return USAGE


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
