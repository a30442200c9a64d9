"""Command-line front end: solve / maximize / reduce / detect / suppress /
generate / verify over the library.

Exit codes: 0 success (or YES), 1 NO or a failed check, 2 usage or input
errors. With --json the only stdout output is one JSON document.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import FORMAT_VERSION, __version__
from .generators import FamilySpec, GeneratorError, family_names, generate
from .graphs import (
    Graph,
    GraphError,
    ParseError,
    n_ge3,
    parse_graph,
    suppress,
    to_dot,
    write_graph,
)
from .patterns import (
    check_invariant,
    find_2blossoms,
    find_2necklaces,
    find_2terminal,
    find_cubic_diamonds,
)
from .reductions import ReductionStep, fpt_preprocess, reduce_to_irreducible
from .potential import greedy_spanning_tree, heuristic_bound
from .solver import CapacityError, exact_max_leaves, fpt_decide

EXIT_OK = 0
EXIT_NO = 1
EXIT_ERROR = 2


def _read_graph(path: str) -> Graph:
    if path == "-":
        return parse_graph(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def _emit_tree(edges) -> str:
    lines = [f"p {len({v for e in edges for v in e})} {len(edges)}"]
    for u, v in sorted(edges):
        lines.append(f"e {u} {v}")
    return "\n".join(lines)


def cmd_solve(args) -> int:
    g = _read_graph(args.graph)
    verdict = fpt_decide(g, args.k, want_witness=args.witness, workers=args.workers)
    payload = {"answer": verdict.answer, "k": args.k}
    if args.stats:
        payload["stats"] = {
            "subsets_enumerated": verdict.stats.subsets_enumerated,
            "reductions_applied": verdict.stats.reductions_applied,
            "k_after_preprocess": verdict.stats.k_after_preprocess,
        }
    if args.witness and verdict.witness is not None:
        payload["witness"] = [list(e) for e in verdict.witness]
    if args.json:
        print(json.dumps(payload))
    else:
        print(verdict.answer)
        if args.stats:
            print(json.dumps(payload["stats"]))
        if args.witness and verdict.witness is not None:
            print(_emit_tree(verdict.witness))
    return EXIT_OK if verdict.is_yes else EXIT_NO


def cmd_maximize(args) -> int:
    g = _read_graph(args.graph)
    if args.exact:
        best, tree = exact_max_leaves(g, cap=args.cap)
        if args.json:
            print(json.dumps({"leaves": best, "tree": [list(e) for e in tree]}))
        else:
            print(best)
            print(_emit_tree(tree))
        return EXIT_OK
    edges, report = greedy_spanning_tree(g)
    bound = heuristic_bound(g)
    met = Fraction(report.leaves) >= bound
    payload = {
        "leaves": report.leaves,
        "bound_num": bound.numerator,
        "bound_den": bound.denominator,
        "met": bool(met),
        "tree": [list(e) for e in sorted(edges)],
    }
    if args.json:
        print(json.dumps(payload))
    else:
        print(f"leaves {report.leaves} bound {bound} met {met}")
        print(_emit_tree(sorted(edges)))
    return EXIT_OK


def cmd_reduce(args) -> int:
    g = _read_graph(args.graph)
    if args.replay:
        with open(args.replay, "r", encoding="utf-8") as fh:
            steps = [ReductionStep.from_json_dict(json.loads(line)) for line in fh if line.strip()]
        cur = g
        for step in steps:
            cur = step.replay(cur)
        sys.stdout.write(write_graph(cur, comment="replayed"))
        return EXIT_OK
    if args.fpt:
        reduced, k_left, steps = fpt_preprocess(g, args.k if args.k is not None else g.n)
    else:
        reduced, steps = reduce_to_irreducible(g)
        k_left = None
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            for step in steps:
                fh.write(json.dumps(step.to_json_dict()) + "\n")
    comment = f"{len(steps)} reductions applied" + (f", k now {k_left}" if k_left is not None else "")
    out = write_graph(reduced, comment=comment)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


_PATTERNS = {
    "cubic-diamond": find_cubic_diamonds,
    "2necklace": find_2necklaces,
    "2blossom": find_2blossoms,
    "2terminal-diamond": lambda g: find_2terminal(g, "2-terminal-diamond"),
    "2terminal-blossom": lambda g: find_2terminal(g, "2-terminal-blossom"),
}


def cmd_detect(args) -> int:
    g = _read_graph(args.graph)
    if args.pattern == "invariant":
        report = check_invariant(g)
        if args.json:
            witness = None
            if report.witness is not None:
                witness = (
                    report.witness.to_json_dict()
                    if hasattr(report.witness, "to_json_dict")
                    else sorted(report.witness)
                )
            print(json.dumps({"ok": report.ok, "violated": report.violated_clause, "witness": witness}))
        else:
            print("ok" if report.ok else f"violated: {report.violated_clause}")
        return EXIT_OK if report.ok else EXIT_NO
    matches = _PATTERNS[args.pattern](g)
    if args.json:
        print(json.dumps([m.to_json_dict() for m in matches]))
    else:
        for m in matches:
            print(f"{m.kind} vertices={list(m.vertices)} terminals={list(m.terminals)}")
        print(f"{len(matches)} match(es)")
    return EXIT_OK


def cmd_suppress(args) -> int:
    g = _read_graph(args.graph)
    s = suppress(g)
    if args.json:
        print(json.dumps(s.to_json_dict()))
    else:
        if s.is_empty():
            print("empty")
        for e in s.sedges:
            tag = "loop" if e.is_loop else "edge"
            print(f"{tag} {e.u} {e.v} internal={e.internal_count} cost={e.cost}")
    return EXIT_OK


def cmd_generate(args) -> int:
    spec = FamilySpec(
        family=args.family,
        k=args.param,
        n=args.n,
        min_degree_target=args.min_degree,
        seed=args.seed,
    )
    g = generate(spec)
    text = write_graph(g, comment=f"family {args.family}")
    if args.dot:
        text = to_dot(g)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .generators import flowerbed, g7, q3, random_invariant_graph

    checks = args.checks or ["g7", "q3", "flowerbed", "theorem1-sample"]
    failures = 0

    def report(name: str, ok: bool, detail: str = ""):
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'} {name}{(' ' + detail) if detail else ''}")
        if not ok:
            failures += 1

    for name in checks:
        if name == "g7":
            graph = g7()
            best, _ = exact_max_leaves(graph)
            ok = best == 4
            deg4 = sorted(v for v in graph.vertices if graph.degree(v) == 4)
            for u in deg4:
                for v in deg4:
                    if u < v and graph.has_edge(u, v):
                        h = graph.copy()
                        h.remove_edge(u, v)
                        ok = ok and bool(find_2blossoms(h))
            report("g7", ok, f"optimum={best}")
        elif name == "q3":
            best, _ = exact_max_leaves(q3())
            report("q3", best == 4, f"optimum={best}")
        elif name == "flowerbed":
            r2 = flowerbed(2)
            yes = fpt_decide(r2, 10).is_yes
            no = not fpt_decide(r2, 11).is_yes
            report("flowerbed", yes and no, f"k=10:{'YES' if yes else 'NO'} k=11:{'NO' if no else 'YES'}")
        elif name == "theorem1-sample":
            bad = 0
            for i in range(args.samples):
                target = 3 if i % 2 == 0 else 2
                n = 6 + (i % 9)
                try:
                    graph = random_invariant_graph(n, target, seed=1000 + i)
                except GeneratorError:
                    continue
                best, _ = exact_max_leaves(graph)
                extra = Fraction(4, 3) if graph.min_degree() >= 3 else Fraction(2)
                if Fraction(best) < Fraction(n_ge3(graph), 3) + extra:
                    bad += 1
            report("theorem1-sample", bad == 0, f"violations={bad}/{args.samples}")
        else:
            report(name, False, "unknown check")
    return EXIT_OK if failures == 0 else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="maxleaf", description=__doc__)
    p.add_argument("--version", action="version", version=f"maxleaf {__version__} (format {FORMAT_VERSION})")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="decide whether a spanning tree with k leaves exists")
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("graph", help="input file or - for stdin")
    sp.add_argument("--witness", action="store_true")
    sp.add_argument("--stats", action="store_true")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_solve)

    mp = sub.add_parser("maximize", help="build a many-leaf spanning tree")
    mode = mp.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--heuristic", action="store_true")
    mp.add_argument("--cap", type=int, default=30, help="exact-solver size cap")
    mp.add_argument("graph")
    mp.add_argument("--json", action="store_true")
    mp.set_defaults(func=cmd_maximize)

    rp = sub.add_parser("reduce", help="apply the reduction rules")
    rp.add_argument("graph")
    rp.add_argument("--fpt", action="store_true", help="apply the two-terminal rules instead")
    rp.add_argument("-k", type=int, default=None)
    rp.add_argument("--trace", help="write the applied steps as JSON lines")
    rp.add_argument("--replay", help="replay a previously written trace")
    rp.add_argument("-o", "--output")
    rp.set_defaults(func=cmd_reduce)

    dp = sub.add_parser("detect", help="find named structures")
    dp.add_argument("--pattern", choices=sorted(_PATTERNS) + ["invariant"], required=True)
    dp.add_argument("graph")
    dp.add_argument("--json", action="store_true")
    dp.set_defaults(func=cmd_detect)

    up = sub.add_parser("suppress", help="collapse degree-2 runs")
    up.add_argument("graph")
    up.add_argument("--json", action="store_true")
    up.set_defaults(func=cmd_suppress)

    gp = sub.add_parser("generate", help="build a named family")
    gp.add_argument("--family", choices=family_names(), required=True)
    gp.add_argument("--param", type=int, default=None, help="k for necklaces/rings, i for flowerbeds")
    gp.add_argument("--n", type=int, default=None, help="size for random graphs")
    gp.add_argument("--min-degree", type=int, default=3)
    gp.add_argument("--seed", type=int, default=0)
    gp.add_argument("--dot", action="store_true", help="emit DOT instead of the text format")
    gp.add_argument("-o", "--output")
    gp.set_defaults(func=cmd_generate)

    vp = sub.add_parser("verify", help="run the named acceptance checks")
    vp.add_argument("checks", nargs="*", help="subset of: g7 q3 flowerbed theorem1-sample")
    vp.add_argument("--samples", type=int, default=20)
    vp.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help/--version
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ParseError, GeneratorError, CapacityError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
