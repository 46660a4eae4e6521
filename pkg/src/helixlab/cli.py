"""Command-line front end.

Exit codes: 0 for verified/true/found outcomes, 1 for refuted/absent ones,
2 when a bounded search runs out of budget, 64 for usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .decomposition import (
    Labeling,
    find_full_directed_labeling,
    hereditary_scan,
    is_cyclically_indecomposable,
    verify_decomposition,
)
from .digraph import (
    CycleWitness,
    DiGraph,
    GraphError,
    compose_maps,
    find_weak_embedding,
    girth,
    identity_map,
)
from .formats import (
    FormatError,
    parse_graph,
    parse_labeling,
    serialize_graph,
    serialize_labeling,
    to_dot,
)
from .generators import NKParams, circle_sample, figure4_graph, make_linear_order, make_nk_cycle
from .helix import (
    BudgetExceeded,
    build_helix_cover,
    classify_cover,
    cycle_removal_step,
    lift_cycle_exists,
    raise_girth,
)
from .hereditary import (
    ForbiddenFamily,
    build_filtration,
    build_parallelogram,
    closure_violation_search,
    FiltrationStuck,
    in_class,
    min_ell2_search,
    parallelogram_verdict,
)
from .suite import run_verification_suite

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_BUDGET = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _read_graph(path: str) -> DiGraph:
    return parse_graph(Path(path).read_bytes())


def _read_labeling(path: str, graph: DiGraph) -> Labeling:
    return parse_labeling(Path(path).read_bytes(), graph)


def _write(path: str, data: bytes) -> None:
    Path(path).write_bytes(data)


def _family(paths: list[str]) -> ForbiddenFamily:
    return ForbiddenFamily(tuple(_read_graph(p) for p in paths))


def _parse_cycle(text: str) -> CycleWitness:
    return CycleWitness(tuple(int(x) for x in text.split(",")))


def _cmd_gen(args) -> int:
    if args.kind == "nk":
        g = make_nk_cycle(NKParams(args.N, args.K))
        lab = None
    elif args.kind == "linear":
        g = make_linear_order(args.M)
        lab = None
    elif args.kind == "circle":
        g = circle_sample(Fraction(args.r), args.N)
        lab = None
    else:  # figure4
        g, lab = figure4_graph()
    _write(args.output, serialize_graph(g))
    if args.labeling_out:
        if lab is None:
            print("this generator has no bundled labeling", file=sys.stderr)
            return EXIT_USAGE
        _write(args.labeling_out, serialize_labeling(lab))
    print(f"wrote {g.vertex_count} vertices, {g.edge_count} edges")
    return EXIT_OK


def _cmd_girth(args) -> int:
    found = girth(_read_graph(args.graph), args.max_len)
    if found is None:
        print("acyclic (no cycle within bound)")
        return EXIT_REFUTED
    length, witness = found
    print(f"{length} witness={','.join(map(str, witness.vertices))}")
    return EXIT_OK


def _cmd_embed(args) -> int:
    vm = find_weak_embedding(_read_graph(args.pattern), _read_graph(args.host))
    if vm is None:
        print("no weak embedding")
        return EXIT_REFUTED
    print("embedding " + " ".join(f"{v}->{w}" for v, w in enumerate(vm.assignment)))
    return EXIT_OK


def _cmd_check_decomp(args) -> int:
    g = _read_graph(args.graph)
    report = verify_decomposition(_read_labeling(args.labeling, g))
    for field in ("valid", "full", "directed", "interval", "anticlique"):
        print(f"{field}: {getattr(report, field)}")
    print(f"nonempty_parts: {report.nonempty_parts}")
    if report.violation:
        print(f"violation: {report.violation[0]} ({report.violation[1]})")
    return EXIT_OK if report.valid else EXIT_REFUTED


def _cmd_indecomposable(args) -> int:
    g = _read_graph(args.graph)
    if is_cyclically_indecomposable(g, args.n):
        print("indecomposable")
        return EXIT_OK
    lab = find_full_directed_labeling(g, args.n)
    print("decomposable " + ",".join(map(str, lab.assignment)))
    return EXIT_REFUTED


def _cmd_hereditary_scan(args) -> int:
    g = _read_graph(args.graph)
    witness = hereditary_scan(g, args.n, args.max_size, prune_to_cyclic=not args.no_prune)
    if witness is None:
        print("all-decomposable")
        return EXIT_OK
    print("witness " + ",".join(map(str, witness)))
    return EXIT_REFUTED


def _cmd_cover(args) -> int:
    g = _read_graph(args.graph)
    hc = build_helix_cover(_read_labeling(args.labeling, g), args.length)
    _write(args.output, serialize_graph(hc.cover))
    print(
        f"cover: {hc.cover.vertex_count} vertices, {hc.cover.edge_count} edges, "
        f"projection onto {g.vertex_count}"
    )
    return EXIT_OK


def _cmd_classify(args) -> int:
    g = _read_graph(args.graph)
    hc = build_helix_cover(_read_labeling(args.labeling, g), 1)
    print(classify_cover(hc))
    return EXIT_OK


def _cmd_lift(args) -> int:
    g = _read_graph(args.graph)
    hc = build_helix_cover(_read_labeling(args.labeling, g), args.length)
    witness = lift_cycle_exists(hc.projection, _parse_cycle(args.cycle))
    if witness is None:
        print("no lift")
        return EXIT_REFUTED
    print("lift " + ",".join(map(str, witness.vertices)))
    return EXIT_OK


def _cmd_cycle_removal(args) -> int:
    g = _read_graph(args.graph)
    family = _family(args.forbid)
    gamma = _parse_cycle(args.cycle)
    hc, composed, ell = cycle_removal_step(
        lambda h: in_class(h, family), identity_map(g), gamma, args.ell_max
    )
    if args.output:
        _write(args.output, serialize_graph(hc.cover))
    print(f"removed at length {ell}; cover has {hc.cover.vertex_count} vertices")
    return EXIT_OK


def _cmd_raise_girth(args) -> int:
    g = _read_graph(args.graph)
    out = raise_girth(
        _family(args.forbid), g, args.target, ell_max=args.ell_max, max_rounds=args.max_rounds
    )
    if args.output:
        _write(args.output, serialize_graph(out))
    found = girth(out)
    print(f"girth now {'infinite' if found is None else found[0]} on {out.vertex_count} vertices")
    return EXIT_OK


def _cmd_filtration(args) -> int:
    g = _read_graph(args.graph)
    lab = _read_labeling(args.labeling, g)
    try:
        filt = build_filtration(lab, args.direction)
    except FiltrationStuck as exc:
        print(f"stuck: {exc}")
        return EXIT_REFUTED
    print(f"steps {filt.steps} pivots {','.join(map(str, filt.pivots))}")
    for i, s in enumerate(filt.sets):
        print(f"K{i}: {','.join(map(str, sorted(s)))}")
    return EXIT_OK


def _cmd_parallelogram(args) -> int:
    g = _read_graph(args.graph)
    lab = _read_labeling(args.labeling, g)
    para = build_parallelogram(lab, args.n_star, args.ell2, ga_formula=args.ga_formula)
    print(
        f"length {para.cover.length} wedge {para.ell1} band {para.ell2} "
        f"region {para.region.vertex_count} vertices"
    )
    if args.verdict:
        verdict = parallelogram_verdict(para, args.n_star)
        print("indecomposable" if verdict.indecomposable else "decomposable")
        return EXIT_OK if verdict.indecomposable else EXIT_REFUTED
    return EXIT_OK


def _cmd_min_ell2(args) -> int:
    g = _read_graph(args.graph)
    lab = _read_labeling(args.labeling, g)
    found = min_ell2_search(lab, args.n_star, args.ell2_max)
    if found is None:
        print("absent")
        return EXIT_REFUTED
    print(f"ell2 {found[0]}")
    return EXIT_OK


def _cmd_in_class(args) -> int:
    g = _read_graph(args.graph)
    family = _family(args.forbid)
    if in_class(g, family):
        print("in-class")
        return EXIT_OK
    for i, member in enumerate(family.members):
        vm = find_weak_embedding(member, g)
        if vm is not None:
            print(f"excluded: member {i} embeds at {','.join(map(str, vm.assignment))}")
            break
    return EXIT_REFUTED


def _cmd_closure_search(args) -> int:
    g = _read_graph(args.graph)
    lab = _read_labeling(args.labeling, g)
    (report,) = closure_violation_search(_family(args.forbid), args.n, [lab], args.ell_max)
    if report.status == "violation":
        print(f"violation at length {report.ell}")
        return EXIT_OK
    if report.status == "closed-at-budget":
        print("closed-at-budget")
        return EXIT_BUDGET
    print(f"rejected: {report.reason}")
    return EXIT_REFUTED


def _cmd_export_dot(args) -> int:
    g = _read_graph(args.graph)
    lab = _read_labeling(args.labeling, g) if args.labeling else None
    Path(args.output).write_text(to_dot(g, lab), encoding="utf-8")
    print(f"wrote {args.output}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    results = run_verification_suite()
    width = max(len(r.name) for r in results)
    failed = 0
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        print(f"{r.name:<{width}}  {mark}  {r.seconds:7.2f}s  {r.detail}")
        failed += 0 if r.passed else 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_REFUTED


def _build_parser() -> _Parser:
    parser = _Parser(prog="helixlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a bundled graph")
    p.add_argument("kind", choices=["nk", "linear", "circle", "figure4"])
    p.add_argument("--N", type=int, default=7)
    p.add_argument("--K", type=int, default=2)
    p.add_argument("--M", type=int, default=5)
    p.add_argument("--r", type=str, default="7/2", help="rational density, e.g. 7/2")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("-l", "--labeling-out")
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("girth", help="shortest directed cycle")
    p.add_argument("graph")
    p.add_argument("--max-len", type=int)
    p.set_defaults(fn=_cmd_girth)

    p = sub.add_parser("embed", help="weak embedding of a pattern into a host")
    p.add_argument("pattern")
    p.add_argument("host")
    p.set_defaults(fn=_cmd_embed)

    p = sub.add_parser("check-decomp", help="verify and classify a labeling")
    p.add_argument("graph")
    p.add_argument("labeling")
    p.set_defaults(fn=_cmd_check_decomp)

    p = sub.add_parser("indecomposable", help="decide cyclic indecomposability")
    p.add_argument("graph")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=_cmd_indecomposable)

    p = sub.add_parser("hereditary-scan", help="scan induced subgraphs for an indecomposable witness")
    p.add_argument("graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--no-prune", action="store_true")
    p.set_defaults(fn=_cmd_hereditary_scan)

    p = sub.add_parser("cover", help="build a helix cover")
    p.add_argument("graph")
    p.add_argument("labeling")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(fn=_cmd_cover)

    p = sub.add_parser("classify", help="strongest variant of a labeling")
    p.add_argument("graph")
    p.add_argument("labeling")
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("lift", help="search a cover for a lift of a base cycle")
    p.add_argument("graph")
    p.add_argument("labeling")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--cycle", required=True, help="comma-separated base vertices")
    p.set_defaults(fn=_cmd_lift)

    p = sub.add_parser("cycle-removal", help="one cycle-removal step over a forbidden family")
    p.add_argument("graph")
    p.add_argument("--forbid", action="append", required=True, help="forbidden graph file (repeatable)")
    p.add_argument("--cycle", required=True)
    p.add_argument("--ell-max", type=int, default=8)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=_cmd_cycle_removal)

    p = sub.add_parser("raise-girth", help="remove short cycles until the girth reaches a target")
    p.add_argument("graph")
    p.add_argument("--forbid", action="append", required=True)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--ell-max", type=int, default=8)
    p.add_argument("--max-rounds", type=int, default=16)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=_cmd_raise_girth)

    p = sub.add_parser("filtration", help="grow the chain from D over an interval labeling")
    p.add_argument("graph")
    p.add_argument("labeling")
    p.add_argument("--direction", choices=["forward", "reverse"], default="forward")
    p.set_defaults(fn=_cmd_filtration)

    p = sub.add_parser("parallelogram", help="build the three-band cover subset")
    p.add_argument("graph")
    p.add_argument("labeling")
    p.add_argument("--n-star", type=int, required=True)
    p.add_argument("--ell2", type=int, required=True)
    p.add_argument("--ga-formula", choices=["mirrored", "verbatim"], default="mirrored")
    p.add_argument("--verdict", action="store_true")
    p.set_defaults(fn=_cmd_parallelogram)

    p = sub.add_parser("min-ell2", help="least band width with an indecomposable region")
    p.add_argument("graph")
    p.add_argument("labeling")
    p.add_argument("--n-star", type=int, required=True)
    p.add_argument("--ell2-max", type=int, required=True)
    p.set_defaults(fn=_cmd_min_ell2)

    p = sub.add_parser("in-class", help="membership in a forbidden-family class")
    p.add_argument("graph")
    p.add_argument("--forbid", action="append", required=True)
    p.set_defaults(fn=_cmd_in_class)

    p = sub.add_parser("closure-search", help="look for a cover length violating class membership")
    p.add_argument("graph")
    p.add_argument("labeling")
    p.add_argument("--forbid", action="append", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell-max", type=int, default=6)
    p.set_defaults(fn=_cmd_closure_search)

    p = sub.add_parser("export-dot", help="Graphviz export with parts colored and D diamond-shaped")
    p.add_argument("graph")
    p.add_argument("-l", "--labeling")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(fn=_cmd_export_dot)

    p = sub.add_parser("verify", help="run the bundled verification suite")
    p.add_argument("suite", choices=["paper-suite"])
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.fn(args)
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (FormatError, GraphError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
