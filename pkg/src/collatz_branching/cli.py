"""Command-line entry point: ``collatz-branching <subcommand> ...``.

Exit codes: 0 when every check passes, 1 on any FAIL or UNRESOLVED check,
2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import checks, core
from .automorphism import (
    aut_graph_dot,
    cotree_nodes,
    cotree_spec,
    subtree_spec,
    verify_isomorphism,
)
from .class_graph import build_class_graph, transformation_matrix
from .density import (
    census_report,
    decimal,
    default_census_sets,
    family_series,
    grand_total,
    setsize_recursion,
    FAMILY_MEMBERS,
)
from .report import Check, ReportDocument
from .residues import alignment_vector, rightward_map, upward_map
from .tables import base_sets, table_report
from .tree import build_tree, export as export_tree

THREADS_ENV = "COLLATZ_BRANCHING_THREADS"


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="collatz-branching", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="emit the JSON report instead of text")
    parser.add_argument("--threads", type=_positive, default=_default_threads(),
                        help=f"worker processes for sweeps (default ${THREADS_ENV} or 1)")
    parser.add_argument("--budget", type=_positive, default=core.DEFAULT_STEP_BUDGET,
                        help="Collatz step budget per root path")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-all", help="run the full acceptance suite")
    p.add_argument("--n-max", type=_positive, default=10**6)
    p.add_argument("--max-index", type=_positive, default=3)
    p.add_argument("--iso-max-value", type=_positive, default=10**5)

    sub.add_parser("tables", help="recompute the base class sets and diff against stored listings")
    sub.add_parser("pvectors", help="derive p-vectors and alignment vectors")

    p = sub.add_parser("tree", help="build the bounded tree")
    p.add_argument("--max-value", type=_positive, required=True)
    p.add_argument("--max-depth", type=_positive)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_const", dest="format", const="dot")
    fmt.add_argument("--json", action="store_const", dest="format", const="json")
    p.add_argument("--output", "-o")

    p = sub.add_parser("path", help="root path, generation label and trajectory of n")
    p.add_argument("n", type=_positive)

    p = sub.add_parser("cotree", help="subtree/cotree spec, nodes and isomorphism check")
    p.add_argument("--family", choices=["upward", "rightward"], required=True)
    p.add_argument("--index", type=_positive, required=True)
    p.add_argument("--kind", choices=["cotree", "subtree"], default="cotree")
    p.add_argument("--max-value", type=_positive, default=10**4)
    p.add_argument("--show-nodes", type=int, default=10, help="how many node images to print")

    sub.add_parser("density", help="exact cotree density series and grand total")

    p = sub.add_parser("census", help="counted vs. theoretical densities")
    p.add_argument("--n-max", type=_positive, default=10**6)

    p = sub.add_parser("export", help="write DOT/JSON/CSV artifacts")
    p.add_argument("what", choices=["tree", "class-graph", "aut-graph", "spec", "census"])
    p.add_argument("--format", choices=["dot", "json", "csv"], default="dot")
    p.add_argument("--max-value", type=_positive, default=256)
    p.add_argument("--max-index", type=_positive, default=3)
    p.add_argument("--family", choices=["upward", "rightward"], default="upward")
    p.add_argument("--index", type=_positive, default=1)
    p.add_argument("--kind", choices=["cotree", "subtree"], default="cotree")
    p.add_argument("--n-max", type=_positive, default=10**6)
    p.add_argument("--output", "-o")
    return parser


# ---------------------------------------------------------------------------
# subcommands


def cmd_verify_all(args, doc: ReportDocument) -> None:
    for check in checks.run_all(args.n_max, args.threads, args.budget, args.max_index, args.iso_max_value):
        doc.add(check)


def cmd_tables(args, doc: ReportDocument) -> None:
    for d in table_report():
        kind = "listed" if d.listed else "counts only"
        detail = f"mod {d.modulus}, {kind}, counts {d.counts_found}"
        if d.missing or d.extra:
            detail += f", missing {d.missing[:10]}, extra {d.extra[:10]}"
        doc.add(Check.of(d.name, d.ok, detail))
    listed = [d for d in table_report() if d.listed]
    doc.lines.append(f"{sum(d.ok for d in listed)}/{len(listed)} golden sets match")
    doc.data["sets"] = {name: s.to_json() for name, s in base_sets().items()}


def cmd_pvectors(args, doc: ReportDocument) -> None:
    pv = core.derive_p_vectors()
    graph = build_class_graph()
    h_u = alignment_vector(upward_map().intrinsic_periods(18))
    h_r = alignment_vector(rightward_map().intrinsic_periods(54))
    doc.lines += [
        f"p_U = {list(pv.p_upward)}",
        f"p_R = {list(pv.p_rightward)}",
        f"intrinsic periods U0 = {upward_map().intrinsic_periods(18)}",
        f"intrinsic periods R0 = {rightward_map().intrinsic_periods(54)}",
        f"h_U1 = {h_u}",
        f"h_R = {h_r}",
        "T = " + json.dumps([list(r) for r in transformation_matrix()]),
    ]
    doc.add(Check.of("class graph p-labels agree", graph.p_vectors() == pv))
    doc.data.update(p_upward=list(pv.p_upward), p_rightward=list(pv.p_rightward), h_u1=h_u, h_r=h_r)


def _write(text: str, output: str | None, doc: ReportDocument) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
        doc.lines.append(f"wrote {output}")
    else:
        doc.lines.append(text.rstrip("\n"))


def cmd_tree(args, doc: ReportDocument) -> None:
    tree = build_tree(args.max_value, args.max_depth)
    if args.format:
        _write(export_tree(tree, args.format), args.output, doc)
    else:
        doc.lines.append(f"{len(tree)} nodes <= {args.max_value}, {len(tree.frontier)} frontier stubs")
        for node in tree.nodes.values():
            doc.lines.append(f"{node.value:>10} {node.label:<4} {core.word_bits(node.word)}")
    doc.data.update(nodes=len(tree), frontier=len(tree.frontier))


def cmd_path(args, doc: ReportDocument) -> None:
    n = args.n
    traj = core.collatz_trajectory(n, args.budget)
    doc.data["trajectory_reached_one"] = traj.reached_one
    if core.is_branching(n):
        try:
            w = core.root_path_word(n, args.budget)
        except core.UnresolvedError as err:
            doc.add(Check("root path", "UNRESOLVED", str(err)))
        else:
            bits = core.word_bits(w)
            label = core.label_of_word(w)
            doc.lines += [f"word: {bits}", f"letters: {core.format_word(w)}", f"label: {label}"]
            doc.add(Check.of("word re-evaluates", core.apply_word(core.ROOT, w) == n))
            doc.data.update(word=bits, label=label)
    else:
        doc.lines.append(f"{n} is not a branching number; no root-path word")
    doc.lines.append("trajectory: " + " ".join(map(str, traj.values)))
    if not traj.reached_one:
        doc.add(Check("trajectory", "UNRESOLVED", f"1 not reached within {args.budget} steps"))


def cmd_cotree(args, doc: ReportDocument) -> None:
    make = cotree_spec if args.kind == "cotree" else subtree_spec
    spec = make(args.family, args.index)
    s = spec.node_classes
    doc.lines += [
        f"{spec.name}: outer word {core.format_word(spec.outer_word)}",
        f"inner arrows {spec.inner_up_name} = {core.format_word(spec.inner_up)}, "
        f"{spec.inner_right_name} = {core.format_word(spec.inner_right)}",
        f"classes: {len(s)} mod {s.modulus}, density {s.density} ({decimal(s.density)})",
        f"root image: {spec.root}",
    ]
    nodes = cotree_nodes(spec, args.max_value)
    for v, m in list(nodes.images.items())[: max(0, args.show_nodes)]:
        doc.lines.append(f"  {v} -> {m}")
    r = verify_isomorphism(spec, args.max_value)
    doc.add(Check.of(
        f"isomorphism {spec.name} <= {args.max_value}", r.ok,
        f"{r.nodes} nodes, {r.arrows} arrows, {len(r.open_squares)} open squares, "
        f"{len(r.outside_classes)} outside classes",
    ))
    doc.data["spec"] = spec.to_json() | {"residues": len(s)}


def cmd_density(args, doc: ReportDocument) -> None:
    for family in FAMILY_MEMBERS:
        s = family_series(family)
        doc.lines.append(
            f"{family:<12} a = rho({s.members[0]}) = {s.first_term}, r = {s.ratio}, "
            f"a/(1-r) = {s.closed_form} ({decimal(s.closed_form)})"
        )
    g = grand_total()
    doc.lines.append(f"total = {g.unreduced} = {g.total}")
    doc.add(Check.of("grand total 2/18", g.passed, f"{g.total} == 2/18"))
    for step in setsize_recursion(2):
        doc.add(Check.of(
            f"set sizes {step.chain} after {step.k} rightward step(s)", step.ok,
            f"|set|={step.size} mod {step.modulus}, 3x r6 counts {step.enumerated}",
        ))
    doc.data["total"] = {"num": g.total.numerator, "den": g.total.denominator}


def _census_rows(n):
    return census_report(n, default_census_sets())


def cmd_census(args, doc: ReportDocument) -> None:
    doc.lines.append(f"{'set':<6} {'density':>12} {'decimal':>16} {'count':>10} {'N*density':>16}")
    for row in _census_rows(args.n_max):
        doc.lines.append(
            f"{row.name:<6} {str(row.density):>12} {decimal(row.density):>16} {row.count:>10} "
            f"{decimal(row.n * row.density, 3):>16}"
        )
        doc.add(Check.of(f"census {row.name}", row.within_bound, f"|count - N*density| <= {row.size}"))


def cmd_export(args, doc: ReportDocument) -> None:
    fmt = args.format
    if args.what == "tree":
        if fmt == "csv":
            raise _Usage("tree export supports dot or json")
        text = export_tree(build_tree(args.max_value), fmt)
    elif args.what == "class-graph":
        if fmt != "dot":
            raise _Usage("class-graph export supports dot only")
        text = build_class_graph().to_dot()
    elif args.what == "aut-graph":
        if fmt != "dot":
            raise _Usage("aut-graph export supports dot only")
        text = aut_graph_dot(args.max_index)
    elif args.what == "spec":
        if fmt != "json":
            raise _Usage("spec export supports json only")
        make = cotree_spec if args.kind == "cotree" else subtree_spec
        text = json.dumps(make(args.family, args.index).to_json()) + "\n"
    else:
        if fmt != "csv":
            raise _Usage("census export supports csv only")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["set", "density_num", "density_den", "n", "count", "size"])
        for row in _census_rows(args.n_max):
            w.writerow([row.name, row.density.numerator, row.density.denominator, row.n, row.count, row.size])
        text = buf.getvalue()
    _write(text, args.output, doc)


class _Usage(Exception):
    pass


COMMANDS = {
    "verify-all": cmd_verify_all,
    "tables": cmd_tables,
    "pvectors": cmd_pvectors,
    "tree": cmd_tree,
    "path": cmd_path,
    "cotree": cmd_cotree,
    "density": cmd_density,
    "census": cmd_census,
    "export": cmd_export,
}


def run(argv: list[str] | None = None, out=None) -> ReportDocument:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("json", "command")}
    doc = ReportDocument(args.command, params)
    try:
        COMMANDS[args.command](args, doc)
    except _Usage as err:
        parser.error(str(err))
    out.write(doc.to_json() if args.json else doc.to_text())
    return doc


def main(argv: list[str] | None = None) -> int:
    return run(argv).exit_code


if __name__ == "__main__":
    sys.exit(main())
