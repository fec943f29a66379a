"""Command-line interface.

Exit codes: 0 all requested checks pass, 1 a checked condition fails,
2 invalid input. Condition failures are results, not program errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import equations, reporting, splice
from .document import (
    document_to_graph,
    document_to_json,
    graph_to_document,
    load_document,
)
from .errors import (
    CongruenceFails,
    NotEndNode,
    ParseError,
    SemigroupFails,
    SpliceKitError,
    ValidationError,
)
from .fixtures import fixture_graphs
from .graph import ResolutionGraph, graph_determinant

CHECKS = ("semigroup", "congruence", "ideal", "okuma34", "okuma33", "all")


def _load_graph(path: str) -> ResolutionGraph:
    return document_to_graph(load_document(path))


def _emit(payload: dict, as_json: bool, lines: list[str]) -> None:
    if as_json:
        sys.stdout.write(reporting.render_json(payload))
    else:
        for line in lines:
            print(line)


def cmd_validate(args) -> int:
    g = _load_graph(args.file)
    payload = {"ok": True, "vertices": len(g.ids), "edges": len(g.edges)}
    _emit(payload, args.json, [f"ok: {len(g.ids)} vertices, {len(g.edges)} edges"])
    return 0


def cmd_det(args) -> int:
    g = _load_graph(args.file)
    det = graph_determinant(g)
    _emit({"determinant": det}, args.json, [str(det)])
    return 0


def cmd_group(args) -> int:
    g = _load_graph(args.file)
    section = reporting.group_section(g, args.cap)
    lines = [
        f"order: {section['order']}",
        "invariant factors: " + ", ".join(map(str, section["invariant_factors"])),
    ]
    for leaf, gen in section["generators"].items():
        lines.append(f"generator at {leaf}: [" + ", ".join(gen) + "]")
    _emit(section, args.json, lines)
    return 0


def cmd_splice(args) -> int:
    g = _load_graph(args.file)
    section = reporting.splice_section(g)
    lines = ["vertices: " + " ".join(section["vertices"])]
    for at, to, w in section["weights"]:
        lines.append(f"weight at {at} toward {to}: {w}")
    _emit(section, args.json, lines)
    return 0


def cmd_maximal(args) -> int:
    g = _load_graph(args.file)
    section = reporting.maximal_section(g)
    lines = [f"weight at {at} toward {to}: {w}" for at, to, w in section["weights"]]
    _emit(section, args.json, lines)
    return 0


def cmd_check(args) -> int:
    g = _load_graph(args.file)
    sections: dict[str, dict] = {}
    wanted = CHECKS[:-1] if args.condition == "all" else (args.condition,)
    builders = {
        "semigroup": reporting.semigroup_section,
        "congruence": reporting.congruence_section,
        "ideal": reporting.ideal_section,
        "okuma34": reporting.okuma34_section,
        "okuma33": reporting.okuma33_section,
    }
    for name in wanted:
        sections[name] = builders[name](g)
    ok = all(s["ok"] for s in sections.values())
    lines = []
    for name, section in sections.items():
        lines.append(f"{name}: {'pass' if section['ok'] else 'FAIL'}")
        if name == "congruence" and not section["ok"]:
            for edge in section["edges"]:
                if edge["ok"]:
                    continue
                lines.append(
                    f"  no equivariant monomial at ({edge['node']}, {edge['toward']})"
                )
                for solved in edge.get("solved", []):
                    lines.append(
                        f"    needs exponent at {solved['leaf']} = "
                        f"{solved['residue']} (mod {solved['modulus']})"
                    )
    _emit({"ok": ok, "checks": sections}, args.json, lines)
    return 0 if ok else 1


def cmd_equations(args) -> int:
    g = _load_graph(args.file)
    try:
        system = equations.build_equations(g, equivariant=args.equivariant)
    except (SemigroupFails, CongruenceFails) as exc:
        payload = {"error": type(exc).__name__, "detail": str(exc)}
        _emit(payload, args.json, [f"{type(exc).__name__}: {exc}"])
        return 1
    payload = equations.system_to_json(system)
    _emit(payload, args.json, equations.render_equations(system).splitlines())
    return 0


def cmd_reduce(args) -> int:
    g = _load_graph(args.file)
    d = splice.splice_from_resolution(g)
    mode = "raw" if args.raw else "normalized"
    det = None if args.raw else graph_determinant(g)
    result = splice.end_node_reduce(d, args.end_node, mode=mode, det=det)
    if result.problems:
        payload = {
            "error": "NonIntegralWeight",
            "problems": [
                {"at": p.at, "toward": p.toward, "raw": p.raw, "divisor": p.divisor}
                for p in result.problems
            ],
        }
        _emit(payload, args.json, [
            f"non-integral reduced weight at {p.at} toward {p.toward}: "
            f"{p.raw} not divisible by {p.divisor}"
            for p in result.problems
        ])
        return 1
    assert result.diagram is not None
    order = result.diagram.index
    triples = sorted(
        ((at, to, w) for (at, to), w in result.diagram.weights.items()),
        key=lambda t: (order[t[0]], order[t[1]]),
    )
    payload = {
        "mode": mode,
        "new_leaf": result.new_leaf,
        "vertices": list(result.diagram.ids),
        "edges": [[a, b] for a, b in result.diagram.edges],
        "weights": [[at, to, w] for at, to, w in triples],
    }
    lines = [f"new leaf: {result.new_leaf}"] + [
        f"weight at {at} toward {to}: {w}" for at, to, w in triples
    ]
    _emit(payload, args.json, lines)
    return 0


def cmd_report(args) -> int:
    g = _load_graph(args.file)
    name = Path(args.file).stem
    report = reporting.analysis_report(g, name=name, cap=args.cap)
    if args.json:
        sys.stdout.write(reporting.render_json(report))
    else:
        sys.stdout.write(reporting.render_json(report))
    return 0 if reporting.report_conditions_ok(report) else 1


def cmd_emit_fixtures(args) -> int:
    out = Path(args.dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, g in fixture_graphs().items():
        doc = graph_to_document(g, metadata={"name": name})
        (out / f"{name}.json").write_text(document_to_json(doc))
        report = reporting.analysis_report(g, name=name)
        (out / f"{name}_report.json").write_text(reporting.render_json(report))
        print(f"wrote {out / (name + '.json')}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="splicekit",
        description="Exact combinatorics of resolution graphs and splice diagrams",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    add("validate", cmd_validate).add_argument("file")
    add("det", cmd_det).add_argument("file")
    p = add("group", cmd_group)
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=None)
    add("splice", cmd_splice).add_argument("file")
    add("maximal", cmd_maximal).add_argument("file")
    p = add("check", cmd_check)
    p.add_argument("condition", choices=CHECKS)
    p.add_argument("file")
    p = add("equations", cmd_equations)
    p.add_argument("file")
    p.add_argument("--equivariant", action="store_true")
    p = add("reduce", cmd_reduce)
    p.add_argument("file")
    p.add_argument("--end-node", required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--raw", action="store_true")
    mode.add_argument("--normalized", action="store_true")
    p = add("report", cmd_report)
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=None)
    p = add("emit-fixtures", cmd_emit_fixtures)
    p.add_argument("--dir", default="fixtures")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, ValidationError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except NotEndNode as exc:
        print(f"input error: not an end-node: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except SpliceKitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
