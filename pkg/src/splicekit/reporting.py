"""Structured analysis reports with stable key order (byte-stable JSON)."""

from __future__ import annotations

import json
from typing import Any

from . import conditions, cycles, equations, splice
from .discriminant import group_order_check, leaf_generators
from .errors import CapExceeded, SemigroupFails
from .graph import (
    ResolutionGraph,
    graph_determinant,
    is_negative_definite,
    is_quasi_minimal,
    leaves_of,
    negated_intersection_matrix,
    nodes_of,
)
from .linalg import smith_normal_form


def _weights_list(d: splice.SpliceDiagram) -> list[list[Any]]:
    order = d.index
    triples = sorted(
        ((at, to, w) for (at, to), w in d.weights.items()),
        key=lambda t: (order[t[0]], order[t[1]]),
    )
    return [[at, to, w] for at, to, w in triples]


def splice_section(g: ResolutionGraph) -> dict:
    d = splice.splice_from_resolution(g)
    return {
        "vertices": list(d.ids),
        "edges": [[a, b] for a, b in d.edges],
        "weights": _weights_list(d),
    }


def maximal_section(g: ResolutionGraph) -> dict:
    d = splice.maximal_splice(g)
    return {"weights": _weights_list(d)}


def group_section(g: ResolutionGraph, cap: int | None = None) -> dict:
    snf = smith_normal_form(negated_intersection_matrix(g))
    out: dict[str, Any] = {
        "order": graph_determinant(g),
        "invariant_factors": [x for x in snf.diagonal],
        "generators": {
            leaf: [str(q) for q in gen]
            for leaf, gen in sorted(
                leaf_generators(g).generators.items(),
                key=lambda kv: g.index[kv[0]],
            )
        },
    }
    try:
        check = group_order_check(g, cap)
        out["checks"] = {
            "order_ok": check.order_ok,
            "drop_one_generator_ok": check.drop_one_ok,
            "no_pseudo_reflections": check.no_pseudo_reflections,
        }
    except CapExceeded:
        out["checks"] = {"skipped": "order exceeds enumeration cap"}
    return out


def _witness(w: conditions.AdmissibleExponents | None) -> list | None:
    if w is None:
        return None
    return [[leaf, a] for leaf, a in w.exponents]


def semigroup_section(g: ResolutionGraph) -> dict:
    report = conditions.check_semigroup(splice.splice_from_resolution(g))
    return {
        "ok": report.ok,
        "edges": [
            {
                "node": e.node,
                "toward": e.toward,
                "ok": e.ok,
                "witness": _witness(e.witness),
            }
            for e in report.edges
        ],
    }


def congruence_section(g: ResolutionGraph) -> dict:
    report = conditions.check_congruence(g)
    edges = []
    for e in report.edges:
        entry: dict[str, Any] = {
            "node": e.node,
            "toward": e.toward,
            "ok": e.ok,
            "witness": _witness(e.witness),
        }
        if e.truncated:
            entry["truncated"] = True
        if not e.ok:
            entry["congruences"] = [
                {
                    "leaf": c.leaf,
                    "coefficients": [[w, x] for w, x in c.coefficients],
                    "target": c.target,
                    "modulus": c.modulus,
                }
                for c in e.congruences
            ]
            if e.solved:
                entry["solved"] = [
                    {"leaf": s.leaf, "residue": s.residue, "modulus": s.modulus}
                    for s in e.solved
                ]
        edges.append(entry)
    return {"ok": report.ok, "determinant": report.determinant, "edges": edges}


def ideal_section(g: ResolutionGraph) -> dict:
    report = splice.check_ideal_condition(splice.splice_from_resolution(g))
    return {
        "ok": report.ok,
        "edges": [
            {
                "node": e.node,
                "toward": e.toward,
                "generator": e.generator,
                "weight": e.weight,
                "ok": e.ok,
            }
            for e in report.entries
        ],
    }


def okuma34_section(g: ResolutionGraph) -> dict:
    report = cycles.check_condition_3_4(g)
    return {
        "ok": report.ok,
        "failures": [
            {"vertex": c.vertex, "attach": c.attach, "value": c.value}
            for c in report.failures
        ],
    }


def okuma33_section(g: ResolutionGraph) -> dict:
    report = cycles.check_condition_3_3(g)
    return {
        "ok": report.ok,
        "branches": [
            {
                "node": d.node,
                "attach": d.attach,
                "ok": d.ok,
                "method": d.method,
                "exponents": [[w, a] for w, a in d.exponents],
            }
            for d in report.decisions
        ],
    }


def equations_section(g: ResolutionGraph) -> dict:
    try:
        system = equations.build_equations(g)
    except SemigroupFails as exc:
        return {"error": "SemigroupFails", "detail": str(exc)}
    return {
        "text": equations.render_equations(system).splitlines(),
        "system": equations.system_to_json(system),
    }


def analysis_report(
    g: ResolutionGraph, name: str | None = None, cap: int | None = None
) -> dict:
    report: dict[str, Any] = {}
    if name:
        report["name"] = name
    report["vertices"] = len(g.ids)
    report["edges"] = len(g.edges)
    report["negative_definite"] = is_negative_definite(g)
    if not report["negative_definite"]:
        return report
    report["quasi_minimal"] = is_quasi_minimal(g)
    report["determinant"] = graph_determinant(g)
    report["nodes"] = list(nodes_of(g))
    report["leaves"] = list(leaves_of(g))
    report["group"] = group_section(g, cap)
    report["splice"] = splice_section(g)
    report["maximal"] = maximal_section(g)
    report["conditions"] = {
        "ideal": ideal_section(g),
        "semigroup": semigroup_section(g),
        "congruence": congruence_section(g),
        "okuma34": okuma34_section(g),
        "okuma33": okuma33_section(g),
    }
    report["equations"] = equations_section(g)
    return report


def report_conditions_ok(report: dict) -> bool:
    sections = report.get("conditions", {})
    return all(sections[k].get("ok", True) for k in sections)


def render_json(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"
