#!/usr/bin/env python3
"""Sweep a seeded random corpus and tabulate condition verdicts.

Usage: python scripts/corpus_report.py [--trees 60] [--two-node 30]
                                       [--seed 20240917] [--det-cap 10000]
"""

from __future__ import annotations

import argparse
import time
from collections import Counter

from splicekit import (
    check_condition_3_3,
    check_condition_3_4,
    check_congruence,
    check_semigroup,
    graph_determinant,
    splice_from_resolution,
)
from splicekit.corpus import dominant_trees, two_node_graphs
from splicekit.fixtures import fixture_graphs


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trees", type=int, default=60)
    parser.add_argument("--two-node", type=int, default=30)
    parser.add_argument("--seed", type=int, default=20240917)
    parser.add_argument("--det-cap", type=int, default=10_000)
    args = parser.parse_args()

    graphs = [(name, g) for name, g in fixture_graphs().items()]
    graphs += [
        (f"tree{i:03d}", g)
        for i, g in enumerate(dominant_trees(args.trees, seed=args.seed))
    ]
    graphs += [
        (f"pair{i:03d}", g)
        for i, g in enumerate(two_node_graphs(args.two_node, seed=args.seed))
    ]

    verdict_counts: Counter[str] = Counter()
    started = time.perf_counter()
    print(f"{'name':<12} {'n':>3} {'det':>10}  sg cong 3.4 3.3")
    for name, g in graphs:
        det = graph_determinant(g)
        if det > args.det_cap:
            verdict_counts["skipped (det cap)"] += 1
            continue
        d = splice_from_resolution(g)
        sg = check_semigroup(d).ok
        cong = check_congruence(g).ok
        c34 = check_condition_3_4(g).ok
        c33 = check_condition_3_3(g).ok
        assert c33 == (sg and cong), f"equivalence violated on {name}"
        if c34:
            assert c33, f"implication violated on {name}"
        flags = " ".join("+-"[not b] for b in (sg, cong, c34, c33))
        print(f"{name:<12} {len(g.ids):>3} {det:>10}  {flags}")
        verdict_counts["pass" if c33 else "fail"] += 1
    elapsed = time.perf_counter() - started
    print(
        f"\n{verdict_counts['pass']} satisfy the conditions, "
        f"{verdict_counts['fail']} do not, "
        f"{verdict_counts['skipped (det cap)']} skipped; {elapsed:.1f}s"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
