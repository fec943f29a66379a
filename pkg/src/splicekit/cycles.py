"""Rational cycles on the exceptional curves: dual cycles, fundamental
cycles via computation sequences, and the branch-cycle conditions that
mirror the semigroup and congruence conditions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import config
from .conditions import SearchBudget, iter_nonnegative_solutions
from .discriminant import pairing_matrix
from .errors import NotABranch
from .graph import (
    ResolutionGraph,
    component_of,
    graph_determinant,
    leaves_of,
    path_between,
)
from .splice import linking_matrix


@dataclass(frozen=True)
class QCycle:
    """Rational linear combination of exceptional curves, stored sparsely."""

    coefficients: Mapping[str, Fraction]

    def get(self, v: str) -> Fraction:
        return self.coefficients.get(v, Fraction(0))

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(v for v, c in self.coefficients.items() if c)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients.values())

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self.coefficients.values())

    def as_int_dict(self) -> dict[str, int]:
        if not self.is_integral():
            raise ValueError("cycle is not integral")
        return {v: int(c) for v, c in self.coefficients.items() if c}


def cycle_pairing(g: ResolutionGraph, cycle: QCycle | Mapping[str, Fraction], v: str) -> Fraction:
    """Intersection number of the cycle with the curve at v."""
    coeffs = cycle.coefficients if isinstance(cycle, QCycle) else cycle
    total = Fraction(coeffs.get(v, 0)) * g.weight_of(v)
    for u in g.adjacency[v]:
        c = coeffs.get(u)
        if c:
            total += c
    return total


def cycle_add(a: QCycle, b: QCycle, scale: int = 1) -> QCycle:
    out = dict(a.coefficients)
    for v, c in b.coefficients.items():
        out[v] = out.get(v, Fraction(0)) + scale * c
    return QCycle({v: c for v, c in out.items() if c})


def dual_cycles(g: ResolutionGraph) -> dict[str, QCycle]:
    """All cycles dual to the curves: the i-th pairs to -1 with curve i and
    to 0 with every other curve (rows of the negated inverse pairing)."""
    pm = pairing_matrix(g)
    out = {}
    for i, v in enumerate(g.ids):
        out[v] = QCycle(
            {u: -pm[i][j] for j, u in enumerate(g.ids) if pm[i][j]}
        )
    return out


def dual_cycle(g: ResolutionGraph, v: str) -> QCycle:
    return dual_cycles(g)[v]


def branches(g: ResolutionGraph, v: str) -> tuple[tuple[str, ...], ...]:
    """Connected components of the graph minus v, in vertex order."""
    return tuple(component_of(g, v, u) for u in g.adjacency[v])


def fundamental_cycle(g: ResolutionGraph, subset: Iterable[str]) -> QCycle:
    """Minimal effective cycle on a connected vertex set with non-positive
    intersection against each of its curves.

    Computation sequence: start with coefficient 1 everywhere; while some
    curve in the set still meets the cycle positively, bump the first such
    (in vertex order).
    """
    sub = [v for v in g.ids if v in set(subset)]
    if not sub:
        raise NotABranch("empty vertex set")
    coeff = {v: 1 for v in sub}

    def dot(j: str) -> int:
        total = coeff[j] * g.weight_of(j)
        for u in g.adjacency[j]:
            total += coeff.get(u, 0)
        return total

    while True:
        for j in sub:
            if dot(j) > 0:
                coeff[j] += 1
                break
        else:
            return QCycle({v: Fraction(c) for v, c in coeff.items()})


@dataclass(frozen=True)
class BranchCheck:
    vertex: str
    attach: str
    value: int

    @property
    def ok(self) -> bool:
        return self.value == 1


@dataclass(frozen=True)
class Condition34Report:
    checks: tuple[BranchCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> tuple[BranchCheck, ...]:
        return tuple(c for c in self.checks if not c.ok)


def check_condition_3_4(g: ResolutionGraph) -> Condition34Report:
    """Every branch of every non-leaf curve must have fundamental cycle
    meeting that curve exactly once."""
    checks = []
    for v in g.ids:
        if g.degree(v) <= 1:
            continue
        for u in g.adjacency[v]:
            comp = component_of(g, v, u)
            z = fundamental_cycle(g, comp)
            value = int(cycle_pairing(g, z, v))
            checks.append(BranchCheck(vertex=v, attach=u, value=value))
    return Condition34Report(checks=tuple(checks))


@dataclass(frozen=True)
class MonomialCycleResult:
    ok: bool
    node: str
    attach: str
    cycle: QCycle | None
    exponents: tuple[tuple[str, int], ...]
    iterations: int
    deficiency_trace: tuple[int, ...]
    # sorted distances (from the node) of curves still met negatively, one
    # snapshot per loop state; deficits only ever move strictly outward
    deficit_distance_trace: tuple[tuple[int, ...], ...] = ()
    reason: str | None = None


def _branch_of(g: ResolutionGraph, v: str, branch: Sequence[str]) -> str:
    """Attach vertex of a claimed branch; raises NotABranch on mismatch."""
    bset = set(branch)
    attach = [u for u in g.adjacency[v] if u in bset]
    if len(attach) != 1 or set(component_of(g, v, attach[0])) != bset:
        raise NotABranch(f"{sorted(bset)} is not a branch of {v}")
    return attach[0]


def construct_monomial_cycle(
    g: ResolutionGraph, v: str, branch: Sequence[str]
) -> MonomialCycleResult:
    """Greedy construction of a monomial cycle for a node and branch.

    Starts from the dual cycle of the node plus the branch fundamental
    cycle, then repeatedly absorbs negative intersections at non-leaf
    curves (nearest to the node first) by adding fundamental cycles of
    sub-branches; the result, when the loop terminates cleanly, pairs to
    zero with every non-leaf curve and decomposes over the leaf duals of
    the branch.
    """
    attach = _branch_of(g, v, branch)
    bset = set(branch)
    leaf_set = set(leaves_of(g))
    interior = [j for j in branch if j not in leaf_set]
    cap = graph_determinant(g) * len(g.ids) * max(-w for w in g.weights)
    distance = {u: len(path_between(g, v, u)) for u in branch}

    d_cycle = cycle_add(dual_cycle(g, v), fundamental_cycle(g, branch))

    def deficiency() -> int:
        return sum(
            max(0, -int(cycle_pairing(g, d_cycle, j))) for j in interior
        )

    def deficit_distances() -> tuple[int, ...]:
        return tuple(sorted(
            distance[j] for j in interior if cycle_pairing(g, d_cycle, j) < 0
        ))

    trace = [deficiency()]
    distance_trace = [deficit_distances()]
    iterations = 0
    while True:
        bad = [
            (distance[j], g.index[j], j)
            for j in interior
            if cycle_pairing(g, d_cycle, j) < 0
        ]
        if not bad:
            break
        if iterations >= cap:
            return MonomialCycleResult(
                ok=False, node=v, attach=attach, cycle=None, exponents=(),
                iterations=iterations, deficiency_trace=tuple(trace),
                deficit_distance_trace=tuple(distance_trace),
                reason="iteration cap exceeded",
            )
        iterations += 1
        _, _, j = min(bad)
        deficit = -int(cycle_pairing(g, d_cycle, j))
        candidates = []
        for x in g.adjacency[j]:
            comp = component_of(g, j, x)
            if v in comp:
                continue
            has_negative = any(
                cycle_pairing(g, d_cycle, k) < 0 for k in comp if k in bset
            )
            candidates.append((0 if has_negative else 1, g.index[x], comp))
        candidates.sort(key=lambda t: (t[0], t[1]))
        sub = candidates[0][2]
        d_cycle = cycle_add(d_cycle, fundamental_cycle(g, sub), scale=deficit)
        trace.append(deficiency())
        distance_trace.append(deficit_distances())

    diff = cycle_add(d_cycle, dual_cycle(g, v), scale=-1)
    problems = []
    if not diff.is_integral():
        problems.append("difference with the dual cycle is not integral")
    if not diff.is_effective():
        problems.append("difference with the dual cycle is not effective")
    if any(x not in bset for x in diff.support):
        problems.append("difference is not supported on the branch")
    for j in g.ids:
        if j not in leaf_set and cycle_pairing(g, d_cycle, j) != 0:
            problems.append(f"nonzero pairing with non-leaf curve {j}")
            break
    exponents = []
    for k in leaves_of(g):
        val = -cycle_pairing(g, d_cycle, k)
        if val.denominator != 1 or val < 0:
            problems.append(f"leaf exponent at {k} is not a non-negative integer")
            break
        if k in bset:
            exponents.append((k, int(val)))
        elif val:
            problems.append(f"nonzero exponent at leaf {k} outside the branch")
            break
    if problems:
        return MonomialCycleResult(
            ok=False, node=v, attach=attach, cycle=None, exponents=(),
            iterations=iterations, deficiency_trace=tuple(trace),
            deficit_distance_trace=tuple(distance_trace),
            reason="; ".join(problems),
        )
    return MonomialCycleResult(
        ok=True, node=v, attach=attach, cycle=d_cycle,
        exponents=tuple(exponents), iterations=iterations,
        deficiency_trace=tuple(trace),
        deficit_distance_trace=tuple(distance_trace), reason=None,
    )


@dataclass(frozen=True)
class BranchDecision:
    node: str
    attach: str
    ok: bool
    method: str  # "constructive" | "search"
    exponents: tuple[tuple[str, int], ...]
    truncated: bool


@dataclass(frozen=True)
class Condition33Report:
    decisions: tuple[BranchDecision, ...]

    @property
    def ok(self) -> bool:
        return all(d.ok for d in self.decisions)

    @property
    def failures(self) -> tuple[BranchDecision, ...]:
        return tuple(d for d in self.decisions if not d.ok)


def _search_monomial_cycle(
    g: ResolutionGraph,
    lmat: list[list[int]],
    det: int,
    v: str,
    branch: Sequence[str],
    limit: int,
) -> tuple[tuple[tuple[str, int], ...] | None, bool]:
    """Complete bounded search over exponent vectors on the branch leaves.

    A vector works when sum(a_k * L[k][j]) - L[v][j] vanishes outside the
    branch and is a non-negative multiple of det inside it, i.e. the
    corresponding combination of leaf duals exceeds the node dual by an
    effective integral cycle supported on the branch.
    """
    idx = g.index
    bset = set(branch)
    leaves = [k for k in leaves_of(g) if k in bset]
    values = [lmat[idx[k]][idx[v]] for k in leaves]
    target = lmat[idx[v]][idx[v]]
    tested = 0
    budget = SearchBudget(max(limit * 16, 1 << 20))
    for alpha in iter_nonnegative_solutions(values, target, budget):
        if tested >= limit:
            return None, True
        tested += 1
        good = True
        for j in g.ids:
            total = sum(
                a * lmat[idx[k]][idx[j]] for k, a in zip(leaves, alpha)
            ) - lmat[idx[v]][idx[j]]
            if j in bset:
                if total < 0 or total % det:
                    good = False
                    break
            elif total:
                good = False
                break
        if good:
            return tuple(zip(leaves, alpha)), False
    return None, budget.exhausted


def check_condition_3_3(
    g: ResolutionGraph, limit: int | None = None
) -> Condition33Report:
    """Monomial-cycle condition at every node and branch.

    The greedy construction is tried first; when it does not settle, a
    complete bounded search over admissible exponent vectors decides the
    branch.
    """
    cap = config.solution_limit(limit)
    lmat = linking_matrix(g)
    det = graph_determinant(g)
    decisions = []
    for v in g.ids:
        if g.degree(v) < 3:
            continue
        for u in g.adjacency[v]:
            comp = component_of(g, v, u)
            constructive = construct_monomial_cycle(g, v, comp)
            if constructive.ok:
                decisions.append(
                    BranchDecision(
                        node=v, attach=u, ok=True, method="constructive",
                        exponents=constructive.exponents, truncated=False,
                    )
                )
                continue
            exponents, truncated = _search_monomial_cycle(
                g, lmat, det, v, comp, cap
            )
            decisions.append(
                BranchDecision(
                    node=v, attach=u, ok=exponents is not None,
                    method="search", exponents=exponents or (),
                    truncated=truncated,
                )
            )
    return Condition33Report(decisions=tuple(decisions))
