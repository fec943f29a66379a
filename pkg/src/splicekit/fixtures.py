"""Reference graphs used throughout the tests and the CLI fixture emitter.

g1 is unimodular with two (-1) nodes; g17 carries the same splice diagram
with first homology of order 17; g90 has a (-7)/(-1) node pair with four
(-3) leaves and fails the congruence condition; the star is the simplest
one-node diagram. fat_branch has a branch whose fundamental cycle meets
the attaching curve twice.
"""

from __future__ import annotations

from .graph import ResolutionGraph


def g1() -> ResolutionGraph:
    return ResolutionGraph.build(
        vertices=[
            ("ul", -2), ("ll", -3), ("nL", -1), ("mid", -17),
            ("nR", -1), ("ur", -2), ("r1", -3), ("r2", -2),
        ],
        edges=[
            ("ul", "nL"), ("ll", "nL"), ("nL", "mid"), ("mid", "nR"),
            ("nR", "ur"), ("nR", "r1"), ("r1", "r2"),
        ],
    )


def g17() -> ResolutionGraph:
    return ResolutionGraph.build(
        vertices=[
            ("ul", -2), ("nL", -3), ("bl2", -2), ("bl1", -2),
            ("ur", -2), ("nR", -2), ("br1", -2), ("br2", -2),
            ("br3", -2), ("br4", -2),
        ],
        edges=[
            ("ul", "nL"), ("bl2", "nL"), ("bl1", "bl2"), ("nL", "nR"),
            ("nR", "ur"), ("nR", "br1"), ("br1", "br2"), ("br2", "br3"),
            ("br3", "br4"),
        ],
    )


def g90() -> ResolutionGraph:
    return ResolutionGraph.build(
        vertices=[
            ("x", -3), ("y", -3), ("nL", -7), ("nR", -1), ("u", -3), ("v", -3),
        ],
        edges=[
            ("x", "nL"), ("y", "nL"), ("nL", "nR"), ("nR", "u"), ("nR", "v"),
        ],
    )


def star(center: int = -2, leaf_weights: tuple[int, ...] = (-3, -3, -3)) -> ResolutionGraph:
    vertices = [("c", center)] + [
        (str(i + 1), w) for i, w in enumerate(leaf_weights)
    ]
    edges = [("c", str(i + 1)) for i in range(len(leaf_weights))]
    return ResolutionGraph.build(vertices=vertices, edges=edges)


def fat_branch() -> ResolutionGraph:
    """Negative-definite graph violating the branch-cycle unit condition:
    the branch at `hub` through `c` has fundamental cycle with coefficient
    2 at `c`."""
    return ResolutionGraph.build(
        vertices=[
            ("hub", -5), ("c", -2), ("l1", -2), ("l2", -2), ("l3", -2),
            ("m", -2),
        ],
        edges=[
            ("hub", "c"), ("c", "l1"), ("c", "l2"), ("c", "l3"), ("hub", "m"),
        ],
    )


def fixture_graphs() -> dict[str, ResolutionGraph]:
    return {
        "g1": g1(),
        "g17": g17(),
        "g90": g90(),
        "star": star(),
        "fat_branch": fat_branch(),
    }
