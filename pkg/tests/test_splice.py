from math import gcd

import pytest

from splicekit.cfrac import continued_fraction_of_string
from splicekit.discriminant import leaf_generators
from splicekit.errors import LeafEdgeInReducedDiagram, NotEndNode, SameVertex
from splicekit.graph import (
    ResolutionGraph,
    blow_up_edge,
    component_of,
    graph_determinant,
    induced_subgraph,
    intersection_matrix,
    negated_intersection_matrix,
)
from splicekit.linalg import determinant, matmul
from splicekit.splice import (
    edge_determinant,
    end_node_reduce,
    end_node_reduce_graph,
    ideal_generator,
    is_end_node,
    check_ideal_condition,
    leaf_ideal_generator,
    leaf_knot_order,
    linking_matrix,
    linking_numbers,
    maximal_splice,
    splice_from_resolution,
    subtree_determinants,
    verify_edge_det_theorem,
)

G1_SPLICE = {
    ("nL", "ul"): 2, ("nL", "ll"): 3, ("nL", "nR"): 7,
    ("nR", "nL"): 11, ("nR", "ur"): 2, ("nR", "r2"): 5,
}

G1_MAXIMAL = {
    ("nL", "ul"): 2, ("ul", "nL"): 11,
    ("nL", "ll"): 3, ("ll", "nL"): 5,
    ("nL", "mid"): 7, ("mid", "nL"): 1,
    ("nR", "mid"): 11, ("mid", "nR"): 1,
    ("nR", "ur"): 2, ("ur", "nR"): 28,
    ("nR", "r1"): 5, ("r1", "nR"): 9,
    ("r1", "r2"): 2, ("r2", "r1"): 5,
}

G17_MAXIMAL = {
    ("nL", "ul"): 2, ("ul", "nL"): 19,
    ("nL", "bl2"): 3, ("bl2", "nL"): 15,
    ("nL", "nR"): 7, ("nR", "nL"): 11,
    ("bl1", "bl2"): 16, ("bl2", "bl1"): 2,
    ("nR", "ur"): 2, ("ur", "nR"): 36,
    ("nR", "br1"): 5, ("br1", "nR"): 21,
    ("br1", "br2"): 4, ("br2", "br1"): 20,
    ("br2", "br3"): 3, ("br3", "br2"): 19,
    ("br3", "br4"): 2, ("br4", "br3"): 18,
}

G90_SPLICE = {
    ("nL", "x"): 3, ("nL", "y"): 3, ("nL", "nR"): 3,
    ("nR", "nL"): 57, ("nR", "u"): 3, ("nR", "v"): 3,
}


def test_g1_splice_weights(g1):
    assert dict(splice_from_resolution(g1).weights) == G1_SPLICE


def test_g17_same_splice_diagram(g17):
    d = splice_from_resolution(g17)
    assert sorted(d.weights.values()) == sorted(G1_SPLICE.values())
    assert dict(d.weights) == {
        ("nL", "ul"): 2, ("nL", "bl1"): 3, ("nL", "nR"): 7,
        ("nR", "nL"): 11, ("nR", "ur"): 2, ("nR", "br4"): 5,
    }


def test_g90_splice_weights(g90):
    assert dict(splice_from_resolution(g90).weights) == G90_SPLICE


def test_g1_maximal_weights(g1):
    assert dict(maximal_splice(g1).weights) == G1_MAXIMAL


def test_g17_maximal_weights(g17):
    assert dict(maximal_splice(g17).weights) == G17_MAXIMAL


def test_derived_diagram_invariants(fixture_map, small_trees):
    # no valency-2 vertices, positive weights, positive edge determinants
    for g in [*fixture_map.values(), *small_trees]:
        d = splice_from_resolution(g)
        for v in d.ids:
            assert d.degree(v) != 2
        assert all(w > 0 for w in d.weights.values())
        for e in d.edges:
            if d.is_node(e[0]) and d.is_node(e[1]):
                assert edge_determinant(d, e) > 0


def test_trivial_single_vertex():
    g = ResolutionGraph.build([("a", -3)], [])
    d = maximal_splice(g)
    assert d.ids == ("a",) and not d.weights
    reduced = splice_from_resolution(g)
    assert reduced.ids == ("a",) and reduced.is_leaf("a")


def test_not_negative_definite_rejected():
    from splicekit.errors import NotNegativeDefinite
    from splicekit.graph import graph_determinant as det

    indefinite = ResolutionGraph.build([("a", -1), ("b", -1)], [("a", "b")])
    for op in (det, splice_from_resolution, maximal_splice):
        with pytest.raises(NotNegativeDefinite):
            op(indefinite)


def test_subtree_determinants_match_bareiss(random_trees):
    for g in random_trees[:15]:
        dets = subtree_determinants(g)
        for (child, parent), value in dets.items():
            comp = component_of(g, parent, child)
            direct = determinant(negated_intersection_matrix(induced_subgraph(g, comp)))
            assert value == direct


def test_linking_adjacent_reduced_is_one(g1):
    d = splice_from_resolution(g1)
    full, reduced = linking_numbers(d, "nL", "ul")
    assert reduced == 1
    assert full == 3 * 7  # the node's other weights


def test_linking_examples(g1, g90):
    d1 = splice_from_resolution(g1)
    full, reduced = linking_numbers(d1, "ul", "ll")
    assert full == reduced == 7
    lmat = linking_matrix(g1)
    i, j = g1.index["ul"], g1.index["ll"]
    assert lmat[i][j] == 7
    d90 = splice_from_resolution(g90)
    _, reduced = linking_numbers(d90, "nL", "u")
    assert reduced == 3


def test_linking_same_vertex_error(g1):
    d = splice_from_resolution(g1)
    with pytest.raises(SameVertex):
        linking_numbers(d, "ul", "ul")


def test_edge_determinants(g1, g90, g17):
    d1 = splice_from_resolution(g1)
    assert edge_determinant(d1, ("nL", "nR")) == 7 * 11 - 6 * 10 == 17
    d90 = splice_from_resolution(g90)
    assert edge_determinant(d90, ("nL", "nR")) == 3 * 57 - 9 * 9 == 90
    dmax = maximal_splice(g17)
    for e in dmax.edges:
        assert edge_determinant(dmax, e) == 17
    with pytest.raises(LeafEdgeInReducedDiagram):
        edge_determinant(d1, ("nL", "ul"))


def test_edge_det_theorem(g1, g17, g90):
    for g, det in ((g1, 1), (g17, 17), (g90, 90)):
        report = verify_edge_det_theorem(g)
        assert report.ok
        for entry in report.entries:
            assert entry.graph_det == det
    # G1's node-node edge comes from the single -17 string
    entry = verify_edge_det_theorem(g1).entries[0]
    assert entry.string_det == 17 and entry.edge_det == 17


def test_linking_identity_on_fixtures(fixture_map):
    for g in fixture_map.values():
        a = intersection_matrix(g)
        lmat = linking_matrix(g)
        det = graph_determinant(g)
        product = matmul(a, lmat)
        n = len(a)
        for i in range(n):
            for j in range(n):
                assert product[i][j] == (-det if i == j else 0)


def test_ideal_generators(g1, g90):
    d1 = splice_from_resolution(g1)
    assert ideal_generator(d1, "nL", "ul") == 1  # edge ending at a leaf
    assert ideal_generator(d1, "nL", "nR") == gcd(2, 5) == 1
    d90 = splice_from_resolution(g90)
    assert ideal_generator(d90, "nL", "nR") == 3


def test_ideal_generator_matches_direct_gcd(small_trees):
    for g in small_trees:
        d = splice_from_resolution(g)
        for v in d.nodes:
            for u in d.adjacency[v]:
                acc = 0
                for w in d.leaves:
                    if w == v:
                        continue
                    if u in d.path(v, w):
                        acc = gcd(acc, linking_numbers(d, v, w)[1])
                assert ideal_generator(d, v, u) == acc


def test_ideal_condition(g1, g90, small_trees, random_trees):
    # guaranteed for every resolution-derived diagram
    for g in [g1, g90, *small_trees, *random_trees]:
        assert check_ideal_condition(splice_from_resolution(g)).ok


def test_leaf_knot_orders(g1, g17, g90):
    assert all(leaf_knot_order(g1, w) == 1 for w in ("ul", "ll", "ur", "r2"))
    group17 = leaf_generators(g17)
    d17 = splice_from_resolution(g17)
    for w in d17.leaves:
        order = group17.element_order(group17.generator(w))
        assert leaf_knot_order(g17, w) == order
    group90 = leaf_generators(g90)
    for w in splice_from_resolution(g90).leaves:
        order = group90.element_order(group90.generator(w))
        assert leaf_knot_order(g90, w) == 90 // leaf_ideal_generator(
            splice_from_resolution(g90), w
        ) == order


def test_end_node_reduce_g1(g1):
    d = splice_from_resolution(g1)
    assert is_end_node(d, "nR")
    result = end_node_reduce(d, "nR", mode="normalized", det=1)
    assert result.ok
    reduced = result.diagram
    assert dict(reduced.weights) == {
        ("nL", "ul"): 2, ("nL", "ll"): 3, ("nL", result.new_leaf): 17,
    }
    raw = end_node_reduce(d, "nR", mode="raw").diagram
    assert dict(raw.weights) == dict(reduced.weights)

    g_tilde, d_tilde = end_node_reduce_graph(g1, "nR")
    assert graph_determinant(g_tilde) == 11  # the old weight toward the rest
    assert dict(d_tilde.weights) == {
        ("nL", "ul"): 2, ("nL", "ll"): 3, ("nL", "mid"): 17,
    }


def test_end_node_reduce_degenerate(star):
    d = splice_from_resolution(star)
    result = end_node_reduce(d, "c")
    assert result.diagram is not None
    assert result.diagram.ids == () and result.diagram.edges == ()


def test_end_node_reduce_errors(g1, star):
    d = splice_from_resolution(g1)
    with pytest.raises(NotEndNode):
        end_node_reduce(d, "ul")
    with pytest.raises(ValueError):
        end_node_reduce(d, "nR", mode="normalized")
    with pytest.raises(NotEndNode):
        end_node_reduce_graph(star, "c")


def test_end_node_reduce_nonintegral_reported(g1):
    # a divisor that does not match the diagram: the raw weight 17 is not
    # divisible, so the problem is recorded instead of raised
    d = splice_from_resolution(g1)
    result = end_node_reduce(d, "nR", mode="normalized", det=7)
    assert not result.ok and result.diagram is None
    problem = result.problems[0]
    assert (problem.at, problem.raw, problem.divisor) == ("nL", 17, 7)


def test_graph_and_diagram_reduction_agree(two_node_corpus):
    for g in two_node_corpus[:20]:
        d = splice_from_resolution(g)
        det = graph_determinant(g)
        for v_star in d.nodes:
            if not is_end_node(d, v_star):
                continue
            result = end_node_reduce(d, v_star, mode="normalized", det=det)
            assert result.ok, (v_star, result.problems)
            g_tilde, d_tilde = end_node_reduce_graph(g, v_star)
            got = sorted(result.diagram.weights.values())
            want = sorted(d_tilde.weights.values())
            assert got == want


def test_extremal_string_lemma(g1, g17, g90, small_trees):
    for g in [g1, g17, g90, *small_trees]:
        d = splice_from_resolution(g)
        det = graph_determinant(g)
        for v in d.nodes:
            for w in d.adjacency[v]:
                if not d.is_leaf(w):
                    continue
                chain = list(d.strings[(v, w)]) + [w]
                cf = continued_fraction_of_string([g.weight_of(x) for x in chain])
                g0 = induced_subgraph(g, [x for x in g.ids if x not in chain])
                n_other = d.weight_product(v) // d.weights[(v, w)]
                base = determinant(negated_intersection_matrix(g0))
                assert det == cf.numerator * base - n_other * cf.denominator


def test_leaf_end_weight_lemma(g1, g17, g90, small_trees):
    for g in [g1, g17, g90, *small_trees]:
        d = splice_from_resolution(g)
        dmax = maximal_splice(g)
        det = graph_determinant(g)
        for v in d.nodes:
            for w in d.adjacency[v]:
                if not d.is_leaf(w):
                    continue
                chain = list(d.strings[(v, w)]) + [w]
                n = continued_fraction_of_string(
                    [g.weight_of(x) for x in chain]
                ).numerator
                p_prime = (
                    continued_fraction_of_string(
                        [g.weight_of(x) for x in chain[:-1]]
                    ).numerator
                    if len(chain) > 1
                    else 1
                )
                n_other = d.weight_product(v) // d.weights[(v, w)]
                leaf_weight = dmax.weights[(w, g.adjacency[w][0])]
                assert leaf_weight * n == p_prime * det + n_other


def test_reduction_weight_lemma(two_node_corpus, g1):
    # a*det(trimmed) - a~*det = (other weights at v) * (leaf weights at the
    # end-node) * (reduced linking)^2, for every surviving node
    for g in [g1, *two_node_corpus[:15]]:
        d = splice_from_resolution(g)
        det = graph_determinant(g)
        for v_star in d.nodes:
            if not is_end_node(d, v_star):
                continue
            central = [x for x in d.adjacency[v_star] if not d.is_leaf(x)][0]
            g_tilde, d_tilde = end_node_reduce_graph(g, v_star)
            r = graph_determinant(g_tilde)
            assert r == d.weights[(v_star, central)]  # trimmed det = old weight
            n_prod = d.weight_product(v_star) // r
            new_leaf = [x for x in d_tilde.leaves if x not in d.index or not d.is_leaf(x)]
            assert len(new_leaf) == 1
            for v in d_tilde.nodes:
                a = d.weights[(v, d.path(v, v_star)[1])]
                a_tilde = d_tilde.weights[(v, d_tilde.path(v, new_leaf[0])[1])]
                m_prod = d.weight_product(v) // a
                lp = linking_numbers(d, v, v_star)[1]
                assert a * r - a_tilde * det == m_prod * n_prod * lp * lp


def test_splice_invariant_under_blow_up(small_trees, random_trees, g90):
    for g in [g90, *small_trees, *random_trees[:30]]:
        d = splice_from_resolution(g)
        det = graph_determinant(g)
        for edge in g.edges:
            g2 = blow_up_edge(g, edge)
            assert splice_from_resolution(g2) == d
            assert graph_determinant(g2) == det
