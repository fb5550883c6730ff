from collatz_branching import core
from collatz_branching.class_graph import (
    build_class_graph,
    row_support,
    steps_to_branching,
    transformation_matrix,
    verify_flow_to_branching,
)

import oracles


def test_doubling_edges_cover_all_classes():
    g = build_class_graph()
    assert len(g.nodes) == 18
    assert all(g.double_edges[r] == 2 * r % 18 for r in g.nodes)


def test_doubling_walks():
    g = build_class_graph()
    assert g.doubling_walk(4) == [4, 8, 16]
    assert g.doubling_walk(16) == [16, 14, 10, 2, 4]


def test_p_vectors_from_graph_match_core():
    assert build_class_graph().p_vectors() == core.derive_p_vectors()


def test_contract_edges():
    g = build_class_graph()
    assert [e.source for e in g.contract_edges] == [4] * 3 + [10] * 3 + [16] * 3
    # class 10 contracts to multiples of 3, which never double into a branching class
    assert all(e.dashed == (e.source == 10) for e in g.contract_edges)
    assert g.odd_targets() == [1, 5, 7, 11, 13, 17]
    for e in g.contract_edges:
        assert (e.subclass - 1) // 3 % 18 == e.target


def test_dot_output():
    dot = build_class_graph().to_dot()
    assert dot.startswith("digraph classes {")
    assert dot.count("color=blue") == 18
    assert dot.count("style=dashed") == 3
    assert "[40]_54 p2" in dot


def test_transformation_matrix_matches_brute_force():
    m = transformation_matrix(300)
    brute = [[0] * 6 for _ in range(6)]
    for n in oracles.branching_upto(54 * 300):
        i = core.R6.index(n % 54)
        j = core.R6.index(oracles.rightward_by_doubling(n) % 54)
        brute[i][j] = 1
    assert [list(r) for r in m] == brute


def test_transformation_support():
    m = transformation_matrix()
    assert row_support(m, 4) == {4, 22, 40}
    assert row_support(m, 52) == {16, 34, 52}
    # every row reaches exactly one u2 class, in each of its three lifts
    assert all(sum(row) == 3 for row in m)


def test_flow_to_branching():
    r = verify_flow_to_branching(100)
    assert r.ok and r.max_steps == 8 and r.worst == 96
    assert steps_to_branching(4, 10) == 0
    assert steps_to_branching(27, 0) is None
