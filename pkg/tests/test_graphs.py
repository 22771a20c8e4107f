"""Threshold-graph representation, recognition, and named constructions."""

import itertools

import pytest

from quasistar.graphs import (
    DOMINATING,
    ISOLATED,
    LabeledGraph,
    NotThresholdError,
    complete_graph,
    empty_graph,
    ferrers_matrix,
    format_edge_list,
    from_creation_sequence,
    from_degree_sequence,
    graph_join,
    graph_union,
    is_stepwise,
    is_threshold,
    is_threshold_by_ferrers,
    is_threshold_by_forbidden_subgraphs,
    l_graph,
    parse_creation,
    parse_edge_list,
    quasi_star,
    split_params,
    threshold_from_labeled,
    tilde_s,
    to_labeled,
)

PLUS, FILLED, EMPTY = "+", "*", "."


def edges(g: LabeledGraph):
    return set(g.edges)


def all_creation_sequences(n):
    for tail in itertools.product((ISOLATED, DOMINATING), repeat=n - 1):
        yield from_creation_sequence((ISOLATED,) + tail)


# ---------------------------------------------------------------------------
# Creation sequences
# ---------------------------------------------------------------------------

def test_single_vertex():
    g = from_creation_sequence("I")
    assert g.n == 1 and g.m == 0 and g.is_connected


def test_k5_plus_isolated_vertex():
    g = from_creation_sequence("IDDDDI")
    assert g.m == 10
    assert not g.is_connected
    assert g.degree_sequence() == (4, 4, 4, 4, 4, 0)
    lab = to_labeled(g)
    comps = lab.components()
    assert sorted(len(c) for c in comps) == [1, 5]


def test_star_from_sequence():
    g = from_creation_sequence("IIIIID")
    assert g.degree_sequence() == (5, 1, 1, 1, 1, 1)


def test_creation_sequence_errors():
    with pytest.raises(ValueError):
        from_creation_sequence("")
    with pytest.raises(ValueError):
        from_creation_sequence("DII")
    with pytest.raises(ValueError):
        from_creation_sequence("IXD")


def test_edge_count_matches_dominating_positions():
    for g in all_creation_sequences(7):
        expect = sum(i for i, s in enumerate(g.creation) if s == DOMINATING)
        assert g.m == expect == to_labeled(g).m


# ---------------------------------------------------------------------------
# Degree-descending labeling and the stepwise property
# ---------------------------------------------------------------------------

def test_to_labeled_quasi_star_6_9():
    lab = to_labeled(quasi_star(6, 9))
    assert edges(lab) == {(1, 2), (1, 3), (1, 4), (1, 5), (1, 6),
                          (2, 3), (2, 4), (2, 5), (2, 6)}


def test_to_labeled_quasi_star_6_10():
    lab = to_labeled(quasi_star(6, 10))
    assert edges(lab) == {(1, 2), (1, 3), (1, 4), (1, 5), (1, 6),
                          (2, 3), (2, 4), (2, 5), (2, 6), (3, 4)}


def test_to_labeled_single_vertex():
    assert edges(to_labeled(from_creation_sequence("I"))) == set()


def test_stepwise_property_all_n7():
    for g in all_creation_sequences(7):
        lab = to_labeled(g)
        assert is_stepwise(lab)
        degs = lab.degrees()
        assert all(degs[i] >= degs[i + 1] for i in range(lab.n - 1))


def test_is_stepwise_rejects_bad_labelings():
    # Path 1-2-3 labeled with the center last is not stepwise.
    assert not is_stepwise(LabeledGraph.from_edges(3, [(1, 3), (2, 3)]))
    assert is_stepwise(LabeledGraph.from_edges(3, [(1, 2), (1, 3)]))


# ---------------------------------------------------------------------------
# Recognition: peel reduction, forbidden subgraphs, Ferrers symmetry
# ---------------------------------------------------------------------------

G_6_9_EDGES = [(1, 2), (1, 3), (1, 4), (1, 5), (3, 4), (1, 6), (2, 6), (2, 3), (2, 5)]


def test_is_threshold_examples():
    assert is_threshold(to_labeled(quasi_star(6, 9)))
    assert not is_threshold(LabeledGraph.from_edges(6, G_6_9_EDGES))
    c4 = LabeledGraph.from_edges(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
    assert not is_threshold(c4)
    p4 = LabeledGraph.from_edges(4, [(1, 2), (2, 3), (3, 4)])
    assert not is_threshold(p4)
    two_k2 = LabeledGraph.from_edges(4, [(1, 2), (3, 4)])
    assert not is_threshold(two_k2)


def test_three_recognizers_agree_on_all_graphs_n5():
    # Every labeled graph on 5 vertices: the three criteria must agree.
    pairs = list(itertools.combinations(range(1, 6), 2))
    for mask in range(1 << len(pairs)):
        g = LabeledGraph.from_edges(5, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])
        a = is_threshold(g)
        b = is_threshold_by_forbidden_subgraphs(g)
        c = is_threshold_by_ferrers(g)
        assert a == b == c, f"criteria disagree on mask {mask}: {a} {b} {c}"


def test_every_threshold_graph_passes_all_recognizers():
    for g in all_creation_sequences(7):
        lab = to_labeled(g)
        assert is_threshold(lab)
        assert is_threshold_by_ferrers(lab)


# ---------------------------------------------------------------------------
# Canonical form and degree sequences
# ---------------------------------------------------------------------------

def test_creation_sequences_are_canonical_and_distinct():
    # Distinct sequences give structurally distinct graphs, and peeling the
    # labeled graph recovers exactly the sequence it was built from.
    for n in range(1, 8):
        seen_degree_seqs = set()
        for g in all_creation_sequences(max(n, 1)):
            assert threshold_from_labeled(to_labeled(g)) == g
            seen_degree_seqs.add(g.degree_sequence())
        assert len(seen_degree_seqs) == 2 ** (max(n, 1) - 1)


def test_connected_count_is_half():
    for n in range(2, 9):
        graphs = list(all_creation_sequences(n))
        connected = [g for g in graphs if g.is_connected]
        assert len(graphs) == 2 ** (n - 1)
        assert len(connected) == 2 ** (n - 2)
        assert all(g.creation[-1] == DOMINATING for g in connected)


def test_from_degree_sequence_round_trip():
    for g in all_creation_sequences(7):
        assert from_degree_sequence(g.degree_sequence()) == g


def test_from_degree_sequence_examples():
    assert from_degree_sequence((5, 5, 2, 2, 2, 2)) == quasi_star(6, 9)
    assert from_degree_sequence((4,) * 5) == from_creation_sequence("IDDDD")  # K_5
    assert from_degree_sequence((2, 1, 1)) == from_creation_sequence("IID")  # P_3


def test_from_degree_sequence_failures_report_step():
    with pytest.raises(NotThresholdError) as err:
        from_degree_sequence((2, 2, 2, 2))  # C_4 degrees
    assert "stuck" in str(err.value)
    with pytest.raises(ValueError):
        from_degree_sequence((1, 2, 1))  # not non-increasing
    with pytest.raises(NotThresholdError):
        from_degree_sequence((5, 1, 1))  # out of range


# ---------------------------------------------------------------------------
# Split parameters
# ---------------------------------------------------------------------------

def test_split_params_examples():
    sp = split_params(6, 10)
    assert (sp.k, sp.a, sp.kbar, sp.abar) == (2, 1, 3, 2)
    for n in (5, 9, 30):
        sp = split_params(n, n - 1)
        assert (sp.k, sp.a) == (1, 0)
        assert (sp.kbar, sp.abar) == (1, 0)
    sp = split_params(6, 15)
    assert (sp.k, sp.a) == (5, 0)


def test_split_params_reconstruction():
    for n in range(2, 12):
        for m in range(n - 1, n * (n - 1) // 2 + 1):
            sp = split_params(n, m)
            used = sum(n - i for i in range(1, sp.k + 1))
            assert used + sp.a == m
            assert 0 <= sp.abar <= sp.kbar - 1
            assert sp.kbar * (sp.kbar - 1) // 2 + sp.abar == m - n + 1
            if sp.a > 0:
                assert sp.a < n - sp.k - 1


def test_split_params_range_errors():
    with pytest.raises(ValueError):
        split_params(6, 2)
    with pytest.raises(ValueError):
        split_params(6, 16)


# ---------------------------------------------------------------------------
# Named families
# ---------------------------------------------------------------------------

def test_quasi_star_examples():
    assert quasi_star(6, 5).degree_sequence() == (5, 1, 1, 1, 1, 1)  # star
    # degree profile: k full vertices, star center k+a, a leaves k+1, rest k
    g = quasi_star(9, 23)
    sp = split_params(9, 23)
    k, a = sp.k, sp.a
    expected = sorted([8] * k + [k + a] + [k + 1] * a + [k] * (9 - a - k - 1), reverse=True)
    assert list(g.degree_sequence()) == expected
    assert quasi_star(6, 15) == from_creation_sequence("IDDDDD")  # complete


def test_l_graph_examples():
    lab = to_labeled(l_graph(6, 10))
    assert edges(lab) == {(1, 2), (1, 3), (1, 4), (1, 5), (1, 6),
                          (2, 3), (2, 4), (2, 5), (3, 4), (3, 5)}
    for n in (5, 8, 12):
        assert l_graph(n, n - 1).degree_sequence() == (n - 1,) + (1,) * (n - 1)


def test_l_graph_equals_tilde_s_at_n_plus_2():
    for n in range(4, 13):
        assert l_graph(n, n + 2) == tilde_s(n, n + 2)


def test_tilde_s_examples():
    g = tilde_s(6, 8)  # K_1 v (K_3 u 2K_1)
    assert g.degree_sequence() == (5, 3, 3, 3, 1, 1)
    with pytest.raises(ValueError):
        tilde_s(7, 8)
    g = tilde_s(24, 48)  # K_2 v (K_3 u 19 K_1)
    assert g.m == 48
    assert g.degree_sequence() == (23, 23, 4, 4, 4) + (2,) * 19


def test_single_vertex_families():
    assert quasi_star(1, 0).text == "I"
    assert l_graph(1, 0).text == "I"


def test_family_members_are_threshold_with_m_edges():
    for n in range(2, 11):
        for m in range(n - 1, n * (n - 1) // 2 + 1):
            for builder in (quasi_star, l_graph):
                g = builder(n, m)
                assert g.m == m and g.is_connected
                assert is_threshold(to_labeled(g))
            try:
                t = tilde_s(n, m)
            except ValueError:
                continue
            assert t.m == m and is_threshold(to_labeled(t))


def test_family_range_errors():
    with pytest.raises(ValueError):
        quasi_star(6, 16)
    with pytest.raises(ValueError):
        l_graph(6, 4)


# ---------------------------------------------------------------------------
# Ferrers matrices
# ---------------------------------------------------------------------------

def test_ferrers_matrix_of_threshold_graph_is_symmetric():
    f = ferrers_matrix(to_labeled(quasi_star(6, 9)))
    expected = [
        "+*****",
        "*+****",
        "**+...",
        "**.+..",
        "**..+.",
        "**...+",
    ]
    assert ["".join(row) for row in f] == expected


def test_ferrers_matrix_of_non_threshold_graph_is_asymmetric():
    f = ferrers_matrix(LabeledGraph.from_edges(6, G_6_9_EDGES))
    expected = [
        "+*****",
        "*+***.",
        "**+*..",
        "**.+..",
        "**..+.",
        "**...+",
    ]
    assert ["".join(row) for row in f] == expected
    assert f[1][5] != f[5][1]


def test_ferrers_matrix_triangle():
    f = ferrers_matrix(complete_graph(3))
    assert ["".join(row) for row in f] == ["+**", "*+*", "**+"]


# ---------------------------------------------------------------------------
# Join and union
# ---------------------------------------------------------------------------

def test_join_makes_star():
    g = graph_join(complete_graph(1), empty_graph(3))
    assert threshold_from_labeled(g) == from_creation_sequence("IIID")


def test_union_k5_k1():
    g = graph_union(complete_graph(5), complete_graph(1))
    assert threshold_from_labeled(g) == from_creation_sequence("IDDDDI")


def test_join_builds_quasi_star_6_10():
    inner = graph_union(complete_graph(2), empty_graph(2))  # K_{1,1} u 2K_1
    g = graph_join(complete_graph(2), inner)
    assert threshold_from_labeled(g) == quasi_star(6, 10)


# ---------------------------------------------------------------------------
# Edge-list text format
# ---------------------------------------------------------------------------

def test_edge_list_round_trip():
    g = to_labeled(quasi_star(6, 10))
    text = format_edge_list(g)
    assert text.splitlines()[0] == "6 10"
    assert parse_edge_list(text) == g


def test_edge_list_parse_errors():
    with pytest.raises(ValueError):
        parse_edge_list("")
    with pytest.raises(ValueError):
        parse_edge_list("2 1\n2 1")  # u < v violated
    with pytest.raises(ValueError):
        parse_edge_list("2 2\n1 2")  # wrong edge count


def test_parse_creation_text():
    assert parse_creation("IDDDDI").text == "IDDDDI"
