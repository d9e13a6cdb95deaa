import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linarb.graph import (
    BadHeader,
    BadVertexIndex,
    ContractError,
    DuplicateEdge,
    GraphFormatError,
    JournalError,
    MutableGraph,
    SelfLoop,
    parse_graph,
    write_graph,
)

TRIANGLE = "p 3 3\ne 1 2\ne 2 3\ne 1 3\n"


def build(n, edges, t=3):
    g = MutableGraph(n, t)
    for u, v in edges:
        g.add_edge(u - 1, v - 1)
    return g


def unwind(g):
    """Undo every journaled mutation, newest first."""
    while g.journal:
        entry = g.journal[-1]
        if entry[0] == "E":
            g.restore_edge(entry[1])
        else:
            g.split(entry[1], entry[2])


# ----------------------------------------------------------------------
# parsing and writing


def test_parse_triangle():
    g = parse_graph(TRIANGLE)
    assert g.n == 3 and g.m_alive == 3
    assert g.deg == [2, 2, 2]
    assert g.find_edge(0, 2) is not None


def test_parse_skips_comments_and_blank_lines():
    g = parse_graph("c a triangle\n\np 3 3\nc mid comment\ne 1 2\ne 2 3\ne 1 3\n")
    assert g.m_alive == 3


def test_write_is_canonical_and_round_trips():
    g = parse_graph("p 4 3\ne 2 1\ne 4 3\ne 3 1\n")
    text = write_graph(g, comments=["demo"])
    assert text == "c demo\np 4 3\ne 1 2\ne 3 4\ne 1 3\n"
    again = parse_graph(text)
    assert again.snapshot()[0] == g.snapshot()[0]


def test_parse_empty_graph():
    g = parse_graph("p 0 0\n")
    assert g.n == 0 and g.m_alive == 0
    assert g.find_pivot_edge() is None


@pytest.mark.parametrize(
    "text,err",
    [
        ("", BadHeader),
        ("e 1 2\n", BadHeader),
        ("p 3 3\np 3 3\n", BadHeader),
        ("p 3\n", BadHeader),
        ("p x y\n", BadHeader),
        ("p -1 0\n", BadHeader),
        ("p 3 2\ne 1 2\n", BadHeader),  # header/edge-count mismatch
        ("p 3 1\ne 1 2 3\n", GraphFormatError),
        ("p 3 1\ne 1 z\n", GraphFormatError),
        ("p 3 1\ne 1 4\n", BadVertexIndex),
        ("p 3 1\ne 0 1\n", BadVertexIndex),
        ("p 3 2\ne 1 2\ne 2 1\n", DuplicateEdge),
        ("p 3 1\ne 2 2\n", SelfLoop),
        ("p 3 1\nq 1 2\n", GraphFormatError),
    ],
)
def test_parse_rejects(text, err):
    with pytest.raises(err):
        parse_graph(text)


def test_add_edge_rejects_bad_endpoints():
    g = MutableGraph(3)
    with pytest.raises(SelfLoop):
        g.add_edge(1, 1)
    with pytest.raises(BadVertexIndex):
        g.add_edge(0, 3)


# ----------------------------------------------------------------------
# pivots watchlist


def test_star_center_is_the_pivot():
    # K_{1,7}: the center has no neighbor of degree > 3, so it pivots
    g = build(8, [(1, i) for i in range(2, 9)])
    assert list(g.pivots) == [0]
    v, u, e = g.find_pivot_edge()
    assert v == 0 and g.deg[u] == 1 and g.edge_other(e, v) == u


def test_pivot_gone_after_peeling_star():
    g = build(8, [(1, i) for i in range(2, 9)])
    while g.m_alive:
        v, u, e = g.find_pivot_edge()
        g.remove_edge(e)
    assert g.find_pivot_edge() is None
    g.check_counters()


def test_high_degree_core_has_no_pivot():
    # K5 at threshold 3: everyone has 4 neighbors of degree 4 > 3
    g = build(5, [(a, b) for a in range(1, 6) for b in range(a + 1, 6)])
    assert len(g.pivots) == 0
    assert g.find_pivot_edge() is None


def test_set_low_threshold_retargets():
    g = build(4, [(1, 2), (1, 3), (1, 4), (2, 3)])
    g.set_low_threshold(2)
    g.check_counters()
    fresh = build(4, [(1, 2), (1, 3), (1, 4), (2, 3)], t=2)
    assert g.deg_low == fresh.deg_low
    assert set(g.pivots) == set(fresh.pivots)
    g.remove_edge(0)
    with pytest.raises(ContractError):
        g.set_low_threshold(3)


def test_extra_watchlist_tracks_predicate():
    g = build(3, [(1, 2), (2, 3)])
    isolated = g.add_watchlist(lambda d, dl: d == 0)
    assert len(isolated) == 0
    g.remove_edge(0)
    g.remove_edge(1)
    assert set(isolated) == {0, 1, 2}


# ----------------------------------------------------------------------
# mutation and undo


def test_remove_restore_is_involution():
    g = parse_graph(TRIANGLE)
    snaps = [g.snapshot()]
    for e in (1, 0, 2):
        g.remove_edge(e)
        g.check_counters()
        snaps.append(g.snapshot())
    for e in (2, 0, 1):
        assert g.snapshot() == snaps.pop()
        g.restore_edge(e)
        g.check_counters()
    assert g.snapshot() == snaps.pop()


def test_restore_out_of_order_raises():
    g = parse_graph(TRIANGLE)
    g.remove_edge(0)
    g.remove_edge(1)
    with pytest.raises(JournalError):
        g.restore_edge(0)
    g.restore_edge(1)
    g.restore_edge(0)
    with pytest.raises(JournalError):
        g.restore_edge(0)


def test_remove_dead_edge_raises():
    g = parse_graph(TRIANGLE)
    g.remove_edge(0)
    with pytest.raises(ContractError):
        g.remove_edge(0)


def test_identify_merges_and_split_restores():
    g = build(4, [(1, 2), (2, 3), (3, 4)])
    before = g.snapshot()
    g.identify(0, 3)  # vertex 4 folds into vertex 1: edge 3-4 becomes 3-1
    g.check_counters()
    assert g.deg[3] == 0 and g.deg[0] == 2
    assert g.find_edge(0, 2) is not None
    g.split(0, 3)
    g.check_counters()
    assert g.snapshot() == before


def test_identify_keeps_node_markings():
    # the incidence node migrates with the edge, carrying its flags
    g = build(4, [(1, 2), (2, 3), (3, 4)])
    nid = g.edge_node(2, 3)
    g.node_special[nid] = True
    g.identify(0, 3)
    assert g.node_special[g.edge_node(2, 0)]
    assert g.edge_node(2, 0) == nid


def test_identify_contract_violations():
    g = build(3, [(1, 2), (2, 3)])
    with pytest.raises(ContractError):  # deg(w) != 1
        g.identify(0, 1)
    with pytest.raises(ContractError):  # would self-loop
        p2 = build(2, [(1, 2)])
        p2.identify(0, 1)
    with pytest.raises(ContractError):  # would create a parallel edge
        g.identify(2, 0)
    big = build(5, [(1, 2), (1, 3), (1, 4), (4, 5)])
    with pytest.raises(ContractError):  # deg(u) > 2
        big.identify(0, 4)


def test_split_out_of_order_raises():
    g = build(4, [(1, 2), (2, 3), (3, 4)])
    g.identify(0, 3)
    g.remove_edge(0)
    with pytest.raises(JournalError):
        g.split(0, 3)
    g.restore_edge(0)
    g.split(0, 3)


def test_interleaved_journal_unwinds_to_start():
    g = build(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (2, 5)])
    before = g.snapshot()
    g.remove_edge(5)
    g.remove_edge(0)  # vertex 1 now has degree 1 toward 5
    g.identify(1, 0)  # fold vertex 1 into vertex 2
    g.check_counters()
    g.remove_edge(4)
    unwind(g)
    g.check_counters()
    assert g.snapshot() == before


# ----------------------------------------------------------------------
# degeneracy


def test_k4_degeneracy_is_three():
    g = build(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
    t, order = g.degeneracy_order()
    assert t == 3
    assert sorted(order) == [0, 1, 2, 3]


def test_degeneracy_order_witnesses_bound():
    g = parse_graph(TRIANGLE)
    t, order = g.degeneracy_order()
    assert t == 2
    pos = {v: i for i, v in enumerate(order)}
    for e in range(len(g.edge_a)):
        a, b = g.edge_a[e], g.edge_b[e]
        first = a if pos[a] < pos[b] else b
        fwd = sum(1 for w, _, _ in g.neighbors(first) if pos[w] > pos[first])
        assert fwd <= t


def test_degeneracy_ignores_dead_edges():
    g = build(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
    g.remove_edge(5)  # K4 minus an edge is 2-degenerate
    t, _ = g.degeneracy_order()
    assert t == 2


# ----------------------------------------------------------------------
# randomized storms (counters must never drift, undo must be exact)


@st.composite
def small_graph_edges(draw):
    n = draw(st.integers(min_value=2, max_value=9))
    possible = [(a, b) for a in range(n) for b in range(a + 1, n)]
    edges = draw(st.lists(st.sampled_from(possible), unique=True, max_size=len(possible)))
    return n, edges


@given(small_graph_edges(), st.data())
@settings(max_examples=60, deadline=None)
def test_mutation_storm_counters_and_undo(ne, data):
    n, edges = ne
    g = MutableGraph(n, 3)
    for a, b in edges:
        g.add_edge(a, b)
    g.check_counters()
    before = g.snapshot()
    steps = data.draw(st.integers(min_value=0, max_value=12))
    for _ in range(steps):
        alive = [e for e in range(len(g.edge_a)) if g.edge_alive[e]]
        ones = [v for v in range(n) if g.deg[v] == 1]
        did = False
        if ones and data.draw(st.booleans()):
            w = data.draw(st.sampled_from(ones))
            y = next(g.neighbors(w))[0]
            hosts = [
                u
                for u in range(n)
                if u != w and u != y and g.deg[u] <= 2 and g.find_edge(u, y) is None
            ]
            if hosts:
                g.identify(data.draw(st.sampled_from(hosts)), w)
                did = True
        if not did and alive:
            g.remove_edge(data.draw(st.sampled_from(alive)))
        g.check_counters()
    unwind(g)
    g.check_counters()
    assert g.snapshot() == before


@given(small_graph_edges())
@settings(max_examples=60, deadline=None)
def test_degeneracy_matches_networkx_core_number(ne):
    nx = pytest.importorskip("networkx")
    n, edges = ne
    g = MutableGraph(n, 3)
    h = nx.Graph()
    h.add_nodes_from(range(n))
    for a, b in edges:
        g.add_edge(a, b)
        h.add_edge(a, b)
    t, _ = g.degeneracy_order()
    expect = max(nx.core_number(h).values()) if n else 0
    assert t == expect
