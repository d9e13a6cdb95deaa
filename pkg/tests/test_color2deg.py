import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from linarb.color2deg import (
    color_2deg_dense,
    color_2deg_high,
    color_bipartite_2deg,
    color_partial2tree,
    find_configuration,
    hamiltonian_path_from,
)
from linarb.graph import ContractError, MutableGraph
from linarb.state import LinearColoring
from linarb.verify import (
    class_checks,
    count_mono_and_pairs,
    exists_k_linear,
    verify_linear_coloring,
)


def build(n, edges):
    g = MutableGraph(n)
    for u, v in edges:
        g.add_edge(u - 1, v - 1)
    return g


def cycle(n):
    return build(n, [(i + 1, (i + 1) % n + 1) for i in range(n)])


K24 = [(1, 3), (1, 4), (1, 5), (1, 6), (2, 3), (2, 4), (2, 5), (2, 6)]

# triangle 1-2-3 grown by three degree-2 additions; edge-maximal, maxdeg 4
MAX6 = [(1, 2), (3, 1), (3, 2), (4, 1), (4, 3), (5, 2), (5, 3), (6, 4), (6, 1)]

K4 = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]


def checked_dense(g, debug=True):
    coloring, mono = color_2deg_dense(g, debug=debug)
    report = verify_linear_coloring(g, coloring.colors, coloring.k)
    assert report.valid, report
    again, _ = count_mono_and_pairs(g, coloring.colors)
    assert again == mono
    return coloring, mono


# ----------------------------------------------------------------------
# high color count track


def test_high_track_rejects_two_colors():
    with pytest.raises(ValueError, match="at least 3 colors"):
        color_2deg_high(build(6, K24))  # maxdeg 4 defaults to k=2


def test_high_track_rejects_higher_degeneracy():
    with pytest.raises(ValueError, match="handles at most 2"):
        color_2deg_high(build(4, K4), k=3)


def test_high_track_rejects_starved_budget():
    star = build(8, [(1, i) for i in range(2, 9)])
    with pytest.raises(ValueError, match="cannot cover"):
        color_2deg_high(star, k=3)


def test_k24_with_three_colors():
    g = build(6, K24)
    out = color_2deg_high(g, k=3, debug=True)
    assert verify_linear_coloring(g, out.colors, out.k).valid
    assert out.colors == [3, 2, 1, 1, 3, 1, 2, 2]


def test_default_budget_is_half_maxdeg_rounded_up():
    g = build(8, [(1, i) for i in range(2, 8)] + [(7, 8)])  # maxdeg 6
    out = color_2deg_high(g, debug=True)
    assert out.k == 3
    assert verify_linear_coloring(g, out.colors, out.k).valid


def test_high_track_optimal_on_a_degree_five_star_with_tail():
    edges = [(1, i) for i in range(2, 7)] + [(6, 7), (7, 8)]
    g = build(8, edges)
    out = color_2deg_high(g, debug=True)
    assert out.k == 3
    assert verify_linear_coloring(g, out.colors, out.k).valid
    assert exists_k_linear(g, 2) is None  # three colors were necessary


def random_2deg(n, dmax, seed):
    rng = random.Random(seed)
    g = MutableGraph(n)
    for v in range(1, n):
        avail = [u for u in range(v) if g.deg[u] < dmax]
        rng.shuffle(avail)
        for u in avail[: min(len(avail), 1 + rng.randrange(2))]:
            g.add_edge(u, v)
    return g


@pytest.mark.parametrize("seed", range(8))
def test_high_track_random_graphs(seed):
    g = random_2deg(40 + seed, 5 + seed % 4, seed)
    out = color_2deg_high(g, k=max(3, (max(g.deg) + 1) // 2), debug=True)
    assert verify_linear_coloring(g, out.colors, out.k).valid


def test_high_track_is_deterministic():
    a = color_2deg_high(random_2deg(60, 6, 5)).colors
    b = color_2deg_high(random_2deg(60, 6, 5)).colors
    assert a == b


# ----------------------------------------------------------------------
# dense two-color track


def test_even_cycle_alternates():
    coloring, mono = checked_dense(cycle(6))
    assert mono == []
    assert coloring.colors == [1, 2, 1, 2, 1, 2]


def test_odd_cycle_needs_one_doubling():
    coloring, mono = checked_dense(cycle(5))
    assert mono == [0]
    assert coloring.colors == [1, 2, 1, 2, 1]


def test_triangle_is_the_smallest_odd_cycle():
    _, mono = checked_dense(cycle(3))
    assert mono == [0]


def test_two_odd_cycles_are_refused():
    g = build(6, [(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)])
    with pytest.raises(ValueError, match="more than one odd cycle"):
        color_2deg_dense(g)


def test_sparse_high_degree_input_is_refused():
    path = build(6, [(i, i + 1) for i in range(1, 6)] + [(1, 3)])
    with pytest.raises(ValueError, match="too sparse"):
        color_2deg_dense(path)


def test_dense_rejects_degree_five():
    g = build(7, [(1, i) for i in range(2, 7)] + [(2, 3), (4, 5), (6, 7), (2, 7), (3, 7)])
    assert max(g.deg) == 5
    with pytest.raises(ValueError, match="exceeds 4"):
        color_2deg_dense(g)


def test_dense_rejects_higher_degeneracy():
    with pytest.raises(ValueError, match="handles at most 2"):
        color_2deg_dense(build(4, K4))


def test_maximal_six_vertices_has_a_hamiltonian_color_class():
    g = build(6, MAX6)
    coloring, mono = checked_dense(g)
    assert mono == []
    assert hamiltonian_path_from(g, coloring) == [4, 1, 2, 0, 3, 5]


def test_one_mono_on_a_dense_near_maximal_graph():
    # drop one edge from MAX6: still |E| >= 2n - 5
    g = build(6, MAX6[:-1])
    _, mono = checked_dense(g)
    assert len(mono) <= 1


def test_recoloring_a_colored_graph_is_refused():
    g = cycle(6)
    color_2deg_dense(g)
    with pytest.raises(ValueError, match="already carries"):
        color_2deg_dense(g)


# ----------------------------------------------------------------------
# hamiltonian path extraction


def test_ham_path_rejects_wide_palettes():
    g = build(6, MAX6)
    out = color_2deg_high(g, k=3)
    with pytest.raises(ValueError, match="two-color"):
        hamiltonian_path_from(g, out)


def test_ham_path_rejects_non_maximal_input():
    g = cycle(6)
    coloring, _ = color_2deg_dense(g)
    with pytest.raises(ValueError, match="edge-maximal"):
        hamiltonian_path_from(g, coloring)


def test_ham_path_rejects_a_cycle_class():
    # a doctored coloring whose 5-edge count lands on the triangle side
    g = build(4, [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4)])
    fake = LinearColoring(k=2, colors=[1, 1, 1, 2, 2])
    with pytest.raises(ContractError, match="path ends"):
        hamiltonian_path_from(g, fake)


# ----------------------------------------------------------------------
# bipartite track


def test_k24_bipartite_has_no_doubling():
    g = build(6, K24)
    coloring, mono = color_bipartite_2deg(g, debug=True)
    assert verify_linear_coloring(g, coloring.colors, coloring.k).valid
    assert mono == []
    assert coloring.colors == [2, 1, 1, 2, 1, 2, 2, 1]


def test_even_cycle_bipartite():
    g = cycle(8)
    _, mono = color_bipartite_2deg(g, debug=True)
    assert mono == []


def test_odd_cycle_is_not_bipartite():
    with pytest.raises(ValueError, match="bipartite"):
        color_bipartite_2deg(cycle(5))


def test_subdivided_k4_has_no_doubling():
    base = build(4, K4)
    g = MutableGraph(10)
    for e in range(6):
        mid = 4 + e
        g.add_edge(base.edge_a[e], mid)
        g.add_edge(mid, base.edge_b[e])
    coloring, mono = color_bipartite_2deg(g, debug=True)
    assert verify_linear_coloring(g, coloring.colors, coloring.k).valid
    assert mono == []


# ----------------------------------------------------------------------
# partial 2-tree track and pair constraints


def test_triangle_with_no_pairs():
    coloring, mono = color_partial2tree(cycle(3), debug=True)
    assert coloring.k == 2 and len(mono) <= 1


def test_square_with_opposite_pair_alternates():
    g = cycle(4)
    coloring, mono = color_partial2tree(g, pairs=[(0, 2)], debug=True)
    assert mono == []
    assert coloring.colors == [1, 2, 1, 2]


def test_pair_on_a_high_degree_vertex_is_refused():
    g = build(6, MAX6)
    with pytest.raises(ContractError, match="degree"):
        color_partial2tree(g, pairs=[(0, 5)])


def test_overlapping_pairs_are_refused():
    g = cycle(6)
    with pytest.raises(ContractError, match="two pairs"):
        color_partial2tree(g, pairs=[(0, 2), (2, 4)])


def test_p2tree_rejects_degree_five():
    g = build(7, [(1, i) for i in range(2, 7)] + [(6, 7)])
    with pytest.raises(ValueError, match="exceeds 4"):
        color_partial2tree(g)


def test_p2tree_rejects_k4():
    with pytest.raises(ValueError, match="not a partial 2-tree"):
        color_partial2tree(build(4, K4))


def test_every_deg2_vertex_paired_on_a_fan():
    # fan: path 1-2-3-4 plus an apex joined to all four; maxdeg 4
    g = build(5, [(1, 2), (2, 3), (3, 4), (5, 1), (5, 2), (5, 3), (5, 4)])
    pairs = [(0, 3)]  # the two path ends have degree 2
    coloring, mono = color_partial2tree(g, pairs=pairs, debug=True)
    assert verify_linear_coloring(g, coloring.colors, coloring.k).valid
    _, ok = count_mono_and_pairs(g, coloring.colors, pairs)
    assert ok


def all_pairings(rng, g):
    deg2 = [v for v in range(g.n) if g.deg[v] == 2]
    rng.shuffle(deg2)
    return [(deg2[2 * i], deg2[2 * i + 1]) for i in range(len(deg2) // 2)]


@pytest.mark.parametrize("seed", range(10))
def test_random_p2trees_satisfy_maximal_pairings(seed):
    rng = random.Random(seed)
    g = grow_p2tree(30 + 7 * seed, rng)
    pairs = all_pairings(rng, g)
    coloring, mono = color_partial2tree(g, pairs=pairs, debug=True)
    assert verify_linear_coloring(g, coloring.colors, coloring.k).valid
    again, ok = count_mono_and_pairs(g, coloring.colors, pairs)
    assert again == mono and ok


def grow_p2tree(n, rng):
    g = MutableGraph(n)
    g.add_edge(0, 1)
    g.add_edge(0, 2)
    g.add_edge(1, 2)
    for i in range(3, n):
        low = [e for e in range(len(g.edge_a)) if g.deg[g.edge_a[e]] <= 3 and g.deg[g.edge_b[e]] <= 3]
        if low and rng.random() < 0.8:
            e = rng.choice(low)
            g.add_edge(g.edge_a[e], i)
            g.add_edge(g.edge_b[e], i)
        else:
            g.add_edge(rng.choice([v for v in range(i) if g.deg[v] <= 3]), i)
    return g


# ----------------------------------------------------------------------
# configuration finder


def test_configurations_on_the_reference_shapes():
    assert find_configuration(cycle(4)) == ("c", (0, 2, 1, 3))
    assert find_configuration(build(3, [(1, 2), (2, 3)])) == ("a", (0,))
    assert find_configuration(build(4, K4)) is None


# ----------------------------------------------------------------------
# property sweeps


@st.composite
def sparse_graph_edges(draw):
    n = draw(st.integers(min_value=1, max_value=9))
    possible = [(a, b) for a in range(n) for b in range(a + 1, n)]
    if not possible:
        return n, []
    edges = draw(st.lists(st.sampled_from(possible), unique=True, max_size=len(possible)))
    return n, edges


@given(sparse_graph_edges())
@settings(max_examples=200, deadline=None)
def test_dense_guarantee_on_arbitrary_small_inputs(ne):
    n, edges = ne
    g = MutableGraph(n)
    for a, b in edges:
        g.add_edge(a, b)
    t, _ = g.degeneracy_order()
    assume(t <= 2 and max(g.deg, default=0) <= 4)
    try:
        coloring, mono = color_2deg_dense(g, debug=True)
    except ValueError:
        assume(False)
    assert verify_linear_coloring(g, coloring.colors, coloring.k).valid
    assert len(mono) <= 1


@given(sparse_graph_edges())
@settings(max_examples=200, deadline=None)
def test_bipartite_guarantee_on_arbitrary_small_inputs(ne):
    n, edges = ne
    g = MutableGraph(n)
    for a, b in edges:
        g.add_edge(a, b)
    t, _ = g.degeneracy_order()
    ok = t <= 2 and max(g.deg, default=0) <= 4 and class_checks(g).is_bipartite
    assume(ok)
    coloring, mono = color_bipartite_2deg(g, debug=True)
    assert verify_linear_coloring(g, coloring.colors, coloring.k).valid
    assert mono == []
