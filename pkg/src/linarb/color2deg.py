"""Linear coloring of 2-degenerate graphs, from large palettes down to two.

The drivers here share the peel/replay pattern of the 3-degenerate
module but exploit degeneracy 2, where peeling always finds a vertex
whose neighborhood is almost entirely made of degree-2 vertices.

color_2deg_high works with k >= 3 colors and produces colorings with
no monochromatic vertex at all (a degree-2 vertex whose two edges share
a color).  With only two colors that is impossible in general, so the
two-color drivers instead bound how many monochromatic vertices appear:
color_2deg_dense allows at most one on edge-dense inputs (and on
disjoint unions of paths and cycles), color_bipartite_2deg allows none,
and color_partial2tree takes disjoint degree-2 pairs from the caller
and keeps at least one member of every pair clean.

Beyond the colorings themselves, hamiltonian_path_from extracts the
spanning path that a two-coloring of an edge-maximal instance must
contain, and find_configuration exposes the local structure detector
that drives the partial-2-tree peeling.
"""

from __future__ import annotations

from itertools import product
from typing import Optional

from .color3deg import Hint, _onc_scan, _pick_at
from .graph import ContractError, MutableGraph
from .state import ColoringState, LinearColoring
from .verify import _is_bipartite, validate_pairs

MonoReport = list  # ids of monochromatic vertices, ascending


# ----------------------------------------------------------------------
# many colors: k >= 3, no monochromatic vertices


def color_2deg_high(g: MutableGraph, k: Optional[int] = None, debug: bool = False) -> LinearColoring:
    """Color the alive edges of g into k >= 3 forests of paths.

    k defaults to floor((maxdeg+1)/2), which is only accepted when it
    reaches 3; pass k explicitly for sparser graphs.  Raises ValueError
    if g is not 2-degenerate, if k < 3, or if maxdeg exceeds 2k.
    """
    t, _ = g.degeneracy_order()
    if t > 2:
        raise ValueError(f"graph is {t}-degenerate; this driver handles at most 2")
    dmax = max(g.deg, default=0)
    if k is None:
        k = (dmax + 1) // 2
    if k < 3:
        raise ValueError(f"this driver needs at least 3 colors, got {k}")
    if dmax > 2 * k:
        raise ValueError(f"{k} colors cannot cover maximum degree {dmax}")
    if g.low != 2:
        g.set_low_threshold(2)
    st = ColoringState(g, k, debug=debug)
    events = _peel_high(g, st, k)
    _unwind_high(g, st, events)
    if g.journal:
        raise ContractError("journal not empty after unwinding every event")
    for e in range(len(g.edge_a)):
        if g.edge_alive[e] and g.edge_color[e] == 0:
            raise ContractError(f"edge {e} survived the unwind uncolored")
    return st.coloring()


def _peel_high(g: MutableGraph, st: ColoringState, k: int) -> list[tuple]:
    events: list[tuple] = []
    while True:
        hit = g.find_pivot_edge()
        if hit is None:
            if g.m_alive != 0:
                raise ContractError("no pivot edge although edges remain")
            return events
        v, u, e_uv = hit
        if g.deg[v] < 2 * k:
            g.remove_edge(e_uv)
            events.append(("one", u, v, e_uv))
            continue
        # v is saturated: take two more low neighbors along with u, so
        # that the replay can pay for v's last three edges at once
        w = x = None
        e_vw = e_vx = None
        for nbr, eid, _ in g.neighbors(v):
            if eid == e_uv or g.deg[nbr] > 2:
                continue
            if w is None:
                w, e_vw = nbr, eid
            else:
                x, e_vx = nbr, eid
                break
        if x is None:
            raise ContractError("saturated pivot lacks three low neighbors")
        g.remove_edge(e_uv)
        g.remove_edge(e_vw)
        g.remove_edge(e_vx)
        events.append(("three", u, w, x, v, e_uv, e_vw, e_vx))


def _unwind_high(g: MutableGraph, st: ColoringState, events: list[tuple]) -> None:
    for ev in reversed(events):
        if ev[0] == "one":
            _, u, v, e_uv = ev
            g.restore_edge(e_uv)
            _color_one_of_many(st, u, v, e_uv)
        else:
            _, u, w, x, v, e_uv, e_vw, e_vx = ev
            g.restore_edge(e_vx)
            g.restore_edge(e_vw)
            g.restore_edge(e_uv)
            _color_three_of_many(st, ev)


def _color_one_of_many(st: ColoringState, u: int, v: int, e_uv: int) -> None:
    """v has at most 2k-1 edges back, so a color is free or nearly so."""
    got = st.pick_missing(v)
    if got is not None:
        c, nid = got
        st.assign_color(e_uv, c, hint=("miss", nid))
        return
    # Missing(v) is empty, so v has at most 2(k-1) colored edges spread
    # over k colors and Once(v) holds at least two of them; avoiding the
    # one color u may already carry keeps u's end fuse-free.
    cu = st.low_degree_palette(u)[2]
    got3 = st.onc_first(v, avoid=tuple(cu))
    if got3 is None:
        raise ContractError("pivot palette exhausted in the single-edge case")
    c, _inc, nid = got3
    st.assign_color(e_uv, c, hint=("onc", nid))


def _color_three_of_many(st: ColoringState, ev: tuple) -> None:
    """Replay for a saturated pivot: v regains edges to u, w and x.

    With every color present at v, either three colors appear once each
    (and the three new edges rotate through them, each endpoint placed
    so that its own colored edge never closes a cycle), or one color is
    missing and one appears once (the missing color takes two edges,
    the once color takes the third).
    """
    _, u, w, x, v, e_uv, e_vw, e_vx = ev
    zs = (u, w, x)
    emap = {u: e_uv, w: e_vw, x: e_vx}
    got = st.pick_missing(v)
    if got is None:
        trip = _onc_scan(st, v, 3)
        if len(trip) != 3:
            raise ContractError("saturated pivot should hold exactly three once-colors")
        # pin each endpoint to the slot whose segment ends at it, then
        # hand out the leftover slots in input order, and give every
        # endpoint the color of the slot after its own
        pinned: dict[int, int] = {}
        for z in zs:
            for idx in range(3):
                if st.clean_segment_between(z, trip[idx][1]):
                    pinned[z] = idx
                    break
        if len(set(pinned.values())) != len(pinned):
            raise ContractError("two endpoints pinned to one segment")
        free = iter(i for i in range(3) if i not in pinned.values())
        for z in zs:
            j = (pinned[z] if z in pinned else next(free)) + 1
            c, _inc, nid = trip[j % 3]
            st.assign_color(emap[z], c, hint=("onc", nid))
        return
    a, nid_a = got
    rest = _onc_scan(st, v, 2)
    if len(rest) != 1:
        raise ContractError("saturated pivot should hold one once-color beside the missing one")
    b, inc_b, nid_b = rest[0]
    zeta = _seg_other_end(st, inc_b)[0]
    # two endpoints whose own colored edges lie on one a-colored segment
    # must not both receive color a
    pair = None
    for z in zs:
        once_z = st.low_degree_palette(z)[0]
        inc = once_z.get(a)
        if inc is None:
            continue
        owner = _seg_other_end(st, inc)[0]
        if owner in zs and owner != z:
            pair = (z, owner)
            break
    if pair is not None:
        u1 = next(z for z in zs if z not in pair)
        ordered = [z for z in zs if z in pair]
        w1 = ordered[0] if ordered[0] != zeta else ordered[1]
        x1 = ordered[1] if w1 == ordered[0] else ordered[0]
    else:
        w1 = next(z for z in zs if z != zeta)
        u1, x1 = (z for z in zs if z != w1)
    st.assign_color(emap[u1], a, hint=("miss", nid_a))
    st.assign_color(emap[x1], a, hint=st.hint_for(v, a))
    st.assign_color(emap[w1], b, hint=("onc", nid_b))


# ----------------------------------------------------------------------
# two colors on dense or bipartite inputs


def color_2deg_dense(g: MutableGraph, debug: bool = False) -> tuple[LinearColoring, MonoReport]:
    """Two-color g leaving at most one monochromatic vertex.

    g must be 2-degenerate with maximum degree at most 4 and either
    carry at least 2n-5 edges or have maximum degree at most 2 with at
    most one odd cycle; anything sparser admits two unavoidable
    monochromatic vertices.  Returns (coloring, mono vertex ids).
    """
    t, _ = g.degeneracy_order()
    if t > 2:
        raise ValueError(f"graph is {t}-degenerate; this driver handles at most 2")
    dmax = max(g.deg, default=0)
    if dmax > 4:
        raise ValueError(f"maximum degree {dmax} exceeds 4")
    dense = g.m_alive >= 2 * g.n - 5
    if not dense:
        if dmax > 2:
            raise ValueError(
                f"{g.m_alive} edges on {g.n} vertices is too sparse; need at least {2 * g.n - 5}"
            )
        if _odd_cycle_count(g) > 1:
            raise ValueError("more than one odd cycle forces more than one monochromatic vertex")
    g.set_low_threshold(2)
    st = ColoringState(g, 2, debug=debug)
    events = _peel_two(g, st, bip=False, dense=dense, debug=debug)
    reserved = frozenset(ev[2] for ev in events if ev[0] == "tri")
    _color_leftover_cycles(g, st, bip=False, reserved=reserved)
    _unwind_two(g, st, events, bip=False, reserved=reserved)
    _post_checks(g)
    mono = _mono_vertices(g)
    if len(mono) > 1:
        raise ContractError(f"driver left {len(mono)} monochromatic vertices: {mono}")
    return st.coloring(), mono


def color_bipartite_2deg(g: MutableGraph, debug: bool = False) -> tuple[LinearColoring, MonoReport]:
    """Two-color a bipartite 2-degenerate graph of maximum degree <= 4
    with no monochromatic vertex at all.

    Runs the same engine as color_2deg_dense; every branch that would
    create a monochromatic vertex is unreachable on bipartite inputs
    and raises ContractError if hit.  Returns (coloring, mono ids).
    """
    t, _ = g.degeneracy_order()
    if t > 2:
        raise ValueError(f"graph is {t}-degenerate; this driver handles at most 2")
    dmax = max(g.deg, default=0)
    if dmax > 4:
        raise ValueError(f"maximum degree {dmax} exceeds 4")
    if not _is_bipartite(g):
        raise ValueError("graph has an odd cycle; this driver needs a bipartite input")
    g.set_low_threshold(2)
    st = ColoringState(g, 2, debug=debug)
    events = _peel_two(g, st, bip=True, dense=False, debug=debug)
    _color_leftover_cycles(g, st, bip=True)
    _unwind_two(g, st, events, bip=True)
    _post_checks(g)
    mono = _mono_vertices(g)
    if mono:
        raise ContractError(f"bipartite driver left monochromatic vertices: {mono}")
    return st.coloring(), mono


def _peel_two(g: MutableGraph, st: ColoringState, bip: bool, dense: bool, debug: bool) -> list[tuple]:
    """Peel with three watchlists in strict priority: pendant vertices,
    then degree-3 pivots, then degree-4 pivots.  What survives is a
    disjoint union of cycles handled by _color_leftover_cycles."""
    pend = g.add_watchlist(lambda d, dl: d == 1)
    piv3 = g.add_watchlist(lambda d, dl: d == 3 and d - dl <= 2)
    piv4 = g.add_watchlist(lambda d, dl: d == 4 and d - dl <= 2)
    events: list[tuple] = []
    reserved: set[int] = set()
    while g.m_alive:
        if pend.head != -1:
            u = pend.head
            v, e_uv, _ = next(g.neighbors(u))
            g.remove_edge(e_uv)
            events.append(("pend", u, v, e_uv))
        elif piv3.head != -1:
            v = piv3.head
            u = e_uv = None
            for nbr, eid, _ in g.neighbors(v):
                if g.deg[nbr] <= 2:
                    u, e_uv = nbr, eid
                    break
            if u is None:
                raise ContractError("degree-3 pivot lost its low neighbor")
            e_ux = _other_edge(g, u, e_uv)
            x = g.edge_other(e_ux, u)
            g.remove_edge(e_uv)
            g.remove_edge(e_ux)
            events.append(("piv3", u, v, x, e_uv, e_ux))
        elif piv4.head != -1:
            case = _pick_deg4_case(g, piv4, bip)
            if case[0] == "sq":
                _, v, x, u, w, e_uv, e_wv, e_ux, e_wx = case
                g.remove_edge(e_uv)
                g.remove_edge(e_wv)
                g.remove_edge(e_ux)
                g.remove_edge(e_wx)
                events.append(case)
            elif case[0] == "id2":
                _, v, host, guest, e_hv, e_gv, e_hx, e_gx = case
                g.remove_edge(e_hv)
                g.remove_edge(e_gv)
                nid = g.edge_node(e_gx, guest)
                old_flag = g.node_special[nid]
                g.identify(host, guest)
                st.mark_special(nid, True)
                events.append(("id2", host, guest, v, e_hv, e_gv, e_hx, e_gx, nid, old_flag))
            else:
                _, u, v, w, e_uv, e_uw, e_wv = case
                g.remove_edge(e_uv)
                g.remove_edge(e_uw)
                events.append(case)
        else:
            break
        if debug and dense:
            _assert_density(g)
    return events


def _pick_deg4_case(g: MutableGraph, piv4, bip: bool) -> tuple:
    """Choose what to do around a degree-4 pivot without mutating.

    Scans the pivot list for two non-adjacent degree-2 neighbors u, w:
    a shared far neighbor makes the four-cycle case, distinct ones the
    merge case.  A pivot whose only low pair is adjacent (a triangle)
    is kept as fallback and used when nothing better exists anywhere.
    """
    fallback = None
    for v in piv4:
        lows = []
        for nbr, eid, _ in g.neighbors(v):
            if g.deg[nbr] <= 2:
                e2 = _other_edge(g, nbr, eid)
                lows.append((nbr, eid, g.edge_other(e2, nbr), e2))
        for i in range(len(lows)):
            for j in range(i + 1, len(lows)):
                u, e_uv, xu, e_ux = lows[i]
                w, e_wv, xw, e_wx = lows[j]
                if xu == w:
                    if bip:
                        raise ContractError("triangle inside a bipartite subproblem")
                    if fallback is None:
                        if u > w:
                            u, e_uv, w, e_wv = w, e_wv, u, e_uv
                        fallback = ("tri", u, v, w, e_uv, _other_edge(g, u, e_uv), e_wv)
                    continue
                if u > w:
                    u, e_uv, xu, e_ux, w, e_wv, xw, e_wx = w, e_wv, xw, e_wx, u, e_uv, xu, e_ux
                if xu == xw:
                    if g.deg[xu] == 3:
                        raise ContractError("four-cycle far corner sits at degree 3 despite pivot priority")
                    return ("sq", v, xu, u, w, e_uv, e_wv, e_ux, e_wx)
                return ("id2", v, u, w, e_uv, e_wv, e_ux, e_wx)
    if fallback is not None:
        return fallback
    raise ContractError("no usable degree-4 pivot")


def _unwind_two(g: MutableGraph, st: ColoringState, events: list[tuple], bip: bool) -> None:
    for ev in reversed(events):
        tag = ev[0]
        if tag == "pend":
            _, u, v, e_uv = ev
            g.restore_edge(e_uv)
            _color_leaf(g, st, v, e_uv)
        elif tag == "piv3":
            _, u, v, x, e_uv, e_ux = ev
            g.restore_edge(e_ux)
            g.restore_edge(e_uv)
            _color_three_pivot(g, st, ev, bip)
        elif tag == "sq":
            _, v, x, u, w, e_uv, e_wv, e_ux, e_wx = ev
            g.restore_edge(e_wx)
            g.restore_edge(e_ux)
            g.restore_edge(e_wv)
            g.restore_edge(e_uv)
            _color_square(g, st, ev, bip)
        elif tag == "id2":
            _, host, guest, v, e_hv, e_gv, e_hx, e_gx, nid, old_flag = ev
            g.split(host, guest)
            st.mark_special(nid, old_flag)
            st.transfer_on_split(host, guest, nid)
            g.restore_edge(e_gv)
            g.restore_edge(e_hv)
            _color_merge_pivot(g, st, ev, bip)
        else:
            _, u, v, w, e_uv, e_uw, e_wv = ev
            g.restore_edge(e_uw)
            g.restore_edge(e_uv)
            _color_triangle_pivot(g, st, ev)


def _color_leaf(g: MutableGraph, st: ColoringState, v: int, e_uv: int) -> None:
    """Color the edge back to a pendant vertex; only v's end matters."""
    if g.deg[v] <= 2:
        got = st.pick_missing(v)
        if got is None:
            raise ContractError("low-degree vertex with nothing missing")
        c, nid = got
        st.assign_color(e_uv, c, hint=("miss", nid))
    else:
        c, hint = _pick_at(st, v)
        st.assign_color(e_uv, c, hint=hint)


def _color_three_pivot(g: MutableGraph, st: ColoringState, ev: tuple, bip: bool) -> None:
    """u sat between a degree-3 pivot v and some x; u's edges return.

    The x end takes anything available there.  If v came back doubled
    (its two remaining edges share a color) the missing color covers
    uv and the doubling moves to u at worst; otherwise uv takes the
    complement of ux so u stays clean.
    """
    _, u, v, x, e_uv, e_ux = ev
    cp, hint = _pick_at(st, x)
    st.assign_color(e_ux, cp, hint=hint)
    _oncev, twicev, _colors = st.low_degree_palette(v)
    if twicev:
        if bip:
            raise ContractError("doubled pivot inside a bipartite subproblem")
        got = st.pick_missing(v)
        if got is None:
            raise ContractError("doubled degree-3 pivot with nothing missing")
        c, nid = got
        st.assign_color(e_uv, c, hint=("miss", nid))
    else:
        c = 3 - cp
        st.assign_color(e_uv, c, hint=st.hint_for(v, c))


def _color_square(g: MutableGraph, st: ColoringState, ev: tuple, bip: bool) -> None:
    """u and w regain their edges to both square corners v and x.

    At most one corner may be doubled.  Around a doubled corner the
    complement color takes three of the four edges and the lower of
    u, w absorbs the doubling; with both corners clean the four edges
    alternate so nobody doubles.
    """
    _, v, x, u, w, e_uv, e_wv, e_ux, e_wx = ev
    emap = {(v, u): e_uv, (v, w): e_wv, (x, u): e_ux, (x, w): e_wx}
    mono_v = _doubled(st, v)
    mono_x = _doubled(st, x)
    if mono_v is not None and mono_x is not None:
        raise ContractError("both square corners doubled")
    if mono_v is not None or mono_x is not None:
        if bip:
            raise ContractError("doubled square corner inside a bipartite subproblem")
        if mono_v is not None:
            m, cm, nn = v, mono_v, x
        else:
            m, cm, nn = x, mono_x, v
        cbar = 3 - cm
        st.assign_color(emap[(m, u)], cbar, hint=_hint4(st, g, m, cbar))
        st.assign_color(emap[(m, w)], cbar, hint=_hint4(st, g, m, cbar))
        st.assign_color(emap[(nn, u)], cbar, hint=_hint4(st, g, nn, cbar))
        st.assign_color(emap[(nn, w)], cm, hint=_hint4(st, g, nn, cm))
        return
    lo, hi = (v, x) if v < x else (x, v)
    st.assign_color(emap[(hi, u)], 1, hint=_hint4(st, g, hi, 1))
    st.assign_color(emap[(hi, w)], 2, hint=_hint4(st, g, hi, 2))
    st.assign_color(emap[(lo, u)], 2, hint=_hint4(st, g, lo, 2))
    st.assign_color(emap[(lo, w)], 1, hint=_hint4(st, g, lo, 1))


def _color_merge_pivot(g: MutableGraph, st: ColoringState, ev: tuple, bip: bool) -> None:
    """Split the merged endpoints apart and color their pivot edges.

    alpha and beta are the colors the hosts' far edges took while they
    were identified.  A doubled pivot takes its missing color twice
    (alpha != beta then, else two vertices would double); matching far
    colors leave one endpoint doubled, and the side whose far segment
    already runs to the pivot gets the complement to avoid a cycle.
    """
    _, host, guest, v, e_hv, e_gv, e_hx, e_gx, nid, old_flag = ev
    alpha = g.edge_color[e_hx]
    beta = g.edge_color[e_gx]
    mono_v = _doubled(st, v)
    if mono_v is not None:
        if bip:
            raise ContractError("doubled pivot inside a bipartite subproblem")
        if alpha == beta:
            raise ContractError("merge event facing two doublings at once")
        m = 3 - mono_v
        st.assign_color(e_hv, m, hint=st.hint_for(v, m))
        st.assign_color(e_gv, m, hint=st.hint_for(v, m))
        return
    if alpha == beta:
        if bip:
            raise ContractError("matching far colors inside a bipartite subproblem")
        gamma = alpha
        once_v = _palette2(st, v)[1]
        if gamma not in once_v:
            raise ContractError("pivot lost track of its once-color")
        v_inc = once_v[gamma][0]
        if st.clean_segment_between(host, v_inc):
            st.assign_color(e_hv, 3 - gamma, hint=st.hint_for(v, 3 - gamma))
            st.assign_color(e_gv, gamma, hint=st.hint_for(v, gamma))
        else:
            st.assign_color(e_hv, gamma, hint=st.hint_for(v, gamma))
            st.assign_color(e_gv, 3 - gamma, hint=st.hint_for(v, 3 - gamma))
        return
    st.assign_color(e_hv, beta, hint=st.hint_for(v, beta))
    st.assign_color(e_gv, alpha, hint=st.hint_for(v, alpha))


def _color_triangle_pivot(g: MutableGraph, st: ColoringState, ev: tuple) -> None:
    """Last resort: u's edges into a triangle u, w, v come back.

    v kept three colored edges, two in one color and one in the other.
    When the triangle edge wv carries v's once-color the two new edges
    avoid every doubling; when it carries v's doubled color, w has to
    double, and the caller's density budget pays for it.
    """
    _, u, v, w, e_uv, e_uw, e_wv = ev
    gcol = g.edge_color[e_wv]
    _missing, once, twice = _palette2(st, v)
    if len(twice) != 1 or len(once) != 1:
        raise ContractError("triangle pivot palette out of shape")
    tcol = next(iter(twice))
    qcol = next(iter(once))
    if gcol == qcol:
        st.assign_color(e_uv, qcol, hint=st.hint_for(v, qcol))
        st.assign_color(e_uw, 3 - qcol, hint=None)
    elif gcol == tcol:
        st.assign_color(e_uv, qcol, hint=st.hint_for(v, qcol))
        st.assign_color(e_uw, tcol, hint=None)
    else:
        raise ContractError("triangle edge color escaped the pivot's palette")


def _color_leftover_cycles(g: MutableGraph, st: ColoringState, bip: bool) -> None:
    """Alternate two colors around each cycle the peel left behind.

    An odd cycle closes on its start vertex with a repeat, leaving that
    one vertex doubled; on the dense track the density budget admits at
    most one leftover cycle, and the sparse track counted odd cycles
    up front.
    """
    for s in range(g.n):
        if g.deg[s] == 0:
            continue
        if g.deg[s] != 2:
            raise ContractError("leftover subgraph is not a disjoint union of cycles")
    for s in range(g.n):
        if g.deg[s] != 2:
            continue
        nbrs = [(nbr, eid) for nbr, eid, _ in g.neighbors(s)]
        if all(g.edge_color[eid] != 0 for _nbr, eid in nbrs):
            continue
        cur, e = min(nbrs)
        prev, col, length = s, 1, 0
        while True:
            st.assign_color(e, col, hint=None)
            length += 1
            if cur == s:
                break
            e2 = _other_edge(g, cur, e)
            prev, cur, e = cur, g.edge_other(e2, cur), e2
            col = 3 - col
        if length % 2 and bip:
            raise ContractError("odd cycle inside a bipartite subproblem")


def _assert_density(g: MutableGraph) -> None:
    n_alive = sum(1 for d in g.deg if d > 0)
    if 2 * n_alive - g.m_alive > 5:
        raise ContractError(
            f"peeled remainder drifted above the density budget: "
            f"2*{n_alive} - {g.m_alive} > 5"
        )


def _post_checks(g: MutableGraph) -> None:
    if g.journal:
        raise ContractError("journal not empty after unwinding every event")
    for e in range(len(g.edge_a)):
        if g.edge_alive[e] and g.edge_color[e] == 0:
            raise ContractError(f"edge {e} survived the unwind uncolored")


# ----------------------------------------------------------------------
# spanning path extraction


def hamiltonian_path_from(g: MutableGraph, coloring: LinearColoring) -> list[int]:
    """Read the spanning path out of a two-coloring of an edge-maximal
    2-degenerate graph with maximum degree <= 4 (|E| = 2|V| - 3).

    One color class must carry exactly n-1 edges, and those edges must
    form a single path visiting every vertex; ContractError otherwise.
    """
    n = g.n
    if coloring.k != 2:
        raise ValueError(f"need a two-coloring, got k={coloring.k}")
    if g.m_alive != 2 * n - 3:
        raise ValueError(f"{g.m_alive} edges on {n} vertices; edge-maximal means {2 * n - 3}")
    dmax = max(g.deg, default=0)
    if dmax > 4:
        raise ValueError(f"maximum degree {dmax} exceeds 4")
    colors = coloring.colors
    alive = [e for e in range(len(g.edge_a)) if g.edge_alive[e]]
    cls = None
    for target in (1, 2):
        if sum(1 for e in alive if colors[e] == target) == n - 1:
            cls = target
            break
    if cls is None:
        raise ContractError("neither color class holds exactly n-1 edges")
    adj: list[list[int]] = [[] for _ in range(n)]
    for e in alive:
        if colors[e] == cls:
            adj[g.edge_a[e]].append(g.edge_b[e])
            adj[g.edge_b[e]].append(g.edge_a[e])
    ends = [z for z in range(n) if len(adj[z]) == 1]
    if len(ends) != 2:
        raise ContractError("spanning class does not have exactly two path ends")
    path = [min(ends)]
    prev = -1
    while True:
        nxt = [z for z in adj[path[-1]] if z != prev]
        if not nxt:
            break
        prev = path[-1]
        path.append(nxt[0])
    if len(path) != n:
        raise ContractError("spanning class is not a single path over every vertex")
    return path


# ----------------------------------------------------------------------
# partial 2-trees with protected pairs


def color_partial2tree(
    g: MutableGraph, pairs=(), debug: bool = False
) -> tuple[LinearColoring, MonoReport]:
    """Two-color a partial 2-tree of maximum degree <= 4 so that every
    requested pair keeps at least one member free of doubling.

    pairs are disjoint 2-tuples of degree-2 vertex ids.  The class is
    not tested up front: peeling a graph outside it runs out of
    removable configurations and raises ValueError, which doubles as
    recognition.  Returns (coloring, mono vertex ids).
    """
    dmax = max(g.deg, default=0)
    if dmax > 4:
        raise ValueError(f"maximum degree {dmax} exceeds 4")
    validate_pairs(g, pairs)
    g.set_low_threshold(2)
    st = ColoringState(g, 2, debug=debug)
    pairp = [-1] * g.n
    for a, b in pairs:
        pairp[a] = b
        pairp[b] = a
    events = _peel_p2t(g, pairp)
    _unwind_p2t(g, st, events)
    _post_checks(g)
    return st.coloring(), _mono_vertices(g)


def _peel_p2t(g: MutableGraph, pairp: list[int]) -> list[tuple]:
    """Peel by configurations (a) to (e), pendants first.

    A worklist of candidate anchors drives detection; every event puts
    the endpoints it touched back on the list, so a configuration
    created by a removal is always rediscovered.  Running out of
    anchors with edges still alive means the input was not a partial
    2-tree of maximum degree <= 4.
    """
    pend = g.add_watchlist(lambda d, dl: d == 1)
    work = list(range(g.n - 1, -1, -1))
    events: list[tuple] = []
    while g.m_alive:
        if pend.head != -1:
            u = pend.head
            v, e_uv, _ = next(g.neighbors(u))
            if g.deg[v] == 2 and pairp[v] != -1:
                # v is about to leave the degree-2 world; its replay
                # picks a missing color, so it can never double and the
                # pair is satisfied for free
                mate = pairp[v]
                pairp[v] = -1
                pairp[mate] = -1
            g.remove_edge(e_uv)
            events.append(("a", u, v, e_uv))
            work.append(u)
            work.append(v)
            continue
        if not work:
            raise ValueError("input is not a partial 2-tree of max degree <= 4")
        z = work.pop()
        if g.deg[z] not in (2, 3):
            continue
        cfg = _config_at(g, z)
        if cfg is None:
            continue
        kind, verts = cfg
        if kind == "b":
            _peel_cfg_b(g, pairp, events, work, *verts)
        elif kind == "c":
            _peel_cfg_c(g, pairp, events, work, *verts)
        elif kind == "d":
            _peel_cfg_d(g, pairp, events, work, *verts)
        else:
            _peel_cfg_e(g, pairp, events, work, *verts)
    return events


def _edge_to(g: MutableGraph, u: int, v: int) -> int:
    e = g.find_edge(u, v)
    if e is None:
        raise ContractError(f"expected an edge between {u} and {v}")
    return e


def _peel_cfg_b(g: MutableGraph, pairp, events, work, u: int, v: int) -> None:
    """Two adjacent degree-2 vertices; their shared edge goes last.

    Pair bookkeeping: a pair inside {u, v} becomes a joint obligation,
    pairs reaching outside become external obligations, and when both
    u and v had outside partners those partners now guard each other,
    which is exactly what keeps both obligations satisfiable at once.
    """
    e_uv = _edge_to(g, u, v)
    obligations = []
    up, vp = pairp[u], pairp[v]
    if up == v:
        obligations.append(("joint", "u", "v"))
        pairp[u] = pairp[v] = -1
    else:
        if up != -1:
            obligations.append(("ext", "u", up))
            pairp[u] = pairp[up] = -1
        if vp != -1:
            obligations.append(("ext", "v", vp))
            pairp[v] = pairp[vp] = -1
        if up != -1 and vp != -1:
            pairp[up] = vp
            pairp[vp] = up
    g.remove_edge(e_uv)
    events.append(("b", u, v, e_uv, obligations))
    work.append(u)
    work.append(v)


def _peel_cfg_c(g: MutableGraph, pairp, events, work, u: int, v: int, x: int, y: int) -> None:
    """Degree-2 twins u, v over shared neighbors x, y (a four-cycle).

    All four corner edges go at once.  Obligations are collected for
    every pair touching a local degree-2 vertex; when both twins had
    outside partners those partners pair up in the remainder, and when
    x and y both sat at degree 4 they become a pair themselves, since
    the replay can make at most one of them double.
    """
    mu = {nbr: eid for nbr, eid, _ in g.neighbors(u)}
    mv = {nbr: eid for nbr, eid, _ in g.neighbors(v)}
    e_ux, e_uy, e_vx, e_vy = mu[x], mu[y], mv[x], mv[y]
    loc = {u: "u", v: "v"}
    if g.deg[x] == 2:
        loc[x] = "x"
    if g.deg[y] == 2:
        loc[y] = "y"
    obligations = []
    up, vp = pairp[u], pairp[v]
    if up == v:
        obligations.append(("joint", "u", "v"))
        pairp[u] = pairp[v] = -1
    else:
        if up != -1:
            if up in loc:
                obligations.append(("joint", "u", loc[up]))
            else:
                obligations.append(("ext", "u", up))
            pairp[u] = pairp[up] = -1
        if vp != -1:
            if vp in loc:
                obligations.append(("joint", "v", loc[vp]))
            else:
                obligations.append(("ext", "v", vp))
            pairp[v] = pairp[vp] = -1
        if up != -1 and vp != -1 and up not in loc and vp not in loc:
            pairp[up] = vp
            pairp[vp] = up
    for center, role in ((x, "x"), (y, "y")):
        if center in loc and pairp[center] != -1:
            mate = pairp[center]
            if mate in loc:
                obligations.append(("joint", role, loc[mate]))
            else:
                obligations.append(("ext", role, mate))
            pairp[center] = pairp[mate] = -1
    if g.deg[x] == 4 and g.deg[y] == 4:
        pairp[x] = y
        pairp[y] = x
    g.remove_edge(e_ux)
    g.remove_edge(e_uy)
    g.remove_edge(e_vx)
    g.remove_edge(e_vy)
    events.append(("c", u, v, x, y, e_ux, e_uy, e_vx, e_vy, obligations))
    for z in (u, v, x, y):
        work.append(z)


def _peel_cfg_d(g: MutableGraph, pairp, events, work, u: int, v: int, w: int) -> None:
    """Triangle with u at degree 2 and v at degree 3; u's edges go.

    The replay can leave u doubled, but never v (degree 3 can't
    double), so a pair {u, u'} survives as {v, u'}: it is satisfied in
    the remainder exactly when the original was.
    """
    e_uv = _edge_to(g, u, v)
    e_uw = _edge_to(g, u, w)
    up = pairp[u]
    if up != -1:
        pairp[u] = -1
        pairp[v] = up
        pairp[up] = v
    g.remove_edge(e_uv)
    g.remove_edge(e_uw)
    events.append(("d", u, v, w, e_uv, e_uw))
    for z in (u, v, w):
        work.append(z)


def _peel_cfg_e(g: MutableGraph, pairp, events, work, u: int, v: int, a: int, x: int, y: int) -> None:
    """Two triangles u,a,x and v,a,y hanging off one degree-4 apex a.

    Everything at u, v and a goes at once.  The replay schemes keep at
    most one of u, v doubled and protect whichever of them carried a
    pair by handing the partner role to y (for u's partner) or x (for
    v's partner), both freshly at degree 2 afterwards.
    """
    mu = {nbr: eid for nbr, eid, _ in g.neighbors(u)}
    ma = {nbr: eid for nbr, eid, _ in g.neighbors(a)}
    mv = {nbr: eid for nbr, eid, _ in g.neighbors(v)}
    e_ux, e_ua = mu[x], mu[a]
    e_ax, e_av, e_ay = ma[x], ma[v], ma[y]
    e_vy = mv[y]
    up = pairp[u]
    if up == v:
        pairp[u] = pairp[v] = -1
    else:
        if up != -1:
            pairp[u] = -1
            pairp[y] = up
            pairp[up] = y
        vp = pairp[v]
        if vp != -1:
            pairp[v] = -1
            pairp[x] = vp
            pairp[vp] = x
    g.remove_edge(e_vy)
    g.remove_edge(e_ay)
    g.remove_edge(e_av)
    g.remove_edge(e_ax)
    g.remove_edge(e_ua)
    g.remove_edge(e_ux)
    events.append(("e", u, v, a, x, y, e_ux, e_ua, e_ax, e_av, e_ay, e_vy))
    for z in (u, v, a, x, y):
        work.append(z)


def _unwind_p2t(g: MutableGraph, st: ColoringState, events: list[tuple]) -> None:
    for ev in reversed(events):
        tag = ev[0]
        if tag == "a":
            _, u, v, e_uv = ev
            g.restore_edge(e_uv)
            _color_leaf(g, st, v, e_uv)
        elif tag == "b":
            _, u, v, e_uv, obligations = ev
            g.restore_edge(e_uv)
            _color_cfg_b(g, st, ev)
        elif tag == "c":
            _, u, v, x, y, e_ux, e_uy, e_vx, e_vy, obligations = ev
            g.restore_edge(e_vy)
            g.restore_edge(e_vx)
            g.restore_edge(e_uy)
            g.restore_edge(e_ux)
            _color_cfg_c(g, st, ev)
        elif tag == "d":
            _, u, v, w, e_uv, e_uw = ev
            g.restore_edge(e_uw)
            g.restore_edge(e_uv)
            _color_cfg_d(g, st, ev)
        else:
            _color_cfg_e(g, st, ev)


def _color_cfg_b(g: MutableGraph, st: ColoringState, ev: tuple) -> None:
    """The shared edge of two degree-2 vertices returns.

    Each endpoint already has one colored edge; the complement of v's
    protects v, the complement of u's protects u, and the obligations
    decide which of the two candidates is acceptable.  Both cannot be
    blocked: external forces on both ends would need both outside
    partners doubled, and those partners guard each other.
    """
    _, u, v, e_uv, obligations = ev
    gu = g.edge_color[_other_edge(g, u, e_uv)]
    gv = g.edge_color[_other_edge(g, v, e_uv)]
    cands = [3 - gv]
    if 3 - gu != 3 - gv:
        cands.append(3 - gu)
    for c in cands:
        local = {"u": c == gu, "v": c == gv}
        if _obligations_ok(st, g, obligations, local):
            st.assign_color(e_uv, c, hint=None)
            return
    raise ContractError("no safe color for the adjacent low pair")


def _color_cfg_c(g: MutableGraph, st: ColoringState, ev: tuple) -> None:
    """All four edges of the twin four-cycle return.

    Candidate colorings are filtered by the corner capacities, by the
    three ways a two-colored cycle could close (around the four-cycle
    itself, or through a leftover x-to-y segment plus one twin), and
    by the recorded pair obligations; among the survivors, the first
    one doubling the fewest corners is applied, so a bare four-cycle
    comes out alternating.
    """
    _, u, v, x, y, e_ux, e_uy, e_vx, e_vy, obligations = ev
    cntx = _color_counts(st, x)
    cnty = _color_counts(st, y)
    oncex = _palette2(st, x)[1]
    through = {}
    for c in (1, 2):
        hit = False
        if c in oncex:
            hit = _seg_other_end(st, oncex[c][0])[0] == y
        through[c] = hit
    dx2 = g.deg[x] == 2
    dy2 = g.deg[y] == 2
    best = None
    for cux, cvx, cuy, cvy in product((1, 2), repeat=4):
        if cntx[1] + (cux == 1) + (cvx == 1) > 2 or cntx[2] + (cux == 2) + (cvx == 2) > 2:
            continue
        if cnty[1] + (cuy == 1) + (cvy == 1) > 2 or cnty[2] + (cuy == 2) + (cvy == 2) > 2:
            continue
        bad = False
        for c in (1, 2):
            if cux == c and cvx == c and cuy == c and cvy == c:
                bad = True
            elif cux == c and cuy == c and through[c]:
                bad = True
            elif cvx == c and cvy == c and through[c]:
                bad = True
        if bad:
            continue
        local = {"u": cux == cuy, "v": cvx == cvy}
        if dx2:
            local["x"] = cux == cvx
        if dy2:
            local["y"] = cuy == cvy
        if not _obligations_ok(st, g, obligations, local):
            continue
        doubled = sum(local.values())
        if best is None or doubled < best[0]:
            best = (doubled, cux, cvx, cuy, cvy)
            if doubled == 0:
                break
    if best is None:
        raise ContractError("no consistent coloring of the twin four-cycle")
    _, cux, cvx, cuy, cvy = best
    st.assign_color(e_ux, cux, hint=_hint4(st, g, x, cux))
    st.assign_color(e_vx, cvx, hint=_hint4(st, g, x, cvx))
    st.assign_color(e_uy, cuy, hint=_hint4(st, g, y, cuy))
    st.assign_color(e_vy, cvy, hint=_hint4(st, g, y, cvy))


def _color_cfg_d(g: MutableGraph, st: ColoringState, ev: tuple) -> None:
    """u's two triangle edges return; v has degree 3, w at least 3.

    Mirrors the degree-3 pivot replay of the dense driver: the w end
    takes anything available, and v's end takes its missing color if v
    doubled, the complement of w's pick otherwise.
    """
    _, u, v, w, e_uv, e_uw = ev
    cw, hint = _pick_at(st, w)
    st.assign_color(e_uw, cw, hint=hint)
    _oncev, twicev, _colors = st.low_degree_palette(v)
    if twicev:
        got = st.pick_missing(v)
        if got is None:
            raise ContractError("doubled degree-3 vertex with nothing missing")
        c, nid = got
        st.assign_color(e_uv, c, hint=("miss", nid))
    else:
        c = 3 - cw
        st.assign_color(e_uv, c, hint=st.hint_for(v, c))


def _color_cfg_e(g: MutableGraph, st: ColoringState, ev: tuple) -> None:
    """Both triangles around the apex return, six edges in one replay.

    x and y kept two colored edges each; their doubling pattern picks
    one of four fixed schemes.  Edges are restored and colored one at a
    time in an order that keeps at most one degree-4 endpoint per
    assignment, so a single hint always suffices.
    """
    _, u, v, a, x, y, e_ux, e_ua, e_ax, e_av, e_ay, e_vy = ev
    mx = _doubled(st, x)
    my = _doubled(st, y)
    if mx is not None and my is not None:
        cols = (3 - mx, mx, 3 - mx, my, 3 - my, 3 - my)
    elif my is not None:
        cols = (my, my, 3 - my, my, 3 - my, 3 - my)
    elif mx is not None:
        cols = (3 - mx, mx, 3 - mx, mx, 3 - mx, mx)
    else:
        cols = (2, 1, 1, 2, 2, 1)
    plan = (
        (e_ux, cols[0], x),
        (e_ua, cols[1], None),
        (e_ax, cols[2], x),
        (e_av, cols[3], None),
        (e_ay, cols[4], a),
        (e_vy, cols[5], y),
    )
    for eid, col, side in plan:
        g.restore_edge(eid)
        hint = _hint4(st, g, side, col) if side is not None else None
        st.assign_color(eid, col, hint=hint)


def _obligations_ok(st: ColoringState, g: MutableGraph, obligations, local: dict) -> bool:
    """Check recorded pair obligations against a candidate assignment.

    local maps event roles to would-double bits.  A joint obligation
    fails when both members double; an external one fails when the
    local member doubles while its already-colored partner did too.
    """
    for ob in obligations:
        if ob[0] == "joint":
            _, r1, r2 = ob
            if local[r1] and local[r2]:
                return False
        else:
            _, role, partner = ob
            if local[role] and _is_mono_now(st, g, partner):
                return False
    return True


def _config_at(g: MutableGraph, z: int) -> Optional[tuple[str, tuple[int, ...]]]:
    """Peelable configuration anchored at z, or None.

    Degree-2 anchors are checked for a twin over the same neighbors
    (kind c), an adjacent degree-2 vertex (kind b), and the triangle
    kinds d and e; degree-3 anchors only for the middle role of kind d.
    """
    d = g.deg[z]
    if d == 2:
        (x, e_zx, _), (y, e_zy, _) = g.neighbors(z)
        for cand, _e, _n in g.neighbors(x):
            if cand == z or cand == y or g.deg[cand] != 2:
                continue
            if {nbr for nbr, _e2, _n2 in g.neighbors(cand)} == {x, y}:
                return ("c", (z, cand, x, y))
        if g.deg[x] == 2:
            return ("b", (z, x))
        if g.deg[y] == 2:
            return ("b", (z, y))
        if g.find_edge(x, y) is not None:
            dx, dy = g.deg[x], g.deg[y]
            if dx == 3 and dy >= 3:
                return ("d", (z, x, y))
            if dy == 3 and dx >= 3:
                return ("d", (z, y, x))
            if dx == 4 and dy == 4:
                for apex, far in ((x, y), (y, x)):
                    for cand, _e, _n in g.neighbors(apex):
                        if cand == z or cand == far or g.deg[cand] != 2:
                            continue
                        other = next(nbr for nbr, _e2, _n2 in g.neighbors(cand) if nbr != apex)
                        if other == far or g.deg[other] != 4:
                            continue
                        if g.find_edge(apex, other) is None:
                            continue
                        return ("e", (z, cand, apex, far, other))
        return None
    if d == 3:
        for uu, e_uu, _ in g.neighbors(z):
            if g.deg[uu] != 2:
                continue
            e2 = _other_edge(g, uu, e_uu)
            ww = g.edge_other(e2, uu)
            if g.deg[ww] >= 3 and g.find_edge(z, ww) is not None:
                return ("d", (uu, z, ww))
    return None


def find_configuration(g: MutableGraph) -> Optional[tuple[str, tuple[int, ...]]]:
    """Find a peelable configuration in g, scanning anchors in id order.

    Returns (kind, vertices) with kinds "a" (pendant u), "b" (adjacent
    degree-2 u, v), "c" (degree-2 twins u, v with shared neighbors
    x, y), "d" (triangle u, v, w with deg u = 2, deg v = 3) or "e"
    (triangles u,a,x and v,a,y around a degree-4 apex a), or None when
    nothing is peelable; an edgeless graph has no configurations, and a
    graph where None comes back despite alive edges is not a partial
    2-tree of maximum degree <= 4.
    """
    for z in range(g.n):
        if g.deg[z] == 1:
            return ("a", (z,))
        if g.deg[z] in (2, 3):
            cfg = _config_at(g, z)
            if cfg is not None:
                return cfg
    return None


# ----------------------------------------------------------------------
# small shared helpers for the two-color drivers


def _palette2(st: ColoringState, u: int) -> tuple[set, dict, set]:
    """(missing colors, once colors with their nodes, doubled colors)
    at u under a two-color budget; unlike low_degree_palette this walks
    the Once list directly and serves any degree."""
    missing = {c for c in (1, 2) if st.miss_contains(u, c)}
    once: dict[int, tuple[int, int]] = {}
    nid = st.onc_head[u]
    while nid != -1:
        once[st.onc_color[nid]] = (st.onc_inc[nid], nid)
        nid = st.onc_next[nid]
        st.ops += 1
    twice = {1, 2} - missing - set(once)
    return missing, once, twice


def _color_counts(st: ColoringState, u: int) -> dict[int, int]:
    missing, once, _twice = _palette2(st, u)
    return {c: 0 if c in missing else 1 if c in once else 2 for c in (1, 2)}


def _doubled(st: ColoringState, u: int) -> Optional[int]:
    """The color u carries twice, or None."""
    twice = _palette2(st, u)[2]
    return min(twice) if twice else None


def _seg_other_end(st: ColoringState, inc: int) -> tuple[int, int]:
    """Owner and incidence node of the far end of inc's segment."""
    g = st.g
    s = g.node_seg[inc]
    if s == -1 or not st.seg_alive[s]:
        raise ContractError("incidence node does not terminate a live segment")
    other = st.seg_t2[s] if st.seg_t1[s] == inc else st.seg_t1[s]
    st.ops += 1
    return g.node_owner[other], other


def _other_edge(g: MutableGraph, u: int, skip: int) -> int:
    """The one alive edge at u besides skip; u must have degree 2."""
    for nid in g.iter_inc(u):
        e = g.node_edge[nid]
        if e != skip:
            return e
    raise ContractError(f"vertex {u} has no second edge")


def _is_mono_now(st: ColoringState, g: MutableGraph, z: int) -> bool:
    """Whether z, a degree-2 vertex whose edges are already colored,
    carries the same color twice."""
    return _doubled(st, z) is not None


def _hint4(st: ColoringState, g: MutableGraph, z: int, c: int) -> Optional[Hint]:
    """Palette hint for z when its degree demands one."""
    if g.deg[z] == 4:
        return st.hint_for(z, c)
    return None


def _mono_vertices(g: MutableGraph) -> MonoReport:
    """Recount monochromatic vertices straight off the arrays: degree-2
    vertices whose two alive edges carry the same nonzero color."""
    out = []
    for z in range(g.n):
        if g.deg[z] != 2:
            continue
        cols = [g.edge_color[g.node_edge[nid]] for nid in g.iter_inc(z)]
        if cols[0] != 0 and cols[0] == cols[1]:
            out.append(z)
    return out


def _odd_cycle_count(g: MutableGraph) -> int:
    """Components that are odd cycles; callers guarantee maxdeg <= 2."""
    seen = [False] * g.n
    odd = 0
    for s in range(g.n):
        if seen[s] or g.deg[s] == 0:
            continue
        seen[s] = True
        stack = [s]
        verts = 0
        cycle = True
        while stack:
            cur = stack.pop()
            verts += 1
            if g.deg[cur] != 2:
                cycle = False
            for nbr, _e, _n in g.neighbors(cur):
                if not seen[nbr]:
                    seen[nbr] = True
                    stack.append(nbr)
        if cycle and verts % 2 == 1:
            odd += 1
    return odd
