"""Linear coloring of 3-degenerate graphs into ceil((maxdeg+1)/2) forests.

The driver peels the graph to nothing, recording one event per step,
then replays the events backwards: each replay restores the removed
edges and colors them using constant-size palette inspections at the
two or three vertices the event touched.

A peeling step always works around an edge vu where v heads the pivots
list and deg(u) <= 3.  When deg(v) is below the color budget's ceiling
the single edge vu is removed; otherwise a second low-degree neighbor w
of v joins the event, and the step removes every edge around u and w
(their adjacency or a shared neighbor decides which coloring rules
apply on the way back).  When u and w share nothing but v, the step
instead merges w's one remaining far edge onto u so that the remainder
keeps its degree pressure.  The merged incidence is flagged for the
whole inner subproblem: the flag stops path segments from fusing
through the future split point, so a same-colored cycle can appear
inside the subproblem only across that flag, and splitting w back out
cuts it into paths again.
"""

from __future__ import annotations

from typing import Optional

from .graph import ContractError, MutableGraph
from .state import ColoringState, LinearColoring

Hint = tuple[str, int]


def color_3deg(g: MutableGraph, k: Optional[int] = None, debug: bool = False) -> LinearColoring:
    """Color the alive edges of g with k forests of paths.

    k defaults to ceil((maxdeg+1)/2), the smallest budget this driver
    can honor; any larger k is accepted.  Raises ValueError if g is not
    3-degenerate or k is too small, ContractError on internal drift.
    """
    t, _ = g.degeneracy_order()
    if t > 3:
        raise ValueError(f"graph is {t}-degenerate; this driver handles at most 3")
    dmax = max(g.deg, default=0)
    need = max(1, (dmax + 2) // 2)
    if k is None:
        k = need
    if dmax > 2 * k - 1:
        raise ValueError(f"{k} colors cannot cover maximum degree {dmax}; need {need}")
    if g.low != 3:
        g.set_low_threshold(3)
    st = ColoringState(g, k, debug=debug)
    if k == 1:
        # maximum degree is at most 1, so the edges are a matching
        for e in range(len(g.edge_a)):
            if g.edge_alive[e]:
                st.assign_color(e, 1)
        return st.coloring()
    events = _peel(g, st, k)
    _unwind(g, st, events)
    if g.journal:
        raise ContractError("journal not empty after unwinding every event")
    for e in range(len(g.edge_a)):
        if g.edge_alive[e] and g.edge_color[e] == 0:
            raise ContractError(f"edge {e} survived the unwind uncolored")
    return st.coloring()


# ----------------------------------------------------------------------
# peel phase


def _peel(g: MutableGraph, st: ColoringState, k: int) -> list[tuple]:
    events: list[tuple] = []
    while True:
        hit = g.find_pivot_edge()
        if hit is None:
            if g.m_alive != 0:
                raise ContractError("no pivot edge although edges remain")
            return events
        v, u, e_uv = hit
        if g.deg[v] < 2 * k - 1:
            g.remove_edge(e_uv)
            events.append(("low", u, v, e_uv))
            continue
        w, e_vw = _second_low_neighbor(g, v, e_uv)
        e_uw = g.find_edge(u, w)
        if e_uw is not None:
            x, e_ux = _other_neighbor(g, u, (v, w))
            y, e_wy = _other_neighbor(g, w, (u, v))
            for eid in (e_ux, e_uv, e_uw, e_vw, e_wy):
                if eid is not None:
                    g.remove_edge(eid)
            events.append(("adj", u, v, w, x, y, e_ux, e_uv, e_uw, e_vw, e_wy))
            continue
        z, e_uz, e_wz = _common_neighbor(g, u, w, v)
        if z is not None:
            x, e_ux = _other_neighbor(g, u, (v, z))
            y, e_wy = _other_neighbor(g, w, (v, z))
            for eid in (e_ux, e_uv, e_uz, e_vw, e_wz, e_wy):
                if eid is not None:
                    g.remove_edge(eid)
            events.append(("common", u, v, w, z, x, y, e_ux, e_uv, e_uz, e_vw, e_wz, e_wy))
            continue
        far = [(nbr, eid) for nbr, eid, _ in g.neighbors(w) if nbr != v]
        g.remove_edge(e_uv)
        g.remove_edge(e_vw)
        if not far:
            events.append(("stub", u, v, w, e_uv, e_vw))
            continue
        if len(far) == 1:
            x, e_wx = None, None
            y, e_wy = far[0]
        else:
            (x, e_wx), (y, e_wy) = far
            g.remove_edge(e_wx)
        nid = g.edge_node(e_wy, w)
        old_flag = g.node_special[nid]
        g.identify(u, w)
        st.mark_special(nid, True)
        events.append(("merge", u, v, w, x, y, e_uv, e_vw, e_wx, e_wy, nid, old_flag))


def _second_low_neighbor(g: MutableGraph, v: int, skip_edge: int) -> tuple[int, int]:
    # a pivot has at most 3 neighbors above the threshold, so 4 distinct
    # incidences besides the skipped one must include a low neighbor
    highs = 0
    for nbr, eid, _ in g.neighbors(v):
        if eid == skip_edge:
            continue
        if g.deg[nbr] <= 3:
            return nbr, eid
        highs += 1
        if highs > 3:
            break
    raise ContractError(f"saturated pivot {v} lacks a second low-degree neighbor")


def _other_neighbor(
    g: MutableGraph, a: int, excl: tuple[int, ...]
) -> tuple[Optional[int], Optional[int]]:
    for nbr, eid, _ in g.neighbors(a):
        if nbr not in excl:
            return nbr, eid
    return None, None


def _common_neighbor(
    g: MutableGraph, u: int, w: int, v: int
) -> tuple[Optional[int], Optional[int], Optional[int]]:
    u_edge = {}
    for nbr, eid, _ in g.neighbors(u):
        if nbr != v:
            u_edge[nbr] = eid
    for nbr, eid, _ in g.neighbors(w):
        if nbr != v and nbr in u_edge:
            return nbr, u_edge[nbr], eid
    return None, None, None


# ----------------------------------------------------------------------
# unwind phase


def _unwind(g: MutableGraph, st: ColoringState, events: list[tuple]) -> None:
    for ev in reversed(events):
        tag = ev[0]
        if tag == "low":
            _, u, v, e_uv = ev
            g.restore_edge(e_uv)
            _color_low_pivot(st, u, v, e_uv)
        elif tag == "adj":
            _, u, v, w, x, y, e_ux, e_uv, e_uw, e_vw, e_wy = ev
            for eid in (e_wy, e_vw, e_uw, e_uv, e_ux):
                if eid is not None:
                    g.restore_edge(eid)
            _color_adjacent_pair(st, ev)
        elif tag == "common":
            _, u, v, w, z, x, y, e_ux, e_uv, e_uz, e_vw, e_wz, e_wy = ev
            for eid in (e_wy, e_wz, e_vw, e_uz, e_uv, e_ux):
                if eid is not None:
                    g.restore_edge(eid)
            _color_common_neighbor(st, ev)
        elif tag == "stub":
            _, u, v, w, e_uv, e_vw = ev
            g.restore_edge(e_vw)
            g.restore_edge(e_uv)
            _color_host_pair(st, u, v, w, e_uv, e_vw)
        else:
            _, u, v, w, x, y, e_uv, e_vw, e_wx, e_wy, nid, old_flag = ev
            g.split(u, w)
            st.mark_special(nid, old_flag)
            st.transfer_on_split(u, w, nid)
            if e_wx is not None:
                g.restore_edge(e_wx)
            g.restore_edge(e_vw)
            g.restore_edge(e_uv)
            if e_wx is not None:
                gamma = g.edge_color[e_wy]
                c, hint = _pick_at(st, x, avoid=(gamma,))
                st.assign_color(e_wx, c, hint=hint)
            _color_host_pair(st, u, v, w, e_uv, e_vw)


# ----------------------------------------------------------------------
# palette picks shared by the events


def _pick_at(st: ColoringState, x: int, avoid: tuple = ()) -> tuple[int, Hint]:
    """Head of Miss(x) unfiltered, else first Onc(x) color outside avoid."""
    got = st.pick_missing(x)
    if got is not None:
        c, nid = got
        return c, ("miss", nid)
    got3 = st.onc_first(x, avoid=avoid)
    if got3 is None:
        raise ContractError(f"palette exhausted at vertex {x}")
    c, _, nid = got3
    return c, ("onc", nid)


def _pick_at_strict(st: ColoringState, x: int, banned: int) -> tuple[int, Hint]:
    """Like _pick_at, but the exclusion also filters Missing(x).

    Only callable where x lost two edges to the event, which leaves at
    least two distinct colors across Missing(x) and Once(x)."""
    got = st.pick_missing(x, avoid=[banned])
    if got is not None:
        c, nid = got
        return c, ("miss", nid)
    got3 = st.onc_first(x, avoid=(banned,))
    if got3 is None:
        raise ContractError(f"palette exhausted at vertex {x}")
    c, _, nid = got3
    return c, ("onc", nid)


def _second_choice(st: ColoringState, a: int, first: int) -> tuple[int, Hint]:
    """A color distinct from `first` out of Miss(a) then Onc(a)."""
    got = st.pick_missing(a, avoid=[first])
    if got is not None:
        c, nid = got
        return c, ("miss", nid)
    got3 = st.onc_first(a)
    if got3 is None:
        raise ContractError(f"no second palette color at vertex {a}")
    c, _, nid = got3
    return c, ("onc", nid)


def _onc_scan(st: ColoringState, v: int, count: int) -> list[tuple[int, int, int]]:
    out = []
    nid = st.onc_head[v]
    while nid != -1 and len(out) < count:
        out.append((st.onc_color[nid], st.onc_inc[nid], nid))
        nid = st.onc_next[nid]
        st.ops += 1
    return out


def _first_not(trip: list[tuple[int, int, int]], banned: set) -> tuple[int, int]:
    for c, _, nid in trip:
        if c not in banned:
            return c, nid
    raise ContractError("palette triple exhausted by exclusions")


# ----------------------------------------------------------------------
# event colorings


def _color_low_pivot(st: ColoringState, u: int, v: int, e_uv: int) -> None:
    """deg(v) was below 2k-1: one freed edge, colored from v's palette."""
    _, twice_u, colors_u = st.low_degree_palette(u)
    got = st.onc_first(v, avoid=tuple(colors_u))
    if got is not None:
        i, _, nid = got
        st.assign_color(e_uv, i, hint=("onc", nid))
        return
    head = st.pick_missing(v)
    if head is None:
        raise ContractError(f"no missing color at low-degree pivot {v}")
    i, i_nid = head
    if i not in twice_u:
        st.assign_color(e_uv, i, hint=("miss", i_nid))
        return
    second = st.pick_missing(v, avoid=[i])
    if second is not None:
        j, j_nid = second
        st.assign_color(e_uv, j, hint=("miss", j_nid))
        return
    got = st.onc_first(v)
    if got is None:
        raise ContractError(f"palette exhausted at low-degree pivot {v}")
    j, _, j_nid = got
    st.assign_color(e_uv, j, hint=("onc", j_nid))


def _color_adjacent_pair(st: ColoringState, ev: tuple) -> None:
    """u and w were adjacent: five edges come back, u first grabs a far
    color at x, then v's palette shape decides the triangle-ish core."""
    _, u, v, w, x, y, e_ux, e_uv, e_uw, e_vw, e_wy = ev
    i = None
    if e_ux is not None:
        i, hint = _pick_at(st, x)
        st.assign_color(e_ux, i, hint=hint)
    head = st.pick_missing(v)
    if head is None:
        # v holds exactly three once-colors; uv and uw burn the two that
        # differ from i so that vw can take the leftover
        trip = _onc_scan(st, v, 3)
        if len(trip) != 3:
            raise ContractError(f"expected three once-colors at pivot {v}")
        firsts = [(c, nid) for c, _, nid in trip if c != i]
        (a, a_nid), (b, _) = firsts[0], firsts[1]
        j = next(c for c, _, _ in trip if c != a and c != b)
        st.assign_color(e_uv, a, hint=("onc", a_nid))
        st.assign_color(e_uw, b)
        st.assign_color(e_vw, j, hint=st.hint_for(v, j))
        if e_wy is not None:
            t_col, hint = _pick_at(st, y, avoid=(j,))
            st.assign_color(e_wy, t_col, hint=hint)
    else:
        # v misses one color and holds one once: the missing color runs
        # u-v-w, the once color sits on uw away from v
        m, m_nid = head
        got = st.onc_first(v)
        if got is None:
            raise ContractError(f"expected a once-color at pivot {v}")
        o = got[0]
        st.assign_color(e_uv, m, hint=("miss", m_nid))
        st.assign_color(e_vw, m, hint=st.hint_for(v, m))
        st.assign_color(e_uw, o)
        if e_wy is not None:
            avoid = (i,) if i is not None else ()
            t_col, hint = _pick_at(st, y, avoid=avoid)
            st.assign_color(e_wy, t_col, hint=hint)


def _color_common_neighbor(st: ColoringState, ev: tuple) -> None:
    """u and w shared a neighbor z besides v: six edges come back and
    the palettes of v and z (each missing something, or each rich in
    once-colors) drive a case split that avoids every cycle closure."""
    _, u, v, w, z, x, y, e_ux, e_uv, e_uz, e_vw, e_wz, e_wy = ev
    v_missing = st.miss_head[v] != -1
    z_missing = st.miss_head[z] != -1
    if v_missing and z_missing:
        i, i_nid = st.pick_missing(v)
        j, j_hint = _second_choice(st, v, i)
        p, p_nid = st.pick_missing(z)
        q, q_hint = _second_choice(st, z, p)
        if i != p:
            st.assign_color(e_uv, i, hint=("miss", i_nid))
            st.assign_color(e_vw, i, hint=st.hint_for(v, i))
            st.assign_color(e_wz, p, hint=("miss", p_nid))
            st.assign_color(e_uz, p, hint=st.hint_for(z, p))
            r_col, l_col = i, p
        else:
            st.assign_color(e_uv, i, hint=("miss", i_nid))
            st.assign_color(e_wz, p, hint=("miss", p_nid))
            st.assign_color(e_vw, j, hint=j_hint)
            st.assign_color(e_uz, q, hint=q_hint)
            r_col, l_col = j, q
        if e_wy is not None:
            if x == y:
                # u and w are twins: if the vw color reached their shared
                # neighbor through its missing list, ux could close a
                # 4-cycle on it, so keep it out of both lists here
                t_col, hint = _pick_at_strict(st, y, r_col)
            else:
                t_col, hint = _pick_at(st, y, avoid=(r_col,))
            st.assign_color(e_wy, t_col, hint=hint)
        if e_ux is not None:
            s_col, hint = _pick_at(st, x, avoid=(l_col,))
            st.assign_color(e_ux, s_col, hint=hint)
    elif v_missing or z_missing:
        if v_missing:
            a_v, e_ua, e_wa, b_v, e_ub, e_wb = v, e_uv, e_vw, z, e_uz, e_wz
        else:
            a_v, e_ua, e_wa, b_v, e_ub, e_wb = z, e_uz, e_wz, v, e_uv, e_vw
        i, i_nid = st.pick_missing(a_v)
        j, j_hint = _second_choice(st, a_v, i)
        trip = _onc_scan(st, b_v, 3)
        if len(trip) != 3:
            raise ContractError(f"expected three once-colors at vertex {b_v}")
        st.assign_color(e_ua, i, hint=("miss", i_nid))
        st.assign_color(e_wa, j, hint=j_hint)
        t_col = None
        if e_wy is not None:
            t_col, hint = _pick_at(st, y, avoid=(j,))
            st.assign_color(e_wy, t_col, hint=hint)
        s_col = None
        if e_ux is not None:
            s_col, hint = _pick_at(st, x)
            st.assign_color(e_ux, s_col, hint=hint)
        l_col, l_nid = _first_not(trip, {t_col, j})
        st.assign_color(e_wb, l_col, hint=("onc", l_nid))
        g_col, g_nid = _first_not(trip, {s_col, l_col})
        st.assign_color(e_ub, g_col, hint=("onc", g_nid))
    else:
        tripv = _onc_scan(st, v, 3)
        tripz = _onc_scan(st, z, 3)
        if len(tripv) != 3 or len(tripz) != 3:
            raise ContractError("expected three once-colors at both shared pivots")
        i, j, l_col = tripv[0][0], tripv[1][0], tripv[2][0]
        st.assign_color(e_vw, j, hint=("onc", tripv[1][2]))
        t_col = None
        if e_wy is not None:
            t_col, hint = _pick_at(st, y, avoid=(j,))
            st.assign_color(e_wy, t_col, hint=hint)
        h = i if i != t_col else l_col
        st.assign_color(e_uv, h, hint=st.hint_for(v, h))
        s_col = None
        if e_ux is not None:
            s_col, hint = _pick_at(st, x, avoid=(h,))
            st.assign_color(e_ux, s_col, hint=hint)
        pqr = {c for c, _, _ in tripz}
        if h in pqr:
            f_col, f_nid = next((c, nid) for c, _, nid in tripz if c == h)
        else:
            f_col, f_nid = _first_not(tripz, {t_col, j})
        st.assign_color(e_wz, f_col, hint=("onc", f_nid))
        g_col, g_nid = _first_not(tripz, {f_col, s_col})
        st.assign_color(e_uz, g_col, hint=("onc", g_nid))


def _color_host_pair(st: ColoringState, u: int, v: int, w: int, e_uv: int, e_vw: int) -> None:
    """Color the u-v and v-w edges after a stub or merge event.

    v's palette shape is pinned (one missing and one once color, or
    three once colors); the doubled colors at u and w plus segment
    reachability from u decide which color lands on which edge.
    """
    _, twice_u, _ = st.low_degree_palette(u)
    _, twice_w, colors_w = st.low_degree_palette(w)
    head = st.pick_missing(v)
    if head is not None:
        i, i_nid = head
        got = st.onc_first(v)
        if got is None:
            raise ContractError(f"expected a once-color at pivot {v}")
        j, j_inc, j_nid = got
        if i in twice_u:
            st.assign_color(e_uv, j, hint=("onc", j_nid))
            st.assign_color(e_vw, i, hint=("miss", i_nid))
        elif i in twice_w:
            st.assign_color(e_vw, j, hint=("onc", j_nid))
            st.assign_color(e_uv, i, hint=("miss", i_nid))
        elif j in twice_u or j in twice_w:
            st.assign_color(e_uv, i, hint=("miss", i_nid))
            st.assign_color(e_vw, i, hint=st.hint_for(v, i))
        elif st.clean_segment_between(u, j_inc):
            st.assign_color(e_uv, i, hint=("miss", i_nid))
            st.assign_color(e_vw, j, hint=("onc", j_nid))
        else:
            st.assign_color(e_uv, j, hint=("onc", j_nid))
            st.assign_color(e_vw, i, hint=("miss", i_nid))
        return
    trip = _onc_scan(st, v, 3)
    if len(trip) != 3:
        raise ContractError(f"expected three once-colors at pivot {v}")
    reach = [c for c, inc, _ in trip if st.clean_segment_between(u, inc)]
    if len(reach) == 2:
        if twice_u:
            raise ContractError("two reachable colors contradict a doubled color at the host")
        p = next(c for c in reach if c not in twice_w)
        rest = next(c for c, _, _ in trip if c not in reach)
        st.assign_color(e_vw, p, hint=st.hint_for(v, p))
        st.assign_color(e_uv, rest, hint=st.hint_for(v, rest))
    else:
        r_col, _ = _first_not(trip, colors_w)
        cand = [
            c for c, _, _ in trip if c != r_col and c not in twice_u and c not in reach
        ]
        if not cand:
            raise ContractError("no safe color left for the host-side edge")
        st.assign_color(e_vw, r_col, hint=st.hint_for(v, r_col))
        st.assign_color(e_uv, cand[0], hint=st.hint_for(v, cand[0]))
