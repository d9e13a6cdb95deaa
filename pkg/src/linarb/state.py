"""Incremental bookkeeping for building linear colorings edge by edge.

The drivers color each edge exactly once (colors are never changed or
removed), and every decision they make needs only:

* Miss(u): colors not yet present at u, capped to 1..min(deg(u)+2, k).
  The cap keeps total list size O(n+m); when it hides colors it still
  leaves at least two entries, which is all the drivers ever need.
  Kept in ascending order; `ptrs[u][i]` addresses the node carrying i.
* Onc(u): colors present on exactly one edge at u, each entry carrying
  the incidence node of that edge so a second same-colored edge can
  fuse path segments without searching.
* Segments: maximal same-colored runs, identified ONLY by their two
  terminal vertex-edge incidences (interiors are never needed).  An
  incidence can be flagged special, which blocks fusion through it;
  that is what lets an outer driver level tolerate, temporarily, a
  same-colored cycle created on behalf of an inner level.

All reads and writes are O(1) except explicit little scans over
vertices of degree at most 3.  Debug mode recomputes everything from
scratch after each assignment and raises on any drift.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .graph import ContractError, MutableGraph


@dataclass
class LinearColoring:
    """Edge colors indexed by edge id; 0 marks slots that were never colored."""

    k: int
    colors: list[int]


class ColoringState:
    def __init__(self, g: MutableGraph, k: int, debug: bool = False) -> None:
        if k <= 0:
            raise ValueError("need at least one color")
        if any(g.edge_color[e] for e in range(len(g.edge_a)) if g.edge_alive[e]):
            # the palette build below assumes a blank slate; colors are
            # permanent, so a colored graph cannot be recolored
            raise ValueError("graph already carries edge colors")
        self.g = g
        self.k = k
        self.debug = debug
        self.ops = 0
        n = g.n
        self.cap = [min(g.orig_deg[u] + 2, k) for u in range(n)]
        # Miss lists, one ascending chain per vertex
        self.miss_color: list[int] = []
        self.miss_owner: list[int] = []
        self.miss_prev: list[int] = []
        self.miss_next: list[int] = []
        self.miss_head = [-1] * n
        self.ptrs = [[-1] * (self.cap[u] + 1) for u in range(n)]
        for u in range(n):
            prev = -1
            for i in range(1, self.cap[u] + 1):
                nid = len(self.miss_color)
                self.miss_color.append(i)
                self.miss_owner.append(u)
                self.miss_prev.append(prev)
                self.miss_next.append(-1)
                if prev == -1:
                    self.miss_head[u] = nid
                else:
                    self.miss_next[prev] = nid
                self.ptrs[u][i] = nid
                prev = nid
                self.ops += 1
        # Onc lists
        self.onc_color: list[int] = []
        self.onc_inc: list[int] = []
        self.onc_owner: list[int] = []
        self.onc_prev: list[int] = []
        self.onc_next: list[int] = []
        self.onc_head = [-1] * n
        # segment arena (tombstoned, never reused within a run)
        self.seg_t1: list[int] = []
        self.seg_t2: list[int] = []
        self.seg_color: list[int] = []
        self.seg_alive: list[bool] = []

    # ------------------------------------------------------------------
    # specials

    def mark_special(self, inc: int, on: bool) -> None:
        self.g.node_special[inc] = on
        self.ops += 1

    # ------------------------------------------------------------------
    # palette queries

    def miss_contains(self, u: int, i: int) -> bool:
        return i <= self.cap[u] and self.ptrs[u][i] != -1

    def pick_missing(self, u: int, avoid: Sequence[int] = ()) -> Optional[tuple[int, int]]:
        """(color, miss-node) from the head of Miss(u) skipping `avoid`.

        At most one color may be avoided; two head nodes suffice because
        the cap rule guarantees a capped list still has two entries.
        """
        if len(avoid) > 1:
            raise ContractError("pick_missing can avoid at most one color")
        nid = self.miss_head[u]
        for _ in range(2):
            if nid == -1:
                return None
            self.ops += 1
            if self.miss_color[nid] not in avoid:
                return self.miss_color[nid], nid
            nid = self.miss_next[nid]
        return None

    def onc_first(self, u: int, avoid: Sequence[int] = ()) -> Optional[tuple[int, int, int]]:
        """(color, incidence-node, onc-node) from the first 3 entries of
        Onc(u) whose color is not in `avoid`, else None.  The drivers
        only call this where the answer, if it exists, is in the first
        three nodes."""
        nid = self.onc_head[u]
        for _ in range(3):
            if nid == -1:
                return None
            self.ops += 1
            if self.onc_color[nid] not in avoid:
                return self.onc_color[nid], self.onc_inc[nid], nid
            nid = self.onc_next[nid]
        return None

    def hint_for(self, v: int, i: int) -> tuple[str, int]:
        """A node carrying color i at v, for passing to assign_color.

        Only valid where the algorithm knows i sits in Miss(v) or within
        the first three entries of Onc(v)."""
        if self.miss_contains(v, i):
            return "miss", self.ptrs[v][i]
        nid = self.onc_head[v]
        for _ in range(3):
            if nid == -1:
                break
            self.ops += 1
            if self.onc_color[nid] == i:
                return "onc", nid
            nid = self.onc_next[nid]
        raise ContractError(f"no palette node for color {i} at vertex {v}")

    def low_degree_palette(self, u: int) -> tuple[dict[int, int], set[int], set[int]]:
        """(once: color -> incidence node, twice: colors, all colors) at u.

        Scans u's incidence ring, so u must currently have degree <= 3.
        """
        g = self.g
        if g.deg[u] > 3:
            raise ContractError(f"palette scan at vertex {u} with degree {g.deg[u]}")
        once: dict[int, int] = {}
        twice: set[int] = set()
        for nid in g.iter_inc(u):
            c = g.edge_color[g.node_edge[nid]]
            self.ops += 1
            if c == 0:
                continue
            if c in once:
                del once[c]
                twice.add(c)
            elif c in twice:
                raise ContractError(f"color {c} three times at vertex {u}")
            else:
                once[c] = nid
        return once, twice, set(once) | twice

    # ------------------------------------------------------------------
    # segments

    def clean_segment_between(self, u: int, v_inc: int) -> bool:
        """True iff the segment ending at v_inc is a clean run to u:
        its other terminal sits at u and neither terminal is special."""
        g = self.g
        if g.edge_color[g.node_edge[v_inc]] == 0:
            raise ContractError("segment query on an uncolored edge")
        s = g.node_seg[v_inc]
        self.ops += 1
        if s == -1 or not self.seg_alive[s]:
            return False
        t1, t2 = self.seg_t1[s], self.seg_t2[s]
        other = t2 if t1 == v_inc else t1
        return (
            g.node_owner[other] == u
            and not g.node_special[t1]
            and not g.node_special[t2]
        )

    def _fuse(self, s: int, meet: int, partner_meet: int) -> None:
        g = self.g
        s2 = g.node_seg[partner_meet]
        if s2 == -1 or not self.seg_alive[s2]:
            raise ContractError("fusion partner incidence has no live segment")
        if s2 == s:
            raise ContractError("fusion would close a same-colored cycle")
        o2 = self.seg_t2[s2] if self.seg_t1[s2] == partner_meet else self.seg_t1[s2]
        if self.seg_t1[s] == meet:
            self.seg_t1[s] = o2
        else:
            self.seg_t2[s] = o2
        g.node_seg[o2] = s
        g.node_seg[meet] = -1
        g.node_seg[partner_meet] = -1
        self.seg_alive[s2] = False
        self.ops += 1

    # ------------------------------------------------------------------
    # the single mutating entry point

    def assign_color(self, e: int, i: int, hint: Optional[tuple[str, int]] = None) -> None:
        """Color edge e with i, updating palettes and fusing segments.

        `hint`, when given, is ("miss", node) or ("onc", node): a node
        carrying i at one endpoint, letting that endpoint skip its scan.
        The other endpoint (both, without a hint) must have degree <= 3.
        Never call this when i already appears twice at an endpoint or
        when a clean i-colored run already connects the two endpoints.
        """
        g = self.g
        if not g.edge_alive[e]:
            raise ContractError(f"edge {e} is not alive")
        if g.edge_color[e] != 0:
            raise ContractError(f"edge {e} is already colored; colors are permanent")
        if not 1 <= i <= self.k:
            raise ContractError(f"color {i} outside 1..{self.k}")
        a, b = g.edge_a[e], g.edge_b[e]
        na, nb = g.edge_node(e, a), g.edge_node(e, b)
        g.edge_color[e] = i
        pa = self._palette_update(a, na, i, hint)
        pb = self._palette_update(b, nb, i, hint)
        sid = len(self.seg_t1)
        self.seg_t1.append(na)
        self.seg_t2.append(nb)
        self.seg_color.append(i)
        self.seg_alive.append(True)
        g.node_seg[na] = sid
        g.node_seg[nb] = sid
        self.ops += 1
        if pa != -1 and not g.node_special[na] and not g.node_special[pa]:
            self._fuse(sid, na, pa)
        if pb != -1 and not g.node_special[nb] and not g.node_special[pb]:
            self._fuse(sid, nb, pb)
        if self.debug:
            self.audit()

    def _miss_unlink(self, u: int, nid: int) -> None:
        p, x = self.miss_prev[nid], self.miss_next[nid]
        if p != -1:
            self.miss_next[p] = x
        else:
            self.miss_head[u] = x
        if x != -1:
            self.miss_prev[x] = p
        self.ptrs[u][self.miss_color[nid]] = -1  # nulled defensively
        self.ops += 1

    def _onc_unlink(self, u: int, nid: int) -> None:
        p, x = self.onc_prev[nid], self.onc_next[nid]
        if p != -1:
            self.onc_next[p] = x
        else:
            self.onc_head[u] = x
        if x != -1:
            self.onc_prev[x] = p
        self.ops += 1

    def _onc_push(self, u: int, i: int, inc: int) -> None:
        nid = len(self.onc_color)
        self.onc_color.append(i)
        self.onc_inc.append(inc)
        self.onc_owner.append(u)
        self.onc_prev.append(-1)
        self.onc_next.append(self.onc_head[u])
        if self.onc_head[u] != -1:
            self.onc_prev[self.onc_head[u]] = nid
        self.onc_head[u] = nid
        self.ops += 1

    def _miss_push_head(self, u: int, i: int) -> None:
        # re-inserts go to the head; only the initial build is ascending
        nid = len(self.miss_color)
        self.miss_color.append(i)
        self.miss_owner.append(u)
        self.miss_prev.append(-1)
        self.miss_next.append(self.miss_head[u])
        if self.miss_head[u] != -1:
            self.miss_prev[self.miss_head[u]] = nid
        self.miss_head[u] = nid
        self.ptrs[u][i] = nid
        self.ops += 1

    def transfer_on_split(self, u: int, w: int, moved_inc: int) -> None:
        """Patch both palettes after g.split(u, w) hands the colored
        merged edge back to w on incidence node `moved_inc`.

        The host u sat below the low-degree threshold when it absorbed
        w's edge, so post-split deg(u) <= 2 and a ring scan settles
        whether the departing color was once or twice at u.  The stub w
        had degree 1 before the merge and its other edges are colored
        only after the split, so its stored lists are still the initial
        ones: the color moves from Miss(w) straight to Onc(w).
        """
        g = self.g
        e = g.node_edge[moved_inc]
        c = g.edge_color[e]
        if c == 0:
            raise ContractError("palette transfer on an uncolored edge")
        if g.deg[u] > 2:
            raise ContractError(f"split host {u} has degree {g.deg[u]}")
        if c <= self.cap[w]:
            nid = self.ptrs[w][c]
            if nid == -1:
                raise ContractError(f"missing-list drift at vertex {w} color {c}")
            self._miss_unlink(w, nid)
        self._onc_push(w, c, moved_inc)
        partner = -1
        for nid2 in g.iter_inc(u):
            self.ops += 1
            if g.edge_color[g.node_edge[nid2]] == c:
                if partner != -1:
                    raise ContractError(f"color {c} thrice at vertex {u} before split")
                partner = nid2
        if partner != -1:
            # c was twice at u; it is once again, via the remaining edge
            self._onc_push(u, c, partner)
        else:
            nid = self.onc_head[u]
            while nid != -1 and self.onc_color[nid] != c:
                nid = self.onc_next[nid]
                self.ops += 1
            if nid == -1:
                raise ContractError(f"once-list drift at vertex {u} color {c}")
            self._onc_unlink(u, nid)
            if c <= self.cap[u]:
                self._miss_push_head(u, c)
        if self.debug:
            self.audit()

    def _palette_update(self, x: int, nx: int, i: int, hint) -> int:
        """Record color i arriving at x on incidence nx.

        Returns the incidence node of the one other i-colored edge at x
        (the fusion partner), or -1 when i was missing at x.
        """
        g = self.g
        if hint is not None:
            kind, nid = hint
            if kind == "miss" and self.miss_owner[nid] == x:
                if self.miss_color[nid] != i or self.ptrs[x][i] != nid:
                    raise ContractError("stale miss-node hint")
                self._miss_unlink(x, nid)
                self._onc_push(x, i, nx)
                return -1
            if kind == "onc" and self.onc_owner[nid] == x:
                if self.onc_color[nid] != i:
                    raise ContractError("stale onc-node hint")
                partner = self.onc_inc[nid]
                self._onc_unlink(x, nid)
                return partner
        # unhinted endpoint: a short scan must suffice
        if g.deg[x] > 3:
            raise ContractError(
                f"coloring at vertex {x} of degree {g.deg[x]} without a palette hint"
            )
        partner = -1
        seen = 0
        for nid2 in g.iter_inc(x):
            self.ops += 1
            if nid2 != nx and g.edge_color[g.node_edge[nid2]] == i:
                partner = nid2
                seen += 1
        if seen >= 2:
            raise ContractError(f"color {i} already twice at vertex {x}")
        if seen == 1:
            nid = self.onc_head[x]
            while nid != -1 and self.onc_color[nid] != i:
                nid = self.onc_next[nid]
                self.ops += 1
            if nid == -1:
                raise ContractError(f"once-list drift at vertex {x} color {i}")
            self._onc_unlink(x, nid)
            return partner
        if i <= self.cap[x]:
            nid = self.ptrs[x][i]
            if nid == -1:
                raise ContractError(f"missing-list drift at vertex {x} color {i}")
            self._miss_unlink(x, nid)
        self._onc_push(x, i, nx)
        return -1

    # ------------------------------------------------------------------
    # output

    def coloring(self) -> LinearColoring:
        return LinearColoring(self.k, list(self.g.edge_color))

    # ------------------------------------------------------------------
    # scratch recomputation (debug mode and tests)

    def recompute_segments(self) -> set[tuple[int, frozenset[int]]]:
        """Segments derived from nothing but edge colors and special
        flags: same-colored edges chain through a shared vertex exactly
        when neither incidence there is special.  Raises if some color
        class contains a cycle unbroken by special incidences."""
        g = self.g
        link: dict[int, int] = {}  # incidence node -> incidence node at same vertex
        at: dict[tuple[int, int], list[int]] = {}
        for e in range(len(g.edge_a)):
            if g.edge_alive[e] and g.edge_color[e]:
                c = g.edge_color[e]
                for v in (g.edge_a[e], g.edge_b[e]):
                    at.setdefault((v, c), []).append(g.edge_node(e, v))
        for (v, c), nodes in at.items():
            if len(nodes) > 2:
                raise ContractError(f"color {c} on {len(nodes)} edges at vertex {v}")
            if len(nodes) == 2:
                p, q = nodes
                if not g.node_special[p] and not g.node_special[q]:
                    link[p] = q
                    link[q] = p
        def across(nid: int) -> int:
            ee = g.node_edge[nid]
            return g.edge_nb[ee] if g.edge_na[ee] == nid else g.edge_na[ee]

        out: set[tuple[int, frozenset[int]]] = set()
        visited: set[int] = set()
        for e in range(len(g.edge_a)):
            if not (g.edge_alive[e] and g.edge_color[e]):
                continue
            start = g.edge_node(e, g.edge_a[e])
            if start in visited:
                continue
            component = []
            stack = [start]
            visited.add(start)
            while stack:
                nid = stack.pop()
                component.append(nid)
                for nxt in (across(nid), link.get(nid, -1)):
                    if nxt != -1 and nxt not in visited:
                        visited.add(nxt)
                        stack.append(nxt)
            terminals = [nid for nid in component if nid not in link]
            if not terminals:
                raise ContractError("same-colored cycle with no special break")
            if len(terminals) != 2:
                raise ContractError(f"run with {len(terminals)} loose ends")
            out.add((g.edge_color[e], frozenset(terminals)))
        return out

    def audit(self) -> None:
        """Full consistency check of palettes, pointers and segments."""
        g = self.g
        for u in range(g.n):
            cnt: dict[int, int] = {}
            inc_of: dict[int, int] = {}
            for nid in g.iter_inc(u):
                c = g.edge_color[g.node_edge[nid]]
                if c:
                    cnt[c] = cnt.get(c, 0) + 1
                    inc_of[c] = nid
            if any(v > 2 for v in cnt.values()):
                raise ContractError(f"palette audit: a color appears 3 times at {u}")
            want_miss = {i for i in range(1, self.cap[u] + 1) if i not in cnt}
            got_miss = []
            nid = self.miss_head[u]
            while nid != -1:
                got_miss.append(self.miss_color[nid])
                nid = self.miss_next[nid]
            # order is arbitrary after re-inserts, so compare as sets
            if want_miss != set(got_miss) or len(got_miss) != len(set(got_miss)):
                raise ContractError(f"miss-list drift at {u}: {got_miss} vs {want_miss}")
            for i in range(1, self.cap[u] + 1):
                nid = self.ptrs[u][i]
                if (i in want_miss) != (nid != -1):
                    raise ContractError(f"ptrs drift at {u} color {i}")
                if nid != -1 and (self.miss_color[nid] != i or self.miss_owner[nid] != u):
                    raise ContractError(f"ptrs at {u} color {i} addresses a foreign node")
            want_onc = {(c, inc_of[c]) for c, v in cnt.items() if v == 1}
            got_onc = set()
            nid = self.onc_head[u]
            while nid != -1:
                got_onc.add((self.onc_color[nid], self.onc_inc[nid]))
                nid = self.onc_next[nid]
            if want_onc != got_onc:
                raise ContractError(f"once-list drift at {u}: {got_onc} vs {want_onc}")
        want = self.recompute_segments()
        got = {
            (self.seg_color[s], frozenset({self.seg_t1[s], self.seg_t2[s]}))
            for s in range(len(self.seg_t1))
            if self.seg_alive[s]
        }
        if want != got:
            raise ContractError(f"segment drift: {sorted(map(str, got))} vs {sorted(map(str, want))}")
        terminal_of: dict[int, int] = {}
        for s in range(len(self.seg_t1)):
            if self.seg_alive[s]:
                terminal_of[self.seg_t1[s]] = s
                terminal_of[self.seg_t2[s]] = s
        for nid in range(len(g.node_seg)):
            expect = terminal_of.get(nid, -1)
            if g.node_seg[nid] != expect:
                raise ContractError(f"segment back-reference drift at node {nid}")


# ----------------------------------------------------------------------
# coloring file format: `k <k>` header, one `<u> <v> <color>` line per
# edge, `c mono <v>` comments carrying the monochromatic-vertex report.


def write_coloring(
    g: MutableGraph,
    coloring: LinearColoring,
    mono: Sequence[int] = (),
) -> str:
    lines = [f"k {coloring.k}"]
    for e in range(len(g.edge_a)):
        if not g.edge_alive[e]:
            continue
        a, b = g.edge_a[e] + 1, g.edge_b[e] + 1
        if a > b:
            a, b = b, a
        lines.append(f"{a} {b} {coloring.colors[e]}")
    for v in mono:
        lines.append(f"c mono {v + 1}")
    return "\n".join(lines) + "\n"


def parse_coloring(text: str) -> tuple[int, list[tuple[int, int, int]], list[int]]:
    """Returns (k, [(u, v, color)] 1-indexed, mono vertices 1-indexed)."""
    k = -1
    entries: list[tuple[int, int, int]] = []
    mono: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "c":
            if len(parts) == 3 and parts[1] == "mono":
                mono.append(int(parts[2]))
            continue
        if parts[0] == "k":
            if k != -1 or len(parts) != 2:
                raise ValueError(f"line {lineno}: bad or repeated k header")
            k = int(parts[1])
        else:
            if k == -1:
                raise ValueError(f"line {lineno}: edge line before k header")
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: expected '<u> <v> <color>'")
            u, v, c = int(parts[0]), int(parts[1]), int(parts[2])
            entries.append((u, v, c))
    if k == -1:
        raise ValueError("missing 'k <k>' header")
    return k, entries, mono
