"""Mutable graph with O(1) edge removal/restore and vertex identification.

Everything lives in index-addressed arenas (plain Python lists), so a
"pointer" is just an int and undo never chases freed memory:

* incidence nodes: slots 0..n-1 are per-vertex sentinels of circular
  doubly-linked adjacency rings; edge incidences are allocated in pairs
  after that.  Removing an edge splices its two nodes out but keeps them
  intact (prev/next untouched), so a later restore is two writes per
  node.  That trick only works if undo happens in reverse order, which a
  mutation journal enforces.
* edge records: endpoints, the two incidence node ids, a color slot
  (0 = uncolored) and an alive flag.

On top of the raw structure the graph tracks, for a fixed threshold t
(`low_threshold`), the count deg_low(u) of neighbors whose current
degree is <= t, and any number of intrusive vertex watchlists whose
membership is a predicate over (deg, deg_low).  The built-in `pivots`
list keeps exactly the vertices with at most t neighbors of degree > t
and at least one neighbor of degree <= t; the peeling drivers pop their
work from it.  All maintenance is O(1) per mutation because a vertex
only crosses the threshold when its degree moves between t and t+1, and
at that moment it has at most t+1 neighbors to notify.
"""

from __future__ import annotations

from typing import Iterator, Optional


class GraphFormatError(ValueError):
    """Problem with the text representation of a graph."""


class BadHeader(GraphFormatError):
    pass


class BadVertexIndex(GraphFormatError):
    pass


class DuplicateEdge(GraphFormatError):
    pass


class SelfLoop(GraphFormatError):
    pass


class ContractError(RuntimeError):
    """An operation was called outside its documented precondition."""


class JournalError(ContractError):
    """Undo attempted out of stack order."""


class VertexList:
    """Intrusive doubly-linked list of vertex ids with O(1) everything."""

    __slots__ = ("nxt", "prv", "inside", "head", "size")

    def __init__(self, n: int) -> None:
        self.nxt = [-1] * n
        self.prv = [-1] * n
        self.inside = [False] * n
        self.head = -1
        self.size = 0

    def add(self, u: int) -> None:
        if self.inside[u]:
            return
        self.inside[u] = True
        self.prv[u] = -1
        self.nxt[u] = self.head
        if self.head != -1:
            self.prv[self.head] = u
        self.head = u
        self.size += 1

    def discard(self, u: int) -> None:
        if not self.inside[u]:
            return
        self.inside[u] = False
        p, x = self.prv[u], self.nxt[u]
        if p != -1:
            self.nxt[p] = x
        else:
            self.head = x
        if x != -1:
            self.prv[x] = p
        self.size -= 1

    def __contains__(self, u: int) -> bool:
        return self.inside[u]

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[int]:
        x = self.head
        while x != -1:
            yield x
            x = self.nxt[x]


class MutableGraph:
    def __init__(self, n: int, low_threshold: int = 3) -> None:
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        self.n = n
        self.low = low_threshold
        # incidence node arenas; the first n slots are sentinels
        self.node_owner = list(range(n))
        self.node_edge = [-1] * n
        self.node_prev = list(range(n))
        self.node_next = list(range(n))
        self.node_special = [False] * n
        self.node_seg = [-1] * n
        # edge arenas
        self.edge_a: list[int] = []
        self.edge_b: list[int] = []
        self.edge_na: list[int] = []
        self.edge_nb: list[int] = []
        self.edge_color: list[int] = []
        self.edge_alive: list[bool] = []
        self.deg = [0] * n
        self.orig_deg = [0] * n
        self.deg_low = [0] * n
        self.m_alive = 0
        self.journal: list[tuple] = []
        self.ops = 0
        self._lists: list[tuple[VertexList, object]] = []
        self.pivots = self.add_watchlist(
            lambda d, dl, t=low_threshold: d - dl <= t and dl >= 1
        )

    # ------------------------------------------------------------------
    # watchlists

    def add_watchlist(self, pred) -> VertexList:
        """Register an intrusive vertex list kept in sync with pred(deg, deg_low)."""
        lst = VertexList(self.n)
        self._lists.append((lst, pred))
        for u in range(self.n):
            if pred(self.deg[u], self.deg_low[u]):
                lst.add(u)
        return lst

    def _touch(self, u: int) -> None:
        d, dl = self.deg[u], self.deg_low[u]
        for lst, pred in self._lists:
            if pred(d, dl):
                lst.add(u)
            else:
                lst.discard(u)
        self.ops += 1

    def set_low_threshold(self, t: int) -> None:
        """Re-target deg_low and all watchlists at a new threshold.

        Only legal on a quiescent graph (empty journal): switching t under
        pending undo entries would make their counter math wrong.
        """
        if self.journal:
            raise ContractError("cannot retarget threshold with pending undo entries")
        self.low = t
        dl = [0] * self.n
        for e in range(len(self.edge_a)):
            if self.edge_alive[e]:
                a, b = self.edge_a[e], self.edge_b[e]
                if self.deg[b] <= t:
                    dl[a] += 1
                if self.deg[a] <= t:
                    dl[b] += 1
        self.deg_low = dl
        self._lists = []
        self.pivots = self.add_watchlist(lambda d, dl, tt=t: d - dl <= tt and dl >= 1)

    # ------------------------------------------------------------------
    # construction

    def _new_node(self, owner: int, eid: int) -> int:
        nid = len(self.node_owner)
        self.node_owner.append(owner)
        self.node_edge.append(eid)
        self.node_prev.append(nid)
        self.node_next.append(nid)
        self.node_special.append(False)
        self.node_seg.append(-1)
        return nid

    def _link_tail(self, nid: int) -> None:
        s = self.node_owner[nid]  # sentinel id == vertex id
        last = self.node_prev[s]
        self.node_prev[nid] = last
        self.node_next[nid] = s
        self.node_next[last] = nid
        self.node_prev[s] = nid
        self.ops += 1

    def _unlink(self, nid: int) -> None:
        p, x = self.node_prev[nid], self.node_next[nid]
        self.node_next[p] = x
        self.node_prev[x] = p
        # nid keeps its prev/next so a LIFO relink is two writes
        self.ops += 1

    def _relink(self, nid: int) -> None:
        p, x = self.node_prev[nid], self.node_next[nid]
        self.node_next[p] = nid
        self.node_prev[x] = nid
        self.ops += 1

    def add_edge(self, u: int, v: int) -> int:
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u + 1}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise BadVertexIndex(f"edge endpoint out of range: {u + 1} {v + 1}")
        eid = len(self.edge_a)
        na = self._new_node(u, eid)
        nb = self._new_node(v, eid)
        self.edge_a.append(u)
        self.edge_b.append(v)
        self.edge_na.append(na)
        self.edge_nb.append(nb)
        self.edge_color.append(0)
        self.edge_alive.append(True)
        t = self.low
        self.deg[u] += 1
        self.deg[v] += 1
        self.orig_deg[u] += 1
        self.orig_deg[v] += 1
        touched = [u, v]
        if self.deg[u] == t + 1:  # u just left the low range
            for nid in self.iter_inc(u):
                w = self.edge_other(self.node_edge[nid], u)
                self.deg_low[w] -= 1
                touched.append(w)
        if self.deg[v] == t + 1:
            for nid in self.iter_inc(v):
                w = self.edge_other(self.node_edge[nid], v)
                self.deg_low[w] -= 1
                touched.append(w)
        if self.deg[v] <= t:
            self.deg_low[u] += 1
        if self.deg[u] <= t:
            self.deg_low[v] += 1
        self._link_tail(na)
        self._link_tail(nb)
        self.m_alive += 1
        for w in touched:
            self._touch(w)
        return eid

    # ------------------------------------------------------------------
    # queries

    def iter_inc(self, u: int) -> Iterator[int]:
        """Incidence node ids currently linked at u."""
        s = u
        x = self.node_next[s]
        while x != s:
            yield x
            x = self.node_next[x]

    def neighbors(self, u: int) -> Iterator[tuple[int, int, int]]:
        """Yield (other endpoint, edge id, incidence node id at u)."""
        for nid in self.iter_inc(u):
            e = self.node_edge[nid]
            yield self.edge_other(e, u), e, nid

    def edge_other(self, eid: int, u: int) -> int:
        a = self.edge_a[eid]
        return self.edge_b[eid] if a == u else a

    def edge_node(self, eid: int, u: int) -> int:
        """The incidence node of eid on u's side."""
        if self.edge_a[eid] == u:
            return self.edge_na[eid]
        if self.edge_b[eid] == u:
            return self.edge_nb[eid]
        raise ContractError(f"vertex {u} is not an endpoint of edge {eid}")

    def find_edge(self, u: int, v: int) -> Optional[int]:
        """Alive edge between u and v, scanning u's ring (call with small deg(u))."""
        for nid in self.iter_inc(u):
            e = self.node_edge[nid]
            if self.edge_other(e, u) == v:
                return e
        return None

    def find_pivot_edge(self) -> Optional[tuple[int, int, int]]:
        """(pivot v, neighbor u with deg(u) <= t, edge id), or None.

        The pivot comes from the head of the pivots list; its low
        neighbor is within the first t+1 incidence nodes because a pivot
        has at most t neighbors above the threshold.
        """
        v = self.pivots.head
        if v == -1:
            return None
        t = self.low
        scanned = 0
        for nid in self.iter_inc(v):
            e = self.node_edge[nid]
            u = self.edge_other(e, v)
            if self.deg[u] <= t:
                return v, u, e
            scanned += 1
            if scanned > t:
                break
        raise ContractError(f"pivot list corrupt: no low neighbor at vertex {v}")

    # ------------------------------------------------------------------
    # mutations (journaled)

    def remove_edge(self, eid: int) -> None:
        if not self.edge_alive[eid]:
            raise ContractError(f"edge {eid} is not alive")
        t = self.low
        a, b = self.edge_a[eid], self.edge_b[eid]
        touched = [a, b]
        if self.deg[b] <= t:
            self.deg_low[a] -= 1
        if self.deg[a] <= t:
            self.deg_low[b] -= 1
        self._unlink(self.edge_na[eid])
        self._unlink(self.edge_nb[eid])
        self.deg[a] -= 1
        self.deg[b] -= 1
        if self.deg[a] == t:  # a just dropped into the low range
            for nid in self.iter_inc(a):
                w = self.edge_other(self.node_edge[nid], a)
                self.deg_low[w] += 1
                touched.append(w)
        if self.deg[b] == t:
            for nid in self.iter_inc(b):
                w = self.edge_other(self.node_edge[nid], b)
                self.deg_low[w] += 1
                touched.append(w)
        self.edge_alive[eid] = False
        self.m_alive -= 1
        self.journal.append(("E", eid))
        for w in touched:
            self._touch(w)

    def restore_edge(self, eid: int) -> None:
        if not self.journal or self.journal[-1] != ("E", eid):
            raise JournalError(f"restore of edge {eid} is out of order")
        t = self.low
        a, b = self.edge_a[eid], self.edge_b[eid]
        touched = [a, b]
        if self.deg[a] == t:
            for nid in self.iter_inc(a):
                w = self.edge_other(self.node_edge[nid], a)
                self.deg_low[w] -= 1
                touched.append(w)
        if self.deg[b] == t:
            for nid in self.iter_inc(b):
                w = self.edge_other(self.node_edge[nid], b)
                self.deg_low[w] -= 1
                touched.append(w)
        self.deg[a] += 1
        self.deg[b] += 1
        self._relink(self.edge_na[eid])
        self._relink(self.edge_nb[eid])
        if self.deg[b] <= t:
            self.deg_low[a] += 1
        if self.deg[a] <= t:
            self.deg_low[b] += 1
        self.edge_alive[eid] = True
        self.m_alive += 1
        self.journal.pop()
        for w in touched:
            self._touch(w)

    def identify(self, u: int, w: int) -> None:
        """Merge w (degree exactly 1) into u: w's last edge becomes u's.

        The incidence node itself migrates, so any flags or segment
        references riding on it stay valid and mean the right thing both
        before and after the later split.
        """
        t = self.low
        if self.deg[w] != 1:
            raise ContractError(f"identify requires deg({w}) == 1, got {self.deg[w]}")
        if self.deg[u] > 2:
            raise ContractError(f"identify requires deg({u}) <= 2, got {self.deg[u]}")
        nw = self.node_next[w]
        e = self.node_edge[nw]
        y = self.edge_other(e, w)
        if y == u:
            raise ContractError("identify would create a self-loop")
        for nid in self.iter_inc(u):
            if self.edge_other(self.node_edge[nid], u) == y:
                raise ContractError("identify would create a parallel edge")
        touched = [u, w, y]
        if self.deg[y] <= t:
            self.deg_low[w] -= 1
        self._unlink(nw)
        self.deg[w] = 0
        self.deg[u] += 1
        if self.deg[u] == t + 1:
            for nid in self.iter_inc(u):
                x = self.edge_other(self.node_edge[nid], u)
                self.deg_low[x] -= 1
                touched.append(x)
        if self.deg[y] <= t:
            self.deg_low[u] += 1
        self.deg_low[y] += (1 if self.deg[u] <= t else 0) - 1
        if self.edge_a[e] == w:
            self.edge_a[e] = u
            side = 0
        else:
            self.edge_b[e] = u
            side = 1
        self.node_owner[nw] = u
        self._link_tail(nw)
        self.journal.append(("I", u, w, e, nw, side))
        for x in touched:
            self._touch(x)

    def split(self, u: int, w: int) -> None:
        if not self.journal or self.journal[-1][:3] != ("I", u, w):
            raise JournalError(f"split of ({u},{w}) is out of order")
        _, _, _, e, nw, side = self.journal[-1]
        t = self.low
        y = self.edge_other(e, u)
        touched = [u, w, y]
        self._unlink(nw)
        self.node_owner[nw] = w
        if side == 0:
            self.edge_a[e] = w
        else:
            self.edge_b[e] = w
        self.deg_low[y] -= (1 if self.deg[u] <= t else 0) - 1
        if self.deg[y] <= t:
            self.deg_low[u] -= 1
        if self.deg[u] == t + 1:
            for nid in self.iter_inc(u):
                x = self.edge_other(self.node_edge[nid], u)
                self.deg_low[x] += 1
                touched.append(x)
        self.deg[u] -= 1
        self.deg[w] = 1
        self._link_tail(nw)
        if self.deg[y] <= t:
            self.deg_low[w] += 1
        self.journal.pop()
        for x in touched:
            self._touch(x)

    # ------------------------------------------------------------------
    # degeneracy

    def degeneracy_order(self) -> tuple[int, list[int]]:
        """Degeneracy t and a witnessing peel order (min-degree first).

        Bucket queue with lazy (stale-tolerant) entries; O(n + m).  The
        alive subgraph is inspected, nothing is mutated.
        """
        n = self.n
        adj: list[list[int]] = [[] for _ in range(n)]
        for e in range(len(self.edge_a)):
            if self.edge_alive[e]:
                a, b = self.edge_a[e], self.edge_b[e]
                adj[a].append(b)
                adj[b].append(a)
        deg = [len(a) for a in adj]
        maxd = max(deg, default=0)
        buckets: list[list[int]] = [[] for _ in range(maxd + 1)]
        for u in range(n):
            buckets[deg[u]].append(u)
        seen = [False] * n
        order: list[int] = []
        t = 0
        cur = 0
        for _ in range(n):
            while cur < len(buckets) and not buckets[cur]:
                cur += 1
            # stale entries: pop until a live vertex with matching degree
            while True:
                while cur < len(buckets) and not buckets[cur]:
                    cur += 1
                u = buckets[cur].pop()
                if not seen[u] and deg[u] == cur:
                    break
            seen[u] = True
            order.append(u)
            t = max(t, cur)
            for v in adj[u]:
                if not seen[v]:
                    deg[v] -= 1
                    buckets[deg[v]].append(v)
                    if deg[v] < cur:
                        cur = deg[v]
        return t, order

    # ------------------------------------------------------------------
    # integrity helpers (tests and debug drivers)

    def check_counters(self) -> None:
        """Recompute degree/deg_low/watchlists from scratch and compare."""
        t = self.low
        deg = [0] * self.n
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u in range(self.n):
            for nid in self.iter_inc(u):
                e = self.node_edge[nid]
                if not self.edge_alive[e]:
                    raise ContractError(f"dead edge {e} linked at {u}")
                if self.node_owner[nid] != u:
                    raise ContractError(f"node {nid} linked at {u} but owned elsewhere")
                deg[u] += 1
                nbrs[u].append(self.edge_other(e, u))
        if deg != self.deg:
            raise ContractError(f"degree counters drifted: {self.deg} vs {deg}")
        dl = [sum(1 for v in nbrs[u] if deg[v] <= t) for u in range(self.n)]
        if dl != self.deg_low:
            raise ContractError(f"deg_low counters drifted: {self.deg_low} vs {dl}")
        for lst, pred in self._lists:
            want = {u for u in range(self.n) if pred(deg[u], dl[u])}
            got = set(lst)
            if want != got:
                raise ContractError(f"watchlist drifted: {sorted(got)} vs {sorted(want)}")

    def snapshot(self) -> tuple:
        """Canonical full-state tuple; two equal snapshots mean equal graphs."""
        edges = tuple(
            sorted(
                (min(self.edge_a[e], self.edge_b[e]), max(self.edge_a[e], self.edge_b[e]))
                for e in range(len(self.edge_a))
                if self.edge_alive[e]
            )
        )
        return (
            edges,
            tuple(self.deg),
            tuple(self.deg_low),
            frozenset(self.pivots),
            tuple(self.node_special),
            tuple(self.edge_color),
        )


# ----------------------------------------------------------------------
# text format: `p <n> <m>` header, `e <u> <v>` per edge (1-indexed),
# `c ...` comments.  Endpoints are written low-first; read either way.


def parse_graph(text: str, low_threshold: int = 3) -> MutableGraph:
    n = m = -1
    g: Optional[MutableGraph] = None
    seen: set[tuple[int, int]] = set()
    count = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if g is not None:
                raise BadHeader(f"line {lineno}: second header")
            if len(parts) != 3:
                raise BadHeader(f"line {lineno}: expected 'p <n> <m>'")
            try:
                n, m = int(parts[1]), int(parts[2])
            except ValueError:
                raise BadHeader(f"line {lineno}: non-integer header fields") from None
            if n < 0 or m < 0:
                raise BadHeader(f"line {lineno}: negative counts")
            g = MutableGraph(n, low_threshold)
        elif parts[0] == "e":
            if g is None:
                raise BadHeader(f"line {lineno}: edge before header")
            if len(parts) != 3:
                raise GraphFormatError(f"line {lineno}: expected 'e <u> <v>'")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer endpoints") from None
            if u == v:
                raise SelfLoop(f"line {lineno}: self-loop at {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise BadVertexIndex(f"line {lineno}: endpoint out of 1..{n}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise DuplicateEdge(f"line {lineno}: duplicate edge {key[0]} {key[1]}")
            seen.add(key)
            g.add_edge(u - 1, v - 1)
            count += 1
        else:
            raise GraphFormatError(f"line {lineno}: unknown line type {parts[0]!r}")
    if g is None:
        raise BadHeader("missing 'p <n> <m>' header")
    if count != m:
        raise BadHeader(f"header announced {m} edges, file has {count}")
    return g


def write_graph(g: MutableGraph, comments: Optional[list[str]] = None) -> str:
    lines = []
    for note in comments or []:
        lines.append(f"c {note}")
    lines.append(f"p {g.n} {g.m_alive}")
    for e in range(len(g.edge_a)):
        if g.edge_alive[e]:
            a, b = g.edge_a[e] + 1, g.edge_b[e] + 1
            if a > b:
                a, b = b, a
            lines.append(f"e {a} {b}")
    return "\n".join(lines) + "\n"
