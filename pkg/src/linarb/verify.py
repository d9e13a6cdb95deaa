"""Independent correctness machinery.

Nothing in this module trusts the coloring engines: every check
recounts from raw edge colors and raw adjacency.  The verifier uses
per-color union-find for acyclicity; `acyclic_by_dfs` is a second,
deliberately separate route used by the test suite to cross-check the
union-find answer.  `brute_force_chi_l` is an exact (exponential)
oracle for small instances, and `class_checks` decides membership in
the graph classes the coloring drivers care about.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .graph import ContractError, MutableGraph

BRUTE_FORCE_EDGE_CAP = 14


class EdgeCapExceeded(ValueError):
    pass


@dataclass
class VerifyReport:
    valid: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.valid


def _alive_edges(g: MutableGraph) -> list[tuple[int, int, int]]:
    return [
        (e, g.edge_a[e], g.edge_b[e])
        for e in range(len(g.edge_a))
        if g.edge_alive[e]
    ]


def verify_linear_coloring(g: MutableGraph, colors: Sequence[int], k: int) -> VerifyReport:
    """Check that `colors` (edge id -> color) is a k-linear coloring of g.

    Valid means: every alive edge has a color in 1..k, no vertex sees
    the same color on more than two incident edges, and no color class
    contains a cycle (checked with union-find per color).
    """
    edges = _alive_edges(g)
    if len(colors) != len(g.edge_a):
        return VerifyReport(False, f"coloring covers {len(colors)} edge slots, graph has {len(g.edge_a)}")
    for e, _, _ in edges:
        c = colors[e]
        if not (1 <= c <= k):
            return VerifyReport(False, f"edge {e} has color {c}, outside 1..{k}")
    seen: dict[tuple[int, int], int] = {}
    for e, a, b in edges:
        c = colors[e]
        for v in (a, b):
            seen[v, c] = seen.get((v, c), 0) + 1
            if seen[v, c] > 2:
                return VerifyReport(False, f"vertex {v + 1} has 3 edges of color {c}")
    parent = list(range(g.n * (k + 1)))  # one forest per color, flattened

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, a, b in edges:
        c = colors[e]
        ra, rb = find(c * g.n + a), find(c * g.n + b)
        if ra == rb:
            return VerifyReport(False, f"color {c} contains a cycle through edge {e}")
        parent[ra] = rb
    return VerifyReport(True)


def acyclic_by_dfs(g: MutableGraph, colors: Sequence[int], color: int) -> bool:
    """Second-opinion acyclicity for one color class, by iterative DFS."""
    adj: dict[int, list[int]] = {}
    for e, a, b in _alive_edges(g):
        if colors[e] == color:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
    visited: set[int] = set()
    for root in adj:
        if root in visited:
            continue
        stack = [(root, -1)]
        visited.add(root)
        while stack:
            u, parent_v = stack.pop()
            skipped_parent = False
            for v in adj.get(u, ()):
                if v == parent_v and not skipped_parent:
                    skipped_parent = True  # one slot for the tree edge back up
                    continue
                if v in visited:
                    return False
                visited.add(v)
                stack.append((v, u))
    return True


def count_mono_and_pairs(
    g: MutableGraph,
    colors: Sequence[int],
    pairs: Sequence[tuple[int, int]] = (),
) -> tuple[list[int], bool]:
    """Recount monochromatic vertices and pair satisfaction from raw colors.

    A monochromatic vertex has degree exactly 2 with both incident edges
    sharing a color.  A pair is satisfied when at most one of its two
    vertices is monochromatic.
    """
    at: dict[int, list[int]] = {}
    for e, a, b in _alive_edges(g):
        at.setdefault(a, []).append(colors[e])
        at.setdefault(b, []).append(colors[e])
    mono = [
        v
        for v, cs in sorted(at.items())
        if len(cs) == 2 and cs[0] == cs[1]
    ]
    mono_set = set(mono)
    ok = all((a in mono_set) + (b in mono_set) <= 1 for a, b in pairs)
    return mono, ok


# ----------------------------------------------------------------------
# exact backtracking oracle


def exists_k_linear(g: MutableGraph, k: int) -> Optional[list[int]]:
    """Find some k-linear coloring by backtracking, or None.

    Edges are tried hardest-first (max endpoint degree, then id), colors
    in ascending order, with the usual symmetry break that a fresh color
    may only be opened in index order.  Pruning: a color is rejected at
    an edge if either endpoint already has it twice, or it would close a
    monochromatic cycle (incremental union-find with rollback).
    """
    edges = _alive_edges(g)
    m = len(edges)
    if m == 0:
        return [0] * len(g.edge_a)
    deg: dict[int, int] = {}
    for _, a, b in edges:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    edges.sort(key=lambda t: (-max(deg[t[1]], deg[t[2]]), t[0]))
    n = g.n
    parent = [list(range(n)) for _ in range(k)]
    size = [[1] * n for _ in range(k)]
    cnt = [0] * (n * k)
    out = [0] * len(g.edge_a)

    def find(c: int, x: int) -> int:
        p = parent[c]
        while p[x] != x:
            x = p[x]
        return x

    def attempt(idx: int, used: int) -> bool:
        if idx == m:
            return True
        e, a, b = edges[idx]
        limit = min(k, used + 1)
        for c in range(limit):
            if cnt[a * k + c] >= 2 or cnt[b * k + c] >= 2:
                continue
            ra, rb = find(c, a), find(c, b)
            if ra == rb:
                continue
            if size[c][ra] > size[c][rb]:
                ra, rb = rb, ra
            parent[c][ra] = rb
            size[c][rb] += size[c][ra]
            cnt[a * k + c] += 1
            cnt[b * k + c] += 1
            out[e] = c + 1
            if attempt(idx + 1, max(used, c + 1)):
                return True
            out[e] = 0
            cnt[a * k + c] -= 1
            cnt[b * k + c] -= 1
            size[c][rb] -= size[c][ra]
            parent[c][ra] = ra
        return False

    if attempt(0, 0):
        return out
    return None


def brute_force_chi_l(g: MutableGraph, max_colors: int) -> Optional[int]:
    """Exact minimum number of linear forests partitioning E(g).

    Capped at 14 edges; the search is exponential.  Returns None when
    even max_colors colors do not suffice.
    """
    m = g.m_alive
    if m > BRUTE_FORCE_EDGE_CAP:
        raise EdgeCapExceeded(f"{m} edges exceeds the exact-search cap of {BRUTE_FORCE_EDGE_CAP}")
    if m == 0:
        return 0
    for k in range(1, max_colors + 1):
        if exists_k_linear(g, k) is not None:
            return k
    return None


# ----------------------------------------------------------------------
# class membership


@dataclass
class ClassReport:
    degeneracy: int
    max_degree: int
    is_bipartite: bool
    is_maximal_2deg: bool
    is_partial_2tree: bool
    f_index: Optional[int]  # 2n - m, only for 2-degenerate graphs with max degree <= 4


def _is_bipartite(g: MutableGraph) -> bool:
    color = [-1] * g.n
    for start in range(g.n):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            u = queue.pop()
            for v, _, _ in g.neighbors(u):
                if color[v] == -1:
                    color[v] = color[u] ^ 1
                    queue.append(v)
                elif color[v] == color[u]:
                    return False
    return True


def _is_partial_2tree(g: MutableGraph) -> bool:
    """Series-parallel style reduction: repeatedly delete degree-<=1
    vertices and contract degree-2 vertices (adding the bypass edge if
    absent).  Reduces to nothing exactly for treewidth <= 2."""
    adj: list[set[int]] = [set() for _ in range(g.n)]
    for _, a, b in _alive_edges(g):
        adj[a].add(b)
        adj[b].add(a)
    pending = [u for u in range(g.n) if len(adj[u]) <= 2]
    gone = [False] * g.n
    while pending:
        u = pending.pop()
        if gone[u] or len(adj[u]) > 2:
            continue
        gone[u] = True
        if len(adj[u]) == 2:
            x, y = adj[u]
            adj[x].discard(u)
            adj[y].discard(u)
            if y not in adj[x]:
                adj[x].add(y)
                adj[y].add(x)
            for w in (x, y):
                if len(adj[w]) <= 2:
                    pending.append(w)
        elif len(adj[u]) == 1:
            (x,) = adj[u]
            adj[x].discard(u)
            if len(adj[x]) <= 2:
                pending.append(x)
        adj[u].clear()
    return all(gone[u] or not adj[u] for u in range(g.n))


def class_checks(g: MutableGraph) -> ClassReport:
    t, _ = g.degeneracy_order()
    maxd = max(g.deg, default=0)
    n, m = g.n, g.m_alive
    two_deg = t <= 2
    return ClassReport(
        degeneracy=t,
        max_degree=maxd,
        is_bipartite=_is_bipartite(g),
        is_maximal_2deg=two_deg and m == 2 * n - 3,
        is_partial_2tree=_is_partial_2tree(g),
        f_index=(2 * n - m) if (two_deg and maxd <= 4) else None,
    )


def validate_pairs(g: MutableGraph, pairs: Sequence[tuple[int, int]]) -> None:
    """Pairs must be disjoint and consist of degree-2 vertices."""
    seen: set[int] = set()
    for a, b in pairs:
        if a == b:
            raise ContractError(f"pair ({a + 1},{b + 1}) repeats a vertex")
        for v in (a, b):
            if not (0 <= v < g.n):
                raise ContractError(f"pair vertex {v + 1} out of range")
            if g.deg[v] != 2:
                raise ContractError(f"pair vertex {v + 1} has degree {g.deg[v]}, need 2")
            if v in seen:
                raise ContractError(f"vertex {v + 1} appears in two pairs")
            seen.add(v)
