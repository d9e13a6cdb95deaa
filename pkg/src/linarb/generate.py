"""Seeded graph generators, an exhaustive small-graph explorer, and a
scaling benchmark.

Every generator is deterministic in its seed.  Randomness goes through
``random.Random`` and only its ``randrange``/``random`` primitives, so a
seed reproduces the same graph across platforms.  Uniform sampling
without replacement is a partial Fisher-Yates over an explicit pool
(`_draw`), never ``Random.sample``, whose internals are less stable.

The explorer enumerates connected graphs of bounded degeneracy by
extending a construction order: a new last vertex joins 1..t existing
vertices.  Any connected t-degenerate graph (t <= 3) has a non-cut
vertex of degree <= t in every leaf block, so deleting one keeps the
rest connected and the extension walk reaches every isomorphism class.
Classes are deduplicated with a refinement hash plus an explicit
isomorphism check inside hash buckets.
"""

from dataclasses import dataclass
import gc
from itertools import combinations
import random
import time
from typing import Iterator, Optional, Sequence

from .color2deg import color_2deg_dense, hamiltonian_path_from
from .color3deg import color_3deg
from .graph import ContractError, MutableGraph, write_graph
from .verify import count_mono_and_pairs, exists_k_linear, verify_linear_coloring


# ---------------------------------------------------------------------------
# pool sampling


def _draw(rng: random.Random, pool: list[int], pos: dict[int, int], k: int) -> list[int]:
    """Pick k distinct pool entries uniformly, reordering the pool in place.

    Partial Fisher-Yates: the chosen entry swaps to the tail, so each
    later draw sees one fewer candidate.  `pos` tracks positions so
    `_drop` stays O(1) after arbitrary reordering.
    """
    picked = []
    last = len(pool) - 1
    for _ in range(k):
        j = rng.randrange(last + 1)
        u, v = pool[j], pool[last]
        pool[j], pool[last] = v, u
        pos[v], pos[u] = j, last
        picked.append(u)
        last -= 1
    return picked


def _drop(pool: list[int], pos: dict[int, int], v: int) -> None:
    i = pos.pop(v)
    w = pool[-1]
    pool[i] = w
    pool.pop()
    if w != v:
        pos[w] = i


def _add(pool: list[int], pos: dict[int, int], v: int) -> None:
    pos[v] = len(pool)
    pool.append(v)


# ---------------------------------------------------------------------------
# generators


def gen_random_tdeg(n: int, t: int, dmax: int, seed: int) -> MutableGraph:
    """Random connected graph of degeneracy <= t and max degree <= dmax.

    Vertex i joins between 1 and t earlier vertices, chosen uniformly
    without replacement among those of current degree below dmax (the
    draw is capped by the pool size).  Insertion order is therefore a
    witnessing peel order.  Tight degree caps can strand a prefix with
    every earlier vertex saturated; the build then restarts on the same
    stream, and after eight dead ends the instance is reported
    infeasible.
    """
    if n < 1:
        raise ValueError(f"need at least one vertex, got {n}")
    if t not in (1, 2, 3):
        raise ValueError(f"degeneracy target must be 1, 2 or 3, got {t}")
    if dmax < t:
        raise ValueError(f"max degree {dmax} cannot sit below degeneracy {t}")
    rng = random.Random(seed)
    for _ in range(8):
        g = _try_tdeg(n, t, dmax, rng)
        if g is not None:
            return g
    raise ValueError(
        f"no room for {n} vertices at degeneracy {t} under max degree {dmax}"
    )


def _try_tdeg(n: int, t: int, dmax: int, rng: random.Random) -> Optional[MutableGraph]:
    g = MutableGraph(n)
    pool = [0]
    pos = {0: 0}
    for i in range(1, n):
        if not pool:
            return None
        want = 1 + rng.randrange(min(t, i))
        for j in _draw(rng, pool, pos, min(want, len(pool))):
            g.add_edge(j, i)
            if g.deg[j] == dmax:
                _drop(pool, pos, j)
        if g.deg[i] < dmax:
            _add(pool, pos, i)
    return g


def gen_maximal_2deg_maxdeg4(n: int, seed: int) -> MutableGraph:
    """Edge-maximal 2-degenerate graph with max degree 4: |E| = 2n - 3.

    Grows from a triangle; each new vertex joins a uniformly chosen
    pair of distinct vertices of degree <= 3, adjacent or not.  Such a
    pair always exists (degrees sum to 4n - 6, so at most one vertex
    short of two can sit at degree 4), hence no retries.
    """
    if n < 3:
        raise ValueError(f"need at least a triangle, got n = {n}")
    rng = random.Random(seed)
    g = MutableGraph(n)
    g.add_edge(0, 1)
    g.add_edge(0, 2)
    g.add_edge(1, 2)
    pool = [0, 1, 2]
    pos = {0: 0, 1: 1, 2: 2}
    for i in range(3, n):
        if len(pool) < 2:
            # unreachable for n >= 3: degrees sum to 4n - 6, so two
            # vertices below degree 4 always remain
            raise ValueError(f"no attachment pair below degree 4 at vertex {i}")
        for j in _draw(rng, pool, pos, 2):
            g.add_edge(j, i)
            if g.deg[j] == 4:
                _drop(pool, pos, j)
        _add(pool, pos, i)
    return g


def gen_subdivision(g: MutableGraph) -> MutableGraph:
    """Subdivide every alive edge once: n' = n + m, m' = 2m.

    The result is bipartite (originals vs. midpoints) and 2-degenerate
    (midpoints have degree 2 and peel first) whatever the input was.
    """
    mids = [e for e in range(len(g.edge_a)) if g.edge_alive[e]]
    h = MutableGraph(g.n + len(mids))
    for idx, e in enumerate(mids):
        mid = g.n + idx
        h.add_edge(g.edge_a[e], mid)
        h.add_edge(mid, g.edge_b[e])
    return h


def gen_partial2tree_maxdeg4(n: int, seed: int) -> MutableGraph:
    """Random partial 2-tree with max degree 4.

    Grows from a triangle.  Each new vertex attaches onto an existing
    edge: to both endpoints (when some edge still has both below degree
    4) or, as a fallback and occasionally by choice, to a single vertex
    below degree 4.  Leaf attachment keeps the partial 2-tree property
    because any host 2-tree accepts a pendant vertex anywhere.
    """
    if n < 3:
        raise ValueError(f"need at least a triangle, got n = {n}")
    rng = random.Random(seed)
    g = MutableGraph(n)
    epool = [g.add_edge(0, 1), g.add_edge(0, 2), g.add_edge(1, 2)]
    epos = {e: i for i, e in enumerate(epool)}
    vpool = [0, 1, 2]
    vpos = {0: 0, 1: 1, 2: 2}
    for i in range(3, n):
        ends = _pick_live_edge(rng, g, epool, epos) if rng.random() < 0.7 else None
        if ends is None:
            # single-edge attachment; a vertex below degree 4 always
            # exists since degrees average below four
            while True:
                (u,) = _draw(rng, vpool, vpos, 1)
                if g.deg[u] <= 3:
                    break
                _drop(vpool, vpos, u)
            ends = (u,)
        for u in ends:
            e = g.add_edge(u, i)
            if g.deg[u] == 4:
                if u in vpos:
                    _drop(vpool, vpos, u)
            else:
                _add(epool, epos, e)
        _add(vpool, vpos, i)
    return g


def _pick_live_edge(
    rng: random.Random, g: MutableGraph, epool: list[int], epos: dict[int, int]
) -> Optional[tuple[int, int]]:
    """An edge with both endpoints below degree 4, or None when none is left.

    The pool holds edges that qualified when inserted; endpoint degrees
    only grow, so stale entries are discarded on contact.
    """
    while epool:
        (e,) = _draw(rng, epool, epos, 1)
        a, b = g.edge_a[e], g.edge_b[e]
        if g.deg[a] <= 3 and g.deg[b] <= 3:
            return (a, b)
        _drop(epool, epos, e)
    return None


def gen_bipartite_2deg(n: int, dmax: int, seed: int) -> MutableGraph:
    """Random connected bipartite 2-degenerate graph, max degree <= dmax.

    Same growth as :func:`gen_random_tdeg` with t = 2, except each
    vertex lands on a side and only attaches across.  A vertex whose
    opposite side is saturated switches sides; if both sides are full
    the build restarts, and after eight dead ends the instance is
    reported infeasible.
    """
    if n < 2:
        raise ValueError(f"need both sides populated, got n = {n}")
    if dmax < 2:
        raise ValueError(f"max degree must be at least 2, got {dmax}")
    rng = random.Random(seed)
    for _ in range(8):
        g = _try_bipartite(n, dmax, rng)
        if g is not None:
            return g
    raise ValueError(
        f"no room for {n} vertices on two sides under max degree {dmax}"
    )


def _try_bipartite(n: int, dmax: int, rng: random.Random) -> Optional[MutableGraph]:
    g = MutableGraph(n)
    pools: list[list[int]] = [[0], []]
    poss: list[dict[int, int]] = [{0: 0}, {}]
    for i in range(1, n):
        side = rng.randrange(2) if i > 1 else 1
        if not pools[1 - side]:
            side = 1 - side
            if not pools[1 - side]:
                return None
        opp, opos = pools[1 - side], poss[1 - side]
        want = 1 + rng.randrange(2) if i > 1 else 1
        for j in _draw(rng, opp, opos, min(want, len(opp))):
            g.add_edge(j, i)
            if g.deg[j] == dmax:
                _drop(opp, opos, j)
        if g.deg[i] < dmax:
            _add(pools[side], poss[side], i)
    return g


# ---------------------------------------------------------------------------
# exhaustive enumeration

Edges = tuple[tuple[int, int], ...]


def _refine_hash(adj: list[list[int]]) -> int:
    """Isomorphism-invariant hash: three rounds of neighbor-color refinement."""
    colors = [len(a) for a in adj]
    for _ in range(3):
        colors = [hash((colors[v], tuple(sorted(colors[w] for w in adj[v])))) for v in range(len(adj))]
    return hash(tuple(sorted(colors)))


def _isomorphic(adj1: list[list[int]], adj2: list[list[int]]) -> bool:
    n = len(adj1)
    if n != len(adj2):
        return False
    deg1 = sorted(len(a) for a in adj1)
    deg2 = sorted(len(a) for a in adj2)
    if deg1 != deg2:
        return False
    sets2 = [set(a) for a in adj2]
    order = sorted(range(n), key=lambda v: -len(adj1[v]))
    image = [-1] * n
    used = [False] * n

    def place(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        need = len(adj1[v])
        mapped = [image[w] for w in adj1[v] if image[w] >= 0]
        for c in range(n):
            if used[c] or len(adj2[c]) != need:
                continue
            if any(mc not in sets2[c] for mc in mapped):
                continue
            image[v] = c
            used[c] = True
            if place(i + 1):
                return True
            image[v] = -1
            used[c] = False
        return False

    return place(0)


def enumerate_connected(
    max_n: int, back: int = 2, dmax: Optional[int] = None
) -> Iterator[tuple[int, Edges]]:
    """One representative per isomorphism class of the connected graphs
    on 1..max_n vertices with degeneracy <= back (and max degree <= dmax
    when given).

    Vertices of a representative are 0..n-1 in a construction order:
    each vertex has at most `back` neighbors before it.
    """
    if max_n < 1:
        raise ValueError(f"need at least one vertex, got {max_n}")
    if back not in (1, 2, 3):
        raise ValueError(f"back-degree must be 1, 2 or 3, got {back}")
    level: list[list[list[int]]] = [[[]]]  # the one-vertex graph
    yield (1, ())
    for n in range(2, max_n + 1):
        buckets: dict[int, list[list[list[int]]]] = {}
        reps: list[list[list[int]]] = []
        last = n - 1
        for adj in level:
            room = [v for v in range(last) if dmax is None or len(adj[v]) < dmax]
            for k in range(1, min(back, last) + 1):
                for chosen in combinations(room, k):
                    cand = [list(a) for a in adj]
                    cand.append(list(chosen))
                    for v in chosen:
                        cand[v].append(last)
                    key = _refine_hash(cand)
                    bucket = buckets.setdefault(key, [])
                    if any(_isomorphic(cand, seen) for seen in bucket):
                        continue
                    bucket.append(cand)
                    reps.append(cand)
        for adj in reps:
            yield (n, tuple((u, v) for v in range(n) for u in adj[v] if u < v))
        level = reps


def _to_graph(n: int, edges: Edges) -> MutableGraph:
    g = MutableGraph(n)
    for u, v in edges:
        g.add_edge(u, v)
    return g


# ---------------------------------------------------------------------------
# conjecture search


@dataclass
class ExploreReport:
    """Outcome of an exhaustive search for a 2-degenerate graph of max
    degree 3 or 4 that admits no 2-linear coloring."""

    max_n: int
    classes: int
    tested: int
    counterexamples: list[tuple[int, Edges]]

    def render(self) -> str:
        if not self.counterexamples:
            return f"none {self.max_n}"
        parts = []
        for n, edges in self.counterexamples:
            parts.append(write_graph(_to_graph(n, edges)))
        return "\n".join(parts)


def explore_conjecture(max_n: int) -> ExploreReport:
    """Enumerate connected 2-degenerate graphs with max degree <= 4 up
    to max_n vertices and try a 2-linear coloring on each by
    backtracking.

    Graphs of max degree below 3 are enumerated but not tested; paths
    and cycles are settled already and sit outside the claim.  Budget:
    class counts grow quickly, so max_n is capped at 10.
    """
    if not 1 <= max_n <= 10:
        raise ValueError(f"search is budgeted for 1..10 vertices, got {max_n}")
    classes = tested = 0
    bad: list[tuple[int, Edges]] = []
    for n, edges in enumerate_connected(max_n, back=2, dmax=4):
        classes += 1
        g = _to_graph(n, edges)
        if max(g.deg) < 3:
            continue
        tested += 1
        if exists_k_linear(g, 2) is None:
            bad.append((n, edges))
    return ExploreReport(max_n=max_n, classes=classes, tested=tested, counterexamples=bad)


# ---------------------------------------------------------------------------
# scaling benchmark


@dataclass(frozen=True)
class BenchRow:
    n: int
    m: int
    millis: float
    ops: int


def format_bench(rows: Sequence[BenchRow]) -> str:
    return "\n".join(f"{r.n}\t{r.m}\t{r.millis:.3f}\t{r.ops}" for r in rows)


def ops_slope(rows: Sequence[BenchRow]) -> float:
    """Least-squares slope of ops against n + m.

    For a linear-time run this is the bookkeeping constant; the
    intercept soaks up fixed setup costs.
    """
    if len(rows) < 2:
        raise ValueError("need at least two sizes for a slope")
    xs = [float(r.n + r.m) for r in rows]
    ys = [float(r.ops) for r in rows]
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    den = sum((x - mx) ** 2 for x in xs)
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / den


def bench_linear_scaling(
    sizes: Sequence[int], cls: str = "3deg", seed: int = 0
) -> list[BenchRow]:
    """Generate, color and verify one instance per size; report wall
    time and the graph's bookkeeping-operation count for the coloring
    phase.

    `ops` counts ring and watchlist maintenance inside the graph, the
    dominant structure traffic; it resets to the post-generation
    snapshot so only the coloring is measured.  A verification failure
    aborts the run with the offending instance serialized into the
    error.
    """
    if list(sizes) != sorted(sizes):
        raise ValueError("sizes must be ascending")
    if cls not in ("3deg", "2deg-dense"):
        raise ValueError(f"unknown benchmark class {cls!r}")
    rows: list[BenchRow] = []
    if not sizes:
        return rows
    warm = gen_random_tdeg(200, 3, 6, seed)
    color_3deg(warm)
    for n in sizes:
        if cls == "3deg":
            g = gen_random_tdeg(n, 3, 6, seed)
        else:
            g = gen_maximal_2deg_maxdeg4(n, seed)
        m = g.m_alive
        ops0 = g.ops
        was_enabled = gc.isenabled()
        gc.disable()
        try:
            t0 = time.perf_counter()
            if cls == "3deg":
                coloring = color_3deg(g)
            else:
                coloring, _ = color_2deg_dense(g)
            millis = (time.perf_counter() - t0) * 1000.0
        finally:
            if was_enabled:
                gc.enable()
        report = verify_linear_coloring(g, coloring.colors, coloring.k)
        if not report.valid:
            raise ContractError(
                f"benchmark instance failed verification at n = {n}: "
                f"{report.reason}\n{write_graph(g, comments=[f'seed {seed}'])}"
            )
        rows.append(BenchRow(n=n, m=m, millis=millis, ops=g.ops - ops0))
    return rows
