"""Structural measures on an HMN, filtered by a layer/type scope.

Every measure takes a :class:`MetricScope` ``(layers, types)``.  A layered node
``u^k`` is *in scope* when ``k`` is one of the scope layers and the type of
``u`` is one of the scope types.  ``None`` for either component means "all".

Shortest paths only pass through in-scope intermediate nodes; the two
endpoints are always admissible.  With one layer and the default type these
measures reduce to the textbook single-graph definitions.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .core import Hmn, HmnError, LayeredNode


class UndefinedMeasureError(HmnError):
    """The measure has no value for this input (e.g. a zero denominator)."""


@dataclass(frozen=True)
class MetricScope:
    """Layer and node-type filter; ``None`` selects everything."""

    layers: frozenset[int] | None = None
    types: frozenset[int] | None = None

    def __post_init__(self):
        if self.layers is not None:
            object.__setattr__(self, "layers", frozenset(self.layers))
            if not self.layers:
                raise HmnError("scope layer set must be non-empty")
        if self.types is not None:
            object.__setattr__(self, "types", frozenset(self.types))
            if not self.types:
                raise HmnError("scope type set must be non-empty")

    def resolve(self, g: Hmn) -> tuple[frozenset[int], frozenset[int]]:
        layers = frozenset(g.layers) if self.layers is None else self.layers
        types = frozenset(g.node_types) if self.types is None else self.types
        for lid in layers:
            if lid not in g.layers:
                raise HmnError(f"scope references unknown layer {lid!r}")
        for t in types:
            if t not in g.node_types:
                raise HmnError(f"scope references unknown node type {t!r}")
        if not layers or not types:
            raise HmnError("scope must select at least one layer and one type")
        return layers, types


FULL = MetricScope()


@dataclass
class QueryCounter:
    """Counts entries inspected by neighbour queries."""

    inspected: int = 0


@dataclass
class NetworkSummary:
    nodes: int
    edges: int
    density: float
    avg_degree: float
    assortativity: float
    triangles: int
    avg_triangles_per_node: float
    avg_clustering: float
    clique_number: int

    FIELDS = (
        ("Nodes", "nodes"),
        ("Edges", "edges"),
        ("Density", "density"),
        ("AvgDegree", "avg_degree"),
        ("Assortativity", "assortativity"),
        ("Triangles", "triangles"),
        ("AvgTrianglesPerNode", "avg_triangles_per_node"),
        ("AvgCC", "avg_clustering"),
        ("CliqueNumber", "clique_number"),
    )

    def as_row(self) -> dict:
        return {col: getattr(self, attr) for col, attr in self.FIELDS}


def _resolve(g: Hmn, scope: MetricScope | None):
    return (scope or FULL).resolve(g)


def in_scope(g: Hmn, x: LayeredNode, scope: MetricScope | None = None) -> bool:
    layers, types = _resolve(g, scope)
    return x.layer in layers and g.r_vt(x.node) in types


def scoped_nodes(g: Hmn, scope: MetricScope | None = None) -> list[LayeredNode]:
    """All in-scope layered nodes, sorted."""
    layers, types = _resolve(g, scope)
    out = []
    for t in types:
        for lid in layers:
            out.extend(LayeredNode(v, lid) for v in g._index_view(t, lid))
    out.sort()
    return out


def _count_scoped(g: Hmn, layers, types) -> int:
    return sum(len(g._index_view(t, lid)) for t in types for lid in layers)


# --------------------------------------------------------------------------- neighbourhoods
def _filter(g: Hmn, adj, layers, types) -> set[LayeredNode]:
    vt = g._vtype
    return {u for u in adj if u.layer in layers and vt[u.node] in types}


def neighborhood_in(g: Hmn, v: LayeredNode, scope: MetricScope | None = None) -> set[LayeredNode]:
    """``{u^k : (u^k, v^l) in E}`` restricted to the scope."""
    v = g.check_layered(v)
    layers, types = _resolve(g, scope)
    return _filter(g, g.predecessors(v), layers, types)


def neighborhood_out(g: Hmn, v: LayeredNode, scope: MetricScope | None = None) -> set[LayeredNode]:
    v = g.check_layered(v)
    layers, types = _resolve(g, scope)
    return _filter(g, g.successors(v), layers, types)


def neighborhood(g: Hmn, v: LayeredNode, scope: MetricScope | None = None) -> set[LayeredNode]:
    """In- and out-neighbours of ``v^l``.

    Copies of the same node in other layers contribute nothing unless an edge
    explicitly joins them to ``v^l``.
    """
    v = g.check_layered(v)
    layers, types = _resolve(g, scope)
    nb = _filter(g, g.successors(v), layers, types)
    if g.directed:
        nb |= _filter(g, g.predecessors(v), layers, types)
    return nb


def _adjacent_any(g: Hmn, v: LayeredNode):
    if g.directed:
        return set(g.successors(v)) | set(g.predecessors(v))
    return g.successors(v)


def degree_centrality(g: Hmn, v: LayeredNode, scope: MetricScope | None = None) -> float:
    """Scoped neighbour count over the number of other in-scope layered nodes.

    A node present in two scope layers counts twice in the denominator.
    """
    v = g.check_layered(v)
    layers, types = _resolve(g, scope)
    denom = _count_scoped(g, layers, types)
    if v.layer in layers and g.r_vt(v.node) in types:
        denom -= 1
    if denom == 0:
        raise UndefinedMeasureError(f"degree centrality of {v} is undefined: no other in-scope nodes")
    return len(neighborhood(g, v, scope)) / denom


# ------------------------------------------------------------------------- shortest paths
class _Compact:
    """Integer-indexed adjacency over a fixed member list."""

    def __init__(self, g: Hmn, members: Sequence[LayeredNode]):
        self.members = list(members)
        pos = {x: i for i, x in enumerate(self.members)}
        self.pos = pos
        self.out: list[list[tuple[int, float]]] = []
        for x in self.members:
            self.out.append(sorted((pos[u], w) for u, w in g.successors(x).items() if u in pos))
        self.weighted = any(w != 1.0 for row in self.out for _, w in row)

    def sssp(self, s: int):
        """Single-source shortest paths with path counting (Brandes stage one)."""
        n = len(self.members)
        sigma = [0] * n
        dist = [math.inf] * n
        preds: list[list[int]] = [[] for _ in range(n)]
        order: list[int] = []
        sigma[s] = 1
        dist[s] = 0.0
        out = self.out
        if not self.weighted:
            q = deque([s])
            while q:
                x = q.popleft()
                order.append(x)
                dx = dist[x] + 1.0
                for y, _ in out[x]:
                    if dist[y] == math.inf:
                        dist[y] = dx
                        q.append(y)
                    if dist[y] == dx:
                        sigma[y] += sigma[x]
                        preds[y].append(x)
        else:
            done = [False] * n
            heap = [(0.0, s)]
            while heap:
                d, x = heapq.heappop(heap)
                if done[x] or d > dist[x]:
                    continue
                done[x] = True
                order.append(x)
                for y, w in out[x]:
                    nd = d + w
                    if nd < dist[y]:
                        dist[y] = nd
                        sigma[y] = sigma[x]
                        preds[y] = [x]
                        heapq.heappush(heap, (nd, y))
                    elif nd == dist[y] and not done[y]:
                        sigma[y] += sigma[x]
                        preds[y].append(x)
        return dist, sigma, preds, order

    def dependencies(self, s: int):
        """Brandes pair-dependency of every node on paths leaving ``s``."""
        dist, sigma, preds, order = self.sssp(s)
        delta = [0.0] * len(self.members)
        for w in reversed(order):
            coeff = (1.0 + delta[w]) / sigma[w]
            for p in preds[w]:
                delta[p] += sigma[p] * coeff
        delta[s] = 0.0
        return delta


def _path_universe(g: Hmn, extra: Iterable[LayeredNode], scope) -> list[LayeredNode]:
    members = scoped_nodes(g, scope)
    have = set(members)
    for x in extra:
        if x not in have:
            members.append(x)
            have.add(x)
    return members


def shortest_distance(
    g: Hmn, src: LayeredNode, dst: LayeredNode, scope: MetricScope | None = None
) -> float:
    """Weighted length of the shortest scoped path, ``inf`` when none exists."""
    src, dst = g.check_layered(src), g.check_layered(dst)
    if src == dst:
        return 0.0
    c = _Compact(g, _path_universe(g, (src, dst), scope))
    dist, *_ = c.sssp(c.pos[src])
    return dist[c.pos[dst]]


def count_shortest_paths(
    g: Hmn, src: LayeredNode, dst: LayeredNode, scope: MetricScope | None = None
) -> int:
    src, dst = g.check_layered(src), g.check_layered(dst)
    if src == dst:
        return 1
    c = _Compact(g, _path_universe(g, (src, dst), scope))
    _, sigma, _, _ = c.sssp(c.pos[src])
    return sigma[c.pos[dst]]


def betweenness_centrality(g: Hmn, v: LayeredNode, scope: MetricScope | None = None) -> float:
    """Sum over in-scope endpoint pairs of the share of shortest paths via ``v^l``.

    Pairs are unordered on undirected graphs and ordered on directed ones.
    ``v^l`` itself is always allowed as an intermediate, so cross-layer
    betweenness can be taken with ``layers = L - R_VL(v)``.
    """
    v = g.check_layered(v)
    _resolve(g, scope)
    c = _Compact(g, _path_universe(g, (v,), scope))
    iv = c.pos[v]
    total = 0.0
    for s in range(len(c.members)):
        if s == iv:
            continue
        total += c.dependencies(s)[iv]
    return total if g.directed else total / 2.0


def betweenness_all(g: Hmn, scope: MetricScope | None = None) -> dict[LayeredNode, float]:
    """Betweenness of every in-scope layered node from one Brandes pass."""
    c = _Compact(g, scoped_nodes(g, scope))
    acc = np.zeros(len(c.members))
    for s in range(len(c.members)):
        acc += c.dependencies(s)
    if not g.directed:
        acc /= 2.0
    return {x: float(acc[i]) for i, x in enumerate(c.members)}


def closeness_centrality(g: Hmn, v: LayeredNode, scope: MetricScope | None = None) -> float:
    """Sum of reciprocal scoped distances from ``v^l``; unreachable nodes add 0."""
    v = g.check_layered(v)
    c = _Compact(g, _path_universe(g, (v,), scope))
    layers, types = _resolve(g, scope)
    dist, *_ = c.sssp(c.pos[v])
    total = 0.0
    for i, x in enumerate(c.members):
        if x == v or dist[i] == math.inf:
            continue
        if x.layer in layers and g._vtype[x.node] in types:
            total += 1.0 / dist[i]
    return total


def closeness_all(g: Hmn, scope: MetricScope | None = None) -> dict[LayeredNode, float]:
    c = _Compact(g, scoped_nodes(g, scope))
    out = {}
    for s, x in enumerate(c.members):
        dist, *_ = c.sssp(s)
        out[x] = sum(1.0 / d for i, d in enumerate(dist) if i != s and d != math.inf)
    return out


def clustering_coefficient(g: Hmn, v: LayeredNode, scope: MetricScope | None = None) -> float:
    """Fraction of adjacent pairs among the scoped neighbours; 0 below two neighbours."""
    nb = neighborhood(g, v, scope)
    k = len(nb)
    if k < 2:
        return 0.0
    links = 0
    for x in nb:
        links += sum(1 for y in _adjacent_any(g, x) if y in nb)
    # each adjacent pair was seen from both ends
    return links / (k * (k - 1))


# ---------------------------------------------------------------------- typed neighbours
def typed_neighbors_scan(
    g: Hmn, x: LayeredNode, t: int, layer: int, counter: QueryCounter | None = None
) -> set[LayeredNode]:
    """Neighbours of ``x`` of type ``t`` in ``layer`` by scanning every layered node."""
    x = g.check_layered(x)
    adj = _adjacent_any(g, x)
    out = set()
    for u in g.layered_nodes():
        if counter is not None:
            counter.inspected += 1
        if u in adj and u.layer == layer and g._vtype[u.node] == t:
            out.add(u)
    return out


def typed_neighbors(
    g: Hmn, x: LayeredNode, t: int, layer: int, counter: QueryCounter | None = None
) -> set[LayeredNode]:
    """Neighbours of ``x`` of type ``t`` in ``layer`` via the type-layer index.

    Walks whichever of the adjacency of ``x`` or ``r_tl(t, layer)`` is smaller
    and probes the other, so the work is bounded by the smaller of the two.
    """
    x = g.check_layered(x)
    g.r_tl(t, layer)  # validates ids
    adj = _adjacent_any(g, x)
    members = g._index_view(t, layer)
    out = set()
    if len(members) <= len(adj):
        for u in members:
            if counter is not None:
                counter.inspected += 1
            lu = LayeredNode(u, layer)
            if lu in adj:
                out.add(lu)
    else:
        for lu in adj:
            if counter is not None:
                counter.inspected += 1
            if lu.layer == layer and lu.node in members:
                out.add(lu)
    return out


def scoped_neighbors_indexed(
    g: Hmn, x: LayeredNode, scope: MetricScope | None = None, counter: QueryCounter | None = None
) -> set[LayeredNode]:
    layers, types = _resolve(g, scope)
    out: set[LayeredNode] = set()
    for t in sorted(types):
        for lid in sorted(layers):
            out |= typed_neighbors(g, x, t, lid, counter)
    return out


def jaccard_score(
    g: Hmn, x: LayeredNode, y: LayeredNode, scope: MetricScope | None = None
) -> float:
    """Jaccard coefficient of the scoped neighbourhoods of ``x`` and ``y``."""
    x, y = g.check_layered(x), g.check_layered(y)
    nx_ = scoped_neighbors_indexed(g, x, scope)
    ny_ = scoped_neighbors_indexed(g, y, scope)
    union = nx_ | ny_
    if not union:
        return 0.0
    return len(nx_ & ny_) / len(union)


# -------------------------------------------------------------------- whole-network stats
@dataclass
class _Simple:
    """Undirected simple view of a scope: adjacency sets over member indices."""

    members: list[LayeredNode]
    adj: list[set[int]] = field(default_factory=list)

    @classmethod
    def of(cls, g: Hmn, scope: MetricScope | None = None, members=None) -> "_Simple":
        members = scoped_nodes(g, scope) if members is None else list(members)
        pos = {x: i for i, x in enumerate(members)}
        adj = []
        for x in members:
            nb = {pos[u] for u in _adjacent_any(g, x) if u in pos}
            adj.append(nb)
        return cls(members, adj)

    def drop_isolated(self) -> "_Simple":
        keep = [i for i, nb in enumerate(self.adj) if nb]
        remap = {old: new for new, old in enumerate(keep)}
        return _Simple(
            [self.members[i] for i in keep], [{remap[j] for j in self.adj[i]} for i in keep]
        )

    @property
    def n(self) -> int:
        return len(self.members)

    def edge_count(self) -> int:
        return sum(len(nb) for nb in self.adj) // 2

    def triangles_per_node(self) -> list[int]:
        tri = [0] * self.n
        adj = self.adj
        for u in range(self.n):
            for v in adj[u]:
                if v <= u:
                    continue
                for w in adj[u] & adj[v]:
                    if w > v:
                        tri[u] += 1
                        tri[v] += 1
                        tri[w] += 1
        return tri

    def clustering(self) -> list[float]:
        tri = self.triangles_per_node()
        out = []
        for i, nb in enumerate(self.adj):
            k = len(nb)
            out.append(0.0 if k < 2 else 2.0 * tri[i] / (k * (k - 1)))
        return out

    def betweenness(self) -> list[float]:
        out = [[(j, 1.0) for j in sorted(nb)] for nb in self.adj]
        c = _Compact.__new__(_Compact)
        c.members, c.out, c.weighted = self.members, out, False
        acc = np.zeros(self.n)
        for s in range(self.n):
            acc += c.dependencies(s)
        return list(acc / 2.0)


def degree_assortativity(degrees: Sequence[int], adj: Sequence[Iterable[int]]) -> float:
    """Pearson correlation of endpoint degrees over both orientations of every edge."""
    xs, ys = [], []
    for u, nb in enumerate(adj):
        for v in nb:
            xs.append(degrees[u])
            ys.append(degrees[v])
    if not xs:
        raise UndefinedMeasureError("assortativity is undefined on a graph without edges")
    a = np.asarray(xs, dtype=float)
    b = np.asarray(ys, dtype=float)
    da, db = a - a.mean(), b - b.mean()
    var = math.sqrt(float(da @ da) * float(db @ db))
    if var == 0.0:
        raise UndefinedMeasureError("assortativity is undefined when all edge endpoints share one degree")
    return float(da @ db) / var


def clique_number_of(adj: Sequence[set[int]]) -> int:
    """Exact maximum clique size by colour-bounded branch and bound.

    Vertices are processed in degeneracy order and each search is confined to
    the later neighbours of its root, which keeps the bitsets small on sparse
    graphs.
    """
    n = len(adj)
    if n == 0:
        return 0
    order = _degeneracy_order(adj)
    rank = {v: i for i, v in enumerate(order)}
    nbr = [0] * n
    for v in range(n):
        m = 0
        for u in adj[v]:
            m |= 1 << u
        nbr[v] = m
    best = 1

    def colour_sort(p: int):
        verts, bounds = [], []
        colour = 0
        uncoloured = p
        while uncoloured:
            colour += 1
            q = uncoloured
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q &= ~nbr[v] & ~low
                uncoloured &= ~low
                verts.append(v)
                bounds.append(colour)
        return verts, bounds

    def expand(size: int, p: int) -> None:
        nonlocal best
        verts, bounds = colour_sort(p)
        for i in range(len(verts) - 1, -1, -1):
            if size + bounds[i] <= best:
                return
            v = verts[i]
            np_ = p & nbr[v]
            if np_:
                expand(size + 1, np_)
            elif size + 1 > best:
                best = size + 1
            p &= ~(1 << v)

    for v in order:
        later = 0
        for u in adj[v]:
            if rank[u] > rank[v]:
                later |= 1 << u
        if later and 1 + bin(later).count("1") > best:
            expand(1, later)
    return best


def _degeneracy_order(adj: Sequence[set[int]]) -> list[int]:
    deg = [len(nb) for nb in adj]
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    removed = [False] * len(adj)
    order = []
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        for u in adj[v]:
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    return order


def network_summary(g: Hmn, scope: MetricScope | None = None) -> NetworkSummary:
    """Table-style statistics of the scoped induced graph, viewed as undirected and simple.

    Parallel typed edges and opposite directions between the same two layered
    nodes count as one edge.  Assortativity is NaN where it is undefined.
    """
    s = _Simple.of(g, scope)
    n = s.n
    if n == 0:
        raise HmnError("scope selects no nodes")
    m = s.edge_count()
    degrees = [len(nb) for nb in s.adj]
    tri = s.triangles_per_node()
    try:
        r = degree_assortativity(degrees, s.adj)
    except UndefinedMeasureError:
        r = math.nan
    return NetworkSummary(
        nodes=n,
        edges=m,
        density=0.0 if n < 2 else 2.0 * m / (n * (n - 1)),
        avg_degree=2.0 * m / n,
        assortativity=r,
        triangles=sum(tri) // 3,
        avg_triangles_per_node=sum(tri) / n,
        avg_clustering=float(np.mean(s.clustering())),
        clique_number=clique_number_of(s.adj),
    )


def centrality_averages(g: Hmn, scope: MetricScope | None = None) -> dict[str, float]:
    """Mean scoped degree, betweenness and closeness centrality over in-scope nodes."""
    members = scoped_nodes(g, scope)
    if not members:
        raise HmnError("scope selects no nodes")
    if len(members) == 1:
        return {"degree": 0.0, "betweenness": 0.0, "closeness": 0.0}
    dc = [degree_centrality(g, x, scope) for x in members]
    bc = betweenness_all(g, scope)
    cc = closeness_all(g, scope)
    return {
        "degree": float(np.mean(dc)),
        "betweenness": float(np.mean(list(bc.values()))),
        "closeness": float(np.mean(list(cc.values()))),
    }


def layer_averages(
    g: Hmn, layers: Iterable[int] | None = None, active_only: bool = True
) -> dict[str, float]:
    """Per-layer statistics averaged over layers.

    Each layer is taken on its own (intra-layer edges only).  With
    ``active_only`` nodes without an edge in that layer are ignored, which is
    how multiplex data such as airline networks is usually summarised.  Layer
    values are node means: degree centrality ``k / (n - 1)``, betweenness
    normalised by ``(n - 1)(n - 2) / 2``, local clustering and triangles per
    node; ``triangles`` is the per-layer triangle count.  Layers with fewer
    than two active nodes are skipped.
    """
    chosen = list(g.layers) if layers is None else list(layers)
    rows = []
    for lid in chosen:
        s = _Simple.of(g, MetricScope(layers={lid}))
        if active_only:
            s = s.drop_isolated()
        n = s.n
        if n < 2:
            continue
        deg = [len(nb) for nb in s.adj]
        tri = s.triangles_per_node()
        bc = s.betweenness()
        norm = (n - 1) * (n - 2) / 2.0
        rows.append(
            {
                "nodes": n,
                "edges": s.edge_count(),
                "degree": float(np.mean(deg)) / (n - 1),
                "betweenness": float(np.mean(bc)) / norm if norm else 0.0,
                "avg_cc": float(np.mean(s.clustering())),
                "avg_triangles_per_node": float(np.mean(tri)),
                "triangles": sum(tri) / 3.0,
            }
        )
    if not rows:
        raise HmnError("no layer has at least two active nodes")
    keys = rows[0].keys()
    out = {k: float(np.mean([r[k] for r in rows])) for k in keys}
    out["layers"] = float(len(rows))
    return out
