"""Embeddings of simpler network classes into an HMN.

Each builder realises one of the subset constructions: a homogeneous graph
becomes a single-layer, single-type HMN; a heterogeneous graph keeps its node
and edge typing in one layer; a multi-layered network maps its layers one to
one; a multiplex network shares one node set across all layers and has no
inter-layer edges.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .core import DEFAULT_TYPE, Hmn, HmnError, LayeredNode


def _split_edge(item) -> tuple[int, int, float]:
    if len(item) == 2:
        u, v = item
        return int(u), int(v), 1.0
    u, v, w = item
    return int(u), int(v), float(w)


def from_homogeneous(
    edges: Iterable[Sequence], n: int, directed: bool = False, layer_name: str = "1"
) -> Hmn:
    """Embed a plain graph on nodes ``0..n-1`` as a one-layer HMN.

    ``edges`` holds ``(u, v)`` or ``(u, v, weight)`` tuples.
    """
    if n < 0:
        raise HmnError("node count must be non-negative")
    g = Hmn(directed=directed, layers=[layer_name])
    for _ in range(n):
        g.add_node(DEFAULT_TYPE, (0,))
    for item in edges:
        u, v, w = _split_edge(item)
        if not (0 <= u < n and 0 <= v < n):
            raise HmnError(f"edge ({u}, {v}) references a node outside 0..{n - 1}")
        g.add_edge(LayeredNode(u, 0), LayeredNode(v, 0), DEFAULT_TYPE, w)
    return g


def from_heterogeneous(
    nodes: Iterable[tuple[int, str]],
    edges: Iterable[Sequence],
    node_types: Sequence[str],
    edge_types: Sequence[str],
    directed: bool = False,
    layer_name: str = "1",
) -> Hmn:
    """Embed a typed graph in a single layer.

    ``nodes`` are ``(id, node_type)`` pairs and ``edges`` are
    ``(src, dst, edge_type)`` or ``(src, dst, edge_type, weight)`` tuples.  Every
    type used must appear in ``node_types`` / ``edge_types``; the names become
    the HMN registries (the default type stays reserved at id 0).
    """
    g = Hmn(directed=directed, layers=[layer_name])
    vt = {name: g.add_node_type(name) for name in node_types}
    et = {name: g.add_edge_type(name) for name in edge_types}
    for nid, t in nodes:
        if t not in vt:
            raise HmnError(f"node {nid} uses undeclared node type {t!r}")
        g._insert_node(int(nid), vt[t], (0,))
    for item in edges:
        if len(item) == 3:
            (u, v, t), w = item, 1.0
        else:
            u, v, t, w = item
        if t not in et:
            raise HmnError(f"edge ({u}, {v}) uses undeclared edge type {t!r}")
        if not (g.has_node(u) and g.has_node(v)):
            raise HmnError(f"edge ({u}, {v}) references an undeclared node")
        g.add_edge(LayeredNode(u, 0), LayeredNode(v, 0), et[t], w)
    return g


def from_multilayered(
    sizes: Sequence[int],
    intra: Sequence[Iterable[Sequence]],
    inter: Mapping[tuple[int, int], Iterable[Sequence]] | None = None,
    directed: bool = False,
) -> Hmn:
    """Embed a multi-layered network ``(Y, G_intra, G_inter)``.

    Layer ``i`` has ``sizes[i]`` nodes with layer-local ids ``0..sizes[i]-1``;
    ``intra[i]`` lists its edges in local ids.  ``inter[(i, j)]`` lists edges
    ``(a, b)`` from local node ``a`` of layer ``i`` to local node ``b`` of layer
    ``j``.  All nodes of a layer share one node type and all edges of a layer
    (or layer pair) share one edge type.

    Global node ids are assigned layer by layer; :func:`layer_offsets` recovers
    the mapping.
    """
    k = len(sizes)
    if k < 1:
        raise HmnError("a multi-layered network needs at least one layer")
    if len(intra) != k:
        raise HmnError(f"expected {k} intra-layer edge lists, got {len(intra)}")
    inter = dict(inter or {})
    for i, j in inter:
        if i == j:
            raise HmnError(f"inter-layer edges must join distinct layers, got ({i}, {j})")
        if not (0 <= i < k and 0 <= j < k):
            raise HmnError(f"inter-layer pair ({i}, {j}) references an unknown layer")

    g = Hmn(directed=directed, layers=[str(i + 1) for i in range(k)])
    vtypes = [g.add_node_type(f"layer{i + 1}") for i in range(k)]
    etypes = [g.add_edge_type(f"layer{i + 1}") for i in range(k)]
    offsets = []
    for i, size in enumerate(sizes):
        offsets.append(g.number_of_nodes())
        for _ in range(size):
            g.add_node(vtypes[i], (i,))

    def lift(layer: int, local: int) -> LayeredNode:
        if not 0 <= local < sizes[layer]:
            raise HmnError(f"node {local} outside layer {layer + 1} (size {sizes[layer]})")
        return LayeredNode(offsets[layer] + local, layer)

    for i, elist in enumerate(intra):
        for item in elist:
            a, b, w = _split_edge(item)
            g.add_edge(lift(i, a), lift(i, b), etypes[i], w)
    for (i, j) in sorted(inter):
        key = f"layer{min(i, j) + 1}-layer{max(i, j) + 1}" if not directed else f"layer{i + 1}-layer{j + 1}"
        et = g.edge_type_id(key) if key in g.edge_type_names else g.add_edge_type(key)
        for item in inter[(i, j)]:
            a, b, w = _split_edge(item)
            g.add_edge(lift(i, a), lift(j, b), et, w)
    return g


def layer_offsets(g: Hmn) -> list[int]:
    """First global node id of every layer for graphs built by :func:`from_multilayered`."""
    out = []
    for lid in g.layers:
        members = g.r_l(lid)
        out.append(min(members) if members else g.number_of_nodes())
    return out


def from_multiplex(
    n: int,
    layers: int,
    layer_edges: Sequence[Iterable[Sequence]],
    directed: bool = False,
    layer_names: Sequence[str] | None = None,
) -> Hmn:
    """Embed a multiplex network: nodes ``0..n-1`` exist in every layer.

    ``layer_edges[l]`` lists ``(u, v)`` or ``(u, v, weight)`` for layer ``l``.
    Each layer gets its own edge type and no inter-layer edges are created.
    """
    if layers < 1:
        raise HmnError("a multiplex network needs at least one layer")
    if len(layer_edges) != layers:
        raise HmnError(f"expected {layers} edge lists, got {len(layer_edges)}")
    names = list(layer_names) if layer_names is not None else [str(i + 1) for i in range(layers)]
    if len(names) != layers:
        raise HmnError("layer_names length must match the layer count")
    g = Hmn(directed=directed, layers=names)
    etypes = [g.add_edge_type(f"layer:{name}") for name in names]
    every = range(layers)
    for _ in range(n):
        g.add_node(DEFAULT_TYPE, every)
    for lid, elist in enumerate(layer_edges):
        for item in elist:
            u, v, w = _split_edge(item)
            if not (0 <= u < n and 0 <= v < n):
                raise HmnError(f"edge ({u}, {v}) in layer {names[lid]} is outside 0..{n - 1}")
            g.add_edge(LayeredNode(u, lid), LayeredNode(v, lid), etypes[lid], w)
    return g


def to_edge_list(g: Hmn) -> list[tuple[int, int]]:
    """Project a single-layer HMN back to plain ``(u, v)`` pairs."""
    if len(g.layers) != 1:
        raise HmnError("projection to a plain graph needs exactly one layer")
    return [(e.src.node, e.dst.node) for e in g.edges()]
