"""Heterogeneous multi-layered network (HMN) container.

An HMN is the quintuple ``(V, E, L, T, R)``: nodes live in one or more layers,
every node carries one node type and every edge one edge type.  Edges connect
*layered nodes* ``(node, layer)`` so both intra-layer and inter-layer links are
first-class.  The mapping functions ``R_VT``, ``R_ET`` and ``R_VL`` are exposed
as :meth:`Hmn.r_vt`, :meth:`Hmn.r_et` and :meth:`Hmn.r_vl`; the type-layer index
behind :meth:`Hmn.r_tl` is kept in sync on every insertion.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, NamedTuple

DEFAULT_TYPE = 0
DEFAULT_TYPE_NAME = "⊥"


class HmnError(ValueError):
    """Raised when an operation would violate the HMN invariants."""


class UnknownEntityError(HmnError, KeyError):
    """An id (node, layer, type) is not registered."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class DuplicateError(HmnError):
    pass


class LayeredNode(NamedTuple):
    """A node occurrence ``v^l``: node ``node`` seen in layer ``layer``."""

    node: int
    layer: int


@dataclass(frozen=True)
class Edge:
    src: LayeredNode
    dst: LayeredNode
    etype: int = DEFAULT_TYPE
    weight: float = 1.0

    @property
    def is_intra(self) -> bool:
        return self.src.layer == self.dst.layer

    @property
    def is_inter(self) -> bool:
        return self.src.layer != self.dst.layer


class _Registry:
    """Append-only name registry; ids are list positions."""

    def __init__(self, kind: str, names: Iterable[str] = ()):
        self.kind = kind
        self.names: list[str] = []
        self.ids: dict[str, int] = {}
        for name in names:
            self.add(name)

    def add(self, name: str) -> int:
        if not isinstance(name, str) or not name:
            raise HmnError(f"{self.kind} name must be a non-empty string")
        if name in self.ids:
            raise DuplicateError(f"{self.kind} name {name!r} already registered")
        self.ids[name] = len(self.names)
        self.names.append(name)
        return self.ids[name]

    def check(self, i: int) -> int:
        if type(i) is int and 0 <= i < len(self.names):
            return i
        if isinstance(i, bool) or not isinstance(i, numbers.Integral) or not 0 <= i < len(self.names):
            raise UnknownEntityError(f"unknown {self.kind} id {i!r}")
        return int(i)

    def __len__(self) -> int:
        return len(self.names)


class Hmn:
    """A heterogeneous multi-layered network.

    Parameters
    ----------
    directed : bool
        When False (the default) every edge is stored once with canonical
        endpoint order and is visible from both endpoints.
    layers : iterable of str, optional
        Layer names to register up front.

    Notes
    -----
    Node ids are allocated append-only by :meth:`add_node`.  Derived graphs
    (see :meth:`induced`) keep the ids of their parent, so ids need not be
    contiguous.
    """

    def __init__(self, directed: bool = False, layers: Iterable[str] = ()):
        self.directed = bool(directed)
        self._layers = _Registry("layer")
        self._node_types = _Registry("node type", [DEFAULT_TYPE_NAME])
        self._edge_types = _Registry("edge type", [DEFAULT_TYPE_NAME])
        self._vtype: dict[int, int] = {}
        self._vlayers: dict[int, frozenset[int]] = {}
        self._next_id = 0
        # (src, dst, etype) -> Edge; undirected edges use canonical (min, max) order
        self._edges: dict[tuple[LayeredNode, LayeredNode, int], Edge] = {}
        # neighbour -> minimum weight over parallel typed edges
        self._out: dict[LayeredNode, dict[LayeredNode, float]] = {}
        self._in: dict[LayeredNode, dict[LayeredNode, float]] = {}
        self._index: dict[tuple[int, int], set[int]] = {}
        self._layer_nodes: dict[int, set[int]] = {}
        for name in layers:
            self.add_layer(name)

    # ------------------------------------------------------------------ registries
    def add_layer(self, name: str) -> int:
        lid = self._layers.add(name)
        self._layer_nodes[lid] = set()
        return lid

    def add_node_type(self, name: str) -> int:
        return self._node_types.add(name)

    def add_edge_type(self, name: str) -> int:
        return self._edge_types.add(name)

    @property
    def layer_names(self) -> list[str]:
        return list(self._layers.names)

    @property
    def node_type_names(self) -> list[str]:
        return list(self._node_types.names)

    @property
    def edge_type_names(self) -> list[str]:
        return list(self._edge_types.names)

    @property
    def layers(self) -> range:
        return range(len(self._layers))

    @property
    def node_types(self) -> range:
        return range(len(self._node_types))

    @property
    def edge_types(self) -> range:
        return range(len(self._edge_types))

    def layer_id(self, name: str) -> int:
        try:
            return self._layers.ids[name]
        except KeyError:
            raise UnknownEntityError(f"unknown layer name {name!r}") from None

    def node_type_id(self, name: str) -> int:
        try:
            return self._node_types.ids[name]
        except KeyError:
            raise UnknownEntityError(f"unknown node type name {name!r}") from None

    def edge_type_id(self, name: str) -> int:
        try:
            return self._edge_types.ids[name]
        except KeyError:
            raise UnknownEntityError(f"unknown edge type name {name!r}") from None

    # ---------------------------------------------------------------------- nodes
    def add_node(self, vtype: int = DEFAULT_TYPE, layers: Iterable[int] = (0,)) -> int:
        """Register a node of type ``vtype`` present in ``layers``; returns its id."""
        nid = self._next_id
        self._insert_node(nid, vtype, layers)
        return nid

    def _insert_node(self, nid: int, vtype: int, layers: Iterable[int]) -> None:
        if isinstance(nid, bool) or not isinstance(nid, numbers.Integral) or nid < 0:
            raise HmnError(f"node id must be a non-negative integer, got {nid!r}")
        nid = int(nid)
        if nid in self._vtype:
            raise DuplicateError(f"node {nid} already exists")
        vtype = self._node_types.check(vtype)
        lset = frozenset(self._layers.check(lid) for lid in layers)
        if not lset:
            raise HmnError("a node must belong to at least one layer")
        self._vtype[nid] = vtype
        self._vlayers[nid] = lset
        for lid in lset:
            self._index.setdefault((vtype, lid), set()).add(nid)
            self._layer_nodes[lid].add(nid)
        self._next_id = max(self._next_id, nid + 1)

    def has_node(self, v: int) -> bool:
        return v in self._vtype

    def nodes(self) -> list[int]:
        return sorted(self._vtype)

    def layered_nodes(self) -> Iterator[LayeredNode]:
        """All ``v^l`` occurrences in (node, layer) order."""
        for v in sorted(self._vtype):
            for lid in sorted(self._vlayers[v]):
                yield LayeredNode(v, lid)

    def number_of_nodes(self) -> int:
        return len(self._vtype)

    def number_of_layered_nodes(self) -> int:
        return sum(len(ls) for ls in self._vlayers.values())

    def check_layered(self, x: LayeredNode) -> LayeredNode:
        try:
            x = LayeredNode(int(x[0]), int(x[1]))
        except (TypeError, ValueError, IndexError):
            raise HmnError(f"not a (node, layer) pair: {x!r}") from None
        if x.node not in self._vlayers:
            raise UnknownEntityError(f"unknown node id {x.node!r}")
        if x.layer not in self._vlayers[x.node]:
            raise HmnError(f"node {x.node} is not present in layer {x.layer}")
        return x

    # ----------------------------------------------------------------- R functions
    def r_vl(self, v: int) -> frozenset[int]:
        try:
            return self._vlayers[v]
        except KeyError:
            raise UnknownEntityError(f"unknown node id {v!r}") from None

    def r_vt(self, v: int) -> int:
        try:
            return self._vtype[v]
        except KeyError:
            raise UnknownEntityError(f"unknown node id {v!r}") from None

    def r_et(self, e: Edge) -> int:
        key = self._key(e.src, e.dst, e.etype)
        if key not in self._edges:
            raise UnknownEntityError(f"unknown edge {e!r}")
        return self._edges[key].etype

    def r_tl(self, t: int, layer: int) -> frozenset[int]:
        """Nodes of type ``t`` present in ``layer`` (index lookup)."""
        self._node_types.check(t)
        self._layers.check(layer)
        return frozenset(self._index.get((t, layer), ()))

    def r_l(self, layer: int) -> frozenset[int]:
        self._layers.check(layer)
        return frozenset(self._layer_nodes[layer])

    def _index_view(self, t: int, layer: int) -> set[int]:
        # live set, callers must not mutate
        return self._index.get((t, layer), _EMPTY)

    def rebuild_index(self) -> dict[tuple[int, int], frozenset[int]]:
        """Recompute the type-layer index from the node registry by full scan."""
        idx: dict[tuple[int, int], set[int]] = {}
        for v, t in self._vtype.items():
            for lid in self._vlayers[v]:
                idx.setdefault((t, lid), set()).add(v)
        return {k: frozenset(s) for k, s in idx.items()}

    def index_snapshot(self) -> dict[tuple[int, int], frozenset[int]]:
        return {k: frozenset(s) for k, s in self._index.items() if s}

    # ---------------------------------------------------------------------- edges
    def _key(self, src: LayeredNode, dst: LayeredNode, etype: int):
        if not self.directed and dst < src:
            src, dst = dst, src
        return (src, dst, etype)

    def add_edge(
        self,
        src: LayeredNode | tuple[int, int],
        dst: LayeredNode | tuple[int, int],
        etype: int = DEFAULT_TYPE,
        weight: float = 1.0,
    ) -> Edge:
        src = self.check_layered(src)
        dst = self.check_layered(dst)
        etype = self._edge_types.check(etype)
        if src == dst:
            raise HmnError(f"self-loop on {src} is not allowed")
        weight = float(weight)
        if not (weight > 0 and math.isfinite(weight)):
            raise HmnError(f"edge weight must be positive and finite, got {weight!r}")
        return self._insert_edge(src, dst, etype, weight)

    def _insert_edge(self, src: LayeredNode, dst: LayeredNode, etype: int, weight: float) -> Edge:
        # endpoints, type and weight already validated by the caller
        key = self._key(src, dst, etype)
        if key in self._edges:
            raise DuplicateError(f"duplicate edge {key[0]} -> {key[1]} of type {etype}")
        edge = Edge(key[0], key[1], etype, weight)
        self._edges[key] = edge
        self._link(key[0], key[1], weight)
        if not self.directed:
            self._link(key[1], key[0], weight)
        return edge

    def _link(self, a: LayeredNode, b: LayeredNode, w: float) -> None:
        out = self._out.setdefault(a, {})
        if w < out.get(b, math.inf):
            out[b] = w
        inn = self._in.setdefault(b, {})
        if w < inn.get(a, math.inf):
            inn[a] = w

    def has_edge(self, src, dst, etype: int | None = None) -> bool:
        src, dst = LayeredNode(*src), LayeredNode(*dst)
        if etype is None:
            return dst in self._out.get(src, ())
        return self._key(src, dst, etype) in self._edges

    def edges(self) -> list[Edge]:
        """All edges in canonical sorted order."""
        return [self._edges[k] for k in sorted(self._edges)]

    def number_of_edges(self) -> int:
        return len(self._edges)

    def successors(self, x: LayeredNode) -> Mapping[LayeredNode, float]:
        """Out-adjacency of ``x`` mapped to the lightest connecting weight."""
        return self._out.get(x, _EMPTY_MAP)

    def predecessors(self, x: LayeredNode) -> Mapping[LayeredNode, float]:
        return self._in.get(x, _EMPTY_MAP)

    def is_unweighted(self) -> bool:
        return all(e.weight == 1.0 for e in self._edges.values())

    # ------------------------------------------------------------------- derived
    def induced(self, layers: Iterable[int]) -> "Hmn":
        """Sub-HMN restricted to ``layers``.

        Node and layer ids and both type registries are preserved.  Nodes with no
        layer in ``layers`` are dropped; the rest have their layer sets
        intersected.  Only edges whose endpoint layers are both kept survive.
        """
        keep = frozenset(layers)
        if not keep:
            raise HmnError("induced sub-HMN needs a non-empty layer set")
        for lid in keep:
            self._layers.check(lid)
        sub = self._empty_like()
        for v in sorted(self._vtype):
            ls = self._vlayers[v] & keep
            if ls:
                sub._insert_node(v, self._vtype[v], ls)
        for e in self.edges():
            if e.src.layer in keep and e.dst.layer in keep:
                sub.add_edge(e.src, e.dst, e.etype, e.weight)
        return sub

    def _empty_like(self) -> "Hmn":
        g = Hmn(directed=self.directed, layers=self._layers.names)
        for name in self._node_types.names[1:]:
            g.add_node_type(name)
        for name in self._edge_types.names[1:]:
            g.add_edge_type(name)
        return g

    def copy(self) -> "Hmn":
        g = self._empty_like()
        for v in sorted(self._vtype):
            g._insert_node(v, self._vtype[v], self._vlayers[v])
        for e in self.edges():
            g.add_edge(e.src, e.dst, e.etype, e.weight)
        g._next_id = self._next_id
        return g

    # -------------------------------------------------------------------- dunder
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hmn):
            return NotImplemented
        return (
            self.directed == other.directed
            and self._layers.names == other._layers.names
            and self._node_types.names == other._node_types.names
            and self._edge_types.names == other._edge_types.names
            and self._vtype == other._vtype
            and self._vlayers == other._vlayers
            and self._edges == other._edges
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return (
            f"<Hmn {kind}: {self.number_of_nodes()} nodes, {self.number_of_edges()} edges, "
            f"{len(self._layers)} layers, {len(self._node_types)} node types>"
        )


_EMPTY: frozenset = frozenset()
_EMPTY_MAP = MappingProxyType({})


def induced_subhmn(g: Hmn, layers: Iterable[int]) -> Hmn:
    """Function form of :meth:`Hmn.induced`."""
    return g.induced(layers)
