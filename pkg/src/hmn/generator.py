"""Seeded synthetic HMN generation by layered preferential attachment.

Nodes arrive one at a time.  Each picks a layer and a node type, then makes
``m[i][i]`` links inside its layer (``connection1``) and ``m[i][j]`` links toward
every other layer ``j`` (``connection2``).  Targets are drawn with weight
``floor(alpha * degree + beta * sum of neighbour degrees)``.

Determinism: all randomness comes from four independent streams spawned from
``seed`` in this order: layer draws, type draws, intra-layer targets,
inter-layer targets (visited in ascending destination layer).  A fifth stream
samples the ``m`` matrix when it is given as a normal distribution.  Only
``Generator.random`` and ``Generator.standard_normal`` are used.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .convert import from_homogeneous
from .core import DEFAULT_TYPE_NAME, Hmn, HmnError, LayeredNode

STREAMS = ("layer", "type", "intra", "inter", "m_matrix")


@dataclass
class GenParams:
    """Full parameterisation of the generator.

    ``m`` may be an integer (every entry), an ``L x L`` matrix, or a tuple
    ``("normal", mean, std)`` sampled with :func:`sample_m_matrix`.
    ``types_per_layer[i]`` lists the node-type names available in layer ``i``;
    names shared between layers denote the same type.
    """

    n: int
    layers: int = 1
    types_per_layer: Sequence[Sequence[str]] | None = None
    m: object = 2
    alpha: float = 1.0
    beta: float = 0.0
    seed: int = 0
    layer_choice: Sequence[float] | None = None
    type_choice: Sequence[Sequence[float]] | None = None
    uniform_attachment: bool = False

    def validate(self) -> None:
        if not isinstance(self.n, (int, np.integer)) or self.n < 0:
            raise HmnError(f"n must be a non-negative integer, got {self.n!r}")
        if not isinstance(self.layers, (int, np.integer)) or self.layers < 1:
            raise HmnError(f"need at least one layer, got {self.layers!r}")
        types = self.resolved_types()
        if len(types) != self.layers:
            raise HmnError(f"types_per_layer has {len(types)} entries for {self.layers} layers")
        for i, ts in enumerate(types):
            if not ts:
                raise HmnError(f"layer {i} has no node types")
            if len(set(ts)) != len(ts):
                raise HmnError(f"layer {i} lists a node type twice")
        if self.alpha < 0 or self.beta < 0 or not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise HmnError("alpha and beta must be finite and non-negative")
        if self.alpha + self.beta <= 0 and not self.uniform_attachment:
            raise HmnError("alpha + beta must be positive unless uniform_attachment is set")
        if self.layer_choice is not None:
            _check_probs(self.layer_choice, self.layers, "layer_choice")
        if self.type_choice is not None:
            if len(self.type_choice) != self.layers:
                raise HmnError("type_choice needs one distribution per layer")
            for i, probs in enumerate(self.type_choice):
                _check_probs(probs, len(types[i]), f"type_choice[{i}]")
        if not isinstance(self.m, tuple):
            m = self._fixed_m()
            if np.any(np.diag(m) < 1):
                warnings.warn("some m[i][i] < 1: nodes of that layer make no intra-layer links", stacklevel=3)
        else:
            if len(self.m) != 3 or self.m[0] != "normal":
                raise HmnError(f"unsupported m specification {self.m!r}")
            if not self.m[2] >= 0:
                raise HmnError("normal m specification needs a non-negative std")
        if not -(2**63) <= int(self.seed) < 2**64:
            raise HmnError("seed must fit in 64 bits")

    def resolved_types(self) -> list[list[str]]:
        if self.types_per_layer is None:
            return [[DEFAULT_TYPE_NAME] for _ in range(self.layers)]
        return [list(ts) for ts in self.types_per_layer]

    def _fixed_m(self) -> np.ndarray:
        L = self.layers
        if isinstance(self.m, (int, np.integer)):
            if self.m < 0:
                raise HmnError("m must be non-negative")
            return np.full((L, L), int(self.m), dtype=np.int64)
        arr = np.asarray(self.m)
        if arr.shape != (L, L):
            raise HmnError(f"m matrix must be {L}x{L}, got shape {arr.shape}")
        if arr.dtype.kind not in "iu" and not np.all(arr == np.round(arr)):
            raise HmnError("m matrix entries must be integers")
        arr = arr.astype(np.int64)
        if np.any(arr < 0):
            raise HmnError("m matrix entries must be non-negative")
        return arr

    def resolved_m(self) -> np.ndarray:
        if isinstance(self.m, tuple):
            _, mean, std = self.m
            return sample_m_matrix(_streams(self.seed)[4], self.layers, mean, std)
        return self._fixed_m()


def _check_probs(probs, k: int, what: str) -> None:
    p = np.asarray(probs, dtype=float)
    if p.shape != (k,) or np.any(p < 0) or not np.isclose(p.sum(), 1.0):
        raise HmnError(f"{what} must be {k} non-negative probabilities summing to 1")


def _streams(seed: int) -> list[np.random.Generator]:
    ss = np.random.SeedSequence(int(seed) % 2**64)
    return [np.random.Generator(np.random.PCG64(s)) for s in ss.spawn(len(STREAMS))]


def sample_m_matrix(rng, size: int, mean: float = 2.0, std: float = 1.0) -> np.ndarray:
    """``size x size`` matrix of rounded normal draws, each redrawn until it is at least 1."""
    if size < 1:
        raise HmnError("m matrix size must be at least 1")
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    out = np.empty((size, size), dtype=np.int64)
    for i in range(size):
        for j in range(size):
            while True:
                v = int(np.round(mean + std * rng.standard_normal()))
                if v >= 1:
                    out[i, j] = v
                    break
    return out


def _categorical(rng: np.random.Generator, probs, count: int) -> np.ndarray:
    cdf = np.cumsum(np.asarray(probs, dtype=float))
    cdf /= cdf[-1]
    idx = np.searchsorted(cdf, rng.random(count), side="right")
    return np.minimum(idx, len(cdf) - 1)


def draw_distinct(rng: np.random.Generator, weights: np.ndarray, m: int) -> list[int]:
    """Draw indices proportional to ``weights`` until ``m`` distinct ones are found.

    When fewer than ``m`` indices carry positive weight, all of them are taken
    and the rest are filled uniformly from the zero-weight indices.  With no
    positive weight at all this is a uniform draw.
    """
    n = len(weights)
    m = min(m, n)
    if m <= 0:
        return []
    if np.count_nonzero(weights > 0) <= m:
        positive = np.flatnonzero(weights > 0)
        chosen = [int(i) for i in positive]
        if len(chosen) < m:
            rest = np.flatnonzero(weights <= 0)
            chosen.extend(int(rest[i]) for i in draw_distinct(rng, np.ones(len(rest)), m - len(chosen)))
        return chosen
    cw = np.cumsum(weights)
    total = cw[-1]
    chosen: list[int] = []
    seen: set[int] = set()
    while len(chosen) < m:
        need = m - len(chosen)
        for k in np.searchsorted(cw, rng.random(need) * total, side="right"):
            k = int(k)
            if k not in seen:
                seen.add(k)
                chosen.append(k)
                if len(chosen) == m:
                    break
    return chosen


def node_distribution(g: Hmn, nodes, alpha: float, beta: float) -> dict[LayeredNode, int]:
    """Preference weight ``floor(alpha * d + beta * sum of neighbour degrees)`` per node.

    Degrees are taken in ``g`` as a whole; ``nodes`` selects the candidates.
    """
    weights = {}
    for x in nodes:
        x = g.check_layered(x)
        nb = set(g.successors(x)) | set(g.predecessors(x))
        d = len(nb)
        s = sum(len(set(g.successors(u)) | set(g.predecessors(u))) for u in nb)
        weights[x] = int(math.floor(alpha * d + beta * s))
    return weights


@dataclass
class _LayerState:
    members: np.ndarray          # local index -> global id (final order)
    size: int = 0                # nodes inserted so far
    deg: np.ndarray = None       # intra degree
    nsum: np.ndarray = None      # sum of intra degrees of intra neighbours
    # per other layer y: inter degree toward y, sum of those over intra neighbours,
    # and sum of inter degrees of inter neighbours in y
    dinter: dict = field(default_factory=dict)
    cross: dict = field(default_factory=dict)
    ninter: dict = field(default_factory=dict)
    intra_adj: list = None       # local index -> intra neighbours (local)
    inter_adj: dict = field(default_factory=dict)  # other layer -> local index -> neighbours there


class HmnGenerator:
    """One generation run; inspect ``pending``, ``pool_builds`` and ``edges`` afterwards."""

    def __init__(self, params: GenParams):
        params.validate()
        self.params = params
        self.L = int(params.layers)
        self.types = params.resolved_types()
        self.m = params.resolved_m()
        self.alpha = float(params.alpha)
        self.beta = float(params.beta)
        self.graph: Hmn | None = None
        self.reset()

    # ---------------------------------------------------------------- state setup
    def reset(self, layer_sequence: Sequence[int] | None = None) -> None:
        """Prepare a fresh run; ``layer_sequence`` overrides the drawn layer of every node."""
        p = self.params
        n, L = int(p.n), self.L
        rl, rt, self.rng_intra, self.rng_inter, _ = _streams(p.seed)
        probs = p.layer_choice if p.layer_choice is not None else np.full(L, 1.0 / L)
        self.layer_of = _categorical(rl, probs, n) if n else np.zeros(0, dtype=np.int64)
        if layer_sequence is not None:
            seq = np.asarray(layer_sequence, dtype=np.int64)
            if seq.shape != (n,) or np.any(seq < 0) or np.any(seq >= L):
                raise HmnError(f"layer_sequence must list a layer in 0..{L - 1} for each of the {n} nodes")
            self.layer_of = seq
        self.edges: list[tuple[int, int]] = []
        self.pending: dict[tuple[int, int], list[int]] = {}
        self.bootstrapped: set[tuple[int, int]] = set()
        self.pool_builds: list[int] = []
        self.flushes: list[tuple[int, int, int]] = []
        self.next_node = 0
        u = rt.random(n)
        self.type_of = np.empty(n, dtype=np.int64)
        for i in range(n):
            k = len(self.types[self.layer_of[i]])
            if p.type_choice is None:
                self.type_of[i] = min(int(u[i] * k), k - 1)
            else:
                cdf = np.cumsum(p.type_choice[self.layer_of[i]])
                self.type_of[i] = min(int(np.searchsorted(cdf / cdf[-1], u[i], side="right")), k - 1)
        self.local = np.empty(n, dtype=np.int64)
        self.state = []
        for x in range(L):
            members = np.flatnonzero(self.layer_of == x)
            self.local[members] = np.arange(len(members))
            st = _LayerState(members=members)
            size = len(members)
            st.deg = np.zeros(size, dtype=np.int64)
            st.nsum = np.zeros(size, dtype=np.int64)
            st.intra_adj = [[] for _ in range(size)]
            for y in range(L):
                if y != x:
                    st.dinter[y] = np.zeros(size, dtype=np.int64)
                    st.cross[y] = np.zeros(size, dtype=np.int64)
                    st.ninter[y] = np.zeros(size, dtype=np.int64)
                    st.inter_adj[y] = [[] for _ in range(size)]
            self.state.append(st)

    # --------------------------------------------------------------- edge updates
    # adjacency lists hold layer-local indices; hubs are updated with fancy indexing
    @staticmethod
    def _bump(arr: np.ndarray, idx: list[int]) -> None:
        if len(idx) > 24:
            arr[idx] += 1
        else:
            for w in idx:
                arr[w] += 1

    def _add_intra(self, a: int, b: int) -> None:
        x = int(self.layer_of[a])
        st = self.state[x]
        la, lb = int(self.local[a]), int(self.local[b])
        adj = st.intra_adj
        self._bump(st.nsum, adj[la])
        self._bump(st.nsum, adj[lb])
        deg = st.deg
        deg[la] += 1
        deg[lb] += 1
        st.nsum[la] += deg[lb]
        st.nsum[lb] += deg[la]
        for y, dint in st.dinter.items():
            cross = st.cross[y]
            cross[la] += dint[lb]
            cross[lb] += dint[la]
        adj[la].append(lb)
        adj[lb].append(la)
        self.edges.append((a, b))

    def _add_inter(self, a: int, b: int) -> None:
        x, y = int(self.layer_of[a]), int(self.layer_of[b])
        sa, sb = self.state[x], self.state[y]
        la, lb = int(self.local[a]), int(self.local[b])
        self._bump(sa.cross[y], sa.intra_adj[la])
        self._bump(sb.ninter[x], sa.inter_adj[y][la])
        self._bump(sb.cross[x], sb.intra_adj[lb])
        self._bump(sa.ninter[y], sb.inter_adj[x][lb])
        sa.dinter[y][la] += 1
        sb.dinter[x][lb] += 1
        sa.ninter[y][la] += sb.dinter[x][lb]
        sb.ninter[x][lb] += sa.dinter[y][la]
        sa.inter_adj[y][la].append(lb)
        sb.inter_adj[x][lb].append(la)
        self.edges.append((a, b))

    # ------------------------------------------------------------------- weights
    def _weights(self, deg: np.ndarray, nsum: np.ndarray) -> np.ndarray:
        self._builds += 1
        if self.params.uniform_attachment:
            return np.ones(len(deg))
        return np.floor(self.alpha * deg + self.beta * nsum)

    def intra_weights(self, x: int) -> np.ndarray:
        st = self.state[x]
        k = st.size
        return self._weights(st.deg[:k], st.nsum[:k])

    def inter_weights(self, src: int, dst: int) -> np.ndarray:
        """Weights of the nodes of ``dst`` over its intra edges plus the ``src``-``dst`` inter edges."""
        st = self.state[dst]
        k = st.size
        deg = st.deg[:k] + st.dinter[src][:k]
        nsum = st.nsum[:k] + st.cross[src][:k] + st.ninter[src][:k]
        return self._weights(deg, nsum)

    # --------------------------------------------------------------- connections
    def connection1(self, u: int, m: int) -> list[int]:
        """Intra-layer links for newly inserted ``u``; returns the targets."""
        x = int(self.layer_of[u])
        st = self.state[x]
        existing = st.size - 1
        if m <= 0 or existing < m:
            return []
        if existing == m:
            targets = [int(v) for v in st.members[:existing]]
        else:
            w = self.intra_weights(x)[:existing]
            targets = [int(st.members[i]) for i in draw_distinct(self.rng_intra, w, m)]
        for v in targets:
            self._add_intra(u, v)
        return targets

    def connection2(self, u: int, dst: int, m: int) -> list[int]:
        """Inter-layer links from ``u`` toward layer ``dst``; returns the targets."""
        if m <= 0:
            return []
        src = int(self.layer_of[u])
        key = (src, dst)
        sd = self.state[dst]
        if key not in self.bootstrapped:
            if sd.size < m:
                self.pending.setdefault(key, []).append(u)
                return []
            self._flush(key, extra=u)
            return []
        w = self.inter_weights(src, dst)
        targets = [int(sd.members[i]) for i in draw_distinct(self.rng_inter, w, m)]
        for v in targets:
            self._add_inter(u, v)
        return targets

    def _flush(self, key: tuple[int, int], extra: int | None = None) -> None:
        src, dst = key
        m = int(self.m[src, dst])
        sd = self.state[dst]
        picks = draw_distinct(self.rng_inter, np.ones(sd.size), m)
        targets = [int(sd.members[i]) for i in picks]
        waiting = self.pending.pop(key, [])
        if extra is not None:
            waiting.append(extra)
        for node in waiting:
            src_state = self.state[int(self.layer_of[node])]
            linked = {int(sd.members[i]) for i in src_state.inter_adj[dst][int(self.local[node])]}
            for v in targets:
                # a waiting node may already reach v through the reverse direction
                if v not in linked:
                    self._add_inter(node, v)
        self.bootstrapped.add(key)
        self.flushes.append((src, dst, len(waiting)))

    # ----------------------------------------------------------------------- run
    def insert_next(self) -> int:
        """Insert the next node: intra links first, then each other layer in ascending order."""
        u = self.next_node
        if u >= int(self.params.n):
            raise HmnError("all nodes already inserted")
        self.next_node += 1
        self._builds = 0
        x = int(self.layer_of[u])
        self.state[x].size += 1
        self.connection1(u, int(self.m[x, x]))
        for y in range(self.L):
            if y != x:
                self.connection2(u, y, int(self.m[x, y]))
        self.pool_builds.append(self._builds)
        return u

    def run(self, layer_sequence: Sequence[int] | None = None) -> Hmn:
        self.reset(layer_sequence)
        while self.next_node < int(self.params.n):
            self.insert_next()
        return self.finish()

    def finish(self) -> Hmn:
        # nodes still waiting on a layer that filled up after their own layer stopped growing
        for key in sorted(self.pending):
            src, dst = key
            if self.pending[key] and self.state[dst].size >= self.m[src, dst] > 0:
                self._flush(key)
        self.pending = {k: v for k, v in self.pending.items() if v}
        self.next_node = int(self.params.n)
        self.graph = self._build()
        return self.graph

    def _build(self) -> Hmn:
        g = Hmn(directed=False, layers=[str(i + 1) for i in range(self.L)])
        type_ids: dict[str, int] = {DEFAULT_TYPE_NAME: 0}
        for ts in self.types:
            for name in ts:
                if name not in type_ids:
                    type_ids[name] = g.add_node_type(name)
        for u in range(int(self.params.n)):
            x = int(self.layer_of[u])
            g.add_node(type_ids[self.types[x][self.type_of[u]]], (x,))
        lay = self.layer_of.tolist()
        for a, b in self.edges:
            g._insert_edge(LayeredNode(a, lay[a]), LayeredNode(b, lay[b]), 0, 1.0)
        return g

    def manifest(self) -> dict[str, object]:
        """Resolved parameters of this run, suitable for a key-value manifest."""
        p = self.params
        return {
            "nodes": int(p.n),
            "layers": self.L,
            "types_per_layer": ";".join(",".join(ts) for ts in self.types),
            "m": "matrix " + ";".join(",".join(str(int(v)) for v in row) for row in self.m),
            "m_spec": _m_spec_text(p.m),
            "alpha": repr(float(p.alpha)),
            "beta": repr(float(p.beta)),
            "seed": int(p.seed),
            "layer_choice": "uniform" if p.layer_choice is None else ",".join(repr(float(v)) for v in p.layer_choice),
            "uniform_attachment": int(bool(p.uniform_attachment)),
            "rng": "numpy PCG64 via SeedSequence(seed).spawn(5)",
            "rng_streams": ",".join(STREAMS),
            "edges": len(self.edges),
            "pending_left": sum(len(v) for v in self.pending.values()),
        }


def _m_spec_text(m) -> str:
    if isinstance(m, tuple):
        return f"normal {float(m[1])!r},{float(m[2])!r}"
    if isinstance(m, (int, np.integer)):
        return f"const {int(m)}"
    return "matrix " + ";".join(",".join(str(int(v)) for v in row) for row in np.asarray(m))


def generate(params: GenParams) -> Hmn:
    """Run the generator once and return the undirected HMN."""
    return HmnGenerator(params).run()


def generate_baseline(kind: str, n: int, m: int | None = None, p: float | None = None, seed: int = 0) -> Hmn:
    """Classic single-layer graphs (``BA``, ``ER`` or ``Gnm``) embedded as an HMN.

    ``m`` is the attachment count for ``BA`` and the edge count for ``Gnm``;
    ``p`` is the edge probability for ``ER``.
    """
    import networkx as nx

    kind = kind.upper()
    if n < 0:
        raise HmnError("n must be non-negative")
    if kind == "BA":
        if m is None or m < 1 or m >= max(n, 1):
            raise HmnError("BA needs 1 <= m < n")
        graph = nx.barabasi_albert_graph(n, m, seed=seed)
    elif kind == "ER":
        if p is None or not 0.0 <= p <= 1.0:
            raise HmnError("ER needs 0 <= p <= 1")
        graph = nx.gnp_random_graph(n, p, seed=seed)
    elif kind == "GNM":
        if m is None or m < 0 or m > n * (n - 1) // 2:
            raise HmnError("Gnm needs 0 <= m <= n(n-1)/2")
        graph = nx.gnm_random_graph(n, m, seed=seed)
    else:
        raise HmnError(f"unknown baseline kind {kind!r}")
    return from_homogeneous(sorted(graph.edges()), n)
