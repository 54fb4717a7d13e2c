import math
import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hmn import (
    Hmn,
    HmnError,
    LayeredNode,
    MetricScope,
    UndefinedMeasureError,
    betweenness_centrality,
    closeness_centrality,
    clustering_coefficient,
    degree_centrality,
    from_homogeneous,
    jaccard_score,
    neighborhood,
    neighborhood_in,
    neighborhood_out,
    network_summary,
    shortest_distance,
)
from hmn.metrics import (
    QueryCounter,
    betweenness_all,
    centrality_averages,
    closeness_all,
    count_shortest_paths,
    layer_averages,
    scoped_neighbors_indexed,
    typed_neighbors,
    typed_neighbors_scan,
)

import oracles
from conftest import random_typed_hmn

A, B, C, D = (LayeredNode(i, 0) for i in range(4))


def path3():
    return from_homogeneous([(0, 1), (1, 2)], 3)


def star4():
    return from_homogeneous([(0, 1), (0, 2), (0, 3)], 4)


# ----------------------------------------------------------------- neighbourhoods
def test_directed_in_out_neighbourhoods():
    g = Hmn(directed=True, layers=["1", "2"])
    a, b = g.add_node(0, {0}), g.add_node(0, {0})
    g.add_node(0, {0})
    g.add_edge((a, 0), (b, 0))
    assert neighborhood_in(g, (b, 0)) == {LayeredNode(a, 0)}
    assert neighborhood_in(g, (b, 0), MetricScope(layers={1})) == set()
    assert neighborhood_out(g, (a, 0)) == {LayeredNode(b, 0)}
    assert neighborhood_out(g, (2, 0)) == set()


def test_neighbourhood_ignores_other_copies_of_node():
    g = Hmn(layers=["1", "2"])
    v = g.add_node(0, {0, 1})
    w = g.add_node(0, {1})
    g.add_edge((v, 1), (w, 1))
    assert neighborhood(g, (v, 0)) == set()
    h = Hmn(layers=["1", "2"])
    a, b = h.add_node(0, {0}), h.add_node(0, {1})
    h.add_edge((a, 0), (b, 1))
    assert neighborhood(h, (a, 0)) == {LayeredNode(b, 1)}


def test_neighbourhoods_match_edge_scan():
    rng = random.Random(21)
    for _ in range(50):
        g = random_typed_hmn(rng, n_nodes=7, n_layers=2, p=0.35, directed=True)
        scope = MetricScope(layers={rng.randrange(2)}, types={0, 1})
        lset, tset = scope.resolve(g)
        for x in g.layered_nodes():
            keep = lambda u: u.layer in lset and g.r_vt(u.node) in tset
            ins = {e.src for e in g.edges() if e.dst == x and keep(e.src)}
            outs = {e.dst for e in g.edges() if e.src == x and keep(e.dst)}
            assert neighborhood_in(g, x, scope) == ins
            assert neighborhood_out(g, x, scope) == outs
            assert neighborhood(g, x, scope) == ins | outs


def test_invalid_layered_node_rejected():
    g = path3()
    with pytest.raises(HmnError):
        neighborhood(g, (0, 5))
    with pytest.raises(HmnError):
        neighborhood(g, (9, 0))


# ---------------------------------------------------------------- degree centrality
def test_degree_centrality_examples():
    assert degree_centrality(star4(), A) == 1.0
    g = Hmn(layers=["1", "2"])
    a = g.add_node(0, {0})
    b = g.add_node(0, {1})
    g.add_node(0, {1})
    g.add_edge((a, 0), (b, 1))
    assert degree_centrality(g, (a, 0), MetricScope(layers={1})) == 0.5


def test_degree_centrality_counts_layered_nodes():
    g = Hmn(layers=["1", "2"])
    a = g.add_node(0, {0})
    b = g.add_node(0, {0, 1})
    g.add_edge((a, 0), (b, 0))
    # denominator {b^1, b^2}
    assert degree_centrality(g, (a, 0)) == 0.5


def test_degree_centrality_undefined():
    g = from_homogeneous([], 1)
    with pytest.raises(UndefinedMeasureError):
        degree_centrality(g, A)


# ------------------------------------------------------------------ shortest paths
def test_shortest_distance_examples():
    g = Hmn(layers=["1"])
    t1 = g.add_node_type("t1")
    t2 = g.add_node_type("t2")
    a, b, c = g.add_node(t1, {0}), g.add_node(t2, {0}), g.add_node(t1, {0})
    g.add_edge((a, 0), (b, 0))
    g.add_edge((b, 0), (c, 0))
    assert shortest_distance(g, (a, 0), (c, 0)) == 2
    assert shortest_distance(g, (a, 0), (c, 0), MetricScope(types={t1})) == math.inf
    # endpoints stay admissible even when outside the type scope
    assert shortest_distance(g, (a, 0), (b, 0), MetricScope(types={t1})) == 1


def test_weighted_distance_prefers_light_route():
    g = from_homogeneous([(0, 1, 5.0), (0, 2, 1.0), (2, 1, 1.5)], 3)
    assert shortest_distance(g, A, B) == 2.5
    assert count_shortest_paths(g, A, B) == 1


def test_betweenness_examples():
    assert betweenness_centrality(path3(), B) == 1.0
    tri = from_homogeneous([(0, 1), (1, 2), (0, 2)], 3)
    assert all(betweenness_centrality(tri, x) == 0 for x in (A, B, C))


def test_closeness_examples():
    assert closeness_centrality(path3(), A) == 1.5
    g = from_homogeneous([(0, 1)], 3)
    assert closeness_centrality(g, C) == 0.0


def test_clustering_examples():
    tri = from_homogeneous([(0, 1), (1, 2), (0, 2)], 3)
    assert clustering_coefficient(tri, A) == 1.0
    assert clustering_coefficient(star4(), A) == 0.0
    assert clustering_coefficient(star4(), B) == 0.0


def test_cross_layer_betweenness_scope():
    # a^1 - v^1 - b^2 : v sits between the two layers
    g = Hmn(layers=["1", "2"])
    a, v = g.add_node(0, {0}), g.add_node(0, {0})
    b = g.add_node(0, {1})
    c = g.add_node(0, {1})
    g.add_edge((a, 0), (v, 0))
    g.add_edge((v, 0), (b, 1))
    g.add_edge((v, 0), (c, 1))
    assert betweenness_centrality(g, (v, 0)) == 3.0
    # pairs restricted to the other layer: only b^2 - c^2 routes through v^1
    assert betweenness_centrality(g, (v, 0), MetricScope(layers={1})) == 1.0


# ---------------------------------------------------- homogeneous equivalence oracle
@pytest.mark.parametrize("p", [0.1, 0.3, 0.6])
def test_homogeneous_measures_match_networkx(p):
    for seed in range(15):
        n = 3 + seed % 12
        ref = nx.gnp_random_graph(n, p, seed=seed)
        g = from_homogeneous(sorted(ref.edges()), n)
        dc = nx.degree_centrality(ref)
        bc = nx.betweenness_centrality(ref, normalized=False)
        hc = nx.harmonic_centrality(ref)
        cl = nx.clustering(ref)
        bca, cca = betweenness_all(g), closeness_all(g)
        for v in ref:
            x = LayeredNode(v, 0)
            assert degree_centrality(g, x) == pytest.approx(dc[v], abs=1e-12)
            assert betweenness_centrality(g, x) == pytest.approx(bc[v], abs=1e-9)
            assert bca[x] == pytest.approx(bc[v], abs=1e-9)
            assert closeness_centrality(g, x) == pytest.approx(hc[v], abs=1e-9)
            assert cca[x] == pytest.approx(hc[v], abs=1e-9)
            assert clustering_coefficient(g, x) == pytest.approx(cl[v], abs=1e-12)


def test_directed_betweenness_matches_networkx():
    for seed in range(10):
        ref = nx.gnp_random_graph(9, 0.3, seed=seed, directed=True)
        g = from_homogeneous(sorted(ref.edges()), 9, directed=True)
        bc = nx.betweenness_centrality(ref, normalized=False)
        for v in ref:
            assert betweenness_centrality(g, LayeredNode(v, 0)) == pytest.approx(bc[v], abs=1e-9)
        # networkx harmonic centrality sums distances *to* v, so reverse the graph
        rev_hc = nx.harmonic_centrality(ref.reverse())
        for v in ref:
            assert closeness_centrality(g, LayeredNode(v, 0)) == pytest.approx(rev_hc[v], abs=1e-9)


def test_weighted_measures_match_networkx():
    rng = random.Random(8)
    for seed in range(10):
        ref = nx.gnp_random_graph(8, 0.5, seed=seed)
        for u, v in ref.edges():
            ref[u][v]["weight"] = float(rng.randint(1, 3))
        g = from_homogeneous([(u, v, d["weight"]) for u, v, d in ref.edges(data=True)], 8)
        bc = nx.betweenness_centrality(ref, normalized=False, weight="weight")
        lengths = dict(nx.all_pairs_dijkstra_path_length(ref))
        for v in ref:
            x = LayeredNode(v, 0)
            assert betweenness_centrality(g, x) == pytest.approx(bc[v], abs=1e-9)
            expect = sum(1.0 / d for u, d in lengths[v].items() if u != v)
            assert closeness_centrality(g, x) == pytest.approx(expect, abs=1e-9)


# ------------------------------------------------------------ brute-force oracles
def test_measures_match_brute_force_on_typed_hmns():
    rng = random.Random(99)
    for _ in range(40):
        g = random_typed_hmn(rng, n_nodes=5, n_layers=2, n_types=2, p=0.45, directed=rng.random() < 0.3,
                             weighted=rng.random() < 0.5)
        scope = rng.choice([None, MetricScope(layers={0}), MetricScope(types={1}), MetricScope(layers={1}, types={0})])
        layers, types = (None, None) if scope is None else (scope.layers, scope.types)
        xs = list(g.layered_nodes())
        if len(xs) > 8:
            continue
        for v in xs:
            assert betweenness_centrality(g, v, scope) == pytest.approx(oracles.betweenness(g, v, layers, types), abs=1e-9)
            assert closeness_centrality(g, v, scope) == pytest.approx(oracles.closeness(g, v, layers, types), abs=1e-9)
            assert clustering_coefficient(g, v, scope) == pytest.approx(oracles.clustering(g, v, layers, types), abs=1e-12)
            allowed = set(oracles.scoped(g, layers, types))
            for t in xs:
                assert shortest_distance(g, v, t, scope) == oracles.distance(g, v, t, allowed | {v, t})


def test_summary_triangles_match_triple_count():
    rng = random.Random(4)
    for _ in range(30):
        g = random_typed_hmn(rng, n_nodes=rng.randint(2, 8), n_layers=2, p=0.5, multi=False)
        assert network_summary(g).triangles == oracles.triangle_count(g)


# ------------------------------------------------------------------ summaries
def test_triangle_summary():
    s = network_summary(from_homogeneous([(0, 1), (1, 2), (0, 2)], 3))
    assert (s.nodes, s.edges, s.density, s.avg_degree) == (3, 3, 1.0, 2.0)
    assert math.isnan(s.assortativity)
    assert (s.triangles, s.avg_triangles_per_node, s.avg_clustering, s.clique_number) == (1, 1.0, 1.0, 3)


def test_summary_matches_networkx():
    for seed in range(25):
        ref = nx.gnp_random_graph(30, 0.15 + 0.01 * seed, seed=seed)
        g = from_homogeneous(sorted(ref.edges()), 30)
        s = network_summary(g)
        assert s.edges == ref.number_of_edges()
        assert s.density == pytest.approx(nx.density(ref))
        assert s.triangles == sum(nx.triangles(ref).values()) // 3
        assert s.avg_clustering == pytest.approx(nx.average_clustering(ref), abs=1e-12)
        assert s.clique_number == max(len(c) for c in nx.find_cliques(ref))
        assert s.assortativity == pytest.approx(nx.degree_assortativity_coefficient(ref), abs=1e-9)


def test_clique_number_on_planted_clique():
    ref = nx.gnp_random_graph(60, 0.1, seed=3)
    ref.add_edges_from((u, v) for u in range(10, 18) for v in range(u + 1, 18))
    g = from_homogeneous(sorted(ref.edges()), 60)
    assert network_summary(g).clique_number == max(len(c) for c in nx.find_cliques(ref))


def test_summary_empty_scope_rejected():
    g = Hmn(layers=["1", "2"])
    g.add_node(0, {0})
    with pytest.raises(HmnError):
        network_summary(g, MetricScope(layers={1}))


def test_star_assortativity_is_minus_one():
    assert network_summary(star4()).assortativity == pytest.approx(-1.0)


def test_centrality_averages():
    g = path3()
    avg = centrality_averages(g)
    assert avg["degree"] == pytest.approx((0.5 + 1 + 0.5) / 3)
    assert avg["betweenness"] == pytest.approx(1 / 3)
    assert avg["closeness"] == pytest.approx((1.5 + 2 + 1.5) / 3)


def test_layer_averages_match_networkx_per_layer():
    g = Hmn(layers=["a", "b"])
    for _ in range(30):
        g.add_node(0, {0, 1})
    refs = []
    for lid in (0, 1):
        ref = nx.gnp_random_graph(30, 0.2, seed=lid)
        ref.remove_nodes_from([v for v in list(ref) if ref.degree(v) == 0])
        for u, v in ref.edges():
            g.add_edge((u, lid), (v, lid))
        refs.append(ref)
    g.add_edge((0, 0), (1, 1))  # inter edges are ignored
    avg = layer_averages(g)
    expect_dc = np.mean([np.mean(list(nx.degree_centrality(r).values())) for r in refs])
    expect_bc = np.mean([np.mean(list(nx.betweenness_centrality(r).values())) for r in refs])
    expect_cc = np.mean([nx.average_clustering(r) for r in refs])
    expect_tri = np.mean([np.mean(list(nx.triangles(r).values())) for r in refs])
    assert avg["degree"] == pytest.approx(expect_dc)
    assert avg["betweenness"] == pytest.approx(expect_bc)
    assert avg["avg_cc"] == pytest.approx(expect_cc)
    assert avg["avg_triangles_per_node"] == pytest.approx(expect_tri)
    assert avg["layers"] == 2


# ------------------------------------------------------------ typed neighbour queries
def test_jaccard_examples():
    g = from_homogeneous([(0, 2), (1, 2), (0, 3), (1, 3)], 5)
    assert jaccard_score(g, A, B) == 1.0
    h = from_homogeneous([(0, 2), (1, 3)], 4)
    assert jaccard_score(h, A, B) == 0.0
    assert jaccard_score(from_homogeneous([], 2), A, B) == 0.0


def test_indexed_query_matches_scan_with_bounded_work():
    rng = random.Random(31)
    for _ in range(100):
        g = random_typed_hmn(rng, n_nodes=rng.randint(1, 15), n_layers=3, n_types=3, p=0.25)
        for x in g.layered_nodes():
            for t in g.node_types:
                for lid in g.layers:
                    fast, slow = QueryCounter(), QueryCounter()
                    got = typed_neighbors(g, x, t, lid, fast)
                    assert got == typed_neighbors_scan(g, x, t, lid, slow)
                    assert fast.inspected <= len(neighborhood(g, x)) + len(g.r_tl(t, lid))
                    assert slow.inspected == g.number_of_layered_nodes()


# ----------------------------------------------------------------- properties
graphs = st.builds(
    lambda seed, directed: random_typed_hmn(random.Random(seed), n_nodes=7, n_layers=3, n_types=3, p=0.35, directed=directed),
    st.integers(0, 10**6),
    st.booleans(),
)
subsets = st.sets(st.integers(0, 2), min_size=1)


@settings(max_examples=60, deadline=None)
@given(g=graphs, l1=subsets, l2=subsets, t1=subsets, t2=subsets)
def test_scope_monotonicity(g, l1, l2, t1, t2):
    small = MetricScope(layers=l1, types=t1)
    big = MetricScope(layers=l1 | l2, types=t1 | t2)
    for x in g.layered_nodes():
        assert neighborhood(g, x, small) <= neighborhood(g, x, big)
        assert scoped_neighbors_indexed(g, x, small) == neighborhood(g, x, small)


@settings(max_examples=40, deadline=None)
@given(g=graphs)
def test_measure_ranges_and_triangle_inequality(g):
    xs = list(g.layered_nodes())
    for x in xs:
        assert betweenness_centrality(g, x) >= 0
        assert closeness_centrality(g, x) >= 0
        assert 0.0 <= clustering_coefficient(g, x) <= 1.0
        if len(xs) > 1:
            assert degree_centrality(g, x) >= 0
    d = {(a, b): shortest_distance(g, a, b) for a in xs for b in xs}
    for a in xs:
        for b in xs:
            if not g.directed:
                assert d[a, b] == d[b, a]
            for c in xs:
                assert d[a, c] <= d[a, b] + d[b, c] + 1e-12


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_degree_centrality_at_most_one_for_single_membership(seed):
    g = random_typed_hmn(random.Random(seed), n_nodes=8, n_layers=3, p=0.5, multi=False)
    for x in g.layered_nodes():
        assert 0.0 <= degree_centrality(g, x) <= 1.0
