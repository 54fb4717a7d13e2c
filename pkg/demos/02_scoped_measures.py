"""Centrality under a scope: which layers and which node types count.

Run: python3 demos/02_scoped_measures.py
"""
import networkx as nx

from hmn import (
    LayeredNode,
    MetricScope,
    betweenness_centrality,
    closeness_centrality,
    clustering_coefficient,
    degree_centrality,
    from_homogeneous,
    from_multiplex,
    jaccard_score,
    network_summary,
)

# On a plain graph the scoped measures are the classic ones.
ref = nx.karate_club_graph()
g = from_homogeneous(sorted(ref.edges()), ref.number_of_nodes())
x = LayeredNode(0, 0)
print("karate club, node 0")
print(f"  degree      {degree_centrality(g, x):.4f}  networkx {nx.degree_centrality(ref)[0]:.4f}")
print(f"  betweenness {betweenness_centrality(g, x):.2f}  networkx {nx.betweenness_centrality(ref, normalized=False)[0]:.2f}")
print(f"  closeness   {closeness_centrality(g, x):.4f}  (harmonic) networkx {nx.harmonic_centrality(ref)[0]:.4f}")
print(f"  clustering  {clustering_coefficient(g, x):.4f}  networkx {nx.clustering(ref)[0]:.4f}")

# Two transport layers over the same five cities.
# Layer 0 is a rail line 0-1-2-3-4, layer 1 a single flight 0-4.
mx = from_multiplex(5, 2, [[(0, 1), (1, 2), (2, 3), (3, 4)], [(0, 4)]], layer_names=["rail", "air"])
hub = LayeredNode(2, 0)
print("\ncity 2 on the rail layer")
print("  betweenness, rail only:", betweenness_centrality(mx, hub, MetricScope(layers={0})))
print("  degree centrality, both layers:", round(degree_centrality(mx, hub), 4))
print("  rail layer summary:", network_summary(mx, MetricScope(layers={0})).as_row())

# Jaccard similarity of two rail stops over their rail neighbourhoods.
print("  jaccard(1, 3) on rail:", jaccard_score(mx, LayeredNode(1, 0), LayeredNode(3, 0)))
