"""Building HMNs by hand and from the classic network families.

Run: python3 demos/01_build_and_convert.py
"""
from hmn import Hmn, LayeredNode, from_heterogeneous, from_homogeneous, from_multilayered, from_multiplex

# A tiny two-layer network: an "author" layer and a "venue" layer.
# Nodes carry a type; a node can live in several layers at once.
g = Hmn(layers=["people", "venues"])
person = g.add_node_type("person")
venue = g.add_node_type("venue")
writes = g.add_edge_type("co-author")
cites = g.add_edge_type("published-in")

alice = g.add_node(person, [0])
bob = g.add_node(person, [0])
kdd = g.add_node(venue, [1])
both = g.add_node(person, [0, 1])  # an editor, present in both layers

g.add_edge((alice, 0), (bob, 0), writes)
g.add_edge((bob, 0), (both, 0), writes)
g.add_edge((alice, 0), (kdd, 1), cites)  # inter-layer edge
g.add_edge((both, 1), (kdd, 1), cites)

print("layers:", g.layer_names)
print("node types:", g.node_type_names)
print("nodes:", g.nodes(), "layered nodes:", g.number_of_layered_nodes())
for e in g.edges():
    kind = "intra" if e.is_intra else "inter"
    print(f"  {e.src} -> {e.dst}  {g.edge_type_names[e.etype]:13s} {kind}")

# The type-layer index answers "which persons are in layer 0" without a scan.
print("persons in layer 0:", sorted(g.r_tl(person, 0)))
print("layers of the editor:", sorted(g.r_vl(both)))

# Every classic family embeds as a special case.
tri = from_homogeneous([(0, 1), (1, 2), (2, 0)], 3)
print("\nhomogeneous triangle:", tri.number_of_nodes(), "nodes,", tri.number_of_edges(), "edges, 1 layer")

het = from_heterogeneous([(0, "user"), (1, "item"), (2, "item")],
                         [(0, 1, "bought"), (0, 2, "viewed")],
                         ["user", "item"], ["bought", "viewed"])
print("heterogeneous:", het.node_type_names[1:], het.edge_type_names[1:])

ml = from_multilayered([3, 2], [[(0, 1), (1, 2)], [(0, 1)]], {(0, 1): [(2, 0)]})
print("multi-layered: layer sizes", [len(ml.r_l(i)) for i in ml.layers],
      "inter edges", sum(e.is_inter for e in ml.edges()))

mx = from_multiplex(4, 2, [[(0, 1), (1, 2)], [(2, 3)]])
print("multiplex: every node in every layer ->", all(mx.r_vl(v) == {0, 1} for v in mx.nodes()))

# Induced sub-HMN keeps the original ids.
sub = g.induced([0])
print("\ninduced on layer 0:", sub.nodes(), [(e.src, e.dst) for e in sub.edges()])
print("the editor as a layered node:", LayeredNode(both, 1))
