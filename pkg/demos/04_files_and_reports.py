"""Saving, loading and reporting: HMNF files, edge lists, CSV/JSON tables.

Run: python3 demos/04_files_and_reports.py
"""
import tempfile
from pathlib import Path

from hmn import GenParams, degree_distribution, generate, network_summary
from hmn.io import ParseError, dumps_hmnf, read_edgelist, read_hmnf, read_multiplex, write_hmnf, write_report

tmp = Path(tempfile.mkdtemp())

g = generate(GenParams(n=60, layers=2, types_per_layer=[["a"], ["b"]], m=2, seed=3))
write_hmnf(g, tmp / "g.hmnf")
print("first lines of the HMNF file:")
print("\n".join((tmp / "g.hmnf").read_text().splitlines()[:12]))
assert read_hmnf(tmp / "g.hmnf") == g

# Foreign formats come in through the same model.
(tmp / "mx.txt").write_text("# layer src dst weight\n1 0 1 1\n1 1 2 1\n2 0 2 3.5\n")
mx = read_multiplex(tmp / "mx.txt")
print("\nmultiplex:", mx.layer_names, mx.edge_type_names[1:], mx.number_of_edges(), "edges")
el = read_edgelist(b"0 1\n1 2\n2 0\n2 3\n")
print("edge list:", el.number_of_nodes(), "nodes", el.number_of_edges(), "edges")

# Reports: a summary row and a degree histogram, in CSV and JSON.
print("\nsummary CSV:")
print(write_report(network_summary(el)), end="")
print("histogram CSV:")
print(write_report(degree_distribution(g)), end="")
print("log-binned JSON:")
print(write_report(degree_distribution(g), "json", smooth_bins=4))

# A broken file says where it broke.
bad = dumps_hmnf(g).replace("[edges]", "[edgez]")
try:
    read_hmnf(bad.encode())
except ParseError as e:
    print("parse error:", e)
