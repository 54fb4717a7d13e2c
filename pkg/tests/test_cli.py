import json
import subprocess
import sys

import pytest

from hmn import from_homogeneous, network_summary
from hmn.cli import EXIT_COMPARE, EXIT_DATA, EXIT_OK, EXIT_USAGE, main
from hmn.io import dumps_hmnf, read_hmnf, read_manifest


@pytest.fixture
def triangle_file(tmp_path):
    path = tmp_path / "tri.hmnf"
    path.write_text(dumps_hmnf(from_homogeneous([(0, 1), (1, 2), (0, 2)], 3)), encoding="utf-8")
    return path


def run(*argv):
    return main([str(a) for a in argv])


# ------------------------------------------------------------------ generate
def test_homogeneous_preset(tmp_path):
    out = tmp_path / "h.hmnf"
    assert run("generate", "--preset", "homogeneous", "--nodes", 100, "--seed", 7, "--out", out) == EXIT_OK
    g = read_hmnf(out)
    assert g.number_of_nodes() == 100
    assert len(g.layers) == 1 and len(g.node_types) == 2  # the default type plus t1
    assert {g.r_vt(v) for v in g.nodes()} == {g.node_type_id("t1")}
    manifest = read_manifest(str(out) + ".manifest")
    assert manifest["seed"] == "7" and manifest["preset"] == "homogeneous"
    assert manifest["m"].startswith("matrix")


def test_same_flags_same_bytes(tmp_path):
    a, b = tmp_path / "a.hmnf", tmp_path / "b.hmnf"
    flags = ["generate", "--preset", "hmn", "--nodes", 300, "--types", 3, "--seed", 5]
    assert run(*flags, "--out", a) == run(*flags, "--out", b) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    assert (tmp_path / "a.hmnf.manifest").read_bytes() == (tmp_path / "b.hmnf.manifest").read_bytes()


@pytest.mark.parametrize("preset,layers,types", [("heterogeneous", 1, 2), ("multilayer", 3, 1), ("hmn", 2, 2)])
def test_presets_shape(tmp_path, preset, layers, types):
    out = tmp_path / "p.hmnf"
    assert run("generate", "--preset", preset, "--nodes", 120, "--out", out) == EXIT_OK
    g = read_hmnf(out)
    assert len(g.layers) == layers and len(g.node_types) - 1 == types


def test_eatn_shaped_run(tmp_path):
    out = tmp_path / "e.hmnf"
    code = run("generate", "--nodes", 400, "--layers", 37, "--m", "const", 2, "--alpha", 1, "--beta", 0, "--out", out)
    assert code == EXIT_OK
    assert len(read_hmnf(out).layers) == 37
    assert read_manifest(str(out) + ".manifest")["m_spec"] == "const 2"


def test_m_from_file_and_config(tmp_path):
    mfile = tmp_path / "m.txt"
    mfile.write_text("2 1\n1 2\n")
    a = tmp_path / "a.hmnf"
    assert run("generate", "--nodes", 60, "--layers", 2, "--m", "file", mfile, "--out", a) == EXIT_OK
    cfg = tmp_path / "gen.cfg"
    cfg.write_text("nodes = 60\nlayers = 2\nm = matrix 2,1;1,2\n")
    b = tmp_path / "b.hmnf"
    assert run("generate", "--config", cfg, "--out", b) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_generate_to_stdout(capsys):
    assert run("generate", "--nodes", 5, "--seed", 1) == EXIT_OK
    assert capsys.readouterr().out.startswith("HMNF\t1\n")


@pytest.mark.parametrize("argv", [
    ["generate"],
    ["generate", "--nodes", "-3"],
    ["generate", "--nodes", "10", "--alpha", "0", "--beta", "0"],
    ["generate", "--nodes", "10", "--m", "sometimes"],
    ["generate", "--nodes", "10", "--bogus"],
    ["frobnicate"],
    ["stats"],
])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as ex:
        code = main(argv)
        raise SystemExit(code)
    assert ex.value.code == EXIT_USAGE
    assert capsys.readouterr().err


# --------------------------------------------------------------------- stats
def test_stats_triangle(triangle_file, capsys):
    assert run("stats", "--in", triangle_file) == EXIT_OK
    header, row = capsys.readouterr().out.strip().split("\n")
    cols = dict(zip(header.split(","), row.split(",")))
    assert cols["Density"] == "1.0" and cols["Assortativity"] == "NA"
    assert cols["AvgDegreeCentrality"] == "1.0"


def test_stats_json_matches_library(triangle_file, capsys):
    assert run("stats", "--in", triangle_file, "--format", "json", "--no-centrality") == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    expected = network_summary(read_hmnf(triangle_file)).as_row()
    assert doc["Nodes"] == expected["Nodes"] and doc["AvgCC"] == expected["AvgCC"]
    assert doc["Assortativity"] is None


def test_stats_empty_scope_is_data_error(tmp_path, capsys):
    g = from_homogeneous([(0, 1)], 2)
    g.add_node_type("ghost")
    path = tmp_path / "g.hmnf"
    path.write_text(dumps_hmnf(g))
    assert run("stats", "--in", path, "--types", "ghost") == EXIT_DATA
    assert run("stats", "--in", path, "--layers", "nope") == EXIT_DATA
    assert run("stats", "--in", tmp_path / "missing.hmnf") == EXIT_DATA
    capsys.readouterr()


def test_stats_per_layer(tmp_path, capsys):
    path = tmp_path / "mx.txt"
    path.write_text("1 0 1\n1 1 2\n2 0 2\n")
    assert run("stats", "--in", path, "--input-format", "multiplex", "--per-layer") == EXIT_OK
    header, row = capsys.readouterr().out.strip().split("\n")
    cols = dict(zip(header.split(","), row.split(",")))
    assert cols["Layers"] == "2" and float(cols["Edges"]) == 1.5


# ---------------------------------------------------------------------- dist
def test_dist_star_and_compare(tmp_path, capsys):
    star = tmp_path / "star.txt"
    star.write_text("0 1\n0 2\n0 3\n")
    hist = tmp_path / "star.csv"
    assert run("dist", "--in", star, "--input-format", "edgelist", "--out", hist) == EXIT_OK
    assert hist.read_text() == "degree,count\n1,3\n3,1\n"

    assert run("compare", "--a", hist, "--b", hist, "--threshold", 0.0) == EXIT_OK
    assert capsys.readouterr().out.split("\t")[1] == "0.0"

    other = tmp_path / "other.csv"
    other.write_text("degree,count\n7,2\n")
    assert run("compare", "--a", hist, "--b", other, "--threshold", 0.5) == EXIT_COMPARE
    assert capsys.readouterr().out.split("\t")[1] == "1.0"

    bad = tmp_path / "bad.csv"
    bad.write_text("degree,count\n1,x\n")
    assert run("compare", "--a", hist, "--b", bad) == EXIT_DATA


def test_dist_inter_split_on_multiplex(tmp_path):
    mx = tmp_path / "mx.txt"
    mx.write_text("1 0 1\n2 1 2\n")
    out = tmp_path / "d.csv"
    assert run("dist", "--in", mx, "--input-format", "multiplex", "--split", "inter", "--out", out) == EXIT_OK
    assert out.read_text() == "degree,count\n0,6\n"


def test_dist_smooth_and_handshake(tmp_path):
    g = tmp_path / "g.hmnf"
    assert run("generate", "--nodes", 500, "--layers", 2, "--seed", 3, "--out", g) == EXIT_OK
    out = tmp_path / "d.csv"
    assert run("dist", "--in", g, "--out", out) == EXIT_OK
    rows = [tuple(map(int, ln.split(","))) for ln in out.read_text().split("\n")[1:] if ln]
    assert sum(k * c for k, c in rows) == 2 * read_hmnf(g).number_of_edges()
    smooth = tmp_path / "s.csv"
    assert run("dist", "--in", g, "--smooth", 8, "--out", smooth) == EXIT_OK
    assert smooth.read_text().startswith("bin_center,density\n")


# ------------------------------------------------------------------- convert
def test_convert_multiplex_and_edgelist(tmp_path):
    mx = tmp_path / "mx.txt"
    mx.write_text("1 0 1 1\n2 0 1 1\n")
    out = tmp_path / "mx.hmnf"
    assert run("convert", "--from", "multiplex", "--in", mx, "--out", out) == EXIT_OK
    g = read_hmnf(out)
    assert len(g.layers) == 2 and g.number_of_edges() == 2

    el = tmp_path / "tri.txt"
    el.write_text("0 1\n1 2\n2 0\n")
    out2 = tmp_path / "tri.hmnf"
    assert run("convert", "--from", "edgelist", "--in", el, "--out", out2) == EXIT_OK
    assert len(read_hmnf(out2).layers) == 1

    again = tmp_path / "again.hmnf"
    assert run("convert", "--from", "hmnf", "--in", out2, "--out", again) == EXIT_OK
    assert again.read_bytes() == out2.read_bytes()


def test_convert_parse_error_is_data_error(tmp_path, capsys):
    el = tmp_path / "bad.txt"
    el.write_text("0 1\n2 2\n")
    assert run("convert", "--from", "edgelist", "--in", el) == EXIT_DATA
    assert "line 2" in capsys.readouterr().err


def test_module_entry_point(tmp_path):
    out = tmp_path / "x.hmnf"
    proc = subprocess.run([sys.executable, "-m", "hmn", "generate", "--nodes", "20", "--out", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert read_hmnf(out).number_of_nodes() == 20
    proc = subprocess.run([sys.executable, "-m", "hmn", "stats"], capture_output=True, text=True)
    assert proc.returncode == EXIT_USAGE
