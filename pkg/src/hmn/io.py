"""Reading and writing HMNs, generator configs, manifests and reports.

HMNF is the native text format: UTF-8, one record per line, tab-separated
fields, ``#`` comment lines.  A document looks like::

    HMNF	1
    directed	0
    [layers]	1
    0	1
    [node_types]	1
    0	⊥
    [edge_types]	1
    0	⊥
    [nodes]	2
    0	0	0
    1	0	0
    [edges]	1
    0	0	1	0	0	1.0
    [end]

Section headers carry their record count and the closing ``[end]`` marker
makes truncation detectable.  Node records are ``id, type, layers`` (layers
comma-separated); edge records are ``src, src_layer, dst, dst_layer,
edge_type, weight``.  Output is canonical: ids sorted, weights written with
the shortest round-trip ``repr``.

Sources may be a path, ``bytes`` or an open text/binary stream; sinks a path
or a writable stream.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import re
from typing import Iterable, Mapping

import numpy as np

from .core import DEFAULT_TYPE, DEFAULT_TYPE_NAME, Hmn, HmnError, LayeredNode
from .distribution import DegreeHistogram, log_binned
from .generator import GenParams, _m_spec_text
from .metrics import NetworkSummary

HMNF_MAGIC = "HMNF"
HMNF_VERSION = "1"
SENTINEL = "NA"


class ParseError(HmnError):
    """Malformed input; ``line`` is 1-based (0 when the problem is the whole file)."""

    def __init__(self, message: str, line: int = 0, section: str | None = None):
        self.line = line
        self.section = section
        where = f"line {line}: " if line else ""
        super().__init__(where + message)


class VersionError(ParseError):
    pass


class SectionError(ParseError):
    """A section is missing, out of order, truncated or has a bad record."""


class DanglingReferenceError(ParseError):
    """A record points at a layer, type or node that was never declared."""


# --------------------------------------------------------------------------- plumbing
def read_text(source) -> str:
    if isinstance(source, (bytes, bytearray, memoryview)):
        data = bytes(source)
    elif isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            data = fh.read()
    elif hasattr(source, "read"):
        data = source.read()
        if isinstance(data, str):
            return data
    else:
        raise TypeError(f"cannot read from {type(source).__name__}")
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ParseError("input is not valid UTF-8", data[: e.start].count(b"\n") + 1) from None


def _write_text(text: str, sink) -> None:
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        return
    try:
        sink.write(text)
    except TypeError:
        sink.write(text.encode("utf-8"))


_ESC = {"\\": "\\\\", "\t": "\\t", "\n": "\\n", "\r": "\\r"}
_UNESC = {"\\": "\\", "t": "\t", "n": "\n", "r": "\r"}


def _escape(name: str) -> str:
    return "".join(_ESC.get(ch, ch) for ch in name)


def _unescape(text: str, line: int) -> str:
    out, it = [], iter(text)
    for ch in it:
        if ch != "\\":
            out.append(ch)
            continue
        nxt = next(it, None)
        if nxt not in _UNESC:
            raise ParseError(f"bad escape sequence in name {text!r}", line)
        out.append(_UNESC[nxt])
    return "".join(out)


def _fmt_float(x: float) -> str:
    return repr(float(x))


# ------------------------------------------------------------------------------ HMNF
def dumps_hmnf(g: Hmn) -> str:
    """Canonical HMNF text for ``g``."""
    out = [f"{HMNF_MAGIC}\t{HMNF_VERSION}", f"directed\t{int(g.directed)}"]
    for section, names in (
        ("layers", g.layer_names),
        ("node_types", g.node_type_names),
        ("edge_types", g.edge_type_names),
    ):
        out.append(f"[{section}]\t{len(names)}")
        out.extend(f"{i}\t{_escape(name)}" for i, name in enumerate(names))
    nodes = g.nodes()
    out.append(f"[nodes]\t{len(nodes)}")
    for v in nodes:
        layers = ",".join(str(lid) for lid in sorted(g.r_vl(v)))
        out.append(f"{v}\t{g.r_vt(v)}\t{layers}")
    edges = g.edges()
    out.append(f"[edges]\t{len(edges)}")
    for e in edges:
        out.append(f"{e.src.node}\t{e.src.layer}\t{e.dst.node}\t{e.dst.layer}\t{e.etype}\t{_fmt_float(e.weight)}")
    out.append("[end]")
    return "\n".join(out) + "\n"


def write_hmnf(g: Hmn, sink) -> None:
    _write_text(dumps_hmnf(g), sink)


def _int_field(tok: str, what: str, line: int, section: str | None) -> int:
    if not re.fullmatch(r"[0-9]+", tok):
        raise SectionError(f"{what} must be a non-negative integer, got {tok!r}", line, section)
    return int(tok)


def loads_hmnf(text: str) -> Hmn:
    """Parse HMNF text; every failure is a :class:`ParseError` with a line number."""
    lines = [(i + 1, raw.rstrip("\r")) for i, raw in enumerate(text.split("\n"))]
    records = [(no, ln) for no, ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
    pos = 0

    def take(section: str | None):
        nonlocal pos
        if pos >= len(records):
            where = f"section [{section}] is incomplete" if section else "document ends early"
            raise SectionError(f"truncated input: {where}", lines[-1][0], section)
        rec = records[pos]
        pos += 1
        return rec

    no, ln = take(None)
    fields = ln.split("\t")
    if fields[0] != HMNF_MAGIC:
        raise VersionError("missing HMNF header", no)
    if len(fields) != 2 or fields[1] != HMNF_VERSION:
        raise VersionError(f"unsupported HMNF version {fields[1:]!r}, expected {HMNF_VERSION}", no)
    no, ln = take(None)
    fields = ln.split("\t")
    if len(fields) != 2 or fields[0] != "directed" or fields[1] not in ("0", "1"):
        raise SectionError("expected 'directed<TAB>0|1'", no)
    g = Hmn(directed=fields[1] == "1")

    def header(section: str) -> tuple[int, int]:
        no, ln = take(section)
        fields = ln.split("\t")
        if fields[0] != f"[{section}]" or len(fields) != 2:
            raise SectionError(f"expected section header [{section}], got {ln[:40]!r}", no, section)
        return _int_field(fields[1], "record count", no, section), no

    for section, add, builtin in (
        ("layers", g.add_layer, None),
        ("node_types", g.add_node_type, DEFAULT_TYPE_NAME),
        ("edge_types", g.add_edge_type, DEFAULT_TYPE_NAME),
    ):
        count, hno = header(section)
        if builtin is not None and count == 0:
            raise SectionError(f"[{section}] must list the default type", hno, section)
        for i in range(count):
            no, ln = take(section)
            fields = ln.split("\t")
            if len(fields) != 2:
                raise SectionError(f"[{section}] record needs 2 fields", no, section)
            if _int_field(fields[0], "id", no, section) != i:
                raise SectionError(f"[{section}] ids must be 0..{count - 1} in order", no, section)
            name = _unescape(fields[1], no)
            if i == 0 and builtin is not None:
                if name != builtin:
                    raise SectionError(f"[{section}] id 0 must be the default type {builtin!r}", no, section)
                continue
            try:
                add(name)
            except HmnError as e:
                raise SectionError(str(e), no, section) from None

    count, _ = header("nodes")
    for _ in range(count):
        no, ln = take("nodes")
        fields = ln.split("\t")
        if len(fields) != 3:
            raise SectionError("[nodes] record needs 3 fields: id, type, layers", no, "nodes")
        nid = _int_field(fields[0], "node id", no, "nodes")
        vt = _int_field(fields[1], "node type", no, "nodes")
        lids = [_int_field(tok, "layer id", no, "nodes") for tok in fields[2].split(",")]
        if vt >= len(g.node_types):
            raise DanglingReferenceError(f"node {nid} uses undeclared node type {vt}", no, "nodes")
        for lid in lids:
            if lid >= len(g.layers):
                raise DanglingReferenceError(f"node {nid} uses undeclared layer {lid}", no, "nodes")
        if len(set(lids)) != len(lids):
            raise SectionError(f"node {nid} lists a layer twice", no, "nodes")
        try:
            g._insert_node(nid, vt, lids)
        except HmnError as e:
            raise SectionError(str(e), no, "nodes") from None

    count, _ = header("edges")
    for _ in range(count):
        no, ln = take("edges")
        fields = ln.split("\t")
        if len(fields) != 6:
            raise SectionError("[edges] record needs 6 fields", no, "edges")
        src, sl, dst, dl, et = (_int_field(tok, "edge field", no, "edges") for tok in fields[:5])
        try:
            w = float(fields[5])
        except ValueError:
            raise SectionError(f"bad weight {fields[5]!r}", no, "edges") from None
        for v, lid in ((src, sl), (dst, dl)):
            if not g.has_node(v):
                raise DanglingReferenceError(f"edge references undeclared node {v}", no, "edges")
            if lid not in g.r_vl(v):
                raise DanglingReferenceError(f"edge references node {v} in layer {lid} where it is absent", no, "edges")
        if et >= len(g.edge_types):
            raise DanglingReferenceError(f"edge uses undeclared edge type {et}", no, "edges")
        try:
            g.add_edge(LayeredNode(src, sl), LayeredNode(dst, dl), et, w)
        except HmnError as e:
            raise SectionError(str(e), no, "edges") from None

    no, ln = take("end")
    if ln != "[end]":
        raise SectionError(f"expected [end], got {ln[:40]!r} (record count too small?)", no)
    if pos != len(records):
        raise SectionError("content after [end]", records[pos][0])
    return g


def read_hmnf(source) -> Hmn:
    return loads_hmnf(read_text(source))


# ---------------------------------------------------------------- foreign edge lists
def _data_lines(text: str, comments: tuple[str, ...]) -> Iterable[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), start=1):
        ln = raw.strip()
        if not ln or ln.startswith(comments):
            continue
        yield no, ln.replace(",", " ").split()


def _parse_id(tok: str, line: int) -> int:
    if not re.fullmatch(r"[0-9]+", tok):
        raise ParseError(f"expected a non-negative integer id, got {tok!r}", line)
    return int(tok)


def _parse_weight(tok: str, line: int) -> float:
    try:
        w = float(tok)
    except ValueError:
        raise ParseError(f"bad weight {tok!r}", line) from None
    if not (w > 0 and math.isfinite(w)):
        raise ParseError(f"weight must be positive and finite, got {tok!r}", line)
    return w


def read_multiplex(source, directed: bool = False) -> Hmn:
    """Read ``layer src dst [weight]`` lines into a multiplex HMN.

    Layer labels must be integers and become layer names in ascending order.
    Node ids are kept as they appear (no remapping) and every node that
    appears anywhere is present in every layer.  Each layer has its own edge
    type and there are no inter-layer edges.  Repeated records of the same
    link are merged, keeping the first weight.
    """
    text = read_text(source)
    records = []
    for no, toks in _data_lines(text, ("#", "%")):
        if len(toks) not in (3, 4):
            raise ParseError(f"expected 'layer src dst [weight]', got {len(toks)} fields", no)
        lab = _parse_id(toks[0], no)
        u, v = _parse_id(toks[1], no), _parse_id(toks[2], no)
        if u == v:
            raise ParseError(f"self-loop on node {u}", no)
        w = _parse_weight(toks[3], no) if len(toks) == 4 else 1.0
        records.append((no, lab, u, v, w))
    if not records:
        raise ParseError("a multiplex file needs at least one record")
    labels = sorted({r[1] for r in records})
    g = Hmn(directed=directed, layers=[str(lab) for lab in labels])
    lid = {lab: i for i, lab in enumerate(labels)}
    etypes = [g.add_edge_type(f"layer:{lab}") for lab in labels]
    every = range(len(labels))
    for v in sorted({x for r in records for x in r[2:4]}):
        g._insert_node(v, DEFAULT_TYPE, every)
    for no, lab, u, v, w in records:
        i = lid[lab]
        if g.has_edge((u, i), (v, i), etypes[i]):
            continue
        g.add_edge(LayeredNode(u, i), LayeredNode(v, i), etypes[i], w)
    return g


def read_edgelist(source, directed: bool = False) -> Hmn:
    """Read ``src dst [weight]`` lines into a single-layer default-type HMN.

    Ids are kept as they appear; only ids that occur become nodes.  Lines
    starting with ``#`` or ``%`` are comments and commas count as separators.
    Self-loops are rejected; repeated links are merged.
    """
    text = read_text(source)
    records = []
    for no, toks in _data_lines(text, ("#", "%")):
        if len(toks) not in (2, 3):
            raise ParseError(f"expected 'src dst [weight]', got {len(toks)} fields", no)
        u, v = _parse_id(toks[0], no), _parse_id(toks[1], no)
        if u == v:
            raise ParseError(f"self-loop on node {u}", no)
        w = _parse_weight(toks[2], no) if len(toks) == 3 else 1.0
        records.append((u, v, w))
    g = Hmn(directed=directed, layers=["1"])
    for v in sorted({x for r in records for x in r[:2]}):
        g._insert_node(v, DEFAULT_TYPE, (0,))
    for u, v, w in records:
        if not g.has_edge((u, 0), (v, 0), DEFAULT_TYPE):
            g.add_edge(LayeredNode(u, 0), LayeredNode(v, 0), DEFAULT_TYPE, w)
    return g


def read_any(source, fmt: str = "hmnf", directed: bool = False) -> Hmn:
    if fmt == "hmnf":
        return read_hmnf(source)
    if fmt == "multiplex":
        return read_multiplex(source, directed)
    if fmt == "edgelist":
        return read_edgelist(source, directed)
    raise HmnError(f"unknown input format {fmt!r}")


# ------------------------------------------------------------------ key-value files
def parse_keyvalue(text: str) -> dict[str, str]:
    """Flat ``key = value`` document; ``#`` starts a comment line."""
    out: dict[str, str] = {}
    for no, raw in enumerate(text.splitlines(), start=1):
        ln = raw.strip()
        if not ln or ln.startswith("#"):
            continue
        key, sep, value = ln.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ParseError(f"expected 'key = value', got {ln[:40]!r}", no)
        if key in out:
            raise ParseError(f"key {key!r} given twice", no)
        out[key] = value.strip()
    return out


def dumps_keyvalue(items: Mapping[str, object]) -> str:
    return "".join(f"{k} = {v}\n" for k, v in items.items())


def write_manifest(items: Mapping[str, object], sink) -> None:
    _write_text(dumps_keyvalue(items), sink)


def read_manifest(source) -> dict[str, str]:
    return parse_keyvalue(read_text(source))


def parse_m_spec(text: str, layers: int):
    """``const K`` (or a bare integer), ``matrix a,b;c,d`` or ``normal MEAN,STD``."""
    kind, _, rest = text.strip().partition(" ")
    rest = rest.strip()
    try:
        if not rest and re.fullmatch(r"[0-9]+", kind):
            return int(kind)
        if kind == "const":
            return int(rest)
        if kind == "matrix":
            rows = [[int(tok) for tok in row.split(",")] for row in rest.split(";")]
            if len(rows) != layers or any(len(r) != layers for r in rows):
                raise HmnError(f"m matrix must be {layers}x{layers}")
            return np.array(rows, dtype=np.int64)
        if kind == "normal":
            mean, std = (float(tok) for tok in rest.split(","))
            return ("normal", mean, std)
    except ValueError:
        pass
    raise HmnError(f"bad m specification {text!r}; use 'const K', 'matrix ...' or 'normal MEAN,STD'")


def format_m_spec(m) -> str:
    """Inverse of :func:`parse_m_spec`."""
    return _m_spec_text(m)


_CONFIG_KEYS = {"nodes", "layers", "types_per_layer", "m", "alpha", "beta", "seed", "layer_choice",
                "type_choice", "uniform_attachment"}


def params_from_config(text: str) -> GenParams:
    """Build :class:`GenParams` from a ``key = value`` generator config."""
    kv = parse_keyvalue(text)
    unknown = set(kv) - _CONFIG_KEYS
    if unknown:
        raise HmnError(f"unknown config keys: {', '.join(sorted(unknown))}")
    if "nodes" not in kv:
        raise HmnError("config needs 'nodes'")
    try:
        layers = int(kv.get("layers", "1"))
        types = None
        if "types_per_layer" in kv:
            groups = [[t.strip() for t in grp.split(",")] for grp in kv["types_per_layer"].split(";")]
            types = groups * layers if len(groups) == 1 else groups
        layer_choice = None
        if kv.get("layer_choice", "uniform") != "uniform":
            layer_choice = [float(x) for x in kv["layer_choice"].split(",")]
        type_choice = None
        if "type_choice" in kv:
            type_choice = [[float(x) for x in grp.split(",")] for grp in kv["type_choice"].split(";")]
        params = GenParams(
            n=int(kv["nodes"]),
            layers=layers,
            types_per_layer=types,
            m=parse_m_spec(kv.get("m", "const 2"), layers),
            alpha=float(kv.get("alpha", "1")),
            beta=float(kv.get("beta", "0")),
            seed=int(kv.get("seed", "0")),
            layer_choice=layer_choice,
            type_choice=type_choice,
            uniform_attachment=kv.get("uniform_attachment", "0") in ("1", "true", "yes"),
        )
    except ValueError as e:
        if isinstance(e, HmnError):
            raise
        raise HmnError(f"bad config value: {e}") from None
    params.validate()
    return params


def config_from_params(p: GenParams) -> str:
    items = {
        "nodes": int(p.n),
        "layers": int(p.layers),
        "types_per_layer": ";".join(",".join(ts) for ts in p.resolved_types()),
        "m": format_m_spec(p.m),
        "alpha": repr(float(p.alpha)),
        "beta": repr(float(p.beta)),
        "seed": int(p.seed),
        "layer_choice": "uniform" if p.layer_choice is None else ",".join(repr(float(x)) for x in p.layer_choice),
    }
    if p.type_choice is not None:
        items["type_choice"] = ";".join(",".join(repr(float(x)) for x in grp) for grp in p.type_choice)
    if p.uniform_attachment:
        items["uniform_attachment"] = 1
    return dumps_keyvalue(items)


# --------------------------------------------------------------------------- reports
def _cell(v):
    if isinstance(v, (bool, np.bool_)):
        return int(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return None if math.isnan(v) else float(v)
    return v


def _csv_cell(v) -> str:
    v = _cell(v)
    if v is None:
        return SENTINEL
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_table(rows: list[Mapping[str, object]], fmt: str, sink) -> None:
    """Rows of equal keys as CSV (undefined values as ``NA``) or a JSON list (``null``)."""
    if fmt == "json":
        _write_text(json.dumps([{k: _cell(v) for k, v in r.items()} for r in rows], indent=2) + "\n", sink)
        return
    if fmt != "csv":
        raise HmnError(f"unknown report format {fmt!r}")
    if not rows:
        raise HmnError("nothing to report")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(rows[0]))
    for r in rows:
        w.writerow([_csv_cell(v) for v in r.values()])
    _write_text(buf.getvalue(), sink)


def write_report(
    record: NetworkSummary | DegreeHistogram,
    fmt: str = "csv",
    sink=None,
    extra: Mapping[str, object] | None = None,
    smooth_bins: int | None = None,
) -> str:
    """Write a summary row or a degree histogram; returns the text written.

    Summaries use the column order of :attr:`NetworkSummary.FIELDS` followed
    by any ``extra`` columns.  Histograms are ``degree,count`` tables; with
    ``smooth_bins`` the log-binned ``bin_center,density`` series is written
    instead (CSV) or alongside (JSON).
    """
    buf = io.StringIO()
    if isinstance(record, NetworkSummary):
        row = dict(record.as_row())
        row.update(extra or {})
        if fmt == "json":
            write_table([row], "json", buf)
            buf = io.StringIO(json.dumps(json.loads(buf.getvalue())[0], indent=2) + "\n")
        else:
            write_table([row], fmt, buf)
    elif isinstance(record, DegreeHistogram):
        if not record.counts:
            raise HmnError("cannot report an empty histogram")
        if fmt == "json":
            doc = {"split": record.split, "histogram": {str(k): v for k, v in record.counts.items()}}
            if smooth_bins:
                x, y = log_binned(record, smooth_bins)
                doc["smoothed"] = {"bin_center": x.tolist(), "density": y.tolist()}
            buf.write(json.dumps(doc, indent=2) + "\n")
        elif fmt == "csv":
            if smooth_bins:
                x, y = log_binned(record, smooth_bins)
                buf.write("bin_center,density\n")
                buf.writelines(f"{float(a)!r},{float(b)!r}\n" for a, b in zip(x, y))
            else:
                buf.write("degree,count\n")
                buf.writelines(f"{k},{v}\n" for k, v in record.counts.items())
        else:
            raise HmnError(f"unknown report format {fmt!r}")
    else:
        raise TypeError(f"cannot report a {type(record).__name__}")
    text = buf.getvalue()
    if sink is not None:
        _write_text(text, sink)
    return text


def read_summary_json(source) -> dict[str, object]:
    """Inverse of the JSON summary report; ``null`` comes back as NaN."""
    try:
        doc = json.loads(read_text(source))
    except json.JSONDecodeError as e:
        raise ParseError(f"bad JSON: {e.msg}", e.lineno) from None
    if not isinstance(doc, dict):
        raise ParseError("expected a JSON object")
    return {k: (math.nan if v is None else v) for k, v in doc.items()}


def read_histogram(source) -> DegreeHistogram:
    """Parse a ``degree,count`` CSV table (header optional, ``#`` comments allowed)."""
    text = read_text(source)
    counts: dict[int, int] = {}
    for no, raw in enumerate(text.splitlines(), start=1):
        ln = raw.strip()
        if not ln or ln.startswith("#"):
            continue
        if ln.replace(" ", "") == "degree,count":
            continue
        parts = [p.strip() for p in ln.split(",")]
        if len(parts) != 2 or not all(re.fullmatch(r"[0-9]+", p) for p in parts):
            raise ParseError(f"expected 'degree,count' with non-negative integers, got {ln[:40]!r}", no)
        k, c = int(parts[0]), int(parts[1])
        if k in counts:
            raise ParseError(f"degree {k} listed twice", no)
        counts[k] = c
    if not any(counts.values()):
        raise ParseError("histogram is empty")
    return DegreeHistogram(counts)
