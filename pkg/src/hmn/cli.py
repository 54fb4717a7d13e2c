"""Command-line front end: ``hmn generate|stats|dist|compare|convert``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 comparison above the
threshold.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .core import HmnError
from .distribution import SPLITS, degree_distribution, ks_distance
from .generator import GenParams, HmnGenerator
from .io import (
    config_from_params,
    dumps_hmnf,
    params_from_config,
    parse_m_spec,
    read_any,
    read_histogram,
    write_manifest,
    write_report,
    write_table,
    read_text,
)
from .metrics import MetricScope, centrality_averages, layer_averages, network_summary

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_COMPARE = 0, 1, 2, 3

# L and R_L for the four network classes; every preset samples m from normal(2, 1)
PRESETS = {
    "homogeneous": dict(layers=1, types=lambda L, k: [["t1"]]),
    "heterogeneous": dict(layers=1, types=lambda L, k: [[f"t{i + 1}" for i in range(k)]]),
    "multilayer": dict(layers=3, types=lambda L, k: [["t1"]] * L),
    "hmn": dict(layers=2, types=lambda L, k: [[f"t{i + 1}" for i in range(k)]] * L),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _open_out(path):
    return sys.stdout if path in (None, "-") else open(path, "w", encoding="utf-8", newline="")


def _emit(text: str, path) -> None:
    fh = _open_out(path)
    try:
        fh.write(text)
    finally:
        if fh is not sys.stdout:
            fh.close()


def _types_arg(text: str, layers: int) -> list[list[str]]:
    if text.isdigit():
        k = int(text)
        if k < 1:
            raise UsageError("--types-per-layer needs at least one type")
        return [[f"t{i + 1}" for i in range(k)]] * layers
    groups = [[t.strip() for t in grp.split(",") if t.strip()] for grp in text.split(";")]
    return groups * layers if len(groups) == 1 else groups


def _m_arg(tokens: list[str], layers: int):
    if tokens[0] == "file":
        if len(tokens) != 2:
            raise UsageError("--m file needs one PATH")
        rows = [ln.replace(",", " ").split() for ln in read_text(tokens[1]).splitlines()
                if ln.strip() and not ln.lstrip().startswith("#")]
        spec = "matrix " + ";".join(",".join(r) for r in rows)
        return parse_m_spec(spec, layers)
    return parse_m_spec(" ".join(tokens), layers)


def _scope(g, layers: str | None, types: str | None) -> MetricScope | None:
    if layers is None and types is None:
        return None
    lids = None if layers is None else {g.layer_id(name.strip()) for name in layers.split(",")}
    tids = None if types is None else {g.node_type_id(name.strip()) for name in types.split(",")}
    return MetricScope(layers=lids, types=tids)


# ------------------------------------------------------------------------ commands
def _params_from_flags(args) -> GenParams:
    if args.nodes is None:
        raise UsageError("--nodes is required unless --config is given")
    preset = PRESETS.get(args.preset, {})
    layers = args.layers if args.layers is not None else preset.get("layers", 1)
    if args.types_per_layer is not None:
        types = _types_arg(args.types_per_layer, layers)
    elif preset:
        types = preset["types"](layers, args.types)
    else:
        types = None
    try:
        m = _m_arg(args.m, layers) if args.m is not None else ("normal", 2.0, 1.0)
        layer_choice = None
        if args.layer_choice:
            layer_choice = [float(x) for x in args.layer_choice.split(",")]
    except ValueError as e:
        raise UsageError(str(e)) from None
    return GenParams(
        n=args.nodes,
        layers=layers,
        types_per_layer=types,
        m=m,
        alpha=1.0 if args.alpha is None else args.alpha,
        beta=0.0 if args.beta is None else args.beta,
        seed=0 if args.seed is None else args.seed,
        layer_choice=layer_choice,
    )


def cmd_generate(args) -> int:
    if args.config:
        if args.preset:
            raise UsageError("--config and --preset are mutually exclusive")
        params = params_from_config(read_text(args.config))
        overrides = {k: getattr(args, k) for k in ("alpha", "beta", "seed") if getattr(args, k) is not None}
        if args.nodes is not None:
            overrides["n"] = args.nodes
        for k, v in overrides.items():
            setattr(params, k, v)
    else:
        params = _params_from_flags(args)
    try:
        gen = HmnGenerator(params)
    except HmnError as e:
        raise UsageError(str(e)) from None
    g = gen.run()
    _emit(dumps_hmnf(g), args.out)
    manifest = {"tool": f"hmn {__version__}", "preset": args.preset or "none"}
    manifest.update(gen.manifest())
    manifest["config"] = config_from_params(params).strip().replace("\n", "; ")
    target = args.manifest or (None if args.out in (None, "-") else args.out + ".manifest")
    if target:
        write_manifest(manifest, target)
    return EXIT_OK


def cmd_stats(args) -> int:
    g = read_any(args.input, args.input_format, args.directed)
    if args.per_layer:
        if args.types:
            raise UsageError("--per-layer works on whole layers; drop --types")
        lids = None if args.layers is None else [g.layer_id(x.strip()) for x in args.layers.split(",")]
        avg = layer_averages(g, lids)
        row = {
            "Layers": int(avg["layers"]),
            "Nodes": avg["nodes"],
            "Edges": avg["edges"],
            "Degree": avg["degree"],
            "Betweenness": avg["betweenness"],
            "AvgCC": avg["avg_cc"],
            "AvgTrianglesPerNode": avg["avg_triangles_per_node"],
            "Triangles": avg["triangles"],
        }
        fh = _open_out(args.out)
        try:
            write_table([row], args.format, fh)
        finally:
            if fh is not sys.stdout:
                fh.close()
        return EXIT_OK
    scope = _scope(g, args.layers, args.types)
    summary = network_summary(g, scope)
    extra = {}
    if not args.no_centrality:
        avg = centrality_averages(g, scope)
        extra = {
            "AvgDegreeCentrality": avg["degree"],
            "AvgBetweenness": avg["betweenness"],
            "AvgCloseness": avg["closeness"],
        }
    _emit(write_report(summary, args.format, extra=extra), args.out)
    return EXIT_OK


def cmd_dist(args) -> int:
    g = read_any(args.input, args.input_format, args.directed)
    hist = degree_distribution(g, _scope(g, args.layers, args.types), args.split)
    _emit(write_report(hist, args.format, smooth_bins=args.smooth), args.out)
    return EXIT_OK


def cmd_compare(args) -> int:
    d = ks_distance(read_histogram(args.a), read_histogram(args.b))
    if args.threshold is None:
        print(f"ks\t{d!r}")
        return EXIT_OK
    ok = d <= args.threshold
    print(f"ks\t{d!r}\tthreshold\t{args.threshold!r}\t{'pass' if ok else 'fail'}")
    return EXIT_OK if ok else EXIT_COMPARE


def cmd_convert(args) -> int:
    g = read_any(args.input, args.from_format, args.directed)
    _emit(dumps_hmnf(g), args.out)
    return EXIT_OK


# -------------------------------------------------------------------------- parser
def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hmn", description="Heterogeneous multi-layered network toolkit.")
    p.add_argument("--version", action="version", version=f"hmn {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("generate", help="generate a synthetic HMN")
    gen.add_argument("--preset", choices=sorted(PRESETS), help="layer/type recipe for a network class")
    gen.add_argument("--config", help="key = value generator config")
    gen.add_argument("--nodes", type=int, help="number of nodes to insert")
    gen.add_argument("--layers", type=int, help="number of layers")
    gen.add_argument("--types", type=int, default=2, help="types per layer for the heterogeneous and hmn presets")
    gen.add_argument("--types-per-layer", help="K (t1..tK everywhere) or 'a,b;c' per layer")
    gen.add_argument("--m", nargs="+", metavar="SPEC", help="const K | file PATH | normal MEAN,STD")
    gen.add_argument("--alpha", type=float, help="weight of a node's own degree (default 1)")
    gen.add_argument("--beta", type=float, help="weight of the neighbours' degrees (default 0)")
    gen.add_argument("--seed", type=int, help="master seed (default 0)")
    gen.add_argument("--layer-choice", help="comma-separated layer probabilities")
    gen.add_argument("--out", help="HMNF output (default stdout)")
    gen.add_argument("--manifest", help="manifest path (default OUT.manifest)")
    gen.set_defaults(func=cmd_generate)

    def inputs(sp, flag="--in"):
        sp.add_argument(flag, dest="input", required=True)
        sp.add_argument("--directed", action="store_true", help="read edge lists as directed")

    st = sub.add_parser("stats", help="summary statistics of a network")
    inputs(st)
    st.add_argument("--input-format", choices=("hmnf", "multiplex", "edgelist"), default="hmnf")
    st.add_argument("--layers", help="comma-separated layer names")
    st.add_argument("--types", help="comma-separated node type names")
    st.add_argument("--format", choices=("csv", "json"), default="csv")
    st.add_argument("--per-layer", action="store_true", help="average per-layer statistics over layers")
    st.add_argument("--no-centrality", action="store_true", help="skip the path-based centrality averages")
    st.add_argument("--out")
    st.set_defaults(func=cmd_stats)

    di = sub.add_parser("dist", help="degree histogram")
    inputs(di)
    di.add_argument("--input-format", choices=("hmnf", "multiplex", "edgelist"), default="hmnf")
    di.add_argument("--layers")
    di.add_argument("--types")
    di.add_argument("--split", choices=SPLITS, default="all")
    di.add_argument("--smooth", type=int, metavar="BINS", help="write a log-binned density series instead")
    di.add_argument("--format", choices=("csv", "json"), default="csv")
    di.add_argument("--out")
    di.set_defaults(func=cmd_dist)

    co = sub.add_parser("compare", help="KS distance between two histogram files")
    co.add_argument("--a", required=True)
    co.add_argument("--b", required=True)
    co.add_argument("--threshold", type=float)
    co.set_defaults(func=cmd_compare)

    cv = sub.add_parser("convert", help="convert a foreign format to HMNF")
    cv.add_argument("--from", dest="from_format", choices=("multiplex", "edgelist", "hmnf"), required=True)
    inputs(cv)
    cv.add_argument("--out")
    cv.set_defaults(func=cmd_convert)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"hmn {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (HmnError, OSError) as e:
        print(f"hmn {args.command}: {e}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
