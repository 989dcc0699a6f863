"""Command-line interface: ``mixlab {analyze,count,corpus,random,chart}``.

Exit status is 0 on success, 2 on usage errors and 1 when the computation
itself fails.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

from . import eulerian as eu
from .experiments import (ExperimentConfig, estimate_mixing_probability, quartile_means,
                          scatter_svg, write_chart_csv, corpus_sweep)
from .graph import Graph, even_subgraph_corpus, parse_edge_list, parse_graph6, write_graph6
from .linalg import LinalgError
from .mixing import CHEEGER_MAX_N, cheeger_constant, classify, spectral_summary, theorem1_gamma

SKIPPED = "skipped: exceeds exact-count limit"


def _load_graph(args) -> Graph:
    if args.graph6 is not None:
        return parse_graph6(args.graph6)
    text = sys.stdin.read() if args.edges == "-" else Path(args.edges).read_text()
    return parse_edge_list(text)


def _clean(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def _emit(record: dict, fmt: str) -> None:
    if fmt == "json":
        json.dump({k: _clean(v) for k, v in record.items()}, sys.stdout, sort_keys=False)
        sys.stdout.write("\n")
    elif fmt == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(record.keys())
        w.writerow(["" if v is None else (f"{v:.17g}" if isinstance(v, float) else
                    json.dumps(v) if isinstance(v, (list, tuple)) else v) for v in record.values()])
    else:
        width = max(map(len, record))
        for k, v in record.items():
            if isinstance(v, float):
                v = f"{v:.12g}"
            elif v is None:
                v = "-"
            sys.stdout.write(f"{k:<{width}}  {v}\n")


def cmd_analyze(args) -> int:
    g = _load_graph(args)
    s = spectral_summary(g)
    rec = {"graph6": write_graph6(g), "n": g.n, "m": g.m,
           "min_degree": g.min_degree, "max_degree": g.max_degree,
           "connected": g.is_connected(),
           "lambda2": s.lambda2, "lambda2_over_n": s.lambda2 / g.n,
           "chi2": s.chi2, "spectral_gap": s.spectral_gap}
    if 2 <= g.n <= CHEEGER_MAX_N:
        ch = cheeger_constant(g)
        rec["cheeger"] = ch.value
        rec["cheeger_witness"] = list(ch.witness)
    c = classify(g, args.gamma, summary=s, cheeger=rec.get("cheeger"))
    rec.update({"gamma": args.gamma, "in_F": c.in_F, "in_C": c.in_C, "in_M": c.in_M,
                "gamma_mixing": c.is_mixing, "margin_F": c.margins[0], "margin_C": c.margins[1],
                "margin_M": c.margins[2], "cheeger_method": c.cheeger_method,
                "marginal": any(c.marginal)})
    if 0 < args.gamma <= 1:
        rec["theorem1_gamma"] = theorem1_gamma(args.gamma)
    _emit(rec, args.format)
    return 0


def cmd_count(args) -> int:
    g = _load_graph(args)
    want_all = not (args.eo or args.ec or args.approx)
    rec: dict = {"graph6": write_graph6(g), "n": g.n, "m": g.m, "all_degrees_even": g.all_degrees_even()}
    even, conn = g.all_degrees_even(), g.is_connected()
    eo = ec = None
    if args.eo or want_all:
        if g.m > eu.EO_MAX_EDGES and even:
            rec["eo_exact"] = SKIPPED
        else:
            eo = rec["eo_exact"] = eu.count_eulerian_orientations(g)
    if args.ec or want_all:
        if not even:
            ec = rec["ec_exact"] = 0
        elif not conn or g.m == 0:
            rec["ec_exact"] = None
        elif g.m > eu.BEST_MAX_EDGES:
            rec["ec_exact"] = SKIPPED
        else:
            ec = rec["ec_exact"] = eu.count_eulerian_circuits_best(g)
    if args.approx or want_all:
        rec["spanning_trees"] = eu.spanning_tree_count(g)
        if even and conn and g.n >= 2 and g.m > 0:
            cc = eu.correction_constants(g)
            t = rec["spanning_trees"]
            rec["eo_approx"] = math.exp(eu.log_eo_approx(g, t))
            rec["ec_approx"] = math.exp(eu.log_ec_approx(g, t, cc))
            rec.update({"c1": cc.c1, "c2": cc.c2, "c3": cc.c3, "c4": cc.c4})
            if eo:
                rec["error_eo"] = eu.relative_error(rec["eo_approx"], eo)
            if ec:
                rec["error_ec"] = eu.relative_error(rec["ec_approx"], ec)
        else:
            rec["eo_approx"] = rec["ec_approx"] = None
    _emit(rec, args.format)
    return 0


def _open_out(path: str):
    return sys.stdout if path == "-" else open(path, "w", encoding="utf-8", newline="\n")


def cmd_corpus(args) -> int:
    graphs = even_subgraph_corpus(args.n, connected_only=args.connected, seed=args.seed, sample=args.sample)
    out = _open_out(args.out)
    try:
        for g in graphs:
            out.write(write_graph6(g) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_random(args) -> int:
    cfg = ExperimentConfig(args.n, args.p, args.gamma, args.trials, args.seed)
    res = estimate_mixing_probability(cfg, jobs=args.jobs)
    rec = {"n": cfg.n, "p": cfg.p, "gamma": cfg.gamma, "trials": cfg.trials, "seed": cfg.seed,
           "successes": res.successes, "frequency": res.frequency,
           "wilson_lo": res.wilson_interval[0], "wilson_hi": res.wilson_interval[1],
           "frequency_F": res.frequency_F, "frequency_C": res.frequency_C,
           "frequency_M": res.frequency_M, "cheeger_method": res.cheeger_method}
    _emit(rec, args.format)
    return 0


def cmd_chart(args) -> int:
    rows = list(corpus_sweep(args.n, sample=args.sample, seed=args.seed, jobs=args.jobs))
    base = Path(args.out)
    csv_path = base.with_name(base.name + ".csv")
    svg_path = base.with_name(base.name + ".svg")
    with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
        write_chart_csv(rows, fh)
    key = "error_eo" if args.metric == "eo" else "error_ec"
    pts = [(r.lambda2_over_n, getattr(r, key)) for r in rows if getattr(r, key) is not None]
    label = "Error (EO)" if args.metric == "eo" else "Error' (EC)"
    svg_path.write_text(scatter_svg([p[0] for p in pts], [p[1] for p in pts],
                                    title=f"n = {args.n}", ylabel=label), encoding="utf-8")
    rec = {"n": args.n, "metric": args.metric, "rows": len(rows), "points": len(pts),
           "csv": str(csv_path), "svg": str(svg_path)}
    if len(pts) >= 4:
        lo, hi = quartile_means(rows, args.metric)
        rec.update({"mean_abs_error_bottom_quartile": lo, "mean_abs_error_top_quartile": hi})
    _emit(rec, args.format)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixlab", description=__doc__.splitlines()[0])
    parser.add_argument("--jobs", type=int, default=1, help="worker processes (MIXLAB_JOBS overrides)")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_input(p):
        grp = p.add_mutually_exclusive_group(required=True)
        grp.add_argument("--graph6", metavar="S")
        grp.add_argument("--edges", metavar="FILE", help="edge-list file ('n m' header), '-' for stdin")

    def fmt(p, default):
        p.add_argument("--format", choices=("json", "csv", "text"), default=default)

    p = sub.add_parser("analyze", help="spectral summary, Cheeger constant and mixing classes")
    graph_input(p)
    p.add_argument("--gamma", type=float, required=True)
    fmt(p, "text")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("count", help="exact and asymptotic Eulerian counts")
    graph_input(p)
    p.add_argument("--eo", action="store_true")
    p.add_argument("--ec", action="store_true")
    p.add_argument("--approx", action="store_true")
    fmt(p, "text")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("corpus", help="even-degree spanning subgraphs of K_n as graph6 lines")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--connected", action="store_true")
    p.add_argument("--sample", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, metavar="PATH|-")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("random", help="Monte-Carlo probability that G(n, p) is gamma-mixing")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    fmt(p, "text")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("chart", help="error versus lambda2/n chart data (PATH.csv and PATH.svg)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sample", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--metric", choices=("eo", "ec"), required=True)
    p.add_argument("--out", required=True, metavar="PATH")
    fmt(p, "csv")
    p.set_defaults(func=cmd_chart)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, LinalgError, OSError) as exc:
        print(f"mixlab {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
