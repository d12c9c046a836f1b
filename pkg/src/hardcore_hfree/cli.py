"""Command-line entry point: ``hardcore-hfree {gen,exact,sample,coupling,detect,torpid}``.

Every output embeds the tool version and the resolved configuration, and the
same configuration (seed included) reproduces the same bytes.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .cluster import cluster_statistics, exact_cluster_size_mean, exact_coupling_pushforward
from .exact import (
    MIXING_STATE_CAP,
    CapExceeded,
    HardCoreModel,
    exact_mixing_time,
    exact_w1_hamming,
    independent_set_masks,
    marginals,
    partition_function,
    pinned_distribution,
    tv_distance,
)
from .graph import (
    GenerationError,
    SubdividedClawSpec,
    complete_graph,
    cycle_graph,
    format_edge_list,
    gen_efree_block,
    gen_random_cubic_bipartite,
    gen_skewstar_witness,
    gen_subdivided_claw,
    path_graph,
    read_edge_list,
)
from .patterns import find_induced, named_pattern
from .sim import RngStream, run_glauber, sample_stationary
from .torpid import build_instance, conductance_ratio, find_expander

log = logging.getLogger("hardcore_hfree")

TOOL = "hardcore-hfree"
EXIT_INVALID = 2
EXIT_CAP = 3


class ConfigError(ValueError):
    pass


def parse_lambda(text: str, rational: bool = True):
    """``"2"``, ``"1/2"``, ``"0.25"`` or ``"2^54"``; a Fraction when ``rational``, else a float."""
    text = text.strip()
    try:
        if "^" in text:
            base, exp = text.split("^")
            value = Fraction(int(base)) ** int(exp)
        else:
            value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad fugacity {text!r}") from exc
    if value <= 0:
        raise ConfigError("fugacity must be positive")
    if not rational:
        return float(value)
    return value.numerator if value.denominator == 1 else value


def parse_pins(text: str | None) -> dict[int, int]:
    pins: dict[int, int] = {}
    if not text:
        return pins
    for item in text.split(","):
        try:
            v, val = item.split("=")
            pins[int(v)] = int(val)
        except ValueError as exc:
            raise ConfigError(f"bad pin {item!r}, expected vertex=0 or vertex=1") from exc
    return pins


def _jsonable(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _config(args: argparse.Namespace) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func",)}


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, record: dict) -> None:
    doc = {"tool": TOOL, "version": __version__, "config": _config(args), **record}
    _emit(json.dumps(_jsonable(doc), sort_keys=True) + "\n", args.out)


def _emit_csv(args, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    buf = io.StringIO()
    buf.write(f"# tool={TOOL} version={__version__}\n")
    buf.write("# config=" + json.dumps(_jsonable(_config(args)), sort_keys=True) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(x) for x in row])
    _emit(buf.getvalue(), args.out)


def _cell(x) -> str:
    x = _jsonable(x)
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _load_graph(path: str):
    try:
        return read_edge_list(path)
    except FileNotFoundError as exc:
        raise ConfigError(f"graph file not found: {path}") from exc


# --- subcommands --------------------------------------------------------------

def cmd_gen(args) -> int:
    fam = args.family
    if fam == "path":
        G = path_graph(args.n)
    elif fam == "cycle":
        G = cycle_graph(args.n)
    elif fam == "complete":
        G = complete_graph(args.n)
    elif fam == "claw":
        G = named_pattern(args.pattern or "claw")
    elif fam == "subdivided-claw":
        G = gen_subdivided_claw(SubdividedClawSpec.parse(args.ijk))
    elif fam == "efree":
        G = gen_efree_block(args.rows, args.cols)
    elif fam == "skewstar":
        G = gen_skewstar_witness(args.path_len)
    elif fam == "cubic-bipartite":
        if args.seed is None:
            raise ConfigError("--seed is required for random generators")
        G = gen_random_cubic_bipartite(args.n, args.seed)
    elif fam == "torpid":
        if args.seed is None:
            raise ConfigError("--seed is required for random generators")
        base, _ = find_expander(args.n, args.seed, args.tries)
        G = build_instance(base, args.ell).stretched
    else:  # argparse restricts choices
        raise ConfigError(f"unknown family {fam}")
    _emit(format_edge_list(G), args.out)
    return 0


def cmd_exact(args) -> int:
    G = _load_graph(args.graph)
    lam = parse_lambda(args.lam, rational=args.rational)
    M = HardCoreModel(G, lam)
    record: dict = {"n": G.n, "m": G.num_edges, "max_degree": G.max_degree}
    record["Z"] = partition_function(M)
    record["marginals"] = marginals(M)
    n_states = len(independent_set_masks(G))
    record["num_independent_sets"] = n_states
    record["t_mix"] = exact_mixing_time(M) if 0 < n_states <= MIXING_STATE_CAP else None
    vertices = range(G.n) if args.vertex is None else [args.vertex]
    w1 = []
    for v in vertices:
        mu0 = pinned_distribution(M, {v: 0})
        mu1 = pinned_distribution(M, {v: 1})
        w1.append({"vertex": v, "w1": exact_w1_hamming(mu0, mu1), "tv": tv_distance(mu0, mu1)})
    record["w1"] = w1
    _emit_json(args, record)
    return 0


def cmd_sample(args) -> int:
    G = _load_graph(args.graph)
    lam = parse_lambda(args.lam, rational=False)
    M = HardCoreModel(G, lam)
    pins = parse_pins(args.pins)
    root = RngStream(args.seed)
    rows = []
    for r in range(args.replicas):
        rng = root.spawn(r)
        hist_path = ""
        if pins:
            final = sample_stationary(M, pins, args.steps, rng)
        else:
            summary = run_glauber(M, args.steps, rng)
            final = summary.final
            if args.histogram_dir:
                d = Path(args.histogram_dir)
                d.mkdir(parents=True, exist_ok=True)
                hist_path = str(d / f"replica_{r}.csv")
                lines = ["vertex,occupancy_fraction"]
                lines += [f"{v},{summary.occupancy_fraction[v]!r}" for v in range(G.n)]
                Path(hist_path).write_text("\n".join(lines) + "\n")
        rows.append([r, rng.seed, len(final), hist_path])
    _emit_csv(args, ["replica", "seed", "final_size", "histogram_path"], rows)
    return 0


def cmd_coupling(args) -> int:
    G = _load_graph(args.graph)
    if not 0 <= args.vertex < G.n:
        raise ConfigError(f"vertex {args.vertex} out of range")
    exact_mode = args.mode == "exact"
    lam = parse_lambda(args.lam, rational=exact_mode)
    M = HardCoreModel(G, lam)
    rng = RngStream(args.seed)
    stats = cluster_statistics(M, args.vertex, args.replicas, rng,
                               "exact" if exact_mode else "chain", args.burn_in)
    record = {
        "mean_cluster": stats.mean_size,
        "mean_cluster_stderr": stats.stderr,
        "max_cluster": stats.max_size,
        "max_layer": stats.max_layer_width,
        "layer_width_histogram": stats.layer_width_histogram,
    }
    if exact_mode:
        record["w1_upper"] = exact_cluster_size_mean(M, args.vertex)
        push = exact_coupling_pushforward(M, args.vertex)
        record["pushforward_tv"] = tv_distance(push, pinned_distribution(M, {args.vertex: 0}))
    else:
        record["w1_upper"] = stats.mean_size
        record["pushforward_tv"] = None
    _emit_json(args, record)
    return 0


def cmd_detect(args) -> int:
    G = _load_graph(args.graph)
    try:
        pattern = named_pattern(args.pattern)
    except ValueError as exc:
        raise ConfigError(f"bad pattern {args.pattern!r}") from exc
    emb = find_induced(G, pattern)
    record = {"found": emb is not None, "embedding": list(emb.mapping) if emb else []}
    _emit_json(args, record)
    return 0


def cmd_torpid(args) -> int:
    lams = [parse_lambda(x) for item in args.lam for x in item.split(",")]
    base, alpha = find_expander(args.n, args.seed, args.tries)
    inst = build_instance(base, args.ell, alpha=alpha)
    rows = []
    for lam in lams:
        rep = conductance_ratio(inst, lam)
        w = rep.weights
        rows.append([inst.n, inst.ell, alpha, lam, w.w_less, w.w_eq, w.w_greater,
                     float(rep.ratio), rep.bound, rep.log2_ratio, rep.log2_bound])
    header = ["n", "ell", "alpha", "lambda", "w_less", "w_eq", "w_greater", "ratio",
              "paper_bound", "log2_ratio", "log2_bound"]
    _emit_csv(args, header, rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=TOOL, description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, graph=True):
        if graph:
            p.add_argument("--graph", required=True, help="edge-list file")
        p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("gen", help="write a generated graph as an edge list")
    p.add_argument("--family", required=True,
                   choices=["path", "cycle", "complete", "claw", "subdivided-claw", "efree",
                            "skewstar", "cubic-bipartite", "torpid"])
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--pattern", help="named pattern for --family claw (claw, fork, e, skew_star)")
    p.add_argument("--ijk", default="1,1,1")
    p.add_argument("--rows", type=int, default=1)
    p.add_argument("--cols", type=int, default=1)
    p.add_argument("--path-len", type=int, default=2)
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--tries", type=int, default=200)
    p.add_argument("--seed", type=int)
    common(p, graph=False)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("exact", help="Z, marginals, mixing time and W1 by enumeration")
    common(p)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--rational", action="store_true", help="exact rational arithmetic")
    p.add_argument("--vertex", type=int, help="only report W1 for this vertex")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("sample", help="run Glauber dynamics replicas")
    common(p)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--pins", help="comma-separated vertex=value pins")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--replicas", type=int, default=1)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--histogram-dir", help="write per-replica occupancy fractions here")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("coupling", help="red/blue cluster coupling statistics")
    common(p)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--vertex", type=int, default=0)
    p.add_argument("--replicas", type=int, default=1000)
    p.add_argument("--mode", choices=["exact", "chain"], default="exact")
    p.add_argument("--burn-in", type=int)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_coupling)

    p = sub.add_parser("detect", help="search for an induced subdivided claw")
    common(p)
    p.add_argument("--pattern", required=True, help="claw, fork, e, skew_star or i,j,k")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("torpid", help="balance weights of a stretched expander")
    p.add_argument("--n", type=int, required=True, help="part size of the cubic base")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--lambda", dest="lam", action="append", required=True,
                   help="fugacity; repeat or comma-separate for several")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tries", type=int, default=200)
    common(p, graph=False)
    p.set_defaults(func=cmd_torpid)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        log.error("%s", exc)
        return EXIT_CAP
    except (ConfigError, GenerationError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
