"""Command-line entry point: one subcommand per pipeline stage, JSON files in and out.

Exit status: 0 success, 1 validation failure, 2 parse or usage error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any, Callable

from . import _io
from .bound import LOG_BASE, BoundInputs, gen_gap_bound, sample_complexity
from .coloring import (
    find_dhop_violation,
    greedy_dhop_unique,
    is_proper_khop,
    load_coloring,
    save_coloring,
)
from .errors import ComplexityError, LocalUIDError, ParseError, ValidationError
from .generators import bin_packing_ilp, erdos_renyi, erdos_renyi_avg_degree
from .graph import Graph, build_graph, load_graph, max_khop_degree, power_graph, save_graph
from .ilp import SCHEMES, LabeledBipartiteGraph, augment_features, encode_bipartite, load_features, load_ilp
from .local import color_priority_mis, dump_views, local_view_simulate, oracle_view
from .metrics import DEFAULT_BLOCK_CAP, load_solution, mse, top_m_error
from .mp import WL_MODES, build_config, distinguish, forward, forward_colorgnn, load_params, wl_hash, wl_tokens

FORMATS = f"""\
file formats (schema {_io.SCHEMA_VERSION}; every written file carries "schema"):
  graph     {{"num_nodes": int, "edges": [[u,v] | [u,v,w], ...], "node_labels": [[f,...],...]?}}
  coloring  {{"d": int, "num_colors": int, "colors": [int,...]}}
  ilp       {{"n": int, "m": int, "c": [f,...], "b": [f,...], "A": [[j,i,v],...], "integrality": [bool,...]?}}
  features  {{"scheme": str, "seed": int?, "dim": int, "features": [[f,...],...]}}
  params    {{"emb_tables": {{"<color>": [[f,...],...]}}, "merge": [{{"w1","b1","w2","b2"}},...]}}
  config    {{"depth": int, "in_dim": int, "hidden_dim": int, "out_dim": int}}
  wl report {{"rounds": int, "graph_hash": hex, "node_hashes": [hex,...]}}
  view dump {{"views": [{{"center","d","vertices": [[id,color,dist],...],"edges": [[u,v],...]}},...]}}
  solution  {{"y": [f,...], "yhat": [f,...], "orbits": [[i,...],...]?}}
"""


def _positive(name: str, value: int) -> None:
    if value < 1:
        raise ValidationError(f"--{name} must be >= 1, got {value}")


def _emit(args: argparse.Namespace, obj: dict, text: str | None = None) -> None:
    if args.json_stdout:
        sys.stdout.write(_io.dumps(obj))
    elif text is not None:
        print(text)


def _write(path: str | None, obj: dict) -> None:
    if path:
        _io.write_json(path, obj)


def _load_bipartite_or_graph(path: str) -> Graph | LabeledBipartiteGraph:
    raw = _io.read_json(path)
    g = build_graph(raw)
    meta = raw.get("bipartite") if isinstance(raw, dict) else None
    if isinstance(meta, dict):
        n = _io.as_int(meta.get("n"), "graph.bipartite.n")
        m = _io.as_int(meta.get("m"), "graph.bipartite.m")
        if n + m != g.num_nodes:
            raise ValidationError("graph.bipartite: n + m does not match num_nodes")
        return LabeledBipartiteGraph(g, n, m)
    return g


def cmd_color(args: argparse.Namespace) -> int:
    _positive("d", args.d)
    g = load_graph(args.graph)
    coloring, stats = greedy_dhop_unique(g, args.d)
    if args.out:
        save_coloring(coloring, args.out)
    summary = {k: v for k, v in stats.to_dict().items() if k != "build_time"}
    _write(args.stats, {**summary, "d": args.d, "schema": _io.SCHEMA_VERSION})
    print(f"build_time={stats.build_time:.3f}s", file=sys.stderr)
    _emit(
        args,
        coloring.to_dict(),
        f"num_colors={stats.num_colors} delta_2d={stats.delta_2d} bound={stats.bound} "
        f"within_bound={str(stats.within_bound).lower()}",
    )
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    _positive("d", args.d)
    g = load_graph(args.graph)
    c = load_coloring(args.coloring)
    if len(c) != g.num_nodes:
        raise ValidationError(f"coloring has {len(c)} entries for {g.num_nodes} nodes")
    bad = find_dhop_violation(g, c, args.d)
    proper = is_proper_khop(g, c, 2 * args.d)
    report: dict[str, Any] = {
        "d": args.d,
        "dhop_unique": bad is None,
        "proper_2d_hop": proper,
        "num_colors": c.num_colors,
        "bound": max_khop_degree(g, 2 * args.d) + 1,
    }
    if bad is not None:
        report["violation"] = {"center": bad.center, "nodes": [bad.first, bad.second], "color": bad.color}
    report["schema"] = _io.SCHEMA_VERSION
    _write(args.out, report)
    text = "ok: coloring is %d-hop unique" % args.d if bad is None else "FAIL: " + bad.describe(args.d)
    _emit(args, report, text)
    return 0 if bad is None else 1


def cmd_power(args: argparse.Namespace) -> int:
    _positive("k", args.k)
    g = load_graph(args.graph)
    gk = power_graph(g, args.k)
    if args.out:
        save_graph(gk, args.out)
    _emit(args, gk.to_dict(), f"num_nodes={gk.num_nodes} num_edges={gk.num_edges}")
    return 0


def cmd_encode(args: argparse.Namespace) -> int:
    ilp = load_ilp(args.ilp)
    bg = encode_bipartite(ilp)
    out = bg.underlying.to_dict()
    out = {**{k: v for k, v in out.items() if k != "schema"}, "bipartite": {"n": bg.n, "m": bg.m}, "schema": out["schema"]}
    _write(args.out, out)
    _emit(args, out, f"num_nodes={bg.num_nodes} num_edges={bg.underlying.num_edges} variables={bg.n} constraints={bg.m}")
    return 0


def cmd_augment(args: argparse.Namespace) -> int:
    if args.scheme == "uniform" and args.seed is None:
        raise ValidationError("--scheme uniform requires --seed")
    if args.scheme == "coloruid" and args.coloring is None:
        raise ValidationError("--scheme coloruid requires --coloring")
    g = _load_bipartite_or_graph(args.graph)
    coloring = load_coloring(args.coloring) if args.coloring else None
    fm = augment_features(g, args.scheme, coloring, args.seed)
    _write(args.out, fm.to_dict())
    _emit(args, fm.to_dict(), f"rows={fm.rows} dim={fm.dim} scheme={fm.scheme}")
    return 0


def cmd_forward(args: argparse.Namespace) -> int:
    if args.mode == "colorgnn" and not args.coloring:
        raise ValidationError("--mode colorgnn requires --coloring")
    g = load_graph(args.graph)
    feats = load_features(args.features)
    params = load_params(args.params)
    cfg = build_config(_io.read_json(args.config))
    if args.mode == "colorgnn":
        out = forward_colorgnn(g, load_coloring(args.coloring), feats, params, cfg)
    else:
        out = forward(g, feats, params, cfg)
    result = {"mode": args.mode, "outputs": out.tolist(), "schema": _io.SCHEMA_VERSION}
    _write(args.out, result)
    _emit(args, result, f"outputs: {out.shape[0]} x {out.shape[1]}")
    return 0


def cmd_wl(args: argparse.Namespace) -> int:
    if args.rounds < 0:
        raise ValidationError("--rounds must be >= 0")
    needs_coloring = args.mode in ("colored", "coloruid")
    if needs_coloring and args.coloring is None and args.d is None:
        raise ValidationError(f"--mode {args.mode} requires --coloring or --d")
    g = load_graph(args.graph)
    coloring = None
    if needs_coloring:
        coloring = load_coloring(args.coloring) if args.coloring else greedy_dhop_unique(g, args.d)[0]
    state = wl_hash(g, wl_tokens(g, args.mode, coloring), args.rounds)
    _write(args.out, state.to_dict())
    _emit(args, state.to_dict(), state.graph_hash.hex())
    return 0


def cmd_distinguish(args: argparse.Namespace) -> int:
    _positive("rounds", args.rounds)
    _positive("d", args.d)
    g1 = load_graph(args.graph1)
    g2 = load_graph(args.graph2)
    result = distinguish(g1, g2, args.scheme, args.d, args.rounds)
    obj = {"scheme": args.scheme, "d": args.d, "rounds": args.rounds, "distinguished": result, "schema": _io.SCHEMA_VERSION}
    _write(args.out, obj)
    _emit(args, obj, "true" if result else "false")
    return 0


def cmd_reconstruct(args: argparse.Namespace) -> int:
    _positive("d", args.d)
    g = load_graph(args.graph)
    c = load_coloring(args.coloring)
    views = local_view_simulate(g, c, args.d)
    mismatched = [v for v in range(g.num_nodes) if views[v] != oracle_view(g, v, args.d, c)]
    obj = dump_views(views)
    obj = {"views": obj["views"], "oracle_mismatches": mismatched, "schema": obj["schema"]}
    _write(args.out, obj)
    _emit(args, obj, f"views={len(views)} oracle_mismatches={len(mismatched)}")
    return 0 if not mismatched else 1


def cmd_mis(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    c = load_coloring(args.coloring)
    res = color_priority_mis(g, c)
    obj = {"nodes": sorted(res.nodes), "rounds": res.rounds, "schema": _io.SCHEMA_VERSION}
    _write(args.out, obj)
    _emit(args, obj, " ".join(map(str, sorted(res.nodes))))
    return 0


def cmd_topm(args: argparse.Namespace) -> int:
    if not 0 < args.m <= 100:
        raise ValidationError(f"--m must lie in (0, 100], got {args.m}")
    p = load_solution(args.solution)
    value = top_m_error(p, args.m, args.block_cap)
    obj = {"metric": "top_m_error", "m": args.m, "value": value, "schema": _io.SCHEMA_VERSION}
    _write(args.out, obj)
    _emit(args, obj, repr(value))
    return 0


def cmd_mse(args: argparse.Namespace) -> int:
    p = load_solution(args.solution)
    value = mse(p.y, p.yhat)
    obj = {"metric": "mse", "value": value, "schema": _io.SCHEMA_VERSION}
    _write(args.out, obj)
    _emit(args, obj, repr(value))
    return 0


def cmd_bound(args: argparse.Namespace) -> int:
    inp = BoundInputs(
        p=args.p,
        num_colors=args.colors,
        theta_emb=args.theta_emb,
        theta_merge=args.theta_merge,
        depth=args.depth,
        delta=args.delta,
        epsilon=args.epsilon,
        N=args.n,
    )
    if args.n is not None:
        key, value = "gen_gap_bound", gen_gap_bound(inp)
    else:
        key, value = "sample_complexity", sample_complexity(inp)
    obj = {key: value, "param_count": inp.param_count, "log_base": LOG_BASE, "schema": _io.SCHEMA_VERSION}
    _write(args.out, obj)
    _emit(args, obj, f"{value!r}\nlog base: {LOG_BASE}")
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    if args.kind == "er":
        if args.n is None or (args.p is None) == (args.avg_degree is None):
            raise ValidationError("--kind er needs --n and exactly one of --p / --avg-degree")
        if args.p is not None:
            g = erdos_renyi(args.n, args.p, args.seed)
        else:
            g = erdos_renyi_avg_degree(args.n, args.avg_degree, args.seed)
        obj = g.to_dict()
        text = f"num_nodes={g.num_nodes} num_edges={g.num_edges}"
    else:
        _positive("items", args.items)
        _positive("bins", args.bins)
        ilp = bin_packing_ilp(args.items, args.bins, args.seed, args.capacity)
        obj = ilp.to_dict()
        text = f"n={ilp.n} m={ilp.m} nnz={ilp.nnz}"
    if args.out:
        _io.write_json(args.out, obj)
    _emit(args, obj, text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="localuid",
        description="d-hop unique coloring, ILP encoding, message passing and verification tools.",
        epilog=FORMATS,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, func: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, description=help, epilog=FORMATS, formatter_class=argparse.RawDescriptionHelpFormatter)
        p.add_argument("--out", help="output file")
        p.add_argument("--json-stdout", action="store_true", help="also print the primary output as JSON")
        p.set_defaults(func=func)
        return p

    p = add("color", cmd_color, "greedy d-hop unique coloring")
    p.add_argument("--graph", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--stats", help="write coloring statistics here")

    p = add("verify", cmd_verify, "check that a coloring is d-hop unique")
    p.add_argument("--graph", required=True)
    p.add_argument("--coloring", required=True)
    p.add_argument("--d", type=int, required=True)

    p = add("power", cmd_power, "k-th power graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("encode", cmd_encode, "ILP to labeled bipartite graph")
    p.add_argument("--ilp", required=True)

    p = add("augment", cmd_augment, "node features with a UID channel")
    p.add_argument("--graph", required=True)
    p.add_argument("--scheme", choices=SCHEMES, required=True)
    p.add_argument("--coloring")
    p.add_argument("--seed", type=int)

    p = add("forward", cmd_forward, "numeric message-passing forward pass")
    p.add_argument("--graph", required=True)
    p.add_argument("--features", required=True)
    p.add_argument("--params", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--mode", choices=("anonymous", "colorgnn"), default="anonymous")
    p.add_argument("--coloring")

    p = add("wl", cmd_wl, "WL-style refinement hash")
    p.add_argument("--graph", required=True)
    p.add_argument("--mode", choices=WL_MODES, required=True)
    p.add_argument("--rounds", type=int, required=True)
    p.add_argument("--coloring")
    p.add_argument("--d", type=int, help="build a greedy coloring when --coloring is absent")

    p = add("distinguish", cmd_distinguish, "can refinement separate two graphs")
    p.add_argument("--graph1", required=True)
    p.add_argument("--graph2", required=True)
    p.add_argument("--scheme", choices=("anonymous", "local_uid"), required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--rounds", type=int, required=True)

    p = add("reconstruct", cmd_reconstruct, "simulate d LOCAL rounds and diff against the oracle")
    p.add_argument("--graph", required=True)
    p.add_argument("--coloring", required=True)
    p.add_argument("--d", type=int, required=True)

    p = add("mis", cmd_mis, "color-priority maximal independent set")
    p.add_argument("--graph", required=True)
    p.add_argument("--coloring", required=True)

    p = add("topm", cmd_topm, "Top-m%% error")
    p.add_argument("--solution", required=True)
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--block-cap", type=int, default=DEFAULT_BLOCK_CAP)

    p = add("mse", cmd_mse, "mean squared error")
    p.add_argument("--solution", required=True)

    p = add("bound", cmd_bound, "generalization gap bound or sample complexity")
    p.add_argument("--p", type=int, required=True, help="bits of precision per parameter")
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--theta-emb", type=int, required=True)
    p.add_argument("--theta-merge", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--n", type=int, help="sample count: report the gap bound")
    which.add_argument("--epsilon", type=float, help="target gap: report the sample count")

    p = add("gen", cmd_gen, "seeded synthetic instance")
    p.add_argument("--kind", choices=("er", "bpp"), required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--avg-degree", type=float)
    p.add_argument("--items", type=int, default=20)
    p.add_argument("--bins", type=int, default=20)
    p.add_argument("--capacity", type=int, default=100)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (ValidationError, ComplexityError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 1
    except LocalUIDError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
