"""Command-line front end: subcommands, versioned JSON reports, exit codes.

Exit codes: 0 completed, 1 usage/precondition error, 2 enumeration budget
exceeded, 3 a campaign or audit produced a COUNTEREXAMPLE verdict.

Reports are canonical JSON (schema 1): keys sorted, rationals as "p/q"
strings, and no timing fields, so identical configurations (including seeds)
produce byte-identical bytes.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from typing import Optional

from .core import Budgets, FactorLabError, FormatError, PreconditionError, ScaleExceeded, fmt_rational, parse_rational
from .factors import (
    DegreeSpec,
    check_gf_criterion,
    check_near_f_criterion,
    check_one_f_factor,
    check_one_factor,
    find_f_factor,
    find_gf_factor,
    find_near_f_factor,
    validate_certificate,
)
from .graphs import MultiGraph, VertexFn, emit_graph, parse_graph
from .independent import caro_wei, greedy_color_classes, greedy_weighted_independent, surplus_independent
from .resilience import check_iso_tough, check_strong_tough, iso_toughness, strong_toughness, toughness
from .theorems import audit, campaign, parse_theorem_spec, registry_ids
from .treeconn import (
    PartitionCertificate,
    TreePacking,
    connected_24_factor,
    mtc_components,
    spanning_eulerian,
    tree_packing,
)

SCHEMA = 1

_BUDGET_FLAGS = {
    "--budget-subset-n": "subset_n_cap",
    "--budget-pair-n": "pair_n_cap",
    "--budget-indep": "indep_budget",
    "--budget-cycle-dim": "cycle_dim_cap",
    "--budget-search": "search_budget",
    "--budget-mtc-union": "mtc_union_budget",
}


def _budgets_from(args) -> Budgets:
    """Env-var overrides first, explicit flags last."""
    base = Budgets.from_env()
    overrides = {}
    for flag, field in _BUDGET_FLAGS.items():
        val = getattr(args, flag.lstrip("-").replace("-", "_"), None)
        if val is not None:
            overrides[field] = val
    return dataclasses.replace(base, **overrides) if overrides else base


@dataclass(frozen=True)
class RunConfig:
    """One parsed invocation: subcommand, inputs, modes, budgets, seed, out."""

    subcommand: str
    args: argparse.Namespace
    budgets: Budgets
    seed: Optional[int]
    out: Optional[str]


def _report(config: RunConfig, result: dict) -> dict:
    return {
        "schema": SCHEMA,
        "subcommand": config.subcommand,
        "seed": config.seed,
        "result": result,
    }


def _emit(config: RunConfig, payload: dict) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_graph(args) -> MultiGraph:
    path = args.input
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path) as fh:
            text = fh.read()
    fmt = getattr(args, "format", None) or ("graph6" if path.endswith(".g6") else "edgelist")
    return parse_graph(text, fmt)


def _load_fn(g: MultiGraph, const: Optional[str], path: Optional[str], name: str) -> VertexFn:
    if const is not None and path is not None:
        raise PreconditionError(f"give either --{name}-const or --{name}-file, not both")
    if const is not None:
        return VertexFn.constant(g.n, parse_rational(const))
    if path is not None:
        with open(path) as fh:
            return VertexFn.from_lines(fh.read(), g.n)
    raise PreconditionError(f"missing --{name}-const or --{name}-file")


def _add_graph_arg(sub) -> None:
    sub.add_argument("--input", required=True, help="graph file (edgelist or graph6), or - for stdin")
    sub.add_argument("--format", choices=["edgelist", "graph6"], default=None)


def _add_fn_args(sub, name: str) -> None:
    sub.add_argument(f"--{name}-const", default=None, help=f"constant value for {name}")
    sub.add_argument(f"--{name}-file", default=None, help=f"per-vertex file for {name}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="factorlab")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    common.add_argument("--seed", type=int, default=None, help="seed; mandatory for randomized modes")
    common.add_argument("--jobs", type=int, default=1, help="parallel workers (campaign only)")
    for flag, field in _BUDGET_FLAGS.items():
        common.add_argument(flag, type=int, default=None, help=f"override budget {field}")
    sp = ap.add_subparsers(dest="subcommand", required=True)

    def sub(name: str, help: str) -> argparse.ArgumentParser:
        return sp.add_parser(name, parents=[common], help=help)

    t = sub("toughness", "exact or falsification-mode toughness")
    _add_graph_arg(t)
    t.add_argument("--mode", choices=["exact", "falsify"], default="exact")
    t.add_argument("--samples", type=int, default=100_000)

    t = sub("iso", "isolated toughness: exact value, falsify, or a t-check")
    _add_graph_arg(t)
    t.add_argument("--mode", choices=["exact", "falsify", "check"], default="exact")
    t.add_argument("--samples", type=int, default=100_000)
    _add_fn_args(t, "t")

    t = sub("strong", "m-strong toughness value or a t-check")
    _add_graph_arg(t)
    t.add_argument("--m", type=int, required=True)
    t.add_argument("--mode", choices=["exact", "check"], default="exact")
    t.add_argument("--t-const", default=None)

    t = sub("indep", "greedy weighted independent set and Caro-Wei bound")
    _add_graph_arg(t)
    _add_fn_args(t, "phi")
    _add_fn_args(t, "d")
    t.add_argument("--color-k", type=int, default=None, help="also greedy-color into k classes")

    t = sub("criterion", "factor-existence criteria")
    _add_graph_arg(t)
    t.add_argument("--kind", choices=["tutte", "lovasz", "one-factor", "vergnas"], required=True)
    _add_fn_args(t, "f")
    _add_fn_args(t, "g")

    t = sub("factor", "constructive factor finders")
    _add_graph_arg(t)
    t.add_argument("--kind", choices=["f", "near", "gf"], required=True)
    _add_fn_args(t, "f")
    _add_fn_args(t, "g")
    t.add_argument("--forced-vertex", type=int, default=None)
    t.add_argument("--emit-factor", default=None, help="write the found factor as an edgelist")

    t = sub("treepack", "m edge-disjoint spanning trees or a refuting partition")
    _add_graph_arg(t)
    t.add_argument("--m", type=int, required=True)

    t = sub("mtc", "m-tree-connected components and Omega_m")
    _add_graph_arg(t)
    t.add_argument("--m", type=int, required=True)

    t = sub("eulerian", "spanning Eulerian subgraph")
    _add_graph_arg(t)
    t.add_argument("--mode", choices=["construct", "exhaustive"], default="construct")

    t = sub("factor24", "connected {2,4}-factor")
    _add_graph_arg(t)
    t.add_argument("--mode", choices=["construct", "exhaustive"], default="construct")

    t = sub("audit", "audit one theorem on one graph")
    _add_graph_arg(t)
    t.add_argument("--theorem", required=True, help="e.g. T-A:r=2")

    t = sub("campaign", "audit theorems over a corpus")
    t.add_argument("--corpus", required=True,
                   help="all_connected:N | gnp:N:P:COUNT | regular:N:D:COUNT | named:... | g6file:PATH")
    t.add_argument("--theorems", action="append", required=True,
                   help="theorem spec like T-A:r=2 (repeatable)")
    t.add_argument("--dump-cases", action="store_true", help="include every case report")

    t = sub("gen", "graph generators")
    t.add_argument("--family", required=True,
                   choices=["petersen", "blowup", "lowerbound", "gnp", "regular", "all-connected"])
    t.add_argument("--r", type=int, default=1)
    t.add_argument("--h", type=int, default=2)
    t.add_argument("--n", type=int, default=1)
    t.add_argument("--p", default="1/2")
    t.add_argument("--d", type=int, default=3)
    t.add_argument("--count", type=int, default=1)
    t.add_argument("--graph-out", default=None, help="write the graph as an edgelist here")

    sub("registry", "list registry theorem ids")
    return ap


def _cmd_toughness(config: RunConfig) -> dict:
    g = _load_graph(config.args)
    rep = toughness(g, config.args.mode, config.budgets, config.seed, config.args.samples)
    return rep.to_json()


def _cmd_iso(config: RunConfig) -> dict:
    args = config.args
    g = _load_graph(args)
    if args.mode == "check":
        t = _load_fn(g, args.t_const, args.t_file, "t")
        witness = check_iso_tough(g, t, config.budgets)
        return {"ok": witness is None, "witness": witness.to_json() if witness else None}
    rep = iso_toughness(g, args.mode, config.budgets, config.seed, args.samples)
    return rep.to_json()


def _cmd_strong(config: RunConfig) -> dict:
    args = config.args
    g = _load_graph(args)
    if args.mode == "check":
        if args.t_const is None:
            raise PreconditionError("strong check needs --t-const")
        witness = check_strong_tough(g, args.m, parse_rational(args.t_const), config.budgets)
        return {"ok": witness is None, "witness": witness.to_json() if witness else None}
    return strong_toughness(g, args.m, config.budgets).to_json()


def _cmd_indep(config: RunConfig) -> dict:
    args = config.args
    g = _load_graph(args)
    phi = (
        _load_fn(g, args.phi_const, args.phi_file, "phi")
        if (args.phi_const is not None or args.phi_file is not None)
        else VertexFn.constant(g.n, 1)
    )
    if args.d_const is not None or args.d_file is not None:
        d = _load_fn(g, args.d_const, args.d_file, "d")
        rep = surplus_independent(g, phi, d)
    else:
        rep = greedy_weighted_independent(g, phi)
    out = rep.to_json()
    out["caro_wei"] = fmt_rational(caro_wei(g))
    if args.color_k is not None:
        classes = greedy_color_classes(g, args.color_k)
        out["color_classes"] = [sorted(c) for c in classes]
    return out


def _cmd_criterion(config: RunConfig) -> dict:
    args = config.args
    g = _load_graph(args)
    kind = args.kind
    if kind == "one-factor":
        witness = check_one_factor(g, config.budgets)
    elif kind == "tutte":
        f = _load_fn(g, args.f_const, args.f_file, "f")
        witness = check_near_f_criterion(g, f, config.budgets)
    elif kind == "vergnas":
        f = _load_fn(g, args.f_const, args.f_file, "f")
        witness = check_one_f_factor(g, f, config.budgets)
    else:
        f = _load_fn(g, args.f_const, args.f_file, "f")
        g_fn = _load_fn(g, args.g_const, args.g_file, "g")
        witness = check_gf_criterion(g, g_fn, f, config.budgets)
    return {"kind": kind, "ok": witness is None, "witness": witness.to_json() if witness else None}


def _cmd_factor(config: RunConfig) -> dict:
    args = config.args
    g = _load_graph(args)
    f = _load_fn(g, args.f_const, args.f_file, "f")
    if args.kind == "f":
        cert = find_f_factor(g, f)
        spec = DegreeSpec(f, f, "exact_f")
    elif args.kind == "near":
        cert = find_near_f_factor(g, f, args.forced_vertex)
        spec = DegreeSpec(f, f, "near_f", args.forced_vertex)
    else:
        g_fn = _load_fn(g, args.g_const, args.g_file, "g")
        cert = find_gf_factor(g, g_fn, f)
        spec = DegreeSpec(g_fn, f, "range_gf")
    if cert is not None:
        validate_certificate(g, cert, spec)
        if args.emit_factor:
            sub = MultiGraph(g.n, [g.edges[e] for e in cert.edge_ids])
            with open(args.emit_factor, "w") as fh:
                fh.write(emit_graph(sub, "edgelist"))
    return {"kind": args.kind, "found": cert is not None,
            "certificate": cert.to_json() if cert else None}


def _cmd_treepack(config: RunConfig) -> dict:
    g = _load_graph(config.args)
    res = tree_packing(g, config.args.m)
    if isinstance(res, TreePacking):
        return {"packed": True, "packing": res.to_json()}
    assert isinstance(res, PartitionCertificate)
    return {"packed": False, "certificate": res.to_json()}


def _cmd_mtc(config: RunConfig) -> dict:
    g = _load_graph(config.args)
    return mtc_components(g, config.args.m, config.budgets).to_json()


def _cmd_eulerian(config: RunConfig) -> dict:
    g = _load_graph(config.args)
    cert = spanning_eulerian(g, config.args.mode, config.budgets)
    return {"mode": config.args.mode, "found": cert is not None,
            "certificate": cert.to_json() if cert else None}


def _cmd_factor24(config: RunConfig) -> dict:
    g = _load_graph(config.args)
    cert = connected_24_factor(g, config.args.mode, config.budgets)
    return {"mode": config.args.mode, "found": cert is not None,
            "certificate": cert.to_json() if cert else None}


def _cmd_audit(config: RunConfig) -> tuple[dict, int]:
    g = _load_graph(config.args)
    tid, params = parse_theorem_spec(config.args.theorem)
    report = audit(g, tid, params, config.budgets, graph_id=config.args.input)
    code = 3 if report.verdict == "COUNTEREXAMPLE" else 0
    return report.to_json(), code


def _cmd_campaign(config: RunConfig) -> tuple[dict, int]:
    from .constructions import corpus as make_corpus

    args = config.args
    spec = args.corpus
    if (spec.startswith("gnp") or spec.startswith("regular")) and config.seed is None:
        raise PreconditionError("random corpora require --seed")
    summary, reports = campaign(
        make_corpus(spec, config.seed), args.theorems, config.budgets, jobs=args.jobs,
    )
    out = {
        "corpus": spec,
        "theorems": args.theorems,
        "summary": summary.to_json(),
    }
    if args.dump_cases:
        out["cases"] = [r.to_json() for r in reports]
    code = 3 if summary.total("COUNTEREXAMPLE") else 0
    return out, code


def _cmd_gen(config: RunConfig) -> dict:
    from .constructions import all_connected, clique_blowup, gnp as gen_gnp
    from .constructions import lowerbound_family, petersen, random_regular

    args = config.args
    meta: dict = {}
    if args.family == "petersen":
        graphs = [petersen()]
    elif args.family == "blowup":
        g, cmap = clique_blowup(petersen(), args.h)
        graphs = [g]
        meta["clique_map"] = [list(c) for c in cmap]
    elif args.family == "lowerbound":
        g, spec = lowerbound_family(args.r, args.h, args.n)
        graphs = [g]
        meta = spec.to_json()
    elif args.family == "gnp":
        if config.seed is None:
            raise PreconditionError("gnp generation requires --seed")
        graphs = list(gen_gnp(args.n, parse_rational(args.p), args.count, config.seed))
    elif args.family == "regular":
        if config.seed is None:
            raise PreconditionError("regular generation requires --seed")
        graphs = list(random_regular(args.n, args.d, args.count, config.seed))
    else:
        graphs = all_connected(args.n)
    if args.graph_out:
        with open(args.graph_out, "w") as fh:
            if len(graphs) == 1:
                fh.write(emit_graph(graphs[0], "edgelist"))
            else:
                # multiple graphs: one graph6 line each (g6file corpus format)
                for g in graphs:
                    fh.write(emit_graph(g, "graph6") + "\n")
        if meta:
            with open(args.graph_out + ".meta.json", "w") as fh:
                json.dump(meta, fh, sort_keys=True, indent=2)
    return {
        "family": args.family,
        "graphs": len(graphs),
        "vertices": [g.n for g in graphs[:32]],
        "edges": [len(g.edges) for g in graphs[:32]],
        "metadata": meta or None,
    }


_HANDLERS = {
    "toughness": _cmd_toughness,
    "iso": _cmd_iso,
    "strong": _cmd_strong,
    "indep": _cmd_indep,
    "criterion": _cmd_criterion,
    "factor": _cmd_factor,
    "treepack": _cmd_treepack,
    "mtc": _cmd_mtc,
    "eulerian": _cmd_eulerian,
    "factor24": _cmd_factor24,
    "gen": _cmd_gen,
}


def run(argv: list[str]) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    config = RunConfig(
        subcommand=args.subcommand,
        args=args,
        budgets=_budgets_from(args),
        seed=getattr(args, "seed", None),
        out=getattr(args, "out", None),
    )
    try:
        if args.subcommand == "registry":
            _emit(config, _report(config, {"theorems": registry_ids()}))
            return 0
        if args.subcommand == "audit":
            result, code = _cmd_audit(config)
        elif args.subcommand == "campaign":
            result, code = _cmd_campaign(config)
        else:
            result, code = _HANDLERS[args.subcommand](config), 0
        _emit(config, _report(config, result))
        return code
    except ScaleExceeded as exc:
        print(f"scale exceeded: {exc}", file=sys.stderr)
        return 2
    except (FormatError, PreconditionError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FactorLabError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))
