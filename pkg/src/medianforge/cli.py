"""Command-line front end for the cuts-to-spanning-tree pipeline.

Inputs are edge-list files or generator specs with a truncation radius.
Every command emits one JSON document (schema ``medianforge/1``), printed to
stdout or written byte-identically with ``--json``.  Exit codes: 0 success,
2 input or validation problem, 3 budget exhausted, 4 internal invariant
violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .errors import BudgetExceeded, InternalInvariantError, ValidationError
from .cuts_pocset import (
    density_criterion,
    enumerate_cuts,
    pocset_to_json,
    separation_profile,
)
from .dual_median import build_dual, dual_to_json
from .ends_lab import end_estimate, make_generator, truncate
from .graph_core import FiniteGraph, parse_graph
from .median_geometry import (
    check_median,
    hyperplanes,
    hyperplanes_to_json,
    roundtrip,
)
from .render import graph_to_dot
from .treeify import (
    canonical_spanning_tree,
    colouring_to_json,
    tree_to_json,
    verify_spanning_tree,
)

SCHEMA = "medianforge/1"

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_BUDGET = 3
EXIT_INVARIANT = 4


@dataclass
class RunConfig:
    command: str
    input_path: str | None
    gen_spec: str | None
    truncate_radius: int | None
    radius: int | None
    order: str
    json_path: str | None
    dot_path: str | None
    budget_subsets: int
    budget_orientations: int


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        input_path=getattr(args, "input", None),
        gen_spec=getattr(args, "gen", None),
        truncate_radius=getattr(args, "truncate", None),
        radius=getattr(args, "radius", None),
        order=getattr(args, "order", "input"),
        json_path=getattr(args, "json", None),
        dot_path=getattr(args, "dot", None),
        budget_subsets=getattr(args, "budget_subsets", 10**6),
        budget_orientations=getattr(args, "budget_orientations", 10**5),
    )


def _load_graph(cfg: RunConfig) -> tuple[FiniteGraph, dict]:
    if (cfg.input_path is None) == (cfg.gen_spec is None):
        raise ValidationError("provide exactly one input: a file or --gen")
    if cfg.gen_spec is not None:
        if cfg.truncate_radius is None:
            raise ValidationError("--gen needs --truncate")
        gen = make_generator(cfg.gen_spec)
        trunc = truncate(gen, cfg.truncate_radius)
        g = trunc.graph
        source = {
            "kind": "generator",
            "spec": cfg.gen_spec,
            "truncate": cfg.truncate_radius,
        }
    else:
        try:
            with open(cfg.input_path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ValidationError(f"cannot read {cfg.input_path}: {exc}") from exc
        g = parse_graph(text)
        source = {"kind": "file", "path": cfg.input_path}
    if cfg.order == "lex":
        verts = sorted(g.vertices)
        order = {v: i for i, v in enumerate(verts)}
        edges = sorted(
            ((u, v) if order[u] < order[v] else (v, u) for u, v in g.edges)
        )
        g = FiniteGraph(verts, edges)
    source["order"] = cfg.order
    return g, source


def _graph_json(g: FiniteGraph) -> dict:
    return {"vertices": list(g.vertices), "edges": [list(e) for e in g.edges]}


def _emit(cfg: RunConfig, doc: dict) -> None:
    doc = {"schema": SCHEMA, "command": cfg.command, **doc}
    payload = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if cfg.json_path:
        with open(cfg.json_path, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _emit_dot(cfg: RunConfig, dot_text: str) -> None:
    if cfg.dot_path:
        with open(cfg.dot_path, "w", encoding="utf-8") as fh:
            fh.write(dot_text)


def _require_radius(cfg: RunConfig) -> int:
    if cfg.radius is None:
        raise ValidationError(f"{cfg.command} needs --radius")
    return cfg.radius


def cmd_cuts(cfg: RunConfig) -> None:
    g, source = _load_graph(cfg)
    p = enumerate_cuts(g, _require_radius(cfg), budget=cfg.budget_subsets)
    doc = {
        "input": source,
        "radius": cfg.radius,
        "graph": _graph_json(g),
        "pocset": pocset_to_json(p),
        "stats": {
            "vertices": len(g.vertices),
            "edges": len(g.edges),
            "nontrivial_members": len(p.nontrivial()),
            "pairs": len(p.pairs()),
        },
    }
    _emit(cfg, doc)
    _emit_dot(cfg, graph_to_dot(g))


def cmd_pipeline(cfg: RunConfig) -> None:
    g, source = _load_graph(cfg)
    stage = "cuts"
    try:
        p = enumerate_cuts(g, _require_radius(cfg), budget=cfg.budget_subsets)
        stage = "dual"
        dual = build_dual(p, budget=cfg.budget_orientations)
        stage = "median-check"
        cert = check_median(dual.graph)
        if not cert.verdict:
            raise InternalInvariantError(
                f"dual failed the median check at {cert.counterexample}"
            )
        stage = "hyperplanes"
        hps = hyperplanes(dual.graph)
        stage = "spanning-tree"
        tree = canonical_spanning_tree(dual.graph)
        stage = "verify"
        problems = verify_spanning_tree(dual.graph, tree)
        if problems:
            raise InternalInvariantError("; ".join(problems))
    except (ValidationError, BudgetExceeded, InternalInvariantError) as exc:
        exc.args = (f"[stage {stage}] {exc}",)
        raise
    doc = {
        "input": source,
        "radius": cfg.radius,
        "graph": _graph_json(g),
        "pocset": pocset_to_json(p),
        "dual": dual_to_json(dual),
        "hyperplanes": hyperplanes_to_json(dual.graph, hps),
        "colouring": colouring_to_json(tree.colours),
        "spanning_tree": tree_to_json(tree),
        "stats": {
            "vertices": len(g.vertices),
            "edges": len(g.edges),
            "pairs": len(p.pairs()),
            "dual_vertices": len(dual.graph.vertices),
            "dual_edges": len(dual.graph.edges),
            "hyperplanes": len(hps),
            "colours": len(tree.colours.classes),
            "tree_edges": len(tree.edges),
        },
    }
    _emit(cfg, doc)
    _emit_dot(
        cfg,
        graph_to_dot(dual.graph, hyperplane_classes=hps, tree=tree, name="dual"),
    )


def cmd_check_median(cfg: RunConfig) -> None:
    g, source = _load_graph(cfg)
    cert = check_median(g)
    doc = {
        "input": source,
        "graph": _graph_json(g),
        "median": cert.verdict,
        "counterexample": list(cert.counterexample) if cert.counterexample else None,
        "intersection": sorted(cert.intersection) if cert.intersection else None,
    }
    _emit(cfg, doc)
    _emit_dot(cfg, graph_to_dot(g))


def cmd_hyperplanes(cfg: RunConfig) -> None:
    g, source = _load_graph(cfg)
    hps = hyperplanes(g)
    doc = {
        "input": source,
        "graph": _graph_json(g),
        "hyperplanes": hyperplanes_to_json(g, hps),
        "stats": {"hyperplanes": len(hps)},
    }
    _emit(cfg, doc)
    _emit_dot(cfg, graph_to_dot(g, hyperplane_classes=hps))


def cmd_tree(cfg: RunConfig) -> None:
    g, source = _load_graph(cfg)
    tree = canonical_spanning_tree(g)
    problems = verify_spanning_tree(g, tree)
    if problems:
        raise InternalInvariantError("; ".join(problems))
    doc = {
        "input": source,
        "graph": _graph_json(g),
        "colouring": colouring_to_json(tree.colours),
        "spanning_tree": tree_to_json(tree),
    }
    _emit(cfg, doc)
    _emit_dot(cfg, graph_to_dot(g, tree=tree))


def cmd_roundtrip(cfg: RunConfig) -> None:
    g, source = _load_graph(cfg)
    result = roundtrip(g)
    doc = {
        "input": source,
        "graph": _graph_json(g),
        "pairing": {x: result.vertex_to_orientation[x] for x in g.vertices},
        "dual": dual_to_json(result.dual),
    }
    _emit(cfg, doc)


def cmd_density(cfg: RunConfig) -> None:
    g, source = _load_graph(cfg)
    p = enumerate_cuts(g, _require_radius(cfg), budget=cfg.budget_subsets)
    report = density_criterion(p)
    profile = separation_profile(p)
    doc = {
        "input": source,
        "radius": cfg.radius,
        "density": {
            "max_block_size": report.max_block_size,
            "max_successor_count": report.max_successor_count,
            "block_sizes": sorted(report.block_sizes),
        },
        "separation": {
            "max_pair_count": profile.max_pair_count,
            "max_incidence": profile.max_incidence,
        },
    }
    _emit(cfg, doc)


def cmd_ends(cfg: RunConfig) -> None:
    if cfg.gen_spec is None or cfg.truncate_radius is None:
        raise ValidationError("ends needs --gen and --truncate")
    gen = make_generator(cfg.gen_spec)
    trunc = truncate(gen, cfg.truncate_radius)
    r = cfg.radius if cfg.radius is not None else min(2, trunc.R - 1)
    estimate = end_estimate(trunc, r)
    doc = {
        "input": {
            "kind": "generator",
            "spec": cfg.gen_spec,
            "truncate": cfg.truncate_radius,
        },
        "inner_radius": r,
        "end_estimate": estimate,
        "stats": {
            "vertices": len(trunc.graph.vertices),
            "frontier": len(trunc.frontier),
        },
    }
    _emit(cfg, doc)
    _emit_dot(cfg, graph_to_dot(trunc.graph))


def cmd_dot(cfg: RunConfig) -> None:
    g, source = _load_graph(cfg)
    if not cfg.dot_path:
        raise ValidationError("dot needs --dot PATH")
    _emit_dot(cfg, graph_to_dot(g))
    _emit(cfg, {"input": source, "written": cfg.dot_path})


COMMANDS = {
    "cuts": cmd_cuts,
    "pipeline": cmd_pipeline,
    "check-median": cmd_check_median,
    "hyperplanes": cmd_hyperplanes,
    "tree": cmd_tree,
    "roundtrip": cmd_roundtrip,
    "density": cmd_density,
    "ends": cmd_ends,
    "dot": cmd_dot,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="medianforge",
        description="Cuts, dual median graphs, and canonical spanning trees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("input", nargs="?", help="edge-list file")
        sp.add_argument("--gen", help="generator spec, e.g. ladder or regular_tree:3")
        sp.add_argument("--truncate", type=int, help="truncation radius for --gen")
        sp.add_argument("--radius", type=int, help="cut boundary diameter bound")
        sp.add_argument("--order", choices=("input", "lex"), default="input")
        sp.add_argument("--json", help="write the JSON document to this path")
        sp.add_argument("--dot", help="write a DOT rendering to this path")
        sp.add_argument("--budget-subsets", type=int, default=10**6, dest="budget_subsets")
        sp.add_argument(
            "--budget-orientations", type=int, default=10**5, dest="budget_orientations"
        )
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    cfg = _config(args)
    try:
        COMMANDS[cfg.command](cfg)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InternalInvariantError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
