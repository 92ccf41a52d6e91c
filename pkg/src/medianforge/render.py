"""DOT export.  Presentation only; JSON is the machine-readable surface."""
from __future__ import annotations

from typing import Sequence

from .graph_core import FiniteGraph
from .median_geometry import Hyperplane
from .treeify import SpanningTree

_PALETTE = (
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a",
    "#66a61e", "#e6ab02", "#a6761d", "#666666",
)


def _quote(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def graph_to_dot(
    g: FiniteGraph,
    hyperplane_classes: Sequence[Hyperplane] | None = None,
    tree: SpanningTree | None = None,
    name: str = "G",
) -> str:
    """Render a graph; optionally colour edges by hyperplane class and
    overlay spanning-tree edges in bold."""
    colour_of: dict[tuple[str, str], str] = {}
    if hyperplane_classes is not None:
        for i, h in enumerate(hyperplane_classes):
            for e in h.edges:
                colour_of[e] = _PALETTE[i % len(_PALETTE)]
    tree_edges = set(tree.edges) if tree is not None else set()
    lines = [f"graph {_quote(name)} {{", "  node [shape=ellipse, fontsize=10];"]
    for v in g.vertices:
        lines.append(f"  {_quote(v)};")
    for e in g.edges:
        u, v = e
        attrs = []
        if e in colour_of:
            attrs.append(f'color="{colour_of[e]}"')
        if e in tree_edges:
            attrs.append("penwidth=3")
            attrs.append(f'label="{tree.stage_of[e]}"')
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_quote(u)} -- {_quote(v)}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"
