"""Canonical spanning trees of median graphs by nested colour classes.

Hyperplane pairs whose boundaries intersect get different colours, so each
colour class is a nested family.  Processing colours in order, every block of
the not-yet-processed classes is subdivided by the current colour into a tree
of sub-blocks, and one least edge is picked per (block, separating pair).
The resulting edge set is a spanning tree, and the choice depends only on the
graph's vertex and edge order.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InternalInvariantError, NestednessViolation, ValidationError
from .graph_core import FiniteGraph
from .median_geometry import Hyperplane, hyperplanes, require_median


@dataclass(frozen=True)
class IntersectionGraph:
    """Graph on hyperplane pairs; adjacency is boundary intersection."""

    hyperplanes: tuple[Hyperplane, ...]
    boundaries: tuple[frozenset[str], ...]
    adjacency: tuple[tuple[int, ...], ...]


def hyperplane_intersection_graph(g: FiniteGraph) -> IntersectionGraph:
    """Nodes are complement pairs of convex half-spaces, edges meet boundaries.

    Non-nested pairs always meet, so any proper colouring of this graph has
    nested colour classes.
    """
    require_median(g)
    hps = hyperplanes(g)
    bnds = tuple(h.vertex_boundary(g) for h in hps)
    adjacency = []
    for i in range(len(hps)):
        row = tuple(
            j for j in range(len(hps)) if j != i and bnds[i] & bnds[j]
        )
        adjacency.append(row)
    return IntersectionGraph(hyperplanes=hps, boundaries=bnds, adjacency=tuple(adjacency))


@dataclass(frozen=True)
class ColourClasses:
    """First-fit colouring of the intersection graph into nested classes."""

    hyperplanes: tuple[Hyperplane, ...]
    classes: tuple[tuple[int, ...], ...]
    colour_of: tuple[int, ...]


def _is_nested_sides(g: FiniteGraph, a: frozenset[str], b: frozenset[str]) -> bool:
    if not (a & b) or a <= b or b <= a:
        return True
    return len(a | b) == len(g.vertex_set)


def greedy_colouring(
    ig: IntersectionGraph, order: Sequence[int] | None = None, graph: FiniteGraph | None = None
) -> ColourClasses:
    """First-fit proper colouring in the given node order.

    The default order is the hyperplane order itself (least class edge
    first).  Each finished class is re-checked to be nested; a violation
    would contradict the boundary-intersection criterion and is a bug.
    """
    n = len(ig.hyperplanes)
    if order is None:
        order = range(n)
    order = list(order)
    if sorted(order) != list(range(n)):
        raise ValidationError("order must be a permutation of the hyperplane indices")
    colour = [-1] * n
    for i in order:
        used = {colour[j] for j in ig.adjacency[i] if colour[j] >= 0}
        c = 0
        while c in used:
            c += 1
        colour[i] = c
    num = max(colour) + 1 if colour else 0
    classes = tuple(
        tuple(i for i in range(n) if colour[i] == c) for c in range(num)
    )
    if graph is not None:
        # Nestedness of the complement pairs only depends on one chosen side:
        # the four corner intersections are the same four sets either way.
        for cls in classes:
            for a in range(len(cls)):
                for b in range(a + 1, len(cls)):
                    sa = ig.hyperplanes[cls[a]].sides[0]
                    sb = ig.hyperplanes[cls[b]].sides[0]
                    if not _is_nested_sides(graph, sa, sb):
                        raise NestednessViolation(
                            "same-colour hyperplanes are not nested"
                        )
    return ColourClasses(
        hyperplanes=ig.hyperplanes, classes=classes, colour_of=tuple(colour)
    )


@dataclass(frozen=True)
class SpanningTree:
    """Spanning tree edges with the colour stage that introduced each."""

    graph: FiniteGraph
    edges: tuple[tuple[str, str], ...]
    stage_of: dict[tuple[str, str], int]
    colours: ColourClasses


def _block_partition(
    g: FiniteGraph, colours: ColourClasses, min_colour: int
) -> dict[str, int]:
    """Vertex -> block id under all pairs of colour >= min_colour."""
    live = [
        i for i, c in enumerate(colours.colour_of) if c >= min_colour
    ]
    sides = [colours.hyperplanes[i].sides[0] for i in live]
    sig_to_id: dict[tuple[bool, ...], int] = {}
    block_of: dict[str, int] = {}
    for v in g.vertices:
        sig = tuple(v in s for s in sides)
        if sig not in sig_to_id:
            sig_to_id[sig] = len(sig_to_id)
        block_of[v] = sig_to_id[sig]
    return block_of


def canonical_spanning_tree(
    g: FiniteGraph, order: Sequence[int] | None = None
) -> SpanningTree:
    """Grow the forest stage by stage; components track the colour blocks.

    At stage n, every block of the colours above n that is separated by a
    colour-n pair receives exactly one edge of that pair's hyperplane, the
    least one inside the block.  All crossing edges inside one block connect
    the same two sub-blocks (the sub-block quotient is a tree), which is
    asserted, as is the component invariant after every stage.
    """
    require_median(g)
    ig = hyperplane_intersection_graph(g)
    colours = greedy_colouring(ig, order, graph=g)
    num_colours = len(colours.classes)

    tree_edges: list[tuple[str, str]] = []
    stage_of: dict[tuple[str, str], int] = {}

    for n in range(num_colours):
        upper = _block_partition(g, colours, n + 1)  # blocks not yet separated
        lower = _block_partition(g, colours, n)
        blocks: dict[int, list[str]] = {}
        for v in g.vertices:
            blocks.setdefault(upper[v], []).append(v)
        ordered_blocks = sorted(blocks.values(), key=lambda vs: g.index[vs[0]])
        for block_vertices in ordered_blocks:
            block = set(block_vertices)
            picked_pairs = 0
            sub_blocks = {lower[v] for v in block}
            quotient_uf: dict[int, int] = {b: b for b in sub_blocks}

            def find(b: int) -> int:
                while quotient_uf[b] != b:
                    quotient_uf[b] = quotient_uf[quotient_uf[b]]
                    b = quotient_uf[b]
                return b

            for hp_idx in colours.classes[n]:
                hp = colours.hyperplanes[hp_idx]
                side = hp.sides[0]
                inside = block & side
                if not inside or inside == block:
                    continue
                crossing = [
                    e for e in hp.edges if e[0] in block and e[1] in block
                ]
                if not crossing:
                    raise InternalInvariantError(
                        "separating pair without a crossing edge in its block"
                    )
                joins = {
                    (min(lower[u], lower[v]), max(lower[u], lower[v]))
                    for u, v in crossing
                }
                if len(joins) != 1:
                    raise InternalInvariantError(
                        "hyperplane crosses several sub-block pairs in one block"
                    )
                a, b = next(iter(joins))
                ra, rb = find(a), find(b)
                if ra == rb:
                    raise InternalInvariantError(
                        "sub-block quotient acquired a cycle"
                    )
                quotient_uf[ra] = rb
                picked_pairs += 1
                e = min(crossing, key=g.edge_index.__getitem__)
                tree_edges.append(e)
                stage_of[e] = n
            if picked_pairs != len(sub_blocks) - 1:
                raise InternalInvariantError(
                    "sub-block quotient of a block is not a tree"
                )

    tree = SpanningTree(
        graph=g,
        edges=tuple(sorted(tree_edges, key=g.edge_index.__getitem__)),
        stage_of=stage_of,
        colours=colours,
    )
    problems = verify_spanning_tree(g, tree)
    if problems:
        raise InternalInvariantError("constructed tree fails checks: " + "; ".join(problems))
    return tree


def verify_spanning_tree(g: FiniteGraph, t: SpanningTree) -> list[str]:
    """Structural checks plus the stage invariant; empty list means ok."""
    problems: list[str] = []
    n = len(g.vertices)
    for e in t.edges:
        if e not in g.edge_index:
            problems.append(f"edge {e} is not a graph edge")
    if len(set(t.edges)) != len(t.edges):
        problems.append("duplicate tree edge")
    if len(t.edges) != n - 1:
        problems.append(f"{len(t.edges)} edges for {n} vertices")

    parent = {v: v for v in g.vertices}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    acyclic = True
    for u, v in t.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            acyclic = False
        else:
            parent[ru] = rv
    if not acyclic:
        problems.append("tree edges contain a cycle")
    roots = {find(v) for v in g.vertices}
    if len(roots) != 1:
        problems.append(f"{len(roots)} components")

    if not problems:
        num_colours = len(t.colours.classes)
        for stage in range(num_colours + 1):
            partial = [e for e in t.edges if t.stage_of[e] < stage]
            comp = {v: v for v in g.vertices}

            def cfind(v: str) -> str:
                while comp[v] != v:
                    comp[v] = comp[comp[v]]
                    v = comp[v]
                return v

            for u, v in partial:
                comp[cfind(u)] = cfind(v)
            members: dict[str, set[str]] = {}
            for v in g.vertices:
                members.setdefault(cfind(v), set()).add(v)
            forest_blocks = {frozenset(s) for s in members.values()}
            want = _block_partition(g, t.colours, stage)
            by_id: dict[int, set[str]] = {}
            for v in g.vertices:
                by_id.setdefault(want[v], set()).add(v)
            colour_blocks = {frozenset(s) for s in by_id.values()}
            if forest_blocks != colour_blocks:
                problems.append(f"stage {stage}: forest components are not the blocks")
    return problems


def tree_to_json(t: SpanningTree) -> list[dict]:
    return [
        {"edge": list(e), "stage": t.stage_of[e]}
        for e in sorted(t.edges, key=lambda e: (t.stage_of[e], t.graph.edge_index[e]))
    ]


def colouring_to_json(c: ColourClasses) -> dict:
    return {"classes": [list(cls) for cls in c.classes]}
