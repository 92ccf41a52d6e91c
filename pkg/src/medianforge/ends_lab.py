"""Finite windows onto infinite graphs: truncations, ends, coarse maps.

The bundled generators (line, ladder, 2d grid, regular trees, trees with a
cycle glued at every vertex) expose a neighbour oracle; truncation takes the
induced ball around the root and remembers the frontier.  End counts are
approximated by frontier-reaching components outside a smaller ball, and the
coarse-geometry toolkit (shrink, pullback of cuts along a bounded-stretch
map, tree-cut families) operates on those truncations.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .errors import (
    BadParams,
    BudgetExceeded,
    InternalInvariantError,
    MapDomain,
    NoRay,
    RadiusOrder,
)
from .cuts_pocset import HalfSpace, Pocset, connectedize
from .graph_core import (
    FiniteGraph,
    ball,
    boundary,
    induced_components,
    set_diameter,
)

DEFAULT_TRUNCATION_BUDGET = 10**6


@dataclass(frozen=True)
class GraphGenerator:
    """A rooted locally-finite graph given by a neighbour oracle."""

    name: str
    params: tuple[int, ...]
    root: str
    neighbors: Callable[[str], tuple[str, ...]] = field(compare=False)

    def spec_string(self) -> str:
        if self.params:
            return self.name + ":" + ":".join(str(p) for p in self.params)
        return self.name


def _line_neighbors(v: str) -> tuple[str, ...]:
    i = int(v)
    return (str(i - 1), str(i + 1))


def _ladder_neighbors(v: str) -> tuple[str, ...]:
    i_s, j_s = v.split(".")
    i, j = int(i_s), int(j_s)
    cands = [(i - 1, j), (i + 1, j), (i, 1 - j)]
    cands.sort()
    return tuple(f"{a}.{b}" for a, b in cands)


def _grid2d_neighbors(v: str) -> tuple[str, ...]:
    i_s, j_s = v.split(".")
    i, j = int(i_s), int(j_s)
    cands = [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)]
    cands.sort()
    return tuple(f"{a}.{b}" for a, b in cands)


def _tree_neighbors(k: int) -> Callable[[str], tuple[str, ...]]:
    def neighbors(v: str) -> tuple[str, ...]:
        if v == "r":
            return tuple(f"r.{c}" for c in range(k))
        parent = v.rsplit(".", 1)[0]
        return (parent,) + tuple(f"{v}.{c}" for c in range(k - 1))

    return neighbors


def _decorated_tree_neighbors(k: int, cycle_len: int) -> Callable[[str], tuple[str, ...]]:
    tree = _tree_neighbors(k)

    def neighbors(v: str) -> tuple[str, ...]:
        head, _, tail = v.rpartition(".")
        if tail.startswith("c"):
            base = head
            m = int(tail[1:])
            before = base if m == 1 else f"{base}.c{m - 1}"
            after = base if m == cycle_len - 1 else f"{base}.c{m + 1}"
            return tuple(sorted({before, after}))
        ring = (f"{v}.c1", f"{v}.c{cycle_len - 1}")
        return tree(v) + tuple(sorted(set(ring)))

    return neighbors


def make_generator(spec: str) -> GraphGenerator:
    """Parse a generator spec string such as ``ladder`` or ``regular_tree:3``."""
    parts = spec.split(":")
    name, args = parts[0], parts[1:]
    try:
        params = tuple(int(a) for a in args)
    except ValueError as exc:
        raise BadParams(f"non-integer generator parameter in {spec!r}") from exc
    if name == "line":
        if params:
            raise BadParams("line takes no parameters")
        return GraphGenerator("line", (), "0", _line_neighbors)
    if name == "ladder":
        if params:
            raise BadParams("ladder takes no parameters")
        return GraphGenerator("ladder", (), "0.0", _ladder_neighbors)
    if name == "grid2d":
        if params:
            raise BadParams("grid2d takes no parameters")
        return GraphGenerator("grid2d", (), "0.0", _grid2d_neighbors)
    if name == "regular_tree":
        if len(params) != 1 or params[0] < 2:
            raise BadParams("regular_tree needs one degree parameter >= 2")
        return GraphGenerator("regular_tree", params, "r", _tree_neighbors(params[0]))
    if name == "decorated_tree":
        if len(params) != 2 or params[0] < 2 or params[1] < 3:
            raise BadParams(
                "decorated_tree needs a degree >= 2 and a cycle length >= 3"
            )
        return GraphGenerator(
            "decorated_tree", params, "r", _decorated_tree_neighbors(*params)
        )
    raise BadParams(f"unknown generator {name!r}")


@dataclass(frozen=True)
class BallTruncation:
    """Induced subgraph on the R-ball around the root, frontier marked."""

    graph: FiniteGraph
    R: int
    root: str
    frontier: frozenset[str]


def truncate(
    gen: GraphGenerator, R: int, budget: int = DEFAULT_TRUNCATION_BUDGET
) -> BallTruncation:
    """Breadth-first ball of radius R over the neighbour oracle."""
    if R < 0:
        raise BadParams("truncation radius must be non-negative")
    dist = {gen.root: 0}
    order = [gen.root]
    queue = deque([gen.root])
    while queue:
        x = queue.popleft()
        dx = dist[x]
        if dx == R:
            continue
        for y in gen.neighbors(x):
            if y not in dist:
                if len(dist) >= budget:
                    raise BudgetExceeded(f"truncation exceeded {budget} vertices")
                dist[y] = dx + 1
                order.append(y)
                queue.append(y)
    kept = set(order)
    edges = []
    seen = set()
    for x in order:
        for y in gen.neighbors(x):
            if y in kept:
                e = tuple(sorted((x, y)))
                if e not in seen:
                    seen.add(e)
                    edges.append((x, y))
    graph = FiniteGraph(order, edges)
    frontier = frozenset(v for v in order if dist[v] == R)
    return BallTruncation(graph=graph, R=R, root=gen.root, frontier=frontier)


def truncation_to_edge_list(t: BallTruncation) -> str:
    """Edge-list text with a frontier annotation block in comments."""
    lines = [f"# truncation radius {t.R} root {t.root}"]
    lines += [f"{u} {v}" for u, v in t.graph.edges]
    marked = " ".join(sorted(t.frontier, key=t.graph.index.__getitem__))
    lines.append(f"# frontier: {marked}")
    return "\n".join(lines) + "\n"


def end_estimate(t: BallTruncation, r: int) -> int:
    """Frontier-reaching components at distance at least r from the root.

    Components of the annulus that do not meet the frontier are pockets of
    the finite part and are discarded.
    """
    if not 0 <= r < t.R:
        raise RadiusOrder(f"need 0 <= r < R, got r={r}, R={t.R}")
    dist = t.graph.distances_from(t.root)
    annulus = [v for v in t.graph.vertices if dist[v] >= r]
    count = 0
    for comp in induced_components(t.graph, annulus):
        if comp & t.frontier:
            count += 1
    return count


def ray_prefix(t: BallTruncation, A: Iterable[str]) -> tuple[str, ...]:
    """A frontier-bound path inside A, stepping towards the frontier.

    Starts at the least vertex of A from which the frontier is reachable
    within A; each step moves to the least neighbour strictly closer to the
    frontier inside A.
    """
    A = frozenset(A)
    g = t.graph
    for v in A:
        g.check_vertex(v)
    targets = A & t.frontier
    reach: dict[str, int] = {v: 0 for v in targets}
    queue = deque(sorted(targets, key=g.index.__getitem__))
    while queue:
        x = queue.popleft()
        for y in g.adjacency[x]:
            if y in A and y not in reach:
                reach[y] = reach[x] + 1
                queue.append(y)
    if not reach:
        raise NoRay("no component of A reaches the frontier")
    start = min(reach, key=g.index.__getitem__)
    path = [start]
    current = start
    while current not in t.frontier:
        steps = [
            y
            for y in g.adjacency[current]
            if y in reach and reach[y] < reach[current]
        ]
        if not steps:
            raise InternalInvariantError("ray walk stalled before the frontier")
        current = min(steps, key=g.index.__getitem__)
        path.append(current)
    return tuple(path)


def shrink(g: FiniteGraph, A: Iterable[str], D: int) -> frozenset[str]:
    """Pull A away from its complement: drop everything within D of it.

    The result satisfies ball(result, D) <= A, which is asserted.
    """
    A = frozenset(A)
    for v in A:
        g.check_vertex(v)
    if D < 0:
        raise BadParams("D must be non-negative")
    comp = g.vertex_set - A
    if not comp:
        return A
    shrunk = g.vertex_set - ball(g, comp, D)
    if shrunk and not ball(g, shrunk, D) <= A:
        raise InternalInvariantError("shrunken set leaked outside the original")
    return shrunk


@dataclass(frozen=True)
class QuasiMap:
    """A vertex map with bounded edge stretch and a quasi-inverse.

    S bounds the image distance of every edge; D bounds the displacement of
    backward(forward(x)) over interior (non-frontier) vertices.
    """

    x_graph: FiniteGraph
    y_graph: FiniteGraph
    forward: dict[str, str]
    backward: dict[str, str]
    S: int
    D: int

    @classmethod
    def from_tables(
        cls,
        x_graph: FiniteGraph,
        y_graph: FiniteGraph,
        forward: dict[str, str],
        backward: dict[str, str],
        interior: Iterable[str] | None = None,
    ) -> "QuasiMap":
        for v in x_graph.vertices:
            if v not in forward:
                raise MapDomain(f"forward map misses {v!r}")
            y_graph.check_vertex(forward[v])
        for w in y_graph.vertices:
            if w not in backward:
                raise MapDomain(f"backward map misses {w!r}")
            x_graph.check_vertex(backward[w])
        stretch = 0
        for u, v in x_graph.edges:
            fu, fv = forward[u], forward[v]
            d = 0 if fu == fv else (1 if y_graph.has_edge(fu, fv) else y_graph.distance(fu, fv))
            stretch = max(stretch, d)
        pts = x_graph.vertices if interior is None else tuple(interior)
        disp = 0
        for x in pts:
            gx = backward[forward[x]]
            if gx != x:
                d = 1 if x_graph.has_edge(x, gx) else x_graph.distance(x, gx)
                disp = max(disp, d)
        return cls(
            x_graph=x_graph,
            y_graph=y_graph,
            forward=dict(forward),
            backward=dict(backward),
            S=stretch,
            D=disp,
        )


@dataclass(frozen=True)
class PullbackReport:
    """Preimage of a half-space along the forward map, with diameters.

    ``diam_image_boundary`` (the forward image of the preimage's boundary)
    is bounded by ``diam_target_boundary + 2 S``; the bound is asserted.
    """

    halfspace: HalfSpace
    diam_source_boundary: int
    diam_target_boundary: int
    diam_image_boundary: int
    bound: int


def pullback_cut(q: QuasiMap, h: HalfSpace) -> PullbackReport:
    if h.graph is not q.y_graph:
        raise MapDomain("half-space does not live on the target graph")
    side = frozenset(v for v in q.x_graph.vertices if q.forward[v] in h.side)
    pulled = HalfSpace(side, q.x_graph)
    src_bnd = boundary(q.x_graph, side, "v")
    tgt_bnd = h.vertex_boundary()
    image = frozenset(q.forward[v] for v in src_bnd)
    diam_src = set_diameter(q.x_graph, src_bnd)
    diam_tgt = set_diameter(q.y_graph, tgt_bnd)
    diam_img = set_diameter(q.y_graph, image)
    bound = diam_tgt + 2 * q.S
    if diam_img > bound:
        raise InternalInvariantError(
            f"pullback image boundary diameter {diam_img} exceeds bound {bound}"
        )
    return PullbackReport(
        halfspace=pulled,
        diam_source_boundary=diam_src,
        diam_target_boundary=diam_tgt,
        diam_image_boundary=diam_img,
        bound=bound,
    )


@dataclass(frozen=True)
class CutFamily:
    """Pocset pulled back from tree cuts, with truncation-suspect members."""

    pocset: Pocset
    untrusted: frozenset[frozenset[str]]


def quasi_tree_cut_family(
    t: BallTruncation, q: QuasiMap, R_bound: int
) -> CutFamily:
    """Pull back every edge cut of a tree ball and repair connectivity.

    Keeps the connected co-connected repairs whose total boundary diameter
    stays within ``R_bound``, complement-closed.  Members whose boundary
    meets the truncation frontier are flagged untrusted: their shape depends
    on where the window was cut.
    """
    if q.x_graph is not t.graph:
        raise MapDomain("quasi-map source is not the truncation graph")
    tree = q.y_graph
    if len(tree.edges) != len(tree.vertices) - 1:
        raise MapDomain("target of the quasi-map must be a tree")
    g = t.graph
    sides: set[frozenset[str]] = set()
    for u, v in tree.edges:
        tree_side = _tree_split(tree, u, v)
        pulled = frozenset(x for x in g.vertices if q.forward[x] in tree_side)
        if not pulled or pulled == g.vertex_set:
            continue
        for repaired in connectedize(g, HalfSpace(pulled, g)):
            if set_diameter(g, repaired.vertex_boundary()) <= R_bound:
                sides.add(repaired.side)
                sides.add(g.vertex_set - repaired.side)
    pocset = Pocset.closed(g, sides)
    untrusted = frozenset(
        h.side
        for h in pocset.members
        if not h.is_trivial and h.vertex_boundary() & t.frontier
    )
    return CutFamily(pocset=pocset, untrusted=untrusted)


def _tree_split(tree: FiniteGraph, u: str, v: str) -> frozenset[str]:
    """Vertices on v's side after removing the edge (u, v)."""
    comp = {v}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for y in tree.adjacency[x]:
            if y == u and x == v:
                continue
            if y not in comp:
                comp.add(y)
                queue.append(y)
    return frozenset(comp)


# -- bundled quasi-maps ---------------------------------------------------------


def ladder_line_quasimap(R: int) -> tuple[BallTruncation, BallTruncation, QuasiMap]:
    """Collapse the ladder ball to the line ball by forgetting the rail."""
    ladder = truncate(make_generator("ladder"), R)
    line = truncate(make_generator("line"), R)
    forward = {v: v.split(".")[0] for v in ladder.graph.vertices}
    backward = {w: f"{w}.0" for w in line.graph.vertices}
    interior = ladder.graph.vertex_set - ladder.frontier
    q = QuasiMap.from_tables(ladder.graph, line.graph, forward, backward, interior)
    return ladder, line, q


def decorated_tree_collapse_quasimap(
    k: int, cycle_len: int, R: int
) -> tuple[BallTruncation, BallTruncation, QuasiMap]:
    """Collapse each glued cycle onto the tree vertex carrying it."""
    dec = truncate(make_generator(f"decorated_tree:{k}:{cycle_len}"), R)
    tree = truncate(make_generator(f"regular_tree:{k}"), R)

    def base_of(v: str) -> str:
        head, _, tail = v.rpartition(".")
        return head if tail.startswith("c") else v

    forward = {v: base_of(v) for v in dec.graph.vertices}
    backward = {w: w for w in tree.graph.vertices}
    interior = dec.graph.vertex_set - dec.frontier
    q = QuasiMap.from_tables(dec.graph, tree.graph, forward, backward, interior)
    return dec, tree, q
