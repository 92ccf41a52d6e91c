"""Finite graphs with a fixed vertex order: metric, boundaries, intervals, convexity.

Everything downstream (cut enumeration, orientations, spanning trees) breaks
ties through the vertex order fixed at load time, so two runs on the same
input bytes make identical choices everywhere.
"""
from __future__ import annotations

import re
from collections import deque
from typing import Iterable, Iterator

from .errors import (
    Disconnected,
    EmptyInput,
    EqualVertices,
    NotSimple,
    ParseError,
    UnknownVertex,
)

VERTEX_TOKEN = re.compile(r"[A-Za-z0-9_.\-]+\Z")

# All-pairs distances are filled eagerly below this vertex count; larger
# graphs run one memoised BFS per queried source instead.  Results agree.
EAGER_APSP_LIMIT = 256


class FiniteGraph:
    """Simple connected undirected graph over opaque string vertex ids.

    ``vertices`` is the total order (load order); ``edges`` keeps input order
    with each pair normalised so the lower-indexed endpoint comes first.
    Instances never mutate after construction; the distance cache is the only
    internal memo and is invisible to callers.
    """

    __slots__ = (
        "vertices",
        "edges",
        "adjacency",
        "vertex_set",
        "index",
        "edge_index",
        "_adj_sets",
        "_dist",
        "_median_cert",
    )

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple[str, str]]):
        vs = tuple(vertices)
        if not vs:
            raise EmptyInput("graph needs at least one vertex")
        if len(set(vs)) != len(vs):
            raise ParseError("duplicate vertex in vertex list")
        self.vertices = vs
        self.index = {v: i for i, v in enumerate(vs)}
        self.vertex_set = frozenset(vs)

        adj: dict[str, set[str]] = {v: set() for v in vs}
        canon: list[tuple[str, str]] = []
        seen: set[tuple[str, str]] = set()
        for u, v in edges:
            if u not in self.index or v not in self.index:
                raise UnknownVertex(f"edge ({u}, {v}) uses an unknown vertex")
            if u == v:
                raise NotSimple(f"loop at {u}")
            e = (u, v) if self.index[u] < self.index[v] else (v, u)
            if e in seen:
                raise NotSimple(f"duplicate edge {e}")
            seen.add(e)
            canon.append(e)
            adj[u].add(v)
            adj[v].add(u)
        self.edges = tuple(canon)
        self.edge_index = {e: i for i, e in enumerate(self.edges)}
        self._adj_sets = {v: frozenset(adj[v]) for v in vs}
        self.adjacency = {
            v: tuple(sorted(adj[v], key=self.index.__getitem__)) for v in vs
        }

        self._dist: dict[str, dict[str, int]] = {}
        self._median_cert = None
        if len(self._bfs(vs[0])) != len(vs):
            raise Disconnected("graph is not connected")
        if len(vs) <= EAGER_APSP_LIMIT:
            for v in vs:
                self.distances_from(v)

    # -- basic queries ----------------------------------------------------

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"FiniteGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    def __contains__(self, v: str) -> bool:
        return v in self.index

    def check_vertex(self, v: str) -> str:
        if v not in self.index:
            raise UnknownVertex(f"unknown vertex {v!r}")
        return v

    def neighbors(self, v: str) -> tuple[str, ...]:
        self.check_vertex(v)
        return self.adjacency[v]

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: str, v: str) -> bool:
        return v in self._adj_sets[u]

    def canonical_edge(self, u: str, v: str) -> tuple[str, str]:
        self.check_vertex(u)
        self.check_vertex(v)
        return (u, v) if self.index[u] < self.index[v] else (v, u)

    # -- metric -----------------------------------------------------------

    def _bfs(self, source: str) -> dict[str, int]:
        dist = {source: 0}
        queue = deque([source])
        while queue:
            x = queue.popleft()
            dx = dist[x]
            for y in self.adjacency[x]:
                if y not in dist:
                    dist[y] = dx + 1
                    queue.append(y)
        return dist

    def distances_from(self, source: str) -> dict[str, int]:
        self.check_vertex(source)
        cached = self._dist.get(source)
        if cached is None:
            cached = self._bfs(source)
            self._dist[source] = cached
        return cached

    def distance(self, x: str, y: str) -> int:
        self.check_vertex(y)
        return self.distances_from(x)[y]


# -- ingestion -------------------------------------------------------------


def parse_graph(text: str) -> FiniteGraph:
    """Parse an edge-list document: one edge per line as ``u v``.

    ``#`` starts a comment, blank lines are skipped, and vertex order is
    first-appearance order.  Rejects loops, duplicate edges, and disconnected
    input.
    """
    vertices: list[str] = []
    seen: set[str] = set()
    edges: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"line {lineno}: expected two vertex tokens, got {raw!r}")
        for t in tokens:
            if not VERTEX_TOKEN.match(t):
                raise ParseError(f"line {lineno}: bad vertex token {t!r}")
            if t not in seen:
                seen.add(t)
                vertices.append(t)
        edges.append((tokens[0], tokens[1]))
    if not vertices:
        raise ParseError("no edges in input")
    return FiniteGraph(vertices, edges)


def graph_to_edge_list(g: FiniteGraph) -> str:
    """Inverse of :func:`parse_graph` (vertex/edge order preserved)."""
    return "\n".join(f"{u} {v}" for u, v in g.edges) + "\n"


# -- metric operations ------------------------------------------------------


def distance(g: FiniteGraph, x: str, y: str) -> int:
    """Length of a shortest path between ``x`` and ``y``."""
    return g.distance(x, y)


def ball(g: FiniteGraph, around: frozenset[str] | set[str], r: int) -> frozenset[str]:
    """Closed ball: all vertices at distance at most ``r`` from the set."""
    if not around:
        raise EmptyInput("ball of the empty set is undefined")
    for v in around:
        g.check_vertex(v)
    if r < 0:
        raise ValueError("radius must be non-negative")
    dist = {v: 0 for v in around}
    queue = deque(sorted(around, key=g.index.__getitem__))
    while queue:
        x = queue.popleft()
        dx = dist[x]
        if dx == r:
            continue
        for y in g.adjacency[x]:
            if y not in dist:
                dist[y] = dx + 1
                queue.append(y)
    return frozenset(dist)


def set_diameter(g: FiniteGraph, vs: Iterable[str]) -> int:
    """Largest pairwise distance within ``vs`` (0 for empty or singleton).

    Uses cached rows when available and otherwise truncated searches that
    stop once the remaining members are found, so tight clusters on large
    graphs stay cheap.
    """
    vlist = sorted(vs, key=g.index.__getitem__)
    best = 0
    for i, x in enumerate(vlist):
        rest = vlist[i + 1 :]
        if not rest:
            break
        cached = g._dist.get(x)
        if cached is not None:
            best = max(best, max(cached[y] for y in rest))
            continue
        need = set(rest)
        dist = {x: 0}
        queue = deque([x])
        while queue and need:
            cur = queue.popleft()
            dcur = dist[cur]
            for nb in g.adjacency[cur]:
                if nb not in dist:
                    dist[nb] = dcur + 1
                    if nb in need:
                        need.discard(nb)
                        if dist[nb] > best:
                            best = dist[nb]
                    queue.append(nb)
    return best


# -- boundary operators -----------------------------------------------------

BOUNDARY_KINDS = ("iv", "ov", "ie", "oe", "v")


def boundary(g: FiniteGraph, A: frozenset[str] | set[str], kind: str):
    """Boundary operators of a vertex set.

    ``iv``: members of A with a neighbour outside; ``ov``: the same for the
    complement; ``v``: their disjoint union; ``ie``: directed edges
    (outside, inside) crossing into A; ``oe``: directed edges crossing out.
    """
    A = frozenset(A)
    if not A <= g.vertex_set:
        stray = sorted(A - g.vertex_set)[0]
        raise UnknownVertex(f"unknown vertex {stray!r}")
    if kind == "iv":
        return frozenset(v for v in A if g._adj_sets[v] - A)
    if kind == "ov":
        return boundary(g, g.vertex_set - A, "iv")
    if kind == "v":
        return boundary(g, A, "iv") | boundary(g, A, "ov")
    if kind == "ie":
        inner = boundary(g, A, "iv")
        return frozenset(
            (u, v) for v in inner for u in g._adj_sets[v] if u not in A
        )
    if kind == "oe":
        return boundary(g, g.vertex_set - A, "ie")
    raise ValueError(f"unknown boundary kind {kind!r}; expected one of {BOUNDARY_KINDS}")


# -- intervals and convexity -------------------------------------------------


def interval(g: FiniteGraph, x: str, y: str) -> frozenset[str]:
    """Union of all geodesics: vertices z with d(x,z) + d(z,y) = d(x,y)."""
    dx = g.distances_from(x)
    dy = g.distances_from(y)
    d = dx[g.check_vertex(y)]
    return frozenset(z for z in g.vertices if dx[z] + dy[z] == d)


def is_between(g: FiniteGraph, x: str, y: str, z: str) -> bool:
    """Betweenness x - y - z, i.e. y lies on a geodesic from x to z."""
    return g.distance(x, y) + g.distance(y, z) == g.distance(x, z)


def convex_hull(g: FiniteGraph, A: Iterable[str]) -> frozenset[str]:
    """Least superset of A closed under intervals between its members."""
    hull = set(A)
    if not hull:
        raise EmptyInput("convex hull of the empty set is undefined")
    for v in hull:
        g.check_vertex(v)
    fresh = sorted(hull, key=g.index.__getitem__)
    while fresh:
        added: set[str] = set()
        current = sorted(hull, key=g.index.__getitem__)
        for x in fresh:
            for y in current:
                for z in interval(g, x, y):
                    if z not in hull and z not in added:
                        added.add(z)
        hull |= added
        fresh = sorted(added, key=g.index.__getitem__)
    return frozenset(hull)


def is_convex(g: FiniteGraph, A: Iterable[str]) -> bool:
    A = frozenset(A)
    if not A:
        return True
    return convex_hull(g, A) == A


def cone(g: FiniteGraph, x: str, y: str) -> frozenset[str]:
    """Vertices z such that y lies between x and z.

    The defining dichotomy: for adjacent x, y in a median graph the two cones
    cone(x,y) and cone(y,x) partition the vertex set.  On non-median graphs
    no such claim is made.
    """
    g.check_vertex(x)
    g.check_vertex(y)
    if x == y:
        raise EqualVertices("cone requires two distinct vertices")
    dx = g.distances_from(x)
    dy = g.distances_from(y)
    dxy = dx[y]
    return frozenset(z for z in g.vertices if dxy + dy[z] == dx[z])


# -- subgraph helpers --------------------------------------------------------


def induced_components(g: FiniteGraph, vs: Iterable[str]) -> tuple[frozenset[str], ...]:
    """Connected components of the induced subgraph, ordered by least vertex."""
    remaining = set(vs)
    for v in remaining:
        g.check_vertex(v)
    comps: list[frozenset[str]] = []
    order = sorted(remaining, key=g.index.__getitem__)
    placed: set[str] = set()
    for start in order:
        if start in placed:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in g.adjacency[x]:
                if y in remaining and y not in comp:
                    comp.add(y)
                    queue.append(y)
        placed |= comp
        comps.append(frozenset(comp))
    return tuple(comps)


def is_connected_subset(g: FiniteGraph, vs: Iterable[str]) -> bool:
    vs = frozenset(vs)
    if not vs:
        return False
    return len(induced_components(g, vs)) == 1


def iter_squares(g: FiniteGraph) -> Iterator[tuple[str, str, str, str]]:
    """All 4-cycles (a, b, c, d), each once, with a the least corner.

    b and d are the square-neighbours of a with index(b) < index(d), and c is
    the corner opposite a.
    """
    idx = g.index
    for a in g.vertices:
        ia = idx[a]
        nbrs = g.adjacency[a]
        for i, b in enumerate(nbrs):
            if idx[b] < ia:
                continue
            for d in nbrs[i + 1 :]:
                if idx[d] < ia:
                    continue
                for c in sorted(g._adj_sets[b] & g._adj_sets[d], key=idx.__getitem__):
                    if c != a and idx[c] > ia:
                        yield (a, b, c, d)
