"""Median structure of finite graphs: medians, projections, hyperplanes.

Medianness is verified, never assumed: every median-only operation first
consults the cached certificate produced by the exhaustive triple check.
Hyperplanes are computed by union-find over opposite sides of squares and
cross-checked against the cone description of their two convex sides.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BudgetExceeded,
    EmptyInput,
    InternalInvariantError,
    NotConvex,
    NotDisjoint,
    NotHalfSpace,
    NotMedianGraph,
    PairwiseEmpty,
    RoundtripFailure,
)
from .cuts_pocset import Pocset
from .dual_median import DualMedianGraph, build_dual, principal_orientation
from .graph_core import (
    FiniteGraph,
    boundary,
    cone,
    is_convex,
    iter_squares,
)

MEDIAN_CHECK_LIMIT = 300


@dataclass(frozen=True)
class MedianCertificate:
    """Outcome of the exhaustive triple check.

    A failing certificate carries the first bad triple in scan order together
    with its triple interval intersection.
    """

    verdict: bool
    counterexample: tuple[str, str, str] | None = None
    intersection: frozenset[str] | None = None


def _distance_matrix(g: FiniteGraph) -> np.ndarray:
    n = len(g.vertices)
    d = np.empty((n, n), dtype=np.int32)
    for i, v in enumerate(g.vertices):
        row = g.distances_from(v)
        d[i] = [row[w] for w in g.vertices]
    return d


def check_median(g: FiniteGraph) -> MedianCertificate:
    """Verify that every vertex triple has a unique interval intersection.

    Exhaustive over triples with early exit; certificates are cached on the
    graph, so repeated calls are free.  Graphs above ``MEDIAN_CHECK_LIMIT``
    vertices are refused rather than silently sampled.
    """
    if g._median_cert is not None:
        return g._median_cert
    n = len(g.vertices)
    if n > MEDIAN_CHECK_LIMIT:
        raise BudgetExceeded(
            f"median check is exhaustive and capped at {MEDIAN_CHECK_LIMIT} vertices"
        )
    d = _distance_matrix(g)
    # between[x][y, w] says w lies on a geodesic from x to y.
    between = np.empty((n, n, n), dtype=bool)
    for x in range(n):
        dx = d[x]
        between[x] = d + dx[np.newaxis, :] == dx[:, np.newaxis]
    cert = None
    for x in range(n):
        bx = between[x]
        for y in range(x, n):
            on_xy = bx[y]
            counts = (bx & between[y] & on_xy[np.newaxis, :]).sum(axis=1)
            bad = np.nonzero(counts != 1)[0]
            if bad.size:
                z = int(bad[0])
                members = np.nonzero(bx[z] & between[y][z] & on_xy)[0]
                cert = MedianCertificate(
                    verdict=False,
                    counterexample=(g.vertices[x], g.vertices[y], g.vertices[z]),
                    intersection=frozenset(g.vertices[int(i)] for i in members),
                )
                break
        if cert is not None:
            break
    if cert is None:
        cert = MedianCertificate(verdict=True)
    g._median_cert = cert
    return cert


def require_median(g: FiniteGraph) -> None:
    cert = check_median(g)
    if not cert.verdict:
        raise NotMedianGraph(
            f"graph is not median; counterexample triple {cert.counterexample}"
        )


def median(g: FiniteGraph, x: str, y: str, z: str) -> str:
    """The unique common point of the three pairwise intervals."""
    require_median(g)
    dx = g.distances_from(x)
    dy = g.distances_from(y)
    dz = g.distances_from(z)
    dxy, dyz, dxz = dx[y], dy[z], dx[z]
    hits = [
        w
        for w in g.vertices
        if dx[w] + dy[w] == dxy and dy[w] + dz[w] == dyz and dx[w] + dz[w] == dxz
    ]
    if len(hits) != 1:
        raise InternalInvariantError("median certificate disagrees with a triple")
    return hits[0]


def project(g: FiniteGraph, A: Iterable[str], x: str) -> str:
    """Nearest-point projection of x towards A.

    Iterates the median improvement step from any starting point of A until
    the current point lies between x and every member; the fixpoint is
    independent of the start and of the scan order.
    """
    members = sorted(frozenset(A), key=g.index.__getitem__)
    if not members:
        raise EmptyInput("cannot project towards the empty set")
    require_median(g)
    g.check_vertex(x)
    current = members[0]
    dx = g.distances_from(x)
    improved = True
    while improved:
        improved = False
        dc = g.distances_from(current)
        for a in members:
            if dx[current] + dc[a] != dx[a]:
                current = median(g, x, a, current)
                improved = True
                break
    return current


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller index as the representative for determinism
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


@dataclass(frozen=True)
class Hyperplane:
    """An edge parallelism class with its two complementary convex sides."""

    edges: tuple[tuple[str, str], ...]
    sides: tuple[frozenset[str], frozenset[str]]

    def vertex_boundary(self, g: FiniteGraph) -> frozenset[str]:
        return boundary(g, self.sides[0], "v")


def hyperplanes(g: FiniteGraph) -> tuple[Hyperplane, ...]:
    """Edge classes generated by parallel sides of squares.

    Classes are ordered by their least edge; each class's sides are the two
    cones of any of its edges, and every class edge is checked to give the
    same pair.
    """
    require_median(g)
    uf = _UnionFind(len(g.edges))
    eidx = g.edge_index
    for a, b, c, d in iter_squares(g):
        # square a-b-c-d: (a,b) is parallel to (d,c), (a,d) to (b,c)
        uf.union(eidx[g.canonical_edge(a, b)], eidx[g.canonical_edge(d, c)])
        uf.union(eidx[g.canonical_edge(a, d)], eidx[g.canonical_edge(b, c)])
    classes: dict[int, list[int]] = {}
    for i in range(len(g.edges)):
        classes.setdefault(uf.find(i), []).append(i)
    out = []
    for root in sorted(classes):
        edge_ids = sorted(classes[root])
        rep = g.edges[edge_ids[0]]
        x, y = rep
        side_y = cone(g, x, y)
        side_x = cone(g, y, x)
        if side_x | side_y != g.vertex_set or side_x & side_y:
            raise InternalInvariantError("cones of an edge do not partition the graph")
        class_edges = tuple(g.edges[i] for i in edge_ids)
        for u, v in class_edges:
            pair = {cone(g, u, v), cone(g, v, u)}
            if pair != {side_x, side_y}:
                raise InternalInvariantError(
                    "edges of one square class induce different sides"
                )
        undirected_ie = {g.canonical_edge(u, v) for (u, v) in boundary(g, side_y, "ie")}
        if undirected_ie != set(class_edges):
            raise InternalInvariantError(
                "hyperplane edges differ from the inward boundary of its side"
            )
        sides = tuple(sorted((side_x, side_y), key=lambda s: _side_key(g, s)))
        out.append(Hyperplane(edges=class_edges, sides=sides))  # type: ignore[arg-type]
    return tuple(out)


def _side_key(g: FiniteGraph, side: frozenset[str]) -> tuple[int, tuple[int, ...]]:
    return (len(side), tuple(sorted(g.index[v] for v in side)))


def convex_halfspaces(g: FiniteGraph) -> Pocset:
    """Both sides of every hyperplane plus the trivial pair, as a pocset."""
    sides: set[frozenset[str]] = set()
    for h in hyperplanes(g):
        sides.add(h.sides[0])
        sides.add(h.sides[1])
    return Pocset.closed(g, sides)


def _require_convex_halfspace(g: FiniteGraph, side: frozenset[str]) -> None:
    if not side or side == g.vertex_set:
        raise NotHalfSpace("side must be non-empty and proper")
    if not is_convex(g, side):
        raise NotHalfSpace("side is not convex")
    if not is_convex(g, g.vertex_set - side):
        raise NotHalfSpace("complement is not convex")


@dataclass(frozen=True)
class NestednessWitness:
    """Either the empty corners of a nested pair, or a spanning square.

    For a non-nested pair the square is returned in cycle order starting at
    the corner inside both half-spaces.
    """

    nested: bool
    empty_corners: tuple[tuple[int, int], ...] = ()
    square: tuple[str, str, str, str] | None = None


def non_nested_witness(
    g: FiniteGraph, h_side: frozenset[str], k_side: frozenset[str]
) -> NestednessWitness:
    require_median(g)
    _require_convex_halfspace(g, h_side)
    _require_convex_halfspace(g, k_side)
    full = g.vertex_set
    corners = {
        (0, 0): h_side & k_side,
        (0, 1): h_side - k_side,
        (1, 0): k_side - h_side,
        (1, 1): full - (h_side | k_side),
    }
    empty = tuple(sorted(ij for ij, c in corners.items() if not c))
    if empty:
        return NestednessWitness(nested=True, empty_corners=empty)

    def label(v: str) -> tuple[int, int]:
        return (0 if v in h_side else 1, 0 if v in k_side else 1)

    for square in iter_squares(g):
        if {label(v) for v in square} == set(corners):
            ring = list(square)
            start = next(i for i, v in enumerate(ring) if label(v) == (0, 0))
            ring = ring[start:] + ring[:start]
            if label(ring[1]) == (1, 0):
                ring = [ring[0], ring[3], ring[2], ring[1]]
            return NestednessWitness(nested=False, square=tuple(ring))  # type: ignore[arg-type]
    raise InternalInvariantError("non-nested convex half-spaces without a square")


def separating_count(
    g: FiniteGraph, A: Iterable[str], B: Iterable[str]
) -> tuple[int, list[frozenset[str]]]:
    """Convex half-spaces containing A and avoiding B; the count is d(A, B)."""
    A, B = frozenset(A), frozenset(B)
    if not A or not B:
        raise EmptyInput("both sets must be non-empty")
    require_median(g)
    if A & B:
        raise NotDisjoint("sets overlap")
    if not is_convex(g, A):
        raise NotConvex("first set is not convex")
    if not is_convex(g, B):
        raise NotConvex("second set is not convex")
    p = convex_halfspaces(g)
    matches = [h.side for h in p.members if not h.is_trivial and A <= h.side and not (h.side & B)]
    d = min(g.distance(a, b) for a in A for b in B)
    if len(matches) != d:
        raise InternalInvariantError(
            f"separator count {len(matches)} differs from distance {d}"
        )
    return d, matches


def helly_witness(g: FiniteGraph, sets: Sequence[Iterable[str]]) -> str:
    """A vertex in the intersection of pairwise-intersecting convex sets.

    Follows the inductive proof: medians of pairwise witnesses for three
    sets, then fold the last set into all others and recurse.
    """
    fams = [frozenset(s) for s in sets]
    if not fams:
        raise EmptyInput("need at least one set")
    require_median(g)
    for s in fams:
        if not s:
            raise NotConvex("sets must be non-empty")
        if not is_convex(g, s):
            raise NotConvex("all sets must be convex")
    for i in range(len(fams)):
        for j in range(i + 1, len(fams)):
            if not (fams[i] & fams[j]):
                raise PairwiseEmpty("two of the sets do not intersect")
    return _helly(g, fams)


def _helly(g: FiniteGraph, fams: list[frozenset[str]]) -> str:
    least = lambda s: min(s, key=g.index.__getitem__)
    if len(fams) == 1:
        return least(fams[0])
    if len(fams) == 2:
        return least(fams[0] & fams[1])
    if len(fams) == 3:
        x = least(fams[0] & fams[1])
        y = least(fams[0] & fams[2])
        z = least(fams[1] & fams[2])
        m = median(g, x, y, z)
        if any(m not in f for f in fams):
            raise InternalInvariantError("median of pairwise witnesses escaped a set")
        return m
    last = fams[-1]
    return _helly(g, [f & last for f in fams[:-1]])


@dataclass(frozen=True)
class RoundtripResult:
    """Vertex-orientation pairing witnessing the duality isomorphism."""

    dual: DualMedianGraph
    vertex_to_orientation: dict[str, str]
    orientation_to_vertex: dict[str, str]


def roundtrip(g: FiniteGraph) -> RoundtripResult:
    """Rebuild g as the dual of its own convex half-spaces.

    The principal orientation map must be a graph isomorphism; any failure
    is a bug, not a property of the input.
    """
    require_median(g)
    p = convex_halfspaces(g)
    dual = build_dual(p)
    forward: dict[str, str] = {}
    for x in g.vertices:
        forward[x] = principal_orientation(p, x).key_string()
    if len(set(forward.values())) != len(g.vertices):
        raise RoundtripFailure("principal orientation map is not injective")
    if len(dual.graph) != len(g.vertices):
        raise RoundtripFailure(
            f"dual has {len(dual.graph)} vertices, expected {len(g.vertices)}"
        )
    for name in dual.graph.vertices:
        if name not in set(forward.values()):
            raise RoundtripFailure("an orientation is not principal")
    backward = {name: x for x, name in forward.items()}
    for u, v in g.edges:
        if not dual.graph.has_edge(forward[u], forward[v]):
            raise RoundtripFailure(f"edge ({u}, {v}) lost by the principal map")
    for a, b in dual.graph.edges:
        if not g.has_edge(backward[a], backward[b]):
            raise RoundtripFailure(f"dual edge ({a}, {b}) has no preimage edge")
    return RoundtripResult(
        dual=dual, vertex_to_orientation=forward, orientation_to_vertex=backward
    )


def hyperplanes_to_json(g: FiniteGraph, hps: Sequence[Hyperplane]) -> list[dict]:
    idx = g.index
    out = []
    for h in hps:
        out.append(
            {
                "edges": [list(e) for e in h.edges],
                "sides": [sorted(s, key=idx.__getitem__) for s in h.sides],
            }
        )
    return out
