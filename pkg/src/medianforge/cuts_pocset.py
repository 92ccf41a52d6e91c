"""Pocsets of cuts on a finite graph.

A cut is a vertex set that is connected with connected complement; the
families enumerated here additionally bound the diameter of the total vertex
boundary.  Alongside enumeration this module carries the order-theoretic
queries the rest of the pipeline needs: nestedness, separation profiles,
blocks, successors, the two-quantity density report, and the
connected-witness construction that repairs disconnected half-spaces.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import (
    BudgetExceeded,
    GraphMismatch,
    InternalInvariantError,
    NotMember,
    TrivialInput,
    ValidationError,
)
from .graph_core import FiniteGraph, boundary, induced_components

DEFAULT_SUBSET_BUDGET = 10**6

# Exhaustive bitset enumeration up to this many vertices; anchored growth above.
EXHAUSTIVE_LIMIT = 22


@dataclass(frozen=True)
class HalfSpace:
    """One side of a two-sided split, tied to its graph.

    Equality and hashing ignore the graph reference; half-spaces from
    different graphs are never mixed inside one pocset, and cross-graph
    queries raise ``GraphMismatch``.
    """

    side: frozenset[str]
    graph: FiniteGraph = field(compare=False, repr=False)

    @property
    def complement(self) -> "HalfSpace":
        return HalfSpace(self.graph.vertex_set - self.side, self.graph)

    @property
    def is_trivial(self) -> bool:
        return not self.side or self.side == self.graph.vertex_set

    def vertex_boundary(self) -> frozenset[str]:
        return boundary(self.graph, self.side, "v")

    def inward_edges(self) -> frozenset[tuple[str, str]]:
        return boundary(self.graph, self.side, "ie")

    def is_cut(self) -> bool:
        """Connected side, connected complement (both non-empty)."""
        g = self.graph
        comp = g.vertex_set - self.side
        if not self.side or not comp:
            return False
        return (
            len(induced_components(g, self.side)) == 1
            and len(induced_components(g, comp)) == 1
        )

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        idx = self.graph.index
        return (len(self.side), tuple(sorted(idx[v] for v in self.side)))

    def __repr__(self) -> str:
        inner = ",".join(sorted(self.side, key=self.graph.index.__getitem__))
        return f"HalfSpace({{{inner}}})"


class Pocset:
    """A family of half-spaces of one graph, ordered by inclusion of sides.

    The constructor stores exactly the sides it is given (deduplicated, in
    the canonical order: by size, then lexicographically in vertex indices),
    so invalid families can be represented and then reported on by
    :func:`validate_pocset`.  Use :meth:`closed` to build a complement-closed
    family with the trivial pair adjoined.
    """

    def __init__(self, graph: FiniteGraph, sides: Iterable[frozenset[str]]):
        self.graph = graph
        uniq = {frozenset(s) for s in sides}
        for s in uniq:
            for v in s:
                graph.check_vertex(v)
        members = [HalfSpace(s, graph) for s in uniq]
        members.sort(key=HalfSpace.sort_key)
        self.members: tuple[HalfSpace, ...] = tuple(members)
        self._pos: dict[frozenset[str], int] = {
            h.side: i for i, h in enumerate(self.members)
        }
        self._supersets: tuple[frozenset[int], ...] | None = None
        self._strict_subsets: tuple[frozenset[int], ...] | None = None

    @classmethod
    def closed(cls, graph: FiniteGraph, sides: Iterable[frozenset[str]]) -> "Pocset":
        """Close under complement and adjoin the trivial pair."""
        full = graph.vertex_set
        out = {frozenset(), full}
        for s in sides:
            s = frozenset(s)
            out.add(s)
            out.add(full - s)
        return cls(graph, out)

    # -- container protocol -------------------------------------------------

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[HalfSpace]:
        return iter(self.members)

    def __contains__(self, item) -> bool:
        side = item.side if isinstance(item, HalfSpace) else frozenset(item)
        return side in self._pos

    def __repr__(self) -> str:
        return f"Pocset({len(self.members)} members on {self.graph!r})"

    def index_of(self, h: HalfSpace) -> int:
        if h.side not in self._pos:
            raise NotMember(f"{h!r} is not a member of this pocset")
        return self._pos[h.side]

    def member_at(self, i: int) -> HalfSpace:
        return self.members[i]

    def complement_of(self, h: HalfSpace) -> HalfSpace:
        comp = HalfSpace(self.graph.vertex_set - h.side, self.graph)
        if comp.side not in self._pos:
            raise NotMember(f"complement of {h!r} is missing from the pocset")
        return self.members[self._pos[comp.side]]

    def complement_index(self, i: int) -> int:
        comp = self.graph.vertex_set - self.members[i].side
        if comp not in self._pos:
            raise NotMember("complement missing")
        return self._pos[comp]

    def nontrivial(self) -> tuple[HalfSpace, ...]:
        return tuple(h for h in self.members if not h.is_trivial)

    def pairs(self) -> tuple[tuple[HalfSpace, HalfSpace], ...]:
        """Non-trivial complement pairs, each once, lower member first."""
        out = []
        for i, h in enumerate(self.members):
            if h.is_trivial:
                continue
            j = self.complement_index(i)
            if i < j:
                out.append((h, self.members[j]))
        return tuple(out)

    # -- inclusion structure (memoised) --------------------------------------

    def _inclusions(self) -> tuple[tuple[frozenset[int], ...], tuple[frozenset[int], ...]]:
        if self._supersets is None:
            sups: list[frozenset[int]] = []
            subs: list[set[int]] = [set() for _ in self.members]
            for i, h in enumerate(self.members):
                up = set()
                for j, k in enumerate(self.members):
                    if h.side <= k.side:
                        up.add(j)
                        if i != j:
                            subs[j].add(i)
                sups.append(frozenset(up))
            self._supersets = tuple(sups)
            self._strict_subsets = tuple(frozenset(s) for s in subs)
        return self._supersets, self._strict_subsets

    def supersets_of(self, i: int) -> frozenset[int]:
        """Member indices j with side_i <= side_j (including i itself)."""
        return self._inclusions()[0][i]

    def strict_subsets_of(self, i: int) -> frozenset[int]:
        return self._inclusions()[1][i]


# -- enumeration -------------------------------------------------------------


def _mask_connected(mask: int, adj: list[int]) -> bool:
    if mask == 0:
        return False
    seen = mask & -mask
    frontier = seen
    while frontier:
        nxt = 0
        mm = frontier
        while mm:
            b = mm & -mm
            mm ^= b
            nxt |= adj[b.bit_length() - 1]
        nxt &= mask & ~seen
        seen |= nxt
        frontier = nxt
    return seen == mask


def _mask_components(mask: int, adj: list[int]) -> list[int]:
    comps = []
    rest = mask
    while rest:
        start = rest & -rest
        seen = start
        frontier = start
        while frontier:
            nxt = 0
            mm = frontier
            while mm:
                b = mm & -mm
                mm ^= b
                nxt |= adj[b.bit_length() - 1]
            nxt &= mask & ~seen
            seen |= nxt
            frontier = nxt
        comps.append(seen)
        rest &= ~seen
    return comps


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        b = mask & -mask
        mask ^= b
        yield b.bit_length() - 1


def _enumerate_cuts_exhaustive(g: FiniteGraph, R: int, budget: int) -> list[frozenset[str]]:
    n = len(g.vertices)
    total = (1 << n) - 2
    if total > budget:
        raise BudgetExceeded(
            f"exhaustive enumeration needs {total} candidates, budget is {budget}"
        )
    idx = g.index
    adj = [0] * n
    for u, v in g.edges:
        adj[idx[u]] |= 1 << idx[v]
        adj[idx[v]] |= 1 << idx[u]
    dmat = [[g.distance(x, y) for y in g.vertices] for x in g.vertices]
    full = (1 << n) - 1
    sides: list[frozenset[str]] = []
    for m in range(1, full):
        if not _mask_connected(m, adj):
            continue
        comp = full ^ m
        if not _mask_connected(comp, adj):
            continue
        bnd = [i for i in _iter_bits(m) if adj[i] & comp]
        bnd += [i for i in _iter_bits(comp) if adj[i] & m]
        ok = True
        for a in range(len(bnd)):
            row = dmat[bnd[a]]
            for b in range(a + 1, len(bnd)):
                if row[bnd[b]] > R:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            sides.append(frozenset(g.vertices[i] for i in _iter_bits(m)))
    return sides


def _enumerate_cuts_anchored(g: FiniteGraph, R: int, budget: int) -> list[frozenset[str]]:
    """Grow candidate total boundaries inside balls, then two-colour them.

    A cut with boundary diameter at most R has its whole vertex boundary W
    inside the R-ball of the least W-vertex x.  Given a split of W into the
    inner and outer rim, every component of the graph minus W must attach to
    exactly one rim, which reconstructs the cut; invalid splits are rejected
    by the same predicate the exhaustive path uses.
    """
    n = len(g.vertices)
    idx = g.index
    adj = [0] * n
    for u, v in g.edges:
        adj[idx[u]] |= 1 << idx[v]
        adj[idx[v]] |= 1 << idx[u]
    full = (1 << n) - 1
    count = 0
    found: set[int] = set()

    def spend(units: int) -> None:
        nonlocal count
        count += units
        if count > budget:
            raise BudgetExceeded(f"cut enumeration exceeded budget {budget}")

    for xi, x in enumerate(g.vertices):
        dx = g.distances_from(x)
        cand = [idx[v] for v in g.vertices if dx[v] <= R and idx[v] > xi]
        local_dist = {c: g.distances_from(g.vertices[c]) for c in cand}

        # W grows as a sorted index list; pairwise diameter pruned on the fly.
        stack: list[tuple[list[int], int]] = [([xi], 0)]
        while stack:
            w_list, pos = stack.pop()
            spend(1)
            _process_boundary_candidate(adj, full, w_list, xi, found, spend)
            for k in range(pos, len(cand)):
                c = cand[k]
                dc = local_dist[c]
                if all(dc[g.vertices[w]] <= R for w in w_list):
                    stack.append((w_list + [c], k + 1))

    return [frozenset(g.vertices[i] for i in _iter_bits(m)) for m in sorted(found)]


def _process_boundary_candidate(
    adj: list[int],
    full: int,
    w_list: list[int],
    anchor: int,
    found: set[int],
    spend,
) -> None:
    w_mask = 0
    for w in w_list:
        w_mask |= 1 << w
    rest = full & ~w_mask
    comps = _mask_components(rest, adj) if rest else []

    # Vertices of W touched by one outside component must share a side.
    parent = list(range(len(w_list)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    pos_of = {w: i for i, w in enumerate(w_list)}
    touches: list[int] = []
    for comp in comps:
        touch = 0
        for ci in _iter_bits(comp):
            touch |= adj[ci] & w_mask
        touches.append(touch)
        bits = list(_iter_bits(touch))
        a0 = find(pos_of[bits[0]])
        for b in bits[1:]:
            parent[find(pos_of[b])] = a0

    groups: dict[int, list[int]] = {}
    for i, w in enumerate(w_list):
        groups.setdefault(find(i), []).append(w)
    group_list = sorted(groups.values(), key=lambda ws: ws[0])
    anchor_gi = next(i for i, ws in enumerate(group_list) if anchor in ws)
    free = [i for i in range(len(group_list)) if i != anchor_gi]

    for choice in range(1 << len(free)):
        spend(1)
        in_mask = 0
        for w in group_list[anchor_gi]:
            in_mask |= 1 << w
        for bit, gi in enumerate(free):
            if choice >> bit & 1:
                for w in group_list[gi]:
                    in_mask |= 1 << w
        out_mask = w_mask & ~in_mask
        # Every inner rim vertex needs an outer rim neighbour and conversely.
        if any(not (adj[w] & out_mask) for w in _iter_bits(in_mask)):
            continue
        if any(not (adj[w] & in_mask) for w in _iter_bits(out_mask)):
            continue
        h_mask = in_mask
        ok = True
        for comp, touch in zip(comps, touches):
            if touch & in_mask and touch & out_mask:
                ok = False
                break
            if touch & in_mask:
                h_mask |= comp
        if not ok:
            continue
        comp_mask = full & ~h_mask
        if h_mask == 0 or comp_mask == 0:
            continue
        if not _mask_connected(h_mask, adj):
            continue
        if not _mask_connected(comp_mask, adj):
            continue
        found.add(h_mask)
        found.add(comp_mask)


def enumerate_cuts(
    g: FiniteGraph,
    R: int,
    budget: int = DEFAULT_SUBSET_BUDGET,
    method: str | None = None,
) -> Pocset:
    """All cuts whose total vertex boundary has diameter at most R.

    Returns the complement-closed pocset with the trivial pair adjoined,
    members in canonical order.  Diameters use the ambient graph metric.
    The exhaustive subset scan runs up to ``EXHAUSTIVE_LIMIT`` vertices and
    doubles as the oracle for the anchored path used above it.
    """
    if R < 0:
        raise ValidationError("R must be non-negative")
    if method is None:
        n = len(g.vertices)
        affordable = (1 << n) - 2 <= budget
        method = "exhaustive" if n <= EXHAUSTIVE_LIMIT and affordable else "anchored"
    if method == "exhaustive":
        sides = _enumerate_cuts_exhaustive(g, R, budget)
    elif method == "anchored":
        sides = _enumerate_cuts_anchored(g, R, budget)
    else:
        raise ValidationError(f"unknown enumeration method {method!r}")
    return Pocset.closed(g, sides)


# -- order-theoretic queries ---------------------------------------------------


def is_nested(h: HalfSpace, k: HalfSpace) -> bool:
    """True when one of the four corner intersections is empty."""
    if h.graph is not k.graph:
        raise GraphMismatch("half-spaces live on different graphs")
    hs, ks = h.side, k.side
    if not (hs & ks) or hs <= ks or ks <= hs:
        return True
    return len(hs | ks) == len(h.graph.vertex_set)


@dataclass(frozen=True)
class SeparationProfile:
    """Per-pair separator counts and per-vertex boundary incidences.

    ``pair_counts[(x, y)]`` is the one-sided count of members containing x
    but not y (x the lower-ordered vertex); on a complement-closed pocset the
    count from the other side is identical.
    """

    pair_counts: dict[tuple[str, str], int]
    incidence: dict[str, int]
    max_pair_count: int
    max_incidence: int


def separation_profile(p: Pocset) -> SeparationProfile:
    g = p.graph
    verts = g.vertices
    nontrivial = [h.side for h in p.members if not h.is_trivial]
    pair_counts: dict[tuple[str, str], int] = {}
    for i, x in enumerate(verts):
        for y in verts[i + 1 :]:
            pair_counts[(x, y)] = sum(1 for s in nontrivial if x in s and y not in s)
    incidence = {v: 0 for v in verts}
    for h in p.members:
        if h.is_trivial:
            continue
        for v in h.vertex_boundary():
            incidence[v] += 1
    return SeparationProfile(
        pair_counts=pair_counts,
        incidence=incidence,
        max_pair_count=max(pair_counts.values(), default=0),
        max_incidence=max(incidence.values(), default=0),
    )


def non_nested_neighbors(p: Pocset, h: HalfSpace) -> list[HalfSpace]:
    """All members not nested with h, in member order."""
    p.index_of(h)
    return [k for k in p.members if not is_nested(h, k)]


@dataclass(frozen=True)
class BlockPartition:
    """Partition of the vertices by half-space membership signature."""

    blocks: tuple[frozenset[str], ...]
    index: dict[str, int]

    def block_of(self, v: str) -> frozenset[str]:
        return self.blocks[self.index[v]]


def h_blocks(p: Pocset) -> BlockPartition:
    g = p.graph
    sig_to_verts: dict[frozenset[int], list[str]] = {}
    for v in g.vertices:
        sig = frozenset(i for i, h in enumerate(p.members) if v in h.side)
        sig_to_verts.setdefault(sig, []).append(v)
    blocks = sorted(
        (frozenset(vs) for vs in sig_to_verts.values()),
        key=lambda b: min(g.index[v] for v in b),
    )
    index: dict[str, int] = {}
    for i, b in enumerate(blocks):
        for v in b:
            index[v] = i
    return BlockPartition(blocks=tuple(blocks), index=index)


def successors(p: Pocset, h: HalfSpace) -> list[HalfSpace]:
    """Immediate successors of h among the non-trivial members."""
    p.index_of(h)
    if h.is_trivial:
        raise TrivialInput("successors are only defined for non-trivial members")
    above = [k for k in p.members if not k.is_trivial and h.side < k.side]
    out = []
    for k in above:
        if not any(h.side < m.side < k.side for m in above):
            out.append(k)
    return out


@dataclass(frozen=True)
class DensityReport:
    """The two finiteness quantities of the density criterion.

    On finite graphs both are trivially finite; the point of the report is
    the actual numbers, which can be compared across truncation radii.
    """

    max_block_size: int
    max_successor_count: int
    block_sizes: tuple[int, ...]
    successor_counts: tuple[tuple[tuple[str, ...], int], ...]


def density_criterion(p: Pocset) -> DensityReport:
    blocks = h_blocks(p)
    sizes = tuple(len(b) for b in blocks.blocks)
    counts = []
    g = p.graph
    for h in p.members:
        if h.is_trivial:
            continue
        key = tuple(sorted(h.side, key=g.index.__getitem__))
        counts.append((key, len(successors(p, h))))
    return DensityReport(
        max_block_size=max(sizes, default=0),
        max_successor_count=max((c for _, c in counts), default=0),
        block_sizes=sizes,
        successor_counts=tuple(counts),
    )


def connectedize(g: FiniteGraph, h: HalfSpace) -> list[HalfSpace]:
    """Connected co-connected repairs of a half-space.

    Take a component of the side, then the complement of one component of
    that component's complement.  Every output is a cut whose inward edge
    boundary sits inside the original's.
    """
    if h.graph is not g:
        raise GraphMismatch("half-space lives on a different graph")
    if h.is_trivial:
        raise TrivialInput("connectedize needs a non-trivial half-space")
    full = g.vertex_set
    original_ie = h.inward_edges()
    out: list[HalfSpace] = []
    seen: set[frozenset[str]] = set()
    for h0 in induced_components(g, h.side):
        for c in induced_components(g, full - h0):
            side = full - c
            if side in seen:
                continue
            seen.add(side)
            repaired = HalfSpace(side, g)
            if not repaired.is_cut():
                raise InternalInvariantError("repaired half-space is not a cut")
            if not repaired.inward_edges() <= original_ie:
                raise InternalInvariantError(
                    "repaired boundary escaped the original boundary"
                )
            out.append(repaired)
    out.sort(key=HalfSpace.sort_key)
    return out


def validate_pocset(p: Pocset, require_cuts: bool = False) -> list[str]:
    """Report structural violations; an empty list means the pocset is valid."""
    violations: list[str] = []
    g = p.graph
    full = g.vertex_set

    def fmt(side: frozenset[str]) -> str:
        return "{" + ",".join(sorted(side, key=g.index.__getitem__)) + "}"

    if frozenset() not in p:
        violations.append("missing trivial member {}")
    if full not in p:
        violations.append(f"missing trivial member {fmt(full)}")
    for h in p.members:
        comp = full - h.side
        if comp not in p:
            violations.append(f"missing complement {fmt(comp)} of {fmt(h.side)}")
    if require_cuts:
        for h in p.members:
            if h.is_trivial:
                continue
            if not is_connected_side(g, h.side):
                violations.append(f"disconnected side {fmt(h.side)}")
            elif not is_connected_side(g, full - h.side):
                violations.append(f"disconnected complement of {fmt(h.side)}")
    return violations


def is_connected_side(g: FiniteGraph, side: frozenset[str]) -> bool:
    return bool(side) and len(induced_components(g, side)) == 1


# -- JSON ----------------------------------------------------------------------


def pocset_to_json(p: Pocset) -> dict:
    """Sides of the non-trivial members, sorted, trivial pair implicit."""
    g = p.graph
    return {
        "sides": [
            sorted(h.side, key=g.index.__getitem__) for h in p.members if not h.is_trivial
        ]
    }


def pocset_from_json(g: FiniteGraph, doc: dict) -> Pocset:
    sides = [frozenset(s) for s in doc["sides"]]
    trivial = [frozenset(), g.vertex_set]
    p = Pocset(g, sides + trivial)
    violations = validate_pocset(p)
    if violations:
        raise ValidationError("; ".join(violations))
    return p
