"""Orientations of a pocset and the dual median graph they form.

An orientation picks one side of every complement pair and is closed upwards
under inclusion.  Vertices of the dual graph are orientations, edges flip a
single inclusion-minimal member, and the whole graph is recovered by breadth
first search from the principal orientations.  On finite pocsets every
orientation is reachable this way and the antichain of minimal non-trivial
chosen members is a faithful, canonical encoding.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    BudgetExceeded,
    Incomplete,
    Inconsistent,
    InternalInvariantError,
    InvalidOrientation,
    NotAntichain,
    PocsetMismatch,
    ValidationError,
)
from .cuts_pocset import HalfSpace, Pocset, validate_pocset
from .graph_core import FiniteGraph

DEFAULT_ORIENTATION_BUDGET = 10**5

# check_median is run as a postcondition of build_dual up to this size; the
# exhaustive triple check has the same documented cap.
MEDIAN_CHECK_LIMIT = 300


class Orientation:
    """An upward-closed choice of one side per complement pair.

    Stored as the frozen set of chosen member indices of its pocset; the
    canonical key (sorted indices of minimal non-trivial chosen members)
    doubles as the identity used for dual-graph vertex names.
    """

    __slots__ = ("pocset", "chosen_indices", "_key")

    def __init__(self, pocset: Pocset, chosen_indices: frozenset[int]):
        self.pocset = pocset
        self.chosen_indices = chosen_indices
        self._key: tuple[int, ...] | None = None

    @property
    def chosen(self) -> frozenset[HalfSpace]:
        return frozenset(self.pocset.member_at(i) for i in self.chosen_indices)

    @property
    def key(self) -> tuple[int, ...]:
        if self._key is None:
            p = self.pocset
            minimal = []
            for i in self.chosen_indices:
                if p.member_at(i).is_trivial:
                    continue
                if not (p.strict_subsets_of(i) & self.chosen_indices):
                    minimal.append(i)
            self._key = tuple(sorted(minimal))
        return self._key

    def key_string(self) -> str:
        p = self.pocset
        idx = p.graph.index
        parts = [
            ",".join(sorted(p.member_at(i).side, key=idx.__getitem__)) for i in self.key
        ]
        return "{" + ";".join(parts) + "}"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Orientation)
            and self.pocset is other.pocset
            and self.chosen_indices == other.chosen_indices
        )

    def __hash__(self) -> int:
        return hash(self.chosen_indices)

    def __repr__(self) -> str:
        return f"Orientation({self.key_string()})"


def _check_same_pocset(u: Orientation, v: Orientation) -> None:
    if u.pocset is not v.pocset:
        raise PocsetMismatch("orientations belong to different pocsets")


def validate_orientation(p: Pocset, u: Orientation) -> None:
    """Raise unless u chooses exactly one side per pair, upward-closed."""
    if u.pocset is not p:
        raise InvalidOrientation("orientation belongs to a different pocset")
    chosen = u.chosen_indices
    for h, _ in p.pairs():
        i = p.index_of(h)
        j = p.complement_index(i)
        if (i in chosen) == (j in chosen):
            raise InvalidOrientation("orientation must pick exactly one side per pair")
    trivial_full = p.index_of(HalfSpace(p.graph.vertex_set, p.graph))
    if trivial_full not in chosen:
        raise InvalidOrientation("the full side of the trivial pair must be chosen")
    for i in chosen:
        if not p.supersets_of(i) <= chosen:
            raise InvalidOrientation("orientation is not upward-closed")


def principal_orientation(p: Pocset, x: str) -> Orientation:
    """All members containing x; the blocks of this map are the H-blocks."""
    p.graph.check_vertex(x)
    chosen = frozenset(i for i, h in enumerate(p.members) if x in h.side)
    return Orientation(p, chosen)


def minimal_elements(u: Orientation) -> list[HalfSpace]:
    """The antichain of minimal non-trivial chosen members (canonical key)."""
    return [u.pocset.member_at(i) for i in u.key]


def decode_antichain(p: Pocset, antichain: Sequence[HalfSpace]) -> Orientation:
    """Rebuild the orientation whose minimal non-trivial members are given.

    The upward closure of the antichain must already decide every pair:
    a pair with both sides implied is ``Inconsistent``, a pair with neither
    is ``Incomplete``.
    """
    indices = []
    for h in antichain:
        i = p.index_of(h)
        if p.member_at(i).is_trivial:
            raise NotAntichain("trivial members can never be minimal")
        indices.append(i)
    for a in range(len(indices)):
        for b in range(a + 1, len(indices)):
            sa = p.member_at(indices[a]).side
            sb = p.member_at(indices[b]).side
            if sa <= sb or sb <= sa:
                raise NotAntichain("antichain contains a comparable pair")
    closure: set[int] = set()
    for i in indices:
        closure |= p.supersets_of(i)
    closure.add(p.index_of(HalfSpace(p.graph.vertex_set, p.graph)))
    for h, _ in p.pairs():
        i = p.index_of(h)
        j = p.complement_index(i)
        if i in closure and j in closure:
            raise Inconsistent(
                "upward closure selects both sides of a complement pair"
            )
        if i not in closure and j not in closure:
            raise Incomplete("antichain leaves a complement pair undetermined")
    u = Orientation(p, frozenset(closure))
    if u.key != tuple(sorted(indices)):
        raise InternalInvariantError("decoded orientation changed its minimal set")
    return u


def orientation_neighbors(p: Pocset, u: Orientation) -> list[Orientation]:
    """Flip each minimal non-trivial chosen member, in member order."""
    validate_orientation(p, u)
    return _neighbors_unchecked(p, u)


def _neighbors_unchecked(p: Pocset, u: Orientation) -> list[Orientation]:
    out = []
    for i in u.key:
        j = p.complement_index(i)
        flipped = frozenset((u.chosen_indices - {i}) | {j})
        out.append(Orientation(p, flipped))
    return out


@dataclass
class DualMedianGraph:
    """The graph on orientations, with vertex names in canonical key order."""

    pocset: Pocset
    graph: FiniteGraph
    orientations: tuple[Orientation, ...]

    def orientation_of(self, name: str) -> Orientation:
        return self.orientations[self.graph.index[name]]

    def name_of(self, u: Orientation) -> str:
        return self.graph.vertices[self._position(u)]

    def _position(self, u: Orientation) -> int:
        name = u.key_string()
        if name not in self.graph.index:
            raise ValidationError("orientation is not a vertex of this dual")
        return self.graph.index[name]


def build_dual(
    p: Pocset, budget: int = DEFAULT_ORIENTATION_BUDGET
) -> DualMedianGraph:
    """Breadth-first closure of the principal orientations under single flips.

    For a finite pocset every orientation sits at finite flip distance from a
    principal one, so the closure is the full orientation space; the result
    is verified median (postcondition) whenever it is small enough for the
    exhaustive check.
    """
    violations = validate_pocset(p)
    if violations:
        raise ValidationError("pocset invalid: " + "; ".join(violations))

    seeds = []
    seen: dict[frozenset[int], Orientation] = {}
    for x in p.graph.vertices:
        u = principal_orientation(p, x)
        if u.chosen_indices not in seen:
            seen[u.chosen_indices] = u
            seeds.append(u)
    frontier = seeds
    edge_keys: set[frozenset[frozenset[int]]] = set()
    while frontier:
        nxt = []
        for u in frontier:
            for v in _neighbors_unchecked(p, u):
                if v.chosen_indices not in seen:
                    if len(seen) >= budget:
                        raise BudgetExceeded(
                            f"orientation count exceeded budget {budget}"
                        )
                    seen[v.chosen_indices] = v
                    nxt.append(v)
                edge_keys.add(frozenset((u.chosen_indices, v.chosen_indices)))
        frontier = nxt

    order = sorted(seen.values(), key=lambda u: u.key)
    names = [u.key_string() for u in order]
    if len(set(names)) != len(names):
        raise InternalInvariantError("canonical keys collided")
    pos = {u.chosen_indices: i for i, u in enumerate(order)}
    edge_pairs = sorted(sorted(pos[c] for c in ek) for ek in edge_keys)
    graph = FiniteGraph(names, [(names[i], names[j]) for i, j in edge_pairs])
    dual = DualMedianGraph(pocset=p, graph=graph, orientations=tuple(order))

    if len(graph) <= MEDIAN_CHECK_LIMIT:
        from .median_geometry import check_median

        cert = check_median(graph)
        if not cert.verdict:
            raise InternalInvariantError(
                f"dual graph failed the median check at {cert.counterexample}"
            )
    return dual


def dual_distance(u: Orientation, v: Orientation) -> int:
    """Half the symmetric difference of the chosen sets."""
    _check_same_pocset(u, v)
    diff = len(u.chosen_indices ^ v.chosen_indices)
    if diff % 2:
        raise InternalInvariantError("odd symmetric difference between orientations")
    return diff // 2


def dual_median(u: Orientation, v: Orientation, w: Orientation) -> Orientation:
    """Majority vote per complement pair."""
    _check_same_pocset(u, v)
    _check_same_pocset(v, w)
    a, b, c = u.chosen_indices, v.chosen_indices, w.chosen_indices
    m = Orientation(u.pocset, (a & b) | (b & c) | (a & c))
    try:
        validate_orientation(u.pocset, m)
    except InvalidOrientation as exc:
        raise InternalInvariantError(f"median of orientations invalid: {exc}") from exc
    return m


def dual_to_json(d: DualMedianGraph) -> dict:
    """Vertices as arrays of side arrays (canonical keys), edges as index pairs."""
    g = d.pocset.graph
    idx = g.index
    verts = []
    for u in d.orientations:
        verts.append(
            [sorted(d.pocset.member_at(i).side, key=idx.__getitem__) for i in u.key]
        )
    dual_idx = d.graph.index
    edges = sorted(
        [sorted((dual_idx[a], dual_idx[b])) for a, b in d.graph.edges]
    )
    return {"vertices": verts, "edges": edges}
