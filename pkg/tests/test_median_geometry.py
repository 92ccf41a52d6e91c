from __future__ import annotations

import itertools
import random

import pytest

from corpus import MEDIAN_GRAPHS, load_graph
from oracles import iterated_median_hull, projection_oracle, q3_median_oracle

from medianforge import (
    check_median,
    cone,
    convex_halfspaces,
    convex_hull,
    helly_witness,
    hyperplanes,
    interval,
    median,
    non_nested_witness,
    project,
    roundtrip,
    separating_count,
)
from medianforge.errors import (
    EmptyInput,
    NotConvex,
    NotDisjoint,
    NotHalfSpace,
    NotMedianGraph,
    PairwiseEmpty,
)

# -- check_median -------------------------------------------------------------


def test_trees_are_median():
    for name in ("p2", "p5", "k13"):
        assert check_median(load_graph(name)).verdict


def test_c6_counterexample():
    cert = check_median(load_graph("c6"))
    assert not cert.verdict
    assert cert.counterexample == ("v0", "v2", "v4")
    assert cert.intersection == frozenset()


def test_c4_is_median():
    assert check_median(load_graph("c4")).verdict


def test_median_corpus_all_median():
    for name in MEDIAN_GRAPHS:
        assert check_median(load_graph(name)).verdict, name


# -- median -----------------------------------------------------------------------


def test_median_examples():
    q3 = load_graph("q3")
    assert median(q3, "000", "011", "101") == "001"
    assert median(q3, "000", "000", "111") == "000"
    p3 = load_graph("p3")
    assert median(p3, "a", "b", "c") == "b"


def test_median_matches_coordinate_oracle():
    q3 = load_graph("q3")
    for x, y, z in itertools.product(q3.vertices, repeat=3):
        assert median(q3, x, y, z) == q3_median_oracle(x, y, z)


def test_median_rejects_nonmedian():
    with pytest.raises(NotMedianGraph):
        median(load_graph("c6"), "v0", "v2", "v4")


# -- project -------------------------------------------------------------------------


def test_project_examples():
    q3 = load_graph("q3")
    assert project(q3, {"000", "011"}, "111") == "011"
    c4 = load_graph("c4")
    assert project(c4, {"tl"}, "br") == "tl"
    assert project(c4, {"tl", "tr"}, "tl") == "tl"
    with pytest.raises(EmptyInput):
        project(q3, set(), "000")


def test_project_matches_oracle_small_sets():
    for name in ("q3", "c4", "grid3"):
        g = load_graph(name)
        verts = list(g.vertices)
        for k in (1, 2, 3):
            for combo in itertools.combinations(verts, k):
                A = frozenset(combo)
                for x in verts:
                    assert project(g, A, x) == projection_oracle(g, A, x)


def test_project_scan_order_independent():
    g = load_graph("grid3")
    rng = random.Random(7)
    verts = list(g.vertices)
    for _ in range(40):
        A = frozenset(rng.sample(verts, rng.randint(1, 4)))
        x = rng.choice(verts)
        base = project(g, A, x)
        # projecting from any reordering must agree
        for _ in range(3):
            shuffled = list(A)
            rng.shuffle(shuffled)
            relabeled = project(g, frozenset(shuffled), x)
            assert relabeled == base


def test_projection_stability_and_idempotence():
    for name in ("q3", "grid3", "p5"):
        g = load_graph(name)
        verts = list(g.vertices)
        rng = random.Random(13)
        for _ in range(25):
            A = frozenset(rng.sample(verts, rng.randint(1, 3)))
            x = rng.choice(verts)
            px = project(g, A, x)
            assert project(g, A, px) == px
            for y in interval(g, x, px):
                assert project(g, A, y) == px


def test_projection_over_hull():
    for name in ("q3", "grid3"):
        g = load_graph(name)
        rng = random.Random(3)
        verts = list(g.vertices)
        for _ in range(20):
            A = frozenset(rng.sample(verts, rng.randint(1, 3)))
            hull = convex_hull(g, A)
            for x in verts:
                assert project(g, A, x) == project(g, hull, x)


def test_projection_is_median_homomorphism():
    for name in ("q3", "grid3", "c4"):
        g = load_graph(name)
        rng = random.Random(11)
        verts = list(g.vertices)
        for _ in range(25):
            A = frozenset(rng.sample(verts, rng.randint(1, 3)))
            x, y, z = (rng.choice(verts) for _ in range(3))
            lhs = project(g, A, median(g, x, y, z))
            rhs = median(g, *(project(g, A, w) for w in (x, y, z)))
            assert lhs == rhs


# -- hyperplanes ------------------------------------------------------------------------


def test_hyperplane_examples():
    p3 = load_graph("p3")
    assert [len(h.edges) for h in hyperplanes(p3)] == [1, 1]
    c4 = load_graph("c4")
    assert [len(h.edges) for h in hyperplanes(c4)] == [2, 2]
    q3 = load_graph("q3")
    assert [len(h.edges) for h in hyperplanes(q3)] == [4, 4, 4]


def test_hyperplanes_reject_nonmedian():
    with pytest.raises(NotMedianGraph):
        hyperplanes(load_graph("c6"))


def test_hyperplane_sides_are_cone_classes():
    for name in ("p4", "c4", "q3", "grid3", "k13"):
        g = load_graph(name)
        by_edge = {}
        for h in hyperplanes(g):
            for e in h.edges:
                by_edge[e] = set(h.sides)
        for u, v in g.edges:
            assert by_edge[(u, v)] == {cone(g, u, v), cone(g, v, u)}


def test_every_edge_on_unique_hyperplane():
    for name in MEDIAN_GRAPHS:
        g = load_graph(name)
        seen = {}
        for i, h in enumerate(hyperplanes(g)):
            for e in h.edges:
                assert e not in seen, name
                seen[e] = i
        assert len(seen) == len(g.edges), name


# -- convex halfspaces ---------------------------------------------------------------------


def test_convex_halfspaces_examples():
    p3 = load_graph("p3")
    p = convex_halfspaces(p3)
    assert {h.side for h in p.nontrivial()} == {
        frozenset({"a"}),
        frozenset({"b", "c"}),
        frozenset({"a", "b"}),
        frozenset({"c"}),
    }
    c4 = load_graph("c4")
    assert len(convex_halfspaces(c4).nontrivial()) == 4
    p2 = load_graph("p2")
    assert {h.side for h in convex_halfspaces(p2).nontrivial()} == {
        frozenset({"a"}),
        frozenset({"b"}),
    }


# -- nestedness witness ------------------------------------------------------------------------


def test_witness_c4_square():
    c4 = load_graph("c4")
    w = non_nested_witness(c4, frozenset({"tl", "tr"}), frozenset({"tl", "bl"}))
    assert not w.nested
    assert set(w.square) == set(c4.vertices)
    a, b, c, d = w.square
    assert c4.has_edge(a, b) and c4.has_edge(b, c)
    assert c4.has_edge(c, d) and c4.has_edge(d, a)


def test_witness_nested_p3():
    p3 = load_graph("p3")
    w = non_nested_witness(p3, frozenset({"a"}), frozenset({"a", "b"}))
    assert w.nested
    assert w.empty_corners  # {a} minus {a,b} is empty


def test_witness_q3():
    q3 = load_graph("q3")
    h = frozenset(v for v in q3.vertices if v[0] == "1")
    k = frozenset(v for v in q3.vertices if v[1] == "1")
    w = non_nested_witness(q3, h, k)
    assert not w.nested
    labels = {(int(v in h), int(v in k)) for v in w.square}
    assert len(labels) == 4


def test_witness_rejects_nonhalfspace():
    c4 = load_graph("c4")
    with pytest.raises(NotHalfSpace):
        non_nested_witness(c4, frozenset({"tl", "br"}), frozenset({"tl", "bl"}))


# -- separating count ------------------------------------------------------------------------------


def test_separating_count_examples():
    c4 = load_graph("c4")
    count, matches = separating_count(c4, {"tl"}, {"br"})
    assert count == 2
    assert {frozenset(m) for m in matches} == {
        frozenset({"tl", "tr"}),
        frozenset({"tl", "bl"}),
    }
    q3 = load_graph("q3")
    assert separating_count(q3, {"000"}, {"111"})[0] == 3
    # adjacent vertices have a unique separator
    for u, v in q3.edges[:4]:
        assert separating_count(q3, {u}, {v})[0] == 1


def test_separating_count_validation():
    c4 = load_graph("c4")
    with pytest.raises(NotDisjoint):
        separating_count(c4, {"tl"}, {"tl", "tr"})
    with pytest.raises(NotConvex):
        separating_count(c4, {"tl", "br"}, {"tr"})


# -- helly -----------------------------------------------------------------------------------------


def test_helly_examples():
    c4 = load_graph("c4")
    v = helly_witness(c4, [{"tl", "tr"}, {"tl", "bl"}, interval(c4, "tl", "br")])
    assert v == "tl"
    q3 = load_graph("q3")
    h = [frozenset(v for v in q3.vertices if v[i] == "0") for i in range(3)]
    assert helly_witness(q3, h) == "000"
    assert helly_witness(q3, [{"010"}, {"010"}, {"010"}]) == "010"


def test_helly_validation():
    q3 = load_graph("q3")
    with pytest.raises(PairwiseEmpty):
        helly_witness(q3, [{"000"}, {"111"}])
    with pytest.raises(NotConvex):
        helly_witness(q3, [{"000", "111"}])


def test_helly_random_families():
    rng = random.Random(5)
    for name in ("q3", "grid3"):
        g = load_graph(name)
        verts = list(g.vertices)
        trials = 0
        while trials < 20:
            fams = []
            for _ in range(rng.randint(3, 5)):
                pick = rng.sample(verts, rng.randint(1, 2))
                fams.append(convex_hull(g, frozenset(pick)))
            if any(not (a & b) for a in fams for b in fams):
                continue
            trials += 1
            v = helly_witness(g, fams)
            assert all(v in f for f in fams)


# -- hull via medians -------------------------------------------------------------------------------


def test_hull_equals_iterated_medians():
    rng = random.Random(23)
    for name in ("q3", "grid3", "p5"):
        g = load_graph(name)
        verts = list(g.vertices)
        for _ in range(10):
            A = frozenset(rng.sample(verts, rng.randint(1, 3)))
            assert convex_hull(g, A) == iterated_median_hull(g, A)


# -- roundtrip ---------------------------------------------------------------------------------------


def test_roundtrip_examples():
    for name in ("p3", "q3", "p2"):
        g = load_graph(name)
        result = roundtrip(g)
        assert len(result.dual.graph) == len(g)


def test_roundtrip_median_corpus():
    for name in MEDIAN_GRAPHS:
        g = load_graph(name)
        result = roundtrip(g)
        assert len(result.vertex_to_orientation) == len(g), name


def test_non_nested_boundaries_intersect():
    from medianforge.graph_core import boundary as bd
    from medianforge.cuts_pocset import is_nested, HalfSpace

    for name in ("c4", "q3", "grid3"):
        g = load_graph(name)
        sides = [h.sides[0] for h in hyperplanes(g)]
        for a in sides:
            for b in sides:
                ha, hb = HalfSpace(a, g), HalfSpace(b, g)
                if not is_nested(ha, hb):
                    assert bd(g, a, "v") & bd(g, b, "v")
