from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import CUT_INSTANCES, EDGE_LISTS, TRUNCATIONS, load_graph, load_truncation

from medianforge import build_dual, enumerate_cuts


@pytest.fixture(scope="session")
def graphs():
    """All corpus graphs by name (files and truncations)."""
    out = {name: load_graph(name) for name in EDGE_LISTS}
    out.update({name: load_graph(name) for name in TRUNCATIONS})
    return out


@pytest.fixture(scope="session")
def truncations():
    return {name: load_truncation(name) for name in TRUNCATIONS}


@pytest.fixture(scope="session")
def cut_corpus(graphs):
    """(graph, radius, pocset) per cut instance, built once."""
    out = {}
    for key, gname, radius in CUT_INSTANCES:
        g = graphs[gname]
        out[key] = (g, radius, enumerate_cuts(g, radius))
    return out


@pytest.fixture(scope="session")
def dual_corpus(cut_corpus):
    """Dual median graphs of every cut instance."""
    return {
        key: (g, radius, p, build_dual(p))
        for key, (g, radius, p) in cut_corpus.items()
    }
