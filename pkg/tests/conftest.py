"""Shared helpers for building small instances in tests."""

from __future__ import annotations

import pytest

# One line per acceptance criterion, printed by pytest_terminal_summary so
# the verdicts stay visible even when test stdout is captured.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

from rrst.instance import CostTriple, Instance
from rrst.matroids import MatroidInstance, PartitionMatroid, UniformMatroid
from rrst.multigraph import MultiGraph
from rrst.rational import rat


def make_instance(n, pairs, triples, k) -> Instance:
    """Instance from endpoint pairs and (C, c, d) triples, ids 0..m-1."""
    edges = {i: tuple(p) for i, p in enumerate(pairs)}
    costs = {
        i: CostTriple(rat(C), rat(c), rat(d)) for i, (C, c, d) in enumerate(triples)
    }
    return Instance(graph=MultiGraph(range(n), edges), costs=costs, k=k)


def make_uniform_instance(m, r, triples, k) -> MatroidInstance:
    costs = {
        i: CostTriple(rat(C), rat(c), rat(d)) for i, (C, c, d) in enumerate(triples)
    }
    return MatroidInstance(matroid=UniformMatroid(frozenset(range(m)), r), costs=costs, k=k)


def make_partition_instance(parts, triples, k) -> MatroidInstance:
    """parts: list of (elements, cap); triples keyed by element id."""
    matroid = PartitionMatroid([(frozenset(els), cap) for els, cap in parts])
    costs = {e: CostTriple(rat(C), rat(c), rat(d)) for e, (C, c, d) in triples.items()}
    return MatroidInstance(matroid=matroid, costs=costs, k=k)


TRIANGLE_PAIRS = [(0, 1), (0, 2), (1, 2)]


@pytest.fixture
def triangle_unit():
    """K3 with C=c=1, d=0 everywhere."""
    return make_instance(3, TRIANGLE_PAIRS, [(1, 1, 0)] * 3, k=0)
