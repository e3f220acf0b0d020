"""Quasi-simple walk enumeration against brute-force DFS, and walk counting."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings

from walkmaps import (
    Dart,
    count_walks_of_length,
    enumerate_all_qswalks,
    enumerate_qswalks_of_length,
    is_quasi_simple,
    iter_walks_up_to,
    occurs,
    trivial,
)

from .fixtures import digon_graph, loop1_graph, triangle_graph
from .oracles import brute_walks, random_graph
from .strategies import graphs


def test_length_zero_bucket():
    g = triangle_graph()
    assert enumerate_qswalks_of_length(g, 0, 0, 0) == [trivial(g, 0)]
    assert enumerate_qswalks_of_length(g, 0, 0, 1) == []


def test_triangle_buckets():
    g = triangle_graph()
    cycle = enumerate_qswalks_of_length(g, 3, 0, 0)
    assert len(cycle) == 1
    assert cycle[0].steps == (Dart(0), Dart(1), Dart(2))
    one = enumerate_qswalks_of_length(g, 1, 0, 1)
    assert len(one) == 1 and one[0].steps == (Dart(0),)


def test_all_qswalks_examples():
    g = triangle_graph()
    assert [w.steps for w in enumerate_all_qswalks(g, 0, 0)] == [
        (),
        (Dart(0), Dart(1), Dart(2)),
    ]
    dig = digon_graph()
    assert [w.steps for w in enumerate_all_qswalks(dig, 0, 1)] == [(Dart(0),), (Dart(1),)]
    loop = loop1_graph()
    assert [w.steps for w in enumerate_all_qswalks(loop, 0, 0)] == [(), (Dart(0),)]


def _dfs_quasi_keys(g, x, y, symmetric=False):
    return {
        w.key()
        for w in brute_walks(g, g.node_count, x, y, symmetric)
        if is_quasi_simple(w)
    }


@given(graphs())
@settings(max_examples=40, deadline=None)
def test_matches_dfs_oracle(g):
    for x in range(g.node_count):
        for y in range(g.node_count):
            ours = enumerate_all_qswalks(g, x, y)
            keys = [w.key() for w in ours]
            assert len(keys) == len(set(keys)), "duplicate walks emitted"
            assert set(keys) == _dfs_quasi_keys(g, x, y)


def test_matches_dfs_oracle_symmetric():
    for g in (triangle_graph(), digon_graph(), loop1_graph()):
        for x in range(g.node_count):
            for y in range(g.node_count):
                ours = {w.key() for w in enumerate_all_qswalks(g, x, y, symmetric=True)}
                assert ours == _dfs_quasi_keys(g, x, y, symmetric=True)


@given(graphs())
@settings(max_examples=30, deadline=None)
def test_length_bound(g):
    for x in range(g.node_count):
        for y in range(g.node_count):
            for w in enumerate_all_qswalks(g, x, y):
                assert w.length <= g.node_count
            # no quasi-simple walk exists just above the bound either
            beyond = [
                w
                for w in brute_walks(g, g.node_count + 1, x, y)
                if w.length == g.node_count + 1 and is_quasi_simple(w)
            ]
            assert beyond == []


def test_recurrence_cardinality():
    rng = random.Random(7)
    for _ in range(10):
        g = random_graph(rng, max_nodes=4, max_edges=6)
        for x in range(g.node_count):
            for z in range(g.node_count):
                for m in range(g.node_count):
                    lhs = len(enumerate_qswalks_of_length(g, m + 1, x, z))
                    rhs = 0
                    for e in g.edges:
                        if e.source != x:
                            continue
                        rhs += sum(
                            1
                            for w in enumerate_qswalks_of_length(g, m, e.target, z)
                            if occurs(x, w) == 0
                        )
                    assert lhs == rhs


def test_enumeration_order_is_deterministic():
    g = digon_graph()
    walks = enumerate_all_qswalks(g, 0, 1)
    assert [str(w) for w in walks] == ["0:e0+", "0:e1+"]
    assert [w.length for w in enumerate_all_qswalks(g, 0, 0)] == sorted(
        w.length for w in enumerate_all_qswalks(g, 0, 0)
    )


def test_count_walks_examples():
    g = triangle_graph()
    assert count_walks_of_length(g, 0, 0, 0) == 1
    assert count_walks_of_length(g, 0, 0, 1) == 0
    assert count_walks_of_length(g, 3, 0, 0) == 1
    loop = loop1_graph()
    for k in range(7):
        assert count_walks_of_length(loop, k, 0, 0) == 1


def test_count_walks_rejects_negative_length():
    with pytest.raises(ValueError):
        count_walks_of_length(triangle_graph(), -1, 0, 0)


@given(graphs())
@settings(max_examples=30, deadline=None)
def test_count_matches_dfs_and_bounds_quasi(g):
    for x in range(g.node_count):
        for y in range(g.node_count):
            for n in range(4):
                expected = sum(
                    1 for w in brute_walks(g, n, x, y) if w.length == n
                )
                got = count_walks_of_length(g, n, x, y)
                assert got == expected
                assert got >= len(enumerate_qswalks_of_length(g, n, x, y))
            assert count_walks_of_length(g, 0, x, y) == len(
                enumerate_qswalks_of_length(g, 0, x, y)
            )


def test_iter_walks_up_to_matches_brute():
    g = triangle_graph()
    ours = [w.key() for w in iter_walks_up_to(g, 4, 0)]
    brute = [w.key() for w in brute_walks(g, 4, 0)]
    assert sorted(ours) == sorted(brute)
    assert len(ours) == len(set(ours))
