"""Shared fixture graphs and maps used across the suite.

LOOP1    one node with a self-loop (unique rotation, sphere).
DIGON    two nodes joined by parallel edges (sphere).
TRIANGLE directed 3-cycle; its degree-2 nodes admit a single rotation (sphere).
PATHLOOP x->y->x->z, the canonical rewriting example (graph only).
TORUS2   bouquet of two loops with the interleaved rotation (torus).
K4SPHERE complete graph on 4 nodes with a planar rotation (sphere).
"""

from __future__ import annotations

from pathlib import Path

from walkmaps import Dart, Graph, RotationMap, build_graph, build_rotation_map

DATA_DIR = Path(__file__).parent / "data"
GOLDEN_DIR = Path(__file__).parent / "golden"


def _d(edge: int, forward: bool = True) -> Dart:
    return Dart(edge, forward)


def loop1_graph() -> Graph:
    return build_graph(1, [(0, 0)])


def loop1_map() -> RotationMap:
    return build_rotation_map(loop1_graph(), {0: [_d(0), _d(0, False)]})


def digon_graph() -> Graph:
    return build_graph(2, [(0, 1), (0, 1)])


def digon_map() -> RotationMap:
    return build_rotation_map(
        digon_graph(), {0: [_d(0), _d(1)], 1: [_d(1, False), _d(0, False)]}
    )


def triangle_graph() -> Graph:
    return build_graph(3, [(0, 1), (1, 2), (2, 0)])


def triangle_map() -> RotationMap:
    return build_rotation_map(
        triangle_graph(),
        {0: [_d(0), _d(2, False)], 1: [_d(1), _d(0, False)], 2: [_d(2), _d(1, False)]},
    )


def pathloop_graph() -> Graph:
    return build_graph(3, [(0, 1), (1, 0), (0, 2)])


def torus2_graph() -> Graph:
    return build_graph(1, [(0, 0), (0, 0)])


def torus2_map() -> RotationMap:
    return build_rotation_map(
        torus2_graph(), {0: [_d(0), _d(1), _d(0, False), _d(1, False)]}
    )


def k4_graph() -> Graph:
    return build_graph(4, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)])


def k4sphere_map() -> RotationMap:
    return build_rotation_map(
        k4_graph(),
        {
            0: [_d(0), _d(3), _d(2, False)],
            1: [_d(1), _d(4), _d(0, False)],
            2: [_d(2), _d(5), _d(1, False)],
            3: [_d(5, False), _d(3, False), _d(4, False)],
        },
    )


def all_fixture_graphs() -> dict[str, Graph]:
    return {
        "LOOP1": loop1_graph(),
        "DIGON": digon_graph(),
        "TRIANGLE": triangle_graph(),
        "PATHLOOP": pathloop_graph(),
        "TORUS2": torus2_graph(),
        "K4SPHERE": k4_graph(),
    }


def all_fixture_maps() -> dict[str, RotationMap]:
    return {
        "LOOP1": loop1_map(),
        "DIGON": digon_map(),
        "TRIANGLE": triangle_map(),
        "TORUS2": torus2_map(),
        "K4SPHERE": k4sphere_map(),
    }


def spherical_fixture_maps() -> dict[str, RotationMap]:
    return {k: v for k, v in all_fixture_maps().items() if k != "TORUS2"}
