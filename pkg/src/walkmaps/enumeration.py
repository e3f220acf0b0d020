"""Exhaustive walk enumeration and counting.

Quasi-simple walks between two nodes form a finite set: no such walk is
longer than the node count, and the fixed-length buckets satisfy a
prepend-an-edge recurrence. Enumeration follows that recurrence directly,
so the output is complete and duplicate-free by construction. A separate
counter handles the unrestricted (infinite in total, finite per length)
walk population.

Order is deterministic everywhere: buckets by ascending length, walks
within a bucket lexicographic by (edge id, orientation) sequence.
"""

from __future__ import annotations

from typing import Callable, Iterator

from .graph import Graph, incident_darts, out_darts
from .walk import Walk, occurs, prepend, trivial


def _step_darts(g: Graph, x: int, symmetric: bool):
    return incident_darts(g, x) if symmetric else out_darts(g, x)


def _qs_bucket_fn(
    g: Graph, z: int, symmetric: bool
) -> Callable[[int, int], list[Walk]]:
    """Memoized fixed-length buckets of quasi-simple walks ending at ``z``.

    bucket(m, x) lists the quasi-simple walks of length m from x to z. The
    step case prepends each dart leaving x to each shorter walk that does
    not already visit x; the not-visits filter is applied here, at the use
    site, because it depends on the prepending dart's tail.
    """
    cache: dict[tuple[int, int], list[Walk]] = {}

    def bucket(m: int, x: int) -> list[Walk]:
        key = (m, x)
        if key in cache:
            return cache[key]
        if m == 0:
            result = [trivial(g, x, symmetric)] if x == z else []
        else:
            result = []
            for d in sorted(_step_darts(g, x, symmetric), key=lambda d: d.sort_key):
                for w in bucket(m - 1, g.head(d)):
                    if occurs(x, w) == 0:
                        result.append(prepend(d, w))
        cache[key] = result
        return result

    return bucket


def enumerate_qswalks_of_length(
    g: Graph, m: int, x: int, y: int, symmetric: bool = False
) -> list[Walk]:
    """Exactly the quasi-simple walks of length ``m`` from ``x`` to ``y``."""
    return list(_qs_bucket_fn(g, y, symmetric)(m, x))


def enumerate_all_qswalks(g: Graph, x: int, y: int, symmetric: bool = False) -> list[Walk]:
    """Every quasi-simple walk from ``x`` to ``y``.

    The union of the fixed-length buckets for lengths 0 through node_count;
    longer quasi-simple walks cannot exist, since a walk of length m visits
    m distinct non-final nodes.
    """
    bucket = _qs_bucket_fn(g, y, symmetric)
    out: list[Walk] = []
    for m in range(g.node_count + 1):
        out.extend(bucket(m, x))
    return out


def count_walks_of_length(g: Graph, n: int, x: int, y: int, symmetric: bool = False) -> int:
    """Number of all walks (quasi-simple or not) of length ``n`` from ``x`` to ``y``.

    Computed by the length recurrence: one length-0 walk when x == y, and a
    length n+1 walk is an edge from x to some k followed by a length-n walk
    from k to y.
    """
    if n < 0:
        raise ValueError("walk length must be non-negative")
    # counts[v] = number of walks of the current length from v to y
    counts = [1 if v == y else 0 for v in range(g.node_count)]
    for _ in range(n):
        nxt = [0] * g.node_count
        for v in range(g.node_count):
            for d in _step_darts(g, v, symmetric):
                nxt[v] += counts[g.head(d)]
        counts = nxt
    return counts[x]


def iter_walks_of_length(
    g: Graph, n: int, x: int, y: int | None = None, symmetric: bool = False
) -> Iterator[Walk]:
    """All walks of length exactly ``n`` from ``x`` (to ``y`` when given), lexicographic."""

    def rec(prefix_darts: tuple, at: int, remaining: int) -> Iterator[Walk]:
        if remaining == 0:
            if y is None or at == y:
                yield Walk(g, x, prefix_darts, symmetric)
            return
        for d in sorted(_step_darts(g, at, symmetric), key=lambda d: d.sort_key):
            yield from rec(prefix_darts + (d,), g.head(d), remaining - 1)

    yield from rec((), x, n)


def iter_walks_up_to(
    g: Graph, max_len: int, x: int, y: int | None = None, symmetric: bool = False
) -> Iterator[Walk]:
    """All walks of length at most ``max_len``, shortest first."""
    for n in range(max_len + 1):
        yield from iter_walks_of_length(g, n, x, y, symmetric)
