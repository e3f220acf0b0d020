"""Walk homotopy on an embedded graph: certificates, search, sphericity.

Two walks with the same endpoints are homotopic when one deforms into the
other across faces: the generating move exchanges the two boundary walks
between a pair of positions on one face (with equal positions, the full
boundary loop exchanges with the trivial walk). Certificates are explicit
move sequences and every operation here keeps them replayable: reflexivity
is the empty certificate, symmetry reverses and flips a move list,
transitivity concatenates, and whiskering shifts move offsets.

The relation itself is only searched, never decided: bounded breadth-first
search produces certificates, and an exhausted search is kept apart from a
disproof. The independent negative signal is the Euler characteristic,
which for a connected map is 2 exactly on sphere embeddings.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from typing import Optional

from . import rewrite
from .embedding import Face, RotationMap, _ccw_steps, _cw_steps, euler_characteristic, trace_faces
from .enumeration import enumerate_all_qswalks, iter_walks_up_to
from .graph import Dart, is_connected
from .walk import Walk, _raw_walk, compose, prepend, single_step, split_at, suffix_from, trivial

CCW_TO_CW = "ccw_to_cw"
CW_TO_CCW = "cw_to_ccw"

SPHERICAL = "spherical"
NOT_SPHERICAL = "not_spherical"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True, slots=True)
class SearchBudget:
    """Limits for certificate search: walk length cap and visited-state cap."""

    max_len: int
    max_states: int = 200_000


def default_budget(m: RotationMap) -> SearchBudget:
    """Twice the node count plus the longest face boundary; 200k states."""
    longest = max((len(f) for f in trace_faces(m)), default=0)
    return SearchBudget(2 * m.graph.node_count + longest)


@dataclass(frozen=True, slots=True)
class HomotopyMove:
    """One boundary-walk exchange applied at a fixed offset.

    The segment between boundary positions ``a`` and ``b`` of ``face``,
    read in the source direction, is replaced in place by the
    opposite-direction segment; ``prefix_len`` is the number of walk steps
    preserved before the exchanged segment.
    """

    face: int
    a: int
    b: int
    prefix_len: int
    direction: str  # CCW_TO_CW | CW_TO_CCW

    def inverted(self) -> HomotopyMove:
        other = CW_TO_CCW if self.direction == CCW_TO_CW else CCW_TO_CW
        return replace(self, direction=other)


@dataclass(frozen=True, slots=True)
class HomotopyCertificate:
    """A replayable move sequence deforming ``source`` into ``target``."""

    source: Walk
    target: Walk
    moves: tuple[HomotopyMove, ...]


class SegmentMismatchError(ValueError):
    """A move's source segment is absent at the stated offset."""

    def __init__(self, offset: int, expected, found):
        self.offset = offset
        self.expected = tuple(expected)
        self.found = None if found is None else tuple(found)
        exp = ",".join(str(d) for d in self.expected) or "(empty)"
        got = "out of range" if found is None else (",".join(str(d) for d in self.found) or "(empty)")
        super().__init__(f"segment mismatch at offset {offset}: expected {exp}, found {got}")


def _move_segments(face: Face, move: HomotopyMove) -> tuple[tuple[Dart, ...], tuple[Dart, ...]]:
    cw = _cw_steps(face.boundary, move.a, move.b)
    ccw = _ccw_steps(face.boundary, move.a, move.b)
    return (ccw, cw) if move.direction == CCW_TO_CW else (cw, ccw)


def apply_hcollapse(m: RotationMap, w: Walk, move: HomotopyMove) -> Walk:
    """Apply one move to ``w``; endpoints are preserved.

    Requires the move's source-direction segment to sit at ``prefix_len``;
    otherwise a SegmentMismatchError reports expected versus found darts.
    """
    if w.graph != m.graph:
        raise ValueError("walk does not live on the map's graph")
    if not w.symmetric:
        raise ValueError("homotopy moves act on walks in the symmetrised graph")
    faces = trace_faces(m)
    if not (0 <= move.face < len(faces)):
        raise ValueError(f"no face {move.face}")
    face = faces[move.face]
    for pos in (move.a, move.b):
        if not (0 <= pos < len(face)):
            raise ValueError(f"anchor position {pos} outside boundary of face {move.face}")
    src, dst = _move_segments(face, move)
    i = move.prefix_len
    if i < 0 or i + len(src) > w.length:
        raise SegmentMismatchError(i, src, None)
    if w.steps[i : i + len(src)] != src:
        raise SegmentMismatchError(i, src, w.steps[i : i + len(src)])
    anchor = m.graph.tail(face.boundary[move.a])
    if w.node_at(i) != anchor:
        raise SegmentMismatchError(i, src, w.steps[i : i + len(src)])
    return Walk(m.graph, w.start, w.steps[:i] + dst + w.steps[i + len(src) :], symmetric=True)


def replay_certificate(m: RotationMap, cert: HomotopyCertificate) -> Walk:
    """Apply every move from the source; checks the result equals the target."""
    at = cert.source
    for mv in cert.moves:
        at = apply_hcollapse(m, at, mv)
        if (at.start, at.end) != (cert.source.start, cert.source.end):
            raise ValueError("certificate replay changed walk endpoints")
    if at.key() != cert.target.key():
        raise ValueError(f"certificate replays to {at}, not its target {cert.target}")
    return at


def reverse_certificate(cert: HomotopyCertificate) -> HomotopyCertificate:
    """Certificate for target ~ source: reversed move list with flipped directions."""
    return HomotopyCertificate(
        cert.target, cert.source, tuple(mv.inverted() for mv in reversed(cert.moves))
    )


def concat_certificates(c1: HomotopyCertificate, c2: HomotopyCertificate) -> HomotopyCertificate:
    """Certificate for transitivity; the first target must equal the second source."""
    if c1.target.key() != c2.source.key():
        raise ValueError("certificates do not chain: target differs from next source")
    return HomotopyCertificate(c1.source, c2.target, c1.moves + c2.moves)


def _chain(*certs: HomotopyCertificate) -> HomotopyCertificate:
    out = certs[0]
    for c in certs[1:]:
        out = concat_certificates(out, c)
    return out


def _hrefl(w: Walk) -> HomotopyCertificate:
    return HomotopyCertificate(w, w, ())


def whisker(
    left: Optional[Walk], cert: HomotopyCertificate, right: Optional[Walk]
) -> HomotopyCertificate:
    """Certificate for left . source . right ~ left . target . right.

    Move offsets shift by the left walk's length; a missing side composes
    with nothing. Raises ValueError when the walks do not line up.
    """
    if left is not None and left.end != cert.source.start:
        raise ValueError("left whisker walk does not end at the certificate's start")
    if right is not None and right.start != cert.source.end:
        raise ValueError("right whisker walk does not start at the certificate's end")
    shift = left.length if left is not None else 0

    def extend(w: Walk) -> Walk:
        if left is not None:
            w = compose(left, w)
        if right is not None:
            w = compose(w, right)
        return w

    moves = tuple(replace(mv, prefix_len=mv.prefix_len + shift) for mv in cert.moves)
    return HomotopyCertificate(extend(cert.source), extend(cert.target), moves)


class _MoveEngine:
    """Precomputed move table for one map: all segment exchange templates.

    Templates whose source segment is nonempty are indexed by their first
    dart; full-boundary insertions (the trivial source) by their anchor
    node. Successor walks skip re-validation: an exact segment match plus
    the shared endpoints of the two boundary routes guarantee adjacency.
    """

    def __init__(self, m: RotationMap):
        self.map = m
        self.graph = m.graph
        self.faces = trace_faces(m)
        # entry: (src, dst, face, a, b, direction)
        self.by_first_dart: dict[Dart, list[tuple]] = {}
        self.insertions_by_node: dict[int, list[tuple]] = {}
        for face in self.faces:
            boundary = face.boundary
            tails = [self.graph.tail(d) for d in boundary]
            for a in range(len(boundary)):
                for b in range(len(boundary)):
                    cw = _cw_steps(boundary, a, b)
                    ccw = _ccw_steps(boundary, a, b)
                    for src, dst, direction in ((ccw, cw, CCW_TO_CW), (cw, ccw, CW_TO_CCW)):
                        entry = (src, dst, face.id, a, b, direction)
                        if src:
                            self.by_first_dart.setdefault(src[0], []).append(entry)
                        else:
                            self.insertions_by_node.setdefault(tails[a], []).append(entry)

    def successors(self, w: Walk, max_len: int):
        """All (move, walk) pairs one move away, length-capped."""
        g = self.graph
        steps = w.steps
        length = len(steps)
        nodes = w.nodes()
        for i in range(length + 1):
            for src, dst, face, a, b, direction in self.insertions_by_node.get(nodes[i], ()):
                if length + len(dst) > max_len:
                    continue
                yield (
                    HomotopyMove(face, a, b, i, direction),
                    _raw_walk(g, w.start, steps[:i] + dst + steps[i:], True),
                )
        for i in range(length):
            entries = self.by_first_dart.get(steps[i])
            if not entries:
                continue
            for src, dst, face, a, b, direction in entries:
                ls = len(src)
                if i + ls > length or length - ls + len(dst) > max_len:
                    continue
                if steps[i : i + ls] == src:
                    yield (
                        HomotopyMove(face, a, b, i, direction),
                        _raw_walk(g, w.start, steps[:i] + dst + steps[i + ls :], True),
                    )


def _bfs(
    engine: _MoveEngine, w1: Walk, w2: Walk, budget: SearchBudget
) -> tuple[Optional[HomotopyCertificate], bool]:
    """Bidirectional search for a move path from ``w1`` to ``w2``.

    Returns (certificate, exhausted). ``exhausted`` is True when one side's
    reachable set within the length cap was fully explored, i.e. the failure
    is not a budget artifact. A certificate found is always replay-valid.
    """
    if w1.key() == w2.key():
        return _hrefl(w1), True
    # parent maps: state key -> (parent key, move from parent)
    sides = (
        {"origin": w1, "parents": {w1.key(): None}, "frontier": deque([w1])},
        {"origin": w2, "parents": {w2.key(): None}, "frontier": deque([w2])},
    )
    visited = 2

    def rebuild(meet_key, forward_side, backward_side, bridge_move, bridge_parent_key):
        # path on the forward side runs origin -> meet (bridge move included)
        moves_fwd: list[HomotopyMove] = [bridge_move]
        k = bridge_parent_key
        while sides[forward_side]["parents"][k] is not None:
            pk, mv = sides[forward_side]["parents"][k]
            moves_fwd.append(mv)
            k = pk
        moves_fwd.reverse()
        # path on the backward side runs its origin -> meet; invert it
        moves_bwd: list[HomotopyMove] = []
        k = meet_key
        while sides[backward_side]["parents"][k] is not None:
            pk, mv = sides[backward_side]["parents"][k]
            moves_bwd.append(mv.inverted())
            k = pk
        all_moves = tuple(moves_fwd) + tuple(moves_bwd)
        if forward_side == 0:
            return HomotopyCertificate(w1, w2, all_moves)
        flipped = tuple(mv.inverted() for mv in reversed(all_moves))
        return HomotopyCertificate(w1, w2, flipped)

    while sides[0]["frontier"] and sides[1]["frontier"]:
        side = 0 if len(sides[0]["frontier"]) <= len(sides[1]["frontier"]) else 1
        other = 1 - side
        current = sides[side]["frontier"].popleft()
        for move, nxt in engine.successors(current, budget.max_len):
            key = nxt.key()
            if key in sides[side]["parents"]:
                continue
            if key in sides[other]["parents"]:
                return rebuild(key, side, other, move, current.key()), True
            sides[side]["parents"][key] = (current.key(), move)
            sides[side]["frontier"].append(nxt)
            visited += 1
            if visited > budget.max_states:
                return None, False
    return None, True


def prove_homotopic(
    m: RotationMap, w1: Walk, w2: Walk, budget: Optional[SearchBudget] = None
) -> Optional[HomotopyCertificate]:
    """Search for a homotopy certificate between two same-endpoint walks.

    Returns None when the budget runs out or the bounded move closure is
    exhausted; neither outcome is a disproof.
    """
    _check_pair(m, w1, w2)
    cert, _ = _bfs(_MoveEngine(m), w1, w2, budget or default_budget(m))
    return cert


def _check_pair(m: RotationMap, w1: Walk, w2: Walk) -> None:
    for w in (w1, w2):
        if w.graph != m.graph:
            raise ValueError("walk does not live on the map's graph")
        if not w.symmetric:
            raise ValueError("homotopy relates walks in the symmetrised graph")
    if (w1.start, w1.end) != (w2.start, w2.end):
        raise ValueError(
            f"walks do not share endpoints: ({w1.start},{w1.end}) vs ({w2.start},{w2.end})"
        )


def loop_collapse_cert(
    m: RotationMap, w: Walk, budget: Optional[SearchBudget] = None
) -> Optional[HomotopyCertificate]:
    """Certificate collapsing a loop to the trivial walk at its basepoint."""
    if w.start != w.end:
        raise ValueError("loop_collapse_cert requires a loop")
    return prove_homotopic(m, w, trivial(w.graph, w.start, symmetric=True), budget)


@dataclass(frozen=True, slots=True)
class HomotopyNormalForm:
    """A normal form with its reduction trace and a homotopy certificate to it."""

    walk: Walk
    trace: rewrite.ReductionTrace
    certificate: HomotopyCertificate


@dataclass(frozen=True, slots=True)
class Inconclusive:
    """A normalization blocked on an unproven collapse: the sub-goal pair.

    ``exhausted`` distinguishes a fully explored bounded search (the goal
    genuinely has no certificate within the length cap) from a state-budget
    cutoff.
    """

    subgoal: tuple[Walk, Walk]
    budget: SearchBudget
    exhausted: bool


class _NormalizeSession:
    """Shared caches for normalizing many walks over one map.

    ``build_certs`` toggles certificate assembly; collapse searches run in
    either mode, so conclusiveness is identical, but status-only bulk
    checking skips materializing move lists.
    """

    def __init__(self, m: RotationMap, budget: Optional[SearchBudget], build_certs: bool = True):
        self.map = m
        self.graph = m.graph
        self.budget = budget or default_budget(m)
        self.engine = _MoveEngine(m)
        self.build_certs = build_certs
        self._collapse: dict[tuple, tuple[Optional[HomotopyCertificate], bool]] = {}
        # walk key -> (nf, cert|None, failing pair|None, exhausted)
        self._memo: dict[tuple, tuple] = {}

    def collapse(self, w: Walk) -> tuple[Optional[HomotopyCertificate], bool]:
        key = w.key()
        if key not in self._collapse:
            target = trivial(self.graph, w.start, symmetric=True)
            self._collapse[key] = _bfs(self.engine, w, target, self.budget)
        return self._collapse[key]

    def go(self, w: Walk) -> tuple[Walk, Optional[HomotopyCertificate], Optional[tuple], bool]:
        key = w.key()
        if key not in self._memo:
            self._memo[key] = self._compute(w)
        return self._memo[key]

    def _compute(self, w: Walk):
        g = self.graph
        x, z = w.start, w.end
        n = w.length
        point = trivial(g, x, symmetric=True)
        build = self.build_certs
        if n == 0:
            return (w, _hrefl(w) if build else None, None, True)
        if n == 1:
            if x == z:
                cert, exhausted = self.collapse(w)
                if cert is None:
                    return (point, None, (w, point), exhausted)
                return (point, cert if build else None, None, True)
            return (w, _hrefl(w) if build else None, None, True)
        first = w.steps[0]
        y = w.node_at(1)
        rest = suffix_from(w, 1)
        edge_walk = single_step(g, first, symmetric=True)
        if x == y:
            nf_rest, sub_cert, failing, exhausted = self.go(rest)
            if failing is not None:
                return (point, None, failing, exhausted)
            if x == z:
                # w ~ first . nf(rest) ~ first . <x> ~ <x>
                c_tail, exh1 = self.collapse(nf_rest)
                if c_tail is None:
                    return (point, None, (nf_rest, point), exh1)
                c_loop, exh2 = self.collapse(edge_walk)
                if c_loop is None:
                    return (point, None, (edge_walk, point), exh2)
                cert = None
                if build:
                    cert = _chain(
                        whisker(edge_walk, sub_cert, None),
                        whisker(edge_walk, c_tail, None),
                        c_loop,
                    )
                return (point, cert, None, True)
            c_loop, exh = self.collapse(edge_walk)
            if c_loop is None:
                return (point, None, (edge_walk, point), exh)
            cert = None
            if build:
                cert = concat_certificates(whisker(None, c_loop, rest), sub_cert)
            return (nf_rest, cert, None, True)
        found = split_at(rest, x)
        if found is not None:
            w1, w2 = found
            nf1, cert1, failing, exhausted = self.go(w1)
            if failing is not None:
                return (point, None, failing, exhausted)
            nf2, cert2, failing, exhausted = self.go(w2)
            if failing is not None:
                return (point, None, failing, exhausted)
            closed = prepend(first, nf1)  # quasi-simple loop at x
            c_closed, exh = self.collapse(closed)
            if c_closed is None:
                return (point, None, (closed, point), exh)
            if x == z:
                c_tail, exh2 = self.collapse(nf2)
                if c_tail is None:
                    return (point, None, (nf2, point), exh2)
                cert = None
                if build:
                    cert = _chain(
                        whisker(None, whisker(edge_walk, cert1, None), w2),
                        whisker(closed, cert2, None),
                        whisker(None, c_closed, nf2),
                        c_tail,
                    )
                return (point, cert, None, True)
            cert = None
            if build:
                cert = _chain(
                    whisker(None, whisker(edge_walk, cert1, None), w2),
                    whisker(closed, cert2, None),
                    whisker(None, c_closed, nf2),
                )
            return (nf2, cert, None, True)
        nf_rest, sub_cert, failing, exhausted = self.go(rest)
        if failing is not None:
            return (point, None, failing, exhausted)
        if x == z:
            closed = prepend(first, nf_rest)
            c_closed, exh = self.collapse(closed)
            if c_closed is None:
                return (point, None, (closed, point), exh)
            cert = None
            if build:
                cert = concat_certificates(whisker(edge_walk, sub_cert, None), c_closed)
            return (point, cert, None, True)
        cert = whisker(edge_walk, sub_cert, None) if build else None
        return (prepend(first, nf_rest), cert, None, True)


def normalize_homotopy(
    m: RotationMap, w: Walk, budget: Optional[SearchBudget] = None
) -> HomotopyNormalForm | Inconclusive:
    """Normalize ``w`` and certify that it is homotopic to its normal form.

    The reduction trace is the deterministic one from ``rewrite.normalize``;
    the certificate assembles whiskered sub-certificates and loop collapses
    along the same case analysis. A collapse sub-goal the search cannot
    certify (map not spherical, or budget too small) yields Inconclusive
    carrying that sub-goal.
    """
    if w.graph != m.graph:
        raise ValueError("walk does not live on the map's graph")
    if not w.symmetric:
        raise ValueError("normalize_homotopy acts on walks in the symmetrised graph")
    session = _NormalizeSession(m, budget, build_certs=True)
    nf, cert, failing, exhausted = session.go(w)
    if failing is not None:
        return Inconclusive(failing, session.budget, exhausted)
    nf_check, trace = rewrite.normalize(w)
    assert nf_check.key() == nf.key(), "certificate recursion disagrees with normalization"
    assert cert is not None and cert.target.key() == nf.key()
    return HomotopyNormalForm(nf, trace, cert)


@dataclass(frozen=True, slots=True)
class SphericityVerdict:
    """Outcome of a sphericity check.

    ``witness`` holds the failing or unproven walk pair when there is one;
    ``euler`` is the Euler characteristic for connected maps (None
    otherwise) and is reported alongside every status as the independent
    cross-check.
    """

    status: str  # SPHERICAL | NOT_SPHERICAL | INCONCLUSIVE
    witness: Optional[tuple[Walk, Walk]]
    euler: Optional[int]
    pairs_checked: int
    budget: Optional[SearchBudget] = None


def _euler_if_connected(m: RotationMap) -> Optional[int]:
    return euler_characteristic(m) if is_connected(m.graph) else None


def _failure_verdict(
    m: RotationMap, pair: tuple[Walk, Walk], budget: SearchBudget, pairs: int
) -> SphericityVerdict:
    """Classify an unproven pair: the Euler oracle supplies the negative signal."""
    chi = _euler_if_connected(m)
    if chi is not None and chi != 2:
        return SphericityVerdict(NOT_SPHERICAL, pair, chi, pairs, budget)
    return SphericityVerdict(INCONCLUSIVE, pair, chi, pairs, budget)


def check_spherical_quasi(
    m: RotationMap,
    budget: Optional[SearchBudget] = None,
    collector: Optional[list[HomotopyCertificate]] = None,
) -> SphericityVerdict:
    """Decide sphericity over quasi-simple walk pairs.

    For every ordered node pair, all quasi-simple walks in the symmetrised
    graph are proved homotopic to the first enumerated one; the remaining
    pairs follow by symmetry and transitivity of certificates. Spherical
    only when every pair is certified. Certificates found along the way are
    appended to ``collector`` when one is given.
    """
    budget = budget or default_budget(m)
    engine = _MoveEngine(m)
    pairs = 0
    for x in range(m.graph.node_count):
        for y in range(m.graph.node_count):
            walks = enumerate_all_qswalks(m.graph, x, y, symmetric=True)
            if not walks:
                continue
            base = walks[0]
            for other in walks[1:]:
                pairs += 1
                cert, _ = _bfs(engine, base, other, budget)
                if cert is None:
                    return _failure_verdict(m, (base, other), budget, pairs)
                if collector is not None:
                    collector.append(cert)
    return SphericityVerdict(SPHERICAL, None, _euler_if_connected(m), pairs, budget)


def check_spherical_bounded(
    m: RotationMap,
    max_len: int,
    budget: Optional[SearchBudget] = None,
    collector: Optional[list[HomotopyCertificate]] = None,
) -> SphericityVerdict:
    """Decide sphericity over all walk pairs up to ``max_len``.

    Every enumerated walk is normalized with a certified homotopy to its
    normal form, then the distinct normal forms of each node pair are proved
    homotopic to each other; arbitrary pairs follow by transitivity. This
    covers exactly the walk pairs of length at most ``max_len`` without
    searching the quadratic pair space directly. With a ``collector``, the
    nontrivial certificates produced along the way are appended to it.
    """
    budget = budget or default_budget(m)
    if budget.max_len < max_len:
        budget = replace(budget, max_len=max_len)
    session = _NormalizeSession(m, budget, build_certs=collector is not None)
    pairs = 0
    for x in range(m.graph.node_count):
        for y in range(m.graph.node_count):
            normal_forms: dict[tuple, Walk] = {}
            for w in iter_walks_up_to(m.graph, max_len, x, y, symmetric=True):
                pairs += 1
                nf, cert, failing, _ = session.go(w)
                if failing is not None:
                    return _failure_verdict(m, failing, budget, pairs)
                if collector is not None and cert is not None and cert.moves:
                    collector.append(cert)
                normal_forms.setdefault(nf.key(), nf)
            reps = list(normal_forms.values())
            for other in reps[1:]:
                pairs += 1
                cert, _ = _bfs(session.engine, reps[0], other, budget)
                if cert is None:
                    return _failure_verdict(m, (reps[0], other), budget, pairs)
                if collector is not None:
                    collector.append(cert)
    return SphericityVerdict(SPHERICAL, None, _euler_if_connected(m), pairs, budget)


def check_spherical_euler(m: RotationMap) -> SphericityVerdict:
    """Sphericity from the Euler characteristic alone (connected maps only)."""
    if not is_connected(m.graph):
        return SphericityVerdict(INCONCLUSIVE, None, None, 0, None)
    chi = euler_characteristic(m)
    status = SPHERICAL if chi == 2 else NOT_SPHERICAL
    return SphericityVerdict(status, None, chi, 0, None)
