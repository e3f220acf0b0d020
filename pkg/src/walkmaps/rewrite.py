"""Loop reduction on walks: classifiers, one-step reducts, normalization.

The reduction relation has three rules:

* ``xi1`` collapses a nontrivial loop to the trivial walk at its endpoint.
* ``xi2`` reduces under a preserved leading edge: when the whole walk is
  not a loop and the leading edge has distinct endpoints, any reduct of the
  rest lifts to a reduct of the whole.
* ``xi3`` deletes a leading loop standing before a nontrivial tail, again
  provided the whole walk is not a loop.

Every step strictly shortens the walk, so normalization terminates; normal
forms are the quasi-simple walks admitting no step. Normal forms are not
unique, so ``normalize`` fixes a deterministic strategy (documented on the
function) and records a replayable trace.
"""

from __future__ import annotations

from dataclasses import dataclass

from .walk import (
    Walk,
    is_quasi_simple,
    prepend,
    split_at,
    suffix_from,
    trivial,
)

XI1 = "xi1"
XI2 = "xi2"
XI3 = "xi3"


@dataclass(frozen=True, slots=True)
class WalkClass:
    """Basic structural predicates of a walk, computed together."""

    trivial: bool
    loop: bool
    non_trivial: bool
    no_reduce: bool
    non_trivial_loop: bool


def classify(w: Walk) -> WalkClass:
    is_trivial = w.length == 0
    is_loop = w.start == w.end
    non_trivial = w.length >= 1
    no_reduce = is_trivial or (w.length == 1 and not is_loop)
    return WalkClass(
        trivial=is_trivial,
        loop=is_loop,
        non_trivial=non_trivial,
        no_reduce=no_reduce,
        non_trivial_loop=non_trivial and is_loop,
    )


@dataclass(frozen=True, slots=True)
class ReductionStep:
    """One application of a reduction rule.

    ``site`` disambiguates where the rule fired: for ``xi2`` it is the
    number of preserved leading edges, for ``xi3`` the length of the removed
    leading loop, and 0 for ``xi1``.
    """

    rule: str
    site: int
    before: Walk
    after: Walk


@dataclass(frozen=True, slots=True)
class ReductionTrace:
    """A chained sequence of reduction steps starting from ``origin``."""

    origin: Walk
    steps: tuple[ReductionStep, ...]

    @property
    def final(self) -> Walk:
        return self.steps[-1].after if self.steps else self.origin

    def replay(self) -> Walk:
        """Re-walk the chain, checking each link, and return the final walk."""
        at = self.origin
        for i, s in enumerate(self.steps):
            if s.before.key() != at.key():
                raise ValueError(f"trace breaks at step {i}: expected {at}, got {s.before}")
            verify_step(s)
            at = s.after
        return at


def _lift(d, step: ReductionStep) -> ReductionStep:
    site = (step.site if step.rule == XI2 else 0) + 1
    return ReductionStep(XI2, site, prepend(d, step.before), prepend(d, step.after))


def applicable_reductions(w: Walk) -> list[ReductionStep]:
    """All one-step reducts of ``w``, one entry per derivation.

    A nontrivial loop contributes its collapse; a non-loop walk contributes
    one deletion per leading-loop decomposition with a nontrivial tail, and
    every reduct of its rest lifted under the leading edge when that edge
    has distinct endpoints.
    """
    out: list[ReductionStep] = []
    c = classify(w)
    if c.non_trivial_loop:
        out.append(ReductionStep(XI1, 0, w, trivial(w.graph, w.start, w.symmetric)))
    if c.non_trivial and not c.loop:
        for s in range(1, w.length):
            if w.node_at(s) == w.start:
                out.append(ReductionStep(XI3, s, w, suffix_from(w, s)))
        first = w.steps[0]
        if w.start != w.node_at(1):
            for sub in applicable_reductions(suffix_from(w, 1)):
                out.append(_lift(first, sub))
    return out


def verify_step(step: ReductionStep) -> None:
    """Re-derive ``step`` from its rule's side conditions; raises on failure."""
    w, v = step.before, step.after
    if (w.start, w.end) != (v.start, v.end):
        raise ValueError("reduction step changes endpoints")
    if step.rule == XI1:
        if not classify(w).non_trivial_loop or v.length != 0:
            raise ValueError("xi1 requires a nontrivial loop collapsing to its endpoint")
        return
    if step.rule == XI3:
        s = step.site
        if not (1 <= s <= w.length - 1):
            raise ValueError("xi3 site out of range")
        if w.node_at(s) != w.start:
            raise ValueError("xi3 removed prefix is not a loop")
        if classify(w).loop:
            raise ValueError("xi3 does not apply to loops")
        if v.steps != w.steps[s:]:
            raise ValueError("xi3 result is not the tail after the removed loop")
        return
    if step.rule == XI2:
        s = step.site
        if s < 1 or w.length <= s or v.length < s:
            raise ValueError("xi2 site out of range")
        if w.steps[:s] != v.steps[:s]:
            raise ValueError("xi2 must preserve the leading edges at its site")
        inner_before, inner_after = w, v
        for _ in range(s):
            if classify(inner_before).loop:
                raise ValueError("xi2 does not reduce under a loop")
            if inner_before.start == inner_before.node_at(1):
                raise ValueError("xi2 leading edge must have distinct endpoints")
            inner_before = suffix_from(inner_before, 1)
            inner_after = suffix_from(inner_after, 1)
        # the lifted chain bottoms out in a non-lifting rule
        if classify(inner_before).non_trivial_loop and inner_after.length == 0:
            return
        for t in range(1, inner_before.length):
            if (
                inner_before.node_at(t) == inner_before.start
                and not classify(inner_before).loop
                and inner_after.steps == inner_before.steps[t:]
            ):
                return
        raise ValueError("xi2 inner step is not a valid collapse or loop deletion")
    raise ValueError(f"unknown rule {step.rule!r}")


def is_normal(w: Walk) -> bool:
    """Whether ``w`` is quasi-simple and admits no reduction step."""
    return is_quasi_simple(w) and not applicable_reductions(w)


def normalize(w: Walk) -> tuple[Walk, ReductionTrace]:
    """Reduce ``w`` to a normal form, returning it with a replayable trace.

    Deterministic strategy: trivial and one-edge walks are handled directly;
    otherwise case on whether the leading edge closes on the start, then
    split the rest at the first return to the start, recursing on strictly
    shorter walks. Any nontrivial loop collapses in a single step.
    """
    nf, steps = _normalize(w)
    return nf, ReductionTrace(w, tuple(steps))


def _normalize(w: Walk) -> tuple[Walk, list[ReductionStep]]:
    g = w.graph
    x, z = w.start, w.end
    n = w.length
    if n == 0:
        return w, []
    point = trivial(g, x, w.symmetric)
    if n == 1:
        if x == z:
            return point, [ReductionStep(XI1, 0, w, point)]
        return w, []
    y = w.node_at(1)
    rest = suffix_from(w, 1)
    if x == y:
        # leading self-loop edge
        if x == z:
            return point, [ReductionStep(XI1, 0, w, point)]
        nf, tail = _normalize(rest)
        return nf, [ReductionStep(XI3, 1, w, rest)] + tail
    found = split_at(rest, x)
    if found is not None:
        if x == z:
            return point, [ReductionStep(XI1, 0, w, point)]
        w1, w2 = found
        nf, tail = _normalize(w2)
        return nf, [ReductionStep(XI3, 1 + w1.length, w, w2)] + tail
    nf_rest, tail = _normalize(rest)
    if x == z:
        return point, [ReductionStep(XI1, 0, w, point)]
    first = w.steps[0]
    return prepend(first, nf_rest), [_lift(first, s) for s in tail]


def progress(w: Walk) -> ReductionStep | None:
    """The first step of the deterministic strategy, or None when ``w`` is normal."""
    _, trace = normalize(w)
    return trace.steps[0] if trace.steps else None
