"""Amalgamation and joint embedding.

Given ``A`` inside both ``B`` and ``C`` (identically on ids), the points
of ``B`` outside ``A`` are added to ``C`` one at a time.  For one new point
``b`` with ``m0 = max f(a, b)`` over ``a`` in ``A``, the anchors ``l`` and
``u`` (greatest ``A``-point below ``b`` / least above ``b`` among those at
``m0``) decide the position and f-value of ``b`` against each point of
``C``:

* left rule (needs ``l``): points in or below the ``m0``-class of ``l`` lie
  below ``b`` with ``f = min(f(l, c), m0)``; points above ``l`` with
  ``f(l, c) < m0`` lie above ``b`` with ``f = f(l, c)``;
* right rule: the mirror image with ``u``;
* the points neither rule decides form the middle block ``C0``, which is
  cut in two and receives ``b`` in the cut.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Optional

from .core import (
    Embedding,
    EmbeddingError,
    InvariantViolation,
    LexStructure,
    PointId,
    fresh_id,
    is_embedding,
    is_substructure,
    pair,
    require_valid,
    restrict,
    validate,
)


def default_m1(bound: Fraction, both_sides: bool) -> Fraction:
    """``f(d0, e0)`` itself when both ends of the cut exist, otherwise ``m0 + 1``."""
    return bound if both_sides else bound + 1


def default_fresh_low(values: tuple[Fraction, ...]) -> Fraction:
    return min(values) - 1 if values else Fraction(0)


@dataclass(frozen=True)
class AmalgamStrategy:
    """The free choices left open by the construction.

    ``c0_split`` is the number of points of the middle block placed below
    the new point (0: all above it).  ``m1_rule(bound, both_sides)`` picks
    the f-value to the anchor of the cut; it must not go below ``bound``.
    ``fresh_low`` picks the cross value for joint embedding from the
    values already used.
    """

    c0_split: int = 0
    m1_rule: Callable[[Fraction, bool], Fraction] = default_m1
    fresh_low: Callable[[tuple[Fraction, ...]], Fraction] = default_fresh_low
    clamp_split: bool = True


DEFAULT_STRATEGY = AmalgamStrategy()


@dataclass
class PointTrace:
    """What happened while placing one point; used by the checks."""

    point: PointId
    m0: Fraction
    l: Optional[PointId]
    u: Optional[PointId]
    cases: dict = field(default_factory=dict)
    overlaps: list = field(default_factory=list)
    c0: tuple = ()
    split: int = 0
    m1: Optional[Fraction] = None
    anchor: Optional[PointId] = None
    middle_close: bool = True


@dataclass
class Amalgam:
    result: LexStructure
    emb_b: Embedding
    emb_c: Embedding
    traces: list[PointTrace] = field(default_factory=list)

    def commutes_over(self, a: LexStructure) -> bool:
        return all(self.emb_b(x) == self.emb_c(x) for x in a.ids)


def _relabel_away(c: LexStructure, keep: set, taken: set) -> tuple[LexStructure, dict]:
    nxt = max(taken | set(c.ids), default=-1) + 1
    mapping = {}
    for i in c.ids:
        if i in keep or i not in taken:
            mapping[i] = i
        else:
            mapping[i] = nxt
            nxt += 1
    return c.relabel(mapping), mapping


def _check_inputs(a, b, c):
    for name, s in (("A", a), ("B", b), ("C", c)):
        require_valid(s, name)
    if not is_substructure(a, b):
        raise EmbeddingError("A is not a substructure of B under the identity")
    if not is_substructure(a, c):
        raise EmbeddingError("A is not a substructure of C under the identity")


def _place_point(a: LexStructure, b: LexStructure, c: LexStructure, bp: PointId,
                 strategy: AmalgamStrategy) -> tuple[LexStructure, PointTrace]:
    """Core of the construction; ``c`` must not use the id ``bp``."""
    fb = {x: b.f(x, bp) for x in a.ids}
    m0 = max(fb.values())
    A0 = [x for x in a.ids if fb[x] == m0]
    L = [x for x in A0 if b.precedes(x, bp)]
    U = [x for x in A0 if b.precedes(bp, x)]
    l = L[-1] if L else None
    u = U[0] if U else None
    if l is not None and u is not None and c.f(l, u) != m0:
        raise InvariantViolation(f"f(l, u) = {c.f(l, u)} differs from m0 = {m0}")
    tr = PointTrace(bp, m0, l, u)

    def fl(x, anchor):
        return None if x == anchor else c.f(x, anchor)

    def left_rule(x):
        if l is None:
            return None
        v = fl(x, l)
        if x == l or v > m0 or c.precedes(x, l):
            return (m0 if x == l else min(v, m0), True, 1)
        if v < m0:
            return (v, False, 1)
        return None

    def right_rule(x):
        if u is None:
            return None
        v = fl(x, u)
        if x == u or v > m0 or c.precedes(u, x):
            return (m0 if x == u else min(v, m0), False, 2)
        if v < m0:
            return (v, True, 2)
        return None

    row: dict[PointId, Fraction] = {}
    below: dict[PointId, bool] = {}
    c0 = []
    for x in c.ids:
        r1, r2 = left_rule(x), right_rule(x)
        if r1 is not None and r2 is not None:
            tr.overlaps.append((x, r1[0], r2[0], r1[1], r2[1]))
        r = r1 if r1 is not None else r2
        if r is None:
            c0.append(x)
            continue
        row[x], below[x] = r[0], r[1]
        tr.cases[x] = r[2]

    tr.c0 = tuple(c0)
    if c0:
        tr.middle_close = all(c.f(x, y) >= m0 for i, x in enumerate(c0) for y in c0[i + 1:])
        k = strategy.c0_split
        if not 0 <= k <= len(c0):
            if not strategy.clamp_split:
                raise ValueError(f"split {k} outside 0..{len(c0)}")
            k = max(0, min(k, len(c0)))
        D, E = c0[:k], c0[k:]
        tr.split = k
        d0 = D[-1] if D else None
        e0 = E[0] if E else None
        both = d0 is not None and e0 is not None
        if both:
            anchor, bound = d0, c.f(d0, e0)
        else:
            anchor, bound = (d0 if d0 is not None else e0), m0
        m1 = Fraction(strategy.m1_rule(bound, both))
        if m1 < bound:
            raise ValueError(f"m1 = {m1} is below the required bound {bound}")
        tr.m1, tr.anchor = m1, anchor
        for x in c0:
            row[x] = m1 if x == anchor else min(m1, c.f(x, anchor))
            below[x] = x in D
            tr.cases[x] = 3

    ids = c.ids
    flags = [below[x] for x in ids]
    cut = sum(flags)
    if flags != [True] * cut + [False] * (len(ids) - cut):
        raise InvariantViolation(f"placement of {bp} is not a cut of C")
    for x in a.ids:
        if row[x] != fb[x] or below[x] != b.precedes(x, bp):
            raise InvariantViolation(f"placement of {bp} disagrees with B at {x}")
    pts = list(c.points)
    pts.insert(cut, (bp, b.color(bp)))
    fv = dict(c.fvals)
    for x, v in row.items():
        fv[pair(x, bp)] = v
    return LexStructure(tuple(pts), fv), tr


def amalgamate_point(a: LexStructure, b_struct: LexStructure, c: LexStructure,
                     strategy: AmalgamStrategy = DEFAULT_STRATEGY) -> Amalgam:
    """Amalgamate when ``b_struct`` adds exactly one point to ``a``."""
    _check_inputs(a, b_struct, c)
    extra = [x for x in b_struct.ids if x not in a]
    if len(extra) != 1:
        raise EmbeddingError(f"B must add exactly one point to A, it adds {len(extra)}")
    if not len(a):
        return joint_embed(b_struct, c, strategy)
    bp = extra[0]
    c2, cmap = _relabel_away(c, set(a.ids), {bp})
    out, tr = _place_point(a, b_struct, c2, bp, strategy)
    return _finish(out, b_struct, c, {x: x for x in b_struct.ids}, cmap, [tr])


def _finish(out, b, c, bmap, cmap, traces) -> Amalgam:
    if not validate(out).ok:
        raise InvariantViolation("amalgam is not in the class")
    am = Amalgam(out, Embedding(b, out, bmap), Embedding(c, out, cmap), traces)
    if not (am.emb_b.is_valid() and am.emb_c.is_valid()):
        raise InvariantViolation("amalgam embeddings do not embed")
    return am


def amalgamate(a: LexStructure, b: LexStructure, c: LexStructure,
               strategy: AmalgamStrategy = DEFAULT_STRATEGY) -> Amalgam:
    """Add the points of ``B`` outside ``A`` to ``C`` in increasing order.

    After each point the base grows by that point, so every step is a
    one-point amalgamation.  With ``A`` empty this is :func:`joint_embed`.
    """
    _check_inputs(a, b, c)
    if not len(a):
        return joint_embed(b, c, strategy)
    cur, cmap = _relabel_away(c, set(a.ids), set(b.ids))
    base = a
    traces = []
    for bp in b.ids:
        if bp in a:
            continue
        step = restrict(b, set(base.ids) | {bp})
        cur, tr = _place_point(base, step, cur, bp, strategy)
        traces.append(tr)
        base = step
    return _finish(cur, b, c, {x: x for x in b.ids}, cmap, traces)


def joint_embed(b: LexStructure, c: LexStructure,
                strategy: AmalgamStrategy = DEFAULT_STRATEGY) -> Amalgam:
    """All of ``B`` below all of ``C``, cross pairs at a value below everything used."""
    require_valid(b, "B")
    require_valid(c, "C")
    c2, cmap = _relabel_away(c, set(), set(b.ids))
    v = Fraction(strategy.fresh_low(tuple(sorted(set(b.values()) | set(c.values())))))
    used = set(b.values()) | set(c.values())
    if used and v > min(used):
        raise ValueError(f"cross value {v} must not exceed the least used value {min(used)}")
    fv = dict(b.fvals)
    fv.update(c2.fvals)
    for x in b.ids:
        for y in c2.ids:
            fv[pair(x, y)] = v
    out = LexStructure(b.points + c2.points, fv)
    return _finish(out, b, c, {x: x for x in b.ids}, cmap, [])


def check_amalgam(am: Amalgam, a: LexStructure) -> bool:
    """Valid result, both maps embeddings, and they agree on ``A``."""
    return (validate(am.result).ok and is_embedding(am.emb_b.source, am.result, am.emb_b.map)
            and is_embedding(am.emb_c.source, am.result, am.emb_c.map) and am.commutes_over(a))


def amalgam_dict(am: Amalgam) -> Mapping:
    return {"result": am.result, "emb_b": dict(am.emb_b.map), "emb_c": dict(am.emb_c.map)}
