"""Finite approximations of the generic structure.

The generic (limit) structure is characterized by two families of
witness demands, each in both colors:

* one-anchor: for a point ``x`` and a value ``m`` there are points on
  either side of ``x`` at f-distance ``m``;
* two-anchor: for ``x < y`` and ``m >= f(x, y)`` there are points strictly
  between them at f-distance ``m`` from ``x`` (and others from ``y``).

:func:`saturate` discharges these demands round by round, adding one
point per unmet demand; :func:`ef_game` decides finite back-and-forth
equivalence of two approximations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Union

from .core import (
    ExtensionSpec,
    InvariantViolation,
    LexStructure,
    PointId,
    extension_row,
    pair,
    require_valid,
)
from .rational import RatLike, as_value_set, rat

ONE_STAR = "one"
TWO_STAR = "two"
LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True, order=True)
class Demand:
    """A witness requirement.

    ``kind`` is :data:`ONE_STAR` (``anchors == (x,)``; ``side`` says where
    the witness sits) or :data:`TWO_STAR` (``anchors == (x, y)`` with
    ``x < y``; ``side`` says which anchor the value is measured from: on
    ``LEFT`` the witness ``z`` has ``f(x, z) == value`` and
    ``f(z, y) == f(x, y)``, on ``RIGHT`` the mirror).  For
    ``value == f(x, y)`` the two sides coincide and only ``LEFT`` is used.
    """

    kind: str
    anchors: tuple[PointId, ...]
    side: str
    value: Fraction
    color: int


@dataclass
class SaturationLog:
    rounds: int = 0
    births: dict[PointId, int] = field(default_factory=dict)
    satisfied: set[Demand] = field(default_factory=set)
    added: int = 0
    per_round: list[dict] = field(default_factory=list)

    def born_before(self, r: int) -> set[PointId]:
        return {p for p, b in self.births.items() if b < r}

    def to_json(self) -> dict:
        return {
            "rounds": self.rounds,
            "added": self.added,
            "births": [[p, b] for p, b in sorted(self.births.items())],
            "per_round": self.per_round,
            "satisfied": len(self.satisfied),
        }


@dataclass(frozen=True)
class AxiomReport:
    failures: tuple[Demand, ...] = ()
    checked: int = 0

    @property
    def holds(self) -> bool:
        return not self.failures


class _Builder:
    """Mutable twin of a structure for long runs of insertions.

    Offers the read interface :func:`extension_row` and
    :func:`find_witness` rely on.
    """

    def __init__(self, s: LexStructure):
        self.order = list(s.ids)
        self.col = {p: s.color(p) for p in self.order}
        self.fv = dict(s.fvals)
        self._reindex()

    def _reindex(self):
        self.pos = {p: k for k, p in enumerate(self.order)}

    @property
    def ids(self):
        return self.order

    def __len__(self):
        return len(self.order)

    def __contains__(self, p):
        return p in self.pos

    def at(self, k):
        return self.order[k]

    def f(self, x, y):
        return self.fv[pair(x, y)]

    def color(self, p):
        return self.col[p]

    def position(self, p):
        return self.pos[p]

    def insert(self, spec: ExtensionSpec) -> PointId:
        row = extension_row(self, spec)
        z = max(self.order, default=-1) + 1
        for a, v in row.items():
            self.fv[pair(a, z)] = v
        self.order.insert(spec.cut_index, z)
        self.col[z] = spec.color
        self._reindex()
        return z

    def freeze(self) -> LexStructure:
        return LexStructure(tuple((p, self.col[p]) for p in self.order), self.fv)


def _check_demand(s, d: Demand) -> None:
    for a in d.anchors:
        if a not in s:
            raise KeyError(f"anchor {a} not in structure")
    if d.kind == TWO_STAR:
        x, y = d.anchors
        if not s.position(x) < s.position(y):
            raise ValueError("two-anchor demand needs anchors in increasing order")
        if d.value < s.f(x, y):
            raise ValueError(f"value {d.value} is below f(x, y) = {s.f(x, y)}")
    elif d.kind != ONE_STAR:
        raise ValueError(f"unknown demand kind {d.kind!r}")


def _meets(s, d: Demand, z) -> bool:
    if s.color(z) != d.color:
        return False
    if d.kind == ONE_STAR:
        (x,) = d.anchors
        return s.f(x, z) == d.value
    x, y = d.anchors
    base = s.f(x, y)
    near, far = (x, y) if d.side == LEFT else (y, x)
    return s.f(near, z) == d.value and s.f(z, far) == base


def _span(s, d: Demand) -> range:
    """Positions a witness may occupy."""
    if d.kind == ONE_STAR:
        k = s.position(d.anchors[0])
        return range(0, k) if d.side == LEFT else range(k + 1, len(s))
    return range(s.position(d.anchors[0]) + 1, s.position(d.anchors[1]))


def find_witness(s, d: Demand) -> Optional[PointId]:
    """Least witness of ``d`` in ``s``, or None."""
    _check_demand(s, d)
    for k in _span(s, d):
        z = s.at(k)
        if _meets(s, d, z):
            return z
    return None


def _options(con, e_side):
    """Candidate values for one boundary variable."""
    kind, t = con
    if kind == "eq":
        return [t]
    if kind == "ge":
        return sorted({t} | ({e_side} if e_side is not None and e_side >= t else set()))
    return [e_side] if e_side is not None else []


def _constraint(a_val, target):
    """Solve ``min(v, a_val) == target`` for v; ``a_val`` None means v itself."""
    if a_val is None or a_val > target:
        return ("eq", target)
    if a_val == target:
        return ("ge", target)
    return None


def _boundary_for(s, d: Demand, cut: int):
    lo = s.at(cut - 1) if cut > 0 else None
    hi = s.at(cut) if cut < len(s) else None
    pcon = qcon = ("free", None)
    if d.kind == ONE_STAR:
        (x,) = d.anchors
        if d.side == LEFT:
            qcon = _constraint(None if hi == x else s.f(hi, x), d.value)
        else:
            pcon = _constraint(None if lo == x else s.f(lo, x), d.value)
    else:
        x, y = d.anchors
        base = s.f(x, y)
        pv, qv = (d.value, base) if d.side == LEFT else (base, d.value)
        pcon = _constraint(None if lo == x else s.f(x, lo), pv)
        qcon = _constraint(None if hi == y else s.f(hi, y), qv)
    if pcon is None or qcon is None:
        return None
    e = s.f(lo, hi) if lo is not None and hi is not None else None
    ps = _options(pcon, e) if lo is not None else [None]
    qs = _options(qcon, e) if hi is not None else [None]
    for p in ps:
        for q in qs:
            if e is None or min(p, q) == e:
                return p, q
    return None


def witness_specs(s, d: Demand) -> list[ExtensionSpec]:
    """One spec per cut at which a new point can meet ``d``."""
    _check_demand(s, d)
    out = []
    lo_k = _span(s, d)
    for cut in range(lo_k.start, lo_k.stop + 1):
        pq = _boundary_for(s, d, cut)
        if pq is not None:
            out.append(ExtensionSpec(cut, d.color, pq[0], pq[1]))
    return out


def _filter(s, generation_filter) -> Callable[[PointId], bool]:
    if generation_filter is None:
        return lambda p: True
    if callable(generation_filter):
        return generation_filter
    keep = set(generation_filter)
    return keep.__contains__


def demands(s, anchors: Iterable[PointId], value_set: Iterable[Fraction]) -> list[Demand]:
    """All demands over ``anchors`` (taken in the order of ``s``)."""
    vals = as_value_set(value_set)
    anc = sorted(anchors, key=s.position)
    out = []
    for x in anc:
        for side in (LEFT, RIGHT):
            for m in vals:
                for c in (0, 1):
                    out.append(Demand(ONE_STAR, (x,), side, m, c))
    for i, x in enumerate(anc):
        for y in anc[i + 1:]:
            base = s.f(x, y)
            for side in (LEFT, RIGHT):
                for m in vals:
                    if m < base or (m == base and side == RIGHT):
                        continue
                    for c in (0, 1):
                        out.append(Demand(TWO_STAR, (x, y), side, m, c))
    return out


def saturate(seed: LexStructure, value_set: Iterable[RatLike], rounds: int,
             seed_rng: int = 0) -> tuple[LexStructure, SaturationLog]:
    """Discharge every demand over earlier-born points, ``rounds`` times.

    In round ``r`` the anchors are the points present when the round
    starts (born before ``r``); new witnesses are born in round ``r``.
    Demands are handled in a fixed order and the rng only chooses among
    the cuts where a witness can go, so output is a function of the
    arguments.
    """
    require_valid(seed, "seed")
    if rounds < 0:
        raise ValueError("rounds must be non-negative")
    vals = as_value_set(value_set)
    rng = random.Random(seed_rng)
    b = _Builder(seed)
    log = SaturationLog(births={p: 0 for p in seed.ids})
    for r in range(1, rounds + 1):
        anchors = [p for p in b.order if log.births[p] < r]
        todo = demands(b, anchors, vals)
        todo.sort(key=lambda d: (max(log.births[a] for a in d.anchors), d.anchors,
                                 d.kind, d.side, d.value, d.color))
        added = 0
        for d in todo:
            if find_witness(b, d) is None:
                specs = witness_specs(b, d)
                if not specs:
                    raise InvariantViolation(f"no consistent position for {d}")
                z = b.insert(rng.choice(specs))
                log.births[z] = r
                added += 1
                if not _meets(b, d, z):
                    raise InvariantViolation(f"inserted point does not witness {d}")
            log.satisfied.add(d)
        log.added += added
        log.rounds = r
        log.per_round.append({"round": r, "demands": len(todo), "added": added,
                              "size": len(b), "satisfied": len(log.satisfied)})
    return b.freeze(), log


def check_extension_axioms(s: LexStructure, value_set: Iterable[RatLike],
                           generation_filter: Union[None, Callable, Iterable[PointId]] = None
                           ) -> AxiomReport:
    """Every demand over anchors passing the filter has a witness in ``s``."""
    keep = _filter(s, generation_filter)
    anchors = [p for p in s.ids if keep(p)]
    ds = demands(s, anchors, as_value_set(value_set))
    return AxiomReport(tuple(d for d in ds if find_witness(s, d) is None), len(ds))


# -- back-and-forth -----------------------------------------------------------

class _Side:
    def __init__(self, s: LexStructure, pool):
        self.s = s
        self.ids = s.ids
        keep = None if pool is None else set(pool)
        self.pool = [p for p in self.ids if keep is None or p in keep]
        self.cache: dict[tuple, dict] = {}

    def type_of(self, z, chosen):
        s = self.s
        k = s.position(z)
        gap = sum(1 for c in chosen if s.position(c) < k)
        return (gap, tuple(s.f(z, c) for c in chosen), s.color(z))

    def index(self, chosen: tuple) -> dict:
        """type -> points realizing it over ``chosen``."""
        got = self.cache.get(chosen)
        if got is None:
            got = {}
            cs = set(chosen)
            for z in self.ids:
                if z not in cs:
                    got.setdefault(self.type_of(z, chosen), []).append(z)
            self.cache[chosen] = got
        return got


def ef_game(s1: LexStructure, s2: LexStructure, k: int, value_set: Iterable[RatLike] = (),
            *, spoiler_pool1: Optional[Iterable[PointId]] = None,
            spoiler_pool2: Optional[Iterable[PointId]] = None) -> bool:
    """Does Duplicator survive ``k`` rounds of the back-and-forth game?

    Positions are partial isomorphisms preserving order, colors and exact
    f-values.  Spoiler picks an unchosen point in either structure whose
    f-values to the chosen points lie in ``value_set`` or among the values
    already realized by the position; Duplicator answers in the other
    structure.  ``spoiler_pool1/2`` optionally restrict where Spoiler may
    pick (Duplicator may always answer anywhere).
    """
    vals = set(as_value_set(value_set))
    sides = (_Side(s1, spoiler_pool1), _Side(s2, spoiler_pool2))
    memo: dict[tuple, bool] = {}

    def legal(side, z, chosen, realized):
        return all(side.s.f(z, c) in vals or side.s.f(z, c) in realized for c in chosen)

    def wins(position: tuple, left: int) -> bool:
        if left == 0:
            return True
        key = (position, left)
        if key in memo:
            return memo[key]
        ch = (tuple(p for p, _ in position), tuple(q for _, q in position))
        realized = {sides[0].s.f(a, b) for i, a in enumerate(ch[0]) for b in ch[0][i + 1:]}
        result = True
        for me in (0, 1):
            mine, other = sides[me], sides[1 - me]
            chosen_mine, chosen_other = ch[me], ch[1 - me]
            idx = other.index(chosen_other)
            taken = set(chosen_mine)
            for z in mine.pool:
                if z in taken or not legal(mine, z, chosen_mine, realized):
                    continue
                answers = idx.get(mine.type_of(z, chosen_mine), ())
                if not answers:
                    result = False
                elif left > 1:
                    result = any(wins(_extend(position, me, z, w, s1), left - 1) for w in answers)
                if not result:
                    break
            if not result:
                break
        memo[key] = result
        return result

    return wins((), k)


def _extend(position, me, z, w, s1) -> tuple:
    new = (z, w) if me == 0 else (w, z)
    return tuple(sorted(position + (new,), key=lambda pq: s1.position(pq[0])))
