"""Cuts, completions, suprema, gap profiles and the tree picture."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .core import (
    EMPTY,
    ExtensionSpec,
    InvariantViolation,
    LexStructure,
    PointId,
    realize_extension,
    require_valid,
)
from .generic import LEFT, ONE_STAR, RIGHT, Demand, find_witness
from .rational import RatLike, as_value_set, rat


@dataclass(frozen=True)
class Cut:
    lower: frozenset
    upper: frozenset

    def index(self) -> int:
        return len(self.lower)


def enumerate_cuts(s: LexStructure) -> list[Cut]:
    """The ``len(s) + 1`` cuts, by size of the lower part."""
    ids = s.ids
    return [Cut(frozenset(ids[:k]), frozenset(ids[k:])) for k in range(len(ids) + 1)]


def cut_index(s: LexStructure, cut: Cut) -> int:
    k = len(cut.lower)
    ids = s.ids
    if set(ids[:k]) != set(cut.lower) or set(ids[k:]) != set(cut.upper):
        raise ValueError("not a cut of this structure")
    return k


def insert_into_cut(s: LexStructure, cut: Cut, color: int,
                    left_value: Optional[RatLike] = None,
                    right_value: Optional[RatLike] = None) -> LexStructure:
    """Put a new point between the two sides of ``cut``.

    ``left_value`` is f to the greatest point of the lower side,
    ``right_value`` f to the least point of the upper side.
    """
    p = None if left_value is None else rat(left_value)
    q = None if right_value is None else rat(right_value)
    return realize_extension(s, ExtensionSpec(cut_index(s, cut), color, p, q))


def complete_structure(s: LexStructure,
                       value_rule: Optional[Callable[[Fraction], tuple[Fraction, Fraction]]] = None
                       ) -> LexStructure:
    """Fill every internal cut with one 1-colored point.

    Between consecutive ``x < y`` the new point gets ``(p, q)`` from
    ``value_rule(f(x, y))``, by default ``(f(x, y), f(x, y))``.
    """
    require_valid(s)
    ids = s.ids
    out = s
    for x, y in zip(ids, ids[1:]):
        v = s.f(x, y)
        p, q = (v, v) if value_rule is None else value_rule(v)
        out = realize_extension(out, ExtensionSpec(out.position(y), 1, rat(p), rat(q)))
    return out


def embed_linear_order(n: int, m: RatLike = 0) -> LexStructure:
    """``n`` 0-colored points with constant f."""
    if n < 0:
        raise ValueError("n must be non-negative")
    v = rat(m)
    return LexStructure.build([0] * n, {(i, j): v for i in range(n) for j in range(i + 1, n)})


def check_supremum(s: LexStructure, x: PointId, Y: Iterable[PointId]) -> bool:
    """Is ``x`` the least point above every ``y`` in ``Y``?

    Decided by brute force.  The f-value criterion (every other point
    below ``x`` is f-farther from ``x`` than some ``y``) is evaluated too,
    and must imply the answer.
    """
    Y = set(Y)
    if any(not s.precedes(y, x) for y in Y):
        raise ValueError("every point of Y must lie below x")
    between = [z for z in s.ids if s.precedes(z, x) and z not in Y
               and all(s.precedes(y, z) for y in Y)]
    answer = not between
    others = [z for z in s.ids if s.precedes(z, x) and z not in Y]
    criterion = all(any(s.f(x, y) > s.f(x, z) for y in Y) for z in others)
    if criterion and not answer:
        raise InvariantViolation(f"f-criterion says {x} is the supremum, but {between[0]} lies between")
    return answer


def check_infimum(s: LexStructure, x: PointId, Y: Iterable[PointId]) -> bool:
    """Mirror of :func:`check_supremum`."""
    Y = set(Y)
    if any(not s.precedes(x, y) for y in Y):
        raise ValueError("every point of Y must lie above x")
    between = [z for z in s.ids if s.precedes(x, z) and z not in Y
               and all(s.precedes(z, y) for y in Y)]
    answer = not between
    others = [z for z in s.ids if s.precedes(x, z) and z not in Y]
    criterion = all(any(s.f(x, y) > s.f(x, z) for y in Y) for z in others)
    if criterion and not answer:
        raise InvariantViolation(f"f-criterion says {x} is the infimum, but {between[0]} lies between")
    return answer


# -- gap profiles -------------------------------------------------------------

class GapClass(enum.Enum):
    REMOVABLE = "removable"
    IRREMOVABLE = "irremovable"
    NOT_GAP = "not_gap"


class WitnessSide(enum.Enum):
    IN_D = "D"
    IN_E = "E"
    NONE = "none"


@dataclass(frozen=True)
class GapProfile:
    """Order-theoretic facts about a cut of an infinite structure.

    ``fset`` is the set of cross values ``f(d, e)`` and ``upperset`` the
    base-order points strictly above all of them.  The witness flags refer
    to the point on ``witness_side`` (if any): its cross values are cofinal
    in ``fset`` and its values towards its own side are coinitial in
    ``upperset``.
    """

    witness_side: WitnessSide
    fset_has_sup: bool
    upperset_has_inf: bool
    witness_cofinal: bool
    witness_coinitial: bool


class InconsistentProfileError(ValueError):
    pass


def classify_gap_profile(p: GapProfile) -> GapClass:
    """Decision table.

    ``fset`` has a supremum exactly when ``upperset`` has an infimum, so
    profiles with the two flags different are rejected.  With a witness
    that is both cofinal and coinitial, a missing supremum makes the gap
    irremovable: no value can sit above all cross values and below the
    witness's own-side values.  If the supremum exists, that witness pins
    an endpoint, so the cut is not a gap.  Everything else is removable.
    """
    if p.fset_has_sup != p.upperset_has_inf:
        raise InconsistentProfileError("fset has a supremum iff upperset has an infimum")
    witnessed = (p.witness_side is not WitnessSide.NONE
                 and p.witness_cofinal and p.witness_coinitial)
    if witnessed and not p.fset_has_sup:
        return GapClass.IRREMOVABLE
    if witnessed:
        return GapClass.NOT_GAP
    return GapClass.REMOVABLE


# -- trees --------------------------------------------------------------------

@dataclass
class FiniteTree:
    """Rooted tree with ordered children; ``children[i]`` lists node i's children."""

    children: list[list[int]]
    root: int = 0

    @classmethod
    def from_nested(cls, nested) -> "FiniteTree":
        """``[]`` is a leaf, ``[t1, t2]`` a node with subtrees t1 < t2; ids in preorder."""
        kids: list[list[int]] = []

        def walk(t):
            me = len(kids)
            kids.append([])
            for sub in t:
                kids[me].append(walk(sub))
            return me

        walk(nested)
        return cls(kids)

    def to_nested(self, node: Optional[int] = None):
        node = self.root if node is None else node
        return [self.to_nested(c) for c in self.children[node]]

    @classmethod
    def complete(cls, arity: int, height: int) -> "FiniteTree":
        def build(h):
            return [] if h == 0 else [build(h - 1) for _ in range(arity)]
        return cls.from_nested(build(height))

    @classmethod
    def path(cls, length: int) -> "FiniteTree":
        t: list = []
        for _ in range(length):
            t = [t]
        return cls.from_nested(t)

    def __len__(self):
        return len(self.children)

    def branches(self) -> list[tuple[int, ...]]:
        """Root-to-leaf node paths, left to right."""
        out = []

        def walk(node, path):
            path = path + (node,)
            if not self.children[node]:
                out.append(path)
            for c in self.children[node]:
                walk(c, path)

        walk(self.root, ())
        return out

    def check(self) -> None:
        seen = set()
        stack = [self.root]
        while stack:
            v = stack.pop()
            if v in seen:
                raise ValueError("not a tree: node reached twice")
            seen.add(v)
            stack.extend(self.children[v])
        if len(seen) != len(self.children):
            raise ValueError("not a tree: unreachable nodes")


@dataclass
class TreeOrder:
    structure: LexStructure
    leaves: list[int]
    branch_cut: dict[tuple[int, ...], int] = field(default_factory=dict)

    def is_injective(self) -> bool:
        return len(set(self.branch_cut.values())) == len(self.branch_cut)


def tree_to_order(t: FiniteTree, scale: Callable[[int], Fraction] = Fraction) -> TreeOrder:
    """Leaves in left-to-right order; f is the depth of the deepest common ancestor.

    Each maximal branch is sent to the cut just above its leaf, i.e. the
    lower side is the set of leaves lexicographically at or below it.
    """
    t.check()
    branches = t.branches()
    leaves = [b[-1] for b in branches]
    fv = {}
    for i, bi in enumerate(branches):
        for j in range(i + 1, len(branches)):
            bj = branches[j]
            d = 0
            while d + 1 < min(len(bi), len(bj)) and bi[d + 1] == bj[d + 1]:
                d += 1
            fv[(i, j)] = scale(d)
    s = LexStructure.build([0] * len(leaves), fv)
    return TreeOrder(s, leaves, {b: k + 1 for k, b in enumerate(branches)})


# -- witness density ------------------------------------------------------------

def witness_density(s: LexStructure, a: PointId, value_set: Iterable[RatLike]
                    ) -> dict[tuple[str, Fraction], Optional[PointId]]:
    """For each side and value: a point there at that f-distance from ``a``, or None."""
    require_valid(s)
    out = {}
    for m in as_value_set(value_set):
        for side in (LEFT, RIGHT):
            hits = [find_witness(s, Demand(ONE_STAR, (a,), side, m, c)) for c in (0, 1)]
            hits = [h for h in hits if h is not None]
            out[(side, m)] = min(hits, key=s.position) if hits else None
    return out
