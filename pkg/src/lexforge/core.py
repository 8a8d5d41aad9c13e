"""Finite colored linear orders with a first-difference function.

A :class:`LexStructure` is a finite point set listed in increasing
order, each point carrying a color in ``{0, 1}``, together with a
symmetric function ``f`` from distinct pairs into the rationals.  It is a
member of the class when ``f`` obeys the *min-law*: for ``x < y < z``,
``f(x, z) == min(f(x, y), f(y, z))``.  The prototype is the set of
words of a fixed length with ``f`` the first index where two words
differ (:func:`lex_model`).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence

import numpy as np

from .rational import RatLike, as_value_set, rat

PointId = int
Pair = tuple[int, int]


class LexError(ValueError):
    """Base class for domain errors (bad structures, inconsistent specs)."""


class InvalidStructureError(LexError):
    pass


class InconsistentSpecError(LexError):
    def __init__(self, message: str, forced: Optional[Fraction] = None):
        super().__init__(message)
        self.forced = forced


class EmbeddingError(LexError):
    pass


class InvariantViolation(RuntimeError):
    """A property that the construction guarantees failed to hold.

    Raised only on bugs; never part of normal control flow.
    """


def pair(x: int, y: int) -> Pair:
    return (x, y) if x <= y else (y, x)


@dataclass(frozen=True, eq=False)
class LexStructure:
    """Points in increasing order plus the pair function.

    ``points`` lists ``(id, color)`` from least to greatest.  ``fvals`` maps
    ``(min_id, max_id)`` to a Fraction.  Construction does not validate;
    call :func:`validate` for that.
    """

    points: tuple[tuple[PointId, int], ...] = ()
    fvals: Mapping[Pair, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        pts = tuple((int(i), int(c)) for i, c in self.points)
        fv = {pair(int(i), int(j)): rat(v) for (i, j), v in dict(self.fvals).items()}
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "fvals", fv)
        object.__setattr__(self, "_pos", {pid: k for k, (pid, _) in enumerate(pts)})
        object.__setattr__(self, "_color", dict(pts))

    @classmethod
    def build(cls, colors: Sequence[int], fvals: Mapping[Pair, RatLike],
              ids: Optional[Sequence[int]] = None) -> "LexStructure":
        """Points ``ids`` (default ``0..n-1``) in the given order; ``fvals`` is keyed by id."""
        ids = list(range(len(colors))) if ids is None else list(ids)
        return cls(tuple(zip(ids, colors)), {k: rat(v) for k, v in fvals.items()})

    @classmethod
    def from_rows(cls, colors: Sequence[int], upper: Sequence[Sequence[RatLike]]) -> "LexStructure":
        """``upper[i][j - i - 1]`` is ``f`` between positions ``i < j``."""
        fv = {}
        for i, row in enumerate(upper):
            for off, v in enumerate(row):
                fv[(i, i + 1 + off)] = rat(v)
        return cls.build(colors, fv)

    # -- accessors ---------------------------------------------------------
    @property
    def ids(self) -> tuple[PointId, ...]:
        return tuple(pid for pid, _ in self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[PointId]:
        return iter(self.ids)

    def __contains__(self, pid) -> bool:
        return pid in self._pos

    def color(self, pid: PointId) -> int:
        return self._color[pid]

    def position(self, pid: PointId) -> int:
        return self._pos[pid]

    def f(self, x: PointId, y: PointId) -> Fraction:
        if x == y:
            raise ValueError("f is only defined on distinct points")
        return self.fvals[pair(x, y)]

    def precedes(self, x: PointId, y: PointId) -> bool:
        return self._pos[x] < self._pos[y]

    def values(self) -> tuple[Fraction, ...]:
        """Sorted distinct f-values used."""
        return tuple(sorted(set(self.fvals.values())))

    def at(self, k: int) -> PointId:
        return self.points[k][0]

    def relabel(self, mapping: Mapping[PointId, PointId]) -> "LexStructure":
        pts = tuple((mapping[i], c) for i, c in self.points)
        fv = {pair(mapping[i], mapping[j]): v for (i, j), v in self.fvals.items()}
        return LexStructure(pts, fv)

    def canonical(self) -> "LexStructure":
        """Relabel ids to ``0..n-1`` in order."""
        return self.relabel({pid: k for k, pid in enumerate(self.ids)})

    def matrix(self) -> list[list[Optional[Fraction]]]:
        ids = self.ids
        return [[None if i == j else self.fvals.get(pair(i, j)) for j in ids] for i in ids]

    def __eq__(self, other) -> bool:
        if not isinstance(other, LexStructure):
            return NotImplemented
        return self.points == other.points and self.fvals == other.fvals

    def __hash__(self) -> int:
        return hash((self.points, frozenset(self.fvals.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{i}:{c}" for i, c in self.points)
        return f"LexStructure([{body}], {len(self.fvals)} pairs)"


EMPTY = LexStructure()


# -- validity ---------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    kind: str
    ids: tuple[PointId, ...]
    expected: Optional[Fraction] = None
    found: Optional[Fraction] = None


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def _structural_violations(s: LexStructure) -> list[Violation]:
    out = []
    seen = set()
    for pid, c in s.points:
        if pid in seen:
            out.append(Violation("duplicate_id", (pid,)))
        seen.add(pid)
        if c not in (0, 1):
            out.append(Violation("bad_color", (pid,)))
        if pid < 0:
            out.append(Violation("bad_id", (pid,)))
    for i, j in s.fvals:
        if i == j or i not in seen or j not in seen:
            out.append(Violation("stray_pair", (i, j)))
    ids = sorted(seen)
    for i, j in itertools.combinations(ids, 2):
        if (i, j) not in s.fvals:
            out.append(Violation("missing_pair", (i, j)))
    return out


def _min_law_python(s: LexStructure) -> list[Violation]:
    out = []
    ids = s.ids
    fv = s.fvals
    n = len(ids)
    for a in range(n):
        for b in range(a + 1, n):
            xy = fv.get(pair(ids[a], ids[b]))
            if xy is None:
                continue
            for c in range(b + 1, n):
                yz = fv.get(pair(ids[b], ids[c]))
                xz = fv.get(pair(ids[a], ids[c]))
                if yz is None or xz is None:
                    continue
                want = min(xy, yz)
                if xz != want:
                    out.append(Violation("min_law", (ids[a], ids[b], ids[c]), want, xz))
    return out


def _rank_matrix(s: LexStructure) -> tuple[np.ndarray, tuple[Fraction, ...]]:
    """Order-preserving integer encoding of f; exact because only order matters."""
    vals = s.values()
    rank = {v: k for k, v in enumerate(vals)}
    ids = s.ids
    n = len(ids)
    F = np.full((n, n), -1, dtype=np.int64)
    pos = {pid: k for k, pid in enumerate(ids)}
    for (i, j), v in s.fvals.items():
        F[pos[i], pos[j]] = F[pos[j], pos[i]] = rank[v]
    return F, vals


def _min_law_numpy(s: LexStructure) -> list[Violation]:
    F, vals = _rank_matrix(s)
    ids = s.ids
    n = len(ids)
    out = []
    for y in range(1, n - 1):
        want = np.minimum.outer(F[:y, y], F[y, y + 1:])
        bad = np.nonzero(want != F[:y, y + 1:])
        for a, c in zip(*bad):
            z = y + 1 + int(c)
            out.append(Violation("min_law", (ids[a], ids[y], ids[z]),
                                 vals[want[a, c]], vals[F[a, z]]))
    out.sort(key=lambda v: tuple(s.position(p) for p in v.ids))
    return out


def validate(s: LexStructure) -> ValidationReport:
    """Check membership: ids, colors, totality on pairs, and the min-law.

    Malformed input is reported, never raised.
    """
    structural = _structural_violations(s)
    if structural:
        dup = any(v.kind == "duplicate_id" for v in structural)
        law = [] if dup else _min_law_python(s)
        return ValidationReport(tuple(structural + law))
    return ValidationReport(tuple(_min_law_numpy(s)))


def require_valid(s: LexStructure, what: str = "structure") -> None:
    rep = validate(s)
    if not rep.ok:
        v = rep.violations[0]
        raise InvalidStructureError(
            f"{what} is not in the class: {len(rep.violations)} violation(s), first {v.kind} at {v.ids}")


def check_case_form(s: LexStructure) -> bool:
    """Three-case form of the triple condition, checked literally.

    For ``x < y < z`` one of: all three equal; ``f(x,y) == f(x,z) < f(y,z)``;
    ``f(x,z) == f(y,z) < f(x,y)``.  Deliberately independent of
    :func:`validate` so the two can be compared.
    """
    if _structural_violations(s):
        return False
    ids = s.ids
    for x, y, z in itertools.combinations(ids, 3):
        a, b, c = s.f(x, y), s.f(x, z), s.f(y, z)
        if a == b == c:
            continue
        if a == b < c:
            continue
        if b == c < a:
            continue
        return False
    return True


def monotonicity_violations(s: LexStructure) -> list[tuple[PointId, PointId, PointId]]:
    """Triples breaking ``f(z, a) <= f(z', a)`` for ``z < z' < a`` (or its mirror).

    Only consecutive comparisons are needed; the inequality chains.
    """
    ids = s.ids
    n = len(ids)
    bad = []
    for k, a in enumerate(ids):
        for j in range(k - 1):
            if s.f(ids[j], a) > s.f(ids[j + 1], a):
                bad.append((ids[j], ids[j + 1], a))
        for j in range(k + 1, n - 1):
            if s.f(a, ids[j]) < s.f(a, ids[j + 1]):
                bad.append((a, ids[j], ids[j + 1]))
    return bad


# -- quotients ----------------------------------------------------------------

def sim_partition(s: LexStructure, m: RatLike) -> list[list[PointId]]:
    """Classes of ``x ~ y  iff  x == y or f(x, y) > m``, in order of first member."""
    require_valid(s)
    m = rat(m)
    assigned = set()
    classes = []
    ids = s.ids
    for x in ids:
        if x in assigned:
            continue
        cls = [y for y in ids if y == x or (y not in assigned and s.f(x, y) > m)]
        assigned.update(cls)
        classes.append(cls)
    return classes


@dataclass(frozen=True)
class QuotientClass:
    representative: PointId
    members: tuple[PointId, ...]


def class_order(s: LexStructure, m: RatLike,
                pick: Optional[Callable[[Sequence[PointId]], PointId]] = None) -> list[QuotientClass]:
    """Order the classes by comparing one representative from each.

    ``pick`` chooses the representative (default: least member).  The
    resulting order does not depend on it.
    """
    classes = sim_partition(s, m)
    reps = [(pick(c) if pick else c[0], tuple(c)) for c in classes]
    for r, c in reps:
        if r not in c:
            raise ValueError(f"representative {r} is not in its class")
    def cmp(a, b):
        return -1 if s.precedes(a[0], b[0]) else (1 if s.precedes(b[0], a[0]) else 0)
    return [QuotientClass(r, c) for r, c in sorted(reps, key=cmp_to_key(cmp))]


# -- constructors -------------------------------------------------------------

def lex_words(k: int, n: int) -> list[tuple[int, ...]]:
    """All words of length ``n`` over ``0..k-1`` in lexicographic order."""
    return list(itertools.product(range(k), repeat=n))


def lex_model(k: int, n: int, values: Sequence[RatLike]) -> LexStructure:
    """Words of length ``n`` over ``k`` letters, ``f`` = value at first difference.

    Point ``i`` is the ``i``-th word in lexicographic order; all points are
    0-colored.
    """
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    vals = [rat(v) for v in values]
    if len(vals) != n:
        raise ValueError(f"expected {n} values, got {len(vals)}")
    if any(a >= b for a, b in zip(vals, vals[1:])):
        raise ValueError("values must be strictly increasing")
    words = lex_words(k, n)
    fv = {}
    for i, j in itertools.combinations(range(len(words)), 2):
        d = next(t for t in range(n) if words[i][t] != words[j][t])
        fv[(i, j)] = vals[d]
    return LexStructure.build([0] * len(words), fv)


def restrict(s: LexStructure, subset: Iterable[PointId]) -> LexStructure:
    """Induced substructure on ``subset`` (order and ids inherited)."""
    keep = set(subset)
    unknown = keep - set(s.ids)
    if unknown:
        raise KeyError(f"unknown point id(s) {sorted(unknown)}")
    pts = tuple(p for p in s.points if p[0] in keep)
    fv = {k: v for k, v in s.fvals.items() if k[0] in keep and k[1] in keep}
    return LexStructure(pts, fv)


# -- isomorphism bookkeeping --------------------------------------------------

def _sig(s: LexStructure, encode) -> tuple:
    ids = s.ids
    colors = tuple(c for _, c in s.points)
    upper = tuple(encode(s.f(x, y)) for x, y in itertools.combinations(ids, 2))
    return (len(ids), colors, upper)


def canonical_signature(s: LexStructure) -> tuple:
    """Equal iff isomorphic with every f-value kept exactly."""
    return _sig(s, lambda v: v)


def pattern_signature(s: LexStructure) -> tuple:
    """Equal iff isomorphic up to an order-isomorphism of the used values."""
    rank = {v: k for k, v in enumerate(s.values())}
    return _sig(s, rank.__getitem__)


@dataclass(frozen=True)
class Embedding:
    source: LexStructure
    target: LexStructure
    map: Mapping[PointId, PointId]

    def is_valid(self) -> bool:
        return is_embedding(self.source, self.target, self.map)

    def __call__(self, pid: PointId) -> PointId:
        return self.map[pid]


def is_embedding(src: LexStructure, tgt: LexStructure, mapping: Mapping[PointId, PointId]) -> bool:
    """Injective, order-, color- and f-preserving (f exactly)."""
    if set(mapping) != set(src.ids):
        return False
    img = [mapping[i] for i in src.ids]
    if len(set(img)) != len(img) or any(i not in tgt for i in img):
        return False
    if any(not tgt.precedes(a, b) for a, b in zip(img, img[1:])):
        return False
    if any(src.color(i) != tgt.color(mapping[i]) for i in src.ids):
        return False
    return all(src.f(x, y) == tgt.f(mapping[x], mapping[y])
               for x, y in itertools.combinations(src.ids, 2))


def identity_embedding(src: LexStructure, tgt: LexStructure) -> Embedding:
    return Embedding(src, tgt, {i: i for i in src.ids})


def is_substructure(a: LexStructure, b: LexStructure) -> bool:
    """``a`` sits inside ``b`` under the identity on ids."""
    return all(i in b for i in a.ids) and restrict(b, a.ids) == a


# -- one-point extensions -----------------------------------------------------

@dataclass(frozen=True, order=True)
class ExtensionSpec:
    """A new point at ``cut_index`` with its f-values to both neighbours.

    ``left_value`` is f to the greatest point below the cut, ``right_value``
    f to the least point above it.  Every other f-value is then forced.
    """

    cut_index: int
    color: int
    left_value: Optional[Fraction] = None
    right_value: Optional[Fraction] = None


def _neighbours(s: LexStructure, cut: int) -> tuple[Optional[PointId], Optional[PointId]]:
    lo = s.at(cut - 1) if cut > 0 else None
    hi = s.at(cut) if cut < len(s) else None
    return lo, hi


def check_spec(s: LexStructure, spec: ExtensionSpec) -> None:
    n = len(s)
    if not 0 <= spec.cut_index <= n:
        raise InconsistentSpecError(f"cut index {spec.cut_index} outside 0..{n}")
    if spec.color not in (0, 1):
        raise InconsistentSpecError(f"bad color {spec.color!r}")
    lo, hi = _neighbours(s, spec.cut_index)
    if (lo is None) != (spec.left_value is None):
        raise InconsistentSpecError("left_value must be given exactly when the cut has a lower side")
    if (hi is None) != (spec.right_value is None):
        raise InconsistentSpecError("right_value must be given exactly when the cut has an upper side")
    if lo is not None and hi is not None:
        forced = s.f(lo, hi)
        got = min(spec.left_value, spec.right_value)
        if got != forced:
            raise InconsistentSpecError(
                f"min(left, right) = {got} but f({lo}, {hi}) = {forced} is forced", forced)


def extension_row(s: LexStructure, spec: ExtensionSpec) -> dict[PointId, Fraction]:
    """f from the new point to every old one, by min-law propagation."""
    check_spec(s, spec)
    lo, hi = _neighbours(s, spec.cut_index)
    ids = s.ids
    row = {}
    for k in range(spec.cut_index):
        a = ids[k]
        row[a] = spec.left_value if a == lo else min(spec.left_value, s.f(a, lo))
    for k in range(spec.cut_index, len(ids)):
        a = ids[k]
        row[a] = spec.right_value if a == hi else min(spec.right_value, s.f(hi, a))
    return row


def fresh_id(*structures: LexStructure) -> PointId:
    return max((max(s.ids) for s in structures if len(s)), default=-1) + 1


def realize_extension(s: LexStructure, spec: ExtensionSpec,
                      new_id: Optional[PointId] = None) -> LexStructure:
    """Insert the point described by ``spec``; ``s`` embeds identically."""
    row = extension_row(s, spec)
    b = fresh_id(s) if new_id is None else new_id
    if b in s:
        raise ValueError(f"id {b} already used")
    pts = list(s.points)
    pts.insert(spec.cut_index, (b, spec.color))
    fv = dict(s.fvals)
    for a, v in row.items():
        fv[pair(a, b)] = v
    return LexStructure(tuple(pts), fv)


def boundary_pairs(s: LexStructure, cut: int, pool: Sequence[Fraction]):
    """All ``(left, right)`` boundary values from ``pool`` legal at ``cut``."""
    lo, hi = _neighbours(s, cut)
    if lo is None and hi is None:
        return [(None, None)]
    if lo is None:
        return [(None, q) for q in pool]
    if hi is None:
        return [(p, None) for p in pool]
    forced = s.f(lo, hi)
    return [(p, q) for p in pool for q in pool if min(p, q) == forced]


def enumerate_extensions(s: LexStructure, value_set: Iterable[RatLike]) -> list[ExtensionSpec]:
    """Every one-point extension with boundary values in ``value_set`` or already in ``s``."""
    pool = tuple(sorted(set(as_value_set(value_set)) | set(s.values())))
    out = []
    for cut in range(len(s) + 1):
        pairs = boundary_pairs(s, cut, pool)
        for color in (0, 1):
            out.extend(ExtensionSpec(cut, color, p, q) for p, q in pairs)
    return out


def random_structure(n: int, value_pool: Iterable[RatLike], seed: int) -> LexStructure:
    """Grow a structure one random consistent extension at a time."""
    if n < 0:
        raise ValueError("n must be non-negative")
    pool = as_value_set(value_pool)
    if n >= 2 and not pool:
        raise ValueError("need a nonempty value pool for two or more points")
    rng = random.Random(seed)
    s = EMPTY
    for _ in range(n):
        cut = rng.randrange(len(s) + 1)
        p, q = rng.choice(boundary_pairs(s, cut, pool))
        s = realize_extension(s, ExtensionSpec(cut, rng.randrange(2), p, q))
    return s


def random_superstructure(s: LexStructure, extra: int, value_pool: Iterable[RatLike],
                          seed: int, first_id: Optional[PointId] = None) -> LexStructure:
    """``s`` plus ``extra`` random points with fresh ids (from ``first_id`` on)."""
    pool = tuple(sorted(set(as_value_set(value_pool)) | set(s.values())))
    if extra and len(s) + extra >= 2 and not pool:
        raise ValueError("need a nonempty value pool")
    rng = random.Random(seed)
    nxt = fresh_id(s) if first_id is None else first_id
    for _ in range(extra):
        cut = rng.randrange(len(s) + 1)
        p, q = rng.choice(boundary_pairs(s, cut, pool))
        s = realize_extension(s, ExtensionSpec(cut, rng.randrange(2), p, q), new_id=nxt)
        nxt += 1
    return s
