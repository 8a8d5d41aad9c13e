"""Instance generators and brute-force oracles shared by the test modules."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from hypothesis import strategies as st

from lexforge.amalgam import AmalgamStrategy
from lexforge.core import LexStructure, pair, random_structure, random_superstructure

POOL = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2))


def brute_valid(s: LexStructure) -> bool:
    """Min-law straight from the definition, no shared code with the library."""
    ids = [p for p, _ in s.points]
    if len(set(ids)) != len(ids) or any(c not in (0, 1) for _, c in s.points):
        return False
    for i, j in itertools.combinations(ids, 2):
        if pair(i, j) not in s.fvals:
            return False
    if len(s.fvals) != len(ids) * (len(ids) - 1) // 2:
        return False
    f = lambda a, b: s.fvals[pair(a, b)]
    return all(f(x, z) == min(f(x, y), f(y, z)) for x, y, z in itertools.combinations(ids, 3))


def brute_embeds(src: LexStructure, tgt: LexStructure, m: dict) -> bool:
    if sorted(m) != sorted(src.ids) or len(set(m.values())) != len(m):
        return False
    tpos = {p: k for k, (p, _) in enumerate(tgt.points)}
    tcol = dict(tgt.points)
    img = [m[p] for p in src.ids]
    if any(q not in tpos for q in img):
        return False
    if [tpos[q] for q in img] != sorted(tpos[q] for q in img):
        return False
    if any(tcol[m[p]] != c for p, c in src.points):
        return False
    return all(tgt.fvals[pair(m[x], m[y])] == v for (x, y), v in src.fvals.items())


def random_triple(seed: int, max_size: int = 6, pool=POOL):
    """``(A, B, C)`` with A inside both; B's and C's new ids may clash."""
    rng = random.Random(seed)
    na = rng.randint(0, 3)
    a = random_structure(na, pool, seed)
    b = random_superstructure(a, rng.randint(0, max_size - na), pool, rng.randrange(10**9))
    c = random_superstructure(a, rng.randint(0, max_size - na), pool, rng.randrange(10**9))
    return a, b, c


def random_strategy(seed: int) -> AmalgamStrategy:
    rng = random.Random(seed ^ 0x5EED)
    bump = rng.choice([Fraction(0), Fraction(1, 3), Fraction(1), Fraction(5)])
    return AmalgamStrategy(
        c0_split=rng.randint(0, 4),
        m1_rule=lambda bound, both: bound + bump if both or bump else bound + 1,
    )


def all_structures(n: int, pool, colors=(0, 1)):
    """Every valid structure on ids ``0..n-1`` with f-values from ``pool``."""
    pairs = list(itertools.combinations(range(n), 2))
    for cols in itertools.product(colors, repeat=n):
        for vals in itertools.product(pool, repeat=len(pairs)):
            s = LexStructure.build(cols, dict(zip(pairs, vals)))
            if brute_valid(s):
                yield s


@st.composite
def structures(draw, max_size: int = 8, pool=POOL):
    n = draw(st.integers(0, max_size))
    seed = draw(st.integers(0, 2**31))
    return random_structure(n, pool, seed)
