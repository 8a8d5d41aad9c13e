"""Cuts, inserting into them, and filling every gap.

Run: python3 demos/04_cuts_and_completion.py
"""

from fractions import Fraction

from lexforge import (
    GapClass,
    GapProfile,
    WitnessSide,
    check_supremum,
    classify_gap_profile,
    complete_structure,
    embed_linear_order,
    enumerate_cuts,
    insert_into_cut,
    lex_model,
)
from lexforge.core import InconsistentSpecError

s = lex_model(2, 2, (0, 1))
cuts = enumerate_cuts(s)
print(f"{len(cuts)} cuts:", [sorted(c.lower) for c in cuts])

# the middle cut sits between 01 and 10, which have f = 0; one side value must be 0
mid = cuts[2]
t = insert_into_cut(s, mid, 1, Fraction(0), Fraction(1))
print("inserted:", t.ids, "f to neighbours:", t.f(1, 4), t.f(4, 2))
try:
    insert_into_cut(s, mid, 1, Fraction(1), Fraction(1))
except InconsistentSpecError as e:
    print("refused:", e)

# completion puts a 1-colored point in every internal cut and leaves the 0-colored ones alone
full = complete_structure(s)
print("completed:", [(p, c) for p, c in full.points])

# suprema are decided by search; the f-criterion is only a sufficient condition
print("is 2 the supremum of {0, 1}?", check_supremum(s, 2, {0, 1}))
print("is 3 the supremum of {0}?", check_supremum(s, 3, {0}))

# any linear order embeds with constant f
print("constant f on 5 points:", embed_linear_order(5, 3).values())

# gap profiles of infinite cuts are supplied symbolically
for side in WitnessSide:
    p = GapProfile(side, False, False, True, True)
    print(f"witness {side.value:>4}, no sup, cofinal and coinitial -> {classify_gap_profile(p).value}")
print(classify_gap_profile(GapProfile(WitnessSide.IN_E, True, True, True, True)) is GapClass.NOT_GAP)
