"""Gluing two extensions of a common part.

Run: python3 demos/02_amalgamation.py
"""

from fractions import Fraction

from lexforge import AmalgamStrategy, LexStructure, amalgamate, check_amalgam, joint_embed
from lexforge.core import random_structure, random_superstructure
from lexforge.formats import dump_structure

# A = {a}; B puts b below a at f = 2, C puts c above a at f = 3
a = LexStructure(((0, 0),), {})
b = LexStructure(((1, 0), (0, 0)), {(0, 1): Fraction(2)})
c = LexStructure(((0, 0), (2, 0)), {(0, 2): Fraction(3)})
am = amalgamate(a, b, c)
print("result:", dump_structure(am.result))
tr = am.traces[0]
print(f"m0 = {tr.m0}, l = {tr.l}, u = {tr.u}, rule per point of C: {tr.cases}")

# when the new point is equally close to everything, C's points form the middle block
# and the split decides which of them go below it
b2 = LexStructure(((0, 0), (1, 0)), {(0, 1): Fraction(2)})
c2 = LexStructure(((0, 0), (2, 0)), {(0, 2): Fraction(2)})
for split in (0, 1):
    r = amalgamate(a, b2, c2, AmalgamStrategy(c0_split=split)).result
    print(f"split {split}: order {r.ids}, f(1, 2) = {r.f(1, 2)}")

# random triples: the square always commutes and the result is in the class
pool = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2))
ok = 0
for seed in range(200):
    base = random_structure(2, pool, seed)
    bb = random_superstructure(base, 3, pool, seed + 1000)
    cc = random_superstructure(base, 3, pool, seed + 2000)
    ok += check_amalgam(amalgamate(base, bb, cc), base)
print(f"{ok}/200 random amalgams check out")

# with nothing shared, B goes entirely below C at a value below all used ones
j = joint_embed(b, c).result
print("joint embedding:", dump_structure(j))
