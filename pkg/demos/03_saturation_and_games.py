"""Approximating the generic structure and comparing approximations.

Run: python3 demos/03_saturation_and_games.py
"""

import time
from fractions import Fraction

from lexforge import LexStructure, check_extension_axioms, ef_game, saturate
from lexforge.analysis import witness_density

V = (Fraction(0), Fraction(1))
seed = LexStructure(((0, 0), (1, 1)), {(0, 1): Fraction(0)})

out, log = saturate(seed, V, rounds=2, seed_rng=1)
for row in log.per_round:
    print(row)

old = log.born_before(2)
print("axioms hold on points born before round 2:", check_extension_axioms(out, V, old).holds)
print("axioms hold on every point:", check_extension_axioms(out, V).holds)

# each old point sees witnesses at every value on both sides
print("density around point 0:", witness_density(out, 0, V))

# two runs with different rng are indistinguishable by two-move games over old points
other, log2 = saturate(seed, V, rounds=2, seed_rng=2)
t0 = time.perf_counter()
same = ef_game(out, other, 2, V, spoiler_pool1=old, spoiler_pool2=log2.born_before(2))
print(f"sizes {len(out)} and {len(other)}; equivalent at depth 2: {same} ({time.perf_counter() - t0:.2f}s)")

# the seed on its own is far from saturated
print("seed vs saturation at depth 2:", ef_game(seed, out, 2, V))
