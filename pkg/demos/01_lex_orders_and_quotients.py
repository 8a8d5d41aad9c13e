"""Words under the lexicographic order, and their f-quotients.

Run: python3 demos/01_lex_orders_and_quotients.py
"""

from fractions import Fraction

from lexforge import check_case_form, class_order, lex_model, sim_partition, validate
from lexforge.core import lex_words

# length-2 words over {0, 1}; f is the value attached to the first index where two words differ
s = lex_model(2, 2, (0, 1))
words = ["".join(map(str, w)) for w in lex_words(2, 2)]
print("points:", dict(zip(s.ids, words)))
for x, y in [(0, 1), (0, 2), (1, 2), (2, 3)]:
    print(f"  f({words[x]}, {words[y]}) = {s.f(x, y)}")

# the min-law is exactly what makes this a member of the class
print("valid:", validate(s).ok, "| three-case form:", check_case_form(s))

# breaking one value is caught, with the triple and the forced value
broken = type(s)(s.points, {**s.fvals, (0, 2): Fraction(1)})
for v in validate(broken).violations[:3]:
    print("  violation", v.kind, v.ids, "expected", v.expected, "found", v.found)

# x ~m y when f(x, y) > m; raising m splits classes, never merges them
for m in (-1, 0, 1):
    named = [[words[p] for p in c] for c in sim_partition(s, m)]
    print(f"m = {m:>2}: {named}")

# classes inherit the order from any choice of representatives
last = [q.members for q in class_order(s, 0, pick=lambda c: c[-1])]
first = [q.members for q in class_order(s, 0)]
print("class order independent of representatives:", last == first)

big = lex_model(3, 3, (0, 1, 2))
print(f"3 letters, length 3: {len(big)} points, valid = {validate(big).ok}")
