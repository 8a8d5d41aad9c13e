"""Branches of a tree as cuts of its leaf order, then the same through the command line.

Run: python3 demos/05_trees_and_cli.py
"""

import subprocess
import sys

from lexforge import FiniteTree, tree_to_order
from lexforge.formats import structure_to_dot

for h in range(1, 7):
    to = tree_to_order(FiniteTree.complete(2, h))
    print(f"height {h}: {len(to.leaves):>2} leaves, {len(to.branch_cut):>2} branches, injective = {to.is_injective()}")

t = FiniteTree.from_nested([[[], []], [[]]])
to = tree_to_order(t)
for branch, cut in to.branch_cut.items():
    print("branch", branch, "-> cut", cut)
print(structure_to_dot(to.structure))


def lexforge(*args, stdin=""):
    p = subprocess.run([sys.executable, "-m", "lexforge.cli", *args], input=stdin,
                       capture_output=True, text=True)
    return p.returncode, p.stdout.strip()


code, gen = lexforge("gen", "--n", "4", "--values", "0,1/2,1", "--seed", "7")
print(code, gen)
print(lexforge("validate", stdin=gen))
print(lexforge("complete", stdin=gen))
print(lexforge("validate", stdin="{broken"))
