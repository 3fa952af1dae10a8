"""
A separator for two disjoint sets
=================================

A = {0, 2} and B = {1} are given by Delta_0 formulas in x and v.  The
separator phi(x) is provable at every member of A, and its negation is
provable at every member of B.
"""

from relarith import SeparatorSpec, build_separator, check, evaluate, parse_formula, prove_separator
from relarith import Refusal

spec = SeparatorSpec(parse_formula("(x = 0 | x = 2) & v = 0"), parse_formula("x = 1 & v = 0"))
sep = build_separator(spec)
print("phi(x) =", sep.phi)

for n in (0, 2):
    s = prove_separator(spec, n, "pos")
    print(n, "in A:", check(s), "| eval:", evaluate(sep.at(n)))

s = prove_separator(spec, 1, "neg")
print(1, "in B:", check(s))

# 5 is in neither set, so neither side is available.
try:
    prove_separator(spec, 5, "neg", cap=1000)
except Refusal as r:
    print("refused:", r)
