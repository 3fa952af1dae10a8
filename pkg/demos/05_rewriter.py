"""
Removing + and * from classical formulas
========================================

Each rewrite step replaces one atom containing + or * and must shrink the
multiset of term depths.  The brute-force oracle then compares input and
output on every assignment with values up to 8.
"""

from relarith import parse_formula
from relarith.rewriter import (
    NormalFormFailure, agree_up_to, eliminate_functions, equivalence_verdicts, measure,
)

for text in ["x = y + z", "y * z <= x", "x <= y * z", "(x + y) * z = S(w)"]:
    phi = parse_formula(text, "classical")
    trace = []
    out = eliminate_functions(phi, "corrected", trace)
    print(f"{text:20} -> {out}")
    for st in trace:
        print(f"{'':22} {sorted(st.before.elements())} > {sorted(st.after.elements())}")
    assert agree_up_to(phi, out, 8) is None

# The literal equivalences, checked for + and * on values up to 8.
for v in equivalence_verdicts(8):
    print(v)

try:
    eliminate_functions(parse_formula("y * z <= x", "classical"), "strict")
except NormalFormFailure as e:
    print("strict:", e)
