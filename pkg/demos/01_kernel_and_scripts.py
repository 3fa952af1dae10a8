"""
Checking proofs by hand
=======================

A proof script is a list of steps; the kernel recomputes every conclusion
from the schema bindings and compares it with the stated one.
"""

from relarith import check, format_script, parse_formula, parse_script
from relarith.kernel import KernelError

# A two-line proof in the weak logic: identity, then assertion.
text = """
profile: QL0
theory: none
step 1 axiom identity [phi=0 = 0] :: 0 = 0 -> 0 = 0
step 2 rule assertion from 1 [phi=0 = 0 -> 0 = 0; psi=bot] :: ((0 = 0 -> 0 = 0) -> bot) -> bot
"""
script = parse_script(text)
print(check(script))

# Tamper with the conclusion of step 1 and the kernel notices.
bad = text.replace(":: 0 = 0 -> 0 = 0", ":: 0 = 0 -> 1 = 1")
try:
    check(parse_script(bad))
except KernelError as e:
    print("rejected:", e)

# Generalisation is guarded: x must not be free in the antecedent.
side = """
profile: QL0
theory: none
hyp: x = 0 -> x = 0
step 1 theory hyp :: x = 0 -> x = 0
step 2 rule all-intro from 1 [x=x; chi=x = 0; psi=x = 0] :: x = 0 -> (All x . x = 0)
"""
try:
    check(parse_script(side))
except KernelError as e:
    print("rejected:", e)

# Scripts round-trip through the text format.
print(format_script(script))
print(parse_formula("All y <= 2 . y <= 2"))
