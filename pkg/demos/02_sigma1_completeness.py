"""
Every true Sigma_1 sentence has a proof
=======================================

The synthesizer reads the sentence, asks the evaluator which side is true
at each node, and assembles a proof over R~ in the weak logic.  The kernel
then re-checks the result; the synthesizer itself is not trusted.
"""

from relarith import check, evaluate, parse_formula, prove_delta0, prove_sigma1, Refusal

for text in ["A(1, 1, 2)", "1 <= 2", "!(1 = 2)", "!M(1, 1, 2)", "!(2 <= 1)",
             "All y <= 1 . y <= 1", "Ex y <= 3 . (M(y, y, y) & !(y = 0))"]:
    phi = parse_formula(text)
    script = prove_delta0(phi)
    print(f"{text:32} eval={evaluate(phi)!s:5}  steps={len(script):4}  {check(script)}")

# A Sigma_1 sentence: search for the witness, prove the instance, then Ex-intro.
phi = parse_formula("Ex v . A(v, 1, 3)")
print(evaluate(phi), check(prove_sigma1(phi)))

# Without a witness under the cap the producer declines; that is not a claim
# that the sentence is false.
try:
    prove_sigma1(parse_formula("Ex v . A(v, v, 7)"), cap=50)
except Refusal as r:
    print("refused:", r.reason)
