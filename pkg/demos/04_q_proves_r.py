"""
Q~ proves every axiom of R~
===========================

Each R~ axiom instance is derived from the Q~ axioms in the stronger
logic.  The metainductions become loops in the generator, so the script
size grows with the numeral parameters.
"""

import time

from relarith import check
from relarith.theories import axiom_formula, AxiomRef, q_proves_r

for ident, params in [("R1", (2, 3)), ("R2", (2, 2)), ("R3", (3, 1)), ("R4", (3,)),
                      ("R5", (3,)), ("R6", (3,))]:
    t = time.perf_counter()
    s = q_proves_r(ident, params)
    j = check(s)
    print(f"{ident}{params}: {len(s):5} steps, {time.perf_counter() - t:.2f}s  {j.theorem}")
    assert j.theorem == axiom_formula(AxiomRef("R~", ident, params))
