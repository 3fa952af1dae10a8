"""Axiom tables of the arithmetic theories R~ and Q~.

Both theories read addition and multiplication as the ternary predicates
``A`` and ``M``.  Numeral parameters (``m``, ``n``) are part of the axiom
reference; the free variables (``x``, ``y``, ``z``) may be instantiated by
the kernel.
"""
from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    Add,
    And,
    Eq,
    Exists,
    Iff,
    Imp,
    Le,
    Mul,
    Not,
    Or,
    Succ,
    Var,
    ZERO,
    disjunction,
    numeral,
)

x, y, z, u = Var("x"), Var("y"), Var("z"), Var("u")

R_ARITY = {"R1": 2, "R2": 2, "R3": 2, "R4": 1, "R5": 1, "R6": 1}
Q_ARITY = {
    "Q0": 0, "Q1": 0, "Q2": 0, "Q3": 0, "Q4": 0, "Q5": 0,
    "Q6": 0, "Q7a": 0, "Q7b": 2, "Q8": 0,
}
THEORIES = {"R~": R_ARITY, "Q~": Q_ARITY}


class AxiomError(ValueError):
    pass


@dataclass(frozen=True)
class AxiomRef:
    theory: str
    id: str
    params: tuple[int, ...] = ()

    def __post_init__(self):
        table = THEORIES.get(self.theory)
        if table is None:
            raise AxiomError(f"unknown theory {self.theory!r}")
        if self.id not in table:
            raise AxiomError(f"{self.id} is not an axiom of {self.theory}")
        if len(self.params) != table[self.id]:
            raise AxiomError(f"{self.id} takes {table[self.id]} numeral parameter(s), got {len(self.params)}")
        if any((not isinstance(p, int)) or p < 0 for p in self.params):
            raise AxiomError("numeral parameters must be natural numbers")
        if self.id == "R3" and self.params[0] == self.params[1]:
            raise AxiomError("R3 is only an axiom for m != n")

    def __str__(self) -> str:
        if not self.params:
            return self.id
        return f"{self.id}({','.join(map(str, self.params))})"


def r4_disjunction(var, n: int):
    """``var = 0 | var = 1 | ... | var = n``, associated to the left."""
    return disjunction(Eq(var, numeral(k)) for k in range(n + 1))


def axiom_formula(ref: AxiomRef):
    """The formula of an axiom instance, with its free variables left open."""
    p = ref.params
    N = numeral
    match ref.id:
        case "R1":
            m, n = p
            return Iff(Add(N(m), N(n), x), Eq(N(m + n), x))
        case "R2":
            m, n = p
            return Iff(Mul(N(m), N(n), x), Eq(N(m * n), x))
        case "R3":
            m, n = p
            return Not(Eq(N(m), N(n)))
        case "R4":
            (n,) = p
            return Iff(Le(x, N(n)), r4_disjunction(x, n))
        case "R5":
            (n,) = p
            return Or(Le(x, N(n)), Le(N(n), x))
        case "R6":
            (n,) = p
            return Or(Le(x, N(n)), Not(Le(x, N(n))))
        case "Q0":
            return Or(Eq(x, y), Not(Eq(x, y)))
        case "Q1":
            return Not(Eq(Succ(x), ZERO))
        case "Q2":
            return Imp(Eq(Succ(x), Succ(y)), Eq(x, y))
        case "Q3":
            return Imp(Not(Eq(x, ZERO)), Exists("y", Eq(x, Succ(y))))
        case "Q4":
            return Iff(Add(x, ZERO, y), Eq(x, y))
        case "Q5":
            return Iff(Add(x, Succ(y), z), Exists("u", And(Add(x, y, u), Eq(z, Succ(u)))))
        case "Q6":
            return Iff(Mul(x, ZERO, y), Eq(y, ZERO))
        case "Q7a":
            return Imp(Mul(x, Succ(y), z), Exists("u", And(Mul(x, y, u), Add(u, x, z))))
        case "Q7b":
            # the summand added to m*n is m, the multiplicand
            m, n = p
            return Imp(Mul(N(m), N(n), u), Imp(Add(u, N(m), x), Mul(N(m), N(n + 1), x)))
        case "Q8":
            return Iff(Le(x, y), Exists("z", Add(z, x, y)))
    raise AxiomError(f"no axiom {ref.id}")  # pragma: no cover
