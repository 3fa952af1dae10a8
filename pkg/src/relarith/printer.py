"""Text rendering of terms and formulas in the grammar read by :mod:`relarith.parser`."""
from __future__ import annotations

from .syntax import (
    ATOM_TYPES,
    Add,
    And,
    BExists,
    BForall,
    Bot,
    Eq,
    Exists,
    Forall,
    Imp,
    Le,
    Mul,
    Or,
    Plus,
    Succ,
    Times,
    Var,
    Zero,
    as_iff,
    is_neg,
    numeral_value,
)

# precedence levels: -> / <-> = 1, | = 2, & = 3, ! = 4, atoms = 5
_IMP, _OR, _AND, _NOT, _ATOM = 1, 2, 3, 4, 5


def print_term(t, digits: bool = True) -> str:
    if digits:
        n = numeral_value(t)
        if n is not None:
            return str(n)
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Succ):
        return f"S({print_term(t.inner, digits)})"
    # classical terms: * binds tighter than +, both left-associative
    if isinstance(t, Plus):
        right = print_term(t.right, digits)
        if isinstance(t.right, Plus):
            right = f"({right})"
        return f"{print_term(t.left, digits)} + {right}"
    if isinstance(t, Times):
        left, right = print_term(t.left, digits), print_term(t.right, digits)
        if isinstance(t.left, Plus):
            left = f"({left})"
        if isinstance(t.right, (Plus, Times)):
            right = f"({right})"
        return f"{left} * {right}"
    raise TypeError(f"not a term: {t!r}")


def print_formula(p, digits: bool = True) -> str:
    """Render ``p``; ``parse_formula(print_formula(p)) == p`` for every AST."""
    return _fmt(p, 0, digits)


def _wrap(s: str, level: int, need: int) -> str:
    return f"({s})" if level > need else s


def _fmt(p, need: int, digits: bool) -> str:
    pt = lambda t: print_term(t, digits)  # noqa: E731
    if isinstance(p, Eq):
        return f"{pt(p.left)} = {pt(p.right)}"
    if isinstance(p, Le):
        return f"{pt(p.left)} <= {pt(p.right)}"
    if isinstance(p, (Add, Mul)):
        name = "A" if isinstance(p, Add) else "M"
        return f"{name}({pt(p.a)}, {pt(p.b)}, {pt(p.c)})"
    if isinstance(p, Bot):
        return "bot"
    if is_neg(p):
        return "!" + _fmt(p.left, _NOT, digits)
    iff = as_iff(p)
    if iff is not None:
        s = f"{_fmt(iff[0], _OR, digits)} <-> {_fmt(iff[1], _IMP, digits)}"
        return _wrap(s, need, _IMP)
    if isinstance(p, Imp):
        s = f"{_fmt(p.left, _OR, digits)} -> {_fmt(p.right, _IMP, digits)}"
        return _wrap(s, need, _IMP)
    if isinstance(p, Or):
        s = f"{_fmt(p.left, _OR, digits)} | {_fmt(p.right, _AND, digits)}"
        return _wrap(s, need, _OR)
    if isinstance(p, And):
        s = f"{_fmt(p.left, _AND, digits)} & {_fmt(p.right, _NOT, digits)}"
        return _wrap(s, need, _AND)
    if isinstance(p, (Forall, BForall, Exists, BExists)):
        q = "All" if isinstance(p, (Forall, BForall)) else "Ex"
        head = f"{q} {p.var}"
        if isinstance(p, (BForall, BExists)):
            head += f" <= {pt(p.bound)}"
        s = f"{head} . {_fmt(p.body, 0, digits)}"
        return f"({s})" if need > 0 else s
    raise TypeError(f"not a formula: {p!r}")


__all__ = ["print_term", "print_formula", "ATOM_TYPES"]
