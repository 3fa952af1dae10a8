"""Hypothesis strategies for terms and formulas."""
from hypothesis import strategies as st

from relarith.syntax import (
    BOT, Add, And, BExists, BForall, Eq, Imp, Le, Mul, Not, Or, Plus, Succ, Times, Var, numeral,
)

MAX_NUM = 3


def terms(scope=(), classical=False, depth=2):
    base = [st.integers(0, MAX_NUM).map(numeral)]
    if scope:
        names = st.sampled_from(sorted(scope)).map(Var)
        base += [names, names.map(Succ)]
    simple = st.one_of(*base)
    if not classical or depth == 0:
        return simple
    sub = terms(scope, True, depth - 1)
    return st.one_of(simple, st.builds(Plus, sub, sub), st.builds(Times, sub, sub))


def atoms(scope=()):
    t = terms(scope)
    return st.one_of(
        st.builds(Eq, t, t), st.builds(Le, t, t), st.builds(Add, t, t, t), st.builds(Mul, t, t, t),
    )


@st.composite
def formulas(draw, scope=(), depth=3, quantifiers=2, imp=True, bot=True):
    """Delta0 formulas whose free variables lie in ``scope``."""
    if depth == 0 or draw(st.integers(0, 3)) == 0:
        if bot and draw(st.integers(0, 12)) == 0:
            return BOT
        return draw(atoms(scope))
    kinds = ["and", "or", "not"] + (["imp"] if imp else []) + (["all", "ex"] if quantifiers else [])
    kind = draw(st.sampled_from(kinds))
    sub = dict(depth=depth - 1, quantifiers=quantifiers, imp=imp, bot=bot)
    if kind == "not":
        return Not(draw(formulas(scope, **sub)))
    if kind in ("and", "or", "imp"):
        a, b = draw(formulas(scope, **sub)), draw(formulas(scope, **sub))
        return {"and": And, "or": Or, "imp": Imp}[kind](a, b)
    var = f"q{len(scope)}"
    bound = draw(terms(scope))
    sub["quantifiers"] = quantifiers - 1
    body = draw(formulas(tuple(scope) + (var,), **sub))
    return (BForall if kind == "all" else BExists)(var, bound, body)


def sentences(depth=3, quantifiers=2, imp=True):
    return formulas((), depth, quantifiers, imp)


@st.composite
def classical_atoms(draw, scope):
    """One side simple, the other with + or * nested at most twice."""
    s = draw(terms(scope))
    big = draw(terms(scope, classical=True, depth=2).filter(lambda t: isinstance(t, (Plus, Times))))
    rel = draw(st.sampled_from([Eq, Le]))
    return rel(big, s) if draw(st.booleans()) else rel(s, big)


@st.composite
def classical_formulas(draw, scope=("x", "y", "z"), depth=2, quantifiers=1):
    if depth == 0 or draw(st.integers(0, 2)) == 0:
        return draw(classical_atoms(scope))
    kind = draw(st.sampled_from(["and", "or", "not"] + (["all", "ex"] if quantifiers else [])))
    sub = dict(depth=depth - 1, quantifiers=quantifiers)
    if kind == "not":
        return Not(draw(classical_formulas(scope, **sub)))
    if kind in ("and", "or"):
        return (And if kind == "and" else Or)(draw(classical_formulas(scope, **sub)),
                                              draw(classical_formulas(scope, **sub)))
    var = f"q{len(scope)}"
    bound = draw(st.one_of(st.sampled_from(sorted(scope)).map(Var), st.integers(0, MAX_NUM).map(numeral)))
    sub["quantifiers"] = quantifiers - 1
    body = draw(classical_formulas(tuple(scope) + (var,), **sub))
    return (BForall if kind == "all" else BExists)(var, bound, body)
