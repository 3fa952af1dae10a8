"""Classical evaluation in the standard model of arithmetic.

Bounded quantifiers range over ``0..value(bound)``.  The unbounded
expansions produced by :func:`relarith.syntax.expand_bounded` are recognised
and evaluated the same way.  A top-level unbounded existential is searched
up to a cap; running out of candidates yields :class:`FalseUpToBound`,
which deliberately refuses to act as a boolean.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .syntax import (
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
    free_vars,
    is_neg,
    term_vars,
)

DEFAULT_CAP = 10**6


class EvalError(ValueError):
    pass


@dataclass(frozen=True)
class TrueWithWitness:
    witness: int

    def __bool__(self) -> bool:
        return True

    def __str__(self) -> str:
        return f"true witness={self.witness}"


@dataclass(frozen=True)
class FalseUpToBound:
    """No witness up to ``bound``; says nothing about larger numbers."""

    bound: int

    def __bool__(self):
        raise TypeError("FalseUpToBound is not a truth value; compare explicitly")

    def __str__(self) -> str:
        return f"unknown-up-to {self.bound}"


def eval_term(t, sigma: Mapping[str, int]) -> int:
    n = 0
    while isinstance(t, Succ):
        t = t.inner
        n += 1
    if isinstance(t, Zero):
        return n
    if isinstance(t, Var):
        try:
            return n + sigma[t.name]
        except KeyError:
            raise EvalError(f"unbound variable {t.name!r}") from None
    if isinstance(t, Plus):
        return n + eval_term(t.left, sigma) + eval_term(t.right, sigma)
    if isinstance(t, Times):
        return n + eval_term(t.left, sigma) * eval_term(t.right, sigma)
    raise TypeError(f"not a term: {t!r}")


def _bounded_view(p):
    """``(kind, var, bound, body)`` for a bounded quantifier, sugared or expanded."""
    if isinstance(p, BForall):
        return "all", p.var, p.bound, p.body
    if isinstance(p, BExists):
        return "ex", p.var, p.bound, p.body
    if isinstance(p, Forall):
        b = p.body
        if (isinstance(b, Or) and is_neg(b.left) and isinstance(b.left.left, Le)
                and b.left.left.left == Var(p.var) and p.var not in term_vars(b.left.left.right)):
            return "all", p.var, b.left.left.right, b.right
    if isinstance(p, Exists):
        b = p.body
        if (isinstance(b, And) and isinstance(b.left, Le) and b.left.left == Var(p.var)
                and p.var not in term_vars(b.left.right)):
            return "ex", p.var, b.left.right, b.right
    return None


def _truth(p, sigma: dict) -> bool:
    if isinstance(p, Eq):
        return eval_term(p.left, sigma) == eval_term(p.right, sigma)
    if isinstance(p, Le):
        return eval_term(p.left, sigma) <= eval_term(p.right, sigma)
    if isinstance(p, Add):
        return eval_term(p.a, sigma) + eval_term(p.b, sigma) == eval_term(p.c, sigma)
    if isinstance(p, Mul):
        return eval_term(p.a, sigma) * eval_term(p.b, sigma) == eval_term(p.c, sigma)
    if isinstance(p, Bot):
        return False
    if isinstance(p, And):
        return _truth(p.left, sigma) and _truth(p.right, sigma)
    if isinstance(p, Or):
        return _truth(p.left, sigma) or _truth(p.right, sigma)
    if isinstance(p, Imp):
        return (not _truth(p.left, sigma)) or _truth(p.right, sigma)
    view = _bounded_view(p)
    if view is None:
        raise EvalError(f"unbounded quantifier {type(p).__name__} {p.var!r} cannot be evaluated")
    kind, var, bound, body = view
    top = eval_term(bound, sigma)
    saved = sigma.get(var)
    try:
        for k in range(top + 1):
            sigma[var] = k
            if _truth(body, sigma) != (kind == "all"):
                return kind != "all"
        return kind == "all"
    finally:
        if saved is None:
            sigma.pop(var, None)
        else:
            sigma[var] = saved


def _check_cover(p, sigma):
    missing = free_vars(p) - set(sigma)
    if missing:
        raise EvalError(f"unbound variable(s): {', '.join(sorted(missing))}")


def evaluate(p, sigma: Mapping[str, int] | None = None, cap: int = DEFAULT_CAP):
    """Classical truth value of ``p`` under ``sigma``.

    Returns a bool for quantifier-free and bounded input; for a top-level
    unbounded existential returns :class:`TrueWithWitness` or
    :class:`FalseUpToBound`.
    """
    sigma = dict(sigma or {})
    _check_cover(p, sigma)
    if isinstance(p, Exists):
        # a Sigma1 sentence, even when its matrix happens to start with a guard
        view = _bounded_view(p)
        limit = cap if view is None else min(cap, eval_term(view[2], sigma))
        w = _search(p, sigma, limit)
        return FalseUpToBound(cap) if w is None else TrueWithWitness(w)
    return _truth(p, sigma)


eval_formula = evaluate


def _search(p, sigma: dict, cap: int):
    for w in range(cap + 1):
        sigma[p.var] = w
        if _truth(p.body, sigma):
            return w
    return None


def find_witness(p, cap: int = DEFAULT_CAP, sigma: Mapping[str, int] | None = None):
    """Least ``w <= cap`` with the matrix true, or None when exhausted."""
    if not (isinstance(p, Exists) and _is_bounded_only(p.body)):
        raise EvalError("find_witness expects a Sigma1 formula")
    sigma = dict(sigma or {})
    _check_cover(p, sigma)
    return _search(p, sigma, cap)


def _is_bounded_only(p) -> bool:
    try:
        _probe(p)
        return True
    except EvalError:
        return False


def _probe(p):
    if isinstance(p, (And, Or, Imp)):
        _probe(p.left)
        _probe(p.right)
    elif isinstance(p, (Forall, Exists, BForall, BExists)):
        if _bounded_view(p) is None:
            raise EvalError("unbounded")
        _probe(_bounded_view(p)[3])


def holds(p, sigma: Mapping[str, int] | None = None) -> bool:
    """Truth of a formula the evaluator can decide (no unbounded search)."""
    sigma = dict(sigma or {})
    _check_cover(p, sigma)
    return _truth(p, sigma)


__all__ = [
    "DEFAULT_CAP", "EvalError", "TrueWithWitness", "FalseUpToBound", "eval_term", "evaluate",
    "eval_formula", "find_witness", "holds", "truth_table",
]


# ---------------------------------------------------------------------------
# vectorised truth tables


def _vterm(t, env):
    import numpy as np

    if isinstance(t, Zero):
        return np.int64(0)
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise EvalError(f"unbound variable {t.name!r}") from None
    if isinstance(t, Succ):
        return _vterm(t.inner, env) + 1
    if isinstance(t, Plus):
        return _vterm(t.left, env) + _vterm(t.right, env)
    if isinstance(t, Times):
        return _vterm(t.left, env) * _vterm(t.right, env)
    raise TypeError(f"not a term: {t!r}")


def _vtruth(p, env, shape):
    import numpy as np

    if isinstance(p, Eq):
        return np.broadcast_to(_vterm(p.left, env) == _vterm(p.right, env), shape)
    if isinstance(p, Le):
        return np.broadcast_to(_vterm(p.left, env) <= _vterm(p.right, env), shape)
    if isinstance(p, (Add, Mul)):
        a, b, c = (_vterm(t, env) for t in (p.a, p.b, p.c))
        return np.broadcast_to((a + b if isinstance(p, Add) else a * b) == c, shape)
    if isinstance(p, Bot):
        return np.zeros(shape, dtype=bool)
    if isinstance(p, And):
        return _vtruth(p.left, env, shape) & _vtruth(p.right, env, shape)
    if isinstance(p, Or):
        return _vtruth(p.left, env, shape) | _vtruth(p.right, env, shape)
    if isinstance(p, Imp):
        return ~_vtruth(p.left, env, shape) | _vtruth(p.right, env, shape)
    view = _bounded_view(p)
    if view is None:
        raise EvalError(f"unbounded quantifier {type(p).__name__} {p.var!r} cannot be evaluated")
    kind, var, bound, body = view
    top = np.broadcast_to(_vterm(bound, env), shape)
    acc = np.ones(shape, dtype=bool) if kind == "all" else np.zeros(shape, dtype=bool)
    inner = dict(env)
    for k in range(int(top.max(initial=0)) + 1):
        inner[var] = np.int64(k)
        active = top >= k
        val = _vtruth(body, inner, shape)
        if kind == "all":
            acc &= ~active | val
        else:
            acc |= active & val
    return acc


def truth_table(p, variables, bound: int):
    """Truth values of ``p`` for every assignment of ``variables`` to
    ``0..bound``, as a boolean array with one axis per variable."""
    import numpy as np

    variables = list(variables)
    missing = free_vars(p) - set(variables)
    if missing:
        raise EvalError(f"unbound variable(s): {', '.join(sorted(missing))}")
    shape = (bound + 1,) * len(variables)
    env = {}
    for i, v in enumerate(variables):
        idx = [1] * len(variables)
        idx[i] = bound + 1
        env[v] = np.arange(bound + 1, dtype=np.int64).reshape(idx)
    return np.array(_vtruth(p, env, shape), dtype=bool)
