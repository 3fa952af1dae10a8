"""Elimination of ``+`` and ``*`` from classical Delta_0 formulas.

A classical atom is *simple* when its terms use only variables, ``0`` and
``S``; *almost simple* when it reads ``x = t1 o t2`` with ``x`` a variable,
``o`` one of ``+``/``*`` and ``t1``, ``t2`` simple.  Anything else is
*complex*.  Rewriting removes one complex atom per step until only simple
and almost-simple atoms remain; :func:`eliminate_functions` then replaces
the almost-simple ones by ``A``/``M`` atoms.

Two modes are offered.

``strict``
    applies the three textbook-style equivalences literally::

        t = t1 o t2   <->  Ex x1<=t . Ex x2<=t . t = x1 o x2
        t1 o t2 <= t  <->  Ex x1<=t . Ex x2<=t . x1 o x2 <= t
        t <= t1 o t2  <->  Ex x1<=t . Ex x2<=t . x1<=t1 & x2<=t2 & t = x1 o x2

    These are not valid over the naturals (see :func:`equivalence_verdicts`),
    and the second one does not shrink the measure, so the driver stops with
    :class:`NormalFormFailure` instead of looping.

``corrected``
    translates the chosen atom straight into relational form, naming every
    compound subterm by a fresh bounded variable.  Each step is checked to
    decrease the measure in the Dershowitz-Manna ordering.

Term depth: variables and ``0`` have depth 0; ``S``, ``+`` and ``*`` add 1.
The measure is the multiset of depths of all term occurrences (subterms
included) inside atoms; quantifier bounds are not counted.
"""
from __future__ import annotations

import enum
import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterator

from .syntax import (
    ATOM_TYPES,
    BINARY_TYPES,
    BOUNDED_TYPES,
    QUANT_TYPES,
    ZERO,
    Add,
    And,
    BExists,
    Bot,
    Eq,
    FormulaClass,
    Le,
    Mul,
    Not,
    Or,
    Plus,
    Succ,
    Times,
    Var,
    Zero,
    all_vars,
    classify,
    conjunction,
    disjunction,
    free_vars,
    is_relational,
    is_simple,
)

MODES = ("corrected", "strict")


class NormalFormFailure(RuntimeError):
    """Rewriting cannot bring the formula to normal form."""

    def __init__(self, message: str, formula=None):
        super().__init__(message)
        self.formula = formula


class AtomShape(enum.Enum):
    SIMPLE = "Simple"
    ALMOST_SIMPLE = "AlmostSimple"
    COMPLEX = "Complex"


def _compound(t) -> bool:
    return not is_simple(t)


def atom_shape(a) -> AtomShape:
    if isinstance(a, Bot) or all(is_simple(t) for t in a._fields()):
        return AtomShape.SIMPLE
    if (isinstance(a, Eq) and isinstance(a.left, Var) and isinstance(a.right, (Plus, Times))
            and is_simple(a.right.left) and is_simple(a.right.right)):
        return AtomShape.ALMOST_SIMPLE
    return AtomShape.COMPLEX


# ---------------------------------------------------------------------------
# measure


def depth(t) -> int:
    if isinstance(t, (Var, Zero)):
        return 0
    if isinstance(t, Succ):
        return 1 + depth(t.inner)
    return 1 + max(depth(t.left), depth(t.right))


def _occurrences(t) -> Iterator[int]:
    yield depth(t)
    if isinstance(t, Succ):
        yield from _occurrences(t.inner)
    elif isinstance(t, (Plus, Times)):
        yield from _occurrences(t.left)
        yield from _occurrences(t.right)


def _atoms(p) -> Iterator:
    if isinstance(p, ATOM_TYPES) or isinstance(p, Bot):
        yield p
    elif isinstance(p, BINARY_TYPES):
        yield from _atoms(p.left)
        yield from _atoms(p.right)
    else:
        yield from _atoms(p.body)


def measure(p) -> Counter:
    """Multiset of term depths over all atom term occurrences of ``p``."""
    m: Counter = Counter()
    for a in _atoms(p):
        if not isinstance(a, Bot):
            for t in a._fields():
                m.update(_occurrences(t))
    return m


def dm_leq(a: Counter, b: Counter) -> bool:
    """Every element ``a`` has more of is outweighed by a larger one ``b`` has more of."""
    for x in set(a) | set(b):
        if a[x] > b[x] and not any(y > x and b[y] > a[y] for y in b):
            return False
    return True


def dm_less(a: Counter, b: Counter) -> bool:
    a, b = Counter(a), Counter(b)
    return +a != +b and dm_leq(a, b)


# ---------------------------------------------------------------------------
# locating the next atom


def _replace_first(p, pick: Callable, build: Callable):
    """Replace the leftmost atom with ``pick(atom)`` true by ``build(atom)``.
    Returns ``(new_formula, atom)`` or ``(p, None)``."""
    if isinstance(p, ATOM_TYPES) or isinstance(p, Bot):
        return (build(p), p) if pick(p) else (p, None)
    if isinstance(p, BINARY_TYPES):
        left, hit = _replace_first(p.left, pick, build)
        if hit is not None:
            return type(p)(left, p.right), hit
        right, hit = _replace_first(p.right, pick, build)
        return (type(p)(p.left, right), hit) if hit is not None else (p, None)
    if isinstance(p, QUANT_TYPES):
        body, hit = _replace_first(p.body, pick, build)
        return (type(p)(p.var, body), hit) if hit is not None else (p, None)
    if isinstance(p, BOUNDED_TYPES):
        if not is_simple(p.bound):
            raise NormalFormFailure(f"quantifier bound {p.bound} is not simple", p)
        body, hit = _replace_first(p.body, pick, build)
        return (type(p)(p.var, p.bound, body), hit) if hit is not None else (p, None)
    raise TypeError(f"not a formula: {p!r}")


class _Fresh:
    """Supplies ``_r<k>`` names not occurring in a formula."""

    def __init__(self, p):
        self.avoid = set(all_vars(p))
        self.counter = itertools.count()

    def __call__(self) -> str:
        while True:
            name = f"_r{next(self.counter)}"
            if name not in self.avoid:
                self.avoid.add(name)
                return name


# ---------------------------------------------------------------------------
# corrected translation


def _graph(op, a, b, c):
    return Add(a, b, c) if isinstance(op, Plus) else Mul(a, b, c)


def _equals(s, big, fresh):
    """Relational formula for ``s = big`` with ``s`` simple, ``big`` compound."""
    if not isinstance(s, (Var, Zero)):
        w = Var(fresh())
        return BExists(w.name, s, And(Eq(w, s), _equals(w, big, fresh)))
    if isinstance(big, Succ):
        w = Var(fresh())
        return BExists(w.name, s, And(_equals(w, big.inner, fresh), Eq(s, Succ(w))))

    def name_args(pairs):
        names, defs, binders = [], [], []
        for arg in pairs:
            if is_simple(arg):
                names.append(arg)
            else:
                w = Var(fresh())
                names.append(w)
                defs.append(_equals(w, arg, fresh))
                binders.append(w.name)
        return names, defs, binders

    def close(binders, body):
        for v in reversed(binders):
            body = BExists(v, s, body)
        return body

    p, q = big.left, big.right
    if isinstance(big, Plus) or (is_simple(p) and is_simple(q)):
        names, defs, binders = name_args((p, q))
        return close(binders, conjunction(defs + [_graph(big, names[0], names[1], s)]))
    # a product with a compound factor: the factors are only bounded by s
    # when neither is zero
    names, defs, binders = name_args((p, q))
    zero_cases = [And(_is_zero(f, fresh), Eq(s, ZERO)) for f in (p, q)]
    main = close(binders, conjunction(defs + [_graph(big, names[0], names[1], s)]))
    return disjunction(zero_cases + [main])


def _is_zero(t, fresh):
    return Eq(t, ZERO) if is_simple(t) else _equals(ZERO, t, fresh)


def _translate(a, fresh):
    left, right = a.left, a.right
    if _compound(left) and _compound(right):
        raise NormalFormFailure(f"both sides of {a} contain + or *; unsupported", a)
    if isinstance(a, Eq):
        s, big = (left, right) if _compound(right) else (right, left)
        return _equals(s, big, fresh)
    w = Var(fresh())
    if _compound(left):  # big <= s
        return BExists(w.name, right, _equals(w, left, fresh))
    # s <= big: no w <= s with w = big and w != s
    return Not(BExists(w.name, left, And(_equals(w, right, fresh), Not(Eq(w, left)))))


# ---------------------------------------------------------------------------
# strict translation


def _strict(a, fresh):
    if isinstance(a, Eq):
        if isinstance(a.right, (Plus, Times)) and is_simple(a.left):
            t, op = a.left, a.right
        elif isinstance(a.left, (Plus, Times)) and is_simple(a.right):
            t, op = a.right, a.left
        else:
            raise NormalFormFailure(f"no equivalence applies to {a}", a)
        x1, x2 = Var(fresh()), Var(fresh())
        return "eq", BExists(x1.name, t, BExists(x2.name, t, Eq(t, type(op)(x1, x2))))
    if isinstance(a.left, (Plus, Times)) and is_simple(a.right):
        t, op = a.right, a.left
        x1, x2 = Var(fresh()), Var(fresh())
        return "le-left", BExists(x1.name, t, BExists(x2.name, t, Le(type(op)(x1, x2), t)))
    if isinstance(a.right, (Plus, Times)) and is_simple(a.left):
        t, op = a.left, a.right
        x1, x2 = Var(fresh()), Var(fresh())
        body = conjunction([Le(x1, op.left), Le(x2, op.right), Eq(t, type(op)(x1, x2))])
        return "le-right", BExists(x1.name, t, BExists(x2.name, t, body))
    raise NormalFormFailure(f"no equivalence applies to {a}", a)


# ---------------------------------------------------------------------------
# driver


@dataclass(frozen=True)
class RewriteStep:
    formula: object
    rule: str
    atom: object
    replacement: object
    before: Counter
    after: Counter

    @property
    def decreased(self) -> bool:
        return dm_less(self.after, self.before)


def _pending(a) -> bool:
    return isinstance(a, (Eq, Le)) and atom_shape(a) is AtomShape.COMPLEX


def rewrite_step(p, mode: str = "corrected") -> RewriteStep | None:
    """One rewrite on the leftmost complex atom; None when none is left."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    fresh = _Fresh(p)
    out: dict = {}

    def build(a):
        if mode == "corrected":
            out["rule"], out["rep"] = "translate", _translate(a, fresh)
        else:
            out["rule"], out["rep"] = _strict(a, fresh)
        return out["rep"]

    new, hit = _replace_first(p, _pending, build)
    if hit is None:
        return None
    return RewriteStep(new, out["rule"], hit, out["rep"], measure(p), measure(new))


def finalize(p):
    """Replace almost-simple atoms ``x = t1 o t2`` by ``A``/``M`` atoms."""
    while True:
        new, hit = _replace_first(
            p, lambda a: isinstance(a, Eq) and atom_shape(a) is AtomShape.ALMOST_SIMPLE,
            lambda a: _graph(a.right, a.right.left, a.right.right, a.left))
        if hit is None:
            return p
        p = new


def rewrite_trace(p, mode: str = "corrected", max_steps: int = 10_000) -> list[RewriteStep]:
    """All steps up to normal form.  Stops with :class:`NormalFormFailure`
    when a step fails to decrease the measure or the step budget runs out."""
    steps = []
    for _ in range(max_steps):
        st = rewrite_step(p, mode)
        if st is None:
            return steps
        steps.append(st)
        if not st.decreased:
            raise NormalFormFailure(
                f"rewriting {st.atom} does not decrease the measure; no normal form reachable", p)
        p = st.formula
    raise NormalFormFailure(f"no normal form within {max_steps} steps", p)


def eliminate_functions(p, mode: str = "corrected", trace: list | None = None):
    """Relational formula equivalent (in corrected mode) to classical ``p``."""
    steps = rewrite_trace(p, mode)
    if trace is not None:
        trace.extend(steps)
    out = finalize(steps[-1].formula if steps else p)
    if not is_relational(out):
        raise NormalFormFailure(f"residual + or * in {out}", out)
    return out


# ---------------------------------------------------------------------------
# oracle


def agree_up_to(p, q, bound: int = 8, variables=None):
    """Compare ``p`` and ``q`` on every assignment of their free variables
    with values ``<= bound``.  Returns None when they agree, else a
    counterexample assignment."""
    import numpy as np

    from .semantics import truth_table

    variables = sorted(variables or (free_vars(p) | free_vars(q)))
    diff = truth_table(p, variables, bound) != truth_table(q, variables, bound)
    if not diff.any():
        return None
    idx = np.argwhere(diff)[0] if variables else ()
    return {v: int(i) for v, i in zip(variables, idx)}


@dataclass(frozen=True)
class Verdict:
    name: str
    op: str
    valid: bool
    counterexample: dict | None

    def __str__(self) -> str:
        if self.valid:
            return f"{self.name} [{self.op}]: holds up to bound"
        cx = ", ".join(f"{k}={v}" for k, v in self.counterexample.items())
        return f"{self.name} [{self.op}]: fails at {cx}"


def equivalence_verdicts(bound: int = 8) -> list[Verdict]:
    """Check each literal equivalence, for ``+`` and ``*``, on variables
    ``t, t1, t2`` ranging over ``0..bound``."""
    from .syntax import Iff

    t, t1, t2 = Var("t"), Var("t1"), Var("t2")
    out = []
    for op_name, op in (("+", Plus), ("*", Times)):
        atoms = {
            "eq": Eq(t, op(t1, t2)),
            "le-left": Le(op(t1, t2), t),
            "le-right": Le(t, op(t1, t2)),
        }
        for name, atom in atoms.items():
            _, rhs = _strict(atom, _Fresh(atom))
            cx = agree_up_to(atom, rhs, bound, ["t", "t1", "t2"])
            out.append(Verdict(name, op_name, cx is None, cx))
    return out


def check_output(p, out, bound: int = 8) -> None:
    """Raise AssertionError unless ``out`` is relational Delta_0 and agrees with ``p``."""
    if classify(out) is not FormulaClass.DELTA0 or not is_relational(out):
        raise AssertionError(f"output is not relational Delta0: {out}")
    cx = agree_up_to(p, out, bound)
    if cx is not None:
        raise AssertionError(f"input and output differ at {cx}")


__all__ = [
    "MODES", "NormalFormFailure", "AtomShape", "atom_shape", "depth", "measure", "dm_leq",
    "dm_less", "RewriteStep", "rewrite_step", "finalize", "rewrite_trace", "eliminate_functions",
    "agree_up_to", "Verdict", "equivalence_verdicts", "check_output",
]
