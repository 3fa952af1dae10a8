"""Abstract syntax for relational arithmetic and its classical cousin.

Terms are built from variables, ``0`` and ``S``; the classical language used
by the rewriter adds ``+`` and ``*``.  Formulas use ``&``, ``|``, ``->`` and
the constant ``bot``.  Negation and equivalence are notations::

    Not(p)    == Imp(p, BOT)
    Iff(p, q) == And(Imp(p, q), Imp(q, p))

Bounded quantifiers are real nodes (``BForall`` / ``BExists``) so that the
Delta_0 classification can be read off the syntax tree.  Their meaning is
fixed by :func:`expand_bounded`.

All nodes are immutable and hashable; hashes are cached on first use so that
repeated comparison of large, shared formulas stays cheap.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Union


class SyntaxErrorAt(ValueError):
    """A parse error carrying the offending character offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at offset {pos})")
        self.pos = pos


class CaptureError(ValueError):
    """Raised when a substitution would capture a variable of the substituted term."""

    def __init__(self, binder: str, var: str):
        super().__init__(f"substitution for {var!r} would be captured by binder {binder!r}")
        self.binder = binder
        self.var = var


class _Node:
    """Structural equality with a cached hash."""

    __slots__ = ()

    def _fields(self) -> tuple:
        return tuple(getattr(self, f) for f in self.__match_args__)

    def __hash__(self) -> int:
        d = self.__dict__
        h = d.get("_h")
        if h is None:
            h = hash((type(self).__name__,) + self._fields())
            object.__setattr__(self, "_h", h)
        return h

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if type(self) is not type(other) or hash(self) != hash(other):
            return False
        return self._fields() == other._fields()

    def __ne__(self, other) -> bool:
        return not self.__eq__(other)

    def __str__(self) -> str:
        from .printer import print_formula, print_term

        if isinstance(self, TERM_TYPES):
            return print_term(self)
        return print_formula(self)


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True, eq=False)
class Var(_Node):
    name: str


@dataclass(frozen=True, eq=False)
class Zero(_Node):
    pass


@dataclass(frozen=True, eq=False)
class Succ(_Node):
    inner: "Term"


@dataclass(frozen=True, eq=False)
class Plus(_Node):
    left: "Term"
    right: "Term"


@dataclass(frozen=True, eq=False)
class Times(_Node):
    left: "Term"
    right: "Term"


Term = Union[Var, Zero, Succ, Plus, Times]
TERM_TYPES = (Var, Zero, Succ, Plus, Times)
ZERO = Zero()


@lru_cache(maxsize=None)
def numeral(n: int) -> Term:
    """The numeral for ``n``: ``n`` applications of ``S`` to ``0``."""
    if n < 0:
        raise ValueError("numerals denote natural numbers")
    t: Term = ZERO
    for _ in range(n):
        t = Succ(t)
    return t


@lru_cache(maxsize=4096)
def numeral_value(t: Term) -> int | None:
    """The number a numeral denotes, or None if ``t`` is not a numeral."""
    k = 0
    while isinstance(t, Succ):
        t = t.inner
        k += 1
    return k if isinstance(t, Zero) else None


def is_simple(t: Term) -> bool:
    """True when ``t`` uses only variables, ``0`` and ``S``."""
    while isinstance(t, Succ):
        t = t.inner
    return isinstance(t, (Var, Zero))


def term_vars(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Zero):
        return frozenset()
    if isinstance(t, Succ):
        return term_vars(t.inner)
    return term_vars(t.left) | term_vars(t.right)


def subst_term(t: Term, mapping: Mapping[str, Term]) -> Term:
    """Simultaneous replacement of variables in a term."""
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, Zero):
        return t
    if isinstance(t, Succ):
        inner = subst_term(t.inner, mapping)
        return t if inner is t.inner else Succ(inner)
    left, right = subst_term(t.left, mapping), subst_term(t.right, mapping)
    if left is t.left and right is t.right:
        return t
    return type(t)(left, right)


# ---------------------------------------------------------------------------
# formulas


@dataclass(frozen=True, eq=False)
class Eq(_Node):
    left: Term
    right: Term


@dataclass(frozen=True, eq=False)
class Le(_Node):
    left: Term
    right: Term


@dataclass(frozen=True, eq=False)
class Add(_Node):
    """``A(a, b, c)``: the graph of addition, a + b = c."""

    a: Term
    b: Term
    c: Term


@dataclass(frozen=True, eq=False)
class Mul(_Node):
    """``M(a, b, c)``: the graph of multiplication, a * b = c."""

    a: Term
    b: Term
    c: Term


@dataclass(frozen=True, eq=False)
class Bot(_Node):
    pass


@dataclass(frozen=True, eq=False)
class And(_Node):
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, eq=False)
class Or(_Node):
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, eq=False)
class Imp(_Node):
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, eq=False)
class Forall(_Node):
    var: str
    body: "Formula"


@dataclass(frozen=True, eq=False)
class Exists(_Node):
    var: str
    body: "Formula"


@dataclass(frozen=True, eq=False)
class BForall(_Node):
    var: str
    bound: Term
    body: "Formula"


@dataclass(frozen=True, eq=False)
class BExists(_Node):
    var: str
    bound: Term
    body: "Formula"


Formula = Union[Eq, Le, Add, Mul, Bot, And, Or, Imp, Forall, Exists, BForall, BExists]
ATOM_TYPES = (Eq, Le, Add, Mul)
BINARY_TYPES = (And, Or, Imp)
QUANT_TYPES = (Forall, Exists)
BOUNDED_TYPES = (BForall, BExists)
BOT = Bot()


def Not(p: Formula) -> Formula:
    return Imp(p, BOT)


def Iff(p: Formula, q: Formula) -> Formula:
    return And(Imp(p, q), Imp(q, p))


def is_neg(p: Formula) -> bool:
    return isinstance(p, Imp) and isinstance(p.right, Bot)


def as_iff(p: Formula) -> tuple[Formula, Formula] | None:
    """``(a, b)`` if ``p`` is literally ``(a -> b) & (b -> a)``."""
    if (
        isinstance(p, And)
        and isinstance(p.left, Imp)
        and isinstance(p.right, Imp)
        and p.left.left == p.right.right
        and p.left.right == p.right.left
    ):
        return p.left.left, p.left.right
    return None


def disjunction(parts: Iterable[Formula]) -> Formula:
    """Left-associated disjunction ``((p0 | p1) | p2) ...``."""
    it = iter(parts)
    try:
        acc = next(it)
    except StopIteration:
        raise ValueError("empty disjunction") from None
    for p in it:
        acc = Or(acc, p)
    return acc


def conjunction(parts: Iterable[Formula]) -> Formula:
    it = iter(parts)
    acc = next(it)
    for p in it:
        acc = And(acc, p)
    return acc


def atom_terms(a: Formula) -> tuple[Term, ...]:
    return a._fields()


# ---------------------------------------------------------------------------
# variables


@lru_cache(maxsize=1 << 16)
def free_vars(p: Formula) -> frozenset[str]:
    """Free variables of a formula (or of a term)."""
    if isinstance(p, TERM_TYPES):
        return term_vars(p)
    if isinstance(p, ATOM_TYPES):
        return frozenset().union(*(term_vars(t) for t in p._fields()))
    if isinstance(p, Bot):
        return frozenset()
    if isinstance(p, BINARY_TYPES):
        return free_vars(p.left) | free_vars(p.right)
    if isinstance(p, QUANT_TYPES):
        return free_vars(p.body) - {p.var}
    if isinstance(p, BOUNDED_TYPES):
        return (free_vars(p.body) - {p.var}) | term_vars(p.bound)
    raise TypeError(f"not a formula: {p!r}")


def all_vars(p: Formula) -> frozenset[str]:
    """Every variable name occurring in ``p``, free or bound."""
    if isinstance(p, TERM_TYPES):
        return term_vars(p)
    if isinstance(p, ATOM_TYPES):
        return frozenset().union(*(term_vars(t) for t in p._fields()))
    if isinstance(p, Bot):
        return frozenset()
    if isinstance(p, BINARY_TYPES):
        return all_vars(p.left) | all_vars(p.right)
    if isinstance(p, QUANT_TYPES):
        return all_vars(p.body) | {p.var}
    return all_vars(p.body) | term_vars(p.bound) | {p.var}


def fresh_var(avoid: Iterable[str], base: str = "w") -> str:
    avoid = set(avoid)
    if base not in avoid:
        return base
    for k in itertools.count(1):
        cand = f"{base}{k}"
        if cand not in avoid:
            return cand
    raise AssertionError  # unreachable


# ---------------------------------------------------------------------------
# substitution


def _map_atoms(p: Formula, fn) -> Formula:
    return type(p)(*(fn(t) for t in p._fields()))


def substitute(p: Formula, x: str, t: Term) -> Formula:
    """Replace free occurrences of ``x`` by ``t``.

    Raises :class:`CaptureError` if a variable of ``t`` would become bound;
    this is the "t substitutable for x" side condition, checked rather than
    repaired.
    """
    if isinstance(t, TERM_TYPES) and isinstance(p, TERM_TYPES):
        return subst_term(p, {x: t})
    return _subst_strict(p, x, t, term_vars(t))


def _subst_strict(p: Formula, x: str, t: Term, tv: frozenset[str]) -> Formula:
    if x not in free_vars(p):
        return p
    if isinstance(p, ATOM_TYPES):
        return _map_atoms(p, lambda s: subst_term(s, {x: t}))
    if isinstance(p, BINARY_TYPES):
        return type(p)(_subst_strict(p.left, x, t, tv), _subst_strict(p.right, x, t, tv))
    if p.var in tv:
        raise CaptureError(p.var, x)
    body = _subst_strict(p.body, x, t, tv)
    if isinstance(p, QUANT_TYPES):
        return type(p)(p.var, body)
    return type(p)(p.var, subst_term(p.bound, {x: t}), body)


def subst_many(p: Formula, mapping: Mapping[str, Term]) -> Formula:
    """Simultaneous, capture-avoiding substitution.

    Binders that would capture a variable of a substituted term are renamed
    to a fresh name, so the result is alpha-equivalent to the textbook
    substitution.
    """
    mapping = {k: v for k, v in mapping.items() if k in free_vars(p) and v != Var(k)}
    if not mapping:
        return p
    if isinstance(p, ATOM_TYPES):
        return _map_atoms(p, lambda s: subst_term(s, mapping))
    if isinstance(p, BINARY_TYPES):
        return type(p)(subst_many(p.left, mapping), subst_many(p.right, mapping))
    incoming = frozenset().union(*(term_vars(v) for v in mapping.values()))
    var, body = p.var, p.body
    inner = dict(mapping)
    inner.pop(var, None)
    if var in incoming:
        new = fresh_var(incoming | all_vars(body) | set(mapping), var)
        inner[var] = Var(new)
        var = new
    body = subst_many(body, inner)
    if isinstance(p, QUANT_TYPES):
        return type(p)(var, body)
    return type(p)(var, subst_term(p.bound, mapping), body)


# ---------------------------------------------------------------------------
# bounded quantifiers and classification


@lru_cache(maxsize=1 << 16)
def expand_bounded(p: Formula) -> Formula:
    """Rewrite every bounded quantifier into its defining unbounded form::

        All x <= t . q   ==>   All x . (!(x <= t) | q)
        Ex x <= t . q    ==>   Ex x . (x <= t & q)
    """
    if isinstance(p, ATOM_TYPES) or isinstance(p, Bot):
        return p
    if isinstance(p, BINARY_TYPES):
        left, right = expand_bounded(p.left), expand_bounded(p.right)
        if left is p.left and right is p.right:
            return p
        return type(p)(left, right)
    body = expand_bounded(p.body)
    if isinstance(p, QUANT_TYPES):
        return p if body is p.body else type(p)(p.var, body)
    guard = Le(Var(p.var), p.bound)
    if isinstance(p, BForall):
        return Forall(p.var, Or(Not(guard), body))
    return Exists(p.var, And(guard, body))


class FormulaClass(enum.Enum):
    DELTA0 = "Delta0"
    SIGMA1 = "Sigma1"
    OTHER = "Other"


def _is_delta0(p: Formula) -> bool:
    if isinstance(p, ATOM_TYPES) or isinstance(p, Bot):
        return True
    if isinstance(p, BINARY_TYPES):
        return _is_delta0(p.left) and _is_delta0(p.right)
    if isinstance(p, BOUNDED_TYPES):
        return p.var not in term_vars(p.bound) and _is_delta0(p.body)
    return False


def classify(p: Formula) -> FormulaClass:
    """Delta0 when every quantifier is a bounded-quantifier node; Sigma1 when
    ``p`` is ``Ex x . q`` with ``q`` Delta0.  Expanded bounded forms are Other."""
    if _is_delta0(p):
        return FormulaClass.DELTA0
    if isinstance(p, Exists) and _is_delta0(p.body):
        return FormulaClass.SIGMA1
    return FormulaClass.OTHER


def is_relational(p: Formula) -> bool:
    """True when no term of ``p`` uses ``+`` or ``*``."""
    if isinstance(p, TERM_TYPES):
        return is_simple(p)
    if isinstance(p, ATOM_TYPES):
        return all(is_simple(t) for t in p._fields())
    if isinstance(p, Bot):
        return True
    if isinstance(p, BINARY_TYPES):
        return is_relational(p.left) and is_relational(p.right)
    if isinstance(p, QUANT_TYPES):
        return is_relational(p.body)
    return is_simple(p.bound) and is_relational(p.body)


# ---------------------------------------------------------------------------
# alpha equivalence


@lru_cache(maxsize=1 << 16)
def _canon(p: Formula, env: tuple[str, ...]) -> Formula:
    # env[i] is the name bound i binders up; bound names become "#<depth>".
    if isinstance(p, ATOM_TYPES):
        if not env:
            return p
        ren = {}
        for depth, name in enumerate(env):
            ren.setdefault(name, Var(f"#{len(env) - 1 - depth}"))
        return _map_atoms(p, lambda s: subst_term(s, ren))
    if isinstance(p, Bot):
        return p
    if isinstance(p, BINARY_TYPES):
        return type(p)(_canon(p.left, env), _canon(p.right, env))
    inner = (p.var,) + env
    body = _canon(p.body, inner)
    name = f"#{len(env)}"
    if isinstance(p, QUANT_TYPES):
        return type(p)(name, body)
    bound = _canon(Eq(p.bound, ZERO), env).left
    return type(p)(name, bound, body)


def canonical(p: Formula) -> Formula:
    """Sugar-free, alpha-normal representative: two formulas denote the same
    proof-theoretic object iff their canonical forms are equal."""
    return _canon(expand_bounded(p), ())


def same_formula(p: Formula, q: Formula) -> bool:
    """Equality up to bounded-quantifier expansion and renaming of bound variables."""
    return p == q or canonical(p) == canonical(q)
