"""Recursive-descent parser for formula text.

Grammar (precedence from loosest to tightest: ``->``/``<->``, ``|``, ``&``, ``!``)::

    formula := disj [("->" | "<->") formula]
    disj    := conj {"|" conj}
    conj    := unary {"&" unary}
    unary   := "!" unary | quant | "bot" | "(" formula ")" | atom
    quant   := ("All" | "Ex") var ["<=" term] "." formula
    atom    := "A(" term "," term "," term ")" | "M(" ... ")" | term ("=" | "<=") term
    term    := "0" | digits | var | "S(" term ")"        (relational)
             | sum of products of those, with parentheses (classical)

Decimal literals are accepted as numerals.  Variables match
``[a-z][a-z0-9_]*`` (``bot`` is reserved); names starting with ``_`` are
reserved for generated variables and rejected unless ``allow_reserved``.
"""
from __future__ import annotations

import re

from .syntax import (
    BINARY_TYPES,
    BOT,
    BOUNDED_TYPES,
    QUANT_TYPES,
    Add,
    And,
    BExists,
    BForall,
    Eq,
    Exists,
    Forall,
    Iff,
    Imp,
    Le,
    Mul,
    Not,
    Or,
    Plus,
    Succ,
    SyntaxErrorAt,
    Times,
    Var,
    all_vars,
    free_vars,
    fresh_var,
    numeral,
    subst_many,
)

_TOKEN = re.compile(
    r"\s*(?:(?P<op><->|->|<=|[()=,.!&|+*])|(?P<num>\d+)|(?P<id>_?[A-Za-z][A-Za-z0-9_]*))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks, pos = [], 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise SyntaxErrorAt(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, language: str, allow_reserved: bool):
        if language not in ("relational", "classical"):
            raise ValueError(f"unknown language {language!r}")
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.classical = language == "classical"
        self.allow_reserved = allow_reserved

    # token helpers
    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, value: str) -> bool:
        kind, v, _ = self.peek()
        return kind in ("op", "id") and v == value

    def take(self, value: str):
        kind, v, pos = self.peek()
        if v != value or kind not in ("op", "id"):
            raise SyntaxErrorAt(f"expected {value!r}, found {v or 'end of input'!r}", pos)
        self.i += 1

    def error(self, msg: str):
        raise SyntaxErrorAt(msg, self.peek()[2])

    # formulas
    def formula(self):
        left = self.disj()
        if self.at("->"):
            self.take("->")
            return Imp(left, self.formula())
        if self.at("<->"):
            self.take("<->")
            return Iff(left, self.formula())
        return left

    def disj(self):
        left = self.conj()
        while self.at("|"):
            self.take("|")
            left = Or(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.at("&"):
            self.take("&")
            left = And(left, self.unary())
        return left

    def unary(self):
        kind, v, pos = self.peek()
        if self.at("!"):
            self.take("!")
            return Not(self.unary())
        if kind == "id" and v in ("All", "Ex"):
            return self.quant()
        if kind == "id" and v == "bot":
            self.i += 1
            return BOT
        if self.at("("):
            # a parenthesised formula, or (classical) a parenthesised term
            save = self.i
            try:
                self.take("(")
                f = self.formula()
                self.take(")")
                if not (self.at("=") or self.at("<=") or self.at("+") or self.at("*")):
                    return f
            except SyntaxErrorAt:
                pass
            self.i = save
        return self.atom()

    def quant(self):
        _, q, _ = self.peek()
        self.i += 1
        var = self.var()
        bound = None
        if self.at("<="):
            self.take("<=")
            bound = self.term()
            if var in _term_names(bound):
                self.error(f"bounded variable {var!r} occurs in its own bound")
        self.take(".")
        body = self.formula()
        if bound is None:
            return (Forall if q == "All" else Exists)(var, body)
        return (BForall if q == "All" else BExists)(var, bound, body)

    def var(self) -> str:
        kind, v, pos = self.peek()
        if kind != "id" or not re.fullmatch(r"_?[a-z][a-z0-9_]*", v) or v == "bot":
            raise SyntaxErrorAt(f"expected a variable, found {v!r}", pos)
        if v.startswith("_") and not self.allow_reserved:
            raise SyntaxErrorAt(f"variable names starting with '_' are reserved: {v!r}", pos)
        self.i += 1
        return v

    def atom(self):
        kind, v, pos = self.peek()
        if kind == "id" and v[0].isupper() and v != "S":
            if v not in ("A", "M"):
                raise SyntaxErrorAt(f"unknown predicate {v!r}", pos)
            if self.classical:
                raise SyntaxErrorAt(f"predicate {v} is not part of the classical language", pos)
            self.i += 1
            self.take("(")
            args = [self.term()]
            while self.at(","):
                self.take(",")
                args.append(self.term())
            self.take(")")
            if len(args) != 3:
                raise SyntaxErrorAt(f"{v} takes 3 arguments, got {len(args)}", pos)
            return (Add if v == "A" else Mul)(*args)
        left = self.term()
        if self.at("="):
            self.take("=")
            return Eq(left, self.term())
        if self.at("<="):
            self.take("<=")
            return Le(left, self.term())
        self.error("expected '=' or '<=' after term")

    # terms
    def term(self):
        t = self.product()
        while self.at("+"):
            pos = self.peek()[2]
            if not self.classical:
                raise SyntaxErrorAt("'+' is only available in the classical language", pos)
            self.take("+")
            t = Plus(t, self.product())
        return t

    def product(self):
        t = self.base_term()
        while self.at("*"):
            pos = self.peek()[2]
            if not self.classical:
                raise SyntaxErrorAt("'*' is only available in the classical language", pos)
            self.take("*")
            t = Times(t, self.base_term())
        return t

    def base_term(self):
        kind, v, pos = self.peek()
        if kind == "num":
            self.i += 1
            return numeral(int(v))
        if kind == "id" and v == "S":
            self.i += 1
            self.take("(")
            t = self.term()
            self.take(")")
            return Succ(t)
        if kind == "id" and v[0].isupper():
            raise SyntaxErrorAt(f"unknown function symbol {v!r}", pos)
        if self.at("(") and self.classical:
            self.take("(")
            t = self.term()
            self.take(")")
            return t
        return Var(self.var())


def _term_names(t) -> set[str]:
    from .syntax import term_vars

    return set(term_vars(t))


def parse_formula(text: str, language: str = "relational", *, allow_reserved: bool = False):
    """Parse ``text`` into a formula of the relational (default) or classical language."""
    p = _Parser(text, language, allow_reserved)
    f = p.formula()
    kind, v, pos = p.peek()
    if kind != "eof":
        raise SyntaxErrorAt(f"unexpected trailing input {v!r}", pos)
    return normalize_binders(f)


def normalize_binders(f):
    """Rename binders that shadow an enclosing binder or reuse a free variable
    name, so every bound name is distinct from the formula's free variables."""
    return _norm(f, frozenset(free_vars(f)), all_vars(f))


def _norm(f, taken, every):
    if isinstance(f, BINARY_TYPES):
        return type(f)(_norm(f.left, taken, every), _norm(f.right, taken, every))
    if isinstance(f, QUANT_TYPES) or isinstance(f, BOUNDED_TYPES):
        var, body = f.var, f.body
        if var in taken:
            new = fresh_var(every | taken, var)
            body = subst_many(body, {var: Var(new)})
            every = every | {new}
            var = new
        body = _norm(body, taken | {var}, every)
        if isinstance(f, QUANT_TYPES):
            return type(f)(var, body)
        return type(f)(var, f.bound, body)
    return f


def parse_term(text: str, language: str = "relational", *, allow_reserved: bool = False):
    p = _Parser(text, language, allow_reserved)
    t = p.term()
    kind, v, pos = p.peek()
    if kind != "eof":
        raise SyntaxErrorAt(f"unexpected trailing input {v!r}", pos)
    return t
