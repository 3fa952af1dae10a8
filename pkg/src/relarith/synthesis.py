"""Proof producers over R~ in QL0: Sigma1-completeness and the separator.

Each case of the completeness induction has its own builder method
(``_pos_*`` proves a true sentence, ``_neg_*`` proves the negation of a false
one).  The evaluator is consulted at every node to pick the side.  Outputs
are plain :class:`ProofScript` objects; nothing here is trusted.
"""
from __future__ import annotations

from dataclasses import dataclass

from .axioms import r4_disjunction
from .kernel import ProofScript
from .parser import normalize_binders
from .semantics import DEFAULT_CAP, EvalError, find_witness, holds
from .syntax import (
    Add,
    And,
    BExists,
    BForall,
    Bot,
    BOT,
    Eq,
    Exists,
    FormulaClass,
    Imp,
    Le,
    Mul,
    Not,
    Or,
    Var,
    all_vars,
    canonical,
    classify,
    free_vars,
    fresh_var,
    is_neg,
    numeral,
    numeral_value,
    substitute,
)
from .theories.builder import ProofBuilder

N = numeral


class Refusal(Exception):
    """A producer declined; ``reason`` is a short machine-readable code."""

    def __init__(self, reason: str, message: str):
        super().__init__(f"{reason}: {message}")
        self.reason = reason
        self.message = message


def _value(t) -> int:
    v = numeral_value(t)
    if v is None:
        raise Refusal("not-a-sentence", f"term {t} is not closed")
    return v


class Synthesizer:
    """Builds R~ proofs inside one :class:`ProofBuilder`, sharing sub-proofs."""

    def __init__(self, builder: ProofBuilder | None = None):
        self.b = builder or ProofBuilder("QL0", "R~")
        self._pos: dict = {}
        self._neg: dict = {}

    # entry points -------------------------------------------------------

    def true(self, phi) -> int:
        key = canonical(phi)
        h = self._pos.get(key)
        if h is None:
            h = self._prove_true(phi)
            self._pos[key] = h
        return h

    def false(self, phi) -> int:
        """A handle proving ``phi -> bot``."""
        key = canonical(phi)
        h = self._neg.get(key)
        if h is None:
            h = self._prove_false(phi)
            self._neg[key] = h
        return h

    def _truth(self, phi) -> bool:
        try:
            return holds(phi)
        except EvalError as e:
            raise Refusal("outside-class", str(e)) from None

    def _prove_true(self, phi) -> int:
        if not self._truth(phi):
            raise Refusal("false", f"{phi} is false in N")
        if isinstance(phi, Eq):
            return self._pos_eq(phi)
        if isinstance(phi, (Add, Mul)):
            return self._pos_arith(phi)
        if isinstance(phi, Le):
            return self._pos_le(_value(phi.left), _value(phi.right))
        if isinstance(phi, And):
            return self.b.adj(self.true(phi.left), self.true(phi.right))
        if isinstance(phi, Or):
            return self._pos_or(phi)
        if is_neg(phi):
            return self.false(phi.left)
        if isinstance(phi, Imp):
            return self._pos_imp(phi)
        if isinstance(phi, BExists):
            return self._pos_bexists(phi)
        if isinstance(phi, BForall):
            return self._pos_bforall(phi)
        raise Refusal("outside-class", f"no Delta0 case for {type(phi).__name__}")

    def _prove_false(self, phi) -> int:
        if self._truth(phi):
            raise Refusal("true", f"{phi} is true in N")
        if isinstance(phi, Bot):
            return self.b.identity(BOT)
        if isinstance(phi, Eq):
            return self._neg_eq(_value(phi.left), _value(phi.right))
        if isinstance(phi, (Add, Mul)):
            return self._neg_arith(phi)
        if isinstance(phi, Le):
            return self._neg_le(_value(phi.left), _value(phi.right))
        if isinstance(phi, And):
            return self._neg_and(phi)
        if isinstance(phi, Or):
            return self.b.or_elim(self.false(phi.left), self.false(phi.right))
        if is_neg(phi):
            return self.b.dni(self.true(phi.left))
        if isinstance(phi, Imp):
            return self._neg_imp(phi)
        if isinstance(phi, BExists):
            return self._neg_bexists(phi)
        if isinstance(phi, BForall):
            return self._neg_bforall(phi)
        raise Refusal("outside-class", f"no Delta0 case for {type(phi).__name__}")

    # positive atoms -------------------------------------------------------

    def _pos_eq(self, phi) -> int:
        return self.b.eq_id(phi.left)

    def _pos_arith(self, phi) -> int:
        a, c, k = _value(phi.a), _value(phi.b), _value(phi.c)
        ident = "R1" if isinstance(phi, Add) else "R2"
        ax = self.b.theory_axiom(ident, (a, c), x=N(k))   # A(a,c,k) <-> a+c = k
        return self.b.mp(self.b.eq_id(N(k)), self.b.iff_rl(ax))

    def _pos_le(self, m: int, n: int) -> int:
        d = r4_disjunction(N(m), n)
        inj = self.b.disjunct_intro(d, m, n + 1)
        in_d = self.b.mp(self.b.eq_id(N(m)), inj)
        return self.b.mp(in_d, self.b.iff_rl(self.b.theory_axiom("R4", (n,), x=N(m))))

    # positive connectives ------------------------------------------------

    def _pos_or(self, phi) -> int:
        if self._truth(phi.left):
            return self.b.mp(self.true(phi.left), self.b.or_intro_l(phi.left, phi.right))
        return self.b.mp(self.true(phi.right), self.b.or_intro_r(phi.left, phi.right))

    def _pos_imp(self, phi) -> int:
        if self._truth(phi.right):
            return self.b.weaken(self.true(phi.right), phi.left)
        raise Refusal("outside-class", "a true implication with a false consequent other than bot "
                      "has no case in the completeness induction")

    def _pos_bexists(self, phi) -> int:
        k = _value(phi.bound)
        for m in range(k + 1):
            inst = substitute(phi.body, phi.var, N(m))
            if self._truth(inst):
                pair = self.b.adj(self._pos_le(m, k), self.true(inst))
                body = And(Le(Var(phi.var), phi.bound), phi.body)
                return self.b.mp(pair, self.b.ex_intro(phi.var, body, N(m)))
        raise AssertionError("unreachable: evaluator said true")  # pragma: no cover

    def _cover(self, y: str, bound, body, proofs) -> int:
        """``!(y <= k) | body(y)`` from proofs of ``body(m)`` for every m <= k."""
        b, k = self.b, _value(bound)
        yv = Var(y)
        parts = [b.aux(proofs[m], body, y, y, N(m)) for m in range(k + 1)]
        d_to_body = b.or_elim_many(parts)                                  # D_k(y) -> body(y)
        r4 = b.theory_axiom("R4", (k,), x=yv)
        le_to_body = b.trans(b.iff_lr(r4), d_to_body)                      # y <= k -> body(y)
        guard = Le(yv, bound)
        left = b.trans(le_to_body, b.or_intro_r(Not(guard), body))
        right = b.or_intro_l(Not(guard), body)
        r6 = b.theory_axiom("R6", (k,), x=yv)
        return b.mp(r6, b.or_elim(left, right))

    def _pos_bforall(self, phi) -> int:
        k = _value(phi.bound)
        proofs = [self.true(substitute(phi.body, phi.var, N(m))) for m in range(k + 1)]
        return self.b.gen(self._cover(phi.var, phi.bound, phi.body, proofs), phi.var)

    # negative cases -------------------------------------------------------

    def _neg_eq(self, m: int, n: int) -> int:
        return self.b.theory_axiom("R3", (m, n))

    def _neg_arith(self, phi) -> int:
        a, c, k = _value(phi.a), _value(phi.b), _value(phi.c)
        ident, val = ("R1", a + c) if isinstance(phi, Add) else ("R2", a * c)
        ax = self.b.theory_axiom(ident, (a, c), x=N(k))
        return self.b.trans(self.b.iff_lr(ax), self._neg_eq(val, k))

    def _neg_le(self, m: int, n: int) -> int:
        parts = [self._neg_eq(m, k) for k in range(n + 1)]
        d_false = self.b.or_elim_many(parts)
        r4 = self.b.theory_axiom("R4", (n,), x=N(m))
        return self.b.trans(self.b.iff_lr(r4), d_false)

    def _neg_and(self, phi) -> int:
        if not self._truth(phi.left):
            return self.b.trans(self.b.and_elim_l(phi.left, phi.right), self.false(phi.left))
        return self.b.trans(self.b.and_elim_r(phi.left, phi.right), self.false(phi.right))

    def _neg_imp(self, phi) -> int:
        # phi.left true, phi.right false: (a -> b) -> b, then b -> bot
        asr = self.b.assertion(self.true(phi.left), phi.right)
        return self.b.trans(asr, self.false(phi.right))

    def _neg_bexists(self, phi) -> int:
        k = _value(phi.bound)
        body = Not(phi.body)
        proofs = [self.false(substitute(phi.body, phi.var, N(m))) for m in range(k + 1)]
        cover = self._cover(phi.var, phi.bound, body, proofs)              # !(y<=k) | !chi(y)
        neg_conj = self.b.morg(cover)                                      # !(y<=k & chi(y))
        return self.b.ex_elim(neg_conj, phi.var)

    def _neg_bforall(self, phi) -> int:
        k = _value(phi.bound)
        for m in range(k + 1):
            inst = substitute(phi.body, phi.var, N(m))
            if not self._truth(inst):
                guard = Le(N(m), phi.bound)
                nn = self.b.dni(self._pos_le(m, k))                        # !(m<=k) -> bot
                both = self.b.or_elim(nn, self.false(inst))
                matrix = Or(Not(Le(Var(phi.var), phi.bound)), phi.body)
                ins = self.b.all_ins(phi.var, matrix, N(m))
                assert canonical(self.b.concl(both).left) == canonical(Or(Not(guard), inst))
                return self.b.trans(ins, both)
        raise AssertionError("unreachable: evaluator said false")  # pragma: no cover

    # Sigma1 -------------------------------------------------------------

    def sigma1(self, phi, cap: int = DEFAULT_CAP) -> int:
        if classify(phi) is not FormulaClass.SIGMA1:
            raise Refusal("not-sigma1", f"{phi} is not a Sigma1 formula")
        if free_vars(phi):
            raise Refusal("not-a-sentence", f"free variables {sorted(free_vars(phi))}")
        w = find_witness(phi, cap)
        if w is None:
            raise Refusal("witness-exhausted", f"no witness up to {cap}; this is not a falsity claim")
        inst = substitute(phi.body, phi.var, N(w))
        return self.b.mp(self.true(inst), self.b.ex_intro(phi.var, phi.body, N(w)))


def _delta0_sentence(phi):
    if classify(phi) is not FormulaClass.DELTA0:
        raise Refusal("not-delta0", f"{phi} is not a Delta0 formula")
    if free_vars(phi):
        raise Refusal("not-a-sentence", f"free variables {sorted(free_vars(phi))}")
    return normalize_binders(phi)


def prove_true_delta0(phi) -> ProofScript:
    phi = _delta0_sentence(phi)
    s = Synthesizer()
    return s.b.script(upto=s.true(phi))


def prove_false_delta0(phi) -> ProofScript:
    phi = _delta0_sentence(phi)
    s = Synthesizer()
    return s.b.script(upto=s.false(phi))


def prove_delta0(phi) -> ProofScript:
    """Proof of ``phi`` or of ``!phi``, whichever the evaluator supports."""
    phi = _delta0_sentence(phi)
    s = Synthesizer()
    h = s.true(phi) if holds(phi) else s.false(phi)
    return s.b.script(upto=h)


def prove_sigma1(phi, cap: int = DEFAULT_CAP) -> ProofScript:
    phi = normalize_binders(phi)
    s = Synthesizer()
    return s.b.script(upto=s.sigma1(phi, cap))


# ---------------------------------------------------------------------------
# separator


@dataclass(frozen=True)
class SeparatorSpec:
    """Two Delta0 formulas in ``x`` and ``v`` defining A and B as
    ``{n : Ex v . alpha(n, v)}`` and ``{n : Ex v . beta(n, v)}``."""

    alpha: object
    beta: object


@dataclass(frozen=True)
class SeparatorFormula:
    psi: object
    phi: object
    u: str

    def at(self, n: int):
        return substitute(self.phi, "x", N(n))


def build_separator(spec: SeparatorSpec) -> SeparatorFormula:
    for name, f in (("alpha", spec.alpha), ("beta", spec.beta)):
        if classify(f) is not FormulaClass.DELTA0:
            raise ValueError(f"{name} must be Delta0")
        extra = free_vars(f) - {"x", "v"}
        if extra:
            raise ValueError(f"{name} has free variable(s) outside x, v: {', '.join(sorted(extra))}")
    u = fresh_var(all_vars(spec.alpha) | all_vars(spec.beta) | {"x", "v"}, "u")
    beta_u = substitute(spec.beta, "v", Var(u))
    psi = Not(Or(Not(spec.alpha), BExists(u, Var("v"), beta_u)))
    return SeparatorFormula(psi, Exists("v", psi), u)


def _member(f, n: int, cap: int):
    return find_witness(Exists("v", substitute(f, "x", N(n))), cap)


GUARD_CAP = 10**4


def prove_separator(spec: SeparatorSpec, n: int, side: str, cap: int = DEFAULT_CAP,
                    check_range: int = 10, guard_cap: int = GUARD_CAP) -> ProofScript:
    """``phi(n)`` when ``side == "pos"`` (n in A), ``!phi(n)`` when ``"neg"`` (n in B).

    Before anything else, ``0..check_range-1`` is swept for numbers in both
    A and B, searching witnesses up to ``guard_cap``.
    """
    if side not in ("pos", "neg"):
        raise ValueError(f"side must be 'pos' or 'neg', not {side!r}")
    sep = build_separator(spec)
    for k in range(check_range):
        if _member(spec.alpha, k, guard_cap) is not None and _member(spec.beta, k, guard_cap) is not None:
            raise Refusal("not-disjoint", f"{k} lies in both A and B")
    nn = N(n)
    if side == "pos":
        if _member(spec.alpha, n, cap) is None:
            raise Refusal("not-member", f"{n} is not in A (searched witnesses up to {cap})")
        return prove_sigma1(sep.at(n), cap)
    m = _member(spec.beta, n, cap)
    if m is None:
        raise Refusal("not-member", f"{n} is not in B (searched witnesses up to {cap})")
    syn = Synthesizer()
    b = syn.b
    v, u = Var("v"), sep.u
    alpha_n = substitute(spec.alpha, "x", nn)
    beta_n = substitute(spec.beta, "x", nn)
    not_alpha = Not(alpha_n)
    # (1)  v <= m -> !alpha(n, v)
    proofs = []
    for k in range(m + 1):
        inst = substitute(alpha_n, "v", N(k))
        if holds(inst):
            raise Refusal("not-disjoint", f"{n} is in A with witness {k}")
        proofs.append(b.aux(syn.false(inst), not_alpha, "v", "v", N(k)))
    r4 = b.theory_axiom("R4", (m,), x=v)
    claim1 = b.trans(b.iff_lr(r4), b.or_elim_many(proofs))
    # (2)  m <= v -> Ex u <= v . beta(n, u)
    mm = N(m)
    guard = Le(mm, v)
    beta_m = syn.true(substitute(beta_n, "v", mm))
    pair = b.and_intro(b.identity(guard), b.weaken(beta_m, guard))      # m<=v -> m<=v & beta(n,m)
    bounded = And(Le(Var(u), v), substitute(beta_n, "v", Var(u)))
    claim2 = b.trans(pair, b.ex_intro(u, bounded, mm))
    # assembly
    target_r = BExists(u, v, substitute(beta_n, "v", Var(u)))
    left = b.trans(claim1, b.or_intro_l(not_alpha, target_r))
    right = b.trans(claim2, b.or_intro_r(not_alpha, target_r))
    disj = b.mp(b.theory_axiom("R5", (m,), x=v), b.or_elim(left, right))
    psi_false = b.dni(disj)                                              # psi(n, v) -> bot
    return b.script(upto=b.ex_elim(psi_false, "v"))


__all__ = [
    "Refusal", "Synthesizer", "prove_true_delta0", "prove_false_delta0", "prove_delta0", "prove_sigma1",
    "SeparatorSpec", "SeparatorFormula", "build_separator", "prove_separator", "GUARD_CAP",
]
