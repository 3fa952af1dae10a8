"""Derivations of the R~ axioms in Q~ over QSLw.

Every R~ instance is produced by metainduction on its numeral parameters:
the generator recurses on ``n`` and emits a script whose length grows
linearly (R1, R3, R5) or quadratically (R2, R4, R6) in the parameters.
The two preliminary facts are exposed as builder routines:

* :func:`claim1` gives ``a <= b <-> S(a) <= S(b)`` for any terms;
* :func:`claim2` turns proofs of ``phi(0)`` and ``phi(S(y))`` into a proof of
  ``phi(x)``.
"""
from __future__ import annotations

from ..axioms import AxiomRef, axiom_formula, r4_disjunction
from ..kernel import ProofScript
from ..syntax import (
    Add,
    And,
    Eq,
    Exists,
    Imp,
    Le,
    Mul,
    Not,
    Or,
    Succ,
    Var,
    ZERO,
    free_vars,
    numeral,
    substitute,
)
from .builder import ProofBuilder, TemplateError, fresh

N = numeral
X = Var("x")


class QBuilder(ProofBuilder):
    """A builder over Q~ in QSLw with memoised arithmetic lemmas."""

    def __init__(self, profile: str = "QSLw"):
        super().__init__(profile, "Q~")
        self._lemmas: dict = {}

    def _cached(self, key, make):
        h = self._lemmas.get(key)
        if h is None:
            h = make()
            self._lemmas[key] = h
        return h

    # -- preliminaries -------------------------------------------------------

    def eq_crisp(self, s, t) -> int:
        """``s = t | !(s = t)`` by (Q0)."""
        return self.theory_axiom("Q0", x=s, y=t)

    def succ_block(self, a, b, c) -> int:
        """``A(a, b, c) <-> A(a, S(b), S(c))``."""
        return self._cached(("block", a, b, c), lambda: self._succ_block(a, b, c))

    def _succ_block(self, a, b, c) -> int:
        w = fresh({*free_vars(Add(a, b, c))}, base="u")
        Abc = Add(a, b, c)
        q5 = self.theory_axiom("Q5", x=a, y=b, z=Succ(c))   # A(a,S b,S c) <-> Ex u (A(a,b,u) & S c = S u)
        # left to right
        refl = self.weaken(self.eq_id(Succ(c)), Abc)
        pair = self.and_intro(self.identity(Abc), refl)
        body = And(Add(a, b, Var(w)), Eq(Succ(c), Succ(Var(w))))
        lr = self.trans(self.trans(pair, self.ex_intro(w, body, c)), self.iff_rl(q5))
        # right to left
        q2 = self.theory_axiom("Q2", x=c, y=Var(w))               # S c = S w -> c = w
        eq_part = self.trans(self.and_elim_r(*body._fields()), self.trans(q2, self.com(c, Var(w))))
        swapped = self.and_intro(eq_part, self.and_elim_l(*body._fields()))   # body -> w = c & A(a,b,w)
        v = fresh({*free_vars(Abc), w}, base="v")
        pc = self.prin_conj(v, Add(a, b, Var(v)), Var(w), c, self.eq_crisp(Var(w), c))
        rl = self.trans(self.iff_lr(q5), self.ex_elim(self.trans(swapped, pc), w))
        return self.iff(lr, rl)

    def claim1(self, a, b) -> int:
        """``a <= b <-> S(a) <= S(b)``."""
        return self._cached(("claim1", a, b), lambda: self._claim1(a, b))

    def _claim1(self, a, b) -> int:
        z = fresh({*free_vars(Le(a, b))}, base="z")
        zv = Var(z)
        q8 = self.theory_axiom("Q8", x=a, y=b)
        q8s = self.theory_axiom("Q8", x=Succ(a), y=Succ(b))
        blk = self.succ_block(zv, a, b)
        up = self.ex_intro(z, Add(zv, Succ(a), Succ(b)), zv)
        down = self.ex_intro(z, Add(zv, a, b), zv)
        ex_up = self.ex_elim(self.trans(self.iff_lr(blk), up), z)
        ex_down = self.ex_elim(self.trans(self.iff_rl(blk), down), z)
        lr = self.trans(self.trans(self.iff_lr(q8), ex_up), self.iff_rl(q8s))
        rl = self.trans(self.trans(self.iff_lr(q8s), ex_down), self.iff_rl(q8))
        return self.iff(lr, rl)

    def claim2(self, phi, hole: str, base: int, step: int, y: str) -> int:
        """From ``phi(0)`` (handle ``base``) and ``phi(S(y))`` (handle ``step``)
        derive ``phi`` with its free variable ``hole``."""
        if y in free_vars(phi) or y == hole:
            raise TemplateError(f"claim2: {y} must not occur free in phi")
        xv = Var(hole)
        z0 = self.aux(base, phi, hole, hole, ZERO)                 # x = 0 -> phi(x)
        zs = self.aux(step, phi, hole, hole, Succ(Var(y)))         # x = S(y) -> phi(x)
        ex = self.ex_elim(zs, y)                                   # Ex y (x = S y) -> phi(x)
        q3 = self.theory_axiom("Q3", x=xv)                         # x != 0 -> Ex y (x = S y)
        nz = self.trans(q3, ex)
        return self.mp(self.eq_crisp(xv, ZERO), self.or_elim(z0, nz))

    def zero_le(self, t) -> int:
        """``0 <= t`` from (Q4) and (Q8)."""
        return self._cached(("zero_le", t), lambda: self._zero_le(t))

    def _zero_le(self, t) -> int:
        a = self.mp(self.eq_id(t), self.iff_rl(self.theory_axiom("Q4", x=t, y=t)))   # A(t,0,t)
        z = fresh({*free_vars(t)}, base="z")
        ex = self.mp(a, self.ex_intro(z, Add(Var(z), ZERO, t), t))
        return self.mp(ex, self.iff_rl(self.theory_axiom("Q8", x=ZERO, y=t)))

    def rename(self, h: int, x: str, y: str) -> int:
        return self.instantiate(h, x, Var(y))

    # -- R1 --------------------------------------------------------------------

    def add_forward(self, m: int, n: int) -> int:
        """``A(m, n, x) -> x = m+n``."""
        return self._cached(("addf", m, n), lambda: self._add_forward(m, n))

    def _add_forward(self, m: int, n: int) -> int:
        if n == 0:
            q4 = self.theory_axiom("Q4", x=N(m), y=X)
            return self.trans(self.iff_lr(q4), self.com(N(m), X))
        ih = self.rename(self.add_forward(m, n - 1), "x", "u")    # A(m,n-1,u) -> u = k
        k = N(m + n - 1)
        u = Var("u")
        body = And(Add(N(m), N(n - 1), u), Eq(X, Succ(u)))
        s2 = self.and_intro(self.trans(self.and_elim_l(*body._fields()), ih), self.and_elim_r(*body._fields()))
        s3 = self.trans(s2, self.prin_conj("w", Eq(X, Succ(Var("w"))), u, k, self.eq_crisp(u, k)))
        s4 = self.ex_elim(s3, "u")
        q5 = self.theory_axiom("Q5", x=N(m), y=N(n - 1), z=X)
        return self.trans(self.iff_lr(q5), s4)

    def add_fact(self, m: int, n: int) -> int:
        """``A(m, n, m+n)``."""
        return self._cached(("addt", m, n), lambda: self._add_fact(m, n))

    def _add_fact(self, m: int, n: int) -> int:
        if n == 0:
            return self.mp(self.eq_id(N(m)), self.iff_rl(self.theory_axiom("Q4", x=N(m), y=N(m))))
        blk = self.succ_block(N(m), N(n - 1), N(m + n - 1))
        return self.mp(self.add_fact(m, n - 1), self.iff_lr(blk))

    def r1(self, m: int, n: int) -> int:
        k = N(m + n)
        lr = self.trans(self.add_forward(m, n), self.com(X, k))
        aux = self.aux(self.add_fact(m, n), Add(N(m), N(n), Var("w")), "w", "x", k)
        rl = self.trans(self.com(k, X), aux)
        return self.iff(lr, rl)

    # -- R2 --------------------------------------------------------------------

    def mul_forward(self, m: int, n: int) -> int:
        """``M(m, n, x) -> x = m*n``."""
        return self._cached(("mulf", m, n), lambda: self._mul_forward(m, n))

    def _mul_forward(self, m: int, n: int) -> int:
        if n == 0:
            return self.iff_lr(self.theory_axiom("Q6", x=N(m), y=X))
        ih = self.rename(self.mul_forward(m, n - 1), "x", "u")    # M(m,n-1,u) -> u = p
        p = N(m * (n - 1))
        u = Var("u")
        body = And(Mul(N(m), N(n - 1), u), Add(u, N(m), X))
        s2 = self.and_intro(self.trans(self.and_elim_l(*body._fields()), ih), self.and_elim_r(*body._fields()))
        s3 = self.trans(s2, self.prin_conj("w", Add(Var("w"), N(m), X), u, p, self.eq_crisp(u, p)))
        s4 = self.trans(s3, self.add_forward(m * (n - 1), m))
        s5 = self.ex_elim(s4, "u")
        q7 = self.theory_axiom("Q7a", x=N(m), y=N(n - 1), z=X)
        return self.trans(q7, s5)

    def mul_fact(self, m: int, n: int) -> int:
        """``M(m, n, m*n)``."""
        return self._cached(("mult", m, n), lambda: self._mul_fact(m, n))

    def _mul_fact(self, m: int, n: int) -> int:
        if n == 0:
            return self.mp(self.eq_id(ZERO), self.iff_rl(self.theory_axiom("Q6", x=N(m), y=ZERO)))
        p = m * (n - 1)
        q7b = self.theory_axiom("Q7b", (m, n - 1), u=N(p), x=N(p + m))
        step = self.mp(self.mul_fact(m, n - 1), q7b)
        return self.mp(self.add_fact(p, m), step)

    def r2(self, m: int, n: int) -> int:
        k = N(m * n)
        lr = self.trans(self.mul_forward(m, n), self.com(X, k))
        aux = self.aux(self.mul_fact(m, n), Mul(N(m), N(n), Var("w")), "w", "x", k)
        rl = self.trans(self.com(k, X), aux)
        return self.iff(lr, rl)

    # -- R3 --------------------------------------------------------------------

    def r3(self, m: int, n: int) -> int:
        if m == n:
            raise TemplateError("R3 needs m != n")
        hi, lo = max(m, n), min(m, n)
        acc = None
        for i in range(lo):
            q2 = self.theory_axiom("Q2", x=N(hi - 1 - i), y=N(lo - 1 - i))
            acc = q2 if acc is None else self.trans(acc, q2)
        q1 = self.theory_axiom("Q1", x=N(hi - lo - 1))
        neg = q1 if acc is None else self.trans(acc, q1)        # hi = lo -> bot
        if m < n:
            neg = self.trans(self.com(N(m), N(n)), neg)
        return neg

    # -- R4 --------------------------------------------------------------------

    def le_fact(self, k: int, n: int) -> int:
        """``k <= n`` for k <= n."""
        return self._cached(("le", k, n), lambda: self._le_fact(k, n))

    def _le_fact(self, k: int, n: int) -> int:
        a = self.add_fact(n - k, k)
        ex = self.mp(a, self.ex_intro("z", Add(Var("z"), N(k), N(n)), N(n - k)))
        return self.mp(ex, self.iff_rl(self.theory_axiom("Q8", x=N(k), y=N(n))))

    def r4_rl(self, n: int, var: str = "x") -> int:
        parts = [self.aux(self.le_fact(k, n), Le(Var("w"), N(n)), "w", var, N(k)) for k in range(n + 1)]
        return self.or_elim_many(parts)

    def r4_lr(self, n: int) -> int:
        """``x <= n -> D_n(x)`` by Claim 2 and metainduction."""
        return self._cached(("r4lr", n), lambda: self._r4_lr(n))

    def _r4_lr(self, n: int) -> int:
        phi = Imp(Le(X, N(n)), r4_disjunction(X, n))
        y = Var("y")
        if n == 0:
            base = self.weaken(self.eq_id(ZERO), Le(ZERO, ZERO))
            # S(y) <= 0 -> S(y) = 0
            uz = Eq(ZERO, Succ(Var("u")))
            zero_ne = self.trans(self.com(ZERO, Succ(Var("u"))), self.theory_axiom("Q1", x=Var("u")))
            inner = self.trans(self.and_elim_r(Add(Var("z"), y, Var("u")), uz), zero_ne)
            none = self.ex_elim(inner, "u")
            q5 = self.theory_axiom("Q5", x=Var("z"), y=y, z=ZERO)
            no_sum = self.trans(self.iff_lr(q5), none)
            to_eq = self.trans(no_sum, self.bot_elim(Eq(Succ(y), ZERO)))
            q8 = self.theory_axiom("Q8", x=Succ(y), y=ZERO)
            step = self.trans(self.iff_lr(q8), self.ex_elim(to_eq, "z"))
            return self.claim2(phi, "x", base, step, "y")
        d_next = r4_disjunction(X, n)
        # phi_n(0)
        zero_in = self.mp(self.eq_id(ZERO), self.disjunct_intro(substitute(d_next, "x", ZERO), 0, n + 1))
        base = self.weaken(zero_in, Le(ZERO, N(n)))
        # phi_n(S(y))
        c1 = self.iff_rl(self.claim1(y, N(n - 1)))                      # S(y) <= n -> y <= n-1
        ih = self.rename(self.r4_lr(n - 1), "x", "y")                   # y <= n-1 -> D_{n-1}(y)
        s2 = self.trans(c1, ih)
        target = substitute(d_next, "x", Succ(y))
        parts = []
        for k in range(n):
            pt = self.prin_term("w", Succ(Var("w")), y, N(k))          # y = k -> S(y) = k+1
            parts.append(self.trans(pt, self.disjunct_intro(target, k + 1, n + 1)))
        s3 = self.or_elim_many(parts)
        step = self.trans(s2, s3)
        return self.claim2(phi, "x", base, step, "y")

    def r4(self, n: int) -> int:
        return self.iff(self.r4_lr(n), self.r4_rl(n))

    # -- R5 --------------------------------------------------------------------

    def r5(self, n: int) -> int:
        return self._cached(("r5", n), lambda: self._r5(n))

    def _r5(self, n: int) -> int:
        if n == 0:
            return self.mp(self.zero_le(X), self.or_intro_r(Le(X, ZERO), Le(ZERO, X)))
        y = Var("y")
        phi = Or(Le(X, N(n)), Le(N(n), X))
        base = self.mp(self.zero_le(N(n)), self.or_intro_l(Le(ZERO, N(n)), Le(N(n), ZERO)))
        c_a = self.iff_lr(self.claim1(y, N(n - 1)))                     # y <= n-1 -> S(y) <= n
        c_b = self.iff_lr(self.claim1(N(n - 1), y))                     # n-1 <= y -> n <= S(y)
        ls, rs = Le(Succ(y), N(n)), Le(N(n), Succ(y))
        s3 = self.or_elim(self.trans(c_a, self.or_intro_l(ls, rs)), self.trans(c_b, self.or_intro_r(ls, rs)))
        ih = self.rename(self.r5(n - 1), "x", "y")
        step = self.mp(ih, s3)
        return self.claim2(phi, "x", base, step, "y")

    # -- R6 --------------------------------------------------------------------

    def r6(self, n: int) -> int:
        cert = self.eq_crisp(X, ZERO)
        for k in range(1, n + 1):
            cert = self.crisp_or(cert, self.eq_crisp(X, N(k)))          # D_k | !D_k
        d = r4_disjunction(X, n)
        le = Le(X, N(n))
        goal_l, goal_r = self.or_intro_l(le, Not(le)), self.or_intro_r(le, Not(le))
        r4 = self.r4(n)
        pos = self.trans(self.iff_rl(r4), goal_l)
        neg = self.trans(self.cont(self.iff_lr(r4)), goal_r)
        return self.mp(cert, self.or_elim(pos, neg))

    # ---------------------------------------------------------------------------

    def prove_r(self, ident: str, params) -> int:
        ref = AxiomRef("R~", ident, tuple(params))  # validates arity and R3's side condition
        fn = {"R1": self.r1, "R2": self.r2, "R3": self.r3, "R4": self.r4, "R5": self.r5, "R6": self.r6}[ref.id]
        return fn(*ref.params)


def q_proves_r(ref: AxiomRef | str, params=(), profile: str = "QSLw") -> ProofScript:
    """A QSLw script over Q~ whose theorem is the given R~ axiom instance."""
    if isinstance(ref, str):
        ref = AxiomRef("R~", ref.replace("R~", "R"), tuple(params))
    if ref.theory != "R~":
        raise TemplateError("q_proves_r expects an R~ axiom")
    b = QBuilder(profile)
    h = b.prove_r(ref.id, ref.params)
    script = b.script(upto=h)
    goal = axiom_formula(ref)
    from ..syntax import same_formula

    if not same_formula(script.theorem, goal):  # pragma: no cover - producer bug
        raise TemplateError(f"derivation ends in {script.theorem}, expected {goal}")
    return script


def claim1_script(a=X, b=Var("y"), profile: str = "QSLw") -> ProofScript:
    qb = QBuilder(profile)
    return qb.script(upto=qb.claim1(a, b))


__all__ = ["QBuilder", "q_proves_r", "claim1_script"]
