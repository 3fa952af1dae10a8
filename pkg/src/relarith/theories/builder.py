"""An untrusted producer of proof scripts.

:class:`ProofBuilder` appends kernel steps and hands back integer handles
(0-based step indices).  Derived rules are expanded according to the
profile: the QL0 rules that are primitive there become short axiom-plus-MP
patterns under QSLw, and vice versa where possible.  Steps are memoised by
the canonical form of their conclusion, so asking twice for the same fact
costs nothing.

Nothing here is trusted; :func:`relarith.kernel.check` is the arbiter.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .. import kernel
from ..axioms import AxiomRef, axiom_formula
from ..kernel import ProofScript, Step
from ..syntax import (
    And,
    BOT,
    Eq,
    Exists,
    Forall,
    Imp,
    Not,
    Or,
    Var,
    as_iff,
    canonical,
    free_vars,
    fresh_var,
    is_neg,
    subst_many,
    substitute,
)


class TemplateError(ValueError):
    """A producer was asked for something it cannot build."""


SLW = ("QSLw", "QSLw-sp")


class ProofBuilder:
    def __init__(self, profile: str = "QL0", theory: str = "none", hypotheses: Iterable = ()):
        if profile not in kernel.LOGIC_PROFILES:
            raise TemplateError(f"unknown profile {profile!r}")
        self.profile = profile
        self.theory = theory
        self.steps: list[Step] = []
        self.hypotheses: list = []
        self.labels: list[tuple[str, int]] = []
        self._memo: dict = {}
        for h in hypotheses:
            self.hyp(h)

    # -- bookkeeping -------------------------------------------------------

    def concl(self, h: int):
        return self.steps[h].conclusion

    def _emit(self, kind, name, concl, bindings=(), premises=(), params=()) -> int:
        key = canonical(concl)
        got = self._memo.get(key)
        if got is not None:
            return got
        self.steps.append(Step(kind, name, concl, tuple(bindings), tuple(premises), tuple(params)))
        h = len(self.steps) - 1
        self._memo[key] = h
        return h

    def label(self, name: str, h: int) -> int:
        self.labels.append((name, h))
        return h

    def script(self, upto: int | None = None) -> ProofScript:
        """The script so far; with ``upto`` the final step is moved to the end
        so that it is the theorem (the extra steps are harmless)."""
        steps = list(self.steps)
        labels = list(self.labels)
        if upto is not None and upto != len(steps) - 1:
            return self._reorder(upto)
        return ProofScript(self.profile, self.theory, tuple(steps), tuple(self.hypotheses), tuple(labels))

    def _reorder(self, target: int) -> ProofScript:
        # keep only the steps the target depends on, in order
        need = set()
        stack = [target]
        while stack:
            i = stack.pop()
            if i in need:
                continue
            need.add(i)
            stack.extend(self.steps[i].premises)
        order = sorted(need)
        new = {old: k for k, old in enumerate(order)}
        steps = [Step(s.kind, s.name, s.conclusion, s.bindings, tuple(new[p] for p in s.premises), s.params)
                 for s in (self.steps[i] for i in order)]
        labels = [(n, new[i]) for n, i in self.labels if i in new]
        hyps = [h for h in self.hypotheses
                if any(s.kind == "theory" and s.name == "hyp" and canonical(s.conclusion) == canonical(h)
                       for s in steps)]
        return ProofScript(self.profile, self.theory, tuple(steps), tuple(hyps), tuple(labels))

    def _need(self, name: str):
        if not kernel.LOGIC_PROFILES[self.profile].allows(name):
            raise TemplateError(f"{name} is not available in {self.profile}")

    # -- primitive steps ---------------------------------------------------

    def axiom(self, name: str, **b) -> int:
        self._need(name)
        prem, concl = kernel.instantiate(name, b)
        assert not prem
        return self._emit("axiom", name, concl, b.items())

    def rule(self, name: str, premises: Sequence[int], **b) -> int:
        self._need(name)
        _, concl = kernel.instantiate(name, b)
        return self._emit("rule", name, concl, b.items(), premises)

    def theory_axiom(self, ident: str, params: Sequence[int] = (), **subst) -> int:
        concl = subst_many(axiom_formula(AxiomRef(self.theory, ident, tuple(params))), subst)
        return self._emit("theory", ident, concl, subst.items(), (), params)

    def hyp(self, formula) -> int:
        if not any(canonical(h) == canonical(formula) for h in self.hypotheses):
            self.hypotheses.append(formula)
        return self._emit("theory", "hyp", formula)

    # -- core derived rules ------------------------------------------------

    def _imp(self, h: int) -> Imp:
        c = self.concl(h)
        if not isinstance(c, Imp):
            raise TemplateError(f"expected an implication, step proves {c}")
        return c

    def identity(self, phi) -> int:
        return self.axiom("identity", phi=phi)

    def mp(self, a: int, ab: int) -> int:
        imp = self._imp(ab)
        return self.rule("mp", [a, ab], phi=imp.left, psi=imp.right)

    def trans(self, a: int, b: int) -> int:
        """phi -> psi, psi -> chi  |>  phi -> chi"""
        ia, ib = self._imp(a), self._imp(b)
        if self.profile == "QL0":
            return self.rule("trans-imp", [a, b], phi=ia.left, psi=ia.right, chi=ib.right)
        return self.mp(b, self.suffixing(a, ib.right))

    def suffixing(self, a: int, chi) -> int:
        """phi -> psi  |>  (psi -> chi) -> (phi -> chi)"""
        ia = self._imp(a)
        if self.profile == "QSLw-sp":
            return self.rule("suffixing", [a], phi=ia.left, psi=ia.right, chi=chi)
        if self.profile == "QSLw":
            return self.tone(a, self.identity(chi))
        raise TemplateError("suffixing needs a QSLw profile")

    def prefixing(self, a: int, chi) -> int:
        """phi -> psi  |>  (chi -> phi) -> (chi -> psi)"""
        ia = self._imp(a)
        if self.profile == "QSLw-sp":
            return self.rule("prefixing", [a], phi=ia.left, psi=ia.right, chi=chi)
        if self.profile == "QSLw":
            return self.tone(self.identity(chi), a)
        raise TemplateError("prefixing needs a QSLw profile")

    def tone(self, a: int, b: int) -> int:
        """phi -> psi, chi -> theta  |>  (psi -> chi) -> (phi -> theta)"""
        ia, ib = self._imp(a), self._imp(b)
        if self.profile == "QSLw":
            return self.rule("tone-imp", [a, b], phi=ia.left, psi=ia.right, chi=ib.left, theta=ib.right)
        if self.profile == "QSLw-sp":
            pre = self.prefixing(b, ia.right)  # (psi->chi) -> (psi->theta)
            suf = self.suffixing(a, ib.right)  # (psi->theta) -> (phi->theta)
            return self.trans(pre, suf)
        raise TemplateError("tone needs a QSLw profile")

    def weaken(self, a: int, psi) -> int:
        """phi  |>  psi -> phi"""
        phi = self.concl(a)
        if self.profile == "QL0":
            return self.rule("weakening", [a], phi=phi, psi=psi)
        return self.mp(a, self.axiom("weakening-ax", phi=phi, psi=psi))

    def assertion(self, a: int, psi) -> int:
        return self.rule("assertion", [a], phi=self.concl(a), psi=psi)

    def adj(self, a: int, b: int) -> int:
        phi, psi = self.concl(a), self.concl(b)
        if self.profile in SLW:
            return self.rule("adj", [a, b], phi=phi, psi=psi)
        tau = Imp(BOT, BOT)
        t = self.identity(BOT)
        both = self.and_intro(self.weaken(a, tau), self.weaken(b, tau))
        return self.mp(t, both)

    def and_intro(self, a: int, b: int) -> int:
        """chi -> phi, chi -> psi  |>  chi -> phi & psi"""
        ia, ib = self._imp(a), self._imp(b)
        if ia.left != ib.left and canonical(ia.left) != canonical(ib.left):
            raise TemplateError("and_intro premises have different antecedents")
        if self.profile == "QL0":
            return self.rule("and-intro", [a, b], phi=ia.right, psi=ib.right, chi=ia.left)
        ax = self.axiom("and-intro-ax", phi=ia.left, psi=ia.right, chi=ib.right)
        return self.mp(self.adj(a, b), ax)

    def or_elim(self, a: int, b: int) -> int:
        """phi -> chi, psi -> chi  |>  phi | psi -> chi"""
        ia, ib = self._imp(a), self._imp(b)
        if self.profile == "QL0":
            return self.rule("or-elim", [a, b], phi=ia.left, psi=ib.left, chi=ia.right)
        ax = self.axiom("or-elim-ax", phi=ia.left, psi=ib.left, chi=ia.right)
        return self.mp(self.adj(a, b), ax)

    def or_elim_many(self, parts: Sequence[int]) -> int:
        """Fold (or-elim) over a left-associated disjunction of antecedents."""
        acc = parts[0]
        for h in parts[1:]:
            acc = self.or_elim(acc, h)
        return acc

    def morg(self, a: int) -> int:
        """!phi | !psi  |>  !(phi & psi)"""
        c = self.concl(a)
        if not (isinstance(c, Or) and is_neg(c.left) and is_neg(c.right)):
            raise TemplateError("morg premise must be !phi | !psi")
        phi, psi = c.left.left, c.right.left
        if self.profile == "QL0":
            return self.rule("morg", [a], phi=phi, psi=psi)
        return self.mp(a, self.morg_imp(phi, psi))

    def dni(self, a: int) -> int:
        """phi  |>  !!phi"""
        return self.assertion(a, BOT)

    def and_elim_l(self, phi, psi) -> int:
        return self.axiom("and-elim-l", phi=phi, psi=psi)

    def and_elim_r(self, phi, psi) -> int:
        return self.axiom("and-elim-r", phi=phi, psi=psi)

    def or_intro_l(self, phi, psi) -> int:
        return self.axiom("or-intro-l", phi=phi, psi=psi)

    def or_intro_r(self, phi, psi) -> int:
        return self.axiom("or-intro-r", phi=phi, psi=psi)

    def iff_lr(self, h: int) -> int:
        pair = as_iff(self.concl(h))
        if pair is None:
            raise TemplateError(f"not a biconditional: {self.concl(h)}")
        a, b = pair
        return self.mp(h, self.and_elim_l(Imp(a, b), Imp(b, a)))

    def iff_rl(self, h: int) -> int:
        pair = as_iff(self.concl(h))
        if pair is None:
            raise TemplateError(f"not a biconditional: {self.concl(h)}")
        a, b = pair
        return self.mp(h, self.and_elim_r(Imp(a, b), Imp(b, a)))

    def iff(self, lr: int, rl: int) -> int:
        return self.adj(lr, rl)

    def assoc(self, phi, psi, chi) -> int:
        """phi | (psi | chi) <-> (phi | psi) | chi"""
        left, right = Or(phi, psi), Or(psi, chi)
        top_l = self.or_intro_l(left, chi)
        lr = self.or_elim(
            self.trans(self.or_intro_l(phi, psi), top_l),
            self.or_elim(self.trans(self.or_intro_r(phi, psi), top_l), self.or_intro_r(left, chi)))
        top_r = self.or_intro_r(phi, right)
        rl = self.or_elim(
            self.or_elim(self.or_intro_l(phi, right), self.trans(self.or_intro_l(psi, chi), top_r)),
            self.trans(self.or_intro_r(psi, chi), top_r))
        return self.iff(lr, rl)

    def into_disjunction(self, disj, index_path: Sequence[str]) -> int:
        """``d -> disj`` where ``d`` is the disjunct reached by following
        ``index_path`` ("l"/"r") from the root of ``disj``."""
        node, chain = disj, []
        for step in index_path:
            chain.append(node)
            node = node.left if step == "l" else node.right
        acc = None
        for parent, step in zip(reversed(chain), reversed(index_path)):
            ax = (self.or_intro_l if step == "l" else self.or_intro_r)(parent.left, parent.right)
            acc = ax if acc is None else self.trans(acc, ax)
        return acc if acc is not None else self.identity(disj)

    def disjunct_intro(self, disj, k: int, count: int) -> int:
        """``e_k -> e_0 | ... | e_{count-1}`` for a left-associated disjunction."""
        path = []
        for j in range(count - 1, 0, -1):
            if j == k:
                path.append("r")
                break
            path.append("l")
        return self.into_disjunction(disj, path)

    # -- first-order -------------------------------------------------------

    def gen(self, a: int, x: str) -> int:
        """phi  |>  All x . phi"""
        phi = self.concl(a)
        t = self.identity(BOT)
        tau = self.concl(t)
        w = self.weaken(a, tau)
        ai = self.rule("all-intro", [w], x=x, chi=tau, psi=phi)
        return self.mp(t, ai)

    def instantiate(self, a: int, x: str, t) -> int:
        """phi(x)  |>  phi(t), through (gen) and (all-ins)."""
        phi = self.concl(a)
        if x not in free_vars(phi):
            return a
        g = self.gen(a, x)
        return self.mp(g, self.axiom("all-ins", x=x, phi=phi, t=t))

    def ex_intro(self, x: str, phi, t) -> int:
        return self.axiom("ex-intro", x=x, phi=phi, t=t)

    def ex_elim(self, a: int, x: str) -> int:
        """psi -> chi  |>  (Ex x . psi) -> chi"""
        ia = self._imp(a)
        return self.rule("ex-elim", [a], x=x, psi=ia.left, chi=ia.right)

    def all_ins(self, x: str, phi, t) -> int:
        return self.axiom("all-ins", x=x, phi=phi, t=t)

    def eq_id(self, t) -> int:
        return self.axiom("id", t=t)

    def com(self, s, t) -> int:
        return self.axiom("com", s=s, t=t)

    def prin_term(self, v: str, r, s, t) -> int:
        return self.axiom("=prin-term", v=v, r=r, s=s, t=t)

    def prin_formula(self, v: str, phi, s, t) -> int:
        return self.axiom("=prin-formula", v=v, phi=phi, s=s, t=t)

    def aux(self, a: int, phi, hole: str, x: str, t) -> int:
        """phi(t)  |>  x = t -> phi(x), where ``phi`` has the free variable ``hole``."""
        phi_t = substitute(phi, hole, t)
        phi_x = substitute(phi, hole, Var(x))
        c = self.com(Var(x), t)                          # x=t -> t=x
        p = self.prin_formula(hole, phi, t, Var(x))      # t=x -> (phi(t) -> phi(x))
        s = self.assertion(a, phi_x)                     # (phi(t) -> phi(x)) -> phi(x)
        assert canonical(self.concl(a)) == canonical(phi_t), "aux premise mismatch"
        return self.trans(c, self.trans(p, s))

    # -- SLw derived theorems ------------------------------------------------

    def _slw(self, what: str):
        if self.profile not in SLW:
            raise TemplateError(f"{what} is derived only in QSLw")

    def bot_elim(self, phi) -> int:
        return self.axiom("bot-elim", phi=phi)

    def cont(self, a: int) -> int:
        """phi -> psi  |>  !psi -> !phi"""
        self._slw("cont")
        return self.suffixing(a, BOT)

    def red(self, phi, chi) -> int:
        """!phi -> (phi -> chi)"""
        self._slw("red")
        return self.prefixing(self.bot_elim(chi), phi)

    def weakening_strong(self, phi, psi) -> int:
        """phi -> (psi -> phi & psi)"""
        self._slw("weakening-strong")
        w1 = self.axiom("weakening-ax", phi=phi, psi=psi)          # phi -> (psi -> phi)
        w2 = self.weaken(self.identity(psi), phi)                   # phi -> (psi -> psi)
        both = self.and_intro(w1, w2)
        ax = self.axiom("and-intro-ax", phi=psi, psi=phi, chi=psi)  # (psi->phi)&(psi->psi) -> (psi -> phi&psi)
        return self.trans(both, ax)

    def exp(self, a: int) -> int:
        """phi & psi -> chi  |>  phi -> (psi -> chi)"""
        self._slw("exp")
        ia = self._imp(a)
        if not isinstance(ia.left, And):
            raise TemplateError("exp premise must be phi & psi -> chi")
        phi, psi = ia.left.left, ia.left.right
        sw = self.weakening_strong(phi, psi)
        return self.trans(sw, self.prefixing(a, psi))

    def morg_iff(self, phi, psi) -> int:
        """!(phi | psi) <-> !phi & !psi"""
        self._slw("morg-iff")
        l = self.cont(self.or_intro_l(phi, psi))
        r = self.cont(self.or_intro_r(phi, psi))
        lr = self.and_intro(l, r)
        rl = self.axiom("or-elim-ax", phi=phi, psi=psi, chi=BOT)
        return self.iff(lr, rl)

    def morg_neg_conj(self, phi, psi) -> int:
        """!phi & !psi -> !(phi | psi), the right-to-left half of morg-iff."""
        if self.profile == "QL0":
            raise TemplateError("morg-iff is derived only in QSLw")
        return self.axiom("or-elim-ax", phi=phi, psi=psi, chi=BOT)

    def morg_imp(self, phi, psi) -> int:
        """!phi | !psi -> !(phi & psi)"""
        self._slw("morg-imp")
        l = self.cont(self.and_elim_l(phi, psi))
        r = self.cont(self.and_elim_r(phi, psi))
        return self.or_elim(l, r)

    # -- crispness -------------------------------------------------------

    def crisp_import(self, cert: int, prem: int, *, labels: bool = False) -> int:
        """Given ``phi | !phi`` and ``phi -> (psi -> chi)``, derive ``phi & psi -> chi``."""
        self._slw("crisp-import")
        phi, rest = self._crisp_parts(cert), self._imp(prem)
        if canonical(rest.left) != canonical(phi) or not isinstance(rest.right, Imp):
            raise TemplateError("crisp-import premise must be phi -> (psi -> chi)")
        psi, chi = rest.right.left, rest.right.right
        s1 = self.suffixing(self.and_elim_r(phi, psi), chi)
        s2 = self.suffixing(self.and_elim_l(phi, psi), chi)
        s3 = self.trans(prem, s1)
        s4 = self.trans(self.red(phi, chi), s2)
        s5 = self.mp(cert, self.or_elim(s3, s4))
        if labels:
            for k, h in enumerate((s1, s2, s3, s4, s5), 1):
                self.label(f"({k})", h)
        return s5

    def crisp_or(self, cert_a: int, cert_b: int, *, labels: bool = False) -> int:
        """From ``phi | !phi`` and ``psi | !psi`` derive ``(phi|psi) | !(phi|psi)``."""
        self._slw("crisp-or")
        phi, psi = self._crisp_parts(cert_a), self._crisp_parts(cert_b)
        d = Or(phi, psi)
        chi = Or(d, Not(d))
        top = self.or_intro_l(d, Not(d))
        s1 = self.trans(self.or_intro_l(phi, psi), top)
        s2 = self.trans(self.or_intro_r(phi, psi), top)
        s3 = self.trans(self.morg_neg_conj(phi, psi), self.or_intro_r(d, Not(d)))
        s4 = self.exp(s3)
        s5 = self.trans(s1, self.axiom("weakening-ax", phi=chi, psi=Not(psi)))
        s6 = self.mp(cert_a, self.or_elim(s5, s4))
        s7 = self.mp(cert_b, self.or_elim(s2, s6))
        if labels:
            for k, h in enumerate((s1, s2, s3, s4, s5, s6, s7), 1):
                self.label(f"({k})", h)
        return s7

    def _crisp_parts(self, cert: int):
        c = self.concl(cert)
        if not (isinstance(c, Or) and is_neg(c.right) and canonical(c.right.left) == canonical(c.left)):
            raise TemplateError(f"not a crispness certificate: {c}")
        return c.left

    def prin_conj(self, v: str, phi, s, t, cert: int) -> int:
        """``s = t & phi(s) -> phi(t)`` from (=prin) and a crispness
        certificate for ``s = t``."""
        p = self.prin_formula(v, phi, s, t)
        return self.crisp_import(cert, p)


def fresh(*things, base: str = "w") -> str:
    from ..syntax import all_vars

    avoid = set()
    for t in things:
        avoid |= set(t) if isinstance(t, (set, frozenset)) else all_vars(t)
    return fresh_var(avoid, base)


__all__ = ["ProofBuilder", "TemplateError", "fresh", "Forall", "Exists", "Eq", "And"]
