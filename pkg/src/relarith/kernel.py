"""The trusted proof checker.

A :class:`ProofScript` is a linear Hilbert-style derivation.  Each step names
an axiom schema, a theory axiom or a rule, carries explicit bindings for all
metavariables, and states its conclusion.  :func:`check` recomputes every
conclusion from the bindings and compares; nothing is unified or searched.

Formula comparison is equality up to renaming of bound variables and
expansion of bounded quantifiers (which are notation).

Two propositional profiles are provided, sharing the first-order layer:

``QL0``
    axioms identity, and-elim-l/r, or-intro-l/r; rules weakening, mp,
    assertion, trans-imp, morg, and-intro, or-elim.
``QSLw``
    axioms identity, and-elim-l/r, and-intro-ax, or-intro-l/r, or-elim-ax,
    weakening-ax, bot-elim; rules mp, adj, tone-imp, assertion.
``QSLw-sp``
    ``QSLw`` with tone-imp replaced by the rules suffixing and prefixing.

First-order layer: axioms all-ins, ex-intro, id, com, trans-eq, =prin-term,
=prin-formula; rules all-intro, ex-elim.  Equality axioms take arbitrary
terms, and theory axioms may have their free variables instantiated.  Both
are closed forms of the variable versions under generalisation and
all-ins.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

from .axioms import AxiomError, AxiomRef, axiom_formula
from .syntax import (
    And,
    BOT,
    CaptureError,
    Eq,
    Exists,
    Forall,
    Imp,
    Not,
    Or,
    Var,
    canonical,
    free_vars,
    same_formula,
    subst_many,
    subst_term,
    substitute,
    TERM_TYPES,
)

PROFILES = ("QL0", "QSLw", "QSLw-sp")
THEORY_IDS = ("R~", "Q~", "none")


class KernelError(ValueError):
    """A step failed to validate.  ``step`` is 1-based when known."""

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message if step is None else f"step {step}: {message}")
        self.reason = message
        self.step = step


class MalformedScript(KernelError):
    """Structural problems: unknown ids, bad premise references, wrong sorts."""


class SideConditionError(KernelError):
    pass


# ---------------------------------------------------------------------------
# schema table

_F, _V, _T = "formula", "variable", "term"


@dataclass(frozen=True)
class Schema:
    name: str
    sorts: Mapping[str, str]
    build: Callable[[dict], tuple[list, object]]
    is_rule: bool


def _i(a, b):
    return Imp(a, b)


def _not_free(var: str, chi, what: str = "chi"):
    if var in free_vars(chi):
        raise SideConditionError(f"{var} not free in {what}: violated")


def _subst_checked(phi, var: str, t):
    try:
        return substitute(phi, var, t)
    except CaptureError as e:
        raise SideConditionError(f"term not substitutable for {var}: {e}") from None


def _schemas() -> dict[str, Schema]:
    S: dict[str, Schema] = {}

    def ax(name, sorts, fn):
        S[name] = Schema(name, dict(sorts), lambda b: ([], fn(b)), False)

    def rule(name, sorts, fn):
        S[name] = Schema(name, dict(sorts), fn, True)

    f2 = {"phi": _F, "psi": _F}
    f3 = {"phi": _F, "psi": _F, "chi": _F}
    # propositional axioms
    ax("identity", {"phi": _F}, lambda b: _i(b["phi"], b["phi"]))
    ax("and-elim-l", f2, lambda b: _i(And(b["phi"], b["psi"]), b["phi"]))
    ax("and-elim-r", f2, lambda b: _i(And(b["phi"], b["psi"]), b["psi"]))
    ax("or-intro-l", f2, lambda b: _i(b["phi"], Or(b["phi"], b["psi"])))
    ax("or-intro-r", f2, lambda b: _i(b["psi"], Or(b["phi"], b["psi"])))
    ax("and-intro-ax", f3, lambda b: _i(
        And(_i(b["phi"], b["psi"]), _i(b["phi"], b["chi"])),
        _i(b["phi"], And(b["psi"], b["chi"]))))
    ax("or-elim-ax", f3, lambda b: _i(
        And(_i(b["phi"], b["chi"]), _i(b["psi"], b["chi"])),
        _i(Or(b["phi"], b["psi"]), b["chi"])))
    ax("weakening-ax", f2, lambda b: _i(b["phi"], _i(b["psi"], b["phi"])))
    ax("bot-elim", {"phi": _F}, lambda b: _i(BOT, b["phi"]))

    # propositional rules: (premises, conclusion)
    rule("mp", f2, lambda b: ([b["phi"], _i(b["phi"], b["psi"])], b["psi"]))
    rule("weakening", f2, lambda b: ([b["phi"]], _i(b["psi"], b["phi"])))
    rule("assertion", f2, lambda b: ([b["phi"]], _i(_i(b["phi"], b["psi"]), b["psi"])))
    rule("trans-imp", f3, lambda b: (
        [_i(b["phi"], b["psi"]), _i(b["psi"], b["chi"])], _i(b["phi"], b["chi"])))
    rule("morg", f2, lambda b: (
        [Or(Not(b["phi"]), Not(b["psi"]))], Not(And(b["phi"], b["psi"]))))
    rule("and-intro", f3, lambda b: (
        [_i(b["chi"], b["phi"]), _i(b["chi"], b["psi"])], _i(b["chi"], And(b["phi"], b["psi"]))))
    rule("or-elim", f3, lambda b: (
        [_i(b["phi"], b["chi"]), _i(b["psi"], b["chi"])], _i(Or(b["phi"], b["psi"]), b["chi"])))
    rule("adj", f2, lambda b: ([b["phi"], b["psi"]], And(b["phi"], b["psi"])))
    f4 = {"phi": _F, "psi": _F, "chi": _F, "theta": _F}
    rule("tone-imp", f4, lambda b: (
        [_i(b["phi"], b["psi"]), _i(b["chi"], b["theta"])],
        _i(_i(b["psi"], b["chi"]), _i(b["phi"], b["theta"]))))
    rule("suffixing", f3, lambda b: (
        [_i(b["phi"], b["psi"])], _i(_i(b["psi"], b["chi"]), _i(b["phi"], b["chi"]))))
    rule("prefixing", f3, lambda b: (
        [_i(b["phi"], b["psi"])], _i(_i(b["chi"], b["phi"]), _i(b["chi"], b["psi"]))))

    # first-order layer
    def all_ins(b):
        return _i(Forall(b["x"], b["phi"]), _subst_checked(b["phi"], b["x"], b["t"]))

    def ex_intro(b):
        return _i(_subst_checked(b["phi"], b["x"], b["t"]), Exists(b["x"], b["phi"]))

    def all_intro(b):
        _not_free(b["x"], b["chi"])
        return [_i(b["chi"], b["psi"])], _i(b["chi"], Forall(b["x"], b["psi"]))

    def ex_elim(b):
        _not_free(b["x"], b["chi"])
        return [_i(b["psi"], b["chi"])], _i(Exists(b["x"], b["psi"]), b["chi"])

    def prin_term(b):
        v, r = b["v"], b["r"]
        return _i(Eq(b["s"], b["t"]), Eq(subst_term(r, {v: b["s"]}), subst_term(r, {v: b["t"]})))

    def prin_formula(b):
        v, phi = b["v"], b["phi"]
        return _i(Eq(b["s"], b["t"]),
                  _i(_subst_checked(phi, v, b["s"]), _subst_checked(phi, v, b["t"])))

    xft = {"x": _V, "phi": _F, "t": _T}
    ax("all-ins", xft, all_ins)
    ax("ex-intro", xft, ex_intro)
    rule("all-intro", {"x": _V, "chi": _F, "psi": _F}, all_intro)
    rule("ex-elim", {"x": _V, "psi": _F, "chi": _F}, ex_elim)
    ax("id", {"t": _T}, lambda b: Eq(b["t"], b["t"]))
    ax("com", {"s": _T, "t": _T}, lambda b: _i(Eq(b["s"], b["t"]), Eq(b["t"], b["s"])))
    ax("trans-eq", {"s": _T, "t": _T, "r": _T}, lambda b: _i(
        Eq(b["s"], b["t"]), _i(Eq(b["t"], b["r"]), Eq(b["s"], b["r"]))))
    ax("=prin-term", {"v": _V, "r": _T, "s": _T, "t": _T}, prin_term)
    ax("=prin-formula", {"v": _V, "phi": _F, "s": _T, "t": _T}, prin_formula)
    return S


SCHEMAS = _schemas()

_FIRST_ORDER = ("all-ins", "ex-intro", "all-intro", "ex-elim", "id", "com", "trans-eq",
                "=prin-term", "=prin-formula")
_COMMON_AX = ("identity", "and-elim-l", "and-elim-r", "or-intro-l", "or-intro-r")


@dataclass(frozen=True)
class LogicProfile:
    id: str
    axiom_schemata: tuple[str, ...]
    rule_schemata: tuple[str, ...]

    def allows(self, name: str) -> bool:
        return name in self.axiom_schemata or name in self.rule_schemata


def _profile(pid, axioms, rules) -> LogicProfile:
    fo_ax = tuple(n for n in _FIRST_ORDER if not SCHEMAS[n].is_rule)
    fo_rules = tuple(n for n in _FIRST_ORDER if SCHEMAS[n].is_rule)
    return LogicProfile(pid, tuple(axioms) + fo_ax, tuple(rules) + fo_rules)


LOGIC_PROFILES = {
    "QL0": _profile("QL0", _COMMON_AX,
                    ("weakening", "mp", "assertion", "trans-imp", "morg", "and-intro", "or-elim")),
    "QSLw": _profile("QSLw", _COMMON_AX + ("and-intro-ax", "or-elim-ax", "weakening-ax", "bot-elim"),
                     ("mp", "adj", "tone-imp", "assertion")),
    "QSLw-sp": _profile("QSLw-sp", _COMMON_AX + ("and-intro-ax", "or-elim-ax", "weakening-ax", "bot-elim"),
                        ("mp", "adj", "suffixing", "prefixing", "assertion")),
}


# ---------------------------------------------------------------------------
# scripts


@dataclass(frozen=True)
class Step:
    """One derivation line.

    ``kind`` is ``"axiom"``, ``"theory"`` or ``"rule"``.  For theory steps
    ``name`` is an axiom id (``"R4"``) or ``"hyp"``; ``params`` holds the
    numeral parameters and ``bindings`` the instantiation of free variables.
    ``premises`` are 0-based indices of earlier steps.
    """

    kind: str
    name: str
    conclusion: object
    bindings: tuple = ()
    premises: tuple[int, ...] = ()
    params: tuple[int, ...] = ()

    @property
    def binding_map(self) -> dict:
        return dict(self.bindings)


@dataclass(frozen=True)
class ProofScript:
    profile: str
    theory: str
    steps: tuple[Step, ...]
    hypotheses: tuple = ()
    labels: tuple[tuple[str, int], ...] = ()

    @property
    def theorem(self):
        if not self.steps:
            raise MalformedScript("empty script")
        return self.steps[-1].conclusion

    def __len__(self) -> int:
        return len(self.steps)


_JUDGMENT_TOKEN = object()


@dataclass(frozen=True)
class Judgment:
    """A checked fact ``theory + hypotheses |-_profile theorem``.  Only
    :func:`check` constructs these."""

    theory: str
    profile: str
    theorem: object
    hypotheses: tuple = ()
    _token: object = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self._token is not _JUDGMENT_TOKEN:
            raise TypeError("Judgment objects are produced only by kernel.check")

    def __str__(self) -> str:
        from .printer import print_formula

        hyps = ", ".join(print_formula(h) for h in self.hypotheses)
        return f"{self.theory}{' + ' + hyps if hyps else ''} |-{self.profile} {print_formula(self.theorem)}"


def _check_sorts(schema: Schema, bindings: dict, step: int | None):
    missing = [k for k in schema.sorts if k not in bindings]
    if missing:
        raise MalformedScript(f"{schema.name}: missing binding(s) {', '.join(missing)}", step)
    extra = [k for k in bindings if k not in schema.sorts]
    if extra:
        raise MalformedScript(f"{schema.name}: unexpected binding(s) {', '.join(extra)}", step)
    for k, sort in schema.sorts.items():
        v = bindings[k]
        ok = (
            (sort == _V and isinstance(v, str))
            or (sort == _T and isinstance(v, TERM_TYPES))
            or (sort == _F and not isinstance(v, (str,) + TERM_TYPES))
        )
        if not ok:
            raise MalformedScript(f"{schema.name}: binding {k} must be a {sort}", step)


def instantiate(name: str, bindings: Mapping, step: int | None = None):
    """Premise formulas and conclusion of a schema instance."""
    schema = SCHEMAS.get(name)
    if schema is None:
        raise MalformedScript(f"unknown schema {name!r}", step)
    b = dict(bindings)
    _check_sorts(schema, b, step)
    try:
        prem, concl = schema.build(b)
    except SideConditionError as e:
        raise SideConditionError(e.reason, step) from None
    return list(prem), concl


def theory_axiom_instance(theory: str, name: str, params, bindings: Mapping, step: int | None = None):
    """Instance of a theory axiom with its free variables replaced."""
    try:
        ref = AxiomRef(theory, name, tuple(params))
    except AxiomError as e:
        raise KernelError(f"theory axiom parameter out of schema: {e}", step) from None
    phi = axiom_formula(ref)
    fv = free_vars(phi)
    for k, v in bindings.items():
        if k not in fv:
            raise KernelError(f"{ref}: {k} is not a free variable of the axiom", step)
        if not isinstance(v, TERM_TYPES):
            raise MalformedScript(f"{ref}: binding for {k} must be a term", step)
    return subst_many(phi, dict(bindings))


def check(script: ProofScript) -> Judgment:
    """Validate every step; return the judgment for the final conclusion.

    Raises :class:`KernelError` (or a subclass) describing the first failing step.
    """
    profile = LOGIC_PROFILES.get(script.profile)
    if profile is None:
        raise MalformedScript(f"unknown profile {script.profile!r}")
    if script.theory not in THEORY_IDS:
        raise MalformedScript(f"unknown theory {script.theory!r}")
    if not script.steps:
        raise MalformedScript("empty script")
    hyps = [canonical(h) for h in script.hypotheses]
    concl: list = []
    for k, st in enumerate(script.steps):
        num = k + 1
        for p in st.premises:
            if not (isinstance(p, int) and 0 <= p < k):
                raise MalformedScript(f"premise reference {p + 1 if isinstance(p, int) else p} is not an earlier step", num)
        if st.kind == "axiom" or st.kind == "rule":
            schema = SCHEMAS.get(st.name)
            if schema is None:
                raise MalformedScript(f"unknown schema {st.name!r}", num)
            if not profile.allows(st.name):
                raise KernelError(f"{st.name} is not part of profile {profile.id}", num)
            if schema.is_rule != (st.kind == "rule"):
                raise MalformedScript(f"{st.name} is {'a rule' if schema.is_rule else 'an axiom'}", num)
            prem, expected = instantiate(st.name, st.binding_map, num)
            if len(prem) != len(st.premises):
                raise MalformedScript(f"{st.name} needs {len(prem)} premise(s), got {len(st.premises)}", num)
            for j, (want, ref) in enumerate(zip(prem, st.premises)):
                if not same_formula(want, concl[ref]):
                    raise KernelError(
                        f"premise {j + 1} of {st.name} should be {want}, step {ref + 1} proves {concl[ref]}", num)
        elif st.kind == "theory":
            if st.premises:
                raise MalformedScript("theory axioms take no premises", num)
            if st.name == "hyp":
                if canonical(st.conclusion) not in hyps:
                    raise KernelError(f"{st.conclusion} is not a hypothesis of this script", num)
                expected = st.conclusion
            else:
                if script.theory == "none":
                    raise KernelError(f"theory axiom {st.name} used with theory 'none'", num)
                expected = theory_axiom_instance(script.theory, st.name, st.params, st.binding_map, num)
        else:
            raise MalformedScript(f"unknown step kind {st.kind!r}", num)
        if not same_formula(expected, st.conclusion):
            raise KernelError(f"conclusion mismatch: expected {expected}, stated {st.conclusion}", num)
        concl.append(st.conclusion)
    return Judgment(script.theory, script.profile, script.theorem, tuple(script.hypotheses),
                    _JUDGMENT_TOKEN)


def compose(outer: ProofScript, inner: ProofScript, at: int) -> ProofScript:
    """Replace the hypothesis used at 0-based step ``at`` of ``outer`` by the
    derivation ``inner`` of that hypothesis (the Cut rule)."""
    if outer.profile != inner.profile:
        raise KernelError(f"profile mismatch: {inner.profile} script cannot be used in {outer.profile}")
    if inner.theory not in (outer.theory, "none"):
        raise KernelError(f"theory mismatch: {inner.theory} vs {outer.theory}")
    if not 0 <= at < len(outer.steps):
        raise MalformedScript(f"no step {at + 1}")
    target = outer.steps[at]
    if target.kind != "theory" or target.name != "hyp":
        raise KernelError(f"step {at + 1} is not a hypothesis")
    if not same_formula(target.conclusion, inner.theorem):
        raise KernelError(f"inner theorem {inner.theorem} does not match hypothesis {target.conclusion}")
    n_in = len(inner.steps)
    steps: list[Step] = list(outer.steps[:at])
    for st in inner.steps:
        steps.append(_shift(st, lambda p: p + at))
    final = at + n_in - 1

    def remap(p):
        if p < at:
            return p
        if p == at:
            return final
        return p + n_in - 1

    for st in outer.steps[at + 1:]:
        steps.append(_shift(st, remap))
    hyps = [h for h in outer.hypotheses if not same_formula(h, target.conclusion)]
    still_used = any(st.kind == "theory" and st.name == "hyp" and same_formula(st.conclusion, target.conclusion)
                     for i, st in enumerate(outer.steps) if i != at)
    if still_used:
        hyps.append(target.conclusion)
    for h in inner.hypotheses:
        if not any(same_formula(h, g) for g in hyps):
            hyps.append(h)
    labels = tuple((name, remap(i)) for name, i in outer.labels)
    return ProofScript(outer.profile, outer.theory, tuple(steps), tuple(hyps), labels)


def _shift(st: Step, fn) -> Step:
    if not st.premises:
        return st
    return Step(st.kind, st.name, st.conclusion, st.bindings, tuple(fn(p) for p in st.premises), st.params)


__all__ = [
    "KernelError", "MalformedScript", "SideConditionError", "Schema", "SCHEMAS", "LogicProfile",
    "LOGIC_PROFILES", "PROFILES", "Step", "ProofScript", "Judgment", "instantiate",
    "theory_axiom_instance", "check", "compose", "Var",
]
