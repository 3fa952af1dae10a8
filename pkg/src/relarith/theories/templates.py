"""Named derived rules and theorems, expanded into checkable scripts.

Every template is parameterised by formulas, terms and variable names.  Its
premises are computed from the parameters; :func:`expand_template` emits
them as hypotheses, or splices in caller-supplied scripts proving them.

>>> from relarith.kernel import check
>>> s = expand_template("dni", phi=parse_formula("1 = 1"))
>>> str(s.theorem)
'!!1 = 1'
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from .. import kernel
from ..kernel import ProofScript
from ..parser import parse_formula, parse_term
from ..syntax import (
    And,
    Eq,
    Imp,
    Not,
    Or,
    Succ,
    Var,
    ZERO,
    same_formula,
    substitute,
)
from .builder import ProofBuilder, TemplateError
from .qr import QBuilder

ALL = ("QL0", "QSLw", "QSLw-sp")
SLW = ("QSLw", "QSLw-sp")


@dataclass(frozen=True)
class Template:
    id: str
    params: tuple[tuple[str, str], ...]   # (name, sort) with sort formula|term|variable
    profiles: tuple[str, ...]
    premises: Callable[[dict], list]
    build: Callable[[ProofBuilder, list, dict], int]
    theory: str = "none"
    doc: str = ""

    @property
    def default_profile(self) -> str:
        return self.profiles[0]


def _imp(a, b):
    return Imp(a, b)


def _t(id, params, profiles, premises, build, theory="none", doc=""):
    sorts = tuple((p, s) for p, s in (x.split(":") for x in params.split()))
    return Template(id, sorts, profiles, premises, build, theory, doc)


def _prin_conj(b, hs, p):
    s, t = p["s"], p["t"]
    cert = b.eq_crisp(s, t)
    return b.prin_conj(p["v"], p["phi"], s, t, cert)


def _prin_from_conj(b, hs, p):
    return b.exp(hs[0])


def _conj_form(p):
    phi_s = substitute(p["phi"], p["v"], p["s"])
    phi_t = substitute(p["phi"], p["v"], p["t"])
    return Imp(And(Eq(p["s"], p["t"]), phi_s), phi_t)


TEMPLATES: dict[str, Template] = {t.id: t for t in [
    # QL0 layer
    _t("assoc", "phi:formula psi:formula chi:formula", ALL, lambda p: [],
       lambda b, hs, p: b.assoc(p["phi"], p["psi"], p["chi"]),
       doc="phi | (psi | chi) <-> (phi | psi) | chi"),
    _t("adj", "phi:formula psi:formula", ALL, lambda p: [p["phi"], p["psi"]],
       lambda b, hs, p: b.adj(*hs), doc="phi, psi |> phi & psi"),
    _t("dni", "phi:formula", ALL, lambda p: [p["phi"]],
       lambda b, hs, p: b.dni(hs[0]), doc="phi |> !!phi"),
    _t("aux", "phi:formula hole:variable x:variable t:term", ALL,
       lambda p: [substitute(p["phi"], p["hole"], p["t"])],
       lambda b, hs, p: b.aux(hs[0], p["phi"], p["hole"], p["x"], p["t"]),
       doc="phi(t) |> x = t -> phi(x)"),
    _t("gen", "phi:formula x:variable", ALL, lambda p: [p["phi"]],
       lambda b, hs, p: b.gen(hs[0], p["x"]), doc="phi |> All x . phi"),
    # QL0 rules, derived in the SLw profiles
    _t("trans", "phi:formula psi:formula chi:formula", SLW + ("QL0",),
       lambda p: [_imp(p["phi"], p["psi"]), _imp(p["psi"], p["chi"])],
       lambda b, hs, p: b.trans(*hs), doc="phi -> psi, psi -> chi |> phi -> chi"),
    _t("weakening", "phi:formula psi:formula", SLW + ("QL0",), lambda p: [p["phi"]],
       lambda b, hs, p: b.weaken(hs[0], p["psi"]), doc="phi |> psi -> phi"),
    _t("and-intro", "phi:formula psi:formula chi:formula", SLW + ("QL0",),
       lambda p: [_imp(p["chi"], p["phi"]), _imp(p["chi"], p["psi"])],
       lambda b, hs, p: b.and_intro(*hs), doc="chi -> phi, chi -> psi |> chi -> phi & psi"),
    _t("or-elim", "phi:formula psi:formula chi:formula", SLW + ("QL0",),
       lambda p: [_imp(p["phi"], p["chi"]), _imp(p["psi"], p["chi"])],
       lambda b, hs, p: b.or_elim(*hs), doc="phi -> chi, psi -> chi |> phi | psi -> chi"),
    _t("morg", "phi:formula psi:formula", SLW + ("QL0",),
       lambda p: [Or(Not(p["phi"]), Not(p["psi"]))],
       lambda b, hs, p: b.morg(hs[0]), doc="!phi | !psi |> !(phi & psi)"),
    # SLw layer
    _t("suffixing", "phi:formula psi:formula chi:formula", SLW,
       lambda p: [_imp(p["phi"], p["psi"])],
       lambda b, hs, p: b.suffixing(hs[0], p["chi"]),
       doc="phi -> psi |> (psi -> chi) -> (phi -> chi)"),
    _t("prefixing", "phi:formula psi:formula chi:formula", SLW,
       lambda p: [_imp(p["phi"], p["psi"])],
       lambda b, hs, p: b.prefixing(hs[0], p["chi"]),
       doc="phi -> psi |> (chi -> phi) -> (chi -> psi)"),
    _t("tone", "phi:formula psi:formula chi:formula theta:formula", ("QSLw-sp", "QSLw"),
       lambda p: [_imp(p["phi"], p["psi"]), _imp(p["chi"], p["theta"])],
       lambda b, hs, p: b.tone(*hs),
       doc="phi -> psi, chi -> theta |> (psi -> chi) -> (phi -> theta)"),
    _t("cont", "phi:formula psi:formula", SLW, lambda p: [_imp(p["phi"], p["psi"])],
       lambda b, hs, p: b.cont(hs[0]), doc="phi -> psi |> !psi -> !phi"),
    _t("morg-iff", "phi:formula psi:formula", SLW, lambda p: [],
       lambda b, hs, p: b.morg_iff(p["phi"], p["psi"]), doc="!(phi | psi) <-> !phi & !psi"),
    _t("morg-imp", "phi:formula psi:formula", SLW, lambda p: [],
       lambda b, hs, p: b.morg_imp(p["phi"], p["psi"]), doc="!phi | !psi -> !(phi & psi)"),
    _t("weakening-strong", "phi:formula psi:formula", SLW, lambda p: [],
       lambda b, hs, p: b.weakening_strong(p["phi"], p["psi"]), doc="phi -> (psi -> phi & psi)"),
    _t("red", "phi:formula chi:formula", SLW, lambda p: [],
       lambda b, hs, p: b.red(p["phi"], p["chi"]), doc="!phi -> (phi -> chi)"),
    _t("exp", "phi:formula psi:formula chi:formula", SLW,
       lambda p: [_imp(And(p["phi"], p["psi"]), p["chi"])],
       lambda b, hs, p: b.exp(hs[0]), doc="phi & psi -> chi |> phi -> (psi -> chi)"),
    # crispness
    _t("crisp-import", "phi:formula psi:formula chi:formula", SLW,
       lambda p: [Or(p["phi"], Not(p["phi"])), _imp(p["phi"], _imp(p["psi"], p["chi"]))],
       lambda b, hs, p: b.crisp_import(hs[0], hs[1], labels=True),
       doc="phi crisp, phi -> (psi -> chi) |> phi & psi -> chi"),
    _t("crisp-or", "phi:formula psi:formula", SLW,
       lambda p: [Or(p["phi"], Not(p["phi"])), Or(p["psi"], Not(p["psi"]))],
       lambda b, hs, p: b.crisp_or(hs[0], hs[1], labels=True),
       doc="phi crisp, psi crisp |> phi | psi crisp"),
    # arithmetic over Q~
    _t("claim1", "a:term b:term", ("QSLw",), lambda p: [],
       lambda b, hs, p: b.claim1(p["a"], p["b"]), theory="Q~",
       doc="a <= b <-> S(a) <= S(b)"),
    _t("claim2", "phi:formula hole:variable y:variable", ("QSLw",),
       lambda p: [substitute(p["phi"], p["hole"], ZERO),
                  substitute(p["phi"], p["hole"], Succ(Var(p["y"])))],
       lambda b, hs, p: b.claim2(p["phi"], p["hole"], hs[0], hs[1], p["y"]), theory="Q~",
       doc="phi(0), phi(S(y)) |> phi(x)"),
    _t("prin-conj", "v:variable phi:formula s:term t:term", ("QSLw",), lambda p: [],
       _prin_conj, theory="Q~", doc="s = t & phi(s) -> phi(t)"),
    _t("prin-from-conj", "v:variable phi:formula s:term t:term", ("QSLw",),
       lambda p: [_conj_form(p)], _prin_from_conj, theory="Q~",
       doc="(s = t & phi(s) -> phi(t)) |> s = t -> (phi(s) -> phi(t))"),
]}


def template_premises(id: str, **params) -> list:
    tpl = _lookup(id)
    return tpl.premises(_coerce(tpl, params))


def _lookup(id: str) -> Template:
    try:
        return TEMPLATES[id]
    except KeyError:
        raise TemplateError(f"unknown template {id!r}; known: {', '.join(sorted(TEMPLATES))}") from None


def _coerce(tpl: Template, params: dict) -> dict:
    names = [n for n, _ in tpl.params]
    missing = [n for n in names if n not in params]
    extra = [n for n in params if n not in names]
    if missing or extra:
        raise TemplateError(f"{tpl.id} takes ({', '.join(names)}); "
                            f"missing {missing or 'none'}, unexpected {extra or 'none'}")
    out = {}
    for name, sort in tpl.params:
        v = params[name]
        if isinstance(v, str) and sort == "formula":
            v = parse_formula(v, allow_reserved=True)
        elif isinstance(v, str) and sort == "term":
            v = parse_term(v, allow_reserved=True)
        out[name] = v
    return out


def expand_template(id: str, profile: str | None = None,
                    premises: Sequence[ProofScript | None] | None = None, **params) -> ProofScript:
    """Script for template ``id``.  Premises the caller does not supply as
    scripts stay as hypotheses of the result."""
    tpl = _lookup(id)
    profile = profile or tpl.default_profile
    if profile not in tpl.profiles:
        raise TemplateError(f"{id} is not available under {profile} (only {', '.join(tpl.profiles)})")
    p = _coerce(tpl, params)
    wanted = tpl.premises(p)
    supplied = list(premises or [])
    if len(supplied) > len(wanted):
        raise TemplateError(f"{id} has {len(wanted)} premise(s), got {len(supplied)} scripts")
    supplied += [None] * (len(wanted) - len(supplied))
    theory = tpl.theory
    for scr, f in zip(supplied, wanted):
        if scr is None:
            continue
        if not same_formula(scr.theorem, f):
            raise TemplateError(f"premise script proves {scr.theorem}, expected {f}")
        if scr.theory != "none":
            if theory not in ("none", scr.theory):
                raise TemplateError(f"premise theory {scr.theory} clashes with {theory}")
            theory = scr.theory
    b = QBuilder(profile) if tpl.theory == "Q~" else ProofBuilder(profile, theory)
    hs = [b.hyp(f) for f in wanted]
    script = b.script(upto=tpl.build(b, hs, p))
    return _splice(script, wanted, supplied)


def _splice(script: ProofScript, wanted, supplied) -> ProofScript:
    for f, scr in zip(wanted, supplied):
        if scr is None:
            continue
        at = next((i for i, st in enumerate(script.steps)
                   if st.kind == "theory" and st.name == "hyp" and same_formula(st.conclusion, f)), None)
        if at is None:  # the premise turned out not to be needed
            continue
        script = kernel.compose(script, scr, at)
    return script


# ---------------------------------------------------------------------------
# golden scripts

_A, _B, _C, _D = (parse_formula(s) for s in ("x = 0", "y <= x", "A(x, y, z)", "M(x, 1, y)"))

GOLDEN: list[tuple[str, str, str, dict]] = [
    # (file stem, template, profile, params)
    ("assoc", "assoc", "QL0", dict(phi=_A, psi=_B, chi=_C)),
    ("adj", "adj", "QL0", dict(phi=_A, psi=_B)),
    ("dni", "dni", "QL0", dict(phi=_A)),
    ("aux", "aux", "QL0", dict(phi=parse_formula("A(1, 1, w)"), hole="w", x="x", t=parse_term("2"))),
    ("gen", "gen", "QL0", dict(phi=_B, x="y")),
    ("slw-trans", "trans", "QSLw", dict(phi=_A, psi=_B, chi=_C)),
    ("slw-weakening", "weakening", "QSLw", dict(phi=_A, psi=_B)),
    ("slw-and-intro", "and-intro", "QSLw", dict(phi=_A, psi=_B, chi=_C)),
    ("slw-or-elim", "or-elim", "QSLw", dict(phi=_A, psi=_B, chi=_C)),
    ("slw-morg", "morg", "QSLw", dict(phi=_A, psi=_B)),
    ("cont", "cont", "QSLw", dict(phi=_A, psi=_B)),
    ("morg-iff", "morg-iff", "QSLw", dict(phi=_A, psi=_B)),
    ("morg-imp", "morg-imp", "QSLw", dict(phi=_A, psi=_B)),
    ("weakening-strong", "weakening-strong", "QSLw", dict(phi=_A, psi=_B)),
    ("red", "red", "QSLw", dict(phi=_A, chi=_B)),
    ("exp", "exp", "QSLw", dict(phi=_A, psi=_B, chi=_C)),
    ("bridge-suffixing", "suffixing", "QSLw", dict(phi=_A, psi=_B, chi=_C)),
    ("bridge-prefixing", "prefixing", "QSLw", dict(phi=_A, psi=_B, chi=_C)),
    ("bridge-tone", "tone", "QSLw-sp", dict(phi=_A, psi=_B, chi=_C, theta=_D)),
    ("crisp_import", "crisp-import", "QSLw", dict(phi=_A, psi=_B, chi=_C)),
    ("crisp_or", "crisp-or", "QSLw", dict(phi=_A, psi=_B)),
    ("crisp_import_sp", "crisp-import", "QSLw-sp", dict(phi=_A, psi=_B, chi=_C)),
    ("crisp_or_sp", "crisp-or", "QSLw-sp", dict(phi=_A, psi=_B)),
    ("claim1", "claim1", "QSLw", dict(a=Var("x"), b=Var("y"))),
    ("claim2", "claim2", "QSLw", dict(phi=parse_formula("x <= 2 | 2 <= x"), hole="x", y="y")),
    ("prin-conj", "prin-conj", "QSLw", dict(v="w", phi=parse_formula("A(w, 1, z)"), s=Var("x"), t=Var("y"))),
    ("prin-from-conj", "prin-from-conj", "QSLw",
     dict(v="w", phi=parse_formula("A(w, 1, z)"), s=Var("x"), t=Var("y"))),
]

def golden_scripts() -> dict[str, ProofScript]:
    return {stem: expand_template(tid, profile, **params) for stem, tid, profile, params in GOLDEN}


def write_golden(directory) -> list[Path]:
    from ..scriptio import save_script

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    lookup = {stem: (tid, params) for stem, tid, _, params in GOLDEN}
    for stem, script in golden_scripts().items():
        tid, params = lookup[stem]
        path = directory / f"{stem}.prf"
        save_script(script, path, [f"template {tid}: {TEMPLATES[tid].doc}"])
        out.append(path)
    return out


__all__ = ["Template", "TEMPLATES", "expand_template", "template_premises", "GOLDEN",
           "golden_scripts", "write_golden"]
