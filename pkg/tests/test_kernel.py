from dataclasses import replace
from pathlib import Path

import pytest
from hypothesis import given

from relarith.kernel import (
    Judgment, KernelError, MalformedScript, ProofScript, SideConditionError, Step, check, compose,
    instantiate,
)
from relarith.parser import parse_formula, parse_term
from relarith.scriptio import format_script, load_script, parse_script
from relarith.syntax import BOT, And, Imp, Not, Var, same_formula
from relarith.theories import expand_template
from strategies import formulas

GOLDEN = Path(__file__).resolve().parent.parent / "golden"
F = parse_formula


def test_assertion_instance():
    phi = F("0 = 0")
    prem, concl = instantiate("assertion", {"phi": phi, "psi": BOT})
    assert prem == [phi]
    assert concl == Imp(Imp(phi, BOT), BOT)


def test_all_intro_side_condition():
    with pytest.raises(SideConditionError, match="not free"):
        instantiate("all-intro", {"x": "x", "chi": F("x <= 1"), "psi": F("x = x")})


def test_prin_formula_instance():
    _, concl = instantiate("=prin-formula", {"v": "w", "phi": F("A(w, 1, z)"),
                                              "s": Var("x"), "t": Var("y")})
    assert concl == F("x = y -> A(x, 1, z) -> A(y, 1, z)")


def test_substitutability_is_checked():
    with pytest.raises(KernelError):
        instantiate("all-ins", {"x": "x", "phi": F("Ex y . x = y"), "t": Var("y")})


def test_missing_binding():
    with pytest.raises(MalformedScript, match="missing"):
        instantiate("mp", {"phi": BOT})


def _script(*steps, profile="QL0", theory="none", hyps=()):
    return ProofScript(profile, theory, tuple(steps), tuple(hyps))


def test_identity_on_bot():
    j = check(_script(Step("axiom", "identity", Imp(BOT, BOT), (("phi", BOT),))))
    assert j.theorem == Imp(BOT, BOT)
    assert (j.theory, j.profile) == ("none", "QL0")


def test_mp_with_mismatched_antecedent():
    psi, phi, chi = F("1 = 1"), F("0 = 0"), F("2 = 2")
    s = _script(
        Step("theory", "hyp", psi),
        Step("theory", "hyp", Imp(phi, chi)),
        Step("rule", "mp", chi, (("phi", phi), ("psi", chi)), (0, 1)),
        hyps=(psi, Imp(phi, chi)),
    )
    with pytest.raises(KernelError) as err:
        check(s)
    assert err.value.step == 3


def test_forward_reference_is_malformed():
    s = _script(Step("rule", "mp", BOT, (("phi", BOT), ("psi", BOT)), (1, 0)),
                Step("axiom", "identity", Imp(BOT, BOT), (("phi", BOT),)))
    with pytest.raises(MalformedScript):
        check(s)


def test_conclusion_mismatch_names_step():
    s = _script(Step("axiom", "identity", Imp(BOT, F("0 = 0")), (("phi", BOT),)))
    with pytest.raises(KernelError, match="conclusion mismatch"):
        check(s)


def test_rule_outside_profile():
    phi, psi = F("0 = 0"), F("1 = 1")
    s = _script(Step("theory", "hyp", phi),
                Step("rule", "weakening", Imp(psi, phi), (("phi", phi), ("psi", psi)), (0,)),
                profile="QSLw", hyps=(phi,))
    with pytest.raises(KernelError, match="not part of profile"):
        check(s)


def test_theory_axiom_parameters():
    r3 = F("!1 = 2")
    assert check(_script(Step("theory", "R3", r3, params=(1, 2)), theory="R~")).theorem == r3
    with pytest.raises(KernelError, match="out of schema"):
        check(_script(Step("theory", "R3", F("!1 = 1"), params=(1, 1)), theory="R~"))
    with pytest.raises(KernelError):
        check(_script(Step("theory", "R3", r3, params=(1, 2)), theory="none"))


def test_unknown_hypothesis():
    with pytest.raises(KernelError, match="not a hypothesis"):
        check(_script(Step("theory", "hyp", F("0 = 0"))))


def test_unknown_profile_and_theory():
    step = Step("axiom", "identity", Imp(BOT, BOT), (("phi", BOT),))
    with pytest.raises(MalformedScript):
        check(_script(step, profile="QL7"))
    with pytest.raises(MalformedScript):
        check(_script(step, theory="PA"))


def test_judgment_cannot_be_forged():
    with pytest.raises(TypeError):
        Judgment("R~", "QL0", BOT)


def test_crisp_import_script():
    s = load_script(GOLDEN / "crisp_import.prf")
    j = check(s)
    assert same_formula(j.theorem, F("x = 0 & y <= x -> A(x, y, z)"))
    assert len(s.labels) == 5


def test_check_is_deterministic():
    s = load_script(GOLDEN / "crisp_or.prf")
    assert check(s) == check(s)


def test_unused_hypotheses_do_not_hurt():
    s = load_script(GOLDEN / "claim1.prf")
    extra = replace(s, hypotheses=s.hypotheses + (F("0 = 1"), F("A(x, x, x)")))
    assert check(extra).theorem == check(s).theorem


class TestCompose:
    def test_splices_premise_derivation(self):
        inner = expand_template("adj", "QL0", phi=F("0 = 0 -> 0 = 0"), psi=F("bot -> bot"))
        from relarith.theories import ProofBuilder

        b = ProofBuilder("QL0", "none")
        b.identity(F("0 = 0"))
        b.identity(BOT)
        first = b.script()
        inner = compose(inner, _prefix(first, 0), 0)
        assert check(inner).theorem == And(F("0 = 0 -> 0 = 0"), F("bot -> bot"))

    def test_inner_proving_final_formula(self):
        phi = Imp(BOT, BOT)
        outer = _script(Step("theory", "hyp", phi), hyps=(phi,))
        inner = _script(Step("axiom", "identity", phi, (("phi", BOT),)))
        out = compose(outer, inner, 0)
        assert out.steps == inner.steps
        assert check(out).theorem == phi

    def test_cross_profile_rejected(self):
        phi = Imp(BOT, BOT)
        outer = _script(Step("theory", "hyp", phi), hyps=(phi,), profile="QSLw")
        inner = _script(Step("axiom", "identity", phi, (("phi", BOT),)))
        with pytest.raises(KernelError, match="profile"):
            compose(outer, inner, 0)

    def test_theorem_mismatch_rejected(self):
        phi = Imp(BOT, BOT)
        outer = _script(Step("theory", "hyp", Not(phi)), hyps=(Not(phi),))
        inner = _script(Step("axiom", "identity", phi, (("phi", BOT),)))
        with pytest.raises(KernelError):
            compose(outer, inner, 0)

    def test_aux_into_delta0_universal_case(self):
        from relarith.synthesis import prove_true_delta0

        phi = F("All y <= 1 . y <= 1")
        outer = expand_template("gen", "QL0", phi=phi, x="z")
        inner = prove_true_delta0(phi)
        out = compose(_with_theory(outer, "R~"), inner, 0)
        assert same_formula(check(out).theorem, F("All z . All y <= 1 . y <= 1"))


def _prefix(script, k):
    """The sub-script ending in step ``k``."""
    return replace(script, steps=script.steps[:k + 1])


def _with_theory(script, theory):
    return replace(script, theory=theory)


class TestScriptFormat:
    @pytest.mark.parametrize("path", sorted(GOLDEN.glob("*.prf")), ids=lambda p: p.stem)
    def test_golden_roundtrip(self, path):
        s = load_script(path)
        again = parse_script(format_script(s))
        assert again == s
        check(again)

    def test_forward_reference(self):
        text = ("profile: QL0\ntheory: none\n"
                "step 1 rule mp from 2,2 [phi=bot; psi=bot] :: bot\n"
                "step 2 axiom identity [phi=bot] :: bot -> bot\n")
        with pytest.raises(MalformedScript):
            check(parse_script(text))

    @pytest.mark.parametrize("text", [
        "theory: none\nstep 1 axiom identity [phi=bot] :: bot -> bot\n",
        "profile: QL0\ntheory: none\n",
        "profile: QL0\ntheory: none\nstep 2 axiom identity [phi=bot] :: bot -> bot\n",
        "profile: QL0\ntheory: none\nstep 1 axiom nosuch [phi=bot] :: bot -> bot\n",
        "profile: QL0\ntheory: none\nstep 1 axiom identity [phi=bot] bot -> bot\n",
        "profile: QL0\ntheory: none\nstep 1 axiom identity [phi=(] :: bot -> bot\n",
        "profile: QL0\ntheory: none\nwhat is this\n",
    ])
    def test_malformed(self, text):
        with pytest.raises(MalformedScript):
            parse_script(text)

    def test_theory_params_and_bindings(self):
        text = "profile: QL0\ntheory: R~\nstep 1 theory R4(1) [x=S(y)] :: S(y) <= 1 <-> S(y) = 0 | S(y) = 1\n"
        s = parse_script(text)
        assert s.steps[0].params == (1,)
        assert s.steps[0].bindings == (("x", parse_term("S(y)")),)
        check(s)


@given(formulas(scope=("x",), depth=2))
def test_identity_accepts_any_formula(phi):
    s = _script(Step("axiom", "identity", Imp(phi, phi), (("phi", phi),)))
    assert check(s).theorem == Imp(phi, phi)
    assert check(parse_script(format_script(s))).theorem == Imp(phi, phi)
