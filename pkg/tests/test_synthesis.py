import pytest
from hypothesis import given

from reference import ref_eval
from relarith.corpus import MAX_NUMERAL, sigma1_corpus
from relarith.kernel import check
from relarith.parser import parse_formula
from relarith.scriptio import format_script
from relarith.semantics import FalseUpToBound, TrueWithWitness, evaluate, holds
from relarith.synthesis import (
    Refusal, SeparatorSpec, build_separator, prove_delta0, prove_false_delta0, prove_separator,
    prove_sigma1, prove_true_delta0,
)
from relarith.syntax import (
    BOT, And, BExists, BForall, Eq, FormulaClass, Imp, Not, Or, Var, classify, numeral, same_formula,
)
from strategies import sentences

F = parse_formula


def _theory_refs(script):
    return {(st.name, st.params) for st in script.steps if st.kind == "theory"}


def _accepted(script, theorem):
    j = check(script)
    assert (j.theory, j.profile) == ("R~", "QL0")
    assert not j.hypotheses
    assert same_formula(j.theorem, theorem)
    return j


class TestPositive:
    def test_addition_atom(self):
        s = prove_true_delta0(F("A(1, 1, 2)"))
        _accepted(s, F("A(1, 1, 2)"))
        assert ("R1", (1, 1)) in _theory_refs(s)

    def test_le_atom(self):
        s = prove_true_delta0(F("1 <= 2"))
        _accepted(s, F("1 <= 2"))
        assert _theory_refs(s) == {("R4", (2,))}

    def test_bounded_universal(self):
        phi = F("All y <= 1 . y <= 1")
        s = prove_true_delta0(phi)
        _accepted(s, phi)
        refs = _theory_refs(s)
        assert {("R4", (1,)), ("R6", (1,))} <= refs
        names = [st.name for st in s.steps]
        assert "all-intro" in names
        assert "or-elim" in names and "trans-imp" in names

    def test_bounded_existential(self):
        phi = F("Ex y <= 3 . M(y, y, 4)")
        _accepted(prove_true_delta0(phi), phi)

    def test_false_sentence_refused(self):
        with pytest.raises(Refusal) as err:
            prove_true_delta0(F("0 = 1"))
        assert err.value.reason == "false"

    def test_implication_with_false_consequent(self):
        with pytest.raises(Refusal, match="outside-class"):
            prove_true_delta0(F("0 = 1 -> 1 = 2"))
        _accepted(prove_true_delta0(F("0 = 1 -> bot")), F("!0 = 1"))

    def test_open_formula_refused(self):
        with pytest.raises(Refusal) as err:
            prove_true_delta0(F("x = x"))
        assert err.value.reason == "not-a-sentence"


class TestNegative:
    def test_equality(self):
        s = prove_false_delta0(F("1 = 2"))
        _accepted(s, F("!1 = 2"))
        assert _theory_refs(s) == {("R3", (1, 2))}

    def test_multiplication(self):
        s = prove_false_delta0(F("M(1, 1, 2)"))
        _accepted(s, F("!M(1, 1, 2)"))
        assert ("R2", (1, 1)) in _theory_refs(s)

    def test_le(self):
        s = prove_false_delta0(F("2 <= 1"))
        _accepted(s, F("!2 <= 1"))
        assert _theory_refs(s) == {("R3", (2, 0)), ("R3", (2, 1)), ("R4", (1,))}

    def test_double_negation(self):
        _accepted(prove_false_delta0(F("!0 = 0")), F("!!0 = 0"))

    def test_bounded_existential(self):
        phi = F("Ex y <= 2 . A(y, y, 3)")
        s = prove_false_delta0(phi)
        _accepted(s, Not(phi))
        assert s.steps[-1].name == "ex-elim"

    def test_bounded_universal(self):
        phi = F("All y <= 3 . !M(y, 2, 4)")
        _accepted(prove_false_delta0(phi), Not(phi))

    def test_true_sentence_refused(self):
        with pytest.raises(Refusal) as err:
            prove_false_delta0(F("0 = 0"))
        assert err.value.reason == "true"


def _witness(script):
    (intro,) = [st for st in script.steps if st.name == "ex-intro"]
    return intro.binding_map["t"]


class TestSigma1:
    def test_witness_case(self):
        phi = F("Ex v . A(v, 1, 3)")
        s = prove_sigma1(phi)
        _accepted(s, phi)
        assert _witness(s) == numeral(2)

    def test_reflexive_matrix(self):
        phi = F("Ex v . v = v")
        s = prove_sigma1(phi)
        _accepted(s, phi)
        assert _witness(s) == numeral(0)
        assert any(st.name == "id" for st in s.steps)

    def test_exhausted_witness_refused(self):
        with pytest.raises(Refusal) as err:
            prove_sigma1(F("Ex v . A(v, v, 41)"), cap=100)
        assert err.value.reason == "witness-exhausted"

    def test_witness_beyond_cap(self):
        phi = F("Ex v . A(v, 2, 9)")
        with pytest.raises(Refusal):
            prove_sigma1(phi, cap=5)
        _accepted(prove_sigma1(phi, cap=7), phi)

    def test_not_sigma1(self):
        with pytest.raises(Refusal, match="not-sigma1"):
            prove_sigma1(F("0 = 0"))

    def test_hundred_random_true(self):
        for phi in sigma1_corpus(100):
            _accepted(prove_sigma1(phi, cap=20), phi)


WORKED = SeparatorSpec(F("(x = 0 | x = 2) & v = 0"), F("x = 1 & v = 0"))


class TestSeparator:
    def test_shape(self):
        sep = build_separator(WORKED)
        assert classify(sep.phi) is FormulaClass.SIGMA1
        assert classify(sep.psi) is FormulaClass.DELTA0
        u = Var(sep.u)
        beta_u = And(F("x = 1"), Eq(u, numeral(0)))
        assert sep.psi == Not(Or(Not(WORKED.alpha), BExists(sep.u, Var("v"), beta_u)))

    def test_sets_by_sweep(self):
        sep = build_separator(WORKED)
        a = {n for n in range(10) if isinstance(evaluate(sep.at(n), cap=50), TrueWithWitness)}
        assert a == {0, 2}
        assert all(isinstance(evaluate(sep.at(n), cap=50), FalseUpToBound) for n in (1, 3, 9))

    def test_positive(self):
        s = prove_separator(WORKED, 2, "pos")
        sep = build_separator(WORKED)
        _accepted(s, sep.at(2))
        assert evaluate(sep.at(2)) == TrueWithWitness(0)

    def test_negative(self):
        s = prove_separator(WORKED, 1, "neg")
        sep = build_separator(WORKED)
        _accepted(s, Not(sep.at(1)))
        assert isinstance(evaluate(sep.at(1), cap=1000), FalseUpToBound)

    @pytest.mark.parametrize("side", ["pos", "neg"])
    def test_neither_set(self, side):
        with pytest.raises(Refusal) as err:
            prove_separator(WORKED, 5, side)
        assert err.value.reason == "not-member"

    def test_empty_sets(self):
        spec = SeparatorSpec(BOT, BOT)
        sep = build_separator(spec)
        assert classify(sep.phi) is FormulaClass.SIGMA1
        with pytest.raises(Refusal):
            prove_separator(spec, 0, "pos")

    def test_wrong_free_variable(self):
        with pytest.raises(ValueError, match="free variable"):
            build_separator(SeparatorSpec(F("x = y"), BOT))

    def test_overlap_aborts(self):
        spec = SeparatorSpec(F("x = 3 & v = 1"), F("x = 3 & v = 2"))
        with pytest.raises(Refusal) as err:
            prove_separator(spec, 3, "pos")
        assert err.value.reason == "not-disjoint"

    def test_late_witnesses(self):
        spec = SeparatorSpec(F("A(x, x, v) & 1 <= x"), F("x = 0 & v = 4"))
        sep = build_separator(spec)
        s = prove_separator(spec, 3, "pos")
        _accepted(s, sep.at(3))
        s = prove_separator(spec, 0, "neg")
        _accepted(s, Not(sep.at(0)))


@given(sentences(imp=False))
def test_completeness_and_soundness(phi):
    s = prove_delta0(phi)
    j = check(s)
    truth = ref_eval(phi)
    assert same_formula(j.theorem, phi if truth else Imp(phi, BOT))
    # soundness: the theorem as stated (bounded universals come out expanded)
    assert holds(j.theorem)


@given(sentences(depth=2))
def test_deterministic(phi):
    try:
        first = prove_delta0(phi)
    except Refusal:
        return
    assert format_script(first) == format_script(prove_delta0(phi))


def _size(p):
    fields = [getattr(p, f) for f in getattr(p, "__dataclass_fields__", {})]
    return 1 + sum(_size(c) for c in fields if hasattr(c, "__dataclass_fields__"))


def _quantifiers(p):
    inner = [getattr(p, f) for f in getattr(p, "__dataclass_fields__", {})]
    here = isinstance(p, (BExists, BForall))
    return here + max((_quantifiers(c) for c in inner if hasattr(c, "__dataclass_fields__")), default=0)


@given(sentences(imp=False))
def test_script_size_guard(phi):
    s = prove_delta0(phi)
    # each bounded quantifier multiplies the work by at most (N + 1) instances
    assert len(s) <= 60 * _size(phi) * (MAX_NUMERAL + 1) ** _quantifiers(phi)
