import itertools

import pytest
from hypothesis import given, strategies as st

from reference import ref_eval, ref_term
from relarith.parser import normalize_binders, parse_formula, parse_term
from relarith.printer import print_formula, print_term
from relarith.semantics import eval_term, holds
from relarith.syntax import (
    BOT, Add, And, BExists, BForall, Bot, CaptureError, Eq, Exists, Forall, FormulaClass, Imp, Le,
    Or, Succ, SyntaxErrorAt, Var, Zero, classify, expand_bounded, free_vars, numeral,
    numeral_value, same_formula, substitute,
)
from strategies import classical_formulas, formulas, sentences, terms

x, y, z, u, v = (Var(n) for n in "xyzuv")


class TestParser:
    def test_numeral_atom(self):
        one, two = Succ(Zero()), Succ(Succ(Zero()))
        assert parse_formula("A(S(0),S(0),S(S(0)))") == Add(one, one, two)

    def test_negation_is_implication_into_bot(self):
        assert parse_formula("!(x <= S(S(0)))") == Imp(Le(x, numeral(2)), Bot())

    def test_unknown_predicate_reports_position(self):
        with pytest.raises(SyntaxErrorAt) as err:
            parse_formula("Ex u <= v . B(x,u)")
        assert err.value.pos == 12

    def test_classical_symbols_rejected_in_relational_mode(self):
        with pytest.raises(SyntaxErrorAt, match="classical"):
            parse_formula("x + y = z")
        assert parse_formula("x + y = z", "classical") is not None

    def test_reserved_names(self):
        with pytest.raises(SyntaxErrorAt):
            parse_formula("x = _r0")
        assert parse_formula("x = _r0", allow_reserved=True) == Eq(x, Var("_r0"))

    def test_precedence(self):
        # ! binds tighter than &, which binds tighter than |, then ->
        p = parse_formula("!x = 0 & y = 0 | z = 0 -> bot")
        assert p == Imp(Or(And(Imp(Eq(x, Zero()), BOT), Eq(y, Zero())), Eq(z, Zero())), BOT)

    def test_digits_are_numerals(self):
        assert parse_term("3") == numeral(3)

    def test_shadowing_binder_is_renamed(self):
        p = parse_formula("Ex y . Ex y . y = 0")
        assert p.var != p.body.var
        assert same_formula(p, Exists("a", Exists("b", Eq(Var("b"), Zero()))))

    def test_binder_clashing_with_free_variable_is_renamed(self):
        p = parse_formula("x = 0 & Ex x . x = 1")
        assert p.right.var != "x"
        assert free_vars(p) == {"x"}

    @given(formulas(scope=("x", "y")))
    def test_print_parse_roundtrip(self, phi):
        phi = normalize_binders(phi)
        assert parse_formula(print_formula(phi)) == phi

    @given(formulas(scope=("x",)))
    def test_roundtrip_without_digits(self, phi):
        phi = normalize_binders(phi)
        assert parse_formula(print_formula(phi, digits=False)) == phi

    @given(classical_formulas())
    def test_classical_roundtrip(self, phi):
        phi = normalize_binders(phi)
        assert parse_formula(print_formula(phi), "classical") == phi

    @given(terms(("x",), classical=True))
    def test_term_roundtrip(self, t):
        assert parse_term(print_term(t), "classical") == t


class TestNumerals:
    def test_small(self):
        assert numeral(0) == Zero()
        assert numeral(3) == Succ(Succ(Succ(Zero())))

    @given(st.integers(0, 40), st.integers(0, 40))
    def test_concatenation(self, m, n):
        def graft(t):
            return numeral(n) if isinstance(t, Zero) else Succ(graft(t.inner))
        assert numeral(m + n) == graft(numeral(m))

    def test_value_view(self):
        assert [numeral_value(numeral(k)) for k in range(51)] == list(range(51))
        assert numeral_value(Succ(x)) is None


class TestExpandBounded:
    def test_existential_shape(self):
        beta = Eq(x, u)
        assert expand_bounded(BExists("u", v, beta)) == Exists("u", And(Le(u, v), beta))

    def test_universal_shape(self):
        body = Le(u, x)
        assert expand_bounded(BForall("u", v, body)) == Forall("u", Or(Imp(Le(u, v), BOT), body))

    def test_identity_without_bounded_quantifiers(self):
        p = parse_formula("A(x, 1, z) -> Ex v . v = x")
        assert expand_bounded(p) == p

    def test_nested_matches_outer_first_expansion(self):
        p = BExists("u", v, BForall("w", u, Le(Var("w"), x)))

        def outer_first(f):
            if isinstance(f, BExists):
                return Exists(f.var, And(Le(Var(f.var), f.bound), outer_first(f.body)))
            if isinstance(f, BForall):
                return Forall(f.var, Or(Imp(Le(Var(f.var), f.bound), BOT), outer_first(f.body)))
            return f

        assert expand_bounded(p) == outer_first(p)

    @given(formulas(scope=("x", "y")))
    def test_idempotent(self, phi):
        once = expand_bounded(phi)
        assert expand_bounded(once) == once

    @given(formulas(scope=("x", "y"), depth=2))
    def test_preserves_truth(self, phi):
        expanded = expand_bounded(phi)
        for a, b in itertools.product(range(9), repeat=2):
            assert holds(expanded, {"x": a, "y": b}) == ref_eval(phi, {"x": a, "y": b})


class TestSubstitution:
    def test_simple(self):
        assert substitute(Le(x, numeral(2)), "x", numeral(1)) == Le(numeral(1), numeral(2))

    def test_capture_is_reported(self):
        with pytest.raises(CaptureError) as err:
            substitute(Exists("y", Eq(x, Succ(y))), "x", Succ(y))
        assert err.value.binder == "y"

    def test_bound_occurrences_untouched(self):
        p = Exists("x", Eq(x, y))
        assert substitute(p, "x", numeral(3)) == p

    def test_r4_body_at_numerals(self):
        from relarith.axioms import AxiomRef, axiom_formula

        for n in range(5):
            body = axiom_formula(AxiomRef("R~", "R4", (n,)))
            for m in range(n + 1):
                assert holds(substitute(body, "x", numeral(m)))

    @given(formulas(scope=("x", "y")), terms(("y",)), st.integers(0, 5), st.integers(0, 5))
    def test_substitution_lemma(self, phi, t, a, b):
        sigma = {"x": a, "y": b}
        lhs = ref_eval(substitute(phi, "x", t), sigma)
        assert lhs == ref_eval(phi, {**sigma, "x": ref_term(t, sigma)})


class TestClassify:
    def test_examples(self):
        assert classify(BForall("y", x, Or(Eq(y, Zero()), Le(y, x)))) is FormulaClass.DELTA0
        assert classify(Exists("v", Add(v, numeral(1), numeral(3)))) is FormulaClass.SIGMA1
        assert classify(Forall("x", Eq(x, x))) is FormulaClass.OTHER

    def test_expanded_form_is_other(self):
        assert classify(expand_bounded(parse_formula("All y <= x . y = 0"))) is FormulaClass.OTHER

    def test_sigma1_needs_delta0_matrix(self):
        assert classify(parse_formula("Ex v . Ex w . v = w")) is FormulaClass.OTHER

    @given(sentences())
    def test_delta0_evaluates_without_cap(self, phi):
        assert classify(phi) is FormulaClass.DELTA0
        assert holds(phi) == ref_eval(phi)


class TestFreeVars:
    def test_examples(self):
        assert free_vars(Add(x, numeral(1), z)) == {"x", "z"}
        assert free_vars(Exists("v", Add(x, v, v))) == {"x"}
        assert free_vars(BOT) == frozenset()

    def test_bound_term_variables_are_free(self):
        assert free_vars(BExists("u", v, Eq(u, u))) == {"v"}


class TestSameFormula:
    def test_alpha_equivalence(self):
        assert same_formula(parse_formula("Ex u . u = x"), parse_formula("Ex w . w = x"))
        assert not same_formula(parse_formula("Ex u . u = x"), parse_formula("Ex u . u = y"))

    def test_sugar_matches_expansion(self):
        p = parse_formula("All u <= 2 . Ex w <= u . w = u")
        assert same_formula(p, expand_bounded(p))

    @given(formulas(scope=("x",)))
    def test_reflexive_under_expansion(self, phi):
        assert same_formula(phi, expand_bounded(phi))


def test_eval_term_examples():
    assert eval_term(numeral(3), {}) == 3
    assert eval_term(Succ(Succ(x)), {"x": 5}) == 7
