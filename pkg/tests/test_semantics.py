import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from reference import ref_eval
from relarith.corpus import delta0_corpus, sigma1_corpus
from relarith.kernel import SCHEMAS, instantiate
from relarith.parser import parse_formula
from relarith.semantics import (
    EvalError, FalseUpToBound, TrueWithWitness, eval_term, evaluate, find_witness, holds, truth_table,
)
from relarith.synthesis import SeparatorSpec, build_separator
from relarith.syntax import Var, numeral, substitute
from strategies import formulas, sentences

F = parse_formula


def test_addition_atom():
    assert evaluate(F("A(2, 3, 5)")) is True


def test_nested_bounded():
    assert evaluate(F("All y <= 2 . Ex z <= 2 . y <= z")) is True


def test_separator_matrix_at_member_of_b():
    sep = build_separator(SeparatorSpec(F("(x = 0 | x = 2) & v = 0"), F("x = 1 & v = 0")))
    assert evaluate(sep.psi, {"x": 1, "v": 0}) is False


def test_numerals_evaluate_to_their_index():
    assert [eval_term(numeral(n), {}) for n in range(51)] == list(range(51))


def test_unbound_variable():
    with pytest.raises(EvalError, match="unbound"):
        evaluate(F("x = 0"))
    with pytest.raises(EvalError):
        eval_term(Var("q"), {})


def test_unbounded_universal_rejected():
    with pytest.raises(EvalError, match="unbounded"):
        evaluate(F("All x . x = x"))


def test_expanded_bounded_forms_are_recognised():
    from relarith.syntax import expand_bounded

    assert evaluate(expand_bounded(F("All y <= 3 . Ex z <= y . z = y"))) is True


class TestSigma1:
    def test_witness(self):
        r = evaluate(F("Ex v . A(v, 1, 3)"), cap=10)
        assert r == TrueWithWitness(2)
        assert str(r) == "true witness=2"

    def test_exhausted_is_not_false(self):
        r = evaluate(F("Ex v . v <= 0 & M(1, 1, 2)"), cap=10)
        assert r == FalseUpToBound(10)
        assert str(r) == "unknown-up-to 10"
        with pytest.raises(TypeError):
            bool(r)

    def test_find_witness(self):
        assert find_witness(F("Ex v . A(v, 1, 3)"), 10) == 2
        assert find_witness(F("Ex v . v <= 0 & M(1, 1, 2)"), 10) is None

    def test_find_witness_rejects_non_sigma1(self):
        with pytest.raises(EvalError):
            find_witness(F("A(1, 1, 2)"), 10)

    def test_witness_minimality(self):
        for phi in sigma1_corpus(200):
            w = find_witness(phi, 20)
            assert w is not None
            assert ref_eval(phi.body, {phi.var: w})
            assert not any(ref_eval(phi.body, {phi.var: k}) for k in range(w))


@given(sentences())
def test_agrees_with_reference(phi):
    assert evaluate(phi) == ref_eval(phi)


def test_agrees_with_reference_on_corpus_prefix():
    for phi in itertools.islice(delta0_corpus(), 0, 12618, 12):
        assert holds(phi) == ref_eval(phi)


def test_delta0_corpus_truth_count():
    # frozen from the reference evaluator
    assert sum(ref_eval(phi) for phi in delta0_corpus()) == 5993


@given(formulas(scope=("x", "y"), depth=3))
def test_truth_table_matches_pointwise(phi):
    table = truth_table(phi, ["x", "y"], 5)
    assert table.shape == (6, 6)
    for a, b in itertools.product(range(6), repeat=2):
        assert bool(table[a, b]) == ref_eval(phi, {"x": a, "y": b})


def test_truth_table_closed_formula():
    t = truth_table(F("1 <= 2"), [], 8)
    assert t.shape == () and bool(t)


def test_truth_table_needs_cover():
    with pytest.raises(EvalError):
        truth_table(F("x = y"), ["x"], 3)


_AXIOMS = [name for name, s in SCHEMAS.items() if not s.is_rule and name not in ("all-ins", "ex-intro")]


@pytest.mark.parametrize("name", _AXIOMS)
@given(data=st.data())
def test_axiom_schemata_are_classically_valid(name, data):
    from relarith.syntax import TERM_TYPES

    schema = SCHEMAS[name]
    b = {}
    for k, sort in schema.sorts.items():
        if sort == "formula":
            b[k] = data.draw(formulas(scope=("x", "w"), depth=2, quantifiers=1))
        elif sort == "term":
            b[k] = data.draw(st.sampled_from([Var("x"), numeral(1), numeral(3)]))
        else:
            b[k] = "w"
    _, concl = instantiate(name, b)
    assert not isinstance(concl, TERM_TYPES)
    for a, c in itertools.product(range(4), repeat=2):
        assert ref_eval(concl, {"x": a, "w": c, "y": c})


@pytest.mark.parametrize("name", ["all-ins", "ex-intro"])
@given(formulas(scope=("x", "w"), depth=2, quantifiers=1), st.integers(0, 3))
def test_quantifier_axioms_valid_with_bounded_stand_in(name, phi, k):
    # the universal premise ranges over all of N; bounding it at 3 keeps it decidable
    t = numeral(k)
    inst = substitute(phi, "w", t)
    for a in range(4):
        every = all(ref_eval(phi, {"x": a, "w": j}) for j in range(4))
        some = any(ref_eval(phi, {"x": a, "w": j}) for j in range(4))
        if name == "all-ins":
            assert (not every) or ref_eval(inst, {"x": a})
        else:
            assert (not ref_eval(inst, {"x": a})) or some


def test_vectorised_and_scalar_agree_on_rewriter_shapes():
    p = F("Ex u <= x . Ex w <= y . A(u, w, z)")
    t = truth_table(p, ["x", "y", "z"], 6)
    want = np.array([[[ref_eval(p, {"x": a, "y": b, "z": c}) for c in range(7)]
                      for b in range(7)] for a in range(7)])
    assert (t == want).all()
