import itertools
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from reference import ref_eval
from relarith.parser import parse_formula
from relarith.rewriter import (
    AtomShape, NormalFormFailure, atom_shape, dm_leq, dm_less, eliminate_functions,
    equivalence_verdicts, measure, rewrite_step, rewrite_trace,
)
from relarith.syntax import (
    BExists, Eq, FormulaClass, Le, Mul, Plus, Times, Var, classify, conjunction, is_relational,
    same_formula,
)
from strategies import classical_formulas

C = lambda s: parse_formula(s, "classical")  # noqa: E731
x, y, z, v = (Var(n) for n in "xyzv")


def _agree(p, q, names, bound):
    for vals in itertools.product(range(bound + 1), repeat=len(names)):
        env = dict(zip(names, vals))
        if ref_eval(p, env) != ref_eval(q, env):
            return env
    return None


class TestShapes:
    def test_examples(self):
        assert atom_shape(C("x = y + z")) is AtomShape.ALMOST_SIMPLE
        assert atom_shape(C("S(x) <= 2")) is AtomShape.SIMPLE
        assert atom_shape(C("y * z <= x")) is AtomShape.COMPLEX

    def test_relational_atoms_are_simple(self):
        assert atom_shape(parse_formula("A(x, y, z)")) is AtomShape.SIMPLE
        assert atom_shape(parse_formula("bot")) is AtomShape.SIMPLE

    def test_nested_product_is_complex(self):
        assert atom_shape(C("x = (y + z) * z")) is AtomShape.COMPLEX


class TestMeasure:
    def test_example(self):
        assert measure(C("x = y + z")) == Counter({0: 3, 1: 1})

    def test_bounds_do_not_count(self):
        assert measure(C("Ex v <= S(S(x)) . v = y")) == Counter({0: 2})

    def test_dm_defining_case(self):
        assert dm_less(Counter([0, 0, 1]), Counter([2]))
        assert not dm_less(Counter([2]), Counter([0, 0, 1]))

    def test_dm_is_strict(self):
        m = Counter([1, 1, 0])
        assert dm_leq(m, m) and not dm_less(m, m)

    @given(st.lists(st.integers(0, 4), max_size=6), st.lists(st.integers(0, 4), max_size=6))
    def test_dm_matches_sorted_lexicographic(self, a, b):
        # for a total order, the multiset extension compares descending sorts lexicographically
        lex = sorted(a, reverse=True) < sorted(b, reverse=True)
        assert dm_less(Counter(a), Counter(b)) == lex

    @given(st.lists(st.integers(0, 3), max_size=5), st.lists(st.integers(0, 3), max_size=5),
           st.lists(st.integers(0, 3), max_size=5))
    def test_dm_transitive(self, a, b, c):
        a, b, c = Counter(a), Counter(b), Counter(c)
        if dm_less(a, b) and dm_less(b, c):
            assert dm_less(a, c)


class TestStep:
    def test_almost_simple_is_done(self):
        assert rewrite_step(C("x = y + z"), "strict") is None
        assert rewrite_step(C("x = y + z"), "corrected") is None

    def test_strict_literal_output(self):
        st_ = rewrite_step(C("y * z <= x"), "strict")
        assert st_.rule == "le-left"
        x1, x2 = Var("a1"), Var("a2")
        want = BExists("a1", x, BExists("a2", x, Le(Times(x1, x2), x)))
        assert same_formula(st_.formula, want)
        assert not st_.decreased

    def test_corrected_step(self):
        st_ = rewrite_step(C("y * z <= x"), "corrected")
        assert st_.decreased
        assert same_formula(st_.formula, BExists("w", x, Mul(y, z, Var("w"))))

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            rewrite_step(C("y * z <= x"), "lenient")


class TestEliminate:
    def test_base_replacement(self):
        assert eliminate_functions(C("x = y + z")) == parse_formula("A(y, z, x)")

    def test_under_bounded_quantifier(self):
        assert eliminate_functions(C("Ex v <= x . v = y * y")) == BExists("v", x, Mul(y, y, v))

    def test_le_right_agrees_exhaustively(self):
        p = C("x <= y * z")
        out = eliminate_functions(p)
        assert classify(out) is FormulaClass.DELTA0 and is_relational(out)
        assert _agree(p, out, ["x", "y", "z"], 8) is None

    def test_nested(self):
        p = C("x = (y + z) * z")
        out = eliminate_functions(p)
        assert _agree(p, out, ["x", "y", "z"], 6) is None

    def test_successor_of_sum(self):
        p = C("S(y + z) = x")
        assert _agree(p, eliminate_functions(p), ["x", "y", "z"], 6) is None

    def test_both_sides_compound_unsupported(self):
        with pytest.raises(NormalFormFailure, match="both sides"):
            eliminate_functions(C("x + y = y * z"))

    def test_strict_stalls_on_products(self):
        with pytest.raises(NormalFormFailure, match="does not decrease"):
            eliminate_functions(C("y * z <= x"), "strict")

    def test_strict_direct_case(self):
        assert eliminate_functions(C("x = S(y) + z"), "strict") == parse_formula("A(S(y), z, x)")

    def test_trace_is_recorded(self):
        trace = []
        eliminate_functions(C("x <= y + z & y * y <= x"), trace=trace)
        assert len(trace) == 2
        assert all(t.decreased for t in trace)


@given(classical_formulas())
def test_corrected_mode_properties(p):
    steps = rewrite_trace(p, "corrected")
    assert all(st.decreased for st in steps)
    out = eliminate_functions(p)
    assert classify(out) is FormulaClass.DELTA0
    assert is_relational(out)
    assert _agree(p, out, ["x", "y", "z"], 3) is None


# Frozen from an exhaustive scan with the reference evaluator, values <= 8.
LITERAL_VERDICTS = {
    ("eq", "+"): {"t": 0, "t1": 0, "t2": 1},
    ("le-left", "+"): {"t": 0, "t1": 0, "t2": 1},
    ("le-right", "+"): None,
    ("eq", "*"): {"t": 0, "t1": 1, "t2": 1},
    ("le-left", "*"): {"t": 0, "t1": 1, "t2": 1},
    ("le-right", "*"): {"t": 3, "t1": 2, "t2": 2},
}


def _literal(name, op):
    t, t1, t2, a, b = (Var(n) for n in ("t", "t1", "t2", "a", "b"))
    if name == "eq":
        return Eq(t, op(t1, t2)), BExists("a", t, BExists("b", t, Eq(t, op(a, b))))
    if name == "le-left":
        return Le(op(t1, t2), t), BExists("a", t, BExists("b", t, Le(op(a, b), t)))
    body = conjunction([Le(a, t1), Le(b, t2), Eq(t, op(a, b))])
    return Le(t, op(t1, t2)), BExists("a", t, BExists("b", t, body))


@pytest.mark.parametrize("key", list(LITERAL_VERDICTS), ids=lambda k: f"{k[0]}[{k[1]}]")
def test_literal_equivalences_against_reference(key):
    lhs, rhs = _literal(key[0], Plus if key[1] == "+" else Times)
    cx = None
    for vals in itertools.product(range(9), repeat=3):
        env = dict(zip(("t", "t1", "t2"), vals))
        if ref_eval(lhs, env) != ref_eval(rhs, env):
            cx = env
            break
    assert cx == LITERAL_VERDICTS[key]


def test_verdicts_match_frozen_table():
    got = {(v.name, v.op): (None if v.valid else v.counterexample) for v in equivalence_verdicts()}
    assert got == LITERAL_VERDICTS
