import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_distinct, brute_tautology, naive_eval
from strategies import sentences, terms
from truthlab.evaluation import (
    BoundedOracle, ConstantOracle, Delta0Error, EvalConfig, Evaluator, LabeledOracle,
    MissingOracleError, ValuationOracle, eval_bounded, eval_delta0, val,
)
from truthlab.grammar import parse_formula
from truthlab.overspill import distinctness_sentence
from truthlab.syntax import (
    Add, And, Eq, Exists, Mul, Not, Or, PrProp, Succ, Var, Zero, bounded_exists,
    bounded_forall, leq, numeral,
)


def test_val():
    assert val(Mul(numeral(3), Add(numeral(2), Succ(Zero())))) == 9
    assert val(numeral(1000)) == 1000
    with pytest.raises(ValueError):
        val(Var(0))
    with pytest.raises(TypeError):
        val(Eq(Zero(), Zero()))


@given(terms(closed=True))
def test_val_matches_reference(t):
    from oracles import term_value
    assert val(t) == term_value(t, {})


def test_config_validation():
    with pytest.raises(ValueError):
        EvalConfig(0)
    with pytest.raises(ValueError):
        EvalConfig(True)


@pytest.mark.parametrize("text, bound, expected", [
    ("forall v0. exists v1. v1 = S(v0)", 3, False),
    ("forall v0. exists v1. (v0 = v1 * S(S(0)) | v0 = S(v1 * S(S(0))))", 5, True),
    ("exists v0. v0 + v0 = S(S(S(0)))", 9, False),
    ("exists v0. v0 * v0 = S(S(S(S(0))))", 2, True),
    ("forall v0. (v0 = 0 | exists v1. S(v1) = v0)", 4, True),
])
def test_bounded_examples(text, bound, expected):
    assert eval_bounded(parse_formula(text), EvalConfig(bound)) is expected


@settings(max_examples=300)
@given(sentences(), st.integers(1, 3))
def test_bounded_matches_naive(phi, bound):
    assert eval_bounded(phi, EvalConfig(bound)) == naive_eval(phi, bound)


def test_open_formula_rejected():
    with pytest.raises(ValueError):
        eval_bounded(Eq(Var(0), Zero()), EvalConfig(2))


def test_prprop_needs_an_attachment():
    taut = PrProp(Or(Eq(Zero(), Zero()), Not(Eq(Zero(), Zero()))))
    with pytest.raises(MissingOracleError):
        eval_bounded(taut, EvalConfig(1))
    assert eval_bounded(taut, EvalConfig.with_prprop(1))
    assert not eval_bounded(PrProp(Eq(Zero(), Zero())), EvalConfig.with_prprop(1))


def test_alpha_shape_with_attachment():
    # !(phi0 & PrProp(phi0 -> phi0)) has the value of !phi0
    phi0 = Eq(Zero(), Zero())
    alpha = Not(And(phi0, PrProp(Or(Not(phi0), phi0))))
    assert eval_bounded(alpha, EvalConfig.with_prprop(1)) is False


@pytest.mark.parametrize("c, bound", [(c, b) for c in range(1, 6) for b in range(1, 6)])
def test_distinctness_against_enumeration(c, bound):
    assert eval_bounded(distinctness_sentence(c), EvalConfig(bound)) == brute_distinct(c, bound)


def test_distinctness_examples():
    assert eval_bounded(distinctness_sentence(3), EvalConfig(2))
    assert not eval_bounded(distinctness_sentence(5), EvalConfig(3))


def test_evaluator_memo_is_reused():
    ev = Evaluator(EvalConfig(4))
    phi = distinctness_sentence(4)
    assert ev(phi) and ev(phi)
    assert phi in ev._memo


# delta0

def test_leq_atom():
    assert eval_delta0(leq(numeral(2), numeral(5), 0))
    assert not eval_delta0(leq(numeral(5), numeral(2), 0))
    assert eval_delta0(leq(numeral(3), numeral(3), 7))


def test_bounded_quantifiers_exact():
    # every x <= 6 has some y <= x with y + y = x or y + y + 1 = x
    body = Or(Eq(Add(Var(1), Var(1)), Var(0)), Eq(Succ(Add(Var(1), Var(1))), Var(0)))
    phi = bounded_forall(0, numeral(6), bounded_exists(1, Var(0), body, 2), 3)
    assert eval_delta0(phi)
    # some x <= 10 with x * x = 49
    sq = bounded_exists(0, numeral(10), Eq(Mul(Var(0), Var(0)), numeral(49)), 1)
    assert eval_delta0(sq)
    assert not eval_delta0(bounded_exists(0, numeral(6), Eq(Mul(Var(0), Var(0)), numeral(49)), 1))


@given(st.integers(0, 6), st.integers(0, 40))
def test_delta0_matches_naive_on_large_domain(b, n):
    phi = bounded_exists(0, numeral(b), Eq(Mul(Var(0), Var(0)), numeral(n)), 1)
    assert eval_delta0(phi) == naive_eval(phi, max(b, n) + 1)


def test_delta0_rejects_unbounded():
    with pytest.raises(Delta0Error):
        eval_delta0(parse_formula("forall v0. v0 = v0"))
    # a witness that occurs in the bound term is not the <= spelling
    bad = Exists(0, And(Exists(1, Eq(Add(Var(1), Var(0)), Var(1))), Eq(Var(0), Zero())))
    with pytest.raises(Delta0Error):
        eval_delta0(bad)


# oracles

def test_labeled_oracle():
    a, b = Eq(Zero(), Zero()), Eq(Zero(), Succ(Zero()))
    o = LabeledOracle({a: False})
    assert o(a) is False
    with pytest.raises(KeyError):
        o(b)
    assert LabeledOracle({}, default=True)(b)


def test_valuation_oracle():
    a, b = Eq(Zero(), Zero()), Exists(0, Eq(Var(0), Zero()))
    o = ValuationOracle({a: False, b: True})
    assert o(Or(a, b)) and not o(And(a, b)) and o(Not(a))
    with pytest.raises(KeyError):
        o(Eq(Zero(), Succ(Zero())))


def test_constant_and_bounded_oracles():
    assert ConstantOracle(False)(Eq(Zero(), Zero())) is False
    o = BoundedOracle(3)
    assert o.bound == 3
    assert o(PrProp(Or(Eq(Zero(), Zero()), Not(Eq(Zero(), Zero())))))


@given(sentences(max_leaves=5))
def test_tautologies_evaluate_true(phi):
    taut = Or(phi, Not(phi))
    assert brute_tautology(taut)
    assert eval_bounded(taut, EvalConfig(2))
