import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import sentences
from truthlab.evaluation import BoundedOracle
from truthlab.grammar import parse_formula as F
from truthlab.overspill import outer_disjunction_tautologies, truth_atom
from truthlab.syntax import And, Eq, Not, Or, Succ, Zero, big_or, numeral
from truthlab.truthclass import (
    AMBIGUOUS, CHECKS, LabeledSentenceSet, ManifestError, anti_unify, check_compositional,
    check_dc, check_dcin, check_propsnd, check_regularity, dump_manifest, label_with,
    load_manifest, run_checks, sentence_closure,
)


def S(entries, bound=0):
    return LabeledSentenceSet({F(k) if isinstance(k, str) else k: v for k, v in entries.items()}, bound)


def test_keys_must_be_sentences():
    with pytest.raises(ValueError):
        S({"v0 = 0": True})
    with pytest.raises(ValueError):
        LabeledSentenceSet({F("0 = 0"): 1})


# compositional

def test_negation_violation():
    rep = check_compositional(S({"!0 = 0": True, "0 = 0": True}))
    assert [v.clause for v in rep.violations] == ["negation"]


def test_conjunction_clean():
    rep = check_compositional(S({"0 = 0": True, "S(0) = S(0)": True, "(0 = 0 & S(0) = S(0))": True}))
    assert rep.clean and not rep.inapplicable


def test_atomic_violation():
    rep = check_compositional(S({"0 = S(0)": True}))
    assert [v.clause for v in rep.violations] == ["atomic"]


def test_quantifier_clause_needs_every_instance():
    full = S({"forall v0. v0 = v0": True, "0 = 0": True, "S(0) = S(0)": True}, bound=1)
    assert check_compositional(full).clean and not check_compositional(full).inapplicable
    partial = S({"exists v0. v0 = S(0)": False, "0 = S(0)": False}, bound=1)
    rep = check_compositional(partial)
    assert rep.clean
    assert [i.missing for i in rep.inapplicable] == [(F("S(0) = S(0)"),)]
    wrong = S({"exists v0. v0 = S(0)": False, "0 = S(0)": False, "S(0) = S(0)": True}, bound=1)
    assert [v.clause for v in check_compositional(wrong).violations] == ["existential"]


# regularity

def test_regularity_violation():
    rep = check_regularity(S({"S(0) + 0 = S(0)": True, "0 + S(0) = S(0)": False}))
    assert len(rep.violations) == 1
    assert "(S(0) + 0) ~ (0 + S(0))" in rep.violations[0].note


def test_regularity_values_differ():
    assert check_regularity(S({"S(0) = S(0)": True, "S(S(0)) = S(S(0))": True})).clean


def test_regularity_single_key():
    assert check_regularity(S({"0 = 0": True})).clean


def test_regularity_under_binders():
    rep = check_regularity(S({
        "forall v0. v0 + S(0) * S(0) = S(v0)": True,
        "forall v0. v0 + S(0) = S(v0)": False,
    }))
    assert len(rep.violations) == 1


def test_anti_unify():
    assert anti_unify(F("0 + 0 = S(0)"), F("0 * 0 = S(0)")) == [(F("0 + 0 = S(0)").lhs, F("0 * 0 = S(0)").lhs)]
    assert anti_unify(F("forall v0. v0 = 0"), F("exists v0. v0 = 0")) is None
    assert anti_unify(F("forall v0. v0 = 0"), F("forall v1. v1 = 0")) is None
    assert anti_unify(F("forall v0. v0 = 0"), F("forall v0. S(0) = 0")) is AMBIGUOUS
    assert anti_unify(F("0 = 0"), F("0 = 0")) == []


def test_ambiguous_pairs_are_listed():
    rep = check_regularity(S({"forall v0. v0 = 0": False, "forall v0. S(0) = 0": False}))
    assert rep.clean and len(rep.ambiguous) == 1


# propsnd

def test_propsnd():
    taut = "(0 = S(0) | !0 = S(0))"
    assert not check_propsnd(S({taut: False})).clean
    assert check_propsnd(S({taut: True})).clean


def test_propsnd_on_outer_disjunction_tautologies():
    phis = [truth_atom(i, i % 2 == 0) for i in range(4)]
    first, second = outer_disjunction_tautologies(3, phis)
    labels = {s: True for s in [first, *second]}
    assert check_propsnd(LabeledSentenceSet(labels)).clean
    for s in labels:
        assert not check_propsnd(LabeledSentenceSet({**labels, s: False})).clean


# disjunctive correctness

A, B, C = (truth_atom(i, False) for i in range(3))


def test_dc_and_dcin_both_flag():
    s = LabeledSentenceSet({big_or([A, B]): True, A: False, B: False})
    assert not check_dc(s).clean and not check_dcin(s).clean


def test_dcin_is_one_directional():
    s = LabeledSentenceSet({big_or([A, B]): False, A: True, B: False})
    assert not check_dc(s).clean and check_dcin(s).clean


def test_all_false_disjunction_is_clean():
    s = LabeledSentenceSet({big_or([A, B]): False, A: False, B: False})
    assert check_dc(s).clean and check_dcin(s).clean


def test_dc_reads_every_left_spine():
    # (A | B) is absent, so only the length-3 reading applies
    s = LabeledSentenceSet({big_or([A, B, C]): True, A: False, B: False, C: False})
    rep = check_dc(s)
    assert [v.clause for v in rep.violations] == ["length 3"]
    missing = LabeledSentenceSet({big_or([A, B, C]): True, A: False})
    assert check_dc(missing).clean and len(check_dc(missing).inapplicable) == 1


# properties

def _closure_labeled(phis, bound):
    return label_with(BoundedOracle(bound), sentence_closure(phis, bound), bound)


@settings(max_examples=60, deadline=None)
@given(st.lists(sentences(max_leaves=4), min_size=1, max_size=3), st.integers(1, 2))
def test_evaluator_labeling_is_clean(phis, bound):
    s = _closure_labeled(phis, bound)
    for name, rep in run_checks(s).items():
        assert rep.clean, (name, [v.to_json() for v in rep.violations])
    assert not check_compositional(s).inapplicable or any(
        i.reason == "oracle atom" for i in check_compositional(s).inapplicable)


def _random_labeling(seed, n=25):
    rng = random.Random(seed)
    base = [truth_atom(i, rng.random() < 0.5) for i in range(4)]
    pool = list(base)
    for _ in range(n):
        match rng.randrange(3):
            case 0:
                pool.append(Not(rng.choice(pool)))
            case 1:
                pool.append(And(rng.choice(pool), rng.choice(pool)))
            case _:
                pool.append(Or(rng.choice(pool), rng.choice(pool)))
    pool.append(Eq(numeral(1), Succ(Zero())))
    return LabeledSentenceSet({p: rng.random() < 0.5 for p in pool}), rng


def _keys(rep):
    return {tuple(f for f, _ in v.witness) for v in rep.violations}


@pytest.mark.parametrize("seed", range(30))
def test_removing_entries_never_adds_violations(seed):
    s, rng = _random_labeling(seed)
    drop = rng.sample(list(s.entries), k=len(s) // 3)
    smaller = s.without(drop)
    for name, check in CHECKS.items():
        assert _keys(check(smaller)) <= _keys(check(s)), name


@pytest.mark.parametrize("seed", range(30))
def test_witnesses_recheck_in_isolation(seed):
    s, _ = _random_labeling(seed)
    for name, check in CHECKS.items():
        for v in check(s).violations:
            alone = LabeledSentenceSet(dict(v.witness), s.numeral_bound)
            assert not check(alone).clean, (name, v)


# manifests

def test_manifest_round_trip(tmp_path):
    s = S({"0 = 0": True, "forall v0. v0 = v0": True, "!0 = S(0)": True}, bound=2)
    path = tmp_path / "m.json"
    path.write_text(json.dumps(dump_manifest(s)))
    back = load_manifest(path)
    assert back == s


@pytest.mark.parametrize("data", [
    [], {"entries": [{"formula": "0 ="}]}, {"entries": [{"formula": "0 = 0", "value": 1}]},
    {"entries": [{"formula": "v0 = 0", "value": True}]}, {"numeral_bound": -1, "entries": []},
    {"entries": [{"formula": "0 = 0", "value": True}, {"formula": "0 = 0", "value": False}]},
])
def test_bad_manifests(data):
    with pytest.raises(ManifestError):
        load_manifest(data)


def test_manifest_not_json(tmp_path):
    path = tmp_path / "m.json"
    path.write_text("{not json")
    with pytest.raises(ManifestError):
        load_manifest(path)


def test_unknown_check():
    with pytest.raises(ValueError):
        run_checks(S({"0 = 0": True}), ["nope"])
