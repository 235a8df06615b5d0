import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import bdd_rank, brute_tautology, naive_eval, prop_value
from truthlab._node import dag_size
from truthlab.evaluation import BoundedOracle, EvalConfig, ValuationOracle, eval_bounded, eval_delta0
from truthlab.overspill import (
    OMEGA, Finite, NotFound, ResourceLimitError, StoppingSpec, build_alpha, build_beta,
    build_gamma_sequence, build_psi_sequence, check_outer_disjunction, check_psi_sequence,
    distinctness_sentence, find_max_rank_index, numeral_distinctness, outer_disjunction_D,
    outer_disjunction_tautologies, rank, stopping_disjunction, truth_atom,
)
from truthlab.prop import is_tautology, proves_prop
from truthlab.syntax import (
    And, Eq, Exists, Not, Or, PrProp, Var, Zero, big_and, implies, numeral, spine,
)


def atoms(n, start=0):
    return [Eq(numeral(i), Zero()) for i in range(start, start + n)]


ranks = st.one_of(st.integers(0, 20).map(Finite), st.just(OMEGA))


@given(ranks, ranks)
def test_rank_order(a, b):
    if not a.is_omega and not b.is_omega:
        assert (a < b) == (a.k < b.k)
    assert a <= OMEGA
    assert (a == b) == (a <= b <= a)


def test_rank_values():
    assert Finite(3) == Finite(3) and Finite(2) < Finite(3) < OMEGA
    assert str(OMEGA) == "omega" and str(Finite(4)) == "4"
    with pytest.raises(ValueError):
        Finite(-1)


def test_find_max_rank_index():
    assert find_max_rank_index([Finite(1), Finite(2), OMEGA]) == 2
    assert find_max_rank_index([Finite(0), Finite(0), Finite(0)]) == NotFound("progress", 0)
    assert find_max_rank_index([Finite(0), Finite(3)]) == NotFound("no-omega")
    assert find_max_rank_index([OMEGA, Finite(0)]) == 0
    assert find_max_rank_index([Finite(5), OMEGA, OMEGA]) == 1
    with pytest.raises(ValueError):
        find_max_rank_index([])


# stopping disjunctions

def test_stopping_spec_lengths():
    with pytest.raises(ValueError):
        StoppingSpec(atoms(2), atoms(3), 1)


def test_single_stage():
    a, b = atoms(2)
    phi = stopping_disjunction(StoppingSpec([a], [b], 0))
    assert phi is And(a, b)


def test_second_guard_selects_second_payload():
    alphas, betas = atoms(3), atoms(3, start=3)
    phi = stopping_disjunction(StoppingSpec(alphas, betas, 2))
    facts = [Not(alphas[0]), alphas[1], Not(alphas[2])]
    assert proves_prop(facts, implies(phi, betas[1]))
    assert proves_prop(facts, implies(betas[1], phi))


def test_no_guard_means_false():
    alphas, betas = atoms(3), atoms(3, start=3)
    phi = stopping_disjunction(StoppingSpec(alphas, betas, 2))
    assert proves_prop([Not(a) for a in alphas], Not(phi))


@pytest.mark.parametrize("c", range(4))
def test_stopping_contract_exhaustive(c):
    alphas, betas = atoms(c + 1), atoms(c + 1, start=c + 1)
    phi = stopping_disjunction(StoppingSpec(alphas, betas, c))
    pool = alphas + betas
    for bits in itertools.product([False, True], repeat=len(pool)):
        v = dict(zip(pool, bits))
        k = next((i for i, a in enumerate(alphas) if v[a]), None)
        assert prop_value(phi, v) == (False if k is None else v[betas[k]])


def test_stopping_size_is_linear():
    sizes = [dag_size(stopping_disjunction(StoppingSpec(atoms(c + 1), atoms(c + 1, 20), c)))
             for c in range(1, 8)]
    steps = {b - a for a, b in itertools.pairwise(sizes)}
    assert len(steps) == 1


# alpha, beta, gamma

def test_beta():
    phis = atoms(4)
    assert build_beta(0, phis) is phis[0]
    assert build_beta(2, phis) is And(And(phis[0], phis[1]), phis[2])
    assert len(spine(build_beta(3, phis), And, 4)) == 4
    with pytest.raises(IndexError):
        build_beta(4, phis)


def test_alpha():
    phis = [Eq(Zero(), Zero()), Eq(numeral(1), numeral(1))]
    alpha = build_alpha(phis[0], 0, phis)
    assert alpha is Not(And(phis[0], PrProp(implies(phis[0], phis[0]))))
    oracle = BoundedOracle(2)
    assert oracle(alpha) is (not oracle(phis[0]))
    # psi unrelated to phi_0: the atom is false and alpha holds whatever psi is
    psi = Eq(numeral(5), numeral(5))
    assert oracle(psi) and oracle(build_alpha(psi, 0, phis))


def test_gamma_unfolding():
    phis = atoms(3)
    gammas = build_gamma_sequence(phis, 2, 1)
    alphas = [build_alpha(phis[0], j, phis) for j in range(3)]
    betas = [build_beta(j, phis) for j in range(3)]
    assert gammas == [phis[0], stopping_disjunction(StoppingSpec(alphas, betas, 2))]


def test_gamma_with_identical_phis():
    # phi_0 already entails every prefix, so gamma_0 has rank omega; then no
    # guard of gamma_1 fires and the chain's default makes gamma_1 false
    phi = Eq(Zero(), Zero())
    oracle = BoundedOracle(1)
    gammas = build_gamma_sequence([phi] * 4, 3, 1)
    ranks = [rank(g, [phi] * 4, oracle) for g in gammas]
    assert ranks == [OMEGA, Finite(0)]
    assert find_max_rank_index(ranks) == 0


def test_gamma_growth_and_cap():
    phis = [distinctness_sentence(i + 1) for i in range(5)]
    gammas = build_gamma_sequence(phis, 4, 5)
    sizes = [dag_size(g) for g in gammas]
    assert sizes == sorted(sizes) and sizes[-1] < 1000
    with pytest.raises(ResourceLimitError):
        build_gamma_sequence(phis, 4, 5, max_nodes=200)
    with pytest.raises(ValueError):
        build_gamma_sequence(phis, 5, 1)


def test_rank_examples():
    phis = atoms(5)
    truthy = ValuationOracle({p: True for p in phis})
    assert rank(phis[0], phis, ValuationOracle({phis[0]: False})) == Finite(0)
    assert rank(big_and(phis[:3]), phis, truthy) == Finite(3)
    assert rank(big_and(phis), phis, truthy) is OMEGA
    assert rank(Or(phis[0], phis[1]), phis, truthy) == Finite(0)


@pytest.mark.parametrize("c", range(1, 5))
def test_gamma_ranks_agree_with_bdd(c):
    phis = [distinctness_sentence(i + 1) for i in range(c + 1)]
    oracle = BoundedOracle(c)
    for g in build_gamma_sequence(phis, c, c + 1):
        r = rank(g, phis, oracle)
        expected = bdd_rank(g, phis, oracle)
        assert (r.is_omega and expected == "omega") or r == Finite(expected)


def test_gamma_rank_stalls():
    # One step of the gamma construction does not raise the rank: gamma_1 is
    # propositionally satisfiable with phi_0 true and phi_1 false, by making
    # alpha_0 true through a false PrProp atom. See the decisions ledger.
    phis = [truth_atom(0, True), truth_atom(1, True)]
    oracle = BoundedOracle(1)
    g0, g1 = build_gamma_sequence(phis, 1, 1)
    a0 = build_alpha(g0, 0, phis)
    valuation = {phis[0]: True, phis[1]: False, a0.body.right: False,
                 build_alpha(g0, 1, phis).body.right: False}
    assert prop_value(g1, valuation) and not prop_value(big_and(phis), valuation)
    assert not proves_prop([g1], big_and(phis))
    assert rank(g0, phis, oracle) == rank(g1, phis, oracle) == Finite(1)


# outer disjunction

def test_outer_disjunction_shape():
    phis = atoms(2)
    d = outer_disjunction_D(phis)
    assert d.is_sentence
    x = d.var
    assert x == 0 and isinstance(d.body.left, Exists)
    assert d.body.left.var == 1 and d.body.left.body.lhs.right is Var(x)
    inner = Exists(3, Eq(Var(3), Var(3)))
    assert outer_disjunction_D([inner]).var == 4


def test_outer_disjunction_single():
    for value in (False, True):
        phi = truth_atom(0, value)
        assert eval_bounded(outer_disjunction_D([phi]), EvalConfig(1)) is value


def test_outer_disjunction_two():
    for v0, v1 in itertools.product([False, True], repeat=2):
        d = outer_disjunction_D([truth_atom(0, v0), truth_atom(1, v1)])
        assert eval_bounded(d, EvalConfig(2)) is (v0 or v1)


@pytest.mark.parametrize("b", range(4))
def test_outer_disjunction_clauses(b):
    for bits in itertools.product([False, True], repeat=b + 2):
        phis = [truth_atom(i, v) for i, v in enumerate(bits[:-1])]
        psi = truth_atom(b + 1, bits[-1])
        assert check_outer_disjunction(phis, psi, BoundedOracle(b + 2)).ok


def test_outer_disjunction_against_naive_eval():
    phis = [truth_atom(0, False), truth_atom(1, True), truth_atom(2, False)]
    d = outer_disjunction_D(phis)
    assert naive_eval(d, 3) is True
    assert naive_eval(outer_disjunction_D([phis[0], phis[2]]), 3) is False


def test_outer_disjunction_tautologies():
    for b in range(5):
        phis = atoms(b + 1, start=10)
        first, second = outer_disjunction_tautologies(b, phis)
        assert brute_tautology(first) or b > 3
        assert is_tautology(first) and all(is_tautology(s) for s in second)
    with pytest.raises(ValueError):
        outer_disjunction_tautologies(2, atoms(2))


def test_numeral_distinctness():
    first, second = numeral_distinctness(0)
    assert first is Not(Eq(Zero(), numeral(1)))
    assert second is Eq(Zero(), Zero())
    for b in range(1, 21):
        first, second = numeral_distinctness(b)
        assert len(spine(first, And)) == b + 1
        assert len(spine(second, And)) == b * (b + 1)
        assert eval_delta0(first) and eval_delta0(second)


def test_distinctness_sentence():
    assert distinctness_sentence(1) is Exists(1, Eq(Var(1), Var(1)))
    phi = distinctness_sentence(4)
    body = phi.body.body.body.body
    assert len(spine(body, And)) == 12
    with pytest.raises(ValueError):
        distinctness_sentence(0)


def test_truth_atoms():
    for i in range(6):
        assert eval_bounded(truth_atom(i, True), EvalConfig(1))
        assert not eval_bounded(truth_atom(i, False), EvalConfig(1))
    assert len({truth_atom(i, v) for i in range(5) for v in (False, True)}) == 10


# psi-sequence

def test_psi_structure():
    phis = atoms(3)
    psis = build_psi_sequence(phis)
    assert psis[0] is phis[0]
    assert psis[1] is Or(Not(Not(phis[1])), outer_disjunction_D([Not(phis[0])]))


def test_psi_all_true():
    phis = [truth_atom(i, True) for i in range(5)]
    report = check_psi_sequence(phis, BoundedOracle(4))
    assert report.ok and report.hypotheses_hold and report.conclusion_holds
    assert all(s.psi and s.phi for s in report.steps)


def test_psi_broken_progress_is_pinpointed():
    phis = [truth_atom(i, i != 2) for i in range(5)]
    report = check_psi_sequence(phis, BoundedOracle(4))
    assert not report.hypotheses_hold and report.ok
    assert "progress" in report.violated_hypothesis
    assert report.failing_step.startswith("T !D<!psi_j>_(j<=1) and T !phi_2 hold")


def test_psi_false_base():
    phis = [truth_atom(0, False), truth_atom(1, True)]
    report = check_psi_sequence(phis, BoundedOracle(2))
    assert report.violated_hypothesis.startswith("base")
    assert report.failing_step.startswith("T psi_0 fails")
