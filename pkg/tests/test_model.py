import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mlrscp.exceptions import DimensionError, ValidationError
from mlrscp.model import (
    ChoiceRule,
    Dataset,
    InformationStructure,
    UtilityMatrix,
    best_responses,
    check_single_crossing,
    expected_utility,
    posteriors_from_signals,
    simulate,
)

from conftest import POSTERIORS, SIGNALS, UNIFORM3


def test_dataset_rejects_bad_inputs():
    with pytest.raises(ValidationError):
        Dataset((F(1, 2), F(1, 2)), ((F(1, 2), F(1, 3)), (1, 0)))
    with pytest.raises(ValidationError):
        Dataset((0, 1), ((1, 0), (0, 1)))
    with pytest.raises(DimensionError):
        Dataset((F(1, 2), F(1, 2)), ((1, 0),))


def test_dataset_warns_when_fewer_actions_than_states():
    with pytest.warns(UserWarning, match="fewer actions"):
        d = Dataset(UNIFORM3, ((1,),) * 3)
    assert d.n_actions == 1


def test_decimal_strings_are_exact():
    d = Dataset(("0.5", "0.5"), (("0.25", "0.75"), (0.1, 0.9)))
    assert d.q[0] == (F(1, 4), F(3, 4))
    assert d.q[1] == (F(1, 10), F(9, 10))


class TestExpectedUtility:
    def test_low_signal_posterior(self, three_state_u):
        assert expected_utility(three_state_u, POSTERIORS[0], 0) == F(37, 13)

    def test_middle_posterior(self, three_state_u):
        # -1*2/10 + 5*6/10 - 1*2/10
        assert expected_utility(three_state_u, POSTERIORS[1], 1) == F(13, 5)

    def test_dirac_belief_reads_off_entry(self, three_state_u):
        for k, i in itertools.product(range(3), range(3)):
            dirac = [int(j == i) for j in range(3)]
            assert expected_utility(three_state_u, dirac, k) == three_state_u.values[k][i]

    def test_dimension_mismatch(self, three_state_u):
        with pytest.raises(DimensionError):
            expected_utility(three_state_u, (F(1, 2), F(1, 2)), 0)


class TestBestResponses:
    def test_each_signal_has_its_own_action(self, three_state_u):
        assert [best_responses(three_state_u, g) for g in POSTERIORS] == [{0}, {1}, {2}]

    def test_constant_utility_makes_everything_optimal(self):
        u = UtilityMatrix(((1, 1), (1, 1), (1, 1)))
        assert best_responses(u, (F(1, 3), F(2, 3))) == {0, 1, 2}

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10**6))
    def test_invariant_to_positive_affine_state_shifts(self, seed):
        rng = random.Random(seed)
        n, m = rng.randint(1, 4), rng.randint(1, 4)
        u = UtilityMatrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)])
        alpha = F(rng.randint(1, 5), rng.randint(1, 5))
        beta = [F(rng.randint(-5, 5)) for _ in range(n)]
        v = UtilityMatrix([[alpha * x + b for x, b in zip(row, beta)] for row in u.values])
        w = [rng.randint(0, 3) for _ in range(n)]
        if not sum(w):
            w[0] = 1
        gamma = [F(x, sum(w)) for x in w]
        assert best_responses(u, gamma) == best_responses(v, gamma)


class TestSimulate:
    def test_signal_fixture_round_trip(self, three_state_u, signal_info):
        choice = ChoiceRule.dirac([0, 1, 2], 3)
        d = simulate(three_state_u, signal_info, choice)
        assert d.q == SIGNALS

    def test_single_posterior(self):
        info = InformationStructure(((F(1, 2), F(1, 2)),), ((1,), (1,)), (F(1, 2), F(1, 2)))
        d = simulate(None, info, ChoiceRule.dirac([0], 2))
        assert d.q == ((1, 0), (1, 0))

    def test_uniform_choice_gives_uniform_rows(self, signal_info):
        choice = ChoiceRule(((F(1, 3),) * 3,) * 3)
        d = simulate(None, signal_info, choice)
        assert all(row == (F(1, 3),) * 3 for row in d.q)

    def test_shape_mismatch(self, signal_info):
        with pytest.raises(DimensionError):
            simulate(None, signal_info, ChoiceRule.dirac([0, 1], 3))


class TestPosteriorsFromSignals:
    def test_signal_fixture(self, signal_info):
        assert signal_info.posteriors == POSTERIORS
        assert signal_info.marginals == (F(13, 36), F(10, 36), F(13, 36))
        assert signal_info.is_bayes_consistent()

    def test_fully_revealing(self):
        prior = (F(1, 5), F(3, 10), F(1, 2))
        info = posteriors_from_signals(((1, 0, 0), (0, 1, 0), (0, 0, 1)), prior)
        assert info.posteriors == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
        assert info.marginals == prior

    def test_duplicate_signals_are_merged(self):
        signals = ((F(1, 4), F(1, 4), F(1, 2)), (F(1, 8), F(1, 8), F(3, 4)))
        info = posteriors_from_signals(signals, (F(1, 2), F(1, 2)))
        assert info.n_posteriors == 2
        assert info.pi == ((F(1, 2), F(1, 2)), (F(1, 4), F(3, 4)))

    def test_zero_mass_signals_dropped(self):
        info = posteriors_from_signals(((1, 0), (1, 0)), (F(1, 2), F(1, 2)))
        assert info.n_posteriors == 1

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.lists(st.integers(0, 4), min_size=3, max_size=3), min_size=2, max_size=4))
    def test_bayes_plausibility_holds_exactly(self, weights):
        signals = []
        for row in weights:
            row = list(row)
            if not sum(row):
                row[0] = 1
            signals.append([F(x, sum(row)) for x in row])
        prior = [F(1, len(signals))] * len(signals)
        info = posteriors_from_signals(signals, prior)
        assert info.is_bayes_consistent()
        assert sum(info.marginals) == 1
        mixed = [sum(info.marginals[b] * info.posteriors[b][i] for b in range(info.n_posteriors))
                 for i in range(len(prior))]
        assert mixed == prior


class TestSingleCrossing:
    def test_three_state_utility_has_two_violations(self, three_state_u):
        report = check_single_crossing(three_state_u)
        assert not report.passed
        assert set(report.violations) == {(1, 2, 0, 1), (0, 1, 1, 2)}

    def test_single_crossing_utility_passes(self, scp_u):
        assert check_single_crossing(scp_u).passed

    def test_degenerate_shapes_pass(self):
        assert check_single_crossing(UtilityMatrix(((1, -2, 3),))).passed
        assert check_single_crossing(UtilityMatrix(((1,), (5,), (-2,)))).passed

    def test_matches_brute_force_on_all_small_matrices(self):
        def brute(vals):
            for a1, a2 in itertools.product(range(3), repeat=2):
                for t1, t2 in itertools.product(range(3), repeat=2):
                    if a2 > a1 and t2 > t1:
                        d1 = vals[a2][t1] - vals[a1][t1]
                        d2 = vals[a2][t2] - vals[a1][t2]
                        if (d1 >= 0 and not d2 >= 0) or (d1 > 0 and not d2 > 0):
                            return False
            return True

        for flat in itertools.product((-1, 0, 1), repeat=9):
            vals = (flat[0:3], flat[3:6], flat[6:9])
            assert check_single_crossing(UtilityMatrix(vals)).passed == brute(vals)
