import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mlrscp.exceptions import NotMLRError, ValidationError
from mlrscp.generators import GeneratorConfig, gen_garbling, gen_mlr_dataset
from mlrscp.lehmann import BOTH, FIRST, INCOMPARABLE, SECOND, cdf, lehmann_compare, revealed_informedness_test
from mlrscp.mlr import NONE, check_dataset_mlr
from mlrscp.model import Dataset, UtilityMatrix

from conftest import SIGNALS, UNIFORM3


def garble(d, g):
    q = tuple(
        tuple(sum((row[j] * g[j][k] for j in range(len(g))), F(0)) for k in range(len(g[0])))
        for row in d.q
    )
    return Dataset(d.prior, q)


def revealing(n):
    return Dataset((F(1, n),) * n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def uninformative(n, m):
    return Dataset((F(1, n),) * n, ((F(1, m),) * m,) * n)


def uniformized_cdf(dist, x):
    """CDF of the distribution with signal j spread over [j, j+1]."""
    total = F(0)
    for j, p in enumerate(dist):
        total += p * min(max(x - j, 0), 1)
    return total


class TestCdf:
    def test_partial_sums(self):
        assert cdf((F(1, 4), F(1, 2), F(1, 4))) == (F(1, 4), F(3, 4), 1)

    def test_dirac_at_end(self):
        assert cdf((0, 0, 1)) == (0, 0, 1)

    def test_signal_row(self):
        assert cdf(SIGNALS[0]) == (F(2, 3), F(5, 6), 1)


class TestCompare:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_revealing_beats_uninformative(self, n):
        report = lehmann_compare(revealing(n), uninformative(n, 3))
        assert report.direction == FIRST
        assert report.reverse_witnesses

    def test_reflexive(self, strict3):
        assert lehmann_compare(strict3, strict3).direction == BOTH

    def test_adjacent_averaging_garbling(self, strict3):
        g = ((1, 0), (F(1, 2), F(1, 2)), (0, 1))
        assert lehmann_compare(strict3, garble(strict3, g)).direction == FIRST

    def test_requires_mlr(self, strict3):
        with pytest.raises(NotMLRError):
            lehmann_compare(strict3, Dataset(UNIFORM3, SIGNALS))

    def test_requires_same_states(self, strict3):
        with pytest.raises(ValidationError):
            lehmann_compare(strict3, revealing(2))
        other = Dataset((F(1, 2), F(1, 4), F(1, 4)), strict3.q)
        with pytest.raises(ValidationError):
            lehmann_compare(strict3, other)

    def test_transfer_is_monotone_and_matches_cdf_levels(self, strict3):
        d2 = garble(strict3, ((1, 0), (F(1, 2), F(1, 2)), (0, 1)))
        report = lehmann_compare(strict3, d2)
        for s, row in enumerate(report.transfer):
            assert all(a <= b for a, b in zip(row, row[1:]))
            for i, h in enumerate(row):
                assert uniformized_cdf(strict3.q[i], h) == cdf(d2.q[i])[s]


def _mlr_dataset(rng, n, prior):
    kind = rng.choice(["mlr-strict", "mlr-weak"])
    d = gen_mlr_dataset(GeneratorConfig(n, rng.randint(1, 4), rng.randrange(2**31), 6, kind))
    return Dataset(prior, d.q)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_transitive_on_random_triples(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    prior = (F(1, n),) * n
    a, b, c = (_mlr_dataset(rng, n, prior) for _ in range(3))
    up = (FIRST, BOTH)
    if lehmann_compare(a, b).direction in up and lehmann_compare(b, c).direction in up:
        assert lehmann_compare(a, c).direction in up


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_garbling_never_ranks_higher(seed):
    rng = random.Random(seed)
    n, m = rng.randint(2, 4), rng.randint(2, 5)
    d = gen_mlr_dataset(GeneratorConfig(n, m, seed, 12))
    d2 = garble(d, gen_garbling(rng, m, rng.randint(1, 5), 12))
    assert check_dataset_mlr(d2).verdict != NONE
    assert lehmann_compare(d, d2).direction != SECOND
    assert lehmann_compare(d, d2).direction != INCOMPARABLE


class TestRevealedInformedness:
    def test_identical_datasets_have_zero_margins(self, strict3):
        report = revealed_informedness_test(strict3, strict3, 10, 1)
        assert report.margins == (0,) * 10

    def test_revealing_strictly_better_for_supermodular_utility(self):
        u = UtilityMatrix(tuple(tuple(-(k - i) ** 2 for i in range(3)) for k in range(3)))
        report = revealed_informedness_test(revealing(3), uninformative(3, 3), 0, 0, utilities=[u])
        assert report.margins[0] > 0

    def test_constant_utility_margin_is_zero(self, strict3):
        d2 = garble(strict3, ((1, 0), (F(1, 2), F(1, 2)), (0, 1)))
        u = UtilityMatrix(((2, 2, 2), (2, 2, 2)))
        assert revealed_informedness_test(strict3, d2, 0, 0, utilities=[u]).margins == (0,)

    def test_garbling_pair_has_no_violations(self, strict3):
        d2 = garble(strict3, ((1, 0), (F(1, 2), F(1, 2)), (0, 1)))
        report = revealed_informedness_test(strict3, d2, 50, 11)
        assert report.samples == 50 and report.passed

    def test_precondition(self):
        with pytest.raises(ValidationError):
            revealed_informedness_test(uninformative(3, 2), revealing(3), 5, 0)
