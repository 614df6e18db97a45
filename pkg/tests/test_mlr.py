import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mlrscp.exceptions import DimensionError, ValidationError
from mlrscp.mlr import NONE, STRICT, WEAK, check_dataset_mlr, check_mlr, mlr_dominates
from mlrscp.model import Dataset

from conftest import SIGNALS, STRICT3


class TestCheckMlr:
    def test_three_signal_rows_fail(self):
        report = check_mlr(SIGNALS)
        assert report.verdict == NONE
        assert (0, 1, 1, 2, F(1, 24), F(1, 12)) in report.violations
        assert not report.passed

    def test_identity_is_weak(self):
        report = check_mlr(((1, 0, 0), (0, 1, 0), (0, 0, 1)))
        assert report.verdict == WEAK
        assert report.ties and not report.violations

    def test_strict_example(self):
        assert check_mlr(STRICT3).verdict == STRICT

    def test_negative_entry_rejected(self):
        with pytest.raises(ValidationError):
            check_mlr(((1, -1), (0, 1)))

    def test_verdict_matches_lists(self):
        for rows in (SIGNALS, STRICT3, ((1, 0), (1, 0))):
            r = check_mlr(rows)
            assert (r.verdict == NONE) == bool(r.violations)
            assert (r.verdict == STRICT) == (not r.violations and not r.ties)

    def test_strict_flag(self):
        r = check_mlr(((1, 0, 0), (0, 1, 0), (0, 0, 1)), require_strict=True)
        assert not r.passed


class TestDatasetMlr:
    half = (F(1, 2), F(1, 2))

    def test_binary_criterion(self):
        assert check_dataset_mlr(Dataset(self.half, ((F(3, 4), F(1, 4)), (F(1, 4), F(3, 4))))).verdict == STRICT
        assert check_dataset_mlr(Dataset(self.half, ((F(1, 4), F(3, 4)), (F(3, 4), F(1, 4))))).verdict == NONE

    def test_equal_rows_weak(self):
        assert check_dataset_mlr(Dataset(self.half, ((F(1, 3), F(2, 3)),) * 2)).verdict == WEAK


class TestDominance:
    def test_reflexive(self):
        assert mlr_dominates(SIGNALS[1], SIGNALS[1]) == WEAK

    def test_high_row_dominates_low_row(self):
        assert mlr_dominates(SIGNALS[2], SIGNALS[0]) == STRICT

    def test_middle_row_does_not_dominate(self):
        assert mlr_dominates(SIGNALS[1], SIGNALS[0]) == NONE

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            mlr_dominates((1, 0), (F(1, 3),) * 3)


def _positive_rows(rng, n_rows, n_cols):
    return [[F(rng.randint(1, 9)) for _ in range(n_cols)] for _ in range(n_rows)]


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_cross_product_matches_ratio_form_on_positive_rows(seed):
    rng = random.Random(seed)
    rows = _positive_rows(rng, 2, rng.randint(2, 4))
    ratios = [b / a for a, b in zip(*rows)]
    nondecreasing = all(x <= y for x, y in zip(ratios, ratios[1:]))
    increasing = all(x < y for x, y in zip(ratios, ratios[1:]))
    verdict = check_mlr(rows).verdict
    assert (verdict != NONE) == nondecreasing
    assert (verdict == STRICT) == increasing


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_weak_verdict_is_transitive_on_positive_rows(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    # build rows 1 <= 2 <= 3 often enough by tilting
    r1 = [F(rng.randint(1, 9)) for _ in range(n)]
    tilt = lambda: sorted(F(rng.randint(1, 5)) for _ in range(n)) if rng.random() < 0.8 else [F(rng.randint(1, 5)) for _ in range(n)]
    r2 = [a * t for a, t in zip(r1, tilt())]
    r3 = [a * t for a, t in zip(r2, tilt())]
    if check_mlr([r1, r2]).verdict != NONE and check_mlr([r2, r3]).verdict != NONE:
        assert check_mlr([r1, r3]).verdict != NONE
