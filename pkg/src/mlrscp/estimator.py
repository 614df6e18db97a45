"""scikit-learn style wrapper around :func:`~mlrscp.rationalizer.rationalize`."""
from __future__ import annotations

from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import as_matrix, as_vector
from .mlr import check_dataset_mlr
from .model import Dataset, best_responses
from .rationalizer import rationalize
from .verifier import verify


class SingleCrossingRationalizer(BaseEstimator):
    """Fit a single-crossing Bayesian rationalization to a choice matrix.

    ``X`` is the ``n_states x n_actions`` matrix of state-conditional choice
    frequencies. Entries may be Fractions, ints, rational strings or floats
    (floats are read through their shortest decimal repr).

    Parameters
    ----------
    prior : sequence, optional
        Prior over states; uniform when omitted.
    """

    def __init__(self, prior=None):
        self.prior = prior

    def fit(self, X, y=None):
        q = as_matrix(X)
        n = len(q)
        prior = as_vector(self.prior) if self.prior is not None else (Fraction(1, n),) * n
        self.dataset_ = Dataset(prior, q)
        self.mlr_report_ = check_dataset_mlr(self.dataset_)
        self.rationalization_ = rationalize(self.dataset_)
        self.verification_ = verify(self.dataset_, self.rationalization_)
        self.utility_ = self.rationalization_.utility.values
        self.posteriors_ = self.rationalization_.info.posteriors
        self.n_states_in_ = n
        self.n_actions_ = self.dataset_.n_actions
        return self

    def predict(self, X):
        """Largest optimal action under the fitted utility for each belief row of ``X``."""
        check_is_fitted(self, "rationalization_")
        beliefs = as_matrix(X, n_cols=self.n_states_in_)
        u = self.rationalization_.utility
        return np.array([max(best_responses(u, g)) for g in beliefs], dtype=int)

    def expected_utilities(self, X):
        """Exact expected utility of every action at each belief row of ``X``."""
        check_is_fitted(self, "rationalization_")
        beliefs = as_matrix(X, n_cols=self.n_states_in_)
        rows = self.rationalization_.utility.values
        out = np.empty((len(beliefs), len(rows)), dtype=object)
        for i, g in enumerate(beliefs):
            for k, r in enumerate(rows):
                out[i, k] = sum((a * b for a, b in zip(g, r)), Fraction(0))
        return out
