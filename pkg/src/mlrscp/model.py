"""Domain types and the forward model of a Bayesian decision maker.

States and actions are identified with their rank: index ``i`` is the
``i``-th lowest state, index ``k`` the ``k``-th lowest action. All numbers are
:class:`fractions.Fraction`, so every comparison below is exact.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Sequence

from ._validation import (
    as_matrix,
    as_vector,
    check_distribution,
    check_length,
    check_row_stochastic,
    dot,
)
from .exceptions import DimensionError, ValidationError

_ZERO = Fraction(0)


def _default_labels(prefix, n):
    return tuple(f"{prefix}{i + 1}" for i in range(n))


@dataclass(frozen=True)
class Dataset:
    """State-conditional choice frequencies ``q[i][j] = q(a_j | theta_i)``."""

    prior: tuple
    q: tuple
    states: tuple = ()
    actions: tuple = ()

    def __post_init__(self):
        prior = as_vector(self.prior)
        q = as_matrix(self.q)
        if not prior:
            raise ValidationError("a dataset needs at least one state")
        check_length(q, len(prior), "q (rows)")
        if not q[0]:
            raise ValidationError("a dataset needs at least one action")
        if any(p <= 0 for p in prior):
            raise ValidationError("every prior entry must be strictly positive")
        check_distribution(prior, "prior")
        check_row_stochastic(q, "q")
        states = tuple(self.states) or _default_labels("theta", len(prior))
        actions = tuple(self.actions) or _default_labels("a", len(q[0]))
        check_length(states, len(prior), "states")
        check_length(actions, len(q[0]), "actions")
        if len(actions) < len(states):
            warnings.warn(
                f"fewer actions ({len(actions)}) than states ({len(states)})", stacklevel=3
            )
        object.__setattr__(self, "prior", prior)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "actions", actions)

    @property
    def n_states(self) -> int:
        return len(self.prior)

    @property
    def n_actions(self) -> int:
        return len(self.actions)

    def column(self, j: int) -> tuple:
        """``q(a_j | .)`` across states."""
        return tuple(row[j] for row in self.q)

    def action_marginals(self) -> tuple:
        """Unconditional action frequencies ``sum_i prior_i q[i][j]``."""
        return tuple(dot(self.prior, self.column(j)) for j in range(self.n_actions))


@dataclass(frozen=True)
class UtilityMatrix:
    """``values[k][i] = u(a_k, theta_i)``."""

    values: tuple

    def __post_init__(self):
        values = as_matrix(self.values)
        if not values or not values[0]:
            raise DimensionError("utility matrix must be at least 1x1")
        object.__setattr__(self, "values", values)

    @property
    def n_actions(self) -> int:
        return len(self.values)

    @property
    def n_states(self) -> int:
        return len(self.values[0])


@dataclass(frozen=True)
class InformationStructure:
    """Distribution over posteriors: ``pi[i][b]`` is the chance of ``posteriors[b]`` in state ``i``."""

    posteriors: tuple
    pi: tuple
    prior: tuple
    marginals: tuple = field(init=False)

    def __post_init__(self):
        prior = as_vector(self.prior)
        posteriors = as_matrix(self.posteriors, n_cols=len(prior))
        pi = as_matrix(self.pi, n_cols=len(posteriors))
        check_length(pi, len(prior), "pi (rows)")
        check_distribution(prior, "prior")
        for b, g in enumerate(posteriors):
            check_distribution(g, f"posterior {b}")
        check_row_stochastic(pi, "pi")
        object.__setattr__(self, "prior", prior)
        object.__setattr__(self, "posteriors", posteriors)
        object.__setattr__(self, "pi", pi)
        marginals = tuple(
            dot(prior, [row[b] for row in pi]) for b in range(len(posteriors))
        )
        object.__setattr__(self, "marginals", marginals)

    @property
    def n_posteriors(self) -> int:
        return len(self.posteriors)

    def bayes_update(self, b: int) -> tuple | None:
        """Posterior implied by the prior and column ``b`` of ``pi`` (``None`` if never drawn)."""
        if self.marginals[b] == 0:
            return None
        return tuple(p * row[b] / self.marginals[b] for p, row in zip(self.prior, self.pi))

    def is_bayes_consistent(self) -> bool:
        return all(
            self.bayes_update(b) in (None, self.posteriors[b]) for b in range(self.n_posteriors)
        )


@dataclass(frozen=True)
class ChoiceRule:
    """``c[b][j] = C(a_j | posterior b)``."""

    c: tuple

    def __post_init__(self):
        c = as_matrix(self.c)
        check_row_stochastic(c, "choice rule")
        object.__setattr__(self, "c", c)

    def support(self, b: int) -> frozenset:
        return frozenset(j for j, v in enumerate(self.c[b]) if v > 0)

    @classmethod
    def dirac(cls, actions: Sequence[int], n_actions: int) -> "ChoiceRule":
        """Deterministic rule choosing ``actions[b]`` at posterior ``b``."""
        return cls(tuple(tuple(Fraction(int(j == a)) for j in range(n_actions)) for a in actions))


@dataclass(frozen=True)
class Rationalization:
    utility: UtilityMatrix
    info: InformationStructure
    choice: ChoiceRule
    method: str = "external"
    strict: bool = True


def _check_posterior(u: UtilityMatrix, gamma) -> tuple:
    gamma = as_vector(gamma)
    check_length(gamma, u.n_states, "posterior")
    if sum(gamma) != 1:
        raise ValidationError("posterior does not sum to 1")
    return gamma


def expected_utility(u: UtilityMatrix, gamma, a: int) -> Fraction:
    """``sum_i gamma_i u(a, theta_i)``."""
    gamma = _check_posterior(u, gamma)
    if not 0 <= a < u.n_actions:
        raise DimensionError(f"action index {a} out of range")
    return dot(gamma, u.values[a])


def best_responses(u: UtilityMatrix, gamma) -> frozenset:
    """Exact argmax set of expected utility at belief ``gamma``."""
    gamma = _check_posterior(u, gamma)
    values = [dot(gamma, row) for row in u.values]
    top = max(values)
    return frozenset(k for k, v in enumerate(values) if v == top)


def simulate(u: UtilityMatrix | None, info: InformationStructure, choice: ChoiceRule,
             states=(), actions=()) -> Dataset:
    """Choice data induced by a decision maker: ``q(a|theta) = sum_b pi(b|theta) C(a|b)``.

    ``u`` only participates in the dimension checks; optimality of ``choice``
    is the verifier's business.
    """
    if len(choice.c) != info.n_posteriors:
        raise DimensionError(
            f"choice rule has {len(choice.c)} rows for {info.n_posteriors} posteriors"
        )
    m = len(choice.c[0]) if choice.c else 0
    if u is not None and (u.n_actions != m or u.n_states != len(info.prior)):
        raise DimensionError("utility shape does not match the choice rule and states")
    q = tuple(
        tuple(sum((row[b] * choice.c[b][j] for b in range(info.n_posteriors)), _ZERO) for j in range(m))
        for row in info.pi
    )
    return Dataset(info.prior, q, states, actions)


def posteriors_from_signals(signals, prior) -> InformationStructure:
    """Distribution over posteriors generated by the signal law ``signals[i][s] = mu(s | theta_i)``.

    Signals that never occur are dropped and signals inducing the same
    posterior are merged with their probabilities added; posteriors keep the
    order of the first signal producing them.
    """
    prior = as_vector(prior)
    signals = as_matrix(signals)
    check_length(signals, len(prior), "signal matrix (rows)")
    check_distribution(prior, "prior")
    check_row_stochastic(signals, "signal matrix")
    n_signals = len(signals[0]) if signals else 0
    posteriors: list[tuple] = []
    columns: list[list] = []
    for s in range(n_signals):
        col = [row[s] for row in signals]
        mass = dot(prior, col)
        if mass == 0:
            continue
        gamma = tuple(p * v / mass for p, v in zip(prior, col))
        if gamma in posteriors:
            b = posteriors.index(gamma)
            columns[b] = [x + y for x, y in zip(columns[b], col)]
        else:
            posteriors.append(gamma)
            columns.append(col)
    if not posteriors:
        raise ValidationError("no signal has positive probability")
    pi = tuple(tuple(columns[b][i] for b in range(len(columns))) for i in range(len(prior)))
    return InformationStructure(tuple(posteriors), pi, prior)


class ScpReport(NamedTuple):
    passed: bool
    violations: tuple  # (low action, high action, low state, high state)


def check_single_crossing(u: UtilityMatrix, strict: bool = True) -> ScpReport:
    """Scan every quadruple ``a' < a''``, ``theta' < theta''`` for a single-crossing failure.

    The weak clause requires ``u(a'',theta') >= u(a',theta')`` to imply the same
    at ``theta''``; with ``strict`` the strict implication is required as well.
    """
    violations = []
    values = u.values
    for lo, hi in combinations(range(u.n_actions), 2):
        diff = [h - l for h, l in zip(values[hi], values[lo])]
        for s1, s2 in combinations(range(u.n_states), 2):
            weak_bad = diff[s1] >= 0 and diff[s2] < 0
            strict_bad = strict and diff[s1] > 0 and diff[s2] <= 0
            if weak_bad or strict_bad:
                violations.append((lo, hi, s1, s2))
    return ScpReport(not violations, tuple(violations))
