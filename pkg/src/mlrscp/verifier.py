"""Audit a candidate rationalization and check the no-improving-switch inequalities."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from ._validation import dot
from .exceptions import DimensionError
from .mlr import NONE, MlrReport, check_dataset_mlr, check_mlr
from .model import Dataset, Rationalization, UtilityMatrix, check_single_crossing, simulate

_ZERO = Fraction(0)

STRICT = "strict"
WEAK = "weak"
FAIL = "fail"


class MonotonicityCheck(NamedTuple):
    passed: bool
    scp_violations: tuple
    mlr: MlrReport


class ConsistencyCheck(NamedTuple):
    passed: bool
    prior_matches: bool
    max_deviation: Fraction


class OptimalityCheck(NamedTuple):
    """``status`` per chosen ``(posterior, action)``: strict, weak (optimal but
    no action is strictly worse) or fail. ``violations`` holds
    ``(posterior, chosen, better)`` triples, ``witnesses`` one strictly worse
    action per chosen pair."""

    status: str
    violations: tuple
    weak_pairs: tuple
    witnesses: dict

    @property
    def passed(self) -> bool:
        return self.status == STRICT


class SupportCheck(NamedTuple):
    passed: bool
    mismatches: tuple  # (posterior, support of C, best responses)


@dataclass(frozen=True)
class VerificationReport:
    monotonicity: MonotonicityCheck
    bayes_plausibility: tuple
    consistency: ConsistencyCheck
    optimality: OptimalityCheck
    support_condition: SupportCheck

    @property
    def rationalizes(self) -> bool:
        """Monotonicity, Bayes plausibility, consistency and optimality, without the support condition."""
        return (
            self.monotonicity.passed
            and all(self.bayes_plausibility)
            and self.consistency.passed
            and self.optimality.passed
        )

    @property
    def passed(self) -> bool:
        return self.rationalizes and self.support_condition.passed


def verify(d: Dataset, r: Rationalization) -> VerificationReport:
    """Check every rationalizability condition for ``r`` against ``d`` exactly."""
    u, info, choice = r.utility, r.info, r.choice
    if u.n_states != d.n_states or u.n_actions != d.n_actions:
        raise DimensionError("utility shape does not match the dataset")
    if len(info.prior) != d.n_states:
        raise DimensionError("information structure has the wrong number of states")
    if len(choice.c) != info.n_posteriors or any(len(row) != d.n_actions for row in choice.c):
        raise DimensionError("choice rule shape does not match posteriors and actions")

    scp = check_single_crossing(u, strict=True)
    mlr = check_mlr(info.pi)
    monotonicity = MonotonicityCheck(scp.passed and mlr.verdict != NONE, scp.violations, mlr)

    bayes = tuple(
        info.bayes_update(b) in (None, info.posteriors[b]) for b in range(info.n_posteriors)
    )

    induced = simulate(u, info, choice).q
    deviation = max(
        (abs(x - y) for r1, r2 in zip(induced, d.q) for x, y in zip(r1, r2)), default=_ZERO
    )
    prior_ok = info.prior == d.prior
    consistency = ConsistencyCheck(prior_ok and deviation == 0, prior_ok, deviation)

    violations, weak_pairs, witnesses, mismatches = [], [], {}, []
    for b, gamma in enumerate(info.posteriors):
        values = [dot(gamma, row) for row in u.values]
        top = max(values)
        best = frozenset(k for k, v in enumerate(values) if v == top)
        support = choice.support(b)
        if support != best:
            mismatches.append((b, support, best))
        for a in sorted(support):
            better = [k for k, v in enumerate(values) if v > values[a]]
            if better:
                violations.append((b, a, better[0]))
                continue
            worse = [k for k, v in enumerate(values) if v < values[a]]
            if worse:
                witnesses[(b, a)] = worse[0]
            elif d.n_actions > 1:
                weak_pairs.append((b, a))
    status = FAIL if violations else WEAK if weak_pairs else STRICT
    optimality = OptimalityCheck(status, tuple(violations), tuple(weak_pairs), witnesses)
    support = SupportCheck(not mismatches, tuple(mismatches))
    return VerificationReport(monotonicity, bayes, consistency, optimality, support)


class NiasReport(NamedTuple):
    passed: bool
    violations: tuple  # (chosen, alternative, value chosen, value alternative)
    strict_witness: tuple | None


def check_nias(d: Dataset, u: UtilityMatrix) -> NiasReport:
    """No action's revealed conditional would be better served by another action.

    For every ordered pair ``(a, b)`` compares
    ``sum_theta mu0 q(a|theta) u(a, theta)`` with the same sum using ``u(b, .)``.
    Passing also needs one strict comparison somewhere (vacuous with one action).
    """
    if u.n_states != d.n_states or u.n_actions != d.n_actions:
        raise DimensionError("utility shape does not match the dataset")
    violations, witness = [], None
    for a in range(d.n_actions):
        weights = [p * v for p, v in zip(d.prior, d.column(a))]
        own = dot(weights, u.values[a])
        for b in range(d.n_actions):
            if b == a:
                continue
            other = dot(weights, u.values[b])
            if own < other:
                violations.append((a, b, own, other))
            elif own > other and witness is None:
                witness = (a, b)
    passed = not violations and (witness is not None or d.n_actions == 1)
    return NiasReport(passed, tuple(violations), witness)


@dataclass(frozen=True)
class NecessitySummary:
    trials: int
    violations: int
    offending: tuple = ()


def necessity_suite(trials: int, seed: int, max_states: int = 4, max_actions: int = 5,
                    denominator: int = 12) -> NecessitySummary:
    """Simulate random MLR/single-crossing decision makers and confirm their data is MLR-ordered."""
    from .generators import GeneratorConfig, gen_mbeu_dm

    rng = random.Random(seed)
    offending = []
    for _ in range(trials):
        cfg = GeneratorConfig(
            n_states=rng.randint(1, max_states),
            m_actions=rng.randint(1, max_actions),
            seed=rng.randrange(2**32),
            denominator=denominator,
            kind="mbeu-dm",
        )
        u, info, choice, _ = gen_mbeu_dm(cfg)
        data = simulate(u, info, choice)
        if check_dataset_mlr(data).verdict == NONE:
            offending.append((cfg, data))
    return NecessitySummary(trials, len(offending), tuple(offending))
