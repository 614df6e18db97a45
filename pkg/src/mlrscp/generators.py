"""Seeded random instances: MLR datasets, garblings, and single-crossing decision makers."""
from __future__ import annotations

import os
import random
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import RetryExhaustedError, ValidationError
from .mlr import NONE, STRICT, check_mlr
from .model import ChoiceRule, Dataset, UtilityMatrix, best_responses, posteriors_from_signals, simulate

KINDS = ("mlr-strict", "mlr-weak", "arbitrary", "mbeu-dm")


def _default_retries() -> int:
    return int(os.environ.get("MLRSCP_MAX_RETRIES", "100"))


@dataclass(frozen=True)
class GeneratorConfig:
    n_states: int
    m_actions: int
    seed: int
    denominator: int = 12
    kind: str = "mlr-strict"
    max_retries: int | None = None

    def __post_init__(self):
        for name in ("n_states", "m_actions", "denominator"):
            if not isinstance(getattr(self, name), int) or getattr(self, name) < 1:
                raise ValidationError(f"{name} must be a positive integer")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ValidationError("seed must be an integer")
        if self.kind not in KINDS:
            raise ValidationError(f"unknown kind {self.kind!r}; expected one of {KINDS}")


def _normalize(weights):
    total = sum(weights)
    return tuple(Fraction(w) / total for w in weights)


def random_distribution(rng: random.Random, n: int, denominator: int, allow_zero=False) -> tuple:
    """Normalized vector of integer weights drawn from ``1..denominator`` (``0..`` if allowed)."""
    low = 0 if allow_zero else 1
    while True:
        w = [rng.randint(low, denominator) for _ in range(n)]
        if sum(w):
            return _normalize(w)


def _tilt(rng, n, denominator, strict=True):
    """Positive sequence, strictly (or weakly) increasing, with steps that are multiples of ``1/denominator``."""
    low = 1 if strict else 0
    t = [Fraction(rng.randint(1, denominator), denominator)]
    for _ in range(n - 1):
        t.append(t[-1] + Fraction(rng.randint(low, denominator), denominator))
    if not strict and n > 1:
        # force at least one tie so the weak kind is not accidentally strict
        j = rng.randrange(n - 1)
        t[j + 1] = t[j]
        for i in range(j + 2, n):
            t[i] = max(t[i], t[i - 1])
    return t


def mlr_matrix(rng: random.Random, n_rows: int, n_cols: int, denominator: int, strict=True) -> tuple:
    """Row-stochastic matrix whose rows increase in the MLR order.

    The first row is random and positive; each further row multiplies the one
    above by an increasing positive sequence and renormalizes.
    """
    rows = [random_distribution(rng, n_cols, denominator)]
    for _ in range(n_rows - 1):
        t = _tilt(rng, n_cols, denominator, strict)
        rows.append(_normalize([v * s for v, s in zip(rows[-1], t)]))
    return tuple(rows)


def _retry(make, accept, cfg, what):
    limit = cfg.max_retries if cfg.max_retries is not None else _default_retries()
    for _ in range(max(limit, 1)):
        out = make()
        if accept(out):
            return out
    raise RetryExhaustedError(f"could not draw a valid {what} in {limit} attempts")


def gen_mlr_dataset(cfg: GeneratorConfig) -> Dataset:
    """Random dataset of the configured kind, checked against its advertised property."""
    rng = random.Random(cfg.seed)
    n, m, den = cfg.n_states, cfg.m_actions, cfg.denominator

    if cfg.kind == "mbeu-dm":
        u, info, choice, _ = gen_mbeu_dm(cfg)
        return simulate(u, info, choice)

    def make():
        prior = random_distribution(rng, n, den)
        if cfg.kind == "arbitrary":
            q = tuple(random_distribution(rng, m, den, allow_zero=True) for _ in range(n))
        else:
            q = mlr_matrix(rng, n, m, den, strict=cfg.kind == "mlr-strict")
        return Dataset(prior, q)

    def accept(d):
        if cfg.kind == "mlr-strict":
            return check_mlr(d.q).verdict == STRICT
        if cfg.kind == "mlr-weak":
            return check_mlr(d.q).verdict != NONE
        return True

    return _retry(make, accept, cfg, cfg.kind + " dataset")


def gen_garbling(rng: random.Random, n_signals: int, n_out: int, denominator: int) -> tuple:
    """Monotone garbling: a row-stochastic, strictly MLR-ordered ``n_signals x n_out`` matrix."""
    return mlr_matrix(rng, n_signals, n_out, denominator, strict=True)


def gen_increasing_differences(rng: random.Random, n_states: int, m_actions: int,
                               denominator: int) -> UtilityMatrix:
    """Utility whose consecutive-action differences are strictly increasing in the state.

    Such utilities are strictly supermodular and hence strictly single crossing.
    """
    rows = [tuple(Fraction(rng.randint(-denominator, denominator), denominator) for _ in range(n_states))]
    for _ in range(m_actions - 1):
        steps = [Fraction(rng.randint(1, denominator), denominator) for _ in range(n_states)]
        level, diff = Fraction(0), []
        for s in steps:
            level += s
            diff.append(level)
        offset = Fraction(rng.randint(0, denominator * n_states), denominator)
        rows.append(tuple(r + v - offset for r, v in zip(rows[-1], diff)))
    return UtilityMatrix(tuple(rows))


def uniform_best_response_rule(u: UtilityMatrix, posteriors) -> ChoiceRule:
    """Mix uniformly over the best responses at each posterior."""
    rows = []
    for gamma in posteriors:
        best = best_responses(u, gamma)
        rows.append(tuple(Fraction(int(k in best), len(best)) for k in range(u.n_actions)))
    return ChoiceRule(tuple(rows))


def gen_mbeu_dm(cfg: GeneratorConfig):
    """Random decision maker with increasing-differences utility and MLR signals.

    Returns ``(utility, info, choice, prior)``; the choice rule mixes uniformly
    over best responses.
    """
    rng = random.Random(cfg.seed)
    n, m, den = cfg.n_states, cfg.m_actions, cfg.denominator

    def make():
        prior = random_distribution(rng, n, den)
        n_signals = rng.randint(1, n + 2)
        info = posteriors_from_signals(mlr_matrix(rng, n, n_signals, den), prior)
        u = gen_increasing_differences(rng, n, m, den)
        return u, info, uniform_best_response_rule(u, info.posteriors), prior

    def accept(dm):
        return check_mlr(dm[1].pi).verdict != NONE

    return _retry(make, accept, cfg, "decision maker")
