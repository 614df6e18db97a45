"""Lehmann (accuracy) comparison of MLR-ordered datasets.

Each dataset is read as an information structure whose signals are the
actions. To compare structures with step CDFs, signal ``j`` is spread
uniformly over ``[j, j + 1]``; the resulting CDFs ``G_theta`` are continuous
and piecewise linear. The first structure is more accurate when the transfer
``h(x, theta) = G1_theta^{-1}(G2_theta(x))`` can be chosen nondecreasing in
``theta`` for every position ``x`` of the second structure. Where ``G1`` is
flat (a signal with zero mass) the inverse is an interval and any point of it
may be selected.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ._validation import as_vector, check_distribution, dot
from .exceptions import NotMLRError, ValidationError
from .generators import gen_increasing_differences
from .mlr import NONE, check_dataset_mlr
from .model import Dataset
from .rationalizer import build_info_and_choice

FIRST = "first-higher"
SECOND = "second-higher"
BOTH = "both"
INCOMPARABLE = "incomparable"

_ZERO = Fraction(0)
_ONE = Fraction(1)


def cdf(dist) -> tuple:
    """Partial sums of a distribution over an ordered support."""
    dist = as_vector(dist)
    check_distribution(dist)
    out, total = [], _ZERO
    for p in dist:
        total += p
        out.append(total)
    return tuple(out)


class _Line:
    """Piecewise-linear CDF of a distribution whose signal ``j`` is uniform on ``[j, j+1]``."""

    def __init__(self, dist):
        self.p = tuple(dist)
        self.f = cdf(dist)
        self.size = len(self.p)

    def _below(self, j):
        return self.f[j - 1] if j else _ZERO

    def value(self, x):
        if x >= self.size:
            return _ONE
        j = int(x)  # floor for nonnegative x
        return self._below(j) + (x - j) * self.p[j]

    def lower_inverse(self, level):
        """``min{x : G(x) >= level}``."""
        if level <= 0:
            return _ZERO
        j = next(j for j, v in enumerate(self.f) if v >= level)
        return j + (level - self._below(j)) / self.p[j]

    def upper_inverse(self, level):
        """``max{x : G(x) <= level}``."""
        if level >= 1:
            return Fraction(self.size)
        j = next(j for j, v in enumerate(self.f) if v > level)
        return j + (level - self._below(j)) / self.p[j]


def _breakpoints(line, levels):
    """Positions on ``line`` where a composite with it may change slope or jump."""
    points = {Fraction(x) for x in range(line.size + 1)}
    for level in levels:
        points.add(line.lower_inverse(level))
        points.add(line.upper_inverse(level))
    return points


def _pair_gap_ok(a1, a2, b1, b2):
    """Search for a position where no transfer value at state ``k`` can sit above state ``i``'s.

    ``a1, a2`` are the candidate higher structure's lines at states ``i < k``,
    ``b1, b2`` the other structure's. Returns a failing position or ``None``.
    """
    levels = set(a1.f) | set(a2.f) | {_ZERO}
    points = sorted(_breakpoints(b1, levels) | _breakpoints(b2, levels))

    def gap(x):
        return a2.upper_inverse(b2.value(x)) - a1.lower_inverse(b1.value(x))

    for x in points:
        if gap(x) < 0:
            return x
    for x, y in zip(points, points[1:]):
        # the gap is linear strictly between consecutive breakpoints: check its end limits
        t1, t2 = x + (y - x) / 3, x + 2 * (y - x) / 3
        g1, g2 = gap(t1), gap(t2)
        slope = (g2 - g1) / (t2 - t1)
        if g1 - slope * (t1 - x) < 0 or g2 + slope * (y - t2) < 0:
            return (x + y) / 2
    return None


def _transfer(hi_data: Dataset, lo_data: Dataset):
    """Monotone transfer from ``lo_data``'s signal line into ``hi_data``'s.

    Returns ``(h, witnesses)``. ``h[s][i]`` is the position on the finer line
    matched to the right end of signal ``s`` in state ``i``, chosen as the
    smallest admissible value keeping ``h[s]`` nondecreasing in the state.
    ``witnesses`` holds ``(s, i, k)`` for states ``i < k`` where no
    nondecreasing choice exists near signal ``s``.
    """
    a = [_Line(row) for row in hi_data.q]
    b = [_Line(row) for row in lo_data.q]
    witnesses = []
    for i, k in combinations(range(hi_data.n_states), 2):
        x = _pair_gap_ok(a[i], a[k], b[i], b[k])
        if x is not None:
            s = min(int(x), lo_data.n_actions - 1)
            witnesses.append((s, i, k))
    h = []
    for s in range(lo_data.n_actions):
        current, row = _ZERO, []
        for i in range(hi_data.n_states):
            level = b[i].value(Fraction(s + 1))
            current = max(current, a[i].lower_inverse(level))
            row.append(current)
        h.append(tuple(row))
    return tuple(h), tuple(witnesses)


@dataclass(frozen=True)
class LehmannReport:
    direction: str
    transfer: tuple | None  # h[s][i] mapping second's signals into first's (when first is higher)
    reverse_transfer: tuple | None
    witnesses: tuple  # (s, i_prev, i) for the first-higher direction
    reverse_witnesses: tuple


def _check_comparable(d1: Dataset, d2: Dataset):
    if d1.n_states != d2.n_states or d1.states != d2.states:
        raise ValidationError("datasets are defined on different states")
    if d1.prior != d2.prior:
        raise ValidationError("datasets have different priors")
    for name, d in (("first", d1), ("second", d2)):
        report = check_dataset_mlr(d)
        if report.verdict == NONE:
            raise NotMLRError(f"{name} dataset is not MLR-ordered", report)


def lehmann_compare(d1: Dataset, d2: Dataset) -> LehmannReport:
    """Classify two MLR-ordered datasets in the Lehmann order."""
    _check_comparable(d1, d2)
    h12, w12 = _transfer(d1, d2)
    h21, w21 = _transfer(d2, d1)
    if not w12 and not w21:
        direction = BOTH
    elif not w12:
        direction = FIRST
    elif not w21:
        direction = SECOND
    else:
        direction = INCOMPARABLE
    return LehmannReport(
        direction,
        None if w12 else h12,
        None if w21 else h21,
        w12,
        w21,
    )


def ex_ante_value(info, u) -> Fraction:
    """``sum_b max_a sum_theta mu0(theta) pi(b|theta) u(a, theta)``."""
    total = _ZERO
    for b in range(info.n_posteriors):
        weights = [p * row[b] for p, row in zip(info.prior, info.pi)]
        total += max(dot(weights, row) for row in u.values)
    return total


def largest_best_response(info, u, b) -> int:
    weights = [p * row[b] for p, row in zip(info.prior, info.pi)]
    values = [dot(weights, row) for row in u.values]
    top = max(values)
    return max(k for k, v in enumerate(values) if v == top)


@dataclass(frozen=True)
class InformednessReport:
    samples: int
    violations: int
    margins: tuple  # value under the first structure minus value under the second

    @property
    def passed(self) -> bool:
        return self.violations == 0


def revealed_informedness_test(d1: Dataset, d2: Dataset, samples: int, seed: int,
                               n_actions: int | None = None, denominator: int = 12,
                               utilities=None) -> InformednessReport:
    """Sampled check that the first dataset's revealed structure is worth at least as much.

    Both structures are built from the data (one posterior per chosen action).
    ``samples`` utilities with strictly increasing differences are drawn
    (``n_actions`` rows, default the larger action count), or ``utilities`` are
    used as given, and the ex-ante value of each structure is compared.
    """
    report = lehmann_compare(d1, d2)
    if report.direction not in (FIRST, BOTH):
        raise ValidationError(f"first dataset is not Lehmann-higher (got {report.direction})")
    info1, _, _ = build_info_and_choice(d1)
    info2, _, _ = build_info_and_choice(d2)
    if utilities is None:
        rng = random.Random(seed)
        m = n_actions or max(d1.n_actions, d2.n_actions)
        utilities = [gen_increasing_differences(rng, d1.n_states, m, denominator) for _ in range(samples)]
    margins = tuple(ex_ante_value(info1, u) - ex_ante_value(info2, u) for u in utilities)
    return InformednessReport(len(margins), sum(1 for v in margins if v < 0), margins)
