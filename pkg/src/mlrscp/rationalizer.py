"""Construct a single-crossing, MLR-ordered Bayesian rationalization of choice data.

Two routes are available. Binary data (two states, two actions) uses a closed
form. Everything else goes through an inductive construction over consecutive
actions: for each pair ``(a_{k-1}, a_k)`` a small homogeneous inequality
system is solved for the utility difference between the two actions, with sign
rows forcing a single crossing and signed-ratio rows keeping all accumulated
differences single crossing. The differences are then summed into a utility
matrix, and the information structure is read off the data itself (one
posterior per chosen action).

Internally the unknowns are prior-weighted differences ``mu0(theta) * (u(a_k,
theta) - u(a_{k-1}, theta))``; the data rows are then just columns of ``q``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple

from .exceptions import CannotStrictifyError, ConstructionFailedError, NotMLRError, ValidationError
from .feasibility import INFEASIBLE, STRICT, WEAK, InequalitySystem, solve
from .mlr import NONE, check_dataset_mlr
from .mlr import STRICT as MLR_STRICT
from .model import (
    ChoiceRule,
    Dataset,
    InformationStructure,
    Rationalization,
    UtilityMatrix,
    check_single_crossing,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)

BINARY = "binary-closed-form"
GENERAL = "general-inductive"

DATA, SIGN, RATIO = "data", "sign", "ratio"


@dataclass
class DifferenceTable:
    """Differences between actions, keyed by action index.

    ``diffs[(k, l)][i]`` is the difference between actions ``k > l`` at state
    ``i``; ``crossing[k]`` is the state where the consecutive difference ending
    at ``k`` turns nonnegative and ``crossing_general[(k, l)]`` the first state
    from which ``diffs[(k, l)]`` stays nonnegative. When ``weights`` is set the
    stored values are multiplied by those per-state weights.
    """

    n_states: int
    diffs: dict = field(default_factory=dict)
    crossing: dict = field(default_factory=dict)
    crossing_general: dict = field(default_factory=dict)
    weights: tuple | None = None
    order: list = field(default_factory=list)

    def add(self, k: int, values, crossing: int) -> None:
        """Record the consecutive difference ending at ``k`` and accumulate the rest."""
        values = tuple(values)
        if self.order:
            prev = self.order[-1]
            self.diffs[(k, prev)] = values
            for l in self.order[:-1]:
                self.diffs[(k, l)] = tuple(a + b for a, b in zip(values, self.diffs[(prev, l)]))
            for l in self.order:
                self.crossing_general[(k, l)] = _first_nonneg_tail(self.diffs[(k, l)])
        self.crossing[k] = crossing
        self.order.append(k)

    def consecutive(self):
        """``(k, values)`` for each consecutive pair, in increasing order."""
        return [(k, self.diffs[(k, prev)]) for prev, k in zip(self.order, self.order[1:])]


def _first_nonneg_tail(values) -> int:
    i = len(values)
    while i > 0 and values[i - 1] >= 0:
        i -= 1
    return i


def argmax_states(d: Dataset, a: int) -> frozenset:
    """States at which action ``a`` is chosen most often."""
    col = d.column(a)
    top = max(col)
    return frozenset(i for i, v in enumerate(col) if v == top)


def crossing_sequence(d: Dataset, actions=None) -> dict:
    """Greedy weakly increasing selection ``n_k`` from the per-action argmax sets.

    Each action takes the lowest argmax state other than the one picked for its
    predecessor, or repeats the predecessor's state when nothing else is left.
    """
    report = check_dataset_mlr(d)
    if report.verdict == NONE:
        raise NotMLRError("data is not MLR-ordered", report)
    actions = range(d.n_actions) if actions is None else actions
    seq, prev = {}, None
    for k in actions:
        best = argmax_states(d, k)
        rest = best - {prev} if prev is not None else best
        prev = min(rest) if rest else prev
        seq[k] = prev
    return seq


def signed_ratio_rows(k, prev: DifferenceTable, crossing: int) -> list:
    """Rows keeping every accumulated difference single crossing once ``k`` is added.

    For each earlier action ``l`` the states below ``crossing`` where the
    difference between the previous action and ``l`` is positive are collected;
    for every ordered pair ``s1 < s2`` of them the row
    ``A(s1) e_{s2} - A(s2) e_{s1}`` is emitted.
    """
    rows = []
    if len(prev.order) < 2:
        return rows
    last = prev.order[-1]
    for l in prev.order[:-1]:
        a = prev.diffs[(last, l)]
        positive = [i for i in range(min(crossing, prev.n_states)) if a[i] > 0]
        for s1, s2 in combinations(positive, 2):
            row = [_ZERO] * prev.n_states
            row[s2] = a[s1]
            row[s1] = -a[s2]
            rows.append(tuple(row))
    return rows


def build_pair_system(d: Dataset, k: int, prev: DifferenceTable, crossing: int,
                      below: int | None = None) -> InequalitySystem:
    """Inequalities for the difference between action ``k`` and the previous action.

    ``below`` defaults to the last action recorded in ``prev``. Rows: ``k`` must
    be weakly better at its own revealed posterior, the previous action weakly
    better at its own, coordinates below ``crossing`` nonpositive and the rest
    nonnegative, and the signed-ratio rows.
    """
    if below is None:
        below = prev.order[-1]
    n = d.n_states
    if not 0 <= crossing <= n:
        raise ValidationError(f"crossing {crossing} outside 0..{n}")
    rows = [d.column(k), tuple(-v for v in d.column(below))]
    labels = [DATA, DATA]
    for j in range(n):
        rows.append(tuple(Fraction(-1 if j < crossing else 1) if i == j else _ZERO for i in range(n)))
        labels.append(SIGN)
    ratio = signed_ratio_rows(k, prev, crossing)
    rows.extend(ratio)
    labels.extend([RATIO] * len(ratio))
    return InequalitySystem(tuple(rows), tuple(labels), frozenset(range(crossing, n)))


def _meets_strict_pattern(system, y) -> bool:
    values = system.evaluate(y)
    for label, v in zip(system.row_labels, values):
        if v < 0 or (label != RATIO and v == 0):
            return False
    return True


def strictify(system: InequalitySystem, outcome, crossing: int) -> tuple:
    """Turn a weak solution into one with every data and sign row strictly positive.

    Zero coordinates are pushed by ``eps`` in the direction their sign row
    allows (up from ``crossing`` on, down below it), with ``eps`` half the
    smallest positive row value. Raises :class:`CannotStrictifyError` if a
    data row is binding or the perturbed vector breaks any row.
    """
    if outcome.status == INFEASIBLE or outcome.solution is None:
        raise CannotStrictifyError("no solution to strictify")
    y = tuple(outcome.solution)
    if _meets_strict_pattern(system, y):
        return y
    values = system.evaluate(y)
    if any(label == DATA and v <= 0 for label, v in zip(system.row_labels, values)):
        raise CannotStrictifyError("a data row is binding, nothing to perturb with")
    positive = [v for v in values if v > 0]
    if not positive:
        raise CannotStrictifyError("no positive slack available")
    eps = min(positive) / 2
    out = tuple(
        (eps if j >= crossing else -eps) if v == 0 else v for j, v in enumerate(y)
    )
    if not _meets_strict_pattern(system, out):
        raise CannotStrictifyError("perturbed solution fails re-verification")
    return out


def recover_utility(table: DifferenceTable, n_states: int, n_actions: int,
                    rows: list | None = None) -> UtilityMatrix:
    """Sum consecutive differences upward from a zero row for the lowest action.

    ``rows`` lists which action index each recorded difference belongs to;
    by default the table's own action order is used and must cover
    ``0..n_actions-1``. Weighted differences are divided by their weights.
    """
    if n_actions < 1:
        raise ValidationError("need at least one action")
    weights = table.weights
    level = [_ZERO] * n_states
    values = {}
    order = table.order or [0]
    values[order[0]] = tuple(level)
    for k, diff in table.consecutive():
        if weights is not None:
            diff = [v / w for v, w in zip(diff, weights)]
        level = [a + b for a, b in zip(level, diff)]
        values[k] = tuple(level)
    keys = list(rows) if rows is not None else list(range(n_actions))
    missing = [k for k in keys if k not in values]
    if missing or len(keys) != n_actions:
        raise ValidationError(f"no differences recorded for actions {missing}")
    return UtilityMatrix(tuple(values[k] for k in keys))


def _revealed_posteriors(d: Dataset):
    marginals = d.action_marginals()
    posts = {}
    for a, m in enumerate(marginals):
        if m > 0:
            posts[a] = tuple(p * v / m for p, v in zip(d.prior, d.column(a)))
    return marginals, posts


def build_info_and_choice(d: Dataset):
    """Posterior per chosen action, merged when two actions reveal the same belief.

    Returns ``(info, choice, blocks)`` where ``blocks[b]`` lists the actions
    sharing posterior ``b``. Actions that are never chosen get no posterior.
    """
    marginals, posts = _revealed_posteriors(d)
    blocks: list[list[int]] = []
    beliefs: list[tuple] = []
    for a, gamma in posts.items():
        if gamma in beliefs:
            blocks[beliefs.index(gamma)].append(a)
        else:
            beliefs.append(gamma)
            blocks.append([a])
    pi = tuple(
        tuple(sum((row[a] for a in block), _ZERO) for block in blocks) for row in d.q
    )
    c = []
    for block in blocks:
        mass = sum(marginals[a] for a in block)
        c.append(tuple(marginals[j] / mass if j in block else _ZERO for j in range(d.n_actions)))
    info = InformationStructure(tuple(beliefs), pi, d.prior)
    return info, ChoiceRule(tuple(c)), tuple(tuple(b) for b in blocks)


def rationalize_binary(d: Dataset) -> Rationalization:
    """Closed-form rationalization of two-state, two-action data.

    The utility is ``u(a1) = (1, 0)`` and ``u(a2) = (0, r)`` with ``r`` the
    midpoint of the interval of values making each action strictly optimal at
    the belief it reveals. When that interval is unbounded above, ``r`` is its
    lower end plus one.
    """
    if d.n_states != 2 or d.n_actions != 2:
        raise ValidationError("binary path needs exactly two states and two actions")
    q11, q12 = d.q[0][0], d.q[1][0]
    if not q11 > q12:
        raise NotMLRError(
            f"q(a1|theta1) = {q11} must exceed q(a1|theta2) = {q12}", check_dataset_mlr(d)
        )
    mu = d.prior[0]
    lower = mu * (1 - q11) / ((1 - mu) * (1 - q12))
    r = (lower + mu * q11 / ((1 - mu) * q12)) / 2 if q12 > 0 else lower + 1
    u = UtilityMatrix(((_ONE, _ZERO), (_ZERO, r)))
    info, choice, _ = build_info_and_choice(d)
    return Rationalization(u, info, choice, BINARY, True)


def _proportional(x, y) -> bool:
    return all(x[i] * y[j] == x[j] * y[i] for i, j in combinations(range(len(x)), 2))


class _PairResult(NamedTuple):
    values: tuple
    crossing: int
    strict: bool


def _solve_pair(d, k, table, base):
    """Try crossings from ``base`` upward, then downward; prefer a strict solution."""
    n = d.n_states
    candidates = list(range(base, n)) + list(range(base - 1, -1, -1))
    fallback = None
    for c in candidates:
        system = build_pair_system(d, k, table, c)
        outcome = solve(system)
        if outcome.status == STRICT:
            return _PairResult(outcome.solution, c, True)
        if outcome.status == WEAK:
            try:
                return _PairResult(strictify(system, outcome, c), c, True)
            except CannotStrictifyError:
                if fallback is None:
                    fallback = _PairResult(outcome.solution, c, False)
    if fallback is None:
        raise ConstructionFailedError(
            f"no difference vector for action {k}", {"action": k, "crossings": candidates}
        )
    return fallback


def _difference_table(d: Dataset, active: list) -> tuple:
    table = DifferenceTable(d.n_states, weights=d.prior)
    seq = crossing_sequence(d, active)
    all_strict = True
    prev_crossing = None
    for idx, k in enumerate(active):
        if idx == 0:
            table.add(k, (), seq[k])
            prev_crossing = seq[k]
            continue
        below = active[idx - 1]
        if _proportional(d.column(k), d.column(below)):
            table.add(k, (_ZERO,) * d.n_states, prev_crossing)
            continue
        base = min(max(seq[k], prev_crossing, 1), max(d.n_states - 1, 0))
        res = _solve_pair(d, k, table, base)
        all_strict &= res.strict
        table.add(k, res.values, res.crossing)
        prev_crossing = res.crossing
        _check_sign_pattern(res.values, res.crossing, k)
    return table, all_strict


def _check_sign_pattern(values, crossing, k):
    for i, v in enumerate(values):
        if (i < crossing and v > 0) or (i >= crossing and v < 0):
            raise ConstructionFailedError(f"difference for action {k} breaks its sign pattern")


def _insert_unused(rows: dict, n_actions: int, n_states: int) -> tuple:
    """Give each never-chosen action a copy of a chosen neighbour lowered by a constant.

    The constant stays below every nonzero utility gap, so all single-crossing
    patterns survive and the copy is never a best response.
    """
    rows = dict(rows)
    chosen = sorted(rows)
    for j in range(n_actions):
        if j in rows:
            continue
        lower = [a for a in chosen if a < j]
        source = lower[-1] if lower else min(a for a in chosen if a > j)
        gaps = {abs(x - y) for r1, r2 in combinations(rows.values(), 2) for x, y in zip(r1, r2)}
        gaps.discard(0)
        eps = min(gaps) / 2 if gaps else _ONE
        rows[j] = tuple(v - eps for v in rows[source])
    return tuple(rows[j] for j in range(n_actions))


def rationalize(d: Dataset) -> Rationalization:
    """Build a rationalization of MLR-ordered data and audit it before returning."""
    from .verifier import verify

    report = check_dataset_mlr(d)
    if report.verdict == NONE:
        raise NotMLRError("data is not MLR-ordered", report)
    if d.n_states == 2 and d.n_actions == 2 and d.q[0][0] > d.q[1][0]:
        r = rationalize_binary(d)
    else:
        marginals = d.action_marginals()
        active = [a for a, m in enumerate(marginals) if m > 0]
        table, strict = _difference_table(d, active)
        chosen = recover_utility(table, d.n_states, len(active), rows=active)
        utility = UtilityMatrix(
            _insert_unused(dict(zip(active, chosen.values)), d.n_actions, d.n_states)
        )
        info, choice, _ = build_info_and_choice(d)
        strict = strict and check_single_crossing(utility).passed
        r = Rationalization(utility, info, choice, GENERAL, strict)
    audit = verify(d, r)
    if not audit.passed:
        # with a single state every chosen action reveals the same belief, so
        # strict optimality is out of reach whatever the construction does
        if report.verdict == MLR_STRICT and d.n_states > 1:
            raise ConstructionFailedError("constructed rationalization fails verification", audit)
        r = Rationalization(r.utility, r.info, r.choice, r.method, False)
    return r


def difference_table(d: Dataset) -> DifferenceTable:
    """The consecutive and accumulated differences used by :func:`rationalize`."""
    report = check_dataset_mlr(d)
    if report.verdict == NONE:
        raise NotMLRError("data is not MLR-ordered", report)
    active = [a for a, m in enumerate(d.action_marginals()) if m > 0]
    return _difference_table(d, active)[0]


@dataclass(frozen=True)
class PairScreen:
    high: int
    low: int
    feasible: bool
    crossings: tuple  # crossing states admitting a solution
    witness: tuple | None
    certificates: tuple  # (crossing, z) for each infeasible crossing
    top_must_be_nonneg: bool
    bottom_must_be_nonpos: bool


def scp_alone_feasible(d: Dataset) -> list:
    """For every action pair ``high > low``, can a single-crossing difference rationalize both?

    Each candidate crossing ``c`` in ``0..N`` fixes the sign pattern (``c = N``
    means negative everywhere); the pair is feasible when some pattern admits
    a nonzero solution with ``high`` weakly better where it is chosen and ``low``
    weakly better where it is chosen.
    """
    n = d.n_states
    out = []
    empty = DifferenceTable(n)
    for low, high in combinations(range(d.n_actions), 2):
        ok, witness, certs = [], None, []
        for c in range(n + 1):
            system = build_pair_system(d, high, empty, c, below=low)
            outcome = solve(system, normalize=False)
            if outcome.feasible:
                ok.append(c)
                witness = witness if witness is not None else outcome.solution
            else:
                certs.append((c, outcome.certificate))
        out.append(PairScreen(
            high, low, bool(ok), tuple(ok), witness, tuple(certs),
            top_must_be_nonneg=bool(ok) and n not in ok,
            bottom_must_be_nonpos=bool(ok) and 0 not in ok,
        ))
    return out
