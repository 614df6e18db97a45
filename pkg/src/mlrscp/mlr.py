"""Monotone likelihood ratio checks in cross-product form."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ._validation import as_matrix, as_vector, check_length
from .exceptions import ValidationError

STRICT = "strict"
WEAK = "weak"
NONE = "none"


@dataclass(frozen=True)
class MlrReport:
    """Outcome of an MLR scan.

    ``violations`` and ``ties`` hold ``(r, r2, c, c2, lhs, rhs)`` with ``r < r2``,
    ``c < c2``, ``lhs = M[r2][c2] * M[r][c]`` and ``rhs = M[r2][c] * M[r][c2]``.
    """

    verdict: str
    violations: tuple = ()
    ties: tuple = ()
    require_strict: bool = False

    @property
    def passed(self) -> bool:
        if self.require_strict:
            return self.verdict == STRICT
        return self.verdict != NONE


def check_mlr(matrix, require_strict: bool = False) -> MlrReport:
    """Scan every pair of ordered rows and ordered columns of ``matrix``.

    Higher rows must put relatively more weight on higher columns:
    ``M[r2][c2] * M[r][c] >= M[r2][c] * M[r][c2]``. Equality (including the
    both-zero case) is recorded as a tie, never as a violation.
    """
    mat = as_matrix(matrix)
    if any(v < 0 for row in mat for v in row):
        raise ValidationError("MLR check needs nonnegative entries")
    n_cols = len(mat[0]) if mat else 0
    violations, ties = [], []
    for r, r2 in combinations(range(len(mat)), 2):
        low, high = mat[r], mat[r2]
        for c, c2 in combinations(range(n_cols), 2):
            lhs = high[c2] * low[c]
            rhs = high[c] * low[c2]
            if lhs < rhs:
                violations.append((r, r2, c, c2, lhs, rhs))
            elif lhs == rhs:
                ties.append((r, r2, c, c2, lhs, rhs))
    if violations:
        verdict = NONE
    elif ties:
        verdict = WEAK
    else:
        verdict = STRICT
    return MlrReport(verdict, tuple(violations), tuple(ties), require_strict)


def check_dataset_mlr(d, strict: bool = False) -> MlrReport:
    """MLR scan of ``d.q`` with states as rows and actions as columns."""
    return check_mlr(d.q, require_strict=strict)


def mlr_dominates(p, r) -> str:
    """Verdict on whether ``p`` dominates ``r`` in the MLR order."""
    p, r = as_vector(p), as_vector(r)
    check_length(p, len(r), "p")
    return check_mlr((r, p)).verdict
