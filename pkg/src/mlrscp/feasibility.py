"""Homogeneous linear inequality systems ``A y >= 0`` with a Farkas alternative.

Exactly one of the following holds for a rational matrix ``A``:

* some ``y`` has ``A y >= 0`` and ``A y != 0``, or
* some ``z >> 0`` has ``A^T z = 0``.

:func:`solve` reports which side of this alternative a system falls on and
returns a witness for it, separating the case ``A y >> 0`` (``strict``) from
mere nontrivial solvability (``weak``). When the only solution is ``y = 0`` a
strictly positive certificate ``z`` is returned instead.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ._linalg import nullspace
from ._simplex import linprog
from ._validation import as_matrix, dot
from .exceptions import DegenerateSystemError, DimensionError

_ZERO = Fraction(0)
_ONE = Fraction(1)

STRICT = "strict"
WEAK = "weak"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class InequalitySystem:
    """Rows of ``A`` together with a provenance label for each row.

    ``nonneg_coords`` lists the coordinates that sign rows force to be
    nonnegative; when present, :func:`solve` normalizes their sum to one.
    """

    a: tuple
    row_labels: tuple = ()
    nonneg_coords: frozenset = frozenset()

    def __post_init__(self):
        a = as_matrix(self.a)
        if not a or not a[0]:
            raise DimensionError("an inequality system needs at least one row and one column")
        object.__setattr__(self, "a", a)
        labels = tuple(self.row_labels) or tuple("row" for _ in a)
        if len(labels) != len(a):
            raise DimensionError(f"{len(labels)} labels for {len(a)} rows")
        object.__setattr__(self, "row_labels", labels)
        coords = frozenset(self.nonneg_coords)
        if any(not 0 <= j < self.n_cols for j in coords):
            raise DimensionError("nonneg_coords out of range")
        object.__setattr__(self, "nonneg_coords", coords)

    @property
    def n_rows(self) -> int:
        return len(self.a)

    @property
    def n_cols(self) -> int:
        return len(self.a[0])

    def evaluate(self, y: Sequence[Fraction]) -> tuple:
        """Row values ``A y``."""
        if len(y) != self.n_cols:
            raise DimensionError(f"vector of length {len(y)} for {self.n_cols} columns")
        return tuple(dot(row, y) for row in self.a)


@dataclass(frozen=True)
class FeasibilityOutcome:
    status: str
    solution: tuple | None = None
    min_slack: Fraction | None = None
    certificate: tuple | None = None
    slacks: tuple | None = field(default=None, repr=False)

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


def verify_certificate(system: InequalitySystem, z: Sequence) -> bool:
    """True iff ``z >> 0`` and ``A^T z = 0`` exactly."""
    if len(z) != system.n_rows:
        return False
    if any(Fraction(v) <= 0 for v in z):
        return False
    for j in range(system.n_cols):
        if sum((row[j] * Fraction(v) for row, v in zip(system.a, z)), _ZERO) != 0:
            return False
    return True


def _box(n, extra=1):
    """Rows ``y_j <= 1`` and ``-y_j <= 1`` padded with ``extra`` zero columns."""
    rows, rhs = [], []
    for j in range(n):
        for sign in (1, -1):
            row = [_ZERO] * (n + extra)
            row[j] = Fraction(sign)
            rows.append(row)
            rhs.append(_ONE)
    return rows, rhs


def _max_min_slack(system, normalize):
    """``max t  s.t.  A y >= t, -1 <= y <= 1`` (plus the normalization row)."""
    n = system.n_cols
    G = [[-v for v in row] + [_ONE] for row in system.a]
    h = [_ZERO] * system.n_rows
    box, box_h = _box(n)
    E, f = (), ()
    if normalize:
        E = [[_ONE if j in system.nonneg_coords else _ZERO for j in range(n)] + [_ZERO]]
        f = [_ONE]
    res = linprog([_ZERO] * n + [_ONE], G + box, h + box_h, E, f)
    if res.status != "optimal":
        return None, None
    return res.x[:n], res.x[n]


def _max_total_slack(system):
    """``max sum(A y)  s.t.  A y >= 0, -1 <= y <= 1``."""
    n = system.n_cols
    c = [sum((row[j] for row in system.a), _ZERO) for j in range(n)]
    G = [[-v for v in row] for row in system.a]
    box, box_h = _box(n, extra=0)
    res = linprog(c, G + box, [_ZERO] * system.n_rows + box_h)
    return res.x, res.value


def _certificate(system):
    """Some ``z >= 1`` with ``A^T z = 0`` minimizing ``sum(z)``, or ``None``."""
    m = system.n_rows
    G = [[-_ONE if i == j else _ZERO for j in range(m)] for i in range(m)]
    h = [-_ONE] * m
    E = [[system.a[i][j] for i in range(m)] for j in range(system.n_cols)]
    res = linprog([-_ONE] * m, G, h, E, [_ZERO] * system.n_cols)
    return res.x if res.status == "optimal" else None


def _scale_into_box(y):
    top = max(abs(v) for v in y)
    return tuple(v / top for v in y)


def solve(system: InequalitySystem, normalize: bool | None = None) -> FeasibilityOutcome:
    """Classify ``A y >= 0`` and return a maximal-slack witness or a certificate.

    With ``normalize`` (default: whenever ``nonneg_coords`` is nonempty) the
    first attempt fixes ``sum(y[j] for j in nonneg_coords) == 1`` so that the
    returned direction is scaled canonically. ``status`` is ``strict`` when the
    optimal minimum slack ``t*`` is positive, ``weak`` when a nonzero solution
    exists only with ``t* = 0``, and ``infeasible`` when ``y = 0`` is the only
    solution; the last case carries a certificate ``z >> 0`` with ``A^T z = 0``.
    """
    if normalize is None:
        normalize = bool(system.nonneg_coords)
    elif normalize and not system.nonneg_coords:
        raise DegenerateSystemError("normalization requested but no coordinate is sign-constrained")

    if normalize:
        y, t = _max_min_slack(system, normalize=True)
        if y is not None and t > 0:
            return _checked(system, STRICT, y, t)
    y, t = _max_min_slack(system, normalize=False)
    if t > 0:
        return _checked(system, STRICT, y, t)

    y, total = _max_total_slack(system)
    if total > 0:
        return _checked(system, WEAK, y, _ZERO)
    # every solution has A y = 0 here, so the cone is the null space of A
    kernel = nullspace(system.a, system.n_cols)
    if kernel:
        return _checked(system, WEAK, _scale_into_box(kernel[0]), _ZERO)
    z = _certificate(system)
    if z is None or not verify_certificate(system, z):
        raise AssertionError("no certificate found for a system with only the trivial solution")
    return FeasibilityOutcome(INFEASIBLE, certificate=tuple(z))


def _checked(system, status, y, t):
    y = tuple(y)
    slacks = system.evaluate(y)
    if any(v < t for v in slacks) or all(v == 0 for v in y):
        raise AssertionError("solver returned a vector that fails re-substitution")
    return FeasibilityOutcome(status, solution=y, min_slack=min(slacks) if status == STRICT else _ZERO,
                              slacks=slacks)
