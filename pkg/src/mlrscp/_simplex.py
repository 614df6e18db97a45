"""Exact primal simplex over free variables.

Problems have the form ``max c.x  s.t.  G x <= h,  E x = f`` with every
``x_j`` free; sign constraints are ordinary rows of ``G``. Equalities are
eliminated by exact parametrization, a feasible start is found with a single
auxiliary variable, and the main phase pivots with Bland's rule so that
degenerate problems terminate without any tolerance.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._linalg import solve_affine

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple | None = None
    value: Fraction | None = None


class _Dictionary:
    """Simplex dictionary: each basic variable is ``const + sum(coef * nonbasic)``.

    Variables ``0..n-1`` are free; ``n..n+m-1`` are the row slacks (nonnegative).
    """

    def __init__(self, c, G, h):
        n = len(c)
        m = len(G)
        self.n = n
        self.nonbasic = list(range(n))
        self.basic = [n + i for i in range(m)]
        # slack_i = h_i - G_i x
        self.rows = [[-g for g in G[i]] for i in range(m)]
        self.consts = list(h)
        self.obj = list(c)
        self.obj_const = _ZERO

    def _is_free(self, var):
        return var < self.n

    def _pivot(self, r, e):
        """Basic row ``r`` leaves, nonbasic slot ``e`` enters."""
        row = self.rows[r]
        a_e = row[e]
        inv = -1 / a_e
        new_row = [v * inv for v in row]
        new_row[e] = 1 / a_e
        new_const = self.consts[r] * inv
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            c_e = other[e]
            if c_e == 0:
                continue
            for j, v in enumerate(new_row):
                if j == e:
                    other[j] = c_e * v
                elif v != 0:
                    other[j] += c_e * v
            self.consts[i] += c_e * new_const
        c_e = self.obj[e]
        if c_e != 0:
            for j, v in enumerate(new_row):
                if j == e:
                    self.obj[j] = c_e * v
                elif v != 0:
                    self.obj[j] += c_e * v
            self.obj_const += c_e * new_const
        self.rows[r] = new_row
        self.consts[r] = new_const
        self.basic[r], self.nonbasic[e] = self.nonbasic[e], self.basic[r]

    def _ratio(self, e, direction):
        """Blocking row when nonbasic slot ``e`` moves in ``direction`` (Bland ties)."""
        best = None
        best_ratio = None
        for i, row in enumerate(self.rows):
            if self._is_free(self.basic[i]):
                continue
            a = row[e] * direction
            if a < 0:
                ratio = self.consts[i] / -a
                if (
                    best is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and self.basic[i] < self.basic[best])
                ):
                    best, best_ratio = i, ratio
        return best

    def run(self):
        # Bring every free variable into the basis; afterwards it never leaves.
        for e in range(len(self.nonbasic)):
            var = self.nonbasic[e]
            if not self._is_free(var):
                continue
            first = 1 if self.obj[e] >= 0 else -1
            for direction in (first, -first):
                r = self._ratio(e, direction)
                if r is not None:
                    self._pivot(r, e)
                    break
                if self.obj[e] * direction > 0:
                    return "unbounded"
            # a free variable absent from every row stays nonbasic at zero
        while True:
            e = None
            for j, var in enumerate(self.nonbasic):
                if self._is_free(var):
                    continue
                if self.obj[j] > 0 and (e is None or var < self.nonbasic[e]):
                    e = j
            if e is None:
                return "optimal"
            r = self._ratio(e, 1)
            if r is None:
                return "unbounded"
            self._pivot(r, e)

    def solution(self):
        x = [_ZERO] * self.n
        for i, var in enumerate(self.basic):
            if var < self.n:
                x[var] = self.consts[i]
        return x


def _maximize_from_origin(c, G, h):
    """Solve with ``x = 0`` feasible (all ``h >= 0``)."""
    d = _Dictionary(c, G, h)
    status = d.run()
    if status != "optimal":
        return status, None
    return status, d.solution()


def linprog(c, G=(), h=(), E=(), f=()):
    """Maximize ``c.x`` subject to ``G x <= h`` and ``E x = f`` (x free), exactly."""
    c = [Fraction(v) for v in c]
    n = len(c)
    G = [[Fraction(v) for v in row] for row in G]
    h = [Fraction(v) for v in h]
    if E:
        param = solve_affine(E, [Fraction(v) for v in f], n)
        if param is None:
            return LPResult("infeasible")
        x0, basis = param
    else:
        x0 = tuple([_ZERO] * n)
        basis = [tuple(_ONE if i == j else _ZERO for i in range(n)) for j in range(n)]
    k = len(basis)
    # reduced problem in z: x = x0 + B z
    Gz = [[sum((g * b[j] for j, g in enumerate(row) if g != 0), _ZERO) for b in basis] for row in G]
    hz = [hi - sum((g * x0[j] for j, g in enumerate(row) if g != 0), _ZERO) for row, hi in zip(G, h)]
    cz = [sum((cj * b[j] for j, cj in enumerate(c) if cj != 0), _ZERO) for b in basis]

    start = [_ZERO] * k
    worst = min(hz, default=_ZERO)
    if worst < 0:
        # auxiliary variable tau (shifted so the origin is feasible): G z - tau <= hz + s0, -tau <= s0
        s0 = -worst
        G_aux = [row + [-_ONE] for row in Gz] + [[_ZERO] * k + [-_ONE]]
        h_aux = [v + s0 for v in hz] + [s0]
        status, sol = _maximize_from_origin([_ZERO] * k + [-_ONE], G_aux, h_aux)
        if status != "optimal" or sol[k] != -s0:
            return LPResult("infeasible")
        start = sol[:k]
        hz = [hi - sum((g * s for g, s in zip(row, start) if g != 0), _ZERO) for row, hi in zip(Gz, hz)]
    status, w = _maximize_from_origin(cz, Gz, hz)
    if status != "optimal":
        return LPResult(status)
    z = [a + b for a, b in zip(start, w)]
    x = tuple(x0[j] + sum((zi * b[j] for zi, b in zip(z, basis) if zi != 0), _ZERO) for j in range(n))
    value = sum((cj * xj for cj, xj in zip(c, x)), _ZERO)
    return LPResult("optimal", x, value)
