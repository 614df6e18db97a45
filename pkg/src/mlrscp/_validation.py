"""Input validation and exact-rational coercion helpers."""
from __future__ import annotations

from decimal import Decimal
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .exceptions import DimensionError, ValidationError

Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[tuple[Fraction, ...], ...]


def as_fraction(value) -> Fraction:
    """Convert ``value`` to an exact :class:`Fraction`.

    Strings may be ``"p/q"`` or decimal literals (``"0.25"`` -> 1/4). Floats are
    converted through their shortest repr, so ``0.1`` becomes ``1/10`` rather
    than the binary expansion.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValidationError(f"booleans are not numbers: {value!r}")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise ValidationError(f"non-finite number {value!r}")
        return Fraction(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValidationError(f"non-finite number {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"cannot parse {value!r} as a rational") from exc
    raise ValidationError(f"cannot interpret {value!r} as a rational")


def as_vector(values: Iterable) -> Vector:
    return tuple(as_fraction(v) for v in values)


def as_matrix(rows: Iterable[Iterable], n_cols: int | None = None) -> Matrix:
    """Coerce a nested sequence to a rectangular tuple-of-tuples of Fractions."""
    out = tuple(as_vector(row) for row in rows)
    if out:
        width = len(out[0]) if n_cols is None else n_cols
        for i, row in enumerate(out):
            if len(row) != width:
                raise DimensionError(f"row {i} has {len(row)} entries, expected {width}")
    return out


def check_distribution(vec: Sequence[Fraction], name: str = "distribution") -> None:
    if any(v < 0 for v in vec):
        raise ValidationError(f"{name} has a negative entry")
    if sum(vec) != 1:
        raise ValidationError(f"{name} sums to {sum(vec)}, not 1")


def check_row_stochastic(mat: Matrix, name: str = "matrix") -> None:
    for i, row in enumerate(mat):
        check_distribution(row, f"{name} row {i}")


def check_length(vec: Sequence, n: int, name: str) -> None:
    if len(vec) != n:
        raise DimensionError(f"{name} has length {len(vec)}, expected {n}")


def transpose(mat: Matrix) -> Matrix:
    return tuple(zip(*mat)) if mat else ()


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))
