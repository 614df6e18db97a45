"""JSON round-trips for datasets, rationalizations and decision makers.

Numbers are written as reduced rational strings (``"1/2"``, ``"-3"``).
On input, rational strings, decimal strings and JSON numbers are all accepted
and converted exactly, so ``"0.25"`` and ``0.25`` both become ``1/4``.
"""
from __future__ import annotations

import json
from decimal import Decimal
from fractions import Fraction
from pathlib import Path

from ._validation import as_fraction
from .exceptions import SchemaError, ValidationError
from .model import ChoiceRule, Dataset, InformationStructure, Rationalization, UtilityMatrix, posteriors_from_signals


def fmt(x: Fraction) -> str:
    return str(Fraction(x))


def _vec_out(v):
    return [fmt(x) for x in v]


def _mat_out(m):
    return [_vec_out(r) for r in m]


def _number(value, where):
    if isinstance(value, (str, int, Decimal)) and not isinstance(value, bool):
        try:
            return as_fraction(value)
        except ValidationError as exc:
            raise SchemaError(f"{where}: {exc}") from None
    raise SchemaError(f"{where}: expected a rational string or number, got {type(value).__name__}")


def _vector(doc, key, where="document"):
    value = _field(doc, key, where)
    if not isinstance(value, list):
        raise SchemaError(f"{where}.{key}: expected an array")
    return tuple(_number(v, f"{where}.{key}[{i}]") for i, v in enumerate(value))


def _matrix(doc, key, where="document"):
    value = _field(doc, key, where)
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise SchemaError(f"{where}.{key}: expected an array of arrays")
    return tuple(
        tuple(_number(v, f"{where}.{key}[{i}][{j}]") for j, v in enumerate(row))
        for i, row in enumerate(value)
    )


def _field(doc, key, where="document"):
    if not isinstance(doc, dict):
        raise SchemaError(f"{where}: expected a JSON object")
    if key not in doc:
        raise SchemaError(f"{where}: missing field {key!r}")
    return doc[key]


def _labels(doc, key, n, prefix):
    if key not in doc:
        return tuple(f"{prefix}{i + 1}" for i in range(n))
    value = doc[key]
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise SchemaError(f"document.{key}: expected an array of strings")
    return tuple(value)


def parse_json(text: str, source: str = "<string>"):
    try:
        return json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{source}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _read(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror}") from None
    return parse_json(text, str(path))


def _write(path, doc):
    Path(path).write_text(dumps(doc))


def dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def dataset_to_dict(d: Dataset) -> dict:
    return {
        "states": list(d.states),
        "actions": list(d.actions),
        "prior": _vec_out(d.prior),
        "q": _mat_out(d.q),
    }


def dataset_from_dict(doc) -> Dataset:
    prior = _vector(doc, "prior")
    q = _matrix(doc, "q")
    states = _labels(doc, "states", len(prior), "theta")
    actions = _labels(doc, "actions", len(q[0]) if q else 0, "a")
    return Dataset(prior, q, states, actions)


def load_dataset(path) -> Dataset:
    return dataset_from_dict(_read(path))


def save_dataset(path, d: Dataset) -> None:
    _write(path, dataset_to_dict(d))


def rationalization_to_dict(r: Rationalization, d: Dataset | None = None) -> dict:
    doc = {}
    if d is not None:
        doc["states"] = list(d.states)
        doc["actions"] = list(d.actions)
    doc.update({
        "prior": _vec_out(r.info.prior),
        "utility": _mat_out(r.utility.values),
        "posteriors": _mat_out(r.info.posteriors),
        "pi": _mat_out(r.info.pi),
        "choice": _mat_out(r.choice.c),
        "method": r.method,
        "strict": r.strict,
    })
    return doc


def rationalization_from_dict(doc, prior=None) -> Rationalization:
    """Parse a rationalization; ``prior`` fills in a missing ``"prior"`` field."""
    if "prior" in doc or prior is None:
        prior = _vector(doc, "prior")
    utility = UtilityMatrix(_matrix(doc, "utility"))
    info = InformationStructure(_matrix(doc, "posteriors"), _matrix(doc, "pi"), prior)
    choice = ChoiceRule(_matrix(doc, "choice"))
    method = doc.get("method", "external")
    strict = doc.get("strict", True)
    if not isinstance(method, str) or not isinstance(strict, bool):
        raise SchemaError("document: 'method' must be a string and 'strict' a boolean")
    return Rationalization(utility, info, choice, method, strict)


def load_rationalization(path, prior=None) -> Rationalization:
    return rationalization_from_dict(_read(path), prior)


def save_rationalization(path, r: Rationalization, d: Dataset | None = None) -> None:
    _write(path, rationalization_to_dict(r, d))


def dm_from_dict(doc):
    """Decision maker: ``utility`` plus ``prior`` and either ``signals`` or ``posteriors``/``pi``.

    Returns ``(utility, info, choice_or_None, states, actions)``.
    """
    utility = UtilityMatrix(_matrix(doc, "utility"))
    prior = _vector(doc, "prior")
    if "signals" in doc:
        info = posteriors_from_signals(_matrix(doc, "signals"), prior)
    else:
        info = InformationStructure(_matrix(doc, "posteriors"), _matrix(doc, "pi"), prior)
    choice = ChoiceRule(_matrix(doc, "choice")) if "choice" in doc else None
    states = _labels(doc, "states", len(prior), "theta")
    actions = _labels(doc, "actions", utility.n_actions, "a")
    return utility, info, choice, states, actions


def load_dm(path):
    return dm_from_dict(_read(path))
