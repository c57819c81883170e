"""Portable serialization of encoded restrictions.

The text format is line-oriented and canonical: coefficients are exact
fraction strings (``-3``, ``1/2``), term lines are sorted by index pair, and
serializing a parsed file reproduces it byte for byte.  A JSON mirror with
the same fields exists for programmatic consumers; the text form is the one
golden files are written against.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Union

from .core import EncodedRestriction, EncodingKind, QuboModel

MAGIC = "qubo-restriction v1"

_REQUIRED_KEYS = (
    "kind",
    "n_total",
    "n_problem",
    "n_dummies",
    "lambda1",
    "residual_energy",
    "offset",
)


class QuboFileError(ValueError):
    """The file is not a well-formed encoded restriction."""


def dumps(encoded: EncodedRestriction) -> str:
    """Canonical text form of an encoded restriction."""
    model = encoded.model
    lines = [
        MAGIC,
        f"kind {encoded.kind.value}",
        f"n_total {model.n_total}",
        f"n_problem {model.n_problem}",
        f"n_dummies {encoded.n_dummies}",
        f"lambda1 {encoded.lambda1}",
    ]
    if encoded.lambda2 is not None:
        lines.append(f"lambda2 {encoded.lambda2}")
    lines.append(f"residual_energy {encoded.residual_energy}")
    lines.append(f"offset {model.offset}")
    items = sorted(model.coeffs.items())
    lines.append(f"terms {len(items)}")
    for (i, j), q in items:
        lines.append(f"{i} {j} {q}")
    return "\n".join(lines) + "\n"


def _parse_fraction(token: str, context: str) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise QuboFileError(f"{context}: bad rational {token!r}") from exc


def _parse_int(token: str, context: str) -> int:
    try:
        return int(token)
    except ValueError as exc:
        raise QuboFileError(f"{context}: bad integer {token!r}") from exc


def _build(
    kind_token: str,
    n_total: int,
    n_problem: int,
    n_dummies: int,
    lambda1: Fraction,
    lambda2: Union[Fraction, None],
    residual: Fraction,
    offset: Fraction,
    coeffs: dict[tuple[int, int], Fraction],
) -> EncodedRestriction:
    try:
        kind = EncodingKind(kind_token)
    except ValueError as exc:
        raise QuboFileError(f"unknown encoding kind {kind_token!r}") from exc
    try:
        model = QuboModel(
            n_total=n_total, n_problem=n_problem, coeffs=coeffs, offset=offset)
        return EncodedRestriction(
            model=model,
            kind=kind,
            n_dummies=n_dummies,
            residual_energy=residual,
            lambda1=lambda1,
            lambda2=lambda2,
        )
    except ValueError as exc:
        raise QuboFileError(f"inconsistent file contents: {exc}") from exc


def loads(text: str) -> EncodedRestriction:
    """Parse the canonical text form."""
    lines = text.splitlines()
    if not lines or lines[0] != MAGIC:
        raise QuboFileError(f"first line must be {MAGIC!r}")
    header: dict[str, str] = {}
    cursor = 1
    n_terms = None
    while cursor < len(lines):
        line = lines[cursor]
        cursor += 1
        key, _, value = line.partition(" ")
        if not key or not value:
            raise QuboFileError(f"line {cursor}: expected 'key value', got {line!r}")
        if key == "terms":
            n_terms = _parse_int(value, f"line {cursor}")
            break
        if key in header:
            raise QuboFileError(f"line {cursor}: duplicate key {key!r}")
        header[key] = value
    if n_terms is None:
        raise QuboFileError("truncated file: no terms section")
    missing = [key for key in _REQUIRED_KEYS if key not in header]
    if missing:
        raise QuboFileError(f"missing header keys: {', '.join(missing)}")
    unknown = set(header) - set(_REQUIRED_KEYS) - {"lambda2"}
    if unknown:
        raise QuboFileError(f"unknown header keys: {', '.join(sorted(unknown))}")

    term_lines = lines[cursor:]
    if len(term_lines) != n_terms:
        raise QuboFileError(
            f"terms section announces {n_terms} lines but {len(term_lines)} follow")
    coeffs: dict[tuple[int, int], Fraction] = {}
    for offset_line, line in enumerate(term_lines):
        where = f"line {cursor + offset_line + 1}"
        parts = line.split()
        if len(parts) != 3:
            raise QuboFileError(f"{where}: expected 'i j coefficient', got {line!r}")
        i = _parse_int(parts[0], where)
        j = _parse_int(parts[1], where)
        if (i, j) in coeffs:
            raise QuboFileError(f"{where}: duplicate term ({i}, {j})")
        coeffs[(i, j)] = _parse_fraction(parts[2], where)

    lambda2 = (
        _parse_fraction(header["lambda2"], "header lambda2")
        if "lambda2" in header
        else None
    )
    return _build(
        kind_token=header["kind"],
        n_total=_parse_int(header["n_total"], "header n_total"),
        n_problem=_parse_int(header["n_problem"], "header n_problem"),
        n_dummies=_parse_int(header["n_dummies"], "header n_dummies"),
        lambda1=_parse_fraction(header["lambda1"], "header lambda1"),
        lambda2=lambda2,
        residual=_parse_fraction(header["residual_energy"], "header residual_energy"),
        offset=_parse_fraction(header["offset"], "header offset"),
        coeffs=coeffs,
    )


def dumps_json(encoded: EncodedRestriction) -> str:
    """JSON mirror of the text form (same fields, exact fraction strings)."""
    model = encoded.model
    payload = {
        "format": MAGIC,
        "kind": encoded.kind.value,
        "n_total": model.n_total,
        "n_problem": model.n_problem,
        "n_dummies": encoded.n_dummies,
        "lambda1": str(encoded.lambda1),
        "lambda2": None if encoded.lambda2 is None else str(encoded.lambda2),
        "residual_energy": str(encoded.residual_energy),
        "offset": str(model.offset),
        "terms": [[i, j, str(q)] for (i, j), q in sorted(model.coeffs.items())],
    }
    return json.dumps(payload, indent=2) + "\n"


def loads_json(text: str) -> EncodedRestriction:
    """Parse the JSON mirror."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise QuboFileError(f"invalid JSON: {exc}") from exc
    if not isinstance(payload, dict) or payload.get("format") != MAGIC:
        raise QuboFileError(f"JSON payload must declare format {MAGIC!r}")
    try:
        raw_terms = payload["terms"]
        coeffs: dict[tuple[int, int], Fraction] = {}
        for entry in raw_terms:
            i, j, q = entry
            coeffs[(int(i), int(j))] = _parse_fraction(str(q), "terms entry")
        lambda2 = payload.get("lambda2")
        return _build(
            kind_token=str(payload["kind"]),
            n_total=int(payload["n_total"]),
            n_problem=int(payload["n_problem"]),
            n_dummies=int(payload["n_dummies"]),
            lambda1=_parse_fraction(str(payload["lambda1"]), "lambda1"),
            lambda2=None if lambda2 is None else _parse_fraction(str(lambda2), "lambda2"),
            residual=_parse_fraction(str(payload["residual_energy"]), "residual_energy"),
            offset=_parse_fraction(str(payload["offset"]), "offset"),
            coeffs=coeffs,
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, QuboFileError):
            raise
        raise QuboFileError(f"malformed JSON payload: {exc}") from exc


def load(path: Union[str, Path]) -> EncodedRestriction:
    """Read either serialization format, sniffing JSON by its leading brace."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return loads_json(text)
    return loads(text)


def save(encoded: EncodedRestriction, path: Union[str, Path], fmt: str = "text") -> None:
    if fmt == "text":
        Path(path).write_text(dumps(encoded))
    elif fmt == "json":
        Path(path).write_text(dumps_json(encoded))
    else:
        raise ValueError(f"unknown format {fmt!r}")
