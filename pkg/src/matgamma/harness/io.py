"""Matrix file formats.

JSON is the canonical format and is lossless for finite binary64
values: {"n": n, "name": optional, "entries": [[[re, im], ...], ...]}.
CSV is accepted as a convenience (n rows of n comma-separated numeric
tokens; Python complex literals like 1+2j are allowed).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import MalformedInputError
from ..linalg import as_matrix


@dataclass(frozen=True)
class MatrixDocument:
    """A validated square complex matrix with an optional name."""

    n: int
    entries: np.ndarray
    name: str | None = None

    @classmethod
    def from_matrix(cls, a, name: str | None = None) -> "MatrixDocument":
        a = as_matrix(a)
        return cls(n=a.shape[0], entries=a, name=name)

    def to_matrix(self) -> np.ndarray:
        return np.array(self.entries, dtype=complex)


def document_from_obj(obj) -> MatrixDocument:
    """Build a MatrixDocument from a parsed JSON object, validating
    shape, types and finiteness."""
    if not isinstance(obj, dict):
        raise MalformedInputError("matrix document must be a JSON object")
    try:
        n = obj["n"]
        entries = obj["entries"]
    except KeyError as exc:
        raise MalformedInputError(f"matrix document misses key {exc}") from exc
    name = obj.get("name")
    if name is not None and not isinstance(name, str):
        raise MalformedInputError("matrix name must be a string")
    if not isinstance(n, int) or n < 1:
        raise MalformedInputError(f"order must be a positive integer, got {n!r}")
    try:
        arr = np.asarray(entries, dtype=float)
    except (TypeError, ValueError) as exc:
        raise MalformedInputError(f"entries are not numeric pairs: {exc}") from exc
    if arr.shape != (n, n, 2):
        raise MalformedInputError(
            f"entries must form an {n}x{n} grid of [re, im] pairs, "
            f"got shape {arr.shape}"
        )
    matrix = arr[..., 0] + 1j * arr[..., 1]
    try:
        matrix = as_matrix(matrix)
    except MalformedInputError:
        raise
    return MatrixDocument(n=n, entries=matrix, name=name)


def document_to_obj(doc: MatrixDocument) -> dict:
    a = doc.to_matrix()
    obj = {
        "n": doc.n,
        "entries": [
            [[float(z.real), float(z.imag)] for z in row] for row in a
        ],
    }
    if doc.name is not None:
        obj["name"] = doc.name
    return obj


def loads_json(text: str) -> MatrixDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"invalid JSON: {exc}") from exc
    return document_from_obj(obj)


def dumps_json(doc: MatrixDocument) -> str:
    # json emits repr-quality floats, so this round-trips bit-exactly
    return json.dumps(document_to_obj(doc), indent=2, sort_keys=True) + "\n"


def _format_token(z: complex) -> str:
    if z.imag == 0.0:
        return repr(z.real)
    return repr(z).strip("()")


def _parse_token(token: str) -> complex:
    try:
        return complex(token.strip().strip("()"))
    except ValueError as exc:
        raise MalformedInputError(f"bad matrix entry {token!r}") from exc


def loads_csv(text: str) -> MatrixDocument:
    rows = [line for line in text.splitlines() if line.strip()]
    if not rows:
        raise MalformedInputError("CSV matrix file is empty")
    parsed = [[_parse_token(tok) for tok in row.split(",")] for row in rows]
    n = len(parsed)
    if any(len(row) != n for row in parsed):
        raise MalformedInputError(
            f"CSV matrix must be square; got {n} rows with lengths "
            f"{[len(r) for r in parsed]}"
        )
    return MatrixDocument.from_matrix(np.array(parsed, dtype=complex))


def dumps_csv(doc: MatrixDocument) -> str:
    a = doc.to_matrix()
    lines = [",".join(_format_token(complex(z)) for z in row) for row in a]
    return "\n".join(lines) + "\n"


def read_matrix(path) -> MatrixDocument:
    """Load a matrix file, dispatching on the .csv suffix (JSON otherwise)."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise MalformedInputError(f"cannot read {path}: {exc}") from exc
    if path.suffix.lower() == ".csv":
        return loads_csv(text)
    return loads_json(text)


def write_matrix(path, doc: MatrixDocument, fmt: str | None = None) -> None:
    """Write a matrix file as JSON or CSV; fmt defaults from the suffix."""
    path = Path(path)
    if fmt is None:
        fmt = "csv" if path.suffix.lower() == ".csv" else "json"
    if fmt == "json":
        path.write_text(dumps_json(doc))
    elif fmt == "csv":
        path.write_text(dumps_csv(doc))
    else:
        raise MalformedInputError(f"unknown output format {fmt!r}")
