"""Matrix text files and JSON documents.

Matrix files: ``#`` comment lines are ignored, the first data line holds
``rows cols``, followed by ``rows`` lines of ``cols`` integers.
"""
from __future__ import annotations

import json
from pathlib import Path

from .equivalence import SeCertificate
from .matrix import IntMatrix
from .moves import KINDS, Move, MoveSequence


class MatrixFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line, self.column = line, column


def _data_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            yield no, raw


def _ints(no: int, raw: str) -> list[int]:
    out = []
    col = 0
    for tok in raw.split():
        col = raw.index(tok, col) + 1
        try:
            out.append(int(tok, 10))
        except ValueError:
            raise MatrixFormatError(f"not an integer: {tok!r}", no, col) from None
        col += len(tok) - 1
    return out


def parse_matrix(text: str) -> IntMatrix:
    lines = list(_data_lines(text))
    if not lines:
        raise MatrixFormatError("empty matrix file")
    no, header = lines[0]
    dims = _ints(no, header)
    if len(dims) != 2 or dims[0] < 1 or dims[1] < 1:
        raise MatrixFormatError("header must be two positive integers 'rows cols'", no)
    rows, cols = dims
    body = lines[1:]
    if len(body) != rows:
        raise MatrixFormatError(f"wrong entry count: expected {rows} rows, found {len(body)}",
                                body[-1][0] if body else no)
    data = []
    for no, raw in body:
        vals = _ints(no, raw)
        if len(vals) != cols:
            raise MatrixFormatError(f"wrong entry count: expected {cols} entries, found {len(vals)}", no)
        data.append(vals)
    return IntMatrix(data)


def format_matrix(m: IntMatrix, comment: str | None = None) -> str:
    head = f"# {comment}\n" if comment else ""
    body = "\n".join(" ".join(str(x) for x in r) for r in m.iter_rows())
    return f"{head}{m.rows} {m.cols}\n{body}\n"


def read_matrix(path: str | Path) -> IntMatrix:
    return parse_matrix(Path(path).read_text())


# -- JSON --------------------------------------------------------------------

def matrix_from_json(obj, name: str = "matrix") -> IntMatrix:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise MatrixFormatError(f"{name} must be a non-empty list of rows")
    if not all(isinstance(x, int) and not isinstance(x, bool) for r in obj for x in r):
        raise MatrixFormatError(f"{name} must contain integers only")
    try:
        return IntMatrix(obj)
    except ValueError as exc:
        raise MatrixFormatError(f"{name}: {exc}") from None


def certificate_from_json(obj: dict, lag: int | None = None) -> SeCertificate:
    try:
        mats = {k: matrix_from_json(obj[k], k) for k in ("A", "B", "R", "S")}
        lag = obj["lag"] if lag is None else lag
    except KeyError as exc:
        raise MatrixFormatError(f"certificate is missing {exc.args[0]!r}") from None
    if not isinstance(lag, int) or lag < 1:
        raise MatrixFormatError("lag must be a positive integer")
    return SeCertificate(mats["A"], mats["B"], mats["R"], mats["S"], lag)


def move_to_json(move: Move) -> dict:
    return {"kind": move.kind, "from": move.source.tolist(), "to": move.target.tolist(),
            "matrices": {k: v.tolist() for k, v in move.mats.items()}}


def move_from_json(obj: dict) -> Move:
    kind = obj.get("kind")
    if kind not in KINDS:
        raise MatrixFormatError(f"unknown move kind {kind!r}")
    mats = {k: matrix_from_json(v, k) for k, v in obj.get("matrices", {}).items()}
    return Move(kind, matrix_from_json(obj["from"], "from"), matrix_from_json(obj["to"], "to"), mats)


def sequence_to_json(seq: MoveSequence) -> dict:
    return {"start": seq.start.tolist(), "steps": [move_to_json(m) for m in seq.steps]}


def sequence_from_json(obj: dict) -> MoveSequence:
    return MoveSequence(matrix_from_json(obj["start"], "start"),
                        tuple(move_from_json(m) for m in obj.get("steps", [])))


def load_json(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
