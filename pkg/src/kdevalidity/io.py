"""CSV ingestion for datasets and label files."""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .errors import InputMismatch, ParseError, SchemaError
from .types import BINARY, CONTINUOUS, Clustering, DataSet

_KINDS = {"c": CONTINUOUS, "b": BINARY}
_MISSING = {"", "na", "nan"}


def parse_variable_spec(spec: str | None, ncols: int) -> list[str]:
    """Expand a spec such as ``"c,c,b"`` or ``"b,c*10"``; ``None`` means all continuous."""
    if spec is None or spec.strip() == "":
        return [CONTINUOUS] * ncols
    kinds = []
    for token in spec.replace(" ", "").split(","):
        code, star, count = token.partition("*")
        if code not in _KINDS:
            raise SchemaError(f"unknown variable kind {code!r} in spec (use c or b)")
        if count == "":
            reps = ncols - len(kinds) if star else 1
        else:
            try:
                reps = int(count)
            except ValueError:
                raise SchemaError(f"bad repeat count in spec token {token!r}") from None
        kinds.extend([_KINDS[code]] * reps)
    if len(kinds) != ncols:
        raise SchemaError(f"spec describes {len(kinds)} columns, file has {ncols}")
    return kinds


def ingest_csv(path, spec: str | None = None) -> DataSet:
    """Read a headed, comma-separated numeric table.

    A first column named ``id`` holds member identifiers.  Empty and ``NA``
    cells are missing values.  Binary columns may hold only 0 and 1.
    """
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ParseError(f"{path}: empty file (header row required)")
    header = [h.strip() for h in rows[0]]
    body = [r for r in rows[1:] if any(cell.strip() for cell in r)]
    has_id = bool(header) and header[0].lower() == "id"
    columns = header[1:] if has_id else header
    kinds = parse_variable_spec(spec, len(columns))
    values = np.empty((len(body), len(columns)))
    ids = []
    for i, row in enumerate(body, start=2):
        if len(row) != len(header):
            raise ParseError(f"{path}: row {i} has {len(row)} cells, header has {len(header)}")
        if has_id:
            ids.append(row[0].strip())
            row = row[1:]
        for j, cell in enumerate(row):
            cell = cell.strip()
            if cell.lower() in _MISSING:
                values[i - 2, j] = np.nan
                continue
            try:
                values[i - 2, j] = float(cell)
            except ValueError:
                raise ParseError(
                    f"{path}: row {i}, column {j + 1 + has_id} ({columns[j]!r}): "
                    f"cannot parse {cell!r}"
                ) from None
    for j, kind in enumerate(kinds):
        col = values[:, j]
        if kind == BINARY and not np.all(np.isin(col[~np.isnan(col)], (0.0, 1.0))):
            raise SchemaError(f"binary column {columns[j]!r} holds values other than 0/1")
    if has_id and len(set(ids)) != len(ids):
        raise SchemaError("duplicate member ids")
    return DataSet(values, kinds, ids if has_id else None, columns)


def read_labels(path, data: DataSet | None = None) -> Clustering:
    """Read a ``member_id,label`` CSV; order follows the dataset when given."""
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if any(c.strip() for c in r)]
    if not rows:
        raise ParseError(f"{path}: empty labels file")
    if rows[0][0].strip().lower() in ("member_id", "id"):
        rows = rows[1:]
    mapping = {}
    for i, row in enumerate(rows, start=1):
        if len(row) != 2:
            raise ParseError(f"{path}: line {i} needs exactly two cells")
        try:
            mapping[row[0].strip()] = int(row[1])
        except ValueError:
            raise ParseError(f"{path}: line {i}: label {row[1]!r} is not an integer") from None
    ids = list(mapping) if data is None else list(data.ids)
    if data is not None:
        missing = [m for m in ids if m not in mapping]
        extra = [m for m in mapping if m not in set(ids)]
        if missing or extra:
            raise InputMismatch(f"labels do not match data: missing {missing[:5]}, extra {extra[:5]}")
    labels = np.array([mapping[m] for m in ids])
    k = int(labels.max())
    empty = sorted(set(range(1, k + 1)) - set(labels.tolist()))
    if labels.min() < 1 or empty:
        raise InputMismatch(f"cluster ids must cover 1..{k}; empty or invalid: {empty or labels.min()}")
    return Clustering(labels, k)


def write_labels(clustering: Clustering, ids, path) -> None:
    with open(Path(path), "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["member_id", "label"])
        for m, lab in zip(ids, clustering.labels.tolist()):
            writer.writerow([m, lab])
