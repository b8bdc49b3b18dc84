"""CSV readers/writers for patterns and regression samples."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

SAMPLE_COLUMNS = ("phi1", "phi2", "code", "variant", "measured_weight")
OPTIONAL_SAMPLE_COLUMNS = ("measured_leak",)


class FormatError(ValueError):
    pass


def _is_number(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def read_patterns(path: str | Path) -> tuple[np.ndarray, np.ndarray]:
    """One pattern per row, label in the last column; a non-numeric first row is a header."""
    X, labels = [], []
    with Path(path).open(newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not c.strip() for c in row):
                continue
            if lineno == 1 and not all(_is_number(c) for c in row):
                continue
            try:
                vals = [float(c) for c in row]
            except ValueError:
                raise FormatError(f"{path}: line {lineno}: non-numeric value") from None
            label = vals[-1]
            if label != int(label) or label < 0:
                raise FormatError(f"{path}: line {lineno}: label must be a non-negative integer")
            if X and len(vals) - 1 != len(X[0]):
                raise FormatError(f"{path}: line {lineno}: expected {len(X[0]) + 1} columns, got {len(vals)}")
            X.append(vals[:-1])
            labels.append(int(label))
    if not X:
        raise FormatError(f"{path}: no patterns")
    return np.asarray(X, dtype=float), np.asarray(labels, dtype=int)


def write_patterns(path: str | Path, X, labels) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        X = np.asarray(X)
        w.writerow([f"x{k}" for k in range(X.shape[1])] + ["label"])
        for x, lab in zip(X, labels):
            w.writerow([repr(float(v)) for v in x] + [int(lab)])


def read_samples(path: str | Path) -> list[tuple]:
    """Regression samples as (phi1, phi2, code, variant, measured_weight, measured_leak|None)."""
    with Path(path).open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise FormatError("no samples")
        fields = [f.strip() for f in reader.fieldnames]
        missing = [c for c in SAMPLE_COLUMNS if c not in fields]
        if missing:
            raise FormatError(f"schema error: missing column(s) {', '.join(missing)}")
        reader.fieldnames = fields
        has_leak = "measured_leak" in fields
        rows = []
        for row in reader:
            lineno = reader.line_num
            try:
                code = float(row["code"])
                if code != int(code):
                    raise ValueError
                rows.append((
                    float(row["phi1"]),
                    float(row["phi2"]),
                    int(code),
                    row["variant"].strip(),
                    float(row["measured_weight"]),
                    float(row["measured_leak"]) if has_leak and row["measured_leak"] not in ("", None) else None,
                ))
            except (TypeError, ValueError):
                raise FormatError(f"line {lineno}: malformed sample row") from None
    if not rows:
        raise FormatError("no samples")
    return rows


def write_samples(path: str | Path, rows) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(SAMPLE_COLUMNS + OPTIONAL_SAMPLE_COLUMNS)
        for phi1, phi2, code, variant, weight, *rest in rows:
            leak = rest[0] if rest else None
            w.writerow([repr(phi1), repr(phi2), code, variant, repr(weight), "" if leak is None else repr(leak)])
