"""CSV adapter: load tabular files into the Dataset type.

Feature cells must be numeric and complete (missing values are rejected,
not imputed). Classification targets are label-encoded by first
appearance so loading stays deterministic.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .datagen import CLASSIFICATION, REGRESSION, Dataset
from .errors import (
    MissingTargetColumnError,
    NonNumericFeatureError,
    ParseError,
    SpecInvalidError,
)


@dataclass(frozen=True)
class CsvAdapterSpec:
    path: str
    target_column: str
    task: str = CLASSIFICATION
    has_header: bool = True
    name: str = ""

    def validate(self) -> None:
        if self.task not in (CLASSIFICATION, REGRESSION):
            raise SpecInvalidError(f"unknown task {self.task!r}")


def load_csv(spec: CsvAdapterSpec) -> Dataset:
    spec.validate()
    path = Path(spec.path)
    if not path.exists():
        raise FileNotFoundError(str(path))

    with open(path, newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if not rows:
        raise ParseError(f"{path}: file is empty")

    if spec.has_header:
        header = [h.strip() for h in rows[0]]
        body = rows[1:]
        if spec.target_column not in header:
            raise MissingTargetColumnError(
                f"{path}: no column named {spec.target_column!r}")
        target_idx = header.index(spec.target_column)
    else:
        body = rows
        try:
            target_idx = int(spec.target_column)
        except ValueError:
            raise MissingTargetColumnError(
                "without a header, target_column must be a column index") from None
        if not 0 <= target_idx < len(rows[0]):
            raise MissingTargetColumnError(
                f"target column index {target_idx} out of range")
    if not body:
        raise ParseError(f"{path}: no data rows")

    width = len(body[0])
    X = np.empty((len(body), width - 1))
    raw_targets = []
    for r, row in enumerate(body):
        if len(row) != width:
            raise ParseError(f"{path}: row {r} has {len(row)} cells, expected {width}", row=r)
        k = 0
        for c, cell in enumerate(row):
            if c == target_idx:
                raw_targets.append(cell.strip())
                continue
            try:
                X[r, k] = float(cell)
            except ValueError:
                raise NonNumericFeatureError(
                    f"{path}: non-numeric feature cell at row {r}, column {c}: {cell!r}",
                    row=r, col=c) from None
            if not np.isfinite(X[r, k]):
                raise NonNumericFeatureError(
                    f"{path}: missing or non-finite value at row {r}, column {c}",
                    row=r, col=c)
            k += 1

    if spec.task == CLASSIFICATION:
        seen: dict[str, int] = {}
        y = np.empty(len(raw_targets), dtype=np.int64)
        for i, label in enumerate(raw_targets):
            if label not in seen:
                seen[label] = len(seen)
            y[i] = seen[label]
    else:
        y = np.empty(len(raw_targets))
        for i, label in enumerate(raw_targets):
            try:
                y[i] = float(label)
            except ValueError:
                raise ParseError(
                    f"{path}: non-numeric regression target at row {i}: {label!r}",
                    row=i) from None

    name = spec.name or path.stem
    return Dataset(X=X, y=y, task=spec.task, name=name)
