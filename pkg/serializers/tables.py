"""
CSV tables.

Grid and action tables put n1 down the rows and n2 across the columns; the
header cell reads ``n1/n2``. Dataset files carry one header line, feature
columns first and then one ``D<n1>`` column per label.
"""

import csv
import io
from typing import List, Optional

import numpy as np

from errors import ConfigError
from generators import FEATURE_NAMES, Dataset
from solver import ThresholdPolicy, ValueGrid
from utils import format_number


def _write_rows(rows: List[List[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerows(rows)
    return buffer.getvalue()


def grid_to_csv(grid: ValueGrid, precision: Optional[int] = 2) -> str:
    """Value grid as CSV; precision None keeps full float repr."""
    values = grid.values if isinstance(grid, ValueGrid) else np.asarray(grid)
    rows = [['n1/n2'] + [str(n2) for n2 in range(values.shape[1])]]
    for n1, row in enumerate(values):
        rows.append([str(n1)] + [format_number(v, precision) for v in row])
    return _write_rows(rows)


def action_table_to_csv(policy: ThresholdPolicy, cap: int) -> str:
    """0/1 admit table; 1 means a type-2 arrival is accepted."""
    table = policy.action_table(cap)
    rows = [['n1/n2'] + [str(n2) for n2 in range(cap + 1)]]
    for n1, row in enumerate(table):
        rows.append([str(n1)] + [str(int(v)) for v in row])
    return _write_rows(rows)


def dataset_to_csv(dataset: Dataset) -> str:
    header = list(FEATURE_NAMES) + [f"D{n1}" for n1 in range(dataset.label_count)]
    rows = [header]
    for features, labels in zip(dataset.features, dataset.labels):
        rows.append([repr(float(v)) for v in features] + [str(int(v)) for v in labels])
    return _write_rows(rows)


def dataset_from_csv(content: str) -> Dataset:
    """
    Read a dataset written by dataset_to_csv.

    Raises:
        ConfigError: On a bad header or malformed row
    """
    reader = csv.reader(io.StringIO(content))
    try:
        header = next(reader)
    except StopIteration:
        raise ConfigError(["Dataset file is empty"])
    width = len(FEATURE_NAMES)
    if tuple(header[:width]) != FEATURE_NAMES or len(header) <= width:
        raise ConfigError([f"Dataset header must start with {', '.join(FEATURE_NAMES)} "
                           f"followed by label columns, got {header}"])
    features, labels = [], []
    for line, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise ConfigError([f"line {line}: expected {len(header)} columns, got {len(row)}"])
        try:
            features.append([float(v) for v in row[:width]])
            labels.append([int(v) for v in row[width:]])
        except ValueError as e:
            raise ConfigError([f"line {line}: {e}"])
    if not features:
        raise ConfigError(["Dataset file has no rows"])
    return Dataset(np.array(features), np.array(labels))


__all__ = ['grid_to_csv', 'action_table_to_csv', 'dataset_to_csv', 'dataset_from_csv']
