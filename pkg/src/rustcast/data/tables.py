"""Weather and survey CSV tables.

weather.csv: ``region_id,year,month,<f1>,...,<f43>``
survey.csv:  ``region_id,year,month,rust_present``
"""

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from rustcast.errors import (
    BadHeader,
    BadLabel,
    DuplicateKey,
    MalformedRow,
    MissingFeature,
    NonFiniteValue,
)

N_FEATURES = 43
KEY_COLUMNS = ("region_id", "year", "month")
SURVEY_HEADER = (*KEY_COLUMNS, "rust_present")


@dataclass
class WeatherTable:
    feature_names: list[str]
    records: dict[tuple[str, int, int], np.ndarray] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def n_features(self) -> int:
        return len(self.feature_names)

    def add(self, key, values) -> None:
        if key in self.records:
            raise DuplicateKey(f"duplicate weather record {key}")
        values = np.asarray(values, dtype=np.float64)
        if values.shape != (self.n_features,):
            raise MissingFeature(f"{key}: expected {self.n_features} features")
        if not np.all(np.isfinite(values)):
            raise NonFiniteValue(f"{key}: non-finite feature value")
        self.records[key] = values


@dataclass
class SurveyTable:
    records: dict[tuple[str, int, int], int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.records)

    def add(self, key, label) -> None:
        if key in self.records:
            raise DuplicateKey(f"duplicate survey record {key}")
        if label not in (0, 1):
            raise BadLabel(f"{key}: rust_present must be 0 or 1, got {label!r}")
        self.records[key] = int(label)


def _parse_key(row, lineno):
    region, year, month = row[0].strip(), row[1].strip(), row[2].strip()
    if not region:
        raise MalformedRow(f"line {lineno}: empty region_id")
    try:
        year_i, month_i = int(year), int(month)
    except ValueError:
        raise MalformedRow(f"line {lineno}: year/month must be integers") from None
    if not 1 <= month_i <= 12:
        raise MalformedRow(f"line {lineno}: month {month_i} outside 1-12")
    return region, year_i, month_i


def _read_rows(path):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise BadHeader(f"{path}: missing header row")
        rows = [(reader.line_num, row) for row in reader if row]
    return [h.strip() for h in header], rows


def parse_weather_csv(path, n_features: int = N_FEATURES) -> WeatherTable:
    header, rows = _read_rows(path)
    if tuple(header[:3]) != KEY_COLUMNS or len(header) != 3 + n_features:
        raise BadHeader(
            f"{path}: expected region_id,year,month plus {n_features} feature "
            f"columns, got {len(header)} columns"
        )
    names = header[3:]
    if len(set(names)) != len(names) or not all(names):
        raise BadHeader(f"{path}: feature names must be unique and non-empty")
    table = WeatherTable(names)
    for lineno, row in rows:
        if len(row) != 3 + n_features:
            raise MissingFeature(
                f"{path} row {lineno}: {len(row) - 3} feature values, expected {n_features}"
            )
        key = _parse_key(row, lineno)
        try:
            values = [float(v) for v in row[3:]]
        except ValueError:
            raise NonFiniteValue(f"{path} row {lineno}: unparseable number") from None
        if not all(math.isfinite(v) for v in values):
            raise NonFiniteValue(f"{path} row {lineno}: non-finite value")
        if key in table.records:
            raise DuplicateKey(f"{path} row {lineno}: duplicate key {key}")
        table.records[key] = np.array(values)
    return table


def parse_survey_csv(path) -> SurveyTable:
    header, rows = _read_rows(path)
    if tuple(header) != SURVEY_HEADER:
        raise BadHeader(f"{path}: expected header {','.join(SURVEY_HEADER)}")
    table = SurveyTable()
    for lineno, row in rows:
        if len(row) != 4:
            raise MalformedRow(f"{path} row {lineno}: expected 4 columns")
        key = _parse_key(row, lineno)
        raw = row[3].strip()
        if raw not in ("0", "1"):
            raise BadLabel(f"{path} row {lineno}: rust_present must be 0 or 1, got {raw!r}")
        if key in table.records:
            raise DuplicateKey(f"{path} row {lineno}: duplicate key {key}")
        table.records[key] = int(raw)
    return table


def write_weather_csv(table: WeatherTable, path) -> None:
    """Write rows sorted by key; floats use shortest round-trip repr."""
    with open(Path(path), "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([*KEY_COLUMNS, *table.feature_names])
        for key in sorted(table.records):
            w.writerow([*key, *(repr(float(v)) for v in table.records[key])])


def write_survey_csv(table: SurveyTable, path) -> None:
    with open(Path(path), "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SURVEY_HEADER)
        for key in sorted(table.records):
            w.writerow([*key, table.records[key]])
