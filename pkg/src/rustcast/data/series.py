"""Per-region alignment of weather and survey data and lead-k windowing."""

import logging
from dataclasses import dataclass

import numpy as np

from rustcast.data.tables import SurveyTable, WeatherTable

log = logging.getLogger("rustcast.ingest")

WINDOW = 12
MAX_LEAD = 6
NO_LABEL = -1


def month_index(year: int, month: int) -> int:
    return year * 12 + (month - 1)


def year_month(index: int) -> tuple[int, int]:
    return index // 12, index % 12 + 1


@dataclass
class AlignedSeries:
    """Consecutive months for one region; ``labels`` is -1 where unsurveyed."""

    region_id: str
    start: int  # month index of row 0
    features: np.ndarray  # (N, F)
    labels: np.ndarray  # (N,) int8

    def __len__(self) -> int:
        return self.features.shape[0]

    def year_month(self, i: int) -> tuple[int, int]:
        return year_month(self.start + i)


@dataclass
class Example:
    x: np.ndarray  # (WINDOW, F)
    y: int
    k: int
    region_id: str
    anchor: tuple[int, int]  # (year, month) of the first window month


def align(weather: WeatherTable, survey: SurveyTable, warnings: list | None = None):
    """Join the tables into maximal runs of consecutive weather months.

    Survey rows with no weather for their month are dropped. Each dropped row
    and each gap split is reported through the ``rustcast.ingest`` logger and
    appended to ``warnings`` when given.
    """
    def warn(msg):
        log.warning(msg)
        if warnings is not None:
            warnings.append(msg)

    by_region: dict[str, list[int]] = {}
    for region, year, month in weather.records:
        by_region.setdefault(region, []).append(month_index(year, month))

    orphans = [key for key in survey.records if key not in weather.records]
    if orphans:
        warn(f"{len(orphans)} survey rows have no matching weather month and were ignored")
        for key in sorted(orphans):
            warn(f"orphan survey row {key[0]} {key[1]}-{key[2]:02d}")

    out = []
    for region in sorted(by_region):
        months = sorted(by_region[region])
        runs = []
        run = [months[0]]
        for m in months[1:]:
            if m == run[-1] + 1:
                run.append(m)
            else:
                runs.append(run)
                run = [m]
        runs.append(run)
        if len(runs) > 1:
            warn(f"region {region}: month gaps split the series into {len(runs)} runs")
        for run in runs:
            keys = [(region, *year_month(m)) for m in run]
            feats = np.stack([weather.records[k] for k in keys])
            labels = np.array([survey.records.get(k, NO_LABEL) for k in keys], dtype=np.int8)
            out.append(AlignedSeries(region, run[0], feats, labels))
    return out


def history_channel(series: AlignedSeries) -> np.ndarray:
    """Previous month's rust indicator (0 where unknown), one value per month."""
    prev = np.zeros(len(series))
    lab = series.labels[:-1]
    prev[1:] = np.where(lab == 1, 1.0, 0.0)
    return prev


def build_windows(series: AlignedSeries, k: int, history: bool = False) -> list[Example]:
    """Examples with input months t..t+11 and the label at month t+11+k."""
    if not 0 <= k <= MAX_LEAD:
        raise ValueError(f"lead k must be in 0..{MAX_LEAD}, got {k}")
    feats = series.features
    if history:
        feats = np.column_stack([feats, history_channel(series)])
    out = []
    for t in range(len(series) - WINDOW - k + 1):
        y = int(series.labels[t + WINDOW - 1 + k])
        if y == NO_LABEL:
            continue
        out.append(Example(
            x=feats[t : t + WINDOW].copy(),
            y=y,
            k=k,
            region_id=series.region_id,
            anchor=series.year_month(t),
        ))
    return out


def build_all_windows(series_list, k: int, history: bool = False) -> list[Example]:
    """Windows over every series in canonical (region, anchor) order."""
    out = []
    for s in series_list:
        out.extend(build_windows(s, k, history))
    out.sort(key=lambda e: (e.region_id, month_index(*e.anchor)))
    return out


def flatten_for_fcnn(example: Example) -> np.ndarray:
    return example.x.reshape(-1)


def stack(examples) -> tuple[np.ndarray, np.ndarray]:
    """(batch, WINDOW, F) inputs and int labels."""
    if not examples:
        return np.empty((0, WINDOW, 0)), np.empty(0, dtype=np.int64)
    x = np.stack([e.x for e in examples])
    y = np.array([e.y for e in examples], dtype=np.int64)
    return x, y
