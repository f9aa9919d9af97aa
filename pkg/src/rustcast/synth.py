"""Seeded synthetic weather/survey data with a planted lagged logistic signal.

Each of the 43 channels is ``base + scale * (A sin(2pi (m + phase) / 12) +
region_offset + noise)``. The rust probability at month m is
``logistic(alpha + strength * s(m))`` where ``s`` is a fixed weighted sum of
a few designated channels over months m-2..m, standardized over the data.
``alpha`` is found by bisection so the mean probability hits the target
prevalence.
"""

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from rustcast.data.series import MAX_LEAD, WINDOW, month_index, year_month
from rustcast.data.tables import (
    SurveyTable,
    WeatherTable,
    write_survey_csv,
    write_weather_csv,
)
from rustcast.nn.activations import sigmoid

# family: (channel count, base level, scale, seasonal amplitude range,
#          phase in months, region offset sd, noise multiplier)
FAMILIES = {
    "temp": (14, 9.0, 5.0, (1.0, 2.0), 0.0, 0.5, 0.2),
    "humid": (13, 80.0, 8.0, (0.5, 1.5), 6.0, 0.5, 0.2),
    "rain": (4, 60.0, 20.0, (0.1, 0.3), 3.0, 0.1, 2.0),
    "wind": (12, 5.0, 1.5, (0.5, 1.5), 5.0, 0.3, 0.2),
}
# Designated score channels. Rain-like channels are mostly month-to-month
# noise, so the planted signal is largely unpredictable beyond the lag window.
SCORE_WEIGHTS = {"rain_01": 1.0, "rain_02": 0.75, "rain_03": 0.5, "temp_01": 0.25}
DEFAULT_STRENGTH = 12.0

GROUND_TRUTH_HEADER = ("region_id", "year", "month", "latent_probability", "score")


@dataclass
class SynthConfig:
    n_regions: int = 20
    n_months: int = 120
    seed: int = 2024
    target_prevalence: float = 0.2
    signal_strength: float = DEFAULT_STRENGTH
    lag_profile: tuple = (0, 1, 2)
    noise_std: float = 0.5
    start_year: int = 2000

    def __post_init__(self):
        if self.n_months < WINDOW + MAX_LEAD + 1:
            raise ValueError(f"n_months must be >= {WINDOW + MAX_LEAD + 1}")
        if self.n_regions < 1:
            raise ValueError("n_regions must be >= 1")
        if not 0.0 < self.target_prevalence < 1.0:
            raise ValueError("target_prevalence must be in (0, 1)")
        if self.noise_std < 0 or self.signal_strength < 0:
            raise ValueError("noise_std and signal_strength must be non-negative")
        self.lag_profile = tuple(sorted(int(l) for l in self.lag_profile))
        if not self.lag_profile or self.lag_profile[0] < 0:
            raise ValueError("lag_profile must be a non-empty set of lags >= 0")


def channel_layout():
    """Per-channel (name, base, scale, amplitude range, phase, offset sd, noise mult)."""
    out = []
    for fam, (count, base, scale, amp, phase, offset_sd, noise) in FAMILIES.items():
        for i in range(count):
            out.append((f"{fam}_{i + 1:02d}", base, scale, amp, phase, offset_sd, noise))
    return out


def region_ids(config: SynthConfig) -> list[str]:
    return [f"R{r:03d}" for r in range(config.n_regions)]


def _rng(config, *stream):
    return np.random.default_rng([config.seed, *stream])


def gen_weather(config: SynthConfig) -> WeatherTable:
    layout = channel_layout()
    names = [c[0] for c in layout]
    base = np.array([c[1] for c in layout])
    scale = np.array([c[2] for c in layout])
    crng = _rng(config, 0)
    amp = np.array([crng.uniform(*c[3]) for c in layout])
    phase = np.array([c[4] for c in layout]) + crng.uniform(-1.0, 1.0, size=len(layout))
    offset_sd = np.array([c[5] for c in layout])
    noise_sd = config.noise_std * np.array([c[6] for c in layout])

    table = WeatherTable(names)
    start = month_index(config.start_year, 1)
    m = np.arange(config.n_months)[:, None]
    seasonal = amp * np.sin(2 * np.pi * (m + phase) / 12.0)
    for r, region in enumerate(region_ids(config)):
        rrng = _rng(config, 1, r)
        offset = rrng.normal(size=len(layout)) * offset_sd
        noise = rrng.normal(size=(config.n_months, len(layout))) * noise_sd
        values = np.round(base + scale * (seasonal + offset + noise), 6)
        for i in range(config.n_months):
            table.records[(region, *year_month(start + i))] = values[i]
    return table


def _raw_scores(config: SynthConfig, weather: WeatherTable) -> dict:
    layout = {c[0]: c for c in channel_layout()}
    cols = [weather.feature_names.index(n) for n in SCORE_WEIGHTS]
    w = np.array(list(SCORE_WEIGHTS.values()))
    base = np.array([layout[n][1] for n in SCORE_WEIGHTS])
    scale = np.array([layout[n][2] for n in SCORE_WEIGHTS])

    by_region: dict[str, list] = {}
    for key in weather.records:
        by_region.setdefault(key[0], []).append(key)
    out = {}
    for region in sorted(by_region):
        keys = sorted(by_region[region], key=lambda k: month_index(k[1], k[2]))
        z = np.stack([(weather.records[k][cols] - base) / scale for k in keys]) @ w
        for i, key in enumerate(keys):
            # lags before the first month contribute their mean (zero)
            out[key] = sum(z[i - lag] for lag in config.lag_profile if i - lag >= 0)
    return out


def latent(config: SynthConfig, weather: WeatherTable):
    """Standardized score and calibrated probability per region-month.

    Returns ``(keys, score, prob, alpha)`` with keys in sorted order.
    """
    raw = _raw_scores(config, weather)
    keys = sorted(raw)
    s = np.array([raw[k] for k in keys])
    sd = s.std()
    s = (s - s.mean()) / (sd if sd > 0 else 1.0)
    beta = config.signal_strength
    lo, hi = -50.0, 50.0
    for _ in range(200):
        alpha = 0.5 * (lo + hi)
        if sigmoid(alpha + beta * s).mean() < config.target_prevalence:
            lo = alpha
        else:
            hi = alpha
        if hi - lo < 1e-12:
            break
    alpha = 0.5 * (lo + hi)
    return keys, s, sigmoid(alpha + beta * s), alpha


def gen_labels(config: SynthConfig, weather: WeatherTable) -> SurveyTable:
    keys, _, prob, _ = latent(config, weather)
    return _draw(config, keys, prob)


def _draw(config, keys, prob) -> SurveyTable:
    table = SurveyTable()
    regions = {r: i for i, r in enumerate(sorted({k[0] for k in keys}))}
    start = 0
    while start < len(keys):
        region = keys[start][0]
        stop = start
        while stop < len(keys) and keys[stop][0] == region:
            stop += 1
        u = _rng(config, 2, regions[region]).random(stop - start)
        for key, ui, p in zip(keys[start:stop], u, prob[start:stop]):
            table.records[key] = int(ui < p)
        start = stop
    return table


def generate(config: SynthConfig):
    """Weather table, survey table and ground-truth rows for one config."""
    weather = gen_weather(config)
    keys, score, prob, alpha = latent(config, weather)
    survey = _draw(config, keys, prob)
    truth = [(*k, float(p), float(s)) for k, p, s in zip(keys, prob, score)]
    return weather, survey, truth, alpha


def write_dataset(config: SynthConfig, out_dir) -> dict:
    """Write weather.csv, survey.csv and ground-truth.csv; return a summary."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    weather, survey, truth, alpha = generate(config)
    write_weather_csv(weather, out / "weather.csv")
    write_survey_csv(survey, out / "survey.csv")
    with open(out / "ground-truth.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(GROUND_TRUTH_HEADER)
        for region, year, month, p, s in truth:
            w.writerow([region, year, month, repr(p), repr(s)])
    labels = np.array(list(survey.records.values()))
    return {
        "rows": len(weather),
        "regions": config.n_regions,
        "prevalence": float(labels.mean()),
        "alpha": alpha,
    }


# Oracle helpers. Only tests and diagnostics read ground truth.

def read_ground_truth(path) -> dict:
    out = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != GROUND_TRUTH_HEADER:
            raise ValueError(f"{path}: unexpected ground-truth header")
        for row in reader:
            out[(row[0], int(row[1]), int(row[2]))] = (float(row[3]), float(row[4]))
    return out


def auc(scores, labels) -> float:
    """Mann-Whitney AUC with average ranks for ties."""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels).astype(bool)
    n_pos = labels.sum()
    n_neg = labels.size - n_pos
    if n_pos == 0 or n_neg == 0:
        return float("nan")
    order = np.argsort(scores, kind="mergesort")
    sorted_scores = scores[order]
    ranks = np.empty(scores.size)
    i = 0
    while i < scores.size:
        j = i
        while j + 1 < scores.size and sorted_scores[j + 1] == sorted_scores[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return float((ranks[labels].sum() - n_pos * (n_pos + 1) / 2) / (n_pos * n_neg))


def oracle_auc(truth: dict, survey: SurveyTable, k: int) -> float:
    """AUC of the true score at month m-k against the label at month m.

    Only label months that admit a window at every lead are used, so the
    population is the same for all k.
    """
    by_region: dict[str, dict] = {}
    for key, (_, score) in truth.items():
        by_region.setdefault(key[0], {})[month_index(key[1], key[2])] = score
    scores, labels = [], []
    for region, months in sorted(by_region.items()):
        first = min(months)
        for m in sorted(months):
            if m - first < WINDOW - 1 + MAX_LEAD or m - k not in months:
                continue
            key = (region, *year_month(m))
            if key in survey.records:
                scores.append(months[m - k])
                labels.append(survey.records[key])
    return auc(scores, labels)
