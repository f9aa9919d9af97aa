import numpy as np
import pytest

from rustcast.data import align, parse_survey_csv, parse_weather_csv
from rustcast.synth import (
    SynthConfig,
    auc,
    channel_layout,
    gen_labels,
    gen_weather,
    generate,
    latent,
    oracle_auc,
    read_ground_truth,
    write_dataset,
)


def test_same_seed_same_bytes(tmp_path):
    cfg = SynthConfig(n_regions=3, n_months=24, seed=9)
    write_dataset(cfg, tmp_path / "a")
    write_dataset(cfg, tmp_path / "b")
    for name in ("weather.csv", "survey.csv", "ground-truth.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_row_count_and_header(tmp_path):
    summary = write_dataset(SynthConfig(n_regions=3, n_months=24, seed=1), tmp_path)
    assert summary["rows"] == 72
    header = (tmp_path / "weather.csv").read_text().splitlines()[0].split(",")
    assert len(header) == 3 + 43
    families = {h.split("_")[0] for h in header[3:]}
    assert families == {"temp", "humid", "rain", "wind"}
    assert len(channel_layout()) == 43


def test_seasonality_of_channel_zero():
    # pinned seed 5: lag-12 autocorrelation is about 0.897
    w = gen_weather(SynthConfig(n_regions=1, n_months=120, seed=5))
    x = np.array([w.records[k][0] for k in sorted(w.records)])
    x = x - x.mean()
    r12 = np.sum(x[12:] * x[:-12]) / np.sum(x * x)
    assert r12 > 0.5
    assert r12 == pytest.approx(0.8969, abs=1e-3)


def test_zero_strength_is_plain_bernoulli():
    cfg = SynthConfig(n_regions=20, n_months=120, signal_strength=0.0, seed=2024)
    weather, survey, truth, _ = generate(cfg)
    labels = np.array([survey.records[r[:3]] for r in truth])
    assert labels.size >= 2000
    assert abs(labels.mean() - 0.2) <= 0.03
    np.testing.assert_allclose([r[3] for r in truth], 0.2, atol=1e-9)
    assert abs(auc([r[4] for r in truth], labels) - 0.5) < 0.05


def test_default_strength_score_ranks_labels():
    weather, survey, truth, _ = generate(SynthConfig())
    labels = [survey.records[r[:3]] for r in truth]
    assert len(labels) >= 2000
    assert auc([r[4] for r in truth], labels) > 0.85


def test_labels_deterministic():
    cfg = SynthConfig(n_regions=2, n_months=30, seed=3)
    w = gen_weather(cfg)
    assert gen_labels(cfg, w).records == gen_labels(cfg, w).records


@pytest.mark.parametrize("prevalence", [0.05, 0.2, 0.5])
def test_calibration(prevalence):
    cfg = SynthConfig(target_prevalence=prevalence, seed=77)
    weather, survey, truth, _ = generate(cfg)
    _, _, prob, _ = latent(cfg, weather)
    assert abs(prob.mean() - prevalence) <= 0.005
    assert abs(np.mean(list(survey.records.values())) - prevalence) <= 0.03


def test_reingest_without_warnings(small_synth, caplog):
    w = parse_weather_csv(small_synth / "weather.csv")
    s = parse_survey_csv(small_synth / "survey.csv")
    warnings = []
    series = align(w, s, warnings)
    assert warnings == [] and "WARNING" not in caplog.text
    assert len(series) == 4 and all(len(x) == 40 for x in series)
    assert all(np.all(x.labels >= 0) for x in series)


def test_oracle_auc_non_increasing_in_lead(default_synth):
    out, _ = default_synth
    truth = read_ground_truth(out / "ground-truth.csv")
    survey = parse_survey_csv(out / "survey.csv")
    a0, a3, a6 = (oracle_auc(truth, survey, k) for k in (0, 3, 6))
    assert a0 >= a3 >= a6
    assert a0 > 0.85


def test_auc_helper():
    assert auc([1, 2, 3, 4], [0, 0, 1, 1]) == 1.0
    assert auc([4, 3, 2, 1], [0, 0, 1, 1]) == 0.0
    assert auc([1, 1, 1, 1], [0, 1, 0, 1]) == 0.5
    assert np.isnan(auc([1, 2], [1, 1]))


@pytest.mark.parametrize("kwargs", [
    {"n_months": 18}, {"target_prevalence": 0.0}, {"target_prevalence": 1.0}, {"n_regions": 0},
])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        SynthConfig(**kwargs)
