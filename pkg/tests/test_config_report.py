import math

import pytest

from rustcast.config import ExperimentConfig, load_config, parse_config_text
from rustcast.errors import ConfigError
from rustcast.report import (
    COLUMNS,
    SweepReport,
    SweepRow,
    parse_rows,
    render_latex,
    render_table,
)

# stored FCNN values for leads 0..6, used as rendering fixtures
STORED = """k\taccuracy\tprecision\trecall\tf1
0\t0.8162\t0.54\t0.81\t0.54
1\t0.8190\t0.54\t0.82\t0.54
2\t0.8245\t0.55\t0.82\t0.55
3\t0.8301\t0.55\t0.83\t0.55
4\t0.8276\t0.55\t0.83\t0.55
5\t0.8323\t0.55\t0.83\t0.55
6\t0.8365\t0.55\t0.84\t0.55
"""


def test_parse_config_text():
    vals = parse_config_text("# comment\nmodel = lstm\nleads = 0, 3,6\n\nhistory_channel = true\nlr=0.01\n")
    assert vals == {"model": "lstm", "leads": [0, 3, 6], "history_channel": True, "lr": 0.01}


@pytest.mark.parametrize("text", ["nonsense", "colour = red", "seed = x", "history_channel = maybe"])
def test_bad_config_text(text):
    with pytest.raises(ConfigError):
        parse_config_text(text)


def test_load_config_overrides(tmp_path):
    p = tmp_path / "c.cfg"
    p.write_text("model = lstm\nseed = 3\n")
    cfg = load_config(p, seed=9, model=None)
    assert cfg.model == "lstm" and cfg.seed == 9


@pytest.mark.parametrize("kwargs", [
    {"model": "cnn"}, {"leads": [7]}, {"leads": []}, {"leads": [1, 1]},
    {"split": "year"}, {"averaging": "micro"}, {"patience": 0}, {"val_fraction": 1.0},
])
def test_config_validation(kwargs):
    with pytest.raises(ConfigError):
        ExperimentConfig(**kwargs).validate()


def test_hash_ignores_paths_only():
    a = ExperimentConfig(weather="a.csv", out="x")
    b = ExperimentConfig(weather="b.csv", out="y")
    assert a.hash() == b.hash()
    assert a.hash() != ExperimentConfig(seed=1).hash()
    assert len(a.hash()) == 16


def test_dump_round_trips(tmp_path):
    cfg = ExperimentConfig(model="lstm", leads=[0, 6], history_channel=True)
    p = tmp_path / "c.cfg"
    p.write_text(cfg.dump())
    assert load_config(p) == cfg


def test_table_has_seven_rows_and_columns():
    rep = parse_rows(STORED)
    text = render_table(rep)
    body = [l for l in text.splitlines() if not l.startswith("#")]
    header = body[0]
    positions = [header.index(c) for c in COLUMNS]
    assert positions == sorted(positions)
    assert len(body) == 8
    assert body[-1].split() == ["6", "83.65%", "0.55", "0.84", "0.55"]


def test_latex_row_format():
    lines = render_latex(parse_rows(STORED)).splitlines()
    assert lines[-1] == r"6 & 83.65\% & 0.55 & 0.84 & 0.55 \\"
    assert lines[1] == r"0 & 81.62\% & 0.54 & 0.81 & 0.54 \\"
    assert len(lines) == 8


def test_failed_rows_render():
    rep = SweepReport([SweepRow(1, 0.5, 0.5, 0.5, 0.5), SweepRow(0, error="boom")])
    assert [r.k for r in rep.rows] == [0, 1]
    assert "FAILED" in render_table(rep).splitlines()[1]


def test_duplicate_rows_rejected():
    with pytest.raises(ValueError):
        SweepReport([SweepRow(1), SweepRow(1)])


def test_parse_sweep_tsv_selects_averaging():
    tsv = ("# seed=0\n"
           "k\tstatus\taccuracy\tbinary_precision\tbinary_recall\tbinary_f1\t"
           "macro_precision\tmacro_recall\tmacro_f1\tweighted_precision\tweighted_recall\tweighted_f1\terror\n"
           "0\tok\t0.9\t0.1\t0.2\t0.3\t0.4\t0.5\t0.6\t0.7\t0.9\t0.8\t\n"
           "1\tFAILED\tnan\tnan\tnan\tnan\tnan\tnan\tnan\tnan\tnan\tnan\tNoExamples: x\n")
    rep = parse_rows(tsv, "macro")
    assert (rep.rows[0].precision, rep.rows[0].recall, rep.rows[0].f1) == (0.4, 0.5, 0.6)
    assert rep.rows[1].failed and math.isnan(rep.rows[1].accuracy)
    assert rep.meta["averaging"] == "macro" and rep.meta["seed"] == "0"
