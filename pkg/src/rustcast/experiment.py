"""End-to-end runs: data loading, one model per lead, sweeps and re-evaluation."""

import hashlib
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from rustcast.checkpoint import load_checkpoint, save_checkpoint
from rustcast.data import (
    align,
    apply_norm,
    build_all_windows,
    fit_norm_stats,
    parse_survey_csv,
    parse_weather_csv,
    random_split,
    region_split,
)
from rustcast.errors import EmptyEvaluation, NoExamples, RustcastError
from rustcast.nn import MODELS
from rustcast.report import SweepReport, SweepRow, render_table, sweep_tsv
from rustcast.train import evaluate, train

log = logging.getLogger("rustcast")


def lead_seed(master_seed: int, k: int) -> int:
    """Stable per-lead seed so each lead is reproducible on its own."""
    digest = hashlib.sha256(f"{master_seed}:{k}".encode()).digest()
    return int.from_bytes(digest[:8], "little") >> 1


def component_seeds(seed: int) -> dict[str, int]:
    """Independent split / init / shuffle streams from one seed."""
    children = np.random.SeedSequence(seed).spawn(3)
    names = ("split", "init", "shuffle")
    return {n: int(c.generate_state(1, dtype=np.uint64)[0]) for n, c in zip(names, children)}


@dataclass
class LoadedData:
    series: list
    digest: str
    warnings: list


def load_data(config, log_path=None) -> LoadedData:
    """Parse and align the configured CSVs; warnings go to ``log_path`` if given."""
    handler = None
    ingest = logging.getLogger("rustcast.ingest")
    if log_path is not None:
        Path(log_path).parent.mkdir(parents=True, exist_ok=True)
        handler = logging.FileHandler(log_path, mode="w", encoding="utf-8")
        handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
        ingest.addHandler(handler)
    try:
        weather = parse_weather_csv(config.weather)
        survey = parse_survey_csv(config.survey)
        warnings: list = []
        series = align(weather, survey, warnings)
    finally:
        if handler is not None:
            ingest.removeHandler(handler)
            handler.close()
    h = hashlib.sha256()
    for p in (config.weather, config.survey):
        h.update(Path(p).read_bytes())
    return LoadedData(series, h.hexdigest()[:16], warnings)


def prepare_split(config, series, k: int):
    """Windows for lead ``k``, split with the lead's derived seed."""
    examples = build_all_windows(series, k, history=config.history_channel)
    if not examples:
        raise NoExamples(f"no examples for lead {k}")
    seed = lead_seed(config.seed, k)
    seeds = component_seeds(seed)
    splitter = region_split if config.split == "region" else random_split
    split = splitter(examples, config.val_fraction, seeds["split"])
    return split, seed, seeds


def build_model(config, n_features: int, init_seed: int):
    rng = np.random.default_rng(init_seed)
    cls = MODELS[config.model]
    width = n_features if config.model == "lstm" else 12 * n_features
    return cls.init(width, rng)


def checkpoint_meta(config, k: int, data_digest: str) -> dict:
    return {
        "lead": k,
        "config_hash": config.hash(),
        "data_sha256": data_digest,
        "split": config.split,
        "val_fraction": repr(config.val_fraction),
        "history_channel": str(config.history_channel).lower(),
        "threshold": repr(config.threshold),
    }


def run_lead(config, data: LoadedData, k: int, out_dir=None):
    """Train and evaluate one model at lead ``k``; returns ``(EvalReport, TrainResult)``."""
    split, seed, seeds = prepare_split(config, data.series, k)
    if not split.val:
        raise EmptyEvaluation(f"lead {k}: validation split is empty")
    norm = fit_norm_stats(split.train)
    split.train = apply_norm(norm, split.train)
    split.val = apply_norm(norm, split.val)
    model = build_model(config, len(norm.mean), seeds["init"])

    epoch_lines = []
    result = train(model, split, config.train_config(seeds["shuffle"]),
                   on_epoch=lambda entry, _m: epoch_lines.append(entry.line()))
    echo = {"hash": config.hash(), "lead_seed": seed, "best_epoch": result.best_epoch,
            "epochs_run": result.stopped_epoch, "split": config.split,
            "val_fraction": config.val_fraction, "batch_size": config.batch_size,
            "lr": config.lr, "patience": config.patience, "max_epochs": config.max_epochs,
            "threshold": config.threshold}
    report = evaluate(model, split.val, config.threshold, k, echo)

    if out_dir is not None:
        lead_dir = Path(out_dir) / f"lead_{k}"
        lead_dir.mkdir(parents=True, exist_ok=True)
        save_checkpoint(lead_dir / "model.ckpt", model, norm, seed,
                        checkpoint_meta(config, k, data.digest))
        (lead_dir / "epochs.tsv").write_text(
            "epoch\ttrain_loss\tval_loss\n" + "".join(l + "\n" for l in epoch_lines))
        (lead_dir / "eval.txt").write_text(report.to_text())
    return report, result


def evaluate_checkpoint(config, data: LoadedData, path):
    """Rebuild the validation split a checkpoint was trained against and score it."""
    ckpt = load_checkpoint(path)
    k = int(ckpt.meta["lead"])
    config.split = ckpt.meta.get("split", config.split)
    config.val_fraction = float(ckpt.meta.get("val_fraction", config.val_fraction))
    config.history_channel = ckpt.meta.get("history_channel", "false") == "true"
    config.threshold = float(ckpt.meta.get("threshold", config.threshold))
    examples = build_all_windows(data.series, k, history=config.history_channel)
    if not examples:
        raise NoExamples(f"no examples for lead {k}")
    seeds = component_seeds(ckpt.seed)
    splitter = region_split if config.split == "region" else random_split
    split = splitter(examples, config.val_fraction, seeds["split"])
    val = apply_norm(ckpt.norm, split.val)
    return evaluate(ckpt.model, val, config.threshold, k, {"checkpoint": str(path)})


def sweep_meta(config, data_digest: str) -> dict:
    return {
        "model": config.model,
        "seed": config.seed,
        "averaging": config.averaging,
        "config_hash": config.hash(),
        "data_sha256": data_digest,
    }


def run_sweep(config, data: LoadedData, out_dir=None):
    """One model per lead; failures become FAILED rows without stopping the sweep.

    Returns ``(SweepReport, results)`` where ``results`` maps k to an
    ``EvalReport`` or an error string.
    """
    results = {}
    for k in sorted(config.leads):
        try:
            results[k], _ = run_lead(config, data, k, out_dir)
        except (RustcastError, ArithmeticError, ValueError) as exc:
            log.error("lead %d failed: %s", k, exc)
            results[k] = f"{type(exc).__name__}: {exc}"
    rows = []
    for k, res in results.items():
        if isinstance(res, str):
            rows.append(SweepRow(k, error=res))
        else:
            rows.append(SweepRow(**res.row(config.averaging)))
    report = SweepReport(rows, sweep_meta(config, data.digest))
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "sweep.txt").write_text(render_table(report))
        (out / "sweep.tsv").write_text(sweep_tsv(results, sweep_meta(config, data.digest)))
    return report, results
