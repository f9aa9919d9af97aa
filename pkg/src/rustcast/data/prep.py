"""Normalization, train/validation splitting and class balance summaries."""

import math
from dataclasses import dataclass, replace

import numpy as np

from rustcast.errors import EmptyDataset, EmptyTrainingSet, ValidationError

STD_FLOOR = 1e-8


@dataclass
class NormStats:
    mean: np.ndarray
    std: np.ndarray

    def apply(self, x):
        return (np.asarray(x, dtype=np.float64) - self.mean) / self.std


def fit_norm_stats(train_examples) -> NormStats:
    """Per-feature population mean/std over every month of every train window."""
    if len(train_examples) == 0:
        raise EmptyTrainingSet("cannot fit normalization on an empty training set")
    rows = np.concatenate([e.x for e in train_examples], axis=0)
    mean = rows.mean(axis=0)
    std = np.maximum(rows.std(axis=0), STD_FLOOR)
    return NormStats(mean, std)


def apply_norm(stats: NormStats, examples):
    return [replace(e, x=stats.apply(e.x)) for e in examples]


@dataclass
class DatasetSplit:
    train: list
    val: list
    seed: int
    val_fraction: float
    mode: str = "example"


def _check_fraction(val_fraction):
    if not 0.0 < val_fraction < 1.0:
        raise ValidationError(f"val_fraction must be in (0, 1), got {val_fraction}")


def _n_val(n, val_fraction):
    return int(math.floor(n * val_fraction + 0.5))


def random_split(examples, val_fraction: float = 0.2, seed: int = 0) -> DatasetSplit:
    """Seeded uniform shuffle, then the first round(n * fraction) go to validation."""
    _check_fraction(val_fraction)
    if len(examples) == 0:
        raise EmptyDataset("no examples to split")
    n = len(examples)
    order = np.random.default_rng(seed).permutation(n)
    n_val = _n_val(n, val_fraction)
    val = [examples[i] for i in sorted(order[:n_val])]
    train = [examples[i] for i in sorted(order[n_val:])]
    return DatasetSplit(train, val, seed, val_fraction, "example")


def region_split(examples, val_fraction: float = 0.2, seed: int = 0) -> DatasetSplit:
    """Hold out whole regions so no region contributes to both splits."""
    _check_fraction(val_fraction)
    if len(examples) == 0:
        raise EmptyDataset("no examples to split")
    regions = sorted({e.region_id for e in examples})
    if len(regions) < 2:
        raise ValidationError("region split needs at least two regions")
    order = np.random.default_rng(seed).permutation(len(regions))
    n_val = min(max(_n_val(len(regions), val_fraction), 1), len(regions) - 1)
    held = {regions[i] for i in order[:n_val]}
    val = [e for e in examples if e.region_id in held]
    train = [e for e in examples if e.region_id not in held]
    return DatasetSplit(train, val, seed, val_fraction, "region")


@dataclass
class ClassStats:
    n_total: int
    n_positive: int
    prevalence: float
    majority_accuracy: float
    prevalence_defined: bool = True


def class_stats(examples) -> ClassStats:
    labels = [e.y if hasattr(e, "y") else int(e) for e in examples]
    n = len(labels)
    if n == 0:
        return ClassStats(0, 0, 0.0, 0.0, prevalence_defined=False)
    pos = sum(labels)
    prevalence = pos / n
    return ClassStats(n, pos, prevalence, max(prevalence, 1.0 - prevalence))
