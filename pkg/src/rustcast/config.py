"""Experiment configuration: a flat ``key = value`` text file plus overrides.

Blank lines and lines starting with ``#`` are ignored. Unknown keys are an
error so typos do not silently fall back to defaults.
"""

import hashlib
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from rustcast.errors import ConfigError
from rustcast.metrics import AVERAGINGS
from rustcast.train import TrainConfig

# not part of the experiment's identity
_UNHASHED = {"weather", "survey", "out"}


@dataclass
class ExperimentConfig:
    weather: str = "data/weather.csv"
    survey: str = "data/survey.csv"
    out: str = "runs"
    model: str = "fcnn"
    leads: list = field(default_factory=lambda: list(range(7)))
    seed: int = 0
    batch_size: int = 32
    lr: float = 0.001
    patience: int = 5
    max_epochs: int = 100
    val_fraction: float = 0.2
    threshold: float = 0.5
    positive_class_weight: float = 1.0
    split: str = "example"
    history_channel: bool = False
    averaging: str = "weighted"
    synth_regions: int = 20
    synth_months: int = 120
    synth_prevalence: float = 0.2
    synth_strength: float = 12.0
    synth_noise: float = 0.5

    def validate(self) -> "ExperimentConfig":
        if self.model not in ("fcnn", "lstm"):
            raise ConfigError(f"model must be fcnn or lstm, got {self.model!r}")
        if not self.leads or any(not 0 <= k <= 6 for k in self.leads):
            raise ConfigError(f"leads must be a non-empty subset of 0..6, got {self.leads}")
        if len(set(self.leads)) != len(self.leads):
            raise ConfigError("leads must not repeat")
        if self.split not in ("example", "region"):
            raise ConfigError(f"split must be example or region, got {self.split!r}")
        if self.averaging not in AVERAGINGS:
            raise ConfigError(f"averaging must be one of {AVERAGINGS}")
        if self.seed < 0:
            raise ConfigError("seed must be non-negative")
        if not 0 < self.val_fraction < 1:
            raise ConfigError("val_fraction must be in (0, 1)")
        self.train_config()
        return self

    def train_config(self, seed: int | None = None) -> TrainConfig:
        try:
            return TrainConfig(
                batch_size=self.batch_size, lr=self.lr, patience=self.patience,
                max_epochs=self.max_epochs, seed=self.seed if seed is None else seed,
                val_fraction=self.val_fraction, threshold=self.threshold,
                positive_class_weight=self.positive_class_weight,
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def canonical(self) -> dict[str, str]:
        out = {}
        for k, v in sorted(asdict(self).items()):
            if isinstance(v, list):
                v = ",".join(str(x) for x in v)
            elif isinstance(v, bool):
                v = str(v).lower()
            out[k] = str(v)
        return out

    def hash(self) -> str:
        text = "\n".join(f"{k}={v}" for k, v in self.canonical().items() if k not in _UNHASHED)
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    def dump(self) -> str:
        return "".join(f"{k} = {v}\n" for k, v in self.canonical().items())


_TYPES = {f.name: f for f in fields(ExperimentConfig)}


def _coerce(key: str, raw: str):
    if key not in _TYPES:
        raise ConfigError(f"unknown config key {key!r}")
    default = getattr(ExperimentConfig(), key)
    raw = raw.strip()
    try:
        if isinstance(default, bool):
            if raw.lower() not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError(raw)
            return raw.lower() in ("true", "1", "yes")
        if isinstance(default, list):
            return [int(x) for x in raw.split(",") if x.strip()]
        if isinstance(default, int):
            return int(raw)
        if isinstance(default, float):
            return float(raw)
    except ValueError:
        raise ConfigError(f"bad value for {key}: {raw!r}") from None
    return raw


def parse_config_text(text: str) -> dict:
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"config line {lineno}: expected key = value")
        key, raw = line.split("=", 1)
        values[key.strip()] = _coerce(key.strip(), raw)
    return values


def load_config(path=None, **overrides) -> ExperimentConfig:
    """Defaults, then the file at ``path``, then non-None typed ``overrides``."""
    values = {}
    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        values.update(parse_config_text(text))
    for k, v in overrides.items():
        if v is None:
            continue
        if k not in _TYPES:
            raise ConfigError(f"unknown config key {k!r}")
        values[k] = v
    return ExperimentConfig(**values).validate()
