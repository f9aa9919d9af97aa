"""Sweep tables with the column layout of the published result tables."""

import math
from dataclasses import dataclass, field

from rustcast.metrics import AVERAGINGS

COLUMNS = ("Predictive Time Step", "Accuracy", "Precision", "Recall", "F1 Score")
METRIC_KEYS = ("precision", "recall", "f1")
TSV_COLUMNS = ("k", "status", "accuracy",
               *(f"{m}_{k}" for m in AVERAGINGS for k in METRIC_KEYS), "error")


@dataclass
class SweepRow:
    k: int
    accuracy: float = math.nan
    precision: float = math.nan
    recall: float = math.nan
    f1: float = math.nan
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.error is not None


@dataclass
class SweepReport:
    rows: list[SweepRow]
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.rows = sorted(self.rows, key=lambda r: r.k)
        ks = [r.k for r in self.rows]
        if len(set(ks)) != len(ks):
            raise ValueError("one row per lead expected")


def _cells(row: SweepRow) -> list[str]:
    if row.failed:
        return [str(row.k), "FAILED", "-", "-", "-"]
    return [str(row.k), f"{100 * row.accuracy:.2f}%",
            f"{row.precision:.2f}", f"{row.recall:.2f}", f"{row.f1:.2f}"]


def render_table(report: SweepReport) -> str:
    """Aligned plain-text table preceded by ``# key=value`` metadata lines."""
    body = [list(COLUMNS)] + [_cells(r) for r in report.rows]
    widths = [max(len(line[i]) for line in body) for i in range(len(COLUMNS))]
    out = [f"# {k}={v}" for k, v in report.meta.items()]
    for line in body:
        out.append("  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip())
    return "\n".join(out) + "\n"


def render_latex(report: SweepReport) -> str:
    r"""Table rows in the ``0 & 81.62\% & 0.54 & 0.81 & 0.54 \\`` form."""
    lines = [" & ".join(rf"\textbf{{\textit{{{c}}}}}" for c in COLUMNS) + r"\\"]
    for r in report.rows:
        cells = _cells(r)
        cells[1] = cells[1].replace("%", r"\%")
        lines.append(" & ".join(cells) + r" \\")
    return "\n".join(lines) + "\n"


def sweep_tsv(results: dict, meta: dict) -> str:
    """Machine-readable rows for every averaging mode.

    ``results`` maps lead k to an ``EvalReport`` or to an error message.
    """
    out = [f"# {k}={v}" for k, v in meta.items()]
    out.append("\t".join(TSV_COLUMNS))
    for k in sorted(results):
        res = results[k]
        if isinstance(res, str):
            cells = [str(k), "FAILED"] + ["nan"] * (len(TSV_COLUMNS) - 3) + [res.replace("\t", " ")]
        else:
            s = res.scores
            cells = [str(k), "ok", repr(s.accuracy)]
            for mode in AVERAGINGS:
                cells += [repr(v) for v in s.average(mode)]
            cells.append("")
        out.append("\t".join(cells))
    return "\n".join(out) + "\n"


def parse_rows(text: str, averaging: str = "weighted") -> SweepReport:
    """Read a sweep TSV, or a plain ``k accuracy precision recall f1`` TSV."""
    meta, rows, header = {}, [], None
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            key, _, val = line[1:].strip().partition("=")
            meta[key] = val
            continue
        cells = line.split("\t")
        if header is None:
            header = [c.strip() for c in cells]
            continue
        rec = dict(zip(header, (c.strip() for c in cells)))
        k = int(rec["k"])
        if rec.get("status", "ok") != "ok":
            rows.append(SweepRow(k, error=rec.get("error") or "failed"))
            continue
        if f"{averaging}_precision" in rec:
            vals = [float(rec[f"{averaging}_{m}"]) for m in METRIC_KEYS]
        else:
            vals = [float(rec[m]) for m in METRIC_KEYS]
        rows.append(SweepRow(k, float(rec["accuracy"]), *vals))
    if header is None:
        raise ValueError("no header row found")
    meta["averaging"] = averaging if any(c.startswith(f"{averaging}_") for c in header) else meta.get("averaging", "as-stored")
    return SweepReport(rows, meta)
