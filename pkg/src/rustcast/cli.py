"""Command-line interface.

Exit status: 0 success, 1 validation error (bad config, malformed data, failed
gradient check), 2 runtime failure.
"""

import argparse
import logging
import sys
from pathlib import Path

from rustcast import __version__
from rustcast.config import load_config
from rustcast.errors import ValidationError
from rustcast.report import parse_rows, render_latex, render_table

EXIT_OK, EXIT_INVALID, EXIT_RUNTIME = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _common(p):
    p.add_argument("--config", help="key = value experiment config file")
    p.add_argument("--model", choices=("fcnn", "lstm"))
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output directory")
    p.add_argument("--weather", help="weather.csv path")
    p.add_argument("--survey", help="survey.csv path")
    p.add_argument("--split", choices=("example", "region"))
    p.add_argument("--averaging", choices=("binary", "macro", "weighted"))
    p.add_argument("--history-channel", action="store_true", default=None,
                   help="append the previous month's rust indicator as an input channel")
    p.add_argument("--max-epochs", type=int)


def build_parser():
    parser = _Parser(prog="rustcast", description="Yellow rust forecasting experiments")
    parser.add_argument("--version", action="version", version=f"rustcast {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("synth", help="write a synthetic weather/survey dataset")
    _common(p)
    p.add_argument("--regions", type=int)
    p.add_argument("--months", type=int)
    p.add_argument("--prevalence", type=float)

    p = sub.add_parser("train", help="train one model at one lead")
    _common(p)
    p.add_argument("--lead", type=int, choices=range(7), required=True)

    p = sub.add_parser("eval", help="re-evaluate a saved checkpoint on its validation split")
    _common(p)
    p.add_argument("--lead", type=int, choices=range(7))
    p.add_argument("--checkpoint", help="defaults to <out>/lead_<k>/model.ckpt")

    p = sub.add_parser("sweep", help="train and evaluate one model per lead")
    _common(p)
    p.add_argument("--leads", help="comma-separated leads, default 0-6")

    p = sub.add_parser("gradcheck", help="finite-difference check of both architectures")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-5)
    p.add_argument("--step", type=float, default=1e-5)
    p.add_argument("--inject-sign-flip", metavar="BLOCK",
                   help="negate one gradient block (e.g. dense1.W) to exercise the checker")

    p = sub.add_parser("report", help="render stored sweep rows as a table")
    p.add_argument("rows", nargs="?", help="sweep.tsv or k/accuracy/precision/recall/f1 TSV")
    p.add_argument("--out", help="directory holding sweep.tsv when ROWS is omitted")
    p.add_argument("--averaging", choices=("binary", "macro", "weighted"), default="weighted")
    p.add_argument("--format", choices=("text", "latex", "tsv"), default="text")
    return parser


def _config(args, **extra):
    overrides = {
        "model": args.model, "seed": args.seed, "out": args.out,
        "weather": args.weather, "survey": args.survey, "split": args.split,
        "averaging": args.averaging, "history_channel": args.history_channel,
        "max_epochs": args.max_epochs, **extra,
    }
    return load_config(args.config, **overrides)


def _data_paths(config, args):
    # Default to the synth layout inside --out when no explicit paths are given.
    out = Path(config.out)
    if args.weather is None and not Path(config.weather).exists() and (out / "weather.csv").exists():
        config.weather = str(out / "weather.csv")
    if args.survey is None and not Path(config.survey).exists() and (out / "survey.csv").exists():
        config.survey = str(out / "survey.csv")
    for p in (config.weather, config.survey):
        if not Path(p).is_file():
            raise ValidationError(f"data file not found: {p}")


def cmd_synth(args):
    from rustcast.synth import SynthConfig, write_dataset

    config = _config(args, synth_regions=args.regions, synth_months=args.months,
                     synth_prevalence=args.prevalence)
    try:
        synth = SynthConfig(
            n_regions=config.synth_regions, n_months=config.synth_months, seed=config.seed,
            target_prevalence=config.synth_prevalence, signal_strength=config.synth_strength,
            noise_std=config.synth_noise,
        )
    except ValueError as exc:
        raise ValidationError(str(exc)) from None
    out = Path(config.out)
    try:
        summary = write_dataset(synth, out)
    except OSError as exc:
        raise OSError(f"cannot write synthetic data to {out}: {exc.strerror or exc}") from None
    print(f"wrote {out / 'weather.csv'}, {out / 'survey.csv'}, {out / 'ground-truth.csv'}")
    print(f"rows={summary['rows']} regions={summary['regions']} "
          f"prevalence={summary['prevalence']:.4f} target={synth.target_prevalence}")
    return EXIT_OK


def cmd_train(args):
    from rustcast.experiment import load_data, run_lead

    config = _config(args)
    _data_paths(config, args)
    out = Path(config.out)
    data = load_data(config, out / "ingest.log")
    report, result = run_lead(config, data, args.lead, out)
    ckpt = out / f"lead_{args.lead}" / "model.ckpt"
    print(f"{config.model} lead={args.lead} epochs={result.stopped_epoch} "
          f"best_epoch={result.best_epoch} best_val_loss={result.best_val_loss:.6f}")
    row = report.row(config.averaging)
    print(f"accuracy={row['accuracy']:.4f} precision={row['precision']:.4f} "
          f"recall={row['recall']:.4f} f1={row['f1']:.4f} ({config.averaging})")
    print(f"checkpoint: {ckpt}")
    return EXIT_OK


def cmd_eval(args):
    from rustcast.experiment import evaluate_checkpoint, load_data

    config = _config(args)
    _data_paths(config, args)
    if args.checkpoint:
        path = Path(args.checkpoint)
    elif args.lead is not None:
        path = Path(config.out) / f"lead_{args.lead}" / "model.ckpt"
    else:
        raise ValidationError("eval needs --checkpoint or --lead")
    if not path.is_file():
        raise ValidationError(f"checkpoint not found: {path}")
    data = load_data(config)
    report = evaluate_checkpoint(config, data, path)
    sys.stdout.write(report.to_text())
    return EXIT_OK


def cmd_sweep(args):
    from rustcast.experiment import load_data, run_sweep

    leads = None
    if args.leads:
        try:
            leads = [int(x) for x in args.leads.split(",")]
        except ValueError:
            raise ValidationError(f"bad --leads {args.leads!r}") from None
    config = _config(args, leads=leads)
    _data_paths(config, args)
    out = Path(config.out)
    data = load_data(config, out / "ingest.log")
    report, _ = run_sweep(config, data, out)
    sys.stdout.write(render_table(report))
    return EXIT_OK


def cmd_gradcheck(args):
    from rustcast import _kernels
    from rustcast.nn.gradcheck import standard_checks

    reports = standard_checks(seed=args.seed, h=args.step, tol=args.tol,
                              flip=args.inject_sign_flip)
    print(f"kernel backend: {_kernels.active()}  h={args.step:g}  tol={args.tol:g}")
    ok = True
    for tag, rep in reports.items():
        print(f"[{tag}] max relative error {rep.worst:.3e} -> {'PASS' if rep.passed else 'FAIL'}")
        for line in rep.lines():
            print("  " + line)
        if not rep.passed:
            ok = False
            print(f"  failing blocks: {', '.join(rep.failures)}")
    return EXIT_OK if ok else EXIT_INVALID


def cmd_report(args):
    if args.rows:
        path = Path(args.rows)
    elif args.out:
        path = Path(args.out) / "sweep.tsv"
    else:
        raise ValidationError("report needs a rows file or --out")
    if not path.is_file():
        raise ValidationError(f"rows file not found: {path}")
    try:
        report = parse_rows(path.read_text(encoding="utf-8"), args.averaging)
    except (KeyError, ValueError) as exc:
        raise ValidationError(f"cannot parse {path}: {exc}") from None
    if args.format == "latex":
        sys.stdout.write(render_latex(report))
    elif args.format == "tsv":
        sys.stdout.write("k\taccuracy\tprecision\trecall\tf1\n")
        for r in report.rows:
            sys.stdout.write(f"{r.k}\t{r.accuracy!r}\t{r.precision!r}\t{r.recall!r}\t{r.f1!r}\n")
    else:
        sys.stdout.write(render_table(report))
    return EXIT_OK


COMMANDS = {
    "synth": cmd_synth, "train": cmd_train, "eval": cmd_eval,
    "sweep": cmd_sweep, "gradcheck": cmd_gradcheck, "report": cmd_report,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        print(f"runtime failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
