"""Command-line entry point.

Subcommands:
  reduce  - fractal-dimension ceiling and reduction rate for a dataset
  select  - seeded repeated wrapper feature selection
  ablate  - run comparison modes against the fd-constrained search

Exit codes: 0 success, 1 configuration error, 2 data error, 3 runtime
failure (including partially failed trials).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from fireworks_fs.data import DataFormatError, DatasetSpec
from fireworks_fs.harness import MODES, ExperimentConfig, run_experiment
from fireworks_fs.reports import (
    comparison_records,
    emit_comparison_table,
    emit_report,
)

__all__ = ["build_parser", "main"]

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2
EXIT_RUNTIME = 3


class ConfigError(Exception):
    """Invalid flags, config file, or mode selection."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D102 - argparse hook
        raise ConfigError(message)


def _add_dataset_flags(sub):
    sub.add_argument("--dataset", required=True, help="path to a delimited text file")
    sub.add_argument(
        "--label-column",
        default="last",
        help="'first', 'last', or a header column name (default: last)",
    )
    sub.add_argument("--delimiter", default=None, help="field delimiter (default: sniff)")
    sub.add_argument("--header", action="store_true", help="first row is a header")
    sub.add_argument("--skip-rows", type=int, default=0, help="rows to skip before parsing")
    sub.add_argument("--name", default=None, help="display name (default: file stem)")


def _add_output_flags(sub):
    sub.add_argument("--out", default=None, help="write output here instead of stdout")
    sub.add_argument(
        "--format",
        choices=("table", "records"),
        default="table",
        help="output format (default: table)",
    )


def _add_run_flags(sub):
    sub.add_argument("--seed", type=int, default=0, help="base seed; trial t uses seed+t")
    sub.add_argument("--repeats", type=int, default=20, help="independent trials (default: 20)")
    sub.add_argument("--knn-k", type=int, default=5, help="neighbour count (default: 5)")
    sub.add_argument(
        "--train-fraction", type=float, default=0.7,
        help="stratified holdout train share (default: 0.7)",
    )
    sub.add_argument(
        "--fd-override", type=int, default=None,
        help="skip estimation and use this cardinality",
    )
    sub.add_argument("--population-size", type=int, default=5)
    sub.add_argument("--gaussian-sparks", type=int, default=5)
    sub.add_argument("--evaluations", type=int, default=200)
    sub.add_argument("--spark-cap", type=int, default=50)
    sub.add_argument(
        "--history", action="store_true",
        help="include per-generation records in records output",
    )
    sub.add_argument(
        "--config", default=None,
        help="key=value defaults file; command-line flags win",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fireworks-fs", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    subs = parser.add_subparsers(dest="command", required=True)

    reduce_p = subs.add_parser("reduce", help="fractal-dimension reduction summary")
    _add_dataset_flags(reduce_p)
    _add_output_flags(reduce_p)

    select_p = subs.add_parser("select", help="wrapper feature selection trials")
    _add_dataset_flags(select_p)
    _add_output_flags(select_p)
    _add_run_flags(select_p)
    select_p.add_argument(
        "--mode", default="lfwa_fd",
        choices=tuple(m for m in MODES if m != "fd_reduction"),
        help="experiment mode (default: lfwa_fd)",
    )

    ablate_p = subs.add_parser("ablate", help="comparison modes vs the fd-constrained search")
    _add_dataset_flags(ablate_p)
    _add_output_flags(ablate_p)
    _add_run_flags(ablate_p)
    ablate_p.add_argument(
        "--mode", default="full_features_m1,lfwa_unconstrained_m2",
        help="comma-separated comparison modes (default: m1,m2)",
    )
    parser.sub_parsers = {"reduce": reduce_p, "select": select_p, "ablate": ablate_p}
    return parser


def _apply_config_file(parser, argv):
    """Pre-scan for --config and install its key=value pairs as defaults."""
    path = None
    for i, arg in enumerate(argv):
        if arg == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif arg.startswith("--config="):
            path = arg.split("=", 1)[1]
    if path is None:
        return
    file = Path(path)
    if not file.is_file():
        raise ConfigError(f"config file not found: {file}")

    actions_by_dest: dict[str, argparse.Action] = {}
    for sub in parser.sub_parsers.values():
        for action in sub._actions:  # noqa: SLF001 - argparse has no public accessor
            actions_by_dest.setdefault(action.dest, action)

    values = {}
    for line_no, raw in enumerate(file.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{file}:{line_no}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        dest = key.replace("-", "_")
        if dest not in actions_by_dest:
            raise ConfigError(f"{file}:{line_no}: unknown key {key!r}")
        action = actions_by_dest[dest]
        if action.type is not None:
            try:
                values[dest] = action.type(value)
            except ValueError:
                raise ConfigError(
                    f"{file}:{line_no}: bad value {value!r} for {key!r}"
                ) from None
        elif action.const is True:
            values[dest] = value.lower() in ("1", "true", "yes")
        else:
            values[dest] = value
    for sub in parser.sub_parsers.values():
        sub.set_defaults(**{k: v for k, v in values.items()
                            if any(a.dest == k for a in sub._actions)})  # noqa: SLF001


def _dataset_spec(args) -> DatasetSpec:
    return DatasetSpec(
        path=args.dataset,
        label_column=args.label_column,
        delimiter=args.delimiter,
        header=args.header,
        skip_rows=args.skip_rows,
        name=args.name,
    )


def _experiment_config(args, mode: str) -> ExperimentConfig:
    try:
        return ExperimentConfig(
            dataset=_dataset_spec(args),
            mode=mode,
            repeats=args.repeats,
            base_seed=args.seed,
            population_size=args.population_size,
            gaussian_spark_count=args.gaussian_sparks,
            max_evaluations=args.evaluations,
            total_spark_cap=args.spark_cap,
            knn_k=args.knn_k,
            train_fraction=args.train_fraction,
            fd_override=args.fd_override,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _run_reduce(args) -> int:
    config = ExperimentConfig(dataset=_dataset_spec(args), mode="fd_reduction")
    report = run_experiment(config)
    _write(emit_report(report, args.format), args.out)
    return EXIT_OK


def _run_select(args) -> int:
    config = _experiment_config(args, args.mode)
    report = run_experiment(config)
    _write(emit_report(report, args.format, include_history=args.history), args.out)
    return EXIT_RUNTIME if report.failures else EXIT_OK


def _run_ablate(args) -> int:
    modes = [m.strip() for m in args.mode.split(",") if m.strip()]
    for mode in modes:
        if mode not in MODES or mode in ("fd_reduction", "lfwa_fd"):
            raise ConfigError(f"ablate mode must be a comparison mode, got {mode!r}")
    reference = run_experiment(_experiment_config(args, "lfwa_fd"))
    others = [run_experiment(_experiment_config(args, mode)) for mode in modes]
    failed = bool(reference.failures) or any(r.failures for r in others)
    if args.format == "records":
        chunks = [emit_report(r, "records", include_history=args.history)
                  for r in (reference, *others)]
        chunks.append(comparison_records(reference, others))
        _write("".join(chunks), args.out)
    else:
        _write(emit_comparison_table(reference, others), args.out)
    return EXIT_RUNTIME if failed else EXIT_OK


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config_file(parser, argv)
        args = parser.parse_args(argv)
        if args.command == "reduce":
            return _run_reduce(args)
        if args.command == "select":
            return _run_select(args)
        return _run_ablate(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DataFormatError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
