"""Run reports: per-trial results, aggregates, and two output formats.

`records` is a line-oriented JSON format, one self-describing record per
line, closed by an aggregate record; it is byte-deterministic for a given
report (wall-clock time is deliberately excluded). `table` is a human
readable fixed-width rendering in the layout of the published result
tables.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, replace

import numpy as np

from fireworks_fs.fractal import FDEstimate

__all__ = [
    "ComparisonRow",
    "RunReport",
    "TrialFailure",
    "TrialResult",
    "aggregate_accuracy",
    "compare_reports",
    "comparison_records",
    "emit_comparison_table",
    "emit_records",
    "emit_report",
    "emit_table",
    "parse_records",
]


@dataclass(frozen=True)
class TrialResult:
    seed: int
    mask: tuple[int, ...]
    accuracy: float
    evaluations: int
    wall_time_s: float | None = None
    history: tuple[tuple[int, int, float], ...] | None = None


@dataclass(frozen=True)
class TrialFailure:
    seed: int
    error: str


@dataclass(frozen=True)
class RunReport:
    dataset: str
    mode: str
    trials: tuple[TrialResult, ...] = ()
    failures: tuple[TrialFailure, ...] = ()
    fd_estimate: FDEstimate | None = None
    cardinality: int | None = None
    reduction_rate_pct: float | None = None
    mean_accuracy: float | None = None
    std_accuracy: float | None = None
    best_accuracy: float | None = None
    top_mask: tuple[int, ...] | None = None

    def stripped(self) -> "RunReport":
        """Copy without fields the records format does not carry."""
        return replace(
            self,
            trials=tuple(
                replace(t, wall_time_s=None, history=None) for t in self.trials
            ),
        )


def aggregate_accuracy(trials) -> dict:
    """Mean/std/best accuracy and the most frequent mask (ties: smallest)."""
    if not trials:
        return {
            "mean_accuracy": None,
            "std_accuracy": None,
            "best_accuracy": None,
            "top_mask": None,
        }
    acc = np.array([t.accuracy for t in trials], dtype=np.float64)
    counts = Counter(t.mask for t in trials)
    top = min(counts, key=lambda m: (-counts[m], m))
    return {
        "mean_accuracy": float(acc.mean()),
        "std_accuracy": float(acc.std()),
        "best_accuracy": float(acc.max()),
        "top_mask": top,
    }


def _dump(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def emit_records(report: RunReport, include_history: bool = False) -> str:
    lines = []
    for t in report.trials:
        lines.append(
            _dump(
                {
                    "type": "trial",
                    "dataset": report.dataset,
                    "mode": report.mode,
                    "seed": t.seed,
                    "mask": list(t.mask),
                    "accuracy": t.accuracy,
                    "evaluations": t.evaluations,
                }
            )
        )
        if include_history and t.history is not None:
            for gen, evals, best in t.history:
                lines.append(
                    _dump(
                        {
                            "type": "generation",
                            "seed": t.seed,
                            "generation": gen,
                            "evaluations": evals,
                            "best_fitness": best,
                        }
                    )
                )
    for f in report.failures:
        lines.append(
            _dump(
                {
                    "type": "failure",
                    "dataset": report.dataset,
                    "mode": report.mode,
                    "seed": f.seed,
                    "error": f.error,
                }
            )
        )
    agg = {
        "type": "aggregate",
        "dataset": report.dataset,
        "mode": report.mode,
        "trials": len(report.trials),
        "mean_accuracy": report.mean_accuracy,
        "std_accuracy": report.std_accuracy,
        "best_accuracy": report.best_accuracy,
        "top_mask": list(report.top_mask) if report.top_mask is not None else None,
        "cardinality": report.cardinality,
        "reduction_rate_pct": report.reduction_rate_pct,
    }
    if report.fd_estimate is not None:
        est = report.fd_estimate
        agg["fd"] = est.fd
        agg["fd_window"] = [est.window[0], est.window[1]]
        agg["fd_r_squared"] = est.r_squared
        agg["fd_degenerate"] = est.degenerate
    else:
        agg["fd"] = None
    lines.append(_dump(agg))
    return "\n".join(lines) + "\n"


def parse_records(text: str) -> list[RunReport]:
    """Rebuild reports from a records stream (may contain several)."""
    reports = []
    trials: list[TrialResult] = []
    failures: list[TrialFailure] = []
    histories: dict[int, list[tuple[int, int, float]]] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        rec = json.loads(line)
        kind = rec.get("type")
        if kind == "trial":
            trials.append(
                TrialResult(
                    seed=rec["seed"],
                    mask=tuple(rec["mask"]),
                    accuracy=rec["accuracy"],
                    evaluations=rec["evaluations"],
                )
            )
        elif kind == "generation":
            histories.setdefault(rec["seed"], []).append(
                (rec["generation"], rec["evaluations"], rec["best_fitness"])
            )
        elif kind == "failure":
            failures.append(TrialFailure(seed=rec["seed"], error=rec["error"]))
        elif kind == "aggregate":
            estimate = None
            if rec.get("fd") is not None:
                estimate = FDEstimate(
                    fd=rec["fd"],
                    window=(rec["fd_window"][0], rec["fd_window"][1]),
                    r_squared=rec["fd_r_squared"],
                    cardinality=rec["cardinality"],
                    degenerate=rec["fd_degenerate"],
                )
            if histories:
                trials = [
                    replace(t, history=tuple(histories[t.seed]))
                    if t.seed in histories
                    else t
                    for t in trials
                ]
            reports.append(
                RunReport(
                    dataset=rec["dataset"],
                    mode=rec["mode"],
                    trials=tuple(trials),
                    failures=tuple(failures),
                    fd_estimate=estimate,
                    cardinality=rec["cardinality"],
                    reduction_rate_pct=rec["reduction_rate_pct"],
                    mean_accuracy=rec["mean_accuracy"],
                    std_accuracy=rec["std_accuracy"],
                    best_accuracy=rec["best_accuracy"],
                    top_mask=tuple(rec["top_mask"])
                    if rec["top_mask"] is not None
                    else None,
                )
            )
            trials, failures, histories = [], [], {}
        elif kind == "comparison":
            continue
        else:
            raise ValueError(f"line {line_no}: unknown record type {kind!r}")
    return reports


def _fmt(value, digits=2, width=0) -> str:
    if value is None:
        text = "-"
    elif isinstance(value, float):
        text = f"{value:.{digits}f}"
    else:
        text = str(value)
    return text.rjust(width) if width else text


def _render(headers, rows) -> str:
    widths = [len(h) for h in headers]
    str_rows = [[str(c) for c in row] for row in rows]
    for row in str_rows:
        widths = [max(w, len(c)) for w, c in zip(widths, row)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for row in str_rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def emit_table(report: RunReport) -> str:
    if report.mode == "fd_reduction":
        est = report.fd_estimate
        return _render(
            ["dataset", "FD", "ceil(FD)", "RR(%)"],
            [
                [
                    report.dataset,
                    _fmt(est.fd if est else None, 4),
                    _fmt(report.cardinality),
                    _fmt(report.reduction_rate_pct),
                ]
            ],
        )
    rows = [
        [t.seed, "{" + ", ".join(str(i) for i in t.mask) + "}",
         _fmt(t.accuracy), t.evaluations]
        for t in report.trials
    ]
    table = _render(["seed", "subset", "acc(%)", "evals"], rows)
    summary = [
        f"dataset: {report.dataset}",
        f"mode: {report.mode}",
        f"trials: {len(report.trials)}",
    ]
    if report.failures:
        summary.append(f"failures: {len(report.failures)}")
    if report.mean_accuracy is not None:
        summary.append(
            "accuracy mean/std/best: "
            f"{report.mean_accuracy:.2f} / {report.std_accuracy:.2f} / "
            f"{report.best_accuracy:.2f}"
        )
    if report.top_mask is not None:
        summary.append(
            "top subset: {" + ", ".join(str(i) for i in report.top_mask) + "}"
        )
    if report.fd_estimate is not None:
        summary.append(
            f"fd: {report.fd_estimate.fd:.4f} (r^2 {report.fd_estimate.r_squared:.4f})"
        )
    if report.cardinality is not None:
        summary.append(f"cardinality: {report.cardinality}")
    if report.reduction_rate_pct is not None:
        summary.append(f"reduction rate: {report.reduction_rate_pct:.2f}%")
    return table + "\n" + "\n".join(summary) + "\n"


@dataclass(frozen=True)
class ComparisonRow:
    mode: str
    subset: tuple[int, ...] | None
    n_features: int | None
    mean_accuracy: float | None
    best_accuracy: float | None
    delta_mean: float | None


def compare_reports(reference: RunReport, others) -> list[ComparisonRow]:
    """Reference row first; each other row carries reference mean - its mean."""
    rows = [
        ComparisonRow(
            mode=reference.mode,
            subset=reference.top_mask,
            n_features=len(reference.top_mask) if reference.top_mask else None,
            mean_accuracy=reference.mean_accuracy,
            best_accuracy=reference.best_accuracy,
            delta_mean=None,
        )
    ]
    for rep in others:
        delta = None
        if reference.mean_accuracy is not None and rep.mean_accuracy is not None:
            delta = reference.mean_accuracy - rep.mean_accuracy
        rows.append(
            ComparisonRow(
                mode=rep.mode,
                subset=rep.top_mask,
                n_features=len(rep.top_mask) if rep.top_mask else None,
                mean_accuracy=rep.mean_accuracy,
                best_accuracy=rep.best_accuracy,
                delta_mean=delta,
            )
        )
    return rows


def emit_comparison_table(reference: RunReport, others) -> str:
    rows = []
    for row in compare_reports(reference, others):
        subset = (
            "{" + ", ".join(str(i) for i in row.subset) + "}" if row.subset else "-"
        )
        rows.append(
            [
                reference.dataset,
                row.mode,
                subset,
                _fmt(row.n_features),
                _fmt(row.mean_accuracy),
                _fmt(row.best_accuracy),
                _fmt(row.delta_mean) if row.delta_mean is not None else "-",
            ]
        )
    return _render(
        ["dataset", "method", "subset", "dims", "acc(%)", "best(%)", "dAcc"], rows
    )


def comparison_records(reference: RunReport, others) -> str:
    lines = []
    for row in compare_reports(reference, others)[1:]:
        lines.append(
            _dump(
                {
                    "type": "comparison",
                    "dataset": reference.dataset,
                    "reference_mode": reference.mode,
                    "mode": row.mode,
                    "mean_accuracy": row.mean_accuracy,
                    "reference_mean_accuracy": reference.mean_accuracy,
                    "delta_mean_accuracy": row.delta_mean,
                }
            )
        )
    return "\n".join(lines) + "\n" if lines else ""


def emit_report(report: RunReport, fmt: str = "table",
                include_history: bool = False) -> str:
    if fmt == "table":
        return emit_table(report)
    if fmt == "records":
        return emit_records(report, include_history=include_history)
    raise ValueError(f"unknown format {fmt!r}")
