"""Experiment orchestration: seeded repeated trials per mode, aggregated
into a RunReport.

Modes mirror the published experiment grid: `fd_reduction` reports the
fractal-dimension ceiling and reduction rate, `lfwa_fd` runs the
cardinality-constrained wrapper search, `full_features_m1` scores the
untouched feature set, `lfwa_unconstrained_m2` searches free-size masks,
and `random_subset_baseline` scores uniformly random masks at the same
cardinality as a sanity floor. Trial t uses seed base_seed + t for both the
optimizer and the holdout split.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from fireworks_fs.data import DatasetSpec, load_dataset
from fireworks_fs.fractal import FDEstimate, estimate_fd, reduction_rate
from fireworks_fs.knn import Dataset
from fireworks_fs.lfwa import LfwaConfig
from fireworks_fs.reports import (
    RunReport,
    TrialFailure,
    TrialResult,
    aggregate_accuracy,
)
from fireworks_fs.selection import (
    FeatureMask,
    ScoringConfig,
    normalized_split,
    select_features,
    subset_fitness,
)

__all__ = ["MODES", "ExperimentConfig", "run_experiment"]

MODES = (
    "fd_reduction",
    "lfwa_fd",
    "full_features_m1",
    "lfwa_unconstrained_m2",
    "random_subset_baseline",
)

_FD_MODES = ("fd_reduction", "lfwa_fd", "random_subset_baseline")


@dataclass(frozen=True)
class ExperimentConfig:
    dataset: DatasetSpec
    mode: str = "lfwa_fd"
    repeats: int = 20
    base_seed: int = 0
    population_size: int = 5
    gaussian_spark_count: int = 5
    max_evaluations: int = 200
    total_spark_cap: int = 50
    xi: float = 1e-12
    knn_k: int = 5
    train_fraction: float = 0.7
    fd_override: int | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.repeats < 1:
            raise ValueError("repeats must be at least 1")

    def lfwa_config(self, seed: int) -> LfwaConfig:
        return LfwaConfig(
            population_size=self.population_size,
            gaussian_spark_count=self.gaussian_spark_count,
            max_evaluations=self.max_evaluations,
            total_spark_cap=self.total_spark_cap,
            xi=self.xi,
            rng_seed=seed,
        )

    def scoring(self, seed: int) -> ScoringConfig:
        return ScoringConfig(
            knn_k=self.knn_k,
            train_fraction=self.train_fraction,
            split_seed=seed,
        )


def _search_trial(config: ExperimentConfig, data: Dataset, seed: int,
                  constraint_mode: str, fd_est: FDEstimate | None) -> TrialResult:
    outcome = select_features(
        data,
        config.lfwa_config(seed),
        config.scoring(seed),
        constraint_mode=constraint_mode,
        fd_override=config.fd_override if constraint_mode == "fd" else None,
        fd_estimate=fd_est,
    )
    return TrialResult(
        seed=seed,
        mask=outcome.mask.selected_indices,
        accuracy=outcome.accuracy,
        evaluations=outcome.evaluations,
        history=tuple(
            (st.generation, st.evaluations, st.best_fitness)
            for st in outcome.history
        ),
    )


def _fixed_mask_trial(config: ExperimentConfig, data: Dataset, seed: int,
                      mask: FeatureMask) -> TrialResult:
    train, test = normalized_split(data, config.scoring(seed))
    fitness = subset_fitness(mask, train, test, config.scoring(seed))
    return TrialResult(
        seed=seed,
        mask=mask.selected_indices,
        accuracy=-fitness,
        evaluations=1,
    )


def run_experiment(config: ExperimentConfig, data: Dataset | None = None) -> RunReport:
    if data is None:
        data = load_dataset(config.dataset)
    name = config.dataset.display_name
    d = data.n_features

    fd_est: FDEstimate | None = None
    cardinality: int | None = None
    rr: float | None = None
    if config.mode in _FD_MODES:
        if config.fd_override is not None:
            cardinality = int(config.fd_override)
        else:
            fd_est = estimate_fd(data.features)
            cardinality = fd_est.cardinality
        rr = reduction_rate(d, cardinality)

    trials: list[TrialResult] = []
    failures: list[TrialFailure] = []
    if config.mode != "fd_reduction":
        for t in range(config.repeats):
            seed = config.base_seed + t
            started = time.perf_counter()
            try:
                if config.mode == "lfwa_fd":
                    trial = _search_trial(config, data, seed, "fd", fd_est)
                elif config.mode == "lfwa_unconstrained_m2":
                    trial = _search_trial(config, data, seed, "unconstrained", None)
                elif config.mode == "full_features_m1":
                    trial = _fixed_mask_trial(config, data, seed, FeatureMask.full(d))
                else:
                    rng = np.random.default_rng(seed)
                    cols = np.sort(rng.choice(d, size=cardinality, replace=False))
                    mask = FeatureMask.from_indices(cols + 1, d)
                    trial = _fixed_mask_trial(config, data, seed, mask)
            except Exception as exc:  # noqa: BLE001 - trial isolation is the point
                failures.append(TrialFailure(seed=seed, error=f"{type(exc).__name__}: {exc}"))
                continue
            trials.append(
                TrialResult(
                    seed=trial.seed,
                    mask=trial.mask,
                    accuracy=trial.accuracy,
                    evaluations=trial.evaluations,
                    wall_time_s=time.perf_counter() - started,
                    history=trial.history,
                )
            )

    agg = aggregate_accuracy(trials)
    return RunReport(
        dataset=name,
        mode=config.mode,
        trials=tuple(trials),
        failures=tuple(failures),
        fd_estimate=fd_est,
        cardinality=cardinality,
        reduction_rate_pct=rr,
        **agg,
    )
