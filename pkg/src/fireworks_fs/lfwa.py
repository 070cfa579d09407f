"""Lite fireworks optimizer: few parameters, archive-guided explosions.

Each generation the M fireworks emit explosion sparks (count set by relative
fitness, direction by a personal-best or core-firework radius vector) plus a
handful of multiplicative Gaussian sparks. The next generation keeps the best
candidate and fills the rest uniformly at random ("elite-random" selection).
Fitness is minimized. All randomness flows through one seeded generator, so
a config fully determines the run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GenerationStats",
    "Individual",
    "LfwaConfig",
    "ObjectiveError",
    "PbestArchive",
    "SearchBounds",
    "average_intensity",
    "elite_random_select",
    "explosion_intensity",
    "explosion_radius",
    "gaussian_sparks",
    "generate_explosion_sparks",
    "history_lines",
    "map_into_bounds",
    "optimize",
    "parse_history_lines",
]


class ObjectiveError(RuntimeError):
    """Raised when the objective returns a non-finite value."""


@dataclass(frozen=True)
class SearchBounds:
    """Closed box [lower, upper]^dim."""

    dim: int
    lower: float = 0.0
    upper: float = 1.0

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be at least 1")
        if not self.lower < self.upper:
            raise ValueError("lower bound must be below upper bound")


@dataclass
class Individual:
    position: np.ndarray
    fitness: float

    def copy(self) -> "Individual":
        return Individual(self.position.copy(), self.fitness)


@dataclass(frozen=True)
class LfwaConfig:
    """Optimizer knobs; defaults follow the reference configuration.

    per_dimension_beta chooses whether the explosion displacement factor is
    drawn per dimension (default) or once per spark.
    """

    population_size: int = 5
    gaussian_spark_count: int = 5
    max_evaluations: int = 200
    total_spark_cap: int = 50
    xi: float = 1e-12
    rng_seed: int = 0
    per_dimension_beta: bool = True

    def __post_init__(self):
        if self.population_size < 2:
            raise ValueError("population_size must be at least 2")
        if self.max_evaluations < self.population_size:
            raise ValueError("max_evaluations must cover the initial population")
        if self.xi <= 0:
            raise ValueError("xi must be positive")
        if self.total_spark_cap < self.population_size:
            raise ValueError("total_spark_cap must be at least population_size")
        if self.gaussian_spark_count < 0:
            raise ValueError("gaussian_spark_count must be non-negative")


class PbestArchive:
    """Per-slot best-ever individuals; entry i never worsens."""

    def __init__(self, fireworks):
        self.entries = [fw.copy() for fw in fireworks]

    def update(self, fireworks) -> None:
        for i, fw in enumerate(fireworks):
            if fw.fitness < self.entries[i].fitness:
                self.entries[i] = fw.copy()

    def core_index(self) -> int:
        fits = [e.fitness for e in self.entries]
        return min(range(len(fits)), key=lambda i: (fits[i], i))

    def core(self) -> Individual:
        """The core firework: minimal archive fitness, ties to lowest index."""
        return self.entries[self.core_index()]


@dataclass(frozen=True)
class GenerationStats:
    generation: int
    best_fitness: float
    evaluations: int
    spark_counts: tuple[int, ...]


def explosion_intensity(fitnesses, xi: float = 1e-12, m: int | None = None) -> np.ndarray:
    """Spark count per firework: ceil(m ** ((f_max - f_i) / (f_max - f_min + xi))).

    The base m defaults to the vector length; the best firework gets the
    largest count, the worst exactly 1.
    """
    f = np.asarray(fitnesses, dtype=np.float64)
    if f.ndim != 1 or f.size == 0:
        raise ValueError("fitnesses must be a non-empty 1-D vector")
    if not np.all(np.isfinite(f)):
        raise ValueError("fitnesses contain non-finite values")
    if xi <= 0:
        raise ValueError("xi must be positive")
    if m is None:
        m = f.size
    exponent = (f.max() - f) / (f.max() - f.min() + xi)
    return np.ceil(np.power(float(m), exponent)).astype(np.int64)


def average_intensity(s) -> float:
    s = np.asarray(s)
    if s.size == 0:
        raise ValueError("empty intensity vector")
    return float(s.mean())


def explosion_radius(x_i, pbest_i, x_cf, s_i: int, s_avg: float) -> np.ndarray:
    """Direction vector: towards own pbest below average intensity, else towards the core."""
    x_i = np.asarray(x_i, dtype=np.float64)
    if s_i < s_avg:
        return np.asarray(pbest_i, dtype=np.float64) - x_i
    return np.asarray(x_cf, dtype=np.float64) - x_i


def generate_explosion_sparks(x_i, radius, s_i: int, rng, bounds: SearchBounds | None = None,
                              per_dimension: bool = True) -> list[np.ndarray]:
    """s_i sparks at x_i + beta * radius, beta uniform in [0,1].

    With bounds given, each spark is passed through map_into_bounds.
    """
    if s_i < 1:
        raise ValueError("need at least one spark")
    x_i = np.asarray(x_i, dtype=np.float64)
    radius = np.asarray(radius, dtype=np.float64)
    if per_dimension:
        betas = rng.random((s_i, x_i.size))
    else:
        betas = rng.random(s_i)[:, None]
    sparks = x_i[None, :] + betas * radius[None, :]
    out = [np.array(row) for row in sparks]
    if bounds is not None:
        out = [map_into_bounds(row, bounds, rng) for row in out]
    return out


def gaussian_sparks(population, count: int, rng,
                    bounds: SearchBounds | None = None) -> list[np.ndarray]:
    """Multiplicative Gaussian mutants of uniformly chosen parents.

    Each spark rescales n (uniform in 1..d) distinct dimensions by
    (N(0,1) + 1); the rest are copied. Bounds, when given, are enforced via
    map_into_bounds.
    """
    if count < 0:
        raise ValueError("count must be non-negative")
    if not population:
        raise ValueError("population must be non-empty")
    d = population[0].position.size
    out = []
    for _ in range(count):
        parent = population[int(rng.integers(0, len(population)))]
        pos = parent.position.copy()
        n_dims = int(rng.integers(1, d + 1))
        dims = rng.choice(d, size=n_dims, replace=False)
        pos[dims] = pos[dims] * (rng.standard_normal(n_dims) + 1.0)
        if bounds is not None:
            pos = map_into_bounds(pos, bounds, rng)
        out.append(pos)
    return out


def map_into_bounds(position, bounds: SearchBounds, rng) -> np.ndarray:
    """Resample out-of-bounds dimensions uniformly; leave the rest untouched."""
    pos = np.array(position, dtype=np.float64)
    violating = (pos < bounds.lower) | (pos > bounds.upper)
    n_bad = int(violating.sum())
    if n_bad:
        pos[violating] = bounds.lower + rng.random(n_bad) * (bounds.upper - bounds.lower)
    return pos


def elite_random_select(candidates, m: int, rng) -> list[Individual]:
    """Best candidate first (ties to lowest index), rest uniform without replacement."""
    if len(candidates) < m:
        raise ValueError(f"need at least {m} candidates, got {len(candidates)}")
    fits = [c.fitness for c in candidates]
    best = min(range(len(candidates)), key=lambda i: (fits[i], i))
    rest = [i for i in range(len(candidates)) if i != best]
    chosen = []
    if m > 1:
        picks = rng.choice(len(rest), size=m - 1, replace=False)
        chosen = [rest[int(p)] for p in picks]
    return [candidates[best].copy()] + [candidates[i].copy() for i in chosen]


def _cap_spark_counts(s: np.ndarray, cap: int) -> np.ndarray:
    total = int(s.sum())
    if total <= cap:
        return s
    scaled = np.maximum((s * cap) // total, 1)
    # flooring with a minimum of one can still overshoot; shave the largest
    # counts (lowest index first) until the cap holds
    while int(scaled.sum()) > cap:
        i = int(np.argmax(scaled))
        if scaled[i] == 1:
            break
        scaled[i] -= 1
    return scaled


def optimize(objective, bounds: SearchBounds, config: LfwaConfig,
             on_generation=None) -> tuple[Individual, list[GenerationStats]]:
    """Minimize `objective` over the box until the evaluation budget is spent.

    Parameters
    ----------
    objective : callable(position: ndarray) -> float
        Must return a finite value and must not mutate the position.
    bounds : SearchBounds
    config : LfwaConfig
    on_generation : callable(generation, fireworks, archive), optional
        Observation hook, invoked after each generation's selection.

    Returns
    -------
    (best, history) : the best-ever Individual and per-generation stats.
    """
    rng = np.random.default_rng(config.rng_seed)
    m = config.population_size
    budget = config.max_evaluations
    state = {"evals": 0, "best": None}

    def evaluate(position: np.ndarray) -> Individual:
        value = float(objective(position))
        if not math.isfinite(value):
            raise ObjectiveError(
                f"objective returned {value!r} at position {position.tolist()!r}"
            )
        state["evals"] += 1
        ind = Individual(position, value)
        if state["best"] is None or value < state["best"].fitness:
            state["best"] = ind.copy()
        return ind

    init = rng.uniform(bounds.lower, bounds.upper, size=(m, bounds.dim))
    fireworks = [evaluate(np.array(row)) for row in init]
    archive = PbestArchive(fireworks)
    history = [GenerationStats(0, state["best"].fitness, state["evals"], (0,) * m)]
    if on_generation is not None:
        on_generation(0, fireworks, archive)

    generation = 0
    while state["evals"] < budget:
        generation += 1
        fits = np.array([fw.fitness for fw in fireworks])
        s = explosion_intensity(fits, xi=config.xi, m=m)
        s = _cap_spark_counts(s, config.total_spark_cap)
        s_avg = average_intensity(s)
        core = archive.core()

        positions: list[np.ndarray] = []
        for i, fw in enumerate(fireworks):
            radius = explosion_radius(
                fw.position, archive.entries[i].position, core.position,
                int(s[i]), s_avg,
            )
            positions += generate_explosion_sparks(
                fw.position, radius, int(s[i]), rng, bounds,
                per_dimension=config.per_dimension_beta,
            )
        positions += gaussian_sparks(fireworks, config.gaussian_spark_count, rng, bounds)

        sparks = [evaluate(p) for p in positions[: budget - state["evals"]]]
        candidates = fireworks + archive.entries + [core] + sparks
        fireworks = elite_random_select(candidates, m, rng)
        archive.update(fireworks)
        history.append(
            GenerationStats(
                generation, state["best"].fitness, state["evals"],
                tuple(int(v) for v in s),
            )
        )
        if on_generation is not None:
            on_generation(generation, fireworks, archive)

    return state["best"].copy(), history


def history_lines(history) -> list[str]:
    """One generation per line: index, evaluations used, best fitness."""
    return [
        f"{st.generation} {st.evaluations} {st.best_fitness!r}" for st in history
    ]


def parse_history_lines(lines) -> list[tuple[int, int, float]]:
    out = []
    for line in lines:
        gen, evals, best = line.split()
        out.append((int(gen), int(evals), float(best)))
    return out
