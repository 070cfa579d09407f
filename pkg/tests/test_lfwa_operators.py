"""Unit behavior of the explosion, mutation, mapping, and selection operators."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fireworks_fs import (
    Individual,
    SearchBounds,
    average_intensity,
    elite_random_select,
    explosion_intensity,
    explosion_radius,
    gaussian_sparks,
    generate_explosion_sparks,
    map_into_bounds,
)


def test_intensity_frozen_examples():
    np.testing.assert_array_equal(explosion_intensity([2, 10], m=5), [5, 1])
    np.testing.assert_array_equal(explosion_intensity([2, 6, 10], m=5), [5, 3, 1])
    np.testing.assert_array_equal(explosion_intensity([7, 7, 7], m=5), [1, 1, 1])


def test_intensity_base_defaults_to_vector_length():
    # base 3: midpoint exponent 0.5 -> ceil(sqrt(3)) = 2
    np.testing.assert_array_equal(explosion_intensity([2, 6, 10]), [3, 2, 1])


def test_intensity_validation():
    with pytest.raises(ValueError, match="non-finite"):
        explosion_intensity([1.0, np.inf])
    with pytest.raises(ValueError, match="non-empty"):
        explosion_intensity([])
    with pytest.raises(ValueError, match="positive"):
        explosion_intensity([1.0, 2.0], xi=0.0)


# quarter-integer fitnesses: spreads are 0 or >= 0.25 (far above xi), and
# +-10 shifts stay exact in binary, so the intensity properties hold exactly
dyadic_fitness = st.lists(
    st.integers(min_value=-4000, max_value=4000).map(lambda v: v / 4.0),
    min_size=2, max_size=8,
)


@given(dyadic_fitness)
@settings(max_examples=200, deadline=None)
def test_intensity_bounds_and_extremes(fitnesses):
    f = np.array(fitnesses)
    s = explosion_intensity(f, m=5)
    assert np.all(s >= 1) and np.all(s <= 5)
    if f.max() > f.min():
        assert s[int(np.argmin(f))] == 5
        assert s[int(np.argmax(f))] == 1


@given(dyadic_fitness, st.sampled_from([-10.0, 10.0]))
@settings(max_examples=100, deadline=None)
def test_intensity_shift_invariance(fitnesses, c):
    f = np.array(fitnesses)
    np.testing.assert_array_equal(
        explosion_intensity(f, m=5), explosion_intensity(f + c, m=5)
    )


def test_average_intensity():
    assert average_intensity([5, 3, 1]) == 3.0
    assert average_intensity([1]) == 1.0
    assert average_intensity([5] * 5) == 5.0
    with pytest.raises(ValueError):
        average_intensity([])


def test_radius_pbest_branch():
    r = explosion_radius((0.2, 0.1), (0.5, 0.5), (0.9, 0.9), s_i=1, s_avg=3.0)
    np.testing.assert_allclose(r, (0.3, 0.4))


def test_radius_core_branch_zero_for_core_itself():
    r = explosion_radius((0.2, 0.1), (0.5, 0.5), (0.2, 0.1), s_i=5, s_avg=3.0)
    np.testing.assert_allclose(r, (0.0, 0.0))


def test_radius_equal_intensity_takes_core_branch():
    r = explosion_radius((0.0, 0.0), (0.5, 0.5), (1.0, 1.0), s_i=3, s_avg=3.0)
    np.testing.assert_allclose(r, (1.0, 1.0))


class _OnesRng:
    """Deterministic beta = 1 hook."""

    def random(self, shape):
        return np.ones(shape)


def test_sparks_zero_radius_replicate_parent():
    rng = np.random.default_rng(0)
    sparks = generate_explosion_sparks((0.3, 0.8), (0.0, 0.0), 4, rng)
    for s in sparks:
        np.testing.assert_array_equal(s, (0.3, 0.8))


def test_sparks_beta_one_hits_upper_endpoint():
    sparks = generate_explosion_sparks((0.1, 0.2), (0.3, 0.4), 2, _OnesRng())
    for s in sparks:
        np.testing.assert_allclose(s, (0.4, 0.6))


def test_sparks_monte_carlo_mean():
    rng = np.random.default_rng(123)
    sparks = generate_explosion_sparks((0.5,), (0.2,), 10_000, rng)
    assert abs(np.mean(sparks) - 0.6) <= 0.01


def test_sparks_scalar_beta_moves_dims_together():
    rng = np.random.default_rng(1)
    sparks = generate_explosion_sparks(
        (0.0, 0.0), (1.0, 1.0), 50, rng, per_dimension=False
    )
    for s in sparks:
        assert s[0] == s[1]


def test_sparks_per_dimension_beta_moves_dims_independently():
    rng = np.random.default_rng(1)
    sparks = generate_explosion_sparks((0.0, 0.0), (1.0, 1.0), 50, rng)
    assert any(s[0] != s[1] for s in sparks)


def test_sparks_respect_bounds_when_given():
    rng = np.random.default_rng(2)
    bounds = SearchBounds(2)
    sparks = generate_explosion_sparks((0.9, 0.9), (0.5, 0.5), 200, rng, bounds)
    arr = np.array(sparks)
    assert arr.min() >= 0.0 and arr.max() <= 1.0


def test_spark_count_validation():
    with pytest.raises(ValueError, match="at least one"):
        generate_explosion_sparks((0.5,), (0.1,), 0, np.random.default_rng(0))


class _GaussStub:
    """Mutates every dimension of parent 0 with N(0,1) pinned to zero."""

    def integers(self, low, high):
        return low if low == 0 else high - 1

    def choice(self, d, size, replace):
        return np.arange(size)

    def standard_normal(self, n):
        return np.zeros(n)


def test_gaussian_zero_sample_leaves_parent_unchanged():
    pop = [Individual(np.array([0.3, 0.6]), 1.0)]
    sparks = gaussian_sparks(pop, 3, _GaussStub())
    for s in sparks:
        np.testing.assert_array_equal(s, (0.3, 0.6))


def test_gaussian_zero_coordinate_is_fixed_point():
    pop = [Individual(np.array([0.0]), 1.0)]
    sparks = gaussian_sparks(pop, 100, np.random.default_rng(3))
    for s in sparks:
        assert s[0] == 0.0


def test_gaussian_monte_carlo_moments():
    # x*(N+1) has mean x and std |x|
    pop = [Individual(np.array([0.4]), 1.0)]
    sparks = np.array(gaussian_sparks(pop, 10_000, np.random.default_rng(7)))
    assert abs(sparks.mean() - 0.4) <= 0.02
    assert abs(sparks.std() - 0.4) <= 0.02


def test_gaussian_respects_bounds_when_given():
    pop = [Individual(np.array([0.9, 0.9]), 1.0)]
    sparks = gaussian_sparks(pop, 500, np.random.default_rng(8), SearchBounds(2))
    arr = np.array(sparks)
    assert arr.min() >= 0.0 and arr.max() <= 1.0


def test_gaussian_validation():
    with pytest.raises(ValueError, match="non-negative"):
        gaussian_sparks([Individual(np.zeros(1), 0.0)], -1, np.random.default_rng(0))
    with pytest.raises(ValueError, match="non-empty"):
        gaussian_sparks([], 1, np.random.default_rng(0))


def test_map_into_bounds_examples():
    rng = np.random.default_rng(4)
    bounds = SearchBounds(2)
    np.testing.assert_array_equal(
        map_into_bounds((0.3, 0.7), bounds, rng), (0.3, 0.7)
    )
    np.testing.assert_array_equal(
        map_into_bounds((0.0, 1.0), bounds, rng), (0.0, 1.0)
    )
    mapped = map_into_bounds((-0.2, 1.5), bounds, rng)
    assert np.all(mapped >= 0.0) and np.all(mapped < 1.0)


def test_map_into_bounds_touches_only_violations():
    rng = np.random.default_rng(5)
    mapped = map_into_bounds((-3.0, 0.25, 9.0), SearchBounds(3), rng)
    assert mapped[1] == 0.25
    assert 0.0 <= mapped[0] < 1.0 and 0.0 <= mapped[2] < 1.0


@given(
    st.lists(st.floats(min_value=-5, max_value=5, allow_nan=False), min_size=1, max_size=6)
)
@settings(max_examples=200, deadline=None)
def test_map_into_bounds_closure(vec):
    rng = np.random.default_rng(6)
    out = map_into_bounds(vec, SearchBounds(len(vec), 0.0, 1.0), rng)
    assert np.all(out >= 0.0) and np.all(out <= 1.0)
    for v, o in zip(vec, out):
        if 0.0 <= v <= 1.0:
            assert o == v


def population(fitnesses):
    return [Individual(np.array([float(i)]), float(f)) for i, f in enumerate(fitnesses)]


def test_elite_first_slot_and_random_rest():
    rng = np.random.default_rng(0)
    chosen = elite_random_select(population([3, 1, 2]), 2, rng)
    assert chosen[0].fitness == 1
    assert chosen[1].fitness in (3, 2)


def test_elite_exhaustive_is_best_first_permutation():
    rng = np.random.default_rng(1)
    chosen = elite_random_select(population([4, 2, 9]), 3, rng)
    assert chosen[0].fitness == 2
    assert sorted(c.fitness for c in chosen) == [2, 4, 9]


def test_elite_tie_prefers_lowest_index():
    rng = np.random.default_rng(2)
    pop = population([5, 5, 5])
    chosen = elite_random_select(pop, 1, rng)
    assert chosen[0].position[0] == pop[0].position[0]


def test_elite_too_few_candidates_rejected():
    with pytest.raises(ValueError, match="at least"):
        elite_random_select(population([1]), 2, np.random.default_rng(0))


def test_elite_returns_copies():
    rng = np.random.default_rng(3)
    pop = population([1, 2, 3])
    chosen = elite_random_select(pop, 3, rng)
    chosen[0].position[0] = 99.0
    assert pop[0].position[0] == 0.0


def test_elite_non_elite_slots_uniform():
    # 1 elite + 10 others, M=5: each other appears with p = 4/10
    rng = np.random.default_rng(9)
    pop = population([0] + [1] * 10)
    trials = 10_000
    counts = np.zeros(11)
    for _ in range(trials):
        for ind in elite_random_select(pop, 5, rng)[1:]:
            counts[int(ind.position[0])] += 1
    expected = trials * 0.4
    sigma = (trials * 0.4 * 0.6) ** 0.5
    for c in counts[1:]:
        assert abs(c - expected) <= 5 * sigma
