import itertools
import math

import numpy as np
import pytest

from statesynth.errors import ValidationFailure
from statesynth.mathkernel import find_roots
from statesynth.probability import breakdown
from statesynth.search import (
    golden_section_max,
    optimize_common_T,
    optimize_root_order,
    optimize_stagewise,
    sweep_grid,
    sweep_T,
    validate_config,
)
from statesynth.synthesis import BeamSplitter, characteristic_coeffs, compile_plan, plan_with_order


def test_golden_section_max_finds_parabola_peak():
    x, fx = golden_section_max(lambda v: -(v - 0.3) ** 2, 0.0, 1.0, 1e-6)
    assert x == pytest.approx(0.3, abs=1e-5)
    assert fx == pytest.approx(0.0, abs=1e-10)


def test_sweep_single_photon_is_reflectance(one_photon):
    grid = [0.5, 0.9, 0.99]
    curve = sweep_T(one_photon, grid)
    assert [p.abs_t for p in curve.samples] == grid
    for point in curve.samples:
        assert point.error is None
        assert point.prob == pytest.approx(1 - point.abs_t ** 2, rel=1e-12)
    assert curve.N == 1
    assert curve.target_id == "|1>"


@pytest.mark.parametrize("grid", [[0.9, 0.5], [0.0, 0.5], [0.5, 1.0]])
def test_sweep_rejects_bad_grids(one_photon, grid):
    with pytest.raises(ValueError):
        sweep_T(one_photon, grid)


def test_sweep_grid_is_inclusive_and_nested():
    coarse = sweep_grid(0.5, 0.6, 0.01)
    fine = sweep_grid(0.5, 0.6, 0.005)
    assert coarse[0] == 0.5 and coarse[-1] == 0.6
    assert len(coarse) == 11 and len(fine) == 21
    assert set(coarse) <= set(fine)
    assert sweep_grid(0.9, 0.9, 0.001) == [0.9]


def test_common_T_for_single_photon_sits_at_lower_edge(one_photon):
    best_t, best_p = optimize_common_T(one_photon, (0.1, 0.99))
    assert best_t == pytest.approx(0.1, abs=1e-5)
    assert best_p == pytest.approx(0.99, rel=1e-6)


def test_common_T_beats_every_grid_point(phase5):
    best_t, best_p = optimize_common_T(phase5, (0.5, 0.999))
    assert 0.5 < best_t < 0.999
    for abs_t in np.linspace(0.5, 0.999, 101):
        assert best_p >= breakdown(compile_plan(phase5, BeamSplitter.from_transmittance(abs_t))).total


def test_root_order_single_stage(one_photon):
    order, p = optimize_root_order(one_photon, BeamSplitter.from_transmittance(0.9))
    assert order == (0,)
    assert p == pytest.approx(0.19)


def test_root_order_equal_roots_are_indistinguishable(from_roots):
    target = from_roots([0.6 + 0.2j] * 3)
    bs = BeamSplitter.from_transmittance(0.9)
    roots = find_roots(characteristic_coeffs(target))
    totals = [breakdown(plan_with_order(target, bs, roots, order)).total for order in itertools.permutations(range(3))]
    assert max(totals) == pytest.approx(min(totals), rel=1e-12)
    order, _ = optimize_root_order(target, bs)
    assert order == (0, 1, 2)


def test_root_order_never_worse_than_canonical(from_roots):
    target = from_roots([0.3, -0.8j, 1.1 + 0.2j, -0.5])
    bs = BeamSplitter.from_transmittance(0.95)
    order, best_p = optimize_root_order(target, bs)
    canonical = breakdown(compile_plan(target, bs)).total
    assert best_p >= canonical
    assert breakdown(compile_plan(target, bs, order=order)).total == pytest.approx(best_p)


def test_root_order_hill_climbing_above_limit(from_roots):
    target = from_roots([0.3, -0.8j, 1.1 + 0.2j])
    bs = BeamSplitter.from_transmittance(0.95)
    exhaustive_order, exhaustive_p = optimize_root_order(target, bs, limit=8)
    climbed_order, climbed_p = optimize_root_order(target, bs, limit=1)
    assert sorted(climbed_order) == [0, 1, 2]
    assert climbed_p <= exhaustive_p * (1 + 1e-12)


def test_validate_config_rejects_wrong_displacements(cat_like):
    splitters = [BeamSplitter.from_transmittance(0.9)] * 2
    with pytest.raises(ValidationFailure):
        validate_config(cat_like, [0, 0, 0], splitters)


def test_stagewise_single_stage(one_photon):
    config = optimize_stagewise(one_photon, 0.9, iters=1)
    assert len(config.Ts) == 1
    assert config.prob >= config.baseline_prob
    validate_config(one_photon, config.alphas, [BeamSplitter.from_transmittance(abs(config.Ts[0]))])


def test_stagewise_accepts_only_improvements(from_roots):
    target = from_roots([0.4 + 0.3j, -0.5, 0.2j])
    config = optimize_stagewise(target, 0.9, iters=1)
    assert config.history == sorted(config.history)
    assert config.prob >= config.baseline_prob
    assert all(0 < abs(t) < 1 for t in config.Ts)
    splitters = [BeamSplitter.from_transmittance(abs(t)) for t in config.Ts]
    _, fid = validate_config(target, config.alphas, splitters)
    assert fid >= 1 - 1e-9


def test_stagewise_rejects_bad_init(one_photon):
    with pytest.raises(ValueError):
        optimize_stagewise(one_photon, 1.0)


def test_sweep_points_are_finite_probabilities(phase5):
    curve = sweep_T(phase5, sweep_grid(0.9, 0.99, 0.01))
    assert all(p.error is None and 0 <= p.prob <= 1 and math.isfinite(p.prob) for p in curve.samples)
