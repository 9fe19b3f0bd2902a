import cmath

import numpy as np
import pytest

from statesynth.errors import DegreeZero
from statesynth.simulator import run_stages
from statesynth.fock import fidelity
from statesynth.synthesis import (
    BeamSplitter,
    characteristic_coeffs,
    compile_plan,
    effective_displacements,
    lo_settings,
    plan_from_json,
    plan_to_json,
    stage_displacements,
    verify_factorization,
)
from statesynth.targets import make_target


def test_beam_splitter_validation():
    with pytest.raises(ValueError):
        BeamSplitter(1.0, 0.0)
    with pytest.raises(ValueError):
        BeamSplitter(0.9, 0.9)
    bs = BeamSplitter.from_transmittance(0.6, phase_t=0.3, phase_r=-1.0)
    assert abs(bs.R) == pytest.approx(0.8)
    assert cmath.phase(bs.T) == pytest.approx(0.3)


def test_single_photon_plan_is_trivial(one_photon):
    plan = compile_plan(one_photon, BeamSplitter.from_transmittance(0.99))
    assert plan.N == 1
    assert np.allclose(plan.betas, [0])
    assert np.allclose(plan.alphas, [0, 0])


def test_vacuum_target_needs_no_stages():
    plan = compile_plan(make_target([1j]), BeamSplitter.from_transmittance(0.9))
    assert plan.N == 0
    assert np.allclose(plan.alphas, [0])
    with pytest.raises(DegreeZero):
        characteristic_coeffs(make_target([1]))


def test_characteristic_coeffs_scale_by_factorials(cat_like):
    p = characteristic_coeffs(cat_like)
    assert np.allclose(p.coeffs * np.sqrt(2), [1, 0, 1 / np.sqrt(2)])


def test_common_transmittance_recursion(cat_like):
    t = 0.9 * cmath.exp(0.4j)
    plan = compile_plan(cat_like, BeamSplitter(t, 0.0 + (1 - 0.81) ** 0.5))
    b = plan.betas
    assert plan.alphas[2] == pytest.approx(b[1])
    assert plan.alphas[1] == pytest.approx(np.conj(t) * (b[0] - b[1]))


def test_effective_displacements_telescope(random_target_pairs):
    for target, abs_t in random_target_pairs[:30]:
        plan = compile_plan(target, BeamSplitter.from_transmittance(abs_t, phase_t=0.7))
        b = plan.betas
        expected = np.concatenate([[-b[0]], b[:-1] - b[1:], [b[-1]]])
        assert np.allclose(effective_displacements(plan), expected, atol=1e-9 * max(1, np.max(np.abs(plan.alphas))))


def test_roots_factorize_the_target(random_target_pairs):
    for target, abs_t in random_target_pairs[:50]:
        plan = compile_plan(target, BeamSplitter.from_transmittance(abs_t))
        assert verify_factorization(target, plan.betas) >= 1 - 1e-12


def test_explicit_order_permutes_roots(phase5):
    bs = BeamSplitter.from_transmittance(0.95)
    canonical = compile_plan(phase5, bs)
    permuted = compile_plan(phase5, bs, order=[2, 0, 1, 4, 3])
    assert np.allclose(permuted.betas, canonical.betas[[2, 0, 1, 4, 3]])
    assert permuted.order == (2, 0, 1, 4, 3)
    with pytest.raises(ValueError):
        compile_plan(phase5, bs, order=[0, 0, 1, 2, 3])
    with pytest.raises(ValueError):
        compile_plan(phase5, bs, order="fastest")


def test_stage_dependent_recursion_reduces_to_common(cat_like):
    bs = BeamSplitter.from_transmittance(0.85)
    plan = compile_plan(cat_like, bs)
    assert np.allclose(stage_displacements(plan.betas, [bs.T, bs.T]), plan.alphas)


@pytest.mark.parametrize("transmittances", [(0.7, 0.95, 0.9), (0.99, 0.6, 0.8)])
def test_stage_dependent_recursion_prepares_the_target(from_roots, transmittances):
    target = from_roots([0.4 + 0.3j, -0.5, 0.2j])
    betas = compile_plan(target, BeamSplitter.from_transmittance(0.9)).betas
    splitters = [BeamSplitter.from_transmittance(t) for t in transmittances]
    alphas = stage_displacements(betas, [bs.T for bs in splitters])
    outcome = run_stages(alphas, splitters)
    assert fidelity(outcome.final_state, target.as_vector()) >= 1 - 1e-9


def test_lo_settings(cat_like):
    plan = compile_plan(cat_like, BeamSplitter.from_transmittance(0.9))
    lo = lo_settings(plan, 0.01j)
    assert np.allclose(lo.alphas_LO * 0.01j, plan.alphas)
    with pytest.raises(ValueError):
        lo_settings(plan, 1.0)


def test_plan_json_reads_back(phase5):
    plan = compile_plan(phase5, BeamSplitter.from_transmittance(0.9, 0.2), order=[4, 3, 2, 1, 0])
    obj = plan_to_json(plan)
    assert obj["order"] == [5, 4, 3, 2, 1]
    again = plan_from_json(obj)
    assert again.order == plan.order
    assert np.allclose(again.alphas, plan.alphas)
    assert again.bs.T == pytest.approx(plan.bs.T)
