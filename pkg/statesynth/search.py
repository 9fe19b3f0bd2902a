"""Probability landscape: |T| sweeps, common-T and per-stage optimization, root-order search."""

import itertools
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .config import (
    COARSE_GRID_POINTS,
    FIDELITY_TOL,
    GOLDEN_TOL,
    ORDER_SEARCH_LIMIT,
    STAGEWISE_GOLDEN_TOL,
    STAGEWISE_ITERS,
    STAGEWISE_STEP,
    T_BRACKET,
)
from .errors import SynthesisError, ValidationFailure
from .fock import DEFAULT_POLICY, TruncationPolicy, fidelity
from .mathkernel import find_roots
from .probability import breakdown
from .simulator import run_stages
from .synthesis import (
    BeamSplitter,
    characteristic_coeffs,
    compile_plan,
    plan_with_order,
    stage_displacements,
)
from .targets import TargetState

GOLDEN = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class SweepPoint:
    abs_t: float
    prob: float
    error: str | None = None


@dataclass(frozen=True)
class SweepCurve:
    samples: list[SweepPoint]
    target_id: str
    N: int


@dataclass(frozen=True)
class StagewiseConfig:
    Ts: list[complex]
    alphas: np.ndarray
    prob: float
    baseline_prob: float = 0.0
    history: list[float] = field(default_factory=list)  # prob after every accepted update


def golden_section_max(f, a: float, b: float, tol: float = GOLDEN_TOL) -> tuple[float, float]:
    """Maximize f on [a, b] by golden-section search; returns (x, f(x))."""
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while abs(b - a) > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)


def _common_prob(target: TargetState, abs_t: float, phase_t: float = 0.0) -> float:
    plan = compile_plan(target, BeamSplitter.from_transmittance(abs_t, phase_t))
    return breakdown(plan).total


def _safe_prob(target: TargetState, abs_t: float, phase_t: float = 0.0) -> float:
    try:
        return _common_prob(target, abs_t, phase_t)
    except SynthesisError:
        return -math.inf


def sweep_T(target: TargetState, grid, phase_t: float = 0.0) -> SweepCurve:
    """Closed-form success probability at every |T| of the grid.

    A point that fails to compile or evaluate is flagged instead of aborting the curve.
    """
    grid = [float(g) for g in grid]
    if any(not 0 < g < 1 for g in grid) or any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("Sweep grid must be strictly increasing inside (0, 1).")
    samples = []
    for abs_t in grid:
        try:
            samples.append(SweepPoint(abs_t, _common_prob(target, abs_t, phase_t)))
        except SynthesisError as e:
            print(f"[search] sweep point |T|={abs_t:g} failed: {e}", file=sys.stderr)
            samples.append(SweepPoint(abs_t, math.nan, str(e)))
    return SweepCurve(samples, target.label, target.N)


def sweep_grid(lo: float, hi: float, step: float) -> list[float]:
    """Inclusive grid lo, lo+step, ..., hi computed by index so shared points agree exactly."""
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + i * step, 12) for i in range(count)]


def optimize_common_T(target: TargetState, bracket=T_BRACKET) -> tuple[float, float]:
    """Best common |T|: a coarse grid first, then golden-section refinement around the best point."""
    lo, hi = bracket
    if not 0 < lo < hi < 1:
        raise ValueError(f"Bracket must lie inside (0, 1), got {bracket}")
    grid = np.linspace(lo, hi, COARSE_GRID_POINTS)
    values = [_safe_prob(target, g) for g in grid]
    best = int(np.argmax(values))
    best_t, best_p = float(grid[best]), values[best]

    left = grid[max(best - 1, 0)]
    right = grid[min(best + 1, len(grid) - 1)]
    refined_t, refined_p = golden_section_max(lambda x: _safe_prob(target, x), left, right)
    if refined_p > best_p:
        best_t, best_p = refined_t, refined_p
    print(f"[search] common T optimum |T|={best_t:.6f} P={best_p:.6e}", file=sys.stderr)
    return best_t, best_p


def validate_config(target: TargetState, alphas, splitters, policy: TruncationPolicy = DEFAULT_POLICY):
    """Simulate a configuration; returns (outcome, fidelity) or raises ValidationFailure."""
    outcome = run_stages(alphas, splitters, policy)
    fid = fidelity(outcome.final_state, target.as_vector())
    if fid < 1 - FIDELITY_TOL:
        raise ValidationFailure(f"Configuration reproduces the target only with fidelity {fid:.12f}.")
    return outcome, fid


def _stagewise_eval(target, betas, abs_ts, policy):
    splitters = [BeamSplitter.from_transmittance(t) for t in abs_ts]
    alphas = stage_displacements(betas, [bs.T for bs in splitters])
    outcome, _ = validate_config(target, alphas, splitters, policy)
    return alphas, outcome.total_prob


def optimize_stagewise(
    target: TargetState,
    init: float,
    iters: int = STAGEWISE_ITERS,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> StagewiseConfig:
    """Coordinate ascent over the per-stage |T_k|, simulator-evaluated.

    Every candidate is validated by a fidelity check before it can be accepted,
    and a coordinate whose step produced no valid improvement has its step halved.
    """
    if not 0 < init < 1:
        raise ValueError(f"init must lie in (0, 1), got {init}")
    if target.N == 0:
        return StagewiseConfig([], np.zeros(1, dtype=complex), 1.0, 1.0, [1.0])

    betas = compile_plan(target, BeamSplitter.from_transmittance(init)).betas
    abs_ts = [float(init)] * target.N
    alphas, prob = _stagewise_eval(target, betas, abs_ts, policy)
    baseline = prob
    history = [prob]
    steps = [STAGEWISE_STEP] * target.N
    lo_bound, hi_bound = T_BRACKET

    def objective(k, value):
        trial = list(abs_ts)
        trial[k] = value
        try:
            return _stagewise_eval(target, betas, trial, policy)[1]
        except SynthesisError:
            return -math.inf

    for sweep in range(iters):
        for k in range(target.N):
            lo = max(lo_bound, abs_ts[k] - steps[k])
            hi = min(hi_bound, abs_ts[k] + steps[k])
            t_k, _ = golden_section_max(lambda v: objective(k, v), lo, hi, STAGEWISE_GOLDEN_TOL)
            trial = list(abs_ts)
            trial[k] = t_k
            try:
                trial_alphas, trial_prob = _stagewise_eval(target, betas, trial, policy)
            except SynthesisError as e:
                print(f"[search] stagewise stage {k + 1} rejected: {e}", file=sys.stderr)
                steps[k] /= 2
                continue
            if trial_prob > prob:
                abs_ts, alphas, prob = trial, trial_alphas, trial_prob
                history.append(prob)
            else:
                steps[k] /= 2
        print(f"[search] stagewise sweep {sweep + 1}: P={prob:.6e}", file=sys.stderr)

    return StagewiseConfig([complex(t) for t in abs_ts], alphas, prob, baseline, history)


def optimize_root_order(target: TargetState, bs: BeamSplitter, limit: int = ORDER_SEARCH_LIMIT):
    """Stage order of the characteristic roots maximizing the success probability.

    Exhaustive over all N! orders up to `limit`, pairwise-swap hill climbing beyond.
    The canonical order is evaluated first and only strictly better orders replace it.
    """
    if target.N == 0:
        return (), 1.0
    roots = find_roots(characteristic_coeffs(target))
    n = len(roots)

    def prob(order):
        try:
            return breakdown(plan_with_order(target, bs, roots, order)).total
        except SynthesisError:
            return -math.inf

    best_order = tuple(range(n))
    best_p = prob(best_order)
    if n <= limit:
        for order in itertools.permutations(range(n)):
            p = prob(order)
            if p > best_p:
                best_order, best_p = order, p
    else:
        improved = True
        while improved:
            improved = False
            for i, j in itertools.combinations(range(n), 2):
                trial = list(best_order)
                trial[i], trial[j] = trial[j], trial[i]
                p = prob(trial)
                if p > best_p:
                    best_order, best_p = tuple(trial), p
                    improved = True
    print(f"[search] best root order {[i + 1 for i in best_order]} P={best_p:.6e}", file=sys.stderr)
    return best_order, best_p
