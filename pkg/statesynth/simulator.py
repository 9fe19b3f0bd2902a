"""Brute-force oracle: runs the displacement / photon-adding cascade on Fock vectors.

Nothing here uses the closed-form probability expressions; the conditional
beam-splitter map is applied as the operator R a^dag T^n directly.
"""

import math
from dataclasses import dataclass

import numpy as np

from .config import FIDELITY_TOL, UNDERFLOW_NORM_SQ
from .errors import NumericalInconsistency, ZeroNorm
from .fock import (
    DEFAULT_POLICY,
    FockVector,
    TruncationPolicy,
    apply_creation,
    apply_number_scaling,
    displace,
    displacement_matrix,
    fidelity,
    norm,
    normalize,
    vacuum,
)
from .synthesis import BeamSplitter, SynthesisPlan


@dataclass(frozen=True, eq=False)
class SimOutcome:
    final_state: FockVector
    stage_norms_sq: list[float]
    total_prob: float
    cutoff_used: int


def apply_Y(s: FockVector, bs: BeamSplitter, policy: TruncationPolicy = DEFAULT_POLICY) -> FockVector:
    """Zero-photon conditional map of a beam splitter fed with one photon: R a^dag T^n."""
    out = apply_creation(apply_number_scaling(s, bs.T), policy)
    return FockVector(bs.R * out.amps)


def run_stages(alphas, splitters, policy: TruncationPolicy = DEFAULT_POLICY) -> SimOutcome:
    """Cascade D(alpha_1), Y_1, ..., D(alpha_N), Y_N, D(alpha_{N+1}) from the vacuum.

    The state is renormalized after every Y and the squared norms accumulated as
    a log sum, so long cascades do not underflow before the final product.
    """
    alphas = np.asarray(alphas, dtype=complex)
    if len(alphas) != len(splitters) + 1:
        raise ValueError(f"{len(splitters)} stages need {len(splitters) + 1} displacements, got {len(alphas)}")

    state = vacuum()
    log_norm_sq = 0.0
    stage_norms: list[float] = []
    cutoff_used = 0
    for k, bs in enumerate(splitters, start=1):
        state = displace(state, alphas[k - 1], policy)
        state = apply_Y(state, bs, policy)
        cutoff_used = max(cutoff_used, state.cutoff)
        step = norm(state) ** 2
        if step == 0:
            raise ZeroNorm(f"Stage {k} annihilated the state.")
        log_norm_sq += math.log(step)
        if log_norm_sq < math.log(UNDERFLOW_NORM_SQ):
            raise ZeroNorm(f"Success probability underflowed below {UNDERFLOW_NORM_SQ:g} at stage {k}.")
        stage_norms.append(math.exp(log_norm_sq))
        state = normalize(state)

    state = displace(state, alphas[-1], policy)
    cutoff_used = max(cutoff_used, state.cutoff)
    return SimOutcome(
        final_state=normalize(state),
        stage_norms_sq=stage_norms,
        total_prob=stage_norms[-1] if stage_norms else 1.0,
        cutoff_used=cutoff_used,
    )


def run_plan(plan: SynthesisPlan, policy: TruncationPolicy = DEFAULT_POLICY) -> SimOutcome:
    return run_stages(plan.alphas, [plan.bs] * plan.N, policy)


def plan_fidelity(plan: SynthesisPlan, outcome: SimOutcome) -> float:
    return fidelity(outcome.final_state, plan.target.as_vector())


def checked_fidelity(plan: SynthesisPlan, outcome: SimOutcome) -> float:
    """plan_fidelity, raising when the cascade no longer reproduces the target."""
    fid = plan_fidelity(plan, outcome)
    if fid < 1 - FIDELITY_TOL:
        raise NumericalInconsistency(
            f"Simulated state reaches the target only with fidelity {fid:.3e}; the roots cancel beyond float64 precision."
        )
    return fid


def outcome_to_json(outcome: SimOutcome, fid: float) -> dict:
    return {
        "total_prob": outcome.total_prob,
        "fidelity": fid,
        "stage_norms_sq": list(outcome.stage_norms_sq),
        "cutoff_used": outcome.cutoff_used,
    }


def verify_commutation_identity(alpha: complex, t: complex, dim: int, buffer: int | None = None) -> float:
    """Residual of [D^dag(a) T^n D(a)] a^dag = T D^dag(Tb* a) a^dag D(Tb* a) [D^dag(a) T^n D(a)].

    Tb = 1 - 1/T. Both sides are built as dim x dim matrices; rows and columns
    near the cutoff are corrupted by truncation, so the residual is the largest
    absolute row sum of the difference over the leading (dim - buffer) block.
    """
    alpha = complex(alpha)
    t = complex(t)
    if buffer is None:
        buffer = dim // 2
    policy = TruncationPolicy(max_cutoff=max(dim, 1))

    n = np.arange(dim)
    t_n = np.diag(t ** n)
    create = np.diag(np.sqrt(n[1:]), -1).astype(complex)

    d_alpha = displacement_matrix(alpha, dim, policy)
    inner = d_alpha.conj().T @ t_n @ d_alpha

    if t == 1:
        shift = 0j
    else:
        shift = np.conj(1 - 1 / t) * alpha
    d_shift = displacement_matrix(shift, dim, policy)

    lhs = inner @ create
    rhs = t * (d_shift.conj().T @ create @ d_shift) @ inner

    keep = dim - buffer
    return float(np.max(np.sum(np.abs(lhs - rhs)[:keep, :keep], axis=1)))
