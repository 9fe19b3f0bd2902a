"""Closed-form success probability of a plan.

The squared norm after k photon-adding stages factors into a prefactor
|R|^{2k} |T|^{k(k-1)}, the norm of a degree-k polynomial in a^dag acting on the
coherent state |gamma_k>, and an exponential damping term. The polynomial norm
is expanded with elementary symmetric sums of the b_mk and normally ordered
coherent-state moments expressed through Laguerre polynomials.
"""

import math
from dataclasses import dataclass

import numpy as np

from .config import IMAG_RESIDUE_TOL, MAX_ANALYTIC_DEGREE, UNDERFLOW_NORM_SQ
from .errors import DegreeLimitExceeded, NumericalInconsistency
from .mathkernel import elementary_symmetric, laguerre
from .synthesis import SynthesisPlan


@dataclass(frozen=True)
class ProbabilityBreakdown:
    gammas: list[complex]
    b_table: list[list[complex]]
    stage_norms: list[float]
    conditionals: list[float]
    total: float

    @property
    def N(self) -> int:
        return len(self.stage_norms)


def _check_stage(plan: SynthesisPlan, k: int):
    if not 1 <= k <= plan.N:
        raise ValueError(f"Stage k must lie in 1..{plan.N}, got {k}")


def gamma_k(plan: SynthesisPlan, k: int) -> complex:
    """gamma_k = sum_{j=1..k} T^{k+1-j} alpha_j, the coherent offset after stage k."""
    _check_stage(plan, k)
    t = plan.bs.T
    return complex(sum(t ** (k + 1 - j) * plan.alphas[j - 1] for j in range(1, k + 1)))


def b_coefficients(plan: SynthesisPlan, k: int) -> list[complex]:
    """b_1k = 0, b_mk = -sum_{j=0..m-2} T*^{-j-1} alpha_{k-j}."""
    _check_stage(plan, k)
    tc = np.conj(plan.bs.T)
    out = [0j]
    running = 0j
    for m in range(2, k + 1):
        j = m - 2
        running += tc ** (-j - 1) * plan.alphas[k - j - 1]
        out.append(complex(-running))
    return out


def coherent_moment(gamma: complex, k: int, m: int, l: int) -> complex:
    """<gamma| a^{k-m} a^dag^{k-l} |gamma> for a normalized coherent state."""
    x = -abs(gamma) ** 2
    if l < m:
        return math.factorial(k - m) * np.conj(gamma) ** (m - l) * laguerre(k - m, m - l, x)
    return math.factorial(k - l) * complex(gamma) ** (l - m) * laguerre(k - l, l - m, x)


def _damping_exponent(plan: SynthesisPlan, k: int) -> float:
    """sum_{m<=k} |s_m|^2 with s_m = T s_{m-1} + alpha_m."""
    t = plan.bs.T
    s = 0j
    total = 0.0
    for m in range(k):
        s = t * s + plan.alphas[m]
        total += abs(s) ** 2
    return total


def stage_norm_sq(plan: SynthesisPlan, k: int) -> float:
    """Squared norm of the unnormalized state after k zero-photon detections."""
    _check_stage(plan, k)
    if k > MAX_ANALYTIC_DEGREE:
        raise DegreeLimitExceeded(
            f"Closed form limited to {MAX_ANALYTIC_DEGREE} stages; use the simulator for k = {k}."
        )
    t_abs2 = abs(plan.bs.T) ** 2
    r_abs2 = abs(plan.bs.R) ** 2
    gamma = gamma_k(plan, k)
    e = elementary_symmetric(b_coefficients(plan, k))

    poly_norm = 0j
    for m in range(k + 1):
        for l in range(k + 1):
            poly_norm += e[m] * np.conj(e[l]) * coherent_moment(gamma, k, m, l)

    damping = math.exp(-r_abs2 * _damping_exponent(plan, k))
    if damping == 0.0:
        # True value lies below the float64 range; the detectors essentially never all stay dark.
        return 0.0
    value = r_abs2 ** k * t_abs2 ** (k * (k - 1) / 2) * poly_norm * damping
    if abs(value.imag) > IMAG_RESIDUE_TOL * abs(value) or value.real <= 0:
        raise NumericalInconsistency(f"Stage {k} norm evaluated to {value}; expected a positive real.")
    return float(value.real)


def breakdown(plan: SynthesisPlan) -> ProbabilityBreakdown:
    """All gammas, b tables, stage norms and conditional probabilities of a plan."""
    if plan.N == 0:
        return ProbabilityBreakdown([], [], [], [], 1.0)
    ks = range(1, plan.N + 1)
    norms = [stage_norm_sq(plan, k) for k in ks]
    conditionals = [norms[0]] + [norms[i] / norms[i - 1] if norms[i - 1] > 0 else 0.0 for i in range(1, len(norms))]
    total = norms[-1]
    telescoped = math.prod(conditionals)
    if total > UNDERFLOW_NORM_SQ and not math.isclose(telescoped, total, rel_tol=1e-12):
        raise NumericalInconsistency(f"Conditional probabilities multiply to {telescoped}, not {total}.")
    return ProbabilityBreakdown(
        gammas=[gamma_k(plan, k) for k in ks],
        b_table=[b_coefficients(plan, k) for k in ks],
        stage_norms=norms,
        conditionals=conditionals,
        total=total,
    )


def breakdown_to_json(result: ProbabilityBreakdown) -> dict:
    return {
        "total": result.total,
        "stages": [
            {
                "k": k,
                "gamma": [result.gammas[k - 1].real, result.gammas[k - 1].imag],
                "P_k_sq": result.stage_norms[k - 1],
                "conditional": result.conditionals[k - 1],
            }
            for k in range(1, result.N + 1)
        ],
    }
