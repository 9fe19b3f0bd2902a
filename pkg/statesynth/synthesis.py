"""The compiler: target state -> characteristic roots -> displacement parameters.

Root bookkeeping: find_roots returns the beta* values that solve the
characteristic polynomial; plans store beta = conj(beta*) because the
displacement recursion is written in terms of beta. Stage k of a plan uses
betas[k-1], and alphas holds alpha_1..alpha_{N+1}.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegreeZero
from .fock import FockVector, fidelity
from .mathkernel import Polynomial, find_roots, poly_from_roots
from .targets import TargetState, target_from_json, target_to_json


@dataclass(frozen=True)
class BeamSplitter:
    T: complex
    R: complex

    def __post_init__(self):
        if not 0 < abs(self.T) < 1:
            raise ValueError(f"Transmittance must satisfy 0 < |T| < 1, got |T| = {abs(self.T)}")
        if abs(abs(self.T) ** 2 + abs(self.R) ** 2 - 1) > 1e-12:
            raise ValueError("Beam splitter must satisfy |T|^2 + |R|^2 = 1.")

    @classmethod
    def from_transmittance(cls, abs_t: float, phase_t: float = 0.0, phase_r: float = 0.0) -> "BeamSplitter":
        return cls(
            T=complex(abs_t * np.exp(1j * phase_t)),
            R=complex(math.sqrt(1 - abs_t ** 2) * np.exp(1j * phase_r)),
        )


@dataclass(frozen=True, eq=False)
class SynthesisPlan:
    target: TargetState
    bs: BeamSplitter
    betas: np.ndarray   # beta_1..beta_N
    alphas: np.ndarray  # alpha_1..alpha_{N+1}
    order: tuple[int, ...]  # applied to the canonical root order, 0-based

    @property
    def N(self) -> int:
        return len(self.betas)


@dataclass(frozen=True, eq=False)
class LOSettings:
    R_tilde: complex
    alphas_LO: np.ndarray


def characteristic_coeffs(target: TargetState) -> Polynomial:
    """sum_n psi_n / sqrt(n!) x^n, whose roots are the beta* values."""
    if target.N == 0:
        raise DegreeZero("Target is the vacuum up to phase; no photon additions are needed.")
    scale = np.array([1 / math.sqrt(math.factorial(n)) for n in range(target.N + 1)])
    return Polynomial(target.psi * scale)


def stage_displacements(betas, transmittances) -> np.ndarray:
    """Displacements alpha_1..alpha_{N+1} for per-stage transmittances T_1..T_N.

    alpha_{N+1} = beta_N, alpha_k = conj(T_k...T_N) (beta_{k-1} - beta_k) for
    k = 2..N, and alpha_1 cancels the accumulated coherent offset. With all T_k
    equal this is the common-transmittance recursion.
    """
    betas = np.asarray(betas, dtype=complex)
    ts = np.asarray(transmittances, dtype=complex)
    n = len(betas)
    if n == 0:
        return np.zeros(1, dtype=complex)
    if len(ts) != n:
        raise ValueError(f"Need {n} transmittances, got {len(ts)}")

    # tail[k] = T_{k+1} * ... * T_N (0-based k), tail[n] = 1
    tail = np.ones(n + 1, dtype=complex)
    for k in range(n - 1, -1, -1):
        tail[k] = ts[k] * tail[k + 1]

    alphas = np.zeros(n + 1, dtype=complex)
    alphas[n] = betas[n - 1]
    for k in range(1, n):
        alphas[k] = np.conj(tail[k]) * (betas[k - 1] - betas[k])
    offset = alphas[n] + np.sum(tail[1:n] * alphas[1:n])
    alphas[0] = -offset / tail[0]
    return alphas


def plan_with_order(target: TargetState, bs: BeamSplitter, roots, order) -> SynthesisPlan:
    """Build a plan from canonically ordered roots (the beta* values) and a permutation."""
    order = tuple(int(i) for i in order)
    if sorted(order) != list(range(len(roots))):
        raise ValueError(f"Order {order} is not a permutation of {len(roots)} stages.")
    betas = np.conj(np.asarray(roots, dtype=complex)[list(order)])
    alphas = stage_displacements(betas, [bs.T] * len(betas))
    return SynthesisPlan(target, bs, betas, alphas, order)


def compile_plan(target: TargetState, bs: BeamSplitter, order="canonical") -> SynthesisPlan:
    """Compile a target into a displacement / photon-adding plan."""
    if target.N == 0:
        return SynthesisPlan(target, bs, np.zeros(0, dtype=complex), np.zeros(1, dtype=complex), ())
    roots = find_roots(characteristic_coeffs(target))
    if isinstance(order, str):
        if order != "canonical":
            raise ValueError(f"Unknown order {order!r}")
        order = range(len(roots))
    return plan_with_order(target, bs, roots, order)


def effective_displacements(plan: SynthesisPlan) -> np.ndarray:
    """Displacement arguments after commuting every T^n factor to the right.

    For a compiled plan this is [-beta_1, beta_1 - beta_2, ..., beta_{N-1} - beta_N, beta_N].
    """
    n = plan.N
    t = plan.bs.T
    a = plan.alphas
    out = np.zeros(n + 1, dtype=complex)
    if n == 0:
        out[0] = a[0]
        return out
    out[0] = t ** n * a[0] + sum(
        (1 - abs(t) ** (2 * (l - n))) * t ** (n - l) * a[l] for l in range(1, n + 1)
    )
    for k in range(2, n + 1):
        out[k - 1] = np.conj(t) ** (-(n - k + 1)) * a[k - 1]
    out[n] = a[n]
    return out


def verify_factorization(target: TargetState, betas) -> float:
    """Fidelity between prod_k (a^dag - beta_k*)|0> and the target."""
    poly = poly_from_roots(np.conj(np.asarray(betas, dtype=complex)))
    amps = poly.coeffs * np.array([math.sqrt(math.factorial(n)) for n in range(poly.degree + 1)])
    return fidelity(FockVector(amps), target.as_vector())


def lo_settings(plan: SynthesisPlan, R_tilde: complex) -> LOSettings:
    """Local-oscillator amplitudes alpha_L_k = alpha_k / R~ for the displacement beam splitters."""
    if not 0 < abs(R_tilde) < 1:
        raise ValueError(f"Displacement reflectance must satisfy 0 < |R~| < 1, got {abs(R_tilde)}")
    return LOSettings(complex(R_tilde), plan.alphas / R_tilde)


def _pairs(values) -> list[list[float]]:
    return [[float(v.real), float(v.imag)] for v in np.asarray(values, dtype=complex)]


def plan_to_json(plan: SynthesisPlan) -> dict:
    """Plan serialization; `order` lists 1-based canonical root indices per stage."""
    return {
        "target": target_to_json(plan.target),
        "T": _pairs([plan.bs.T])[0],
        "R": _pairs([plan.bs.R])[0],
        "betas": _pairs(plan.betas),
        "alphas": _pairs(plan.alphas),
        "order": [i + 1 for i in plan.order],
    }


def plan_from_json(obj: dict) -> SynthesisPlan:
    target = target_from_json(obj["target"])
    bs = BeamSplitter(complex(*obj["T"]), complex(*obj["R"]))
    return SynthesisPlan(
        target,
        bs,
        np.array([complex(*p) for p in obj["betas"]], dtype=complex),
        np.array([complex(*p) for p in obj["alphas"]], dtype=complex),
        tuple(i - 1 for i in obj["order"]),
    )
