"""Truncated single-mode Fock-space vectors and the operators the cascade is built from."""

import math
import sys
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .config import DEFAULT_MAX_CUTOFF, DEFAULT_TAIL_TOL, TAIL_WINDOW
from .errors import CutoffExceeded, ZeroNorm


@dataclass(frozen=True)
class TruncationPolicy:
    tail_tol: float = DEFAULT_TAIL_TOL
    max_cutoff: int = DEFAULT_MAX_CUTOFF
    headroom: float = 1.0  # Multiplies the initial cutoff guess of displace()

    def __post_init__(self):
        if not 0 < self.tail_tol < 1:
            raise ValueError(f"tail_tol must lie in (0, 1), got {self.tail_tol}")
        if self.max_cutoff < 1:
            raise ValueError(f"max_cutoff must be >= 1, got {self.max_cutoff}")
        if self.headroom < 1:
            raise ValueError(f"headroom must be >= 1, got {self.headroom}")


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True, eq=False)
class FockVector:
    """Amplitudes indexed by photon number; cutoff = len(amps) - 1."""

    amps: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        amps = np.atleast_1d(np.array(self.amps, dtype=complex))
        if amps.ndim != 1:
            raise ValueError("FockVector amplitudes must be one-dimensional.")
        if not np.all(np.isfinite(amps)):
            raise ValueError("FockVector amplitudes must be finite.")
        if self.normalized and abs(np.vdot(amps, amps).real - 1.0) > 1e-12:
            raise ValueError("FockVector flagged normalized does not have unit norm.")
        object.__setattr__(self, "amps", amps)

    @property
    def cutoff(self) -> int:
        return len(self.amps) - 1


def vacuum() -> FockVector:
    return FockVector(np.array([1.0]), normalized=True)


def fock_state(n: int) -> FockVector:
    amps = np.zeros(n + 1, dtype=complex)
    amps[n] = 1.0
    return FockVector(amps, normalized=True)


def coherent_state(alpha: complex, cutoff: int) -> FockVector:
    """Coherent amplitudes e^{-|a|^2/2} a^n / sqrt(n!), truncated (not renormalized)."""
    alpha = complex(alpha)
    n = np.arange(cutoff + 1)
    if alpha == 0:
        return FockVector(np.where(n == 0, 1.0, 0.0))
    log_mod = n * math.log(abs(alpha)) - abs(alpha) ** 2 / 2 - 0.5 * gammaln(n + 1)
    return FockVector(np.exp(log_mod + 1j * n * np.angle(alpha)))


def apply_creation(s: FockVector, policy: TruncationPolicy = DEFAULT_POLICY) -> FockVector:
    if s.cutoff + 1 > policy.max_cutoff:
        raise CutoffExceeded(f"Creation would need cutoff {s.cutoff + 1} > {policy.max_cutoff}.")
    out = np.zeros(len(s.amps) + 1, dtype=complex)
    out[1:] = np.sqrt(np.arange(1, len(s.amps) + 1)) * s.amps
    return FockVector(out)


def apply_annihilation(s: FockVector) -> FockVector:
    if s.cutoff == 0:
        return FockVector(np.zeros(1))
    return FockVector(np.sqrt(np.arange(1, len(s.amps))) * s.amps[1:])


def apply_number_scaling(s: FockVector, t: complex) -> FockVector:
    """T^n: multiply amplitude n by t^n."""
    t = complex(t)
    if abs(t) > 1 + 1e-12:
        raise ValueError(f"Number scaling needs |t| <= 1, got |t| = {abs(t)}")
    powers = np.ones(len(s.amps), dtype=complex)
    powers[1:] = np.cumprod(np.full(len(s.amps) - 1, t))
    return FockVector(powers * s.amps)


def _scaled_laguerre_table(alpha: complex, rows: int, width: int) -> np.ndarray:
    """E[n, d] = sqrt(n!/(n+d)!) a^d e^{-|a|^2/2} L_n^d(|a|^2) for n < rows, d < width.

    Runs the Laguerre three-term recurrence in n on the scaled quantity, with the
    factorial ratios folded into the recurrence coefficients, so no intermediate
    value overflows even for cutoffs in the thousands.
    """
    table = np.zeros((rows, width), dtype=complex)
    if alpha == 0:
        table[:, 0] = 1.0
        return table
    x = abs(alpha) ** 2
    d = np.arange(width)
    log_e0 = d * math.log(abs(alpha)) - x / 2 - 0.5 * gammaln(d + 1)
    table[0] = np.exp(log_e0 + 1j * d * np.angle(alpha))
    if rows > 1:
        table[1] = table[0] * (d + 1 - x) / np.sqrt(d + 1)
    for n in range(1, rows - 1):
        table[n + 1] = (
            (2 * n + d + 1 - x) * table[n] - np.sqrt(n * (n + d)) * table[n - 1]
        ) / np.sqrt((n + 1) * (n + d + 1))
    return table


def _displacement_block(alpha: complex, dim: int, ncols: int) -> np.ndarray:
    """First `ncols` columns of the dim x dim truncated displacement matrix."""
    block = np.zeros((dim, ncols), dtype=complex)

    # m >= n: <n+d|D(a)|n> = E_n^d(a)
    lower = _scaled_laguerre_table(alpha, ncols, dim)
    n, d = np.indices(lower.shape)
    keep = n + d < dim
    block[(n + d)[keep], n[keep]] = lower[keep]

    # m < n: <m|D(a)|m+d> = E_m^d(-a*)
    upper = _scaled_laguerre_table(-np.conj(alpha), ncols, ncols)
    m, d = np.indices(upper.shape)
    keep = m + d < ncols
    block[m[keep], (m + d)[keep]] = upper[keep]
    return block


def displacement_matrix(alpha: complex, dim: int, policy: TruncationPolicy = DEFAULT_POLICY) -> np.ndarray:
    """<m|D(alpha)|n> for 0 <= m, n < dim."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    if dim - 1 > policy.max_cutoff:
        raise CutoffExceeded(f"Displacement matrix of dim {dim} exceeds max cutoff {policy.max_cutoff}.")
    return _displacement_block(complex(alpha), dim, dim)


def _trim(amps: np.ndarray, threshold: float) -> np.ndarray:
    """Drop trailing amplitudes whose combined norm stays below `threshold`."""
    tail_sq = np.cumsum(np.abs(amps[::-1]) ** 2)[::-1]
    keep = np.flatnonzero(tail_sq >= threshold ** 2)
    if keep.size == 0:
        return amps[:1]
    return amps[: keep[-1] + 1]


def displace(s: FockVector, alpha: complex, policy: TruncationPolicy = DEFAULT_POLICY) -> FockVector:
    """D(alpha)|s> at a cutoff grown until the top amplitudes are negligible."""
    alpha = complex(alpha)
    s_norm = norm(s)
    if alpha == 0 or s_norm == 0:
        return FockVector(s.amps)
    if s.cutoff > policy.max_cutoff:
        raise CutoffExceeded(f"Input cutoff {s.cutoff} already exceeds {policy.max_cutoff}.")

    spread = 4 * abs(alpha) ** 2 + 10 * abs(alpha) + 10
    cutoff = min(s.cutoff + math.ceil(policy.headroom * spread), policy.max_cutoff)
    while True:
        out = _displacement_block(alpha, cutoff + 1, len(s.amps)) @ s.amps
        if np.linalg.norm(out[-TAIL_WINDOW:]) < policy.tail_tol * s_norm:
            break
        if cutoff >= policy.max_cutoff:
            raise CutoffExceeded(
                f"Displacement by |alpha| = {abs(alpha):.3g} did not converge below cutoff {policy.max_cutoff}."
            )
        cutoff = min(2 * cutoff, policy.max_cutoff)
        print(f"[fock] displacement cutoff grown to {cutoff}", file=sys.stderr)
    return FockVector(_trim(out, policy.tail_tol * s_norm))


def _padded(a: FockVector, b: FockVector) -> tuple[np.ndarray, np.ndarray]:
    size = max(len(a.amps), len(b.amps))
    return (
        np.pad(a.amps, (0, size - len(a.amps))),
        np.pad(b.amps, (0, size - len(b.amps))),
    )


def inner_product(a: FockVector, b: FockVector) -> complex:
    """<a|b>, conjugate-linear in `a`; the shorter vector is zero-padded."""
    x, y = _padded(a, b)
    return complex(np.vdot(x, y))


def norm(s: FockVector) -> float:
    return float(np.linalg.norm(s.amps))


def fidelity(a: FockVector, b: FockVector) -> float:
    """|<a|b>|^2 / (|a|^2 |b|^2): equality up to global phase and scale."""
    na, nb = norm(a), norm(b)
    if na == 0 or nb == 0:
        raise ZeroNorm("Fidelity is undefined for a zero vector.")
    return abs(inner_product(a, b)) ** 2 / (na ** 2 * nb ** 2)


def normalize(s: FockVector) -> FockVector:
    n = norm(s)
    if n == 0:
        raise ZeroNorm("Cannot normalize a zero vector.")
    amps = s.amps / n
    # Rescale once more so the flag's 1e-12 check holds after rounding
    return FockVector(amps / np.sqrt(np.vdot(amps, amps).real), normalized=True)
