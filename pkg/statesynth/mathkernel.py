"""Scalar numerical kernels shared by every other module.

Generalized Laguerre polynomials by recurrence, elementary symmetric sums by
incremental Vieta products, and complex polynomial roots by Aberth-Ehrlich
simultaneous iteration. Everything here is a pure function of its inputs.
"""

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .config import ROOT_CLUSTER_RADIUS, ROOT_MAX_SWEEPS, ROOT_RESIDUAL_TOL
from .errors import AllZero, DegreeZero, NonConvergence

EPS = np.finfo(float).eps


@dataclass(frozen=True, eq=False)
class Polynomial:
    """Complex polynomial, coefficients in ascending degree order.

    Trailing zero coefficients are stripped on construction, so the leading
    coefficient is always nonzero and `degree` is the true degree.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        nonzero = np.flatnonzero(c)
        if nonzero.size == 0:
            raise AllZero("Polynomial has no nonzero coefficient.")
        object.__setattr__(self, "coeffs", c[: nonzero[-1] + 1].copy())

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> complex:
        return complex(self.coeffs[-1])

    def __call__(self, x):
        return npoly.polyval(x, self.coeffs)


def laguerre(n: int, m: int, x: float) -> float:
    """Generalized Laguerre polynomial L_n^m(x) by the three-term recurrence in n."""
    if n == 0:
        return 1.0
    prev, cur = 1.0, 1.0 + m - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + m - x) * cur - (k + m) * prev) / (k + 1)
    return cur


def elementary_symmetric(values) -> np.ndarray:
    """Return e_0..e_k of `values`, built one factor (1 + v t) at a time."""
    values = np.asarray(values, dtype=complex)
    e = np.zeros(len(values) + 1, dtype=complex)
    e[0] = 1.0
    for i, v in enumerate(values, start=1):
        e[1 : i + 1] = e[1 : i + 1] + v * e[0:i]
    return e


def poly_from_roots(roots, leading: complex = 1.0) -> Polynomial:
    """Expand leading * prod(x - r) into ascending coefficients."""
    if leading == 0:
        raise ValueError("Leading coefficient must be nonzero.")
    roots = np.asarray(roots, dtype=complex)
    if roots.size == 0:
        return Polynomial(np.array([leading], dtype=complex))
    return Polynomial(leading * npoly.polyfromroots(roots))


def canonical_phase(z) -> np.ndarray:
    """Argument mapped into (-pi, pi]."""
    phase = np.angle(np.asarray(z, dtype=complex))
    return np.where(phase <= -np.pi, phase + 2 * np.pi, phase)


def canonical_order(roots) -> list[int]:
    """Indices sorting roots by ascending modulus, equal moduli by ascending phase.

    Moduli equal to 1e-9 relative count as ties, so conjugate pairs of a real
    polynomial always come out in phase order rather than rounding order.
    """
    roots = np.asarray(roots, dtype=complex)
    mods = np.abs(roots)
    phases = canonical_phase(roots)
    by_modulus = sorted(range(len(roots)), key=lambda i: (mods[i], phases[i]))

    groups: list[list[int]] = []
    for i in by_modulus:
        if groups and math.isclose(mods[i], mods[groups[-1][0]], rel_tol=1e-9, abs_tol=1e-12):
            groups[-1].append(i)
        else:
            groups.append([i])
    return [i for group in groups for i in sorted(group, key=lambda i: phases[i])]


def _initial_guesses(c: np.ndarray) -> np.ndarray:
    n = len(c) - 1
    lead = abs(c[-1])
    radius = 0.0
    for k in range(n):
        if c[k] != 0:
            radius = max(radius, (abs(c[k]) / lead) ** (1.0 / (n - k)))
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    return radius * np.exp(1j * angles)


def _aberth(c: np.ndarray, max_sweeps: int) -> tuple[np.ndarray, bool]:
    n = len(c) - 1
    dc = npoly.polyder(c)
    abs_c = np.abs(c)
    z = _initial_guesses(c)
    active = np.ones(n, dtype=bool)

    for _ in range(max_sweeps):
        pz = npoly.polyval(z, c)
        noise = EPS * npoly.polyval(np.abs(z), abs_c)
        active &= np.abs(pz) > 4 * noise
        if not active.any():
            return z, True

        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            inv = np.where(diff == 0, 0.0, 1.0 / diff)
            np.fill_diagonal(inv, 0.0)
            w = 1.0 / (npoly.polyval(z, dc) / pz - inv.sum(axis=1))
        # Coincident iterates or a vanishing denominator: nudge off the stall point
        stalled = ~np.isfinite(w)
        w[stalled] = 1e-3 * (1 + np.abs(z[stalled])) * np.exp(0.7j)
        w[~active] = 0.0
        z = z - w
        active &= np.abs(w) > 4 * EPS * np.abs(z)
    return z, False


def _newton_polish(c: np.ndarray, z: np.ndarray, steps: int = 3) -> np.ndarray:
    dc = npoly.polyder(c)
    for _ in range(steps):
        pz = npoly.polyval(z, c)
        dz = npoly.polyval(z, dc)
        with np.errstate(divide="ignore", invalid="ignore"):
            candidate = z - pz / dz
        better = np.isfinite(candidate) & (np.abs(npoly.polyval(candidate, c)) < np.abs(pz))
        z = np.where(better, candidate, z)
    return z


def _taylor_coeffs(c: np.ndarray, center: complex, count: int) -> np.ndarray:
    """First `count` coefficients of p(center + y) in powers of y."""
    return np.array([
        npoly.polyval(center, npoly.polyder(c, j)) / math.factorial(j) for j in range(count)
    ])


def _merge_clusters(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Collapse a cluster of iterates onto one value when it is a genuine multiple root.

    A cluster of size m is accepted when Newton on p^(m-1) converges to a center at
    which the first m Taylor coefficients of p vanish to the residual tolerance.
    """
    n = len(z)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(z[i] - z[j]) <= ROOT_CLUSTER_RADIUS * max(1.0, abs(z[i]), abs(z[j])):
                parent[find(i)] = find(j)

    clusters: dict[int, list[int]] = {}
    for i in range(n):
        clusters.setdefault(find(i), []).append(i)

    z = z.copy()
    scale = np.max(np.abs(c))
    for members in clusters.values():
        m = len(members)
        if m < 2:
            continue
        center = complex(np.mean(z[members]))
        q = npoly.polyder(c, m - 1)
        dq = npoly.polyder(c, m)
        for _ in range(20):
            dqc = npoly.polyval(center, dq)
            if dqc == 0:
                break
            step = npoly.polyval(center, q) / dqc
            center -= step
            if abs(step) <= 4 * EPS * max(1.0, abs(center)):
                break
        tol = ROOT_RESIDUAL_TOL * scale * max(1.0, abs(center)) ** n
        if np.all(np.abs(_taylor_coeffs(c, center, m)) <= tol):
            z[members] = center
    return z


def find_roots(p: Polynomial, max_sweeps: int = ROOT_MAX_SWEEPS) -> np.ndarray:
    """All roots of `p` with multiplicity, polished and in canonical order."""
    if p.degree < 1:
        raise DegreeZero("Root finding needs a polynomial of degree >= 1.")
    c = p.coeffs
    z, converged = _aberth(c, max_sweeps)
    z = _newton_polish(c, z)
    z = _merge_clusters(c, z)

    scale = np.max(np.abs(c))
    residual = np.abs(npoly.polyval(z, c))
    allowed = ROOT_RESIDUAL_TOL * scale * np.maximum(1.0, np.abs(z)) ** p.degree
    if not np.all(residual <= allowed):
        budget = "" if converged else f" after {max_sweeps} sweeps"
        raise NonConvergence(
            f"Root finder did not reach the residual tolerance{budget}; "
            "the characteristic polynomial is ill-conditioned."
        )
    return z[canonical_order(z)]
