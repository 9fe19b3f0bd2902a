import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import AllZero, TargetParseError
from .fock import FockVector


@dataclass(frozen=True, eq=False)
class TargetState:
    """Normalized Fock coefficients psi_0..psi_N with psi_N != 0."""

    psi: np.ndarray
    label: str = "custom"

    @property
    def N(self) -> int:
        return len(self.psi) - 1

    def as_vector(self) -> FockVector:
        return FockVector(self.psi)


@dataclass(frozen=True)
class PhaseStateSpec:
    z: complex
    N: int

    def __post_init__(self):
        if abs(self.z) > 1 + 1e-12:
            raise ValueError(f"Truncated phase states need |z| <= 1, got |z| = {abs(self.z)}")
        if self.N < 0:
            raise ValueError(f"N must be >= 0, got {self.N}")


def make_target(coeffs, label: str = "custom") -> TargetState:
    """Strip trailing zeros and normalize, keeping relative phases."""
    c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    nonzero = np.flatnonzero(c)
    if nonzero.size == 0:
        raise AllZero("Target has no nonzero coefficient.")
    c = c[: nonzero[-1] + 1]
    c = c / np.linalg.norm(c)
    c = c / np.sqrt(np.vdot(c, c).real)
    return TargetState(c, label)


def phase_normalization(spec: PhaseStateSpec) -> float:
    """C(z;N); the flat 1/sqrt(N+1) branch applies once |z| rounds to 1."""
    r2 = abs(spec.z) ** 2
    if math.isclose(r2, 1.0, abs_tol=1e-12):
        return 1 / math.sqrt(spec.N + 1)
    return math.sqrt((1 - r2) / (1 - r2 ** (spec.N + 1)))


def target_label(spec: PhaseStateSpec) -> str:
    z = complex(spec.z)
    return f"phase_state z={z.real:g}{z.imag:+g}j N={spec.N}"


def phase_state(spec: PhaseStateSpec) -> TargetState:
    """|z;N> = C(z;N) sum_n z^n |n>."""
    z = complex(spec.z)
    powers = np.ones(spec.N + 1, dtype=complex)
    powers[1:] = np.cumprod(np.full(spec.N, z))
    return make_target(phase_normalization(spec) * powers, target_label(spec))


def _complex(pair, where: str) -> complex:
    if isinstance(pair, (list, tuple)) and len(pair) == 2 and all(isinstance(v, (int, float)) for v in pair):
        return complex(pair[0], pair[1])
    raise TargetParseError(f"{where}: expected a [re, im] pair, got {pair!r}")


def target_from_json(obj) -> TargetState:
    """Parse the target file schema: exactly one of `coeffs` or `phase_state`."""
    if not isinstance(obj, dict):
        raise TargetParseError("Target file must contain a JSON object.")
    variants = [key for key in ("coeffs", "phase_state") if key in obj]
    if len(variants) != 1:
        raise TargetParseError("Target file needs exactly one of 'coeffs' or 'phase_state'.")

    if variants[0] == "coeffs":
        coeffs = obj["coeffs"]
        if not isinstance(coeffs, list) or not coeffs:
            raise TargetParseError("'coeffs' must be a non-empty list of [re, im] pairs.")
        return make_target([_complex(c, f"coeffs[{i}]") for i, c in enumerate(coeffs)])

    spec = obj["phase_state"]
    if not isinstance(spec, dict) or "z" not in spec or "N" not in spec:
        raise TargetParseError("'phase_state' needs 'z' and 'N'.")
    if not isinstance(spec["N"], int) or isinstance(spec["N"], bool):
        raise TargetParseError("'phase_state.N' must be an integer.")
    try:
        return phase_state(PhaseStateSpec(_complex(spec["z"], "phase_state.z"), spec["N"]))
    except ValueError as e:
        raise TargetParseError(str(e)) from e


def target_from_file(path) -> TargetState:
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise TargetParseError(f"Cannot read target file {path}: {e}") from e
    return target_from_json(obj)


def target_to_json(target: TargetState) -> dict:
    return {"coeffs": [[float(c.real), float(c.imag)] for c in target.psi]}
