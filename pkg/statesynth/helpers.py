import cmath

from .config import PROB_DIGITS
from .errors import (
    AllZero,
    ConsistencyAlarm,
    CutoffExceeded,
    DegreeLimitExceeded,
    DegreeZero,
    NonConvergence,
    SynthesisError,
    TargetParseError,
    ValidationFailure,
    ZeroNorm,
)


def format_error(e: Exception) -> str:
    """Return a clean, user-facing message for a failed command."""
    detail = str(e)

    if isinstance(e, TargetParseError):
        return f"Could not read the target: {detail}"
    if isinstance(e, AllZero):
        return "The target has no nonzero coefficient, so there is nothing to prepare."
    if isinstance(e, DegreeZero):
        return "The target is the vacuum; it needs no photon additions."
    if isinstance(e, NonConvergence):
        return f"Root finding did not converge: {detail}"
    if isinstance(e, CutoffExceeded):
        return f"The Fock cutoff limit was reached before the state converged: {detail}"
    if isinstance(e, ZeroNorm):
        return f"The state vanished during the cascade: {detail}"
    if isinstance(e, DegreeLimitExceeded):
        return f"{detail} Try --method simulate."
    if isinstance(e, ConsistencyAlarm):
        return f"Analytic and simulated probabilities disagree: {detail}"
    if isinstance(e, ValidationFailure):
        return f"Optimized configuration failed validation: {detail}"
    if isinstance(e, SynthesisError):
        return f"Numerical failure: {detail}"
    if isinstance(e, ValueError):
        return f"Invalid input: {detail}"

    return f"Unexpected error: {detail[:200]}"


def exit_code_for(e: Exception) -> int:
    if isinstance(e, SynthesisError):
        return e.exit_code
    if isinstance(e, ValueError):
        return 2
    return 1


def polar(z: complex) -> tuple[float, float]:
    """Modulus and phase; the phase lies in (-pi, pi]."""
    r, phi = cmath.polar(complex(z))
    if phi == -cmath.pi:
        phi = cmath.pi
    if r == 0:
        phi = 0.0
    return r, phi


def sci(value: float, digits: int = PROB_DIGITS) -> str:
    """Scientific notation with `digits` significant digits."""
    return f"{value:.{digits - 1}e}"


def fixed(value: float, width: int = 10, places: int = 6) -> str:
    return f"{value:{width}.{places}f}"


def pair(z: complex) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]
