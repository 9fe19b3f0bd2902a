import json
import math

import numpy as np
import pytest

from statesynth.errors import SynthesisError
from statesynth.mathkernel import find_roots, poly_from_roots
from statesynth.synthesis import characteristic_coeffs
from statesynth.targets import PhaseStateSpec, make_target, phase_state

RANDOM_SEED = 20240611
RANDOM_TARGET_COUNT = 200
RANDOM_TRANSMITTANCES = (0.8, 0.9, 0.99)
MAX_RANDOM_ROOT = 6.0  # Cancellation between larger roots exceeds float64 precision


def target_with_roots(roots, label="from roots"):
    """psi_n = c_n sqrt(n!) for c = prod (x - r): the state prod (a^dag - r)|0>."""
    poly = poly_from_roots(roots)
    scale = np.array([math.sqrt(math.factorial(n)) for n in range(poly.degree + 1)])
    return make_target(poly.coeffs * scale, label)


def random_targets(count=RANDOM_TARGET_COUNT, seed=RANDOM_SEED, max_root=MAX_RANDOM_ROOT):
    """Fixed-seed complex Gaussian targets with 1 <= N <= 5 and bounded characteristic roots."""
    rng = np.random.default_rng(seed)
    targets = []
    for _ in range(100 * count):
        if len(targets) == count:
            break
        n = int(rng.integers(1, 6))
        coeffs = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
        target = make_target(coeffs, f"random #{len(targets)}")
        if target.N < 1:
            continue
        try:
            roots = find_roots(characteristic_coeffs(target))
        except SynthesisError:
            continue
        if np.max(np.abs(roots)) <= max_root:
            targets.append(target)
    assert len(targets) == count
    return targets


@pytest.fixture(scope="session")
def random_target_pairs():
    """(target, |T|) pairs, |T| cycling through the test transmittances."""
    targets = random_targets()
    return [(t, RANDOM_TRANSMITTANCES[i % len(RANDOM_TRANSMITTANCES)]) for i, t in enumerate(targets)]


@pytest.fixture
def one_photon():
    return make_target([0, 1], "|1>")


@pytest.fixture
def cat_like():
    return make_target([1, 0, 1], "(|0> + |2>)/sqrt2")


@pytest.fixture(scope="session")
def phase6():
    return phase_state(PhaseStateSpec(0.4, 6))


@pytest.fixture(scope="session")
def phase5():
    return phase_state(PhaseStateSpec(0.4, 5))


@pytest.fixture
def target_file(tmp_path):
    """Write a target JSON object to a file and return its path."""
    def write(obj, name="target.json"):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)

    return write


@pytest.fixture
def from_roots():
    return target_with_roots
