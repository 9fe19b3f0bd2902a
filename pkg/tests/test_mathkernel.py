import numpy as np
import pytest
from scipy.linalg import companion
from scipy.special import eval_genlaguerre

from statesynth.errors import AllZero, DegreeZero
from statesynth.mathkernel import (
    Polynomial,
    canonical_order,
    canonical_phase,
    elementary_symmetric,
    find_roots,
    laguerre,
    poly_from_roots,
)


@pytest.mark.parametrize("m", [0, 1, 3, 6])
@pytest.mark.parametrize("x", [-4.0, -0.49, 0.0, 0.7, 5.5])
def test_laguerre_matches_scipy(m, x):
    for n in range(12):
        expected = eval_genlaguerre(n, m, x)
        assert laguerre(n, m, x) == pytest.approx(expected, rel=1e-10, abs=1e-12)


def test_elementary_symmetric_small_case():
    assert np.allclose(elementary_symmetric([1, 2, 3]), [1, 6, 11, 6])
    assert np.allclose(elementary_symmetric([]), [1])


def test_elementary_symmetric_agrees_with_vieta():
    rng = np.random.default_rng(7)
    values = rng.normal(size=6) + 1j * rng.normal(size=6)
    e = elementary_symmetric(values)
    signs = (-1) ** np.arange(len(values) + 1)
    assert np.allclose(np.poly(values), signs * e, atol=1e-12)


def test_polynomial_strips_trailing_zeros():
    p = Polynomial([1, 2, 0, 0])
    assert p.degree == 1
    assert p.leading == 2
    assert p(3.0) == pytest.approx(7.0)


def test_polynomial_all_zero_is_rejected():
    with pytest.raises(AllZero):
        Polynomial([0, 0, 0])


def test_poly_from_roots_leading_and_zero_leading():
    p = poly_from_roots([1, -2], leading=3)
    assert np.allclose(p.coeffs, [-6, 3, 3])
    with pytest.raises(ValueError):
        poly_from_roots([1], leading=0)


@pytest.mark.parametrize("degree", [1, 2, 3, 5, 8])
def test_find_roots_matches_companion_eigenvalues(degree):
    rng = np.random.default_rng(100 + degree)
    c = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
    roots = find_roots(Polynomial(c))
    reference = np.linalg.eigvals(companion(c[::-1]))

    assert len(roots) == degree
    for r in roots:
        assert np.min(np.abs(reference - r)) < 1e-8
    assert np.all(np.abs(Polynomial(c)(roots)) < 1e-9 * np.max(np.abs(c)) * np.maximum(1, np.abs(roots)) ** degree)


def test_find_roots_is_canonically_ordered():
    roots = find_roots(poly_from_roots([2.0, 0.5j, -1.0, 0.5]))
    assert np.allclose(roots, [0.5, 0.5j, -1.0, 2.0], atol=1e-10)


def test_find_roots_merges_a_triple_root():
    roots = find_roots(poly_from_roots([0.5, 0.5, 0.5, -1j]))
    assert roots[0] == roots[1] == roots[2]
    assert abs(roots[0] - 0.5) < 1e-8
    assert abs(roots[3] + 1j) < 1e-8


def test_find_roots_double_root_off_axis():
    r = 0.6 + 0.2j
    roots = find_roots(poly_from_roots([r, r, 1.5]))
    assert roots[0] == roots[1]
    assert abs(roots[0] - r) < 1e-8


def test_find_roots_rejects_constant():
    with pytest.raises(DegreeZero):
        find_roots(Polynomial([3.0]))


def test_conjugate_pair_comes_out_in_phase_order():
    roots = find_roots(Polynomial([1, 0, 1]))
    assert np.allclose(roots, [-1j, 1j])


def test_canonical_phase_maps_minus_pi_to_pi():
    assert canonical_phase(complex(-1, -0.0)) == pytest.approx(np.pi)
    assert canonical_phase(1j) == pytest.approx(np.pi / 2)


def test_canonical_order_ties_on_modulus_use_phase():
    assert canonical_order([1j, -1j, 0.1]) == [2, 1, 0]
