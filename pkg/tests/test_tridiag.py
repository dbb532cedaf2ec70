import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from freud_uvarov.tridiag import eigenvalues_bisection, jacobi_zeros, sturm_count


def test_hermite_zeros():
    # monic Hermite (weight exp(-x^2)) has a_k^2 = k/2; H_3 zeros are 0, +-sqrt(3/2)
    coeffs = np.array([0.0, 0.5, 1.0, 1.5])
    assert np.allclose(jacobi_zeros(coeffs, 3), [-np.sqrt(1.5), 0.0, np.sqrt(1.5)], atol=1e-12)


def test_sturm_count_brackets():
    diag, off = np.zeros(3), np.array([0.5, 1.0])
    assert sturm_count(diag, off, -10) == 0
    assert sturm_count(diag, off, 0.1) == 2
    assert sturm_count(diag, off, 10) == 3


def test_zero_pivot_does_not_overflow():
    with np.errstate(over="raise"):
        assert sturm_count(np.zeros(4), np.ones(3), 0.0) == 2


def test_input_validation():
    with pytest.raises(ValueError):
        eigenvalues_bisection(np.zeros(3), np.ones(3))
    with pytest.raises(ValueError):
        eigenvalues_bisection(np.zeros(2), np.array([-1.0]))
    with pytest.raises(ValueError):
        jacobi_zeros(np.array([0.0, 1.0, 0.0]), 3)
    assert eigenvalues_bisection(np.zeros(0), np.zeros(0)).size == 0


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(min_value=0.05, max_value=20.0), min_size=1, max_size=14),
       st.lists(st.floats(min_value=-3.0, max_value=3.0), min_size=15, max_size=15))
def test_matches_dense_solver(off_sq, diag):
    n = len(off_sq) + 1
    d = np.array(diag[:n])
    T = np.diag(d) + np.diag(np.sqrt(off_sq), 1) + np.diag(np.sqrt(off_sq), -1)
    expected = np.linalg.eigvalsh(T)
    got = eigenvalues_bisection(d, np.array(off_sq))
    assert np.allclose(got, expected, atol=1e-10 * max(1.0, np.max(np.abs(expected))))
