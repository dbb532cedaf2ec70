import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from freud_uvarov.christoffel import (DIVISION_SWITCH, alpha_sq, check_chain, division_path,
                                      eval_F2, interlace_T1, t1_chain, xi_sq, zeros_F2, zeros_G)
from freud_uvarov.polys import eval_F, kernel_direct
from freud_uvarov.zeros import zeros_F

XI1_SQ_T0 = 0.7396687797971597          # = 1 / (4 a_1^2(0))
F2_3_ZERO_T1 = math.sqrt(9.15996276706903 / 5.80910303523601)   # sqrt(mu_6 / mu_4), t = 1


def test_first_connection_coefficient(tab0):
    assert float(xi_sq(1, tab0)) == pytest.approx(XI1_SQ_T0, rel=1e-14)
    assert float(xi_sq(1, tab0)) == pytest.approx(1 / (4 * tab0.a2[1]), rel=1e-14)


def test_even_connection_coefficient_is_next_a(tab_grid):
    for m in range(0, 8):
        assert abs(xi_sq(2 * m, tab_grid) - tab_grid.a_sq[2 * m + 1]) < mp.mpf(10) ** -60


def test_cubic_zeros_from_moments(tab1):
    assert np.allclose(zeros_F2(3, tab1), [-F2_3_ZERO_T1, 0.0, F2_3_ZERO_T1], atol=1e-12)


def test_alpha_recurrence_generates_the_same_polynomials(tab1):
    x = np.array([-1.3, -0.2, 0.5, 1.9])
    coeffs = [xi_sq(0, tab1)]
    for n in range(1, 12):
        assert float(alpha_sq(n, tab1)) > 0
        assert np.allclose(eval_F2(n, x, tab1), division_path(n, x, tab1), rtol=1e-10, atol=1e-12)


def test_near_origin_switch_is_continuous(tab1):
    # on either side of the switch both paths agree to the division path's cancellation error
    for n in (4, 7, 10):
        for x in (0.999 * DIVISION_SWITCH, 1.001 * DIVISION_SWITCH, 5 * DIVISION_SWITCH):
            assert eval_F2(n, x, tab1) == pytest.approx(division_path(n, x, tab1), abs=1e-6)
        assert np.isfinite(eval_F2(n, 0.0, tab1))


def test_orthogonal_for_the_modified_weight(tab1):
    # int F2_j F2_k x^2 w dx = 0 for j != k, on a 14-point Gauss rule for w
    nodes = zeros_F(14, tab1).array
    lam = 1.0 / kernel_direct(13, nodes, nodes, tab1)
    vals = np.array([eval_F2(n, nodes, tab1) for n in range(6)])
    gram = (vals * nodes ** 2 * lam) @ vals.T
    off = gram - np.diag(np.diag(gram))
    assert np.max(np.abs(off)) < 1e-11 * np.max(np.diag(gram))


def test_zeros_of_G(tab1):
    g = zeros_G(3, tab1)
    assert len(g) == 6
    assert g[2] == g[3] == 0.0
    assert np.allclose(g, -g[::-1])


def test_T1_on_grid(tab_grid):
    for m in range(1, 7):
        result = interlace_T1(m, tab_grid)
        assert result, result.witness


def test_chain_reports_first_failure():
    bad = check_chain([("a", 0.0), ("b", 1.0), ("c", 0.5)])
    assert not bad and bad.failed_at == 1
    assert check_chain([("a", 0.0), ("b", 0.0)], equal_pairs={0})
    with pytest.raises(ValueError):
        t1_chain([1.0, 2.0, 3.0], [0.0, 0.0, 1.0])
    assert not t1_chain([-1.0, 1.0], [0.1, 0.1])


def test_index_guards(tab1):
    with pytest.raises(IndexError):
        alpha_sq(0, tab1)
    with pytest.raises(IndexError):
        xi_sq(tab1.n_max - 1, tab1)
    with pytest.raises(ValueError):
        interlace_T1(0, tab1)


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=-2.0, max_value=2.0), st.integers(min_value=0, max_value=12))
def test_defining_relation(tab1, x, n):
    lhs = x * x * eval_F2(n, x, tab1)
    rhs = eval_F(n + 2, x, tab1) + float(xi_sq(n, tab1)) * eval_F(n, x, tab1)
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-11)


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=-2.0, max_value=2.0), st.integers(min_value=0, max_value=12))
def test_parity(tab1, x, n):
    assert eval_F2(n, -x, tab1) == pytest.approx((-1) ** n * eval_F2(n, x, tab1), rel=1e-12, abs=1e-12)
