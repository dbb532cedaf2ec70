import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from freud_uvarov.recurrence import (RecurrenceError, compute_recurrence, string_residual,
                                     toda_residual)
from freud_uvarov.weight import PrecisionConfig

# a_1^2(0) = Gamma(3/4) / Gamma(1/4); a_1^2(1) = mu_2 / mu_0 from mpmath.quad
A1_SQ_T0 = 0.337989120033642
A1_SQ_T1 = 0.83274548712838
# frozen from an 80-digit Stieltjes run (checked against the string equation)
A_SQ_T1 = (0.83274548712838, 0.4674662868940696, 0.7693840749575704, 0.7379553618584076,
           0.847756076660176, 0.8887692929254256, 0.951201706428332)


def test_first_coefficient_closed_form(tab0, tab1):
    with mp.workdps(90):
        exact = mp.gamma(mp.mpf(3) / 4) / mp.gamma(mp.mpf(1) / 4)
        assert abs(tab0.a_sq[1] - exact) < mp.mpf(10) ** -70
    assert float(tab0.a_sq[1]) == pytest.approx(A1_SQ_T0, rel=1e-14)
    assert float(tab1.a_sq[1]) == pytest.approx(A1_SQ_T1, rel=1e-14)


def test_frozen_coefficients_at_t1(tab1):
    assert np.allclose(tab1.a2[1:8], A_SQ_T1, rtol=1e-14, atol=0)


def test_table_layout(tab1):
    assert tab1.a_sq[0] == 0
    assert len(tab1.a_sq) == tab1.n_max + 1 == len(tab1.norm_sq) == len(tab1.zeta)
    with mp.workdps(90):
        for n in range(1, tab1.n_max + 1):
            assert abs(tab1.norm_sq[n] / tab1.norm_sq[n - 1] - tab1.a_sq[n]) < mp.mpf(10) ** -75
    assert abs(tab1.max_mean) < mp.mpf(10) ** -60


def test_string_equation_on_grid(tab_grid):
    assert max(string_residual(tab_grid, n) for n in range(1, tab_grid.n_max)) < 1e-60


def test_string_residual_index_range(tab1):
    with pytest.raises(IndexError):
        string_residual(tab1, 0)
    with pytest.raises(IndexError):
        string_residual(tab1, tab1.n_max)


def test_check_degree(tab1):
    tab1.check_degree(tab1.n_max)
    with pytest.raises(IndexError):
        tab1.check_degree(tab1.n_max, extra=1)
    with pytest.raises(IndexError):
        tab1.check_degree(-1)


def test_memoised_instances_are_shared():
    assert compute_recurrence(1.0, 20) is compute_recurrence(1, 20)


def test_lower_precision_agrees_to_its_digits(tab1):
    low = compute_recurrence(1.0, 20, PrecisionConfig(working_digits=40))
    for n in range(1, 21):
        assert abs(low.a_sq[n] - tab1.a_sq[n]) < mp.mpf(10) ** -35


def test_with_a_sq_replaces_and_renormalises(tab1):
    a_sq = list(tab1.a_sq)
    with mp.workdps(90):
        a_sq[3] = a_sq[3] * 2
    other = tab1.with_a_sq(a_sq)
    with mp.workdps(90):
        assert other.a_sq[3] == 2 * tab1.a_sq[3]
        assert abs(other.norm_sq[3] - 2 * tab1.norm_sq[3]) < mp.mpf(10) ** -70
    assert string_residual(other, 3) > 0.1


def test_toda_flow_central_difference():
    cfg = PrecisionConfig()
    coarse = toda_residual(1.0, 2e-3, 2, cfg)
    fine = toda_residual(1.0, 1e-3, 2, cfg)
    assert fine < 1e-5
    assert 3.0 < coarse / fine < 5.0


def test_invalid_arguments():
    with pytest.raises(ValueError):
        compute_recurrence(-0.5, 10)
    with pytest.raises(ValueError):
        compute_recurrence(1.0, 1)
    with pytest.raises(ValueError):
        toda_residual(1.0, 0.0, 2)
    with pytest.raises(ValueError):
        toda_residual(1.0, 1e-3, 0)
    with pytest.raises(ValueError):
        toda_residual(1e-4, 1e-3, 1)


def test_starved_quadrature_is_reported():
    # with far too few nodes the discrete measure has only a handful of points
    from freud_uvarov import recurrence, weight

    cfg = PrecisionConfig(working_digits=30)
    nodes, weights = weight.discretize(1.0, cfg, n_nodes=cfg.node_count(4))
    with pytest.raises(RecurrenceError):
        # 2 nodes support at most a degree-1 orthogonal sequence
        original = recurrence.discretize
        try:
            recurrence.discretize = lambda *a, **k: (nodes[:2], weights[:2])
            recurrence._compute_recurrence.cache_clear()
            recurrence._compute_recurrence("1.0", 4, cfg)
        finally:
            recurrence.discretize = original
            recurrence._compute_recurrence.cache_clear()


@settings(max_examples=15, deadline=None)
@given(st.floats(min_value=0.0, max_value=3.0))
def test_coefficients_positive_and_string_equation_for_any_t(t):
    tab = compute_recurrence(t, 8, PrecisionConfig(working_digits=40))
    assert all(v > 0 for v in tab.a_sq[1:])
    assert max(string_residual(tab, n) for n in range(1, 8)) < 1e-25
