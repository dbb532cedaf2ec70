import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from freud_uvarov.laurent import X, LaurentPoly

small = st.integers(min_value=-6, max_value=6)
laurents = st.builds(lambda lo, cs: LaurentPoly(lo, tuple(cs)), st.integers(min_value=-3, max_value=3),
                     st.lists(small, max_size=5))
points = st.sampled_from([-1.7, -0.6, 0.45, 1.3, 2.0])


def test_canonical_trimming():
    p = LaurentPoly(-2, (0, 0, 3, 0, 1, 0))
    assert p.min_exp == 0 and p.coeffs == (3, 0, 1)
    assert p.max_exp == 2
    assert LaurentPoly(5, (0, 0)).is_zero
    assert LaurentPoly(5, ()) == LaurentPoly(0, ())


def test_basic_operations():
    p = X * X + 2
    assert p.terms() == {0: 2, 2: 1}
    q = LaurentPoly.from_dict({-1: 2, 3: 1})
    assert (p * q).terms() == {-1: 4, 1: 2, 3: 2, 5: 1}
    assert q.derivative().terms() == {-2: -2, 2: 3}
    assert (q - q).is_zero
    assert (3 - X).terms() == {0: 3, 1: -1}


def test_call_rejects_origin_with_negative_powers():
    q = LaurentPoly.from_dict({-1: 1.0})
    with pytest.raises(ZeroDivisionError):
        q(0.0)
    assert (X * X)(0.0) == 0.0
    assert np.allclose(q(np.array([1.0, 2.0])), [1.0, 0.5])


def test_cancel_and_parity():
    p = LaurentPoly.from_dict({0: 1.0, 1: 1e-20, 2: 3.0})
    assert p.cancel(1e-12).terms() == {0: 1.0, 2: 3.0}
    assert p.parity_defect(0) == pytest.approx(1e-20 / 3.0)
    assert LaurentPoly.from_dict({1: 1.0, 3: 2.0}).parity_defect(1) == 0


def test_mpf_coefficients_and_demotion():
    with mp.workdps(50):
        p = LaurentPoly.from_dict({2: mp.mpf(1) / 3})
    f = p.map(float)
    assert isinstance(f.coeff(2), float)
    assert f(3.0) == pytest.approx(3.0)


@settings(max_examples=80, deadline=None)
@given(laurents, laurents, laurents)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p - p).is_zero


@settings(max_examples=80, deadline=None)
@given(laurents, laurents, points)
def test_evaluation_is_a_homomorphism(p, q, x):
    assert (p * q)(x) == pytest.approx(p(x) * q(x), rel=1e-12, abs=1e-9)
    assert (p + q)(x) == pytest.approx(p(x) + q(x), rel=1e-12, abs=1e-9)


@settings(max_examples=80, deadline=None)
@given(laurents, laurents)
def test_leibniz_rule(p, q):
    assert (p * q).derivative() == p.derivative() * q + p * q.derivative()


@settings(max_examples=50, deadline=None)
@given(laurents)
def test_product_with_reflection_is_even(p):
    mirror = LaurentPoly.from_dict({k: c * (-1) ** k for k, c in p.terms().items()})
    assert (p * mirror).parity_defect(0) == 0
