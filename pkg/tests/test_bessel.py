import numpy as np
import pytest

from fluxring.bessel import MAX_ORDER, bessel_j, bessel_j0_zero
from fluxring.errors import IndexOutOfRange, OrderTooLarge

from oracles import bessel_j0_zero_bisection, bessel_quadrature

# first two positive zeros of J_0, frozen from bisection on the quadrature
# oracle (bessel_j0_zero_bisection reproduces them to ~1e-13)
J0_ZERO_1 = 2.404825557695773
J0_ZERO_2 = 5.520078110286311


def test_trivial_values():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(1, 0.0) == 0.0
    assert bessel_j(7, 0.0) == 0.0


def test_vanishes_at_first_zero():
    assert abs(bessel_j(0, J0_ZERO_1)) < 1e-12


def test_against_quadrature_oracle():
    worst = 0.0
    for m in [0, 1, 2, 3, 5, 8, 13, 21, 34, 50, 60]:
        for x in [0.05, 0.5, 1.0, 2.5, 5.0, 9.4, 11.99, 12.01, 20.0, 33.3, 50.0]:
            worst = max(worst, abs(bessel_j(m, x) - bessel_quadrature(m, x)))
    assert worst < 1e-12


def test_negative_argument_parity():
    for m in (0, 1, 2, 5):
        assert bessel_j(m, -7.3) == pytest.approx(
            (-1.0) ** m * bessel_j(m, 7.3), abs=1e-15
        )


def test_recurrence(rng):
    # J_{m-1}(x) + J_{m+1}(x) = (2m/x) J_m(x)
    for _ in range(200):
        m = int(rng.integers(1, 31))
        x = float(rng.uniform(0.1, 40.0))
        lhs = bessel_j(m - 1, x) + bessel_j(m + 1, x)
        rhs = 2.0 * m / x * bessel_j(m, x)
        assert lhs == pytest.approx(rhs, abs=1e-10)


def test_order_range():
    with pytest.raises(OrderTooLarge):
        bessel_j(MAX_ORDER + 1, 1.0)
    with pytest.raises(OrderTooLarge):
        bessel_j(-1, 1.0)


def test_zeros_match_frozen_and_oracle():
    assert bessel_j0_zero(1) == pytest.approx(J0_ZERO_1, abs=1e-12)
    assert bessel_j0_zero(2) == pytest.approx(J0_ZERO_2, abs=1e-12)
    for i in (1, 2, 3, 7, 20):
        z = bessel_j0_zero(i)
        assert abs(bessel_j(0, z)) < 1e-12
        assert z == pytest.approx(bessel_j0_zero_bisection(i), abs=5e-12)


def test_first_zero_in_pi_units():
    # 0.76548...; the rounded figure 0.765*pi is within 0.1% of the zero
    assert bessel_j0_zero(1) / np.pi == pytest.approx(0.76548, abs=5e-6)
    assert abs(bessel_j0_zero(1) - 0.765 * np.pi) / bessel_j0_zero(1) < 1e-3


def test_zero_index_range():
    for bad in (0, -3, 21):
        with pytest.raises(IndexOutOfRange):
            bessel_j0_zero(bad)
