"""Tests for ballpark.fence - ball constants and the u_nu bound."""

import logging
import math
from unittest.mock import patch

import numpy as np
import pytest

from ballpark.fence import (
    BoundParams,
    equality_case,
    surface_const,
    theorem_window,
    u_nu,
    u_nu_at_zero,
    u_nu_bracket_route,
    u_nu_closed_form_n3,
    u_nu_general,
    volume_const,
)
from ballpark.mishaps import DomainError, PositivityError
from ballpark.ripples import BesselOrder


class TestConstants:
    """Tests for V_N and omega_{N-1}."""

    @pytest.mark.parametrize(
        "dim,expected",
        [(1, 2.0), (2, math.pi), (3, 4 * math.pi / 3), (4, math.pi**2 / 2), (5, 8 * math.pi**2 / 15)],
    )
    def test_volume(self, dim, expected):
        assert volume_const(dim) == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize("dim,expected", [(1, 2.0), (2, 2 * math.pi), (3, 4 * math.pi), (4, 2 * math.pi**2)])
    def test_surface(self, dim, expected):
        assert surface_const(dim) == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize("dim", [1, 2, 3, 4, 6])
    def test_surface_is_n_times_volume(self, dim):
        """Test omega_{N-1} = N V_N."""
        assert surface_const(dim) == pytest.approx(dim * volume_const(dim), rel=1e-13)

    def test_rejects_dimension_zero(self):
        with pytest.raises(DomainError):
            volume_const(0)


class TestBoundParams:
    """Tests for BoundParams."""

    def test_derives_order(self):
        assert BoundParams(dim_n=3, delta=0.5, radius=1.0).order == BesselOrder(1)

    @pytest.mark.parametrize("kwargs", [
        {"dim_n": 0, "delta": 1.0, "radius": 1.0},
        {"dim_n": 2, "delta": 0.0, "radius": 1.0},
        {"dim_n": 2, "delta": 1.0, "radius": -1.0},
        {"dim_n": 2, "delta": float("nan"), "radius": 1.0},
    ])
    def test_rejects_bad_values(self, kwargs):
        with pytest.raises(DomainError):
            BoundParams(**kwargs)


class TestUNu:
    """Tests for u_nu and its routes."""

    def test_three_dim_integer_delta_r(self):
        """Test (3, 1, 1): sin(pi) = 0, so the bound is 4 pi."""
        value = u_nu(BoundParams(dim_n=3, delta=1.0, radius=1.0))
        assert value.bound == pytest.approx(4 * math.pi, rel=1e-12)
        assert value.denominator == pytest.approx(1.0, abs=1e-14)

    def test_denominator_is_one_on_integer_shells(self):
        """Test delta R in Z gives denominator 1 for N = 3."""
        value = u_nu(BoundParams(dim_n=3, delta=0.5, radius=4.0))
        assert value.denominator == pytest.approx(1.0, abs=1e-14)
        assert value.u_value == pytest.approx(32.0, rel=1e-12)

    def test_one_dim(self):
        """Test N = 1: bound = omega_0 / delta = 2 / delta."""
        value = u_nu(BoundParams(dim_n=1, delta=0.5, radius=10.0))
        assert value.bound == pytest.approx(4.0, rel=1e-14)
        assert value.denominator == 1.0

    def test_three_dim_half_delta(self):
        """Test (3, 0.5, 1) against the elementary formula."""
        value = u_nu(BoundParams(dim_n=3, delta=0.5, radius=1.0))
        expected = 2.0 / (1.0 - 4.0 / math.pi**2)
        assert value.u_value == pytest.approx(expected, rel=1e-10)
        assert value.bound == pytest.approx(4 * math.pi * expected, rel=1e-10)
        assert value.volume_const == pytest.approx(4 * math.pi / 3)

    def test_closed_form_agreement(self):
        """Test the Bessel route against the N = 3 closed form on 500 log-spaced delta R."""
        order = BesselOrder.from_dim(3)
        for t in np.geomspace(0.05, 50.0, 500):
            assert u_nu_general(order, float(t), 1.0) == pytest.approx(
                u_nu_closed_form_n3(1.0, float(t)), rel=1e-10
            )

    @pytest.mark.parametrize("twice_order", [0, 1, 2, 3])
    @pytest.mark.parametrize("kappa", [0.1, 0.5, 2.0, 10.0])
    def test_scaling_identity(self, twice_order, kappa):
        """Test u(xi, delta) = kappa^(2nu+2) u(xi/kappa, kappa delta)."""
        order = BesselOrder(twice_order)
        grid = np.linspace(0.5, 5.0, 10)
        for xi in grid:
            for delta in grid:
                left = u_nu_general(order, float(xi), float(delta))
                right = kappa ** (twice_order + 2) * u_nu_general(order, float(xi) / kappa, kappa * float(delta))
                assert left == pytest.approx(right, rel=1e-12)

    @pytest.mark.parametrize("twice_order", [-1, 0, 1, 2, 3])
    @pytest.mark.parametrize("xi,delta", [(0.7, 1.0), (2.0, 0.5), (5.5, 0.3), (12.0, 1.0)])
    def test_bracket_route_agrees(self, twice_order, xi, delta):
        """Test the tail-integral and raw-bracket routes give the same u_nu."""
        order = BesselOrder(twice_order)
        assert u_nu_bracket_route(order, xi, delta) == pytest.approx(u_nu_general(order, xi, delta), rel=1e-10)

    def test_minus_half_is_one_over_delta(self):
        assert u_nu_general(BesselOrder(-1), 3.3, 0.25) == pytest.approx(4.0)

    def test_value_at_zero(self):
        """Test u(0, delta) = Gamma(nu+1) Gamma(nu+2) (2/(pi delta))^(2nu+2)."""
        expected = math.gamma(1.5) * math.gamma(2.5) * (2.0 / math.pi) ** 3
        assert u_nu_at_zero(BesselOrder(1), 1.0) == pytest.approx(expected, rel=1e-12)

    def test_rejects_nonpositive_xi(self):
        with pytest.raises(DomainError):
            u_nu_general(BesselOrder(0), 0.0, 1.0)

    def test_positivity_error(self):
        """Test a nonpositive denominator is an error, not a value."""
        with patch("ballpark.fence.tail_integral", return_value=1.0):
            with pytest.raises(PositivityError):
                u_nu(BoundParams(dim_n=3, delta=1.0, radius=1.0))
            with pytest.raises(PositivityError):
                u_nu_general(BesselOrder(1), 1.0, 1.0)

    def test_large_denominator_logged(self, caplog):
        """Test a denominator above 2 is logged as a warning."""
        with patch("ballpark.fence.tail_integral", return_value=-1.0):
            with caplog.at_level(logging.WARNING, logger="ballpark.fence"):
                u_nu(BoundParams(dim_n=3, delta=1.0, radius=1.0))
        assert "exceeds 2" in caplog.text

    @pytest.mark.parametrize("dim_n,delta,radius", [(1, 0.5, 3.0), (2, 0.7, 1.3), (3, 0.25, 2.2), (5, 1.0, 0.8)])
    def test_u_nu_agrees_with_general(self, dim_n, delta, radius):
        """Test the theorem-facing u_nu returns exactly u_nu_general at its order."""
        params = BoundParams(dim_n=dim_n, delta=delta, radius=radius)
        assert u_nu(params).u_value == u_nu_general(params.order, radius, delta)

    def test_u_nu_goes_through_general(self):
        with patch("ballpark.fence.u_nu_general", return_value=7.5) as general:
            value = u_nu(BoundParams(dim_n=4, delta=0.5, radius=2.0))
        general.assert_called_once_with(BesselOrder(2), 2.0, 0.5)
        assert value.u_value == 7.5
        assert value.bound == pytest.approx(7.5 * 2 * math.pi**2)


class TestEqualityCase:
    """Tests for equality_case."""

    def test_zero_of_j_half(self):
        """Test pi delta R = pi hits a zero of J_{1/2}."""
        assert equality_case(BesselOrder(1), 1.0, 1.0)

    def test_generic_point(self):
        assert not equality_case(BesselOrder(1), 0.5, 1.0)


class TestTheoremWindow:
    """Tests for theorem_window."""

    def test_three_dim(self):
        """Test (3, 1, 2): V_3 8 -/+ 16 pi."""
        lower, upper = theorem_window(3, 1.0, 2.0)
        main = 32 * math.pi / 3
        assert lower == pytest.approx(main - 16 * math.pi, rel=1e-12)
        assert upper == pytest.approx(main + 16 * math.pi, rel=1e-12)
