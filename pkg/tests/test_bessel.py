from __future__ import annotations

import cmath
import math

import pytest

from conftest import cx, rel
from gegenbauer.bessel import (
    bessel_i,
    bessel_j,
    bessel_k,
    bessel_y,
    crossover_radius,
    hankel_j,
    k_rotation,
)
from gegenbauer.errors import AccuracyError, DomainError


class TestJ:
    def test_origin(self):
        assert bessel_j(0, 0) == 1

    def test_half_integer_zero(self):
        assert abs(bessel_j(0.5, math.pi)) < 1e-15

    def test_first_zero_of_j1(self):
        assert abs(bessel_j(1, 3.8317059702)) < 1e-8

    def test_negative_order_rejects_origin(self):
        with pytest.raises(DomainError):
            bessel_j(-0.4, 0)

    def test_against_oracle(self, oracle):
        for e in oracle["bessel"]:
            # absolute error near a zero of J, relative elsewhere
            ref = cx(e["J"])
            assert abs(bessel_j(e["nu"], cx(e["w"])) - ref) < 1e-12 * max(1e-3, abs(ref))

    def test_crossover_radius(self):
        assert crossover_radius(0) == 20 and crossover_radius(4) == 28


class TestY:
    def test_half_integer_closed_forms(self):
        assert abs(bessel_y(0.5, math.pi / 2)) < 1e-14
        assert bessel_y(0.5, math.pi).real == pytest.approx(math.sqrt(2 / math.pi**2), rel=1e-12)

    def test_wronskian_point(self):
        nu, w = 0.3, 2.0
        jp = bessel_j(nu - 1, w) - nu / w * bessel_j(nu, w)
        yp = bessel_y(nu - 1, w) - nu / w * bessel_y(nu, w)
        wr = bessel_j(nu, w) * yp - jp * bessel_y(nu, w)
        assert rel(wr, 2 / (math.pi * w)) < 1e-12

    def test_integer_order_limit(self, oracle):
        for e in oracle["bessel"]:
            assert rel(bessel_y(e["nu"], cx(e["w"])), cx(e["Y"])) < 1e-8

    def test_origin(self):
        with pytest.raises(DomainError):
            bessel_y(0.3, 0)


class TestIK:
    def test_i_values(self):
        assert bessel_i(0, 0) == 1
        assert bessel_i(0.5, 1).real == pytest.approx(math.sqrt(2 / math.pi) * math.sinh(1), rel=1e-13)

    def test_i_rotation(self):
        a = bessel_i(0.3, 2j)
        b = cmath.exp(1j * math.pi * 0.15) * bessel_j(0.3, 2)
        assert rel(a, b) < 1e-10

    def test_k_closed_forms(self):
        assert bessel_k(0.5, 1).real == pytest.approx(math.sqrt(math.pi / 2) * math.exp(-1), rel=1e-12)
        assert bessel_k(0.5, 2).real == pytest.approx(math.sqrt(math.pi / 4) * math.exp(-2), rel=1e-12)

    def test_k_from_independent_i_sums(self):
        nu, w = 0.3, 1.5

        def i_series(v):
            return sum((w / 2) ** (2 * k + v) / (math.factorial(k) * math.gamma(k + v + 1)) for k in range(40))

        expect = math.pi / 2 * (i_series(-nu) - i_series(nu)) / math.sin(math.pi * nu)
        assert rel(bessel_k(nu, w), expect) < 1e-12

    def test_against_oracle(self, oracle):
        for e in oracle["bessel"]:
            assert rel(bessel_i(e["nu"], cx(e["w"])), cx(e["I"])) < 1e-12
            assert rel(bessel_k(e["nu"], cx(e["w"])), cx(e["K"])) < 1e-8


class TestRotation:
    def test_literal_formula(self):
        j, y = bessel_j(0.5, 1), bessel_y(0.5, 1)
        expect = -(1j * math.pi / 2) * cmath.exp(-1j * math.pi / 4) * (j - 1j * y)
        assert rel(k_rotation(0.5, 1, +1), expect) < 1e-14
        assert rel(k_rotation(0.5, 1, +1), bessel_k(0.5, 1j)) < 1e-9

    def test_lower_rotation(self):
        assert rel(k_rotation(0.3, 2, -1), bessel_k(0.3, -2j)) < 1e-9

    def test_conjugate_pair(self):
        a, b = k_rotation(0.7, 3.0, +1), k_rotation(0.7, 3.0, -1)
        assert abs(a - b.conjugate()) < 1e-13 * abs(a)

    def test_positive_x_only(self):
        with pytest.raises(DomainError):
            k_rotation(0.3, -1.0, 1)

    @pytest.mark.parametrize("nu", [0, 0.3, 0.5, 1, 2.2, 4.9])
    def test_grid(self, nu):
        for k in range(16):
            x = 0.5 + 19.5 * k / 15
            assert rel(bessel_k(nu, 1j * x), k_rotation(nu, x, 1)) < 1e-9


class TestHankel:
    def test_half_integer_is_exact_leading_term(self):
        expect = math.sqrt(2 / (math.pi * 50)) * math.sin(50)
        assert rel(hankel_j(0.5, 50), expect) < 1e-4

    def test_order_zero_at_20_within_first_omitted_term(self):
        # the first term left out of the two-term form has size 9/(128 w²)
        r = rel(hankel_j(0, 20), bessel_j(0, 20, method="series"))
        assert r <= 2.5 * 9 / (128 * 20**2)

    def test_order_five_halves_at_30(self):
        nu, w = 2.5, 30
        mu = 4 * nu**2
        omitted = abs((mu - 1) * (mu - 9) / (128 * w**2))
        r = rel(hankel_j(nu, w), bessel_j(nu, w, method="series"))
        assert r <= 2 * omitted and r <= 10 / w**2

    def test_below_cutoff(self):
        with pytest.raises(AccuracyError):
            hankel_j(3, 5)

    def test_overlap_annulus(self):
        for nu in (0, 0.5, 1, 1.7, 2.5, 3):
            for r in (15, 20, 25):
                for ph in (0, 0.5, 1.2, -0.7, math.pi / 2):
                    w = r * cmath.exp(1j * ph)
                    a = bessel_j(nu, w, method="hankel")
                    b = bessel_j(nu, w, method="series")
                    assert rel(a, b) < 1e-6


@pytest.mark.slow
def test_wronskian_grid():
    worst = 0.0
    for k in range(49):
        nu = 0.1 + 0.1 * k
        for j in range(21):
            w = 0.5 + 39.5 * j / 20
            jv, yv = bessel_j(nu, w), bessel_y(nu, w)
            jp = bessel_j(nu - 1, w) - nu / w * jv
            yp = bessel_y(nu - 1, w) - nu / w * yv
            target = 2 / (math.pi * w)
            worst = max(worst, abs(jv * yp - jp * yv - target) / target)
    assert worst < 1e-9
