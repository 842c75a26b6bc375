from __future__ import annotations

import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cx, rel
from gegenbauer.errors import BranchError, DomainError, PoleError
from gegenbauer.numeric_core import (
    BranchedPoint,
    Parameters,
    Side,
    branch_log,
    branch_pow,
    cos_pi,
    gamma_fn,
    gamma_ratio,
    log_gamma,
    rgamma,
    sin_pi,
    sqrt_zsq_minus_1,
    z_plus_minus,
)


class TestGamma:
    def test_small_values(self):
        assert gamma_fn(1) == pytest.approx(1.0, rel=1e-15)
        assert gamma_fn(0.5).real == pytest.approx(math.sqrt(math.pi), rel=1e-14)
        assert gamma_fn(5).real == pytest.approx(24.0, rel=1e-14)

    def test_against_oracle(self, oracle):
        for e in oracle["gamma"]:
            assert rel(gamma_fn(cx(e["w"])), cx(e["value"])) < 1e-13

    def test_poles(self):
        with pytest.raises(PoleError):
            gamma_fn(-3)
        assert rgamma(-3) == 0
        assert rgamma(0) == 0

    def test_log_gamma_large_argument(self):
        w = 500.25 + 30j
        assert rel(cmath.exp(log_gamma(w) - log_gamma(w - 1)), w - 1) < 1e-12

    def test_ratio_examples(self):
        assert gamma_ratio(6, 4).real == pytest.approx(20.0, rel=1e-14)
        assert gamma_ratio(3.7 + 1j, 3.7 + 1j) == 1
        # Γ(λ+2α)/Γ(λ+1) = (λ+α)^{2α−1}(1 + O(1/(λ+α)²))
        lam, alpha = 100.0, 1.5
        r = gamma_ratio(lam + 2 * alpha, lam + 1)
        assert abs(r / (lam + alpha) ** (2 * alpha - 1) - 1) < 1.0 / (lam + alpha) ** 2

    def test_ratio_large_arguments(self):
        # direct Γ values overflow here; the ratio must not
        r = gamma_ratio(400 + 3.4, 400 + 1)
        assert rel(r, cmath.exp(log_gamma(403.4) - log_gamma(401))) < 1e-12

    def test_ratio_both_poles(self):
        # Γ(−5)/Γ(−3) as a limit: (−1)^{2} 3!/5!
        assert gamma_ratio(-5, -3).real == pytest.approx(6 / 120, rel=1e-14)

    def test_ratio_single_pole(self):
        with pytest.raises(PoleError):
            gamma_ratio(-2, 1.5)

    def test_sin_cos_pi_exact_zeros(self):
        assert sin_pi(400) == 0
        assert cos_pi(400.5) == 0
        assert sin_pi(0.25).real == pytest.approx(math.sqrt(0.5), rel=1e-15)


class TestBranches:
    def test_sqrt_examples(self):
        assert sqrt_zsq_minus_1(BranchedPoint(1.25)) == pytest.approx(0.75)
        assert sqrt_zsq_minus_1(BranchedPoint.above(0.0)) == pytest.approx(1j)
        assert sqrt_zsq_minus_1(BranchedPoint.below(0.0)) == pytest.approx(-1j)

    def test_sqrt_on_cut_needs_side(self):
        with pytest.raises(BranchError):
            sqrt_zsq_minus_1(BranchedPoint(0.3))
        with pytest.raises(BranchError):
            sqrt_zsq_minus_1(BranchedPoint(-3.0))

    def test_sqrt_trig_form(self):
        th = 0.7
        x = math.cos(th)
        assert sqrt_zsq_minus_1(BranchedPoint.above(x)) == pytest.approx(1j * math.sin(th), abs=1e-15)
        assert sqrt_zsq_minus_1(BranchedPoint.below(x)) == pytest.approx(-1j * math.sin(th), abs=1e-15)

    def test_sqrt_behaves_like_z(self):
        for z in (1e3, 1e3j, -1e3 + 1j, 5 - 7j):
            assert abs(sqrt_zsq_minus_1(BranchedPoint(z)) / z - 1) < 1e-5 or abs(z) < 100

    def test_z_pair_examples(self):
        zp = z_plus_minus(BranchedPoint(1.25))
        assert zp.z_plus == pytest.approx(2.0) and zp.z_minus == pytest.approx(0.5)
        th = 1.1
        zp = z_plus_minus(BranchedPoint.above(math.cos(th)))
        assert zp.z_plus == pytest.approx(cmath.exp(1j * th), abs=1e-15)
        assert zp.z_minus == pytest.approx(cmath.exp(-1j * th), abs=1e-15)
        d = z_plus_minus(BranchedPoint(1.0))
        assert d.degenerate and d.z_plus == 1 and d.z_minus == 1

    def test_continuity_across_axis_above_one(self):
        for x in (1.0001, 1.5, 2.0, 5.0, 10.0):
            a = z_plus_minus(BranchedPoint(complex(x, 1e-12))).z_plus
            b = z_plus_minus(BranchedPoint(complex(x, -1e-12))).z_plus
            assert abs(a - b) <= 1e-8

    def test_side_needs_real_z(self):
        with pytest.raises(BranchError):
            BranchedPoint(1 + 1j, Side.ABOVE)

    def test_branch_log_side(self):
        assert branch_log(-2.0, Side.ABOVE).imag == pytest.approx(math.pi)
        assert branch_log(-2.0, Side.BELOW).imag == pytest.approx(-math.pi)
        # a signed zero does not pick the branch; only the side does
        assert branch_log(complex(-2.0, -0.0), Side.ABOVE).imag == pytest.approx(math.pi)
        with pytest.raises(DomainError):
            branch_log(0)

    def test_branch_pow_positive_real_exact(self):
        assert branch_pow(4.0, 0.5) == 2.0

    @settings(max_examples=60, deadline=None)
    @given(
        st.floats(-5, 5).filter(lambda v: abs(v) > 1e-3),
        st.floats(-5, 5).filter(lambda v: abs(v) > 1e-3),
    )
    def test_z_pair_product_is_one(self, re, im):
        zp = z_plus_minus(BranchedPoint(complex(re, im)))
        assert abs(zp.z_plus * zp.z_minus - 1) < 1e-12
        # z_+ is the root of larger modulus off the cut
        assert abs(zp.z_plus) >= abs(zp.z_minus) * (1 - 1e-12)


class TestParameters:
    def test_domain_checks(self):
        Parameters(10, 0.5).require_thm12_domain()
        with pytest.raises(DomainError):
            Parameters(10, 0).require_thm12_domain()
        with pytest.raises(DomainError):
            Parameters(-1, 1).require_thm12_domain()
        Parameters(10, -0.5).require_thm34_domain()
        with pytest.raises(DomainError):
            Parameters(10, -0.6).require_thm34_domain()

    def test_coercion(self):
        p = Parameters(3, 2)
        assert isinstance(p.lam, complex) and p.is_real
