"""Tests for the exact closed forms.

Expected values marked "by integration" were computed with the independent
polynomial-integration oracle in oracles.py and frozen here.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polya_urn import (
    BetaParams,
    DomainError,
    ExactProbability,
    UrnConfig,
    beta_cdf_rational,
    beta_cdf_real,
    beta_density,
    binomial_coefficient,
    equalization_probability,
    equalization_probability_binomial,
    equalization_probability_complement,
)

from oracles import beta_cdf_by_polynomial_integration, beta_density_by_mpmath


class TestDomainTypes:
    def test_urn_config_requires_positive_counts(self):
        for bad in [(0, 1), (1, 0), (-2, 3)]:
            with pytest.raises(DomainError):
                UrnConfig(*bad)
        with pytest.raises(DomainError):
            UrnConfig(1.5, 1)

    def test_urn_config_allows_large_counts(self):
        cfg = UrnConfig(7_000, 5_000)
        assert cfg.total == 12_000
        assert cfg.initial_excess == 2_000

    def test_swapped(self):
        assert UrnConfig(3, 2).swapped() == UrnConfig(2, 3)

    def test_exact_probability_is_canonical(self):
        p = ExactProbability(Fraction(4, 8))
        assert p.value.numerator == 1 and p.value.denominator == 2
        assert p == ExactProbability(Fraction(1, 2))
        assert p.rational_str() == "1/2"
        assert float(p) == 0.5

    def test_exact_probability_range(self):
        with pytest.raises(DomainError):
            ExactProbability(Fraction(3, 2))
        with pytest.raises(DomainError):
            ExactProbability(Fraction(-1, 2))

    def test_exact_probability_rejects_float(self):
        with pytest.raises(TypeError):
            ExactProbability(0.5)

    def test_beta_params_validation(self):
        with pytest.raises(DomainError):
            BetaParams(0, 1)
        with pytest.raises(DomainError):
            BetaParams(2, -1)


class TestBinomialCoefficient:
    @pytest.mark.parametrize(
        "n, k, expected",
        [(0, 0, 1), (4, 1, 4), (7, 2, 21), (10, 5, 252), (120, 60, 96614908840363322603893139521372656)],
    )
    def test_values(self, n, k, expected):
        assert binomial_coefficient(n, k) == expected

    def test_k_above_n_is_domain_error(self):
        with pytest.raises(DomainError):
            binomial_coefficient(3, 4)

    def test_negative_arguments_rejected(self):
        with pytest.raises(DomainError):
            binomial_coefficient(-1, 0)
        with pytest.raises(DomainError):
            binomial_coefficient(3, -1)

    @given(st.integers(0, 60), st.integers(0, 60))
    def test_pascal_recurrence(self, n, k):
        if k > n:
            return
        lhs = binomial_coefficient(n + 1, k + 1)
        rhs = binomial_coefficient(n, k) + (
            binomial_coefficient(n, k + 1) if k + 1 <= n else 0
        )
        assert lhs == rhs


class TestBetaDensity:
    @pytest.mark.parametrize(
        "b, w, p, expected",
        [(1, 1, 0.3, 1.0), (2, 1, 0.5, 1.0), (3, 2, 0.5, 1.5)],
    )
    def test_small_values_exact(self, b, w, p, expected):
        assert beta_density(BetaParams(b, w), p) == expected

    @pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5])
    def test_domain(self, p):
        with pytest.raises(DomainError):
            beta_density(BetaParams(2, 2), p)

    @pytest.mark.parametrize(
        "b, w, p",
        [(300, 300, 0.5), (300, 300, 0.01), (85, 85, 1e-4), (500, 2, 0.999)],
    )
    def test_large_parameters_against_gamma_oracle(self, b, w, p):
        got = beta_density(BetaParams(b, w), p)
        want = beta_density_by_mpmath(b, w, p)
        assert got == pytest.approx(want, rel=1e-10)

    def test_integrates_to_one(self):
        # midpoint rule on the exact polynomial is not needed: the CDF at 1 is 1
        assert beta_cdf_rational(BetaParams(7, 4), 1).value == 1


class TestBetaCdfRational:
    @pytest.mark.parametrize(
        "b, w, x, expected",
        [
            (2, 1, Fraction(1, 2), Fraction(1, 4)),
            (3, 2, Fraction(1, 2), Fraction(5, 16)),
            (1, 1, Fraction(7, 10), Fraction(7, 10)),
        ],
    )
    def test_values(self, b, w, x, expected):
        assert beta_cdf_rational(BetaParams(b, w), x).value == expected

    @pytest.mark.parametrize("b, w", [(1, 1), (2, 1), (5, 3), (4, 7)])
    def test_endpoints(self, b, w):
        assert beta_cdf_rational(BetaParams(b, w), 0).value == 0
        assert beta_cdf_rational(BetaParams(b, w), 1).value == 1

    def test_domain(self):
        with pytest.raises(DomainError):
            beta_cdf_rational(BetaParams(2, 2), Fraction(3, 2))
        with pytest.raises(DomainError):
            beta_cdf_rational(BetaParams(2, 2), -1)

    def test_float_arguments_refused(self):
        with pytest.raises(TypeError):
            beta_cdf_rational(BetaParams(2, 2), 0.5)

    @pytest.mark.parametrize("b", range(1, 7))
    @pytest.mark.parametrize("w", range(1, 7))
    @pytest.mark.parametrize(
        "x", [Fraction(1, 10), Fraction(1, 3), Fraction(1, 2), Fraction(9, 10)]
    )
    def test_matches_polynomial_integration(self, b, w, x):
        got = beta_cdf_rational(BetaParams(b, w), x).value
        assert got == beta_cdf_by_polynomial_integration(b, w, x)

    @pytest.mark.parametrize("k", [1, 2, 5, 17, 40])
    def test_symmetric_shape_is_half(self, k):
        assert beta_cdf_rational(BetaParams(k, k), Fraction(1, 2)).value == Fraction(1, 2)

    @given(
        st.integers(1, 8),
        st.integers(1, 8),
        st.fractions(min_value=0, max_value=1, max_denominator=50),
    )
    @settings(max_examples=60, deadline=None)
    def test_oracle_agreement_property(self, b, w, x):
        got = beta_cdf_rational(BetaParams(b, w), x).value
        assert got == beta_cdf_by_polynomial_integration(b, w, x)


class TestBetaCdfReal:
    @pytest.mark.parametrize(
        "b, w, x, expected",
        [(2, 1, 0.5, 0.25), (1, 1, 0.7, 0.7), (3, 2, 0.5, 0.3125)],
    )
    def test_values(self, b, w, x, expected):
        assert beta_cdf_real(BetaParams(b, w), x) == pytest.approx(expected, rel=1e-12)

    def test_endpoints(self):
        assert beta_cdf_real(BetaParams(3, 4), 0.0) == 0.0
        assert beta_cdf_real(BetaParams(3, 4), 1.0) == 1.0

    def test_domain(self):
        with pytest.raises(DomainError):
            beta_cdf_real(BetaParams(2, 2), 1.0000001)

    @pytest.mark.parametrize(
        "b, w",
        [(1, 1), (2, 1), (5, 3), (20, 20), (60, 41), (100, 100), (199, 1), (1, 199), (150, 50), (101, 99)],
    )
    @pytest.mark.parametrize("x", [1e-3, 0.1, 1 / 3, 0.5, 0.9, 0.999])
    def test_float_fidelity_up_to_200_balls(self, b, w, x):
        """Relative error vs the rational value stays under 1e-12."""
        exact = beta_cdf_rational(BetaParams(b, w), Fraction(x)).value
        if exact < Fraction(1, 10**300):
            return
        got = beta_cdf_real(BetaParams(b, w), x)
        rel = abs(Fraction(got) - exact) / exact
        assert rel <= Fraction(1, 10**12)


class TestEqualizationProbability:
    @pytest.mark.parametrize(
        "b, w, expected",
        [
            (2, 1, Fraction(1, 2)),
            (3, 1, Fraction(1, 4)),
            (3, 2, Fraction(5, 8)),
            (4, 2, Fraction(3, 8)),
            (5, 3, Fraction(29, 64)),
        ],
    )
    def test_small_values(self, b, w, expected):
        assert equalization_probability(UrnConfig(b, w)).value == expected
        # independent route: integrate the density polynomial, double it
        assert 2 * beta_cdf_by_polynomial_integration(b, w, Fraction(1, 2)) == expected

    def test_equal_start_is_certain(self):
        assert equalization_probability(UrnConfig(5, 5)).value == 1

    def test_minority_black_swaps_colors(self):
        assert equalization_probability(UrnConfig(2, 3)) == equalization_probability(
            UrnConfig(3, 2)
        )

    @pytest.mark.parametrize(
        "fn",
        [equalization_probability_binomial, equalization_probability_complement],
    )
    def test_sum_forms_require_majority(self, fn):
        with pytest.raises(DomainError):
            fn(UrnConfig(2, 2))
        with pytest.raises(DomainError):
            fn(UrnConfig(2, 3))

    @pytest.mark.parametrize(
        "b, w, expected",
        [(3, 1, Fraction(1, 4)), (4, 2, Fraction(3, 8)), (5, 3, Fraction(29, 64))],
    )
    def test_binomial_form_values(self, b, w, expected):
        assert equalization_probability_binomial(UrnConfig(b, w)).value == expected

    @pytest.mark.parametrize(
        "b, w, expected",
        [(2, 1, Fraction(1, 2)), (3, 2, Fraction(5, 8)), (3, 1, Fraction(1, 4))],
    )
    def test_complement_form_values(self, b, w, expected):
        assert equalization_probability_complement(UrnConfig(b, w)).value == expected

    def test_triple_identity_small_grid(self):
        for total in range(3, 61):
            for w in range(1, (total + 1) // 2):
                b = total - w
                cfg = UrnConfig(b, w)
                p = equalization_probability(cfg)
                assert p == equalization_probability_binomial(cfg)
                assert p == equalization_probability_complement(cfg)

    @given(st.integers(2, 200), st.integers(1, 199))
    @settings(max_examples=80, deadline=None)
    def test_triple_identity_property(self, b, w):
        if w >= b:
            return
        cfg = UrnConfig(b, w)
        p = equalization_probability(cfg)
        assert p == equalization_probability_binomial(cfg)
        assert p == equalization_probability_complement(cfg)

    def test_range_strictly_inside_unit_interval(self):
        for b in range(2, 25):
            for w in range(1, b):
                p = equalization_probability(UrnConfig(b, w)).value
                assert 0 < p < 1

    def test_monotone_decreasing_in_black(self):
        for w in range(1, 12):
            for b in range(w + 1, w + 12):
                assert (
                    equalization_probability(UrnConfig(b + 1, w)).value
                    < equalization_probability(UrnConfig(b, w)).value
                )

    def test_monotone_increasing_in_white(self):
        for b in range(3, 15):
            for w in range(1, b - 1):
                assert (
                    equalization_probability(UrnConfig(b, w + 1)).value
                    > equalization_probability(UrnConfig(b, w)).value
                )

    def test_exact_at_two_thousand_balls(self):
        cfg = UrnConfig(1001, 999)
        p = equalization_probability(cfg)
        assert p == equalization_probability_binomial(cfg)
        assert p == equalization_probability_complement(cfg)
        # lowest terms of a dyadic rational: the denominator stays a power of two
        den = p.value.denominator
        assert den & (den - 1) == 0 and den.bit_length() <= 1999
        assert 0 < p.value < 1
