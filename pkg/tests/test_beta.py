from fractions import Fraction
from math import comb, factorial

import pytest

from nevbeta.beta import (VolumeProfile, beta_n_value, beta_series, empirical_profile, f_nr,
                          f_nr_asymptotic_check, f_nr_leading, f_nr_recurrence_holds,
                          convolution_identity_check, linear_beta_closed, riemann_convergence_check,
                          stabilization_verdict, volume_profile_linear)
from nevbeta.cohomology import h0_ideal_bruteforce, h0_total, linear_ideal
from nevbeta.ideal import from_generators

F = Fraction
REMARK = from_generators(3, ["x1^3", "x1 x2", "x2^2"])


def beta_by_oracle(n, i, N):
    total, m = 0, 1
    while (h := h0_ideal_bruteforce(n, N, i, m)):
        total += h
        m += 1
    return F(total, N * h0_total(n, N))


class TestBetaValue:
    def test_linear(self):
        for N in range(1, 12):
            assert beta_n_value(1, linear_ideal(1, 1), N) == F(1, 2)
            assert beta_n_value(2, linear_ideal(2, 2), N) == F(2, 3)

    def test_remark_ideal_frozen(self):
        # frozen from the brute-force route
        assert beta_n_value(2, REMARK, 10) == F(181, 660)
        assert beta_by_oracle(2, REMARK, 10) == F(181, 660)

    def test_against_oracle(self):
        for ideal in (REMARK, from_generators(3, ["x0 x1", "x2^2"]), from_generators(4, ["x1^2", "x3"])):
            n = ideal.num_vars - 1
            for N in range(1, 6):
                assert beta_n_value(n, ideal, N) == beta_by_oracle(n, ideal, N)

    def test_numerator_is_complement_sum(self):
        # N h0 - (sum over m of the missing monomials) gives the section mass
        for n in range(1, 4):
            for r in range(1, n + 1):
                for N in range(1, 8):
                    missing = sum(comb(N - l + n - r, n - r) * comb(l + r - 1, r - 1) * (N - l)
                                  for l in range(N))
                    mass = N * h0_total(n, N) - missing
                    assert beta_n_value(n, linear_ideal(n, r), N) * N * h0_total(n, N) == mass

    def test_errors(self):
        with pytest.raises(ValueError):
            beta_n_value(1, linear_ideal(1, 1), 0)


class TestSeries:
    def test_linear_converges(self):
        s = beta_series(3, linear_ideal(3, 2), 1, 10)
        assert all(v == F(1, 2) for _, v in s.points)
        assert s.converged_to == F(1, 2) and s.verdict == "converged_to 1/2"
        assert s.rows()[0] == {"N": 1, "beta_N_numerator": 1, "beta_N_denominator": 2,
                               "beta_N_decimal": "0.500000000000"}

    def test_single_point(self):
        s = beta_series(2, REMARK, 4, 4)
        assert s.converged_to is None and s.verdict == "unresolved"

    def test_remark_unresolved_at_zero_tolerance(self):
        s = beta_series(2, REMARK, 1, 12)
        assert s.verdict == "unresolved"
        assert s.to_json()["verdict"]["converged_to"] is None

    def test_verdict_sound(self):
        s = beta_series(2, REMARK, 8, 14, tail=4, tolerance=F(1, 20))
        assert s.converged_to is not None
        for _, v in s.points[-4:]:
            assert abs(v - s.converged_to) <= F(1, 20)

    def test_parallel_matches(self):
        assert beta_series(2, REMARK, 1, 6, workers=2).points == beta_series(2, REMARK, 1, 6).points

    def test_bad_range(self):
        with pytest.raises(ValueError):
            beta_series(2, REMARK, 5, 4)
        with pytest.raises(ValueError):
            beta_series(2, REMARK, 0, 4)

    def test_verdict_helper(self):
        assert stabilization_verdict([F(1)] * 5) == (F(1), 0)
        assert stabilization_verdict([F(1), F(2), F(1), F(2)], tail=4, tolerance=F(1, 2))[0] is None
        assert stabilization_verdict([F(2), F(3, 2), F(5, 2)], tail=3, tolerance=2)[0] is None
        assert stabilization_verdict([F(1)], tail=5) == (None, 0)


class TestClosedForms:
    def test_linear_beta(self):
        assert linear_beta_closed(2, 2) == F(2, 3)
        assert linear_beta_closed(1, 1) == F(1, 2)
        assert linear_beta_closed(5, 3) == F(1, 2)
        with pytest.raises(ValueError):
            linear_beta_closed(2, 3)

    def test_f_nr(self):
        assert f_nr(1, 1, 4) == 10
        assert all(f_nr(n, r, 0) == 0 for n in range(1, 5) for r in range(1, n + 1))
        with pytest.raises(ValueError):
            f_nr(2, 0, 3)
        with pytest.raises(ValueError):
            f_nr(2, 1, -1)

    def test_f_nr_matches_double_sum(self):
        for n in range(1, 4):
            for r in range(1, n + 1):
                for N in range(8):
                    literal = sum(comb(N - l + n - r, n - r) * comb(l + r - 1, r - 1)
                                  for m in range(1, N + 1) for l in range(m))
                    assert f_nr(n, r, N) == literal

    def test_recurrence(self):
        for n in range(2, 6):
            for r in range(1, n):
                assert all(f_nr_recurrence_holds(n, r, N) for N in range(1, 31))
        with pytest.raises(ValueError):
            f_nr_recurrence_holds(2, 2, 3)

    def test_asymptotics(self):
        rep = f_nr_asymptotic_check(1, 1, 200)
        assert rep.passes
        # (1, 1): the error is exactly N/2
        assert all(e == F(1, 2) for e in rep.scaled_errors)
        assert f_nr_leading(2, 1, 6) == F(2 * 6 ** 3, 6)
        for n, r in [(2, 1), (3, 3), (3, 1)]:
            rep = f_nr_asymptotic_check(n, r, 120)
            assert rep.passes
            assert abs(rep.ratios[-1] - 1) < F(10 * (n + 1), 120)

    def test_identity(self):
        assert convolution_identity_check(2, 1, 3)
        assert all(convolution_identity_check(n, n, N) for n in range(1, 5) for N in range(12))
        assert all(convolution_identity_check(n, r, 0) for n in range(1, 5) for r in range(1, n + 1))
        with pytest.raises(ValueError):
            convolution_identity_check(2, 0, 3)


class TestVolume:
    def test_profiles(self):
        p1 = volume_profile_linear(1)
        assert p1.integral_I == F(1, 2) and p1.beta() == F(1, 2)
        p2 = volume_profile_linear(2)
        assert p2.integral_I == F(1, 6) and p2.beta() == linear_beta_closed(2, 1)
        for n in range(1, 6):
            assert volume_profile_linear(n).integral_I == F(1, factorial(n + 1))
        assert p2(1) == 0 and p2(5) == 0 and p2(0) == F(1, 2)

    def test_errors(self):
        with pytest.raises(ValueError):
            volume_profile_linear(2, r=2)
        with pytest.raises(ValueError):
            volume_profile_linear(0)

    def test_empirical_profile(self):
        rows = empirical_profile(2, linear_ideal(2, 1), 20, [0, F(1, 2), 1])
        p = volume_profile_linear(2)
        assert abs(rows[1][1] - p(F(1, 2))) < F(1, 10)
        assert rows[2][1] == F(1, 400)

    def test_riemann(self):
        rep = riemann_convergence_check(1, [5, 10, 20, 40])
        assert rep.gap_shrinking and rep.violations == []
        assert rep.rows[-1]["scaled_sum"] == F(40 * 41 // 2, 40 ** 2)
        assert rep.to_json()["beta_from_volume"] == "1/2"
        other = riemann_convergence_check(2, [2, 4], i=REMARK)
        assert other.integral_I is None and "step" in other.rows[1]

    def test_custom_profile(self):
        prof = VolumeProfile(1, ((F(0), F(2), (F(1), F(-1, 2))),), F(1), volume=F(2))
        assert prof.beta() == F(1, 2) and prof.support_end == 2
