"""Parameter sequences: ranges, clipping, blocks, and the acceptably-paired
block statistics with brute-force oracles."""

import math

import numpy as np
import pytest

from lpmono import ParamSchedule, check_acceptably_paired, default_schedule


def degenerate_schedule():
    """alpha_n = theta_n = 1/n: violates the bounded-away-from-zero condition."""

    def rule(n):
        v = 1.0 / np.asarray(n, dtype=float)
        return float(v) if v.ndim == 0 else v

    return ParamSchedule(alpha=rule, theta=rule, gamma=1.0, block=lambda i: i**i)


class TestDefaultSchedule:
    def test_theta_one(self):
        s = default_schedule(1.0)
        assert s.theta(1) == pytest.approx(1.0 / math.log(math.log(17.0)), rel=1e-15)
        assert 0.95 < s.theta(1) < 0.97

    def test_theta_decreasing_in_unit_interval(self):
        s = default_schedule(1.0)
        n = np.arange(1, 1_000_001)
        th = s.theta(n)
        assert np.all((th > 0.0) & (th < 1.0))
        assert np.all(np.diff(th) < 0.0)

    def test_alpha_within_gamma_theta(self):
        s = default_schedule(1.0)
        n = np.arange(1, 1_000_001)
        al = s.alpha(n)
        assert np.all((al > 0.0) & (al < 1.0))
        assert np.all(al <= s.gamma * s.theta(n) + 1e-15)

    def test_alpha_clipping_binds_for_small_gamma(self):
        s = default_schedule(1e-3)
        # 1/(n+1) > gamma * theta_n for small n, so the clip is active
        assert s.alpha(1) == pytest.approx(1e-3 * s.theta(1), rel=1e-15)
        assert s.alpha(5000) == pytest.approx(1.0 / 5001.0, rel=1e-15)

    def test_block_is_i_to_the_i(self):
        s = default_schedule(1.0)
        assert [s.block(i) for i in range(1, 6)] == [1, 4, 27, 256, 3125]
        blocks = [s.block(i) for i in range(1, 13)]
        assert all(a < b for a, b in zip(blocks, blocks[1:]))
        with pytest.raises(ValueError):
            s.block(0)

    def test_scalar_and_array_rules_agree(self):
        s = default_schedule(1.0)
        n = np.arange(1, 50)
        assert np.allclose(s.alpha(n), [s.alpha(int(k)) for k in n], rtol=0, atol=0)
        assert np.allclose(s.theta(n), [s.theta(int(k)) for k in n], rtol=0, atol=0)

    def test_validation(self):
        with pytest.raises(ValueError):
            default_schedule(0.0)
        with pytest.raises(ValueError):
            default_schedule(1.0, theta_offset=5)  # theta_1 > 1
        with pytest.raises(ValueError):
            default_schedule(1.0, theta_log_base=1.0)
        with pytest.raises(ValueError):
            default_schedule(1.0, theta_log_base=10.0)  # needs n0 > 10^10

    def test_meta_records_choices(self):
        s = default_schedule(0.5, theta_offset=20)
        assert s.meta["n0"] == 20
        assert s.meta["gamma"] == 0.5
        assert s.meta["block"] == "i^i"


def brute_block_stats(schedule, i):
    """Independent pure-Python evaluation of (S1, S2, S3) for block i."""
    a, b = schedule.block(i), schedule.block(i + 1)
    alphas = [float(schedule.alpha(j)) for j in range(a, b + 1)]
    s1 = sum(x * x for x in alphas)
    s_a = sum(alphas)
    th_a, th_b = float(schedule.theta(a)), float(schedule.theta(b))
    return s1, th_a * s_a, (th_a - th_b) * s_a


class TestCheckAcceptablyPaired:
    def test_against_brute_force(self):
        s = default_schedule(1.0)
        report = check_acceptably_paired(s, 4)
        for idx, i in enumerate(report.i_values):
            s1, s2, s3 = brute_block_stats(s, i)
            assert report.s1[idx] == pytest.approx(s1, rel=1e-12)
            assert report.s2[idx] == pytest.approx(s2, rel=1e-12)
            assert report.s3[idx] == pytest.approx(s3, rel=1e-12)

    def test_default_schedule_statistics(self):
        report = check_acceptably_paired(default_schedule(1.0), 6)
        assert report.i_values == (2, 3, 4, 5, 6)
        assert all(a > b for a, b in zip(report.s1, report.s1[1:]))
        assert min(report.s2) >= 0.1
        assert report.s1_decreasing_to_zero
        assert report.s2_bounded_away
        assert report.s3_decreasing_to_zero
        assert report.s3[-1] < report.s3[0]

    def test_degenerate_pair_fails_second_condition(self):
        report = check_acceptably_paired(degenerate_schedule(), 6)
        assert not report.s2_bounded_away
        # the failure is specific: the other two statistics still behave
        assert report.s1_decreasing_to_zero
        assert report.s3_decreasing_to_zero
        assert report.s2[-1] < 1e-3

    def test_i_max_limits(self):
        s = default_schedule(1.0)
        with pytest.raises(OverflowError):
            check_acceptably_paired(s, 13)
        with pytest.raises(ValueError):
            check_acceptably_paired(s, 1)
        with pytest.raises(ValueError):
            check_acceptably_paired(s, 6, i_min=0)
        with pytest.raises(ValueError):
            check_acceptably_paired(s, 6, i_min=7)

    def test_full_range_from_one(self):
        report = check_acceptably_paired(default_schedule(1.0), 4, i_min=1)
        assert report.i_values == (1, 2, 3, 4)
