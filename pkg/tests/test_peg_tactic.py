import math

import numpy as np
import pytest

from tactics_lab import (
    BoundaryCondition,
    TacticParams,
    effective_spread_capture,
    expected_shortfall,
    expected_shortfall_infinite,
    fill_time_pmf,
    mean_wait,
    pair_efficiency_delta,
    peg_report,
    shortfall_second_moment,
    spread_capture_second_moment,
)

from oracles import pt_enumerate

MO = BoundaryCondition.MARKET_ORDER
MP = BoundaryCondition.MIDPOINT


def params(q, q_a=0.0, N=10, boundary=MO, S=1.0):
    return TacticParams(q=q, q_a=q_a, S=S, N=N, boundary=boundary)


class TestExpectedShortfall:
    @pytest.mark.parametrize("N", [0, 1, 3, 10, 37])
    def test_mo_fixed_point(self, N):
        assert expected_shortfall(params(0.5, N=N, boundary=MO)) == pytest.approx(-1.0, abs=1e-14)

    @pytest.mark.parametrize("N", [0, 2, 9, 41])
    def test_mp_fixed_point(self, N):
        assert expected_shortfall(params(2 / 3, N=N, boundary=MP)) == pytest.approx(-0.5, abs=1e-14)

    @pytest.mark.parametrize("bc", [MO, MP])
    def test_certain_fill_costs_nothing(self, bc):
        assert expected_shortfall(params(1.0, N=7, boundary=bc)) == 0.0

    def test_mp_two_step_value(self):
        # enumerate: fill at 0 (0), fill at 1 (-1), liquidate (-2.5)
        # 0.5*0 + 0.25*(-1) + 0.25*(-2.5) = -0.875
        assert expected_shortfall(params(0.5, N=2, boundary=MP)) == pytest.approx(-0.875)

    @pytest.mark.parametrize("bc", [MO, MP])
    def test_degenerate_horizon_liquidates_at_boundary(self, bc):
        assert expected_shortfall(params(0.3, N=0, boundary=bc)) == pytest.approx(-bc.b)

    def test_recursion_equals_closed_form(self):
        # solve <P_k> = q*(k) + (1-q)*<P_{k+1}> backwards, relative to arrival
        for q in np.linspace(0.05, 1.0, 12):
            for bc in (MO, MP):
                for N in range(13):
                    v = N + bc.b
                    for k in range(N - 1, -1, -1):
                        v = q * k + (1.0 - q) * v
                    assert expected_shortfall(params(q, N=N, boundary=bc)) == pytest.approx(
                        -v, abs=1e-10)

    def test_monotone_in_q(self):
        for bc in (MO, MP):
            g = [expected_shortfall(params(q, N=8, boundary=bc))
                 for q in np.linspace(0.05, 1.0, 60)]
            assert (np.diff(g) > -1e-12).all()

    def test_tail_approximation_bound(self):
        for q in np.linspace(0.05, 0.99, 20):
            for bc in (MO, MP):
                g_inf = expected_shortfall_infinite(q)
                for N in range(0, 30):
                    gap = abs(expected_shortfall(params(q, N=N, boundary=bc)) - g_inf)
                    assert gap <= (1 - q) ** N * (2 + bc.b) / q + 1e-12


class TestInfiniteHorizon:
    def test_half(self):
        assert expected_shortfall_infinite(0.5) == pytest.approx(-1.0)

    def test_certain(self):
        assert expected_shortfall_infinite(1.0) == 0.0

    def test_two_thirds(self):
        assert expected_shortfall_infinite(2 / 3) == pytest.approx(-0.5)
        # finite horizon converges to it
        assert expected_shortfall(params(2 / 3, N=50)) == pytest.approx(-0.5, abs=1e-6)


class TestFillTimes:
    def test_basic_pmf(self):
        assert fill_time_pmf(0.5, 2) == pytest.approx([0.5, 0.25, 0.25])

    def test_certain_fill(self):
        assert fill_time_pmf(1.0, 5) == pytest.approx([1, 0, 0, 0, 0, 0])

    def test_degenerate_horizon(self):
        assert fill_time_pmf(0.3, 0) == pytest.approx([1.0])

    @pytest.mark.parametrize("q,N", [(0.1, 30), (0.5, 2), (0.93, 11)])
    def test_sums_to_one(self, q, N):
        assert fill_time_pmf(q, N).sum() == pytest.approx(1.0, abs=1e-12)

    def test_mean_wait_examples(self):
        assert mean_wait(1.0, 17) == 0.0
        assert mean_wait(0.5, 2) == pytest.approx(0.75)
        assert mean_wait(0.5, 400) == pytest.approx(1.0)

    @pytest.mark.parametrize("q,N", [(0.2, 9), (0.7, 4), (1.0, 6)])
    def test_mean_wait_matches_pmf(self, q, N):
        pmf = fill_time_pmf(q, N)
        assert mean_wait(q, N) == pytest.approx(float(np.arange(N + 1) @ pmf), abs=1e-12)


class TestSecondMoments:
    def test_certain_fill_no_shortfall_variance(self):
        for bc in (MO, MP):
            assert shortfall_second_moment(params(1.0, N=5, boundary=bc)) == 0.0

    def test_is2_frozen_value(self):
        # oracle: sum over fill times n<3 of .5^(n+1) n^2 plus .5^3 * 4^2
        assert shortfall_second_moment(params(0.5, N=3, boundary=MO)) == pytest.approx(2.75)

    def test_variance_nonnegative(self):
        p = params(0.5, N=4, boundary=MP)
        var = shortfall_second_moment(p) - expected_shortfall(p) ** 2
        assert var >= 0.0

    def test_d2_at_certain_fill(self):
        assert spread_capture_second_moment(params(1.0, q_a=0.0, N=3)) == pytest.approx(1.25)
        assert spread_capture_second_moment(params(1.0, q_a=1.0, N=3)) == pytest.approx(0.25)

    def test_d2_frozen_value(self):
        assert spread_capture_second_moment(
            params(0.5, q_a=0.2, N=3, boundary=MO)) == pytest.approx(0.775)

    def test_d2_degenerate_horizon(self):
        for bc in (MO, MP):
            assert spread_capture_second_moment(
                params(0.4, q_a=0.1, N=0, boundary=bc)) == pytest.approx(bc.a ** 2)


class TestSpreadCapture:
    def test_symmetric_infinite_limit(self):
        # with q_a = 0 half the spread is captured in the long run
        assert effective_spread_capture(params(0.9, q_a=0.0, N=400, boundary=MP)) == pytest.approx(0.5)

    def test_sign_flip_threshold(self):
        # <D0>_inf = (1 - 2 q_a / q) / 2 crosses zero at q_a = q/2 (q_dn = 3 q_up)
        assert effective_spread_capture(params(0.5, q_a=0.25, N=600, boundary=MP)) == pytest.approx(0.0, abs=1e-12)
        assert effective_spread_capture(params(0.5, q_a=0.3, N=600, boundary=MP)) < 0
        assert effective_spread_capture(params(0.5, q_a=0.2, N=600, boundary=MP)) > 0

    def test_frozen_value(self):
        assert effective_spread_capture(
            params(0.6, q_a=0.3, N=10, boundary=MP)) == pytest.approx(0.0, abs=1e-15)

    def test_affine_in_qa(self):
        for bc in (MO, MP):
            qas = np.linspace(-0.4, 0.4, 9)
            h = np.array([effective_spread_capture(params(0.5, q_a=qa, N=7, boundary=bc))
                          for qa in qas])
            slopes = np.diff(h) / np.diff(qas)
            assert np.allclose(slopes, slopes[0], atol=1e-12)

    def test_degenerate_horizon(self):
        for bc in (MO, MP):
            assert effective_spread_capture(
                params(0.4, q_a=0.2, N=0, boundary=bc)) == pytest.approx(-bc.a)


class TestPairEfficiency:
    def test_symmetric_flow(self):
        assert pair_efficiency_delta(0.0) == 1.0

    def test_zero_threshold(self):
        assert pair_efficiency_delta(0.5) == 0.0

    def test_heavily_informed_flow(self):
        assert pair_efficiency_delta(0.97) == pytest.approx(-0.94)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            pair_efficiency_delta(1.5)


class TestOracleEquivalence:
    """Closed forms against exhaustive path enumeration."""

    @pytest.mark.parametrize("q", [0.15, 0.5, 0.85, 1.0])
    @pytest.mark.parametrize("qa_frac", [-0.5, 0.0, 0.6])
    @pytest.mark.parametrize("N", [0, 1, 4, 10])
    @pytest.mark.parametrize("bc", [MO, MP])
    def test_all_statistics(self, q, qa_frac, N, bc):
        qa = qa_frac * q
        p = params(q, q_a=qa, N=N, boundary=bc)
        m = pt_enumerate(q, qa, N, b=bc.b, a=bc.a)
        assert m.total_prob == pytest.approx(1.0, abs=1e-12)
        assert expected_shortfall(p) == pytest.approx(m.is_mean, abs=1e-10)
        assert shortfall_second_moment(p) == pytest.approx(m.is_sq, abs=1e-10)
        assert effective_spread_capture(p) == pytest.approx(m.d_mean, abs=1e-10)
        assert spread_capture_second_moment(p) == pytest.approx(m.d_sq, abs=1e-10)
        assert mean_wait(q, N) == pytest.approx(m.t_mean, abs=1e-10)
        np.testing.assert_allclose(fill_time_pmf(q, N), m.pmf, atol=1e-10)


class TestPegReport:
    def test_bundle_consistency(self):
        p = params(0.4, q_a=0.1, N=12, boundary=MP)
        rep = peg_report(p)
        assert rep.g == expected_shortfall(p)
        assert rep.h == effective_spread_capture(p)
        assert rep.fill_pmf.sum() == pytest.approx(1.0, abs=1e-12)
        assert rep.var_is >= 0 and rep.var_d >= 0

    def test_capacity_heuristic(self):
        rep = peg_report(params(0.5, N=10))
        assert rep.expected_executions == pytest.approx(10 / mean_wait(0.5, 10))
        assert peg_report(params(1.0, N=10)).expected_executions == math.inf
        assert peg_report(params(0.5, N=0)).expected_executions == 0.0
