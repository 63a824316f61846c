import pytest

from tactics_lab import (
    BandPosition,
    BoundaryCondition,
    CostWeights,
    TacticKind,
    TacticParams,
    PwtConfig,
    effective_spread_capture,
    expected_shortfall,
    expected_shortfall_pwt,
    select_tactic,
    spread_capture_pwt,
    total_cost,
)


class TestSelection:
    def test_above_middle(self):
        kinds = [c.kind for c in select_tactic(BandPosition.ABOVE_MIDDLE)]
        assert kinds == [TacticKind.PWT, TacticKind.DARK_MIN_SIZE]

    def test_between_bands(self):
        kinds = [c.kind for c in select_tactic(BandPosition.BETWEEN_MIDDLE_AND_LOWER)]
        assert kinds == [TacticKind.PT, TacticKind.OLTT]

    def test_below_lower(self):
        kinds = [c.kind for c in select_tactic(BandPosition.BELOW_LOWER)]
        assert kinds == [TacticKind.UTT]

    def test_mapping_is_total(self):
        for pos in BandPosition:
            choices = select_tactic(pos)
            assert len(choices) >= 1

    def test_utt_reserved_for_worst_zone(self):
        for pos in BandPosition:
            kinds = {c.kind for c in select_tactic(pos)}
            assert (TacticKind.UTT in kinds) == (pos is BandPosition.BELOW_LOWER)

    def test_deterministic(self):
        for pos in BandPosition:
            assert select_tactic(pos) == select_tactic(pos)


class TestAggressivenessRanking:
    def test_zone_cost_ranking_non_decreasing(self):
        # at matched parameters below the cost crossing, the patient zone's
        # tactic is cheaper than the middle zone's; the worst zone holds the
        # uniform taker, the most expensive way to trade by construction
        w = CostWeights(rho=1.0)
        p = TacticParams(q=0.5, q_a=0.5, S=1.0, N=10,
                         boundary=BoundaryCondition.MIDPOINT)
        pwt_cost = total_cost(expected_shortfall_pwt(PwtConfig(params=p, K=1)),
                              spread_capture_pwt(PwtConfig(params=p, K=1)), w)
        pt_cost = total_cost(expected_shortfall(p), effective_spread_capture(p), w)
        assert pwt_cost <= pt_cost
        zone1 = select_tactic(BandPosition.ABOVE_MIDDLE)[0].kind
        zone2 = select_tactic(BandPosition.BETWEEN_MIDDLE_AND_LOWER)[0].kind
        assert (zone1, zone2) == (TacticKind.PWT, TacticKind.PT)
