from fractions import Fraction

import pytest

from radembed.core.errors import EmptyAdmissible, InvalidSpec
from radembed.core.numbers import POS_INF
from radembed.models.domain import BetaRange, ChosenParams, GrowthPair, InfinitySpec, OriginSpec, QInterval, Side
from radembed.models.potential import ExpInvR, ExpR, Power, PowerExp, Sum, Truncated, Zero
from radembed.services.engine import (
    best_verdict,
    combine,
    infinity_admissible,
    normalize_infinity,
    origin_admissible,
    verdict_for_potentials,
)
from radembed.services.exponents import thm1_threshold, thm2_threshold
from radembed.services.potentials import example_catalog

F = Fraction


def _intervals(verdict):
    return verdict.q1_interval, verdict.q2_halfline, verdict.single_q


def test_power_law_potential():
    verdict = verdict_for_potentials(Power(1, -1), Power(1, 0), 3)
    assert _intervals(verdict) == (QInterval.of(1, 6), QInterval.halfline(F(10, 3)), QInterval.of(F(10, 3), 6))
    assert verdict.theorems_used == ("THM0", "THM2")
    assert verdict.sum_admissible
    assert verdict.single_admissible


def test_power_law_potential_with_empty_single_range():
    verdict = verdict_for_potentials(Power(1, -2), Power(1, -1), 3)
    assert verdict.q1_interval == QInterval.of(1, 4)
    assert verdict.q2_halfline == QInterval.halfline(4)
    assert verdict.single_q.is_empty
    assert verdict.sum_admissible
    assert not verdict.single_admissible


def test_zero_potential():
    verdict = verdict_for_potentials(Zero(), Power(1, 1), 3)
    assert verdict.q1_interval == QInterval.of(1, 8)
    assert verdict.q2_halfline == QInterval.halfline(8)
    assert verdict.theorems_used == ("THM0", "THM1")


def test_decaying_potential_with_decaying_kernel():
    verdict = verdict_for_potentials(ExpR(-1), PowerExp(1, 1), 3)
    assert verdict.q1_interval == QInterval.of(1, 8)
    assert verdict.q2_halfline == QInterval.halfline(1)
    assert verdict.infinity.limit_of_parameters is False


def test_singular_potential_variants():
    singular, k = ExpInvR(1), ExpInvR(F(1, 2))
    verdict = verdict_for_potentials(singular, k, 3)
    assert verdict.q1_interval == QInterval.halfline(1)
    assert verdict.single_q == QInterval.halfline(2)
    assert verdict.theorems_used == ("THM3", "THM2")
    assert verdict.origin.gamma == POS_INF
    assert verdict.origin.limit_of_parameters
    assert "origin: limit of admissible parameters" in verdict.notes

    truncated = verdict_for_potentials(Truncated(singular, 1, Side.ORIGIN), k, 3)
    assert truncated.q2_halfline == QInterval.halfline(6)

    grown = verdict_for_potentials(Sum(singular, Power(1, 3)), k, 3)
    assert grown.q2_halfline == QInterval.halfline(1)


def test_strong_power_potential():
    k = Sum(Truncated(Power(1, -3), 1, Side.ORIGIN), Truncated(Power(1, -5), 1, Side.INFINITY))
    verdict = verdict_for_potentials(Power(1, F(-7, 2)), k, 3)
    assert verdict.q1_interval == QInterval.of(1, 6)
    assert verdict.single_q == QInterval.of(1, 6)
    assert verdict.origin.gamma == F(7, 2)


def test_catalog_defaults_match_engine():
    for case in example_catalog():
        _, v, k, n = case.instantiate()
        assert _intervals(verdict_for_potentials(v, k, n)) == case.expected(), case.name


def test_origin_power_growth_only():
    spec = OriginSpec(growth_candidates=(GrowthPair(0, 0),))
    interval, params = origin_admissible(spec, 3)
    assert interval == QInterval.of(1, 6)
    assert params == ChosenParams("THM0", 0, 0, None, False)


def test_origin_gamma_cap_two_matches_power_growth():
    pairs = (GrowthPair(F(1, 2), F(1, 4)), GrowthPair(-1, F(3, 4)))
    plain, _ = origin_admissible(OriginSpec(growth_candidates=pairs), 4)
    capped, params = origin_admissible(OriginSpec(growth_candidates=pairs, gamma_cap=2), 4)
    assert plain == capped
    assert params.theorem == "THM0"


def test_origin_without_admissible_candidate():
    with pytest.raises(EmptyAdmissible):
        origin_admissible(OriginSpec(growth_candidates=(GrowthPair(-3, 0),)), 3)
    with pytest.raises(InvalidSpec):
        origin_admissible(OriginSpec(), 3)


def test_origin_enlarging_candidates_never_shrinks():
    small = OriginSpec(growth_candidates=(GrowthPair(0, 0),))
    large = OriginSpec(growth_candidates=(GrowthPair(0, 0), GrowthPair(1, F(1, 2))))
    assert origin_admissible(large, 3)[0].includes(origin_admissible(small, 3)[0])


def test_infinity_thresholds():
    spec = InfinitySpec(growth_candidates=(GrowthPair(0, 0),))
    assert infinity_admissible(spec, 3)[0] == QInterval.halfline(6)
    spec = InfinitySpec(growth_candidates=(GrowthPair(0, 0),), gamma_floor=1)
    interval, params = infinity_admissible(spec, 3)
    assert interval == QInterval.halfline(thm2_threshold(0, 0, 1, 3))
    assert params.theorem == "THM2"


def test_infinity_gamma_floor_two_matches_power_growth():
    pairs = (GrowthPair(F(3, 2), F(1, 3)),)
    plain, _ = infinity_admissible(InfinitySpec(growth_candidates=pairs), 5)
    floored, _ = infinity_admissible(InfinitySpec(growth_candidates=pairs, gamma_floor=2), 5)
    assert plain == floored == QInterval.halfline(thm1_threshold(F(3, 2), F(1, 3), 5))


def test_infinity_alpha_unbounded():
    spec = InfinitySpec(alpha_unbounded_for=(BetaRange.point(0),))
    interval, params = infinity_admissible(spec, 3)
    assert interval == QInterval.halfline(1)
    assert params.alpha == -POS_INF


def test_infinity_rejects_negative_beta():
    with pytest.raises(InvalidSpec):
        infinity_admissible(InfinitySpec(growth_candidates=(GrowthPair(1, F(-1, 2)),), gamma_floor=1), 3)


def test_negative_beta_is_normalized():
    spec = InfinitySpec(growth_candidates=(GrowthPair(1, F(-1, 2)),), gamma_floor=1)
    assert normalize_infinity(spec).growth_candidates == (GrowthPair(F(3, 2), 0),)
    origin = OriginSpec(growth_candidates=(GrowthPair(0, 0),))
    verdict = best_verdict(origin, spec, 3)
    assert verdict.q2_halfline == QInterval.halfline(thm2_threshold(1, F(-1, 2), 1, 3))


def test_negative_beta_without_decay_exponent():
    spec = InfinitySpec(growth_candidates=(GrowthPair(1, F(-1, 2)),))
    with pytest.raises(InvalidSpec):
        normalize_infinity(spec)


def test_overrides_only_verdict():
    origin = OriginSpec(growth_candidates=(GrowthPair(0, 0),))
    infinity = InfinitySpec(growth_candidates=(GrowthPair(0, 0),))
    verdict = best_verdict(origin, infinity, 3)
    assert verdict.q1_interval == QInterval.of(1, 6)
    assert verdict.q2_halfline == QInterval.halfline(6)
    assert verdict.single_q.is_empty


def test_empty_origin_side_gives_inadmissible_verdict():
    origin = OriginSpec(growth_candidates=(GrowthPair(-3, 0),))
    infinity = InfinitySpec(growth_candidates=(GrowthPair(0, 0),))
    verdict = best_verdict(origin, infinity, 3)
    assert verdict.q1_interval.is_empty
    assert not verdict.sum_admissible
    assert verdict.notes


def test_combine():
    verdict = combine(QInterval.of(1, 6), QInterval.halfline(4))
    assert verdict.single_q == QInterval.of(4, 6)
    assert verdict.theorems_used == ("THM0", "THM1")
