"""
Admissible exponent ranges from growth data.

The origin side yields an interval for q₁ (power growth alone, or the
region A_{β,γ} when r^γ V is bounded below near 0 for some γ > 2); the
infinity side yields a half-line for q₂ (power growth alone, or with the
decay exponent γ ≤ 2). Both are combined into the sum-space and
single-space verdicts.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from radembed.core.config import settings
from radembed.core.errors import EmptyAdmissible, InvalidSpec
from radembed.core.numbers import POS_INF, exact, is_infinite
from radembed.models.domain import (
    BetaRange,
    ChosenParams,
    EmbeddingVerdict,
    GrowthPair,
    InfinitySpec,
    OriginSpec,
    QInterval,
)
from radembed.models.potential import Potential
from radembed.services import potentials
from radembed.services.exponents import DimensionLike, dim, q_star, thm1_threshold, thm2_threshold
from radembed.services.region import build_region, slice_interval

logger = logging.getLogger(__name__)

ORIGIN_POWER = "THM0"
ORIGIN_REGION = "THM3"
INFINITY_POWER = "THM1"
INFINITY_DECAY = "THM2"


@dataclass(frozen=True)
class _Candidate:
    interval: QInterval
    params: ChosenParams


def _check_beta(pair: GrowthPair) -> None:
    if not 0 <= pair.beta <= 1:
        raise InvalidSpec(f"Candidate beta must lie in [0, 1], got {pair.beta}")


def _check_nested(candidates: List[_Candidate], hull: QInterval) -> None:
    """Every sampled point of the hull must lie in some candidate interval."""
    lo = hull.lo
    hi = hull.hi if not is_infinite(hull.hi) else hull.lo + 16
    for i in range(1, 64):
        q = lo + (hi - lo) * exact(i) / 64
        if not any(c.interval.contains(q) for c in candidates):
            raise InvalidSpec(f"Candidate intervals are not nested: q={q} lies in no candidate")


def origin_admissible(spec: OriginSpec, n: DimensionLike) -> Tuple[QInterval, ChosenParams]:
    """
    Union of the admissible q₁-intervals over the growth candidates.

    With gamma_cap > 2 every candidate is read off the region at the largest
    admissible γ₀; otherwise the power-growth interval (max{1,2β}, q*(α,β))
    is used. Alpha-unbounded β ranges contribute (max{1, 2β_lo}, +∞).
    """
    N = dim(n)
    if spec.is_empty:
        raise InvalidSpec("Origin spec has no growth candidates")
    use_region = spec.gamma_cap is not None and spec.gamma_cap > 2
    theorem = ORIGIN_REGION if use_region else ORIGIN_POWER
    gamma = spec.gamma_cap if use_region else None

    candidates: List[_Candidate] = []
    for pair in spec.growth_candidates:
        _check_beta(pair)
        if use_region:
            interval = slice_interval(pair.alpha, build_region(pair.beta, gamma, N))
        else:
            interval = QInterval.of(max(exact(1), 2 * pair.beta), q_star(pair.alpha, pair.beta, N))
        params = ChosenParams(theorem, pair.alpha, pair.beta, gamma, limit_of_parameters=is_infinite(gamma or 0))
        candidates.append(_Candidate(interval, params))

    for betas in spec.alpha_unbounded_for:
        interval = QInterval.halfline(max(exact(1), 2 * betas.lo))
        params = ChosenParams(theorem, POS_INF, betas.lo, gamma, limit_of_parameters=betas.lo_open)
        candidates.append(_Candidate(interval, params))

    admissible = [c for c in candidates if not c.interval.is_empty]
    if not admissible:
        raise EmptyAdmissible("No origin candidate yields a nonempty q1 interval")

    hull = QInterval.empty()
    for c in admissible:
        hull = hull.hull(c.interval)
    if settings.CHECK_NESTEDNESS:
        _check_nested(admissible, hull)

    best = min(admissible, key=lambda c: (-c.interval.hi, c.interval.lo, c.params.limit_of_parameters))
    logger.debug("Origin: %s with %s -> %s", theorem, best.params, hull)
    return hull, best.params


def infinity_admissible(spec: InfinitySpec, n: DimensionLike) -> Tuple[QInterval, ChosenParams]:
    """
    Half-line (t, +∞) with t the smallest threshold over the candidates.

    With gamma_floor present the decay-aware threshold at the smallest
    admissible γ∞ is used, otherwise the power-growth threshold. A floor of
    −∞ (V growing exponentially) gives the limit threshold max{1, 2β}.
    """
    N = dim(n)
    if spec.is_empty:
        raise InvalidSpec("Infinity spec has no growth candidates")
    use_decay = spec.gamma_floor is not None
    theorem = INFINITY_DECAY if use_decay else INFINITY_POWER
    gamma = spec.gamma_floor if use_decay else None
    unbounded_gamma = use_decay and is_infinite(gamma)

    options = []
    for pair in spec.growth_candidates:
        _check_beta(pair)
        if unbounded_gamma:
            threshold = max(exact(1), 2 * pair.beta)
        elif use_decay:
            threshold = thm2_threshold(pair.alpha, pair.beta, gamma, N)
        else:
            threshold = thm1_threshold(pair.alpha, pair.beta, N)
        options.append((threshold, ChosenParams(theorem, pair.alpha, pair.beta, gamma, unbounded_gamma)))

    for betas in spec.alpha_unbounded_for:
        threshold = max(exact(1), 2 * betas.lo)
        limit = betas.lo_open or unbounded_gamma
        options.append((threshold, ChosenParams(theorem, -POS_INF, betas.lo, gamma, limit)))

    threshold, params = min(options, key=lambda item: (item[0], item[1].limit_of_parameters))
    logger.debug("Infinity: %s with %s -> threshold %s", theorem, params, threshold)
    return QInterval.halfline(threshold), params


def combine(
    origin: QInterval,
    infinity: QInterval,
    origin_params: Optional[ChosenParams] = None,
    infinity_params: Optional[ChosenParams] = None,
    notes: Tuple[str, ...] = (),
) -> EmbeddingVerdict:
    return EmbeddingVerdict(
        q1_interval=origin,
        q2_halfline=infinity,
        single_q=origin.intersect(infinity),
        origin=origin_params or ChosenParams(theorem=ORIGIN_POWER),
        infinity=infinity_params or ChosenParams(theorem=INFINITY_POWER),
        notes=tuple(notes),
    )


def _normalize(pairs, ranges, gamma, side: str):
    """Replace β < 0 candidates by (α − βγ, 0)."""
    kept, extra_ranges = [], list(ranges)
    for pair in pairs:
        if pair.beta >= 0:
            kept.append(pair)
            continue
        if gamma is None or (is_infinite(gamma) and side == "infinity"):
            raise InvalidSpec(f"Candidate with beta={pair.beta} < 0 needs a finite decay exponent on the {side} side")
        shifted = pair.alpha - pair.beta * gamma
        if is_infinite(shifted):
            extra_ranges.append(BetaRange.point(0))
        else:
            kept.append(GrowthPair(shifted, 0))
    return tuple(kept), tuple(extra_ranges)


def normalize_origin(spec: OriginSpec) -> OriginSpec:
    pairs, ranges = _normalize(spec.growth_candidates, spec.alpha_unbounded_for, spec.gamma_cap, "origin")
    return OriginSpec(growth_candidates=pairs, gamma_cap=spec.gamma_cap, alpha_unbounded_for=ranges)


def normalize_infinity(spec: InfinitySpec) -> InfinitySpec:
    pairs, ranges = _normalize(spec.growth_candidates, spec.alpha_unbounded_for, spec.gamma_floor, "infinity")
    return InfinitySpec(growth_candidates=pairs, gamma_floor=spec.gamma_floor, alpha_unbounded_for=ranges)


def best_verdict(origin: OriginSpec, infinity: InfinitySpec, n: DimensionLike) -> EmbeddingVerdict:
    """Best q₁ interval and q₂ threshold; an empty origin side yields an inadmissible verdict."""
    N = dim(n)
    notes: List[str] = []
    origin, infinity = normalize_origin(origin), normalize_infinity(infinity)

    try:
        if origin.is_empty:
            raise EmptyAdmissible("No origin candidate: K outgrows every admissible power of V")
        q1, origin_params = origin_admissible(origin, N)
    except EmptyAdmissible as exc:
        q1 = QInterval.empty()
        origin_params = ChosenParams(ORIGIN_REGION if origin.gamma_cap and origin.gamma_cap > 2 else ORIGIN_POWER)
        notes.append(str(exc))
    if infinity.is_empty:
        q2 = QInterval.empty()
        infinity_params = ChosenParams(INFINITY_DECAY if infinity.gamma_floor is not None else INFINITY_POWER)
        notes.append("No infinity candidate: K outgrows every admissible power of V")
    else:
        q2, infinity_params = infinity_admissible(infinity, N)

    for side, params in (("origin", origin_params), ("infinity", infinity_params)):
        if params.limit_of_parameters:
            notes.append(f"{side}: limit of admissible parameters")
    return combine(q1, q2, origin_params, infinity_params, tuple(notes))


def verdict_for_potentials(v: Potential, k: Potential, n: DimensionLike) -> EmbeddingVerdict:
    """Derive both growth specs from the potentials and return the best verdict."""
    return best_verdict(potentials.origin_spec(v, k), potentials.infinity_spec(v, k), n)
