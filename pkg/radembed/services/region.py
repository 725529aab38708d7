"""
The region A_{β,γ} of the (α, q)-plane.

For β ≤ 1 and γ ≥ 2 the region is open and every vertical slice is an open
interval or half-line. Five cases are distinguished by the position of γ
relative to N and 2N − 2; γ = +∞ stands for the union over all finite γ.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from radembed.core.config import settings
from radembed.core.errors import EmptyRange, InvalidSpec
from radembed.core.numbers import POS_INF, ExtReal, Real, exact, is_exact, is_infinite
from radembed.models.domain import CaseTag, Dimension, QInterval, RegionSpec, XiSearch
from radembed.services.exponents import DimensionLike, alpha_thresholds, dim, q_sub, q_subsub

logger = logging.getLogger(__name__)


def region_case(gamma, n: DimensionLike) -> CaseTag:
    N = dim(n)
    gamma = exact(gamma)
    if gamma < 2:
        raise InvalidSpec(f"Region is defined for gamma >= 2, got {gamma}")
    if gamma < N:
        return CaseTag.GAMMA_BELOW_N
    if gamma == N:
        return CaseTag.GAMMA_EQ_N
    if gamma < 2 * N - 2:
        return CaseTag.GAMMA_BETWEEN
    if gamma == 2 * N - 2:
        return CaseTag.GAMMA_EQ_2NM2
    return CaseTag.GAMMA_ABOVE


def build_region(beta, gamma, n: DimensionLike) -> RegionSpec:
    beta, gamma = exact(beta), exact(gamma)
    return RegionSpec(beta=beta, gamma=gamma, n=Dimension(dim(n)), case_tag=region_case(gamma, n))


def _slice_bounds(alpha, spec: RegionSpec) -> Tuple[ExtReal, ExtReal, Dict[str, ExtReal]]:
    """Raw (lo, hi) of the slice and the labelled expressions they came from."""
    alpha, beta, gamma, N = exact(alpha), spec.beta, spec.gamma, spec.n.n
    floor = max(exact(1), 2 * beta)
    tag = spec.case_tag

    if is_infinite(gamma):
        return floor, POS_INF, {"max{1,2β}": floor}

    if tag == CaseTag.GAMMA_BELOW_N:
        qs, qss = q_sub(alpha, beta, gamma, N), q_subsub(alpha, beta, gamma, N)
        return floor, min(qs, qss), {"max{1,2β}": floor, "q_*": qs, "q_**": qss}
    if tag == CaseTag.GAMMA_EQ_N:
        qss = q_subsub(alpha, beta, gamma, N)
        if alpha <= -(1 - beta) * N:
            return floor, floor, {"max{1,2β}": floor, "q_**": qss}
        return floor, qss, {"max{1,2β}": floor, "q_**": qss}
    if tag == CaseTag.GAMMA_BETWEEN:
        qs, qss = q_sub(alpha, beta, gamma, N), q_subsub(alpha, beta, gamma, N)
        return max(floor, qs), qss, {"max{1,2β}": floor, "q_*": qs, "q_**": qss}
    if tag == CaseTag.GAMMA_EQ_2NM2:
        qs = q_sub(alpha, beta, gamma, N)
        lo = max(floor, qs)
        if alpha <= -(1 - beta) * gamma:
            return lo, lo, {"max{1,2β}": floor, "q_*": qs}
        return lo, POS_INF, {"max{1,2β}": floor, "q_*": qs}

    qs, qss = q_sub(alpha, beta, gamma, N), q_subsub(alpha, beta, gamma, N)
    return max(floor, qs, qss), POS_INF, {"max{1,2β}": floor, "q_*": qs, "q_**": qss}


def slice_interval(alpha, spec: RegionSpec) -> QInterval:
    """{q : (α, q) ∈ A_{β,γ}} as an open interval, possibly empty."""
    lo, hi, _ = _slice_bounds(alpha, spec)
    return QInterval.of(lo, hi)


def membership(alpha, q, spec: RegionSpec) -> bool:
    return slice_interval(alpha, spec).contains(exact(q))


def _vertical_threshold(spec: RegionSpec) -> Optional[Real]:
    if spec.case_tag == CaseTag.GAMMA_EQ_N:
        return -(1 - spec.beta) * spec.n.n
    if spec.case_tag == CaseTag.GAMMA_EQ_2NM2 and not is_infinite(spec.gamma):
        return -(1 - spec.beta) * spec.gamma
    return None


def boundary_distance(alpha, q, spec: RegionSpec) -> float:
    """Smallest distance from (α, q) to a boundary curve, measured along q or α."""
    alpha, q = exact(alpha), exact(q)
    lo, hi, _ = _slice_bounds(alpha, spec)
    distances = [abs(float(q - bound)) for bound in (lo, hi) if not is_infinite(bound)]
    threshold = _vertical_threshold(spec)
    if threshold is not None:
        distances.append(abs(float(alpha - threshold)))
    return min(distances) if distances else float("inf")


# Boundary export

@dataclass
class Polyline:
    label: str
    kind: str  # lower | upper | vertical
    points: List[Tuple[float, float]] = field(default_factory=list)


@dataclass
class BoundaryExport:
    spec: RegionSpec
    alpha_range: Tuple[float, float]
    q_window: Tuple[float, float]
    curves: List[Polyline]
    thresholds: Dict[str, float]


def _active_label(value, labelled: Dict[str, ExtReal], candidates: List[str]) -> str:
    active = [name for name in candidates if name in labelled and labelled[name] == value]
    return "=".join(active) if active else candidates[0]


def boundary_export(spec: RegionSpec, alpha_range: Tuple, samples: int) -> BoundaryExport:
    """
    Sample the boundary of A_{β,γ} over ``alpha_range``.

    Lower and upper boundary curves are split into labelled runs according to
    which expression is active; coinciding expressions share one run with a
    joint label such as ``q_*=q_**``. The cases γ = N and γ = 2N − 2 also get
    the vertical threshold line. Only vertices where the slice is nonempty are
    emitted.
    """
    a_lo, a_hi = exact(alpha_range[0]), exact(alpha_range[1])
    if samples < 2:
        raise EmptyRange("boundary_export needs at least 2 samples")
    if not a_lo < a_hi:
        raise EmptyRange(f"Degenerate alpha range [{a_lo}, {a_hi}]")

    alphas = [a_lo + (a_hi - a_lo) * Fraction(i, samples - 1) if is_exact(a_lo) and is_exact(a_hi)
              else a_lo + (a_hi - a_lo) * i / (samples - 1) for i in range(samples)]

    curves: List[Polyline] = []
    current: Dict[str, Optional[Polyline]] = {"lower": None, "upper": None}
    finite_qs: List[float] = []

    for alpha in alphas:
        lo, hi, labelled = _slice_bounds(alpha, spec)
        if not QInterval.of(lo, hi).is_empty:
            for kind, value, names in (
                ("lower", lo, ["max{1,2β}", "q_*", "q_**"]),
                ("upper", hi, ["q_*", "q_**"]),
            ):
                if is_infinite(value):
                    current[kind] = None
                    continue
                label = _active_label(value, labelled, names)
                run = current[kind]
                if run is None or run.label != label:
                    run = Polyline(label=label, kind=kind)
                    curves.append(run)
                    current[kind] = run
                run.points.append((float(alpha), float(value)))
                finite_qs.append(float(value))
        else:
            current = {"lower": None, "upper": None}

    q_bottom = min(finite_qs + [1.0]) - 0.5
    q_top = max(finite_qs + [max(2.0, 2 * float(spec.beta))]) + 1.0

    threshold = _vertical_threshold(spec)
    if threshold is not None and a_lo < threshold < a_hi:
        # slice just right of the threshold
        right_of = threshold + (a_hi - threshold) / (10 * samples)
        lo, hi, _ = _slice_bounds(right_of, spec)
        top = min(float(hi), q_top)
        if float(lo) < top:
            # at γ = N all three thresholds meet on the line
            label = "α₁=α₂=α₃" if spec.case_tag == CaseTag.GAMMA_EQ_N else "α₁"
            line = Polyline(label=label, kind="vertical")
            for i in range(samples):
                q = float(lo) + (top - float(lo)) * (i + 0.5) / samples
                line.points.append((float(threshold), q))
            curves.append(line)

    thresholds = {}
    if not is_infinite(spec.gamma):
        alpha1, alpha2, alpha3 = alpha_thresholds(spec.beta, spec.gamma, spec.n)
        thresholds = {"α₁": float(alpha1), "α₂": float(alpha2), "α₃": float(alpha3)}

    logger.debug("Exported %d boundary runs for %s", len(curves), spec.case_tag.value)
    return BoundaryExport(
        spec=spec,
        alpha_range=(float(a_lo), float(a_hi)),
        q_window=(q_bottom, q_top),
        curves=curves,
        thresholds=thresholds,
    )


# Brute-force feasibility of the auxiliary ξ systems

def xi_search(beta, grid_points: int = None, margin: float = None) -> XiSearch:
    """The ξ window max{0, (1−2β)/2} ≤ ξ ≤ 1 − β."""
    beta = exact(beta)
    return XiSearch(
        xi_lo=max(exact(0), (1 - 2 * beta) / 2),
        xi_hi=1 - beta,
        grid_points=grid_points or settings.XI_GRID_POINTS,
        margin=margin or settings.XI_MARGIN,
    )


def xi_subcase(alpha, beta, gamma, n: DimensionLike) -> Optional[str]:
    """Subcase I / II / III of the γ > 2N − 2 system, None for other γ."""
    N = dim(n)
    alpha, beta, gamma = exact(alpha), exact(beta), exact(gamma)
    if gamma <= 2 * N - 2:
        return None
    alpha1, alpha2, alpha3 = alpha_thresholds(beta, gamma, N)
    if alpha <= alpha1:
        return "I"
    if alpha >= min(alpha2, alpha3):
        return "II"
    return "III"


def _xi_system(alpha, beta, gamma, q, N):
    """Vectorised predicate ξ ↦ feasibility of the case-appropriate system."""
    alpha, beta, gamma, q = (float(x) for x in (alpha, beta, gamma, q))

    def shifted(xi):
        return alpha + xi * gamma, beta + xi

    if gamma < 2 * N - 2:
        def system(xi):
            a, b = shifted(xi)
            upper = (4 * a + 4 * N - 2 * (gamma + 2) * b) / (2 * N - 2 - gamma)
            return (2 * b < q) & (q < upper)
    elif gamma == 2 * N - 2:
        def system(xi):
            a, b = shifted(xi)
            return (2 * b < q) & (2 * a + 2 * N - (gamma + 2) * b > 0)
    else:
        def system(xi):
            b = beta + xi
            tail = ((gamma - 2) * xi + 2 * alpha + 2 * N - (gamma + 2) * beta) / (2 * N - 2 - gamma)
            return q / 2 > np.maximum(b, tail)
    return system


def _exact_candidates(alpha, beta, gamma, q, N, search: XiSearch) -> List[float]:
    alpha, beta, gamma, q = (exact(x) for x in (alpha, beta, gamma, q))
    points = [search.xi_lo, search.xi_hi, (q - 2 * beta) / 2]
    if gamma != N:
        points.append((alpha + (1 - beta) * N) / (N - gamma))
    # where the q-upper constraint becomes tight
    const = 4 * alpha + 4 * N - 2 * (gamma + 2) * beta
    points.append(((2 * N - 2 - gamma) * q - const) / (2 * gamma - 4))
    inside = sorted({p for p in points if search.xi_lo <= p <= search.xi_hi})
    mids = [(a + b) / 2 for a, b in zip(inside, inside[1:])]
    return [float(p) for p in inside + mids]


def xi_feasible_brute(alpha, beta, gamma, q, search: XiSearch, n: DimensionLike) -> bool:
    """
    Grid search for a ξ in the window satisfying the auxiliary system.

    Independent of the closed-form slices: the window is scanned on a uniform
    grid, augmented with the window endpoints, the subcase (III) point
    ξ = (α + (1−β)N)/(N − γ), the points where each strict constraint becomes
    tight, and midpoints between consecutive exact candidates.
    """
    N = dim(n)
    if exact(gamma) <= 2:
        raise InvalidSpec(f"xi_feasible_brute needs gamma > 2, got {gamma}")
    if exact(beta) > 1:
        raise InvalidSpec(f"xi_feasible_brute needs beta <= 1, got {beta}")
    system = _xi_system(alpha, beta, gamma, q, N)
    grid = np.linspace(float(search.xi_lo), float(search.xi_hi), search.grid_points)
    extra = np.array(_exact_candidates(alpha, beta, gamma, q, N, search))
    xi = np.concatenate([grid, extra])
    return bool(np.any(system(xi)))
