"""
Quadrature-backed checks of the functional inequalities behind the
compactness criteria.

Radial profiles live on a log-spaced grid. Every integral over a set of
nodes is a composite trapezoid sum, so all Hölder-type steps hold exactly
for the discrete measure; only the Sobolev step relies on the continuum
constant, which leaves the bounds conservative for smooth profiles.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from radembed.core.config import settings
from radembed.core.errors import (
    BranchDomain,
    DegenerateFit,
    InvalidSpec,
    NonIntegrable,
    PreconditionViolated,
    ZeroFunction,
)
from radembed.models.domain import Side
from radembed.models.potential import Potential, Zero
from radembed.services.exponents import DimensionLike, dim, sobolev_constant, sphere_area
from radembed.services.potentials import evaluate, growth_ratio

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RadialGrid:
    nodes: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        if nodes.ndim != 1 or nodes.size < 64:
            raise InvalidSpec("RadialGrid needs at least 64 nodes")
        if nodes[0] <= 0 or np.any(np.diff(nodes) <= 0):
            raise InvalidSpec("RadialGrid nodes must be positive and strictly increasing")
        object.__setattr__(self, "nodes", nodes)

    @classmethod
    def log_spaced(cls, r_min: float = None, r_max: float = None, count: int = None) -> "RadialGrid":
        r_min = r_min if r_min is not None else settings.GRID_R_MIN
        r_max = r_max if r_max is not None else settings.GRID_R_MAX
        count = count if count is not None else settings.GRID_NODES
        return cls(np.geomspace(r_min, r_max, count))

    @property
    def count(self) -> int:
        return self.nodes.size

    @property
    def log_nodes(self) -> np.ndarray:
        return np.log(self.nodes)

    def index_range(self, r_lo: float, r_hi: float) -> slice:
        """Nodes with r_lo <= r <= r_hi."""
        start = int(np.searchsorted(self.nodes, r_lo, side="left"))
        stop = int(np.searchsorted(self.nodes, r_hi, side="right"))
        return slice(start, stop)


@lru_cache(maxsize=8)
def _cached_grid(r_min: float, r_max: float, count: int) -> RadialGrid:
    return RadialGrid.log_spaced(r_min, r_max, count)


def default_grid() -> RadialGrid:
    return _cached_grid(settings.GRID_R_MIN, settings.GRID_R_MAX, settings.GRID_NODES)


def log_derivative(grid: RadialGrid, values: np.ndarray) -> np.ndarray:
    """u′ from centered differences in log r (one-sided at the ends), by the chain rule."""
    return np.gradient(values, grid.log_nodes, edge_order=1) / grid.nodes


@dataclass(frozen=True, eq=False)
class RadialFunction:
    grid: RadialGrid
    values: np.ndarray
    derivative: np.ndarray
    support: Optional[Tuple[int, int]] = None

    @classmethod
    def from_values(cls, grid: RadialGrid, values) -> "RadialFunction":
        values = np.asarray(values, dtype=float)
        if values.shape != grid.nodes.shape:
            raise InvalidSpec("Values must be sampled on the grid nodes")
        nonzero = np.flatnonzero(values)
        support = (int(nonzero[0]), int(nonzero[-1])) if nonzero.size else None
        return cls(grid, values, log_derivative(grid, values), support)

    @classmethod
    def from_profile(cls, grid: RadialGrid, profile: Callable[[np.ndarray], np.ndarray]) -> "RadialFunction":
        return cls.from_values(grid, profile(grid.nodes))

    @property
    def is_zero(self) -> bool:
        return self.support is None

    def scaled(self, factor: float) -> "RadialFunction":
        return RadialFunction(self.grid, self.values * factor, self.derivative * factor, self.support)


def bump_profile(rho: np.ndarray) -> np.ndarray:
    """exp(−1/(1−t²)) with t = ρ − 1, supported on (0, 2)."""
    t = np.asarray(rho, dtype=float) - 1.0
    out = np.zeros_like(t)
    inside = np.abs(t) < 1.0
    out[inside] = np.exp(-1.0 / (1.0 - t[inside] ** 2))
    return out


@dataclass(frozen=True)
class BumpFamily:
    """Profiles u_s(r) = s^{−(N−2)/2} φ(r/s), all with the same gradient norm."""

    scales: Tuple[float, ...]
    profile: Callable[[np.ndarray], np.ndarray] = field(default=bump_profile)

    def __post_init__(self):
        if not self.scales or any(s <= 0 for s in self.scales):
            raise InvalidSpec("BumpFamily needs positive scales")

    @classmethod
    def dyadic(cls, lo: int, hi: int) -> "BumpFamily":
        return cls(tuple(2.0 ** j for j in range(lo, hi + 1)))

    def member(self, scale: float, n: DimensionLike, grid: RadialGrid = None) -> RadialFunction:
        N = dim(n)
        grid = grid or default_grid()
        return RadialFunction.from_values(grid, scale ** (-(N - 2) / 2) * self.profile(grid.nodes / scale))

    def members(self, n: DimensionLike, grid: RadialGrid = None, unit: float = 1.0):
        for s in self.scales:
            yield self.member(s * unit, n, grid)


@dataclass
class InequalityReport:
    lhs: float
    rhs: float
    holds: bool
    slack: float
    case_label: str
    constants: Dict[str, float] = field(default_factory=dict)


def _report(lhs: float, rhs: float, label: str, constants: Dict[str, float]) -> InequalityReport:
    holds = bool(lhs <= rhs * (1 + settings.REPORT_TOL))
    if not holds:
        logger.warning("Inequality %s fails: lhs=%.6e rhs=%.6e", label, lhs, rhs)
    return InequalityReport(float(lhs), float(rhs), holds, float(rhs - lhs), label, constants)


def _integrate(r: np.ndarray, integrand: np.ndarray, n: int) -> float:
    """ω_{N−1} ∫ f r^{N−1} dr over the given nodes."""
    if r.size < 2:
        return 0.0
    value = sphere_area(n) * trapezoid(integrand * r ** (n - 1), r)
    if not np.isfinite(value):
        raise NonIntegrable("Quadrature produced a non-finite value")
    return float(value)


def _safe_product(weight: np.ndarray, values: np.ndarray) -> np.ndarray:
    """weight·values with 0 wherever values vanish (V may be infinite there)."""
    with np.errstate(invalid="ignore", over="ignore"):
        return np.where(values == 0, 0.0, weight * values)


def h1v_norm(u: RadialFunction, v: Potential, n: DimensionLike) -> float:
    """‖u‖ = (∫ |∇u|² + V u² dx)^{1/2} for radial u."""
    N = dim(n)
    r = u.grid.nodes
    integrand = u.derivative ** 2 + _safe_product(evaluate(v, r), u.values ** 2)
    return float(np.sqrt(_integrate(r, integrand, N)))


def _restrict(u: RadialFunction, r_lo: float, r_hi: float) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes inside (r_lo, r_hi) plus interpolated end points."""
    nodes = u.grid.nodes
    r_lo = max(r_lo, nodes[0])
    r_hi = min(r_hi, nodes[-1])
    if r_lo >= r_hi:
        return np.empty(0), np.empty(0)
    inner = (nodes > r_lo) & (nodes < r_hi)
    r = np.concatenate([[r_lo], nodes[inner], [r_hi]])
    values = np.interp(np.log(r), u.grid.log_nodes, u.values)
    return r, values


def weighted_lq(u: RadialFunction, k: Potential, q: float, r_lo: float = 0.0, r_hi: float = np.inf,
                n: DimensionLike = 3) -> float:
    """ω_{N−1} ∫_{r_lo}^{r_hi} K |u|^q r^{N−1} dr."""
    if q <= 1:
        raise InvalidSpec(f"weighted_lq needs q > 1, got {q}")
    N = dim(n)
    r, values = _restrict(u, float(r_lo), float(r_hi))
    if r.size < 2:
        return 0.0
    return _integrate(r, _safe_product(evaluate(k, r), np.abs(values) ** q), N)


def _side_range(side: Side, radius: float) -> Tuple[float, float]:
    return (0.0, radius) if Side(side) == Side.ORIGIN else (radius, np.inf)


def s_lower_bound(q: float, R: float, side: Side, v: Potential, k: Potential, family: BumpFamily,
                  n: DimensionLike, grid: RadialGrid = None) -> float:
    """
    Trial lower bound of sup_{‖u‖=1} ∫ K|u|^q over B_R (origin) or its complement (infinity).

    Family scales are relative to R: the trial functions are u_{s·R}. Only a
    lower bound is computed, never the supremum itself.
    """
    if R <= 0:
        raise InvalidSpec("R must be positive")
    r_lo, r_hi = _side_range(side, R)
    best = 0.0
    for u in family.members(n, grid, unit=R):
        norm = h1v_norm(u, v, n)
        if norm == 0:
            continue
        best = max(best, weighted_lq(u.scaled(1.0 / norm), k, q, r_lo, r_hi, n))
    return best


def r_lower_bound(q: float, R: float, side: Side, v: Potential, k: Potential, family: BumpFamily,
                  n: DimensionLike, grid: RadialGrid = None) -> float:
    """Trial lower bound of sup_{‖u‖=‖h‖=1} ∫ K|u|^{q−1}|h| over the side region."""
    N = dim(n)
    r_lo, r_hi = _side_range(side, R)
    normalized = []
    for u in family.members(N, grid, unit=R):
        norm = h1v_norm(u, v, N)
        if norm > 0:
            normalized.append(u.scaled(1.0 / norm))
    best = 0.0
    for u in normalized:
        for h in normalized:
            r, uu = _restrict(u, r_lo, r_hi)
            _, hh = _restrict(h, r_lo, r_hi)
            if r.size < 2:
                continue
            value = _integrate(r, _safe_product(evaluate(k, r), np.abs(uu) ** (q - 1) * np.abs(hh)), N)
            best = max(best, value)
    return best


def decay_slope_fit(radii: Sequence[float], values: Sequence[float]) -> float:
    """Least-squares slope of log(value) against log(radius)."""
    radii = np.asarray(radii, dtype=float)
    values = np.asarray(values, dtype=float)
    if radii.size < 4 or radii.size != values.size:
        raise DegenerateFit("decay_slope_fit needs at least 4 paired points")
    if np.any(values <= 0) or np.any(radii <= 0):
        raise DegenerateFit("decay_slope_fit needs positive radii and values")
    slope, _ = np.polyfit(np.log(radii), np.log(values), 1)
    return float(slope)


@dataclass(frozen=True)
class PointwiseMode:
    kind: str
    gamma: Optional[float] = None
    lam: Optional[float] = None
    radius: Optional[float] = None

    @classmethod
    def ni(cls) -> "PointwiseMode":
        return cls("ni")

    @classmethod
    def origin(cls, gamma: float, lam: float, radius: float) -> "PointwiseMode":
        return cls("origin", gamma, lam, radius)

    @classmethod
    def infinity(cls, gamma: float, lam: float, radius: float) -> "PointwiseMode":
        return cls("infinity", gamma, lam, radius)


def pointwise_ratio(u: RadialFunction, mode: PointwiseMode, n: DimensionLike, v: Potential = None) -> float:
    """
    sup |u(r)|·w(r)/‖u‖ over the relevant nodes.

    ni: w = r^{(N−2)/2} on all nodes, ‖u‖ the gradient norm unless V given.
    infinity: w = r^{(2(N−1)−γ)/4} λ^{1/4} on nodes > R.
    origin: w = r^{(2N−2−γ)/4} / (λ^{−1/2} + R^{(γ−2)/2} λ^{−1})^{1/2} on nodes < R,
    requires supp u ⊂ B_R.
    """
    N = dim(n)
    if u.is_zero:
        raise ZeroFunction("pointwise_ratio is undefined for u = 0")
    norm = h1v_norm(u, v if v is not None else Zero(), N)
    if norm == 0:
        raise ZeroFunction("u has zero norm")
    r = u.grid.nodes
    if mode.kind == "ni":
        mask = np.ones_like(r, dtype=bool)
        weight = r ** ((N - 2) / 2)
    elif mode.kind == "infinity":
        mask = r > mode.radius
        weight = r ** ((2 * (N - 1) - mode.gamma) / 4) * mode.lam ** 0.25
    elif mode.kind == "origin":
        if np.any(u.values[r >= mode.radius] != 0):
            raise PreconditionViolated("origin mode needs u supported inside B_R")
        mask = r < mode.radius
        scale = (mode.lam ** -0.5 + mode.radius ** ((mode.gamma - 2) / 2) / mode.lam) ** 0.5
        weight = r ** ((2 * N - 2 - mode.gamma) / 4) / scale
    else:
        raise InvalidSpec(f"Unknown pointwise mode {mode.kind!r}")
    if not np.any(mask):
        return 0.0
    return float(np.max(np.abs(u.values[mask]) * weight[mask]) / norm)


def _annulus_nodes(grid: RadialGrid, r_lo: float, r_hi: float) -> slice:
    window = grid.index_range(r_lo, r_hi)
    if window.stop - window.start < 2:
        raise PreconditionViolated(f"Annulus [{r_lo}, {r_hi}] holds fewer than two grid nodes")
    return window


def lemma_omega_check(u: RadialFunction, h: RadialFunction, annulus: Tuple[float, float], alpha: float,
                      beta: float, q: float, v: Potential, k: Potential, m: float, nu: float,
                      n: DimensionLike) -> InequalityReport:
    """
    ∫_Ω K|u|^{q−1}|h| against the β-branch bound, given |u| ≤ m r^{−ν} on Ω.

    Branches: β ∈ [0, 1/2] uses the Sobolev constant, β ∈ (1/2, 1) trades
    part of ‖u‖ for the weight, β = 1 needs q > 2.
    """
    N = dim(n)
    if not 0 <= beta <= 1:
        raise InvalidSpec(f"beta must lie in [0, 1], got {beta}")
    if beta == 1 and q <= 2:
        raise BranchDomain("The beta = 1 branch needs q > 2")
    if q <= max(1.0, 2 * beta):
        raise PreconditionViolated(f"Need q > max(1, 2 beta), got q={q}")

    window = _annulus_nodes(u.grid, *annulus)
    r = u.grid.nodes[window]
    uu, hh = np.abs(u.values[window]), np.abs(h.values[window])
    if np.any(uu > m * r ** (-nu) * (1 + 1e-12)):
        raise PreconditionViolated("|u| <= m r^-nu fails on the annulus")
    ratio = growth_ratio(v, k, alpha, beta, r)
    lam = float(np.max(ratio))
    if not np.isfinite(lam):
        raise PreconditionViolated("K / (r^alpha V^beta) is unbounded on the annulus")

    kk = evaluate(k, r)
    lhs = _integrate(r, kk * uu ** (q - 1) * hh, N)
    norm_h = h1v_norm(h, v, N)
    s_n = sobolev_constant(N)
    constants = {"Lambda": lam, "S_N": s_n, "norm_h": norm_h}

    if beta <= 0.5:
        p = 2 * N / (N + 2 * (1 - 2 * beta))
        weight = _integrate(r, r ** ((alpha - nu * (q - 1)) * p), N)
        rhs = lam * m ** (q - 1) * s_n ** (1 - 2 * beta) * weight ** (1 / p) * norm_h
        label = "beta<=1/2"
    elif beta < 1:
        norm_u = h1v_norm(u, v, N)
        constants["norm_u"] = norm_u
        weight = _integrate(r, r ** ((alpha - nu * (q - 2 * beta)) / (1 - beta)), N)
        rhs = lam * m ** (q - 2 * beta) * weight ** (1 - beta) * norm_u ** (2 * beta - 1) * norm_h
        label = "1/2<beta<1"
    else:
        vv = evaluate(v, r)
        weight = _integrate(r, r ** (2 * alpha - 2 * nu * (q - 2)) * _safe_product(vv, uu ** 2), N)
        rhs = lam * m ** (q - 2) * weight ** 0.5 * norm_h
        label = "beta=1"
    return _report(lhs, rhs, label, constants)


@lru_cache(maxsize=16)
def calibrate_ni_constant(n: int) -> float:
    """Observed sup of the Ni ratio over a frozen bump corpus on the default grid."""
    family = BumpFamily.dyadic(-4, 4)
    return max(pointwise_ratio(u, PointwiseMode.ni(), n) for u in family.members(n, default_grid()))


def annulus_check(u: RadialFunction, h: RadialFunction, r: float, R: float, q: float, k: Potential,
                  s: float, v: Potential, n: DimensionLike) -> InequalityReport:
    """
    ∫_{B_R∖B_r} K|u|^{q−1}|h| against S_N ‖K‖_{L^s} ‖h‖ times the q ≤ q̃ or q > q̃ factor,
    q̃ = 2(1 + 1/N − 1/s).
    """
    N = dim(n)
    if not R > r > 0:
        raise InvalidSpec(f"Need 0 < r < R, got r={r}, R={R}")
    if q <= 1:
        raise InvalidSpec(f"annulus_check needs q > 1, got {q}")
    if s <= 2 * N / (N + 2):
        raise PreconditionViolated(f"annulus_check needs s > 2N/(N+2), got {s}")
    q_tilde = 2 * (1 + 1 / N - 1 / s)

    window = _annulus_nodes(u.grid, r, R)
    nodes = u.grid.nodes[window]
    uu, hh = np.abs(u.values[window]), np.abs(h.values[window])
    kk = evaluate(k, nodes)
    k_norm = _integrate(nodes, kk ** s, N) ** (1 / s)
    if not np.isfinite(k_norm):
        raise PreconditionViolated("K is not in L^s on the annulus")

    lhs = _integrate(nodes, kk * uu ** (q - 1) * hh, N)
    s_n = sobolev_constant(N)
    norm_h = h1v_norm(h, v, N)
    mass = _integrate(nodes, uu ** 2, N)
    constants = {"S_N": s_n, "K_Ls": k_norm, "q_tilde": q_tilde, "norm_h": norm_h}

    if q <= q_tilde:
        volume = _integrate(nodes, np.ones_like(nodes), N)
        constants["volume"] = volume
        rhs = s_n * k_norm * norm_h * volume ** ((q_tilde - q) / 2) * mass ** ((q - 1) / 2)
        label = "q<=q_tilde"
    else:
        norm_u = h1v_norm(u, v, N)
        own = pointwise_ratio(u, PointwiseMode.ni(), N, v) if not u.is_zero and norm_u > 0 else 0.0
        c_n = max(calibrate_ni_constant(N), own)
        constants.update({"C_N": c_n, "norm_u": norm_u})
        rhs = s_n * k_norm * norm_h * (c_n * norm_u / r ** ((N - 2) / 2)) ** (q - q_tilde) \
            * mass ** ((q_tilde - 1) / 2)
        label = "q>q_tilde"
    return _report(lhs, rhs, label, constants)


def sum_norm_split(u: RadialFunction, k: Potential, p1: float, p2: float, n: DimensionLike) -> float:
    """
    Upper bound on ‖u‖ in L^{p1}_K + L^{p2}_K from radial splits u = u·1_{B_ρ} + u·1_{B_ρ^c}.

    ρ runs over all grid nodes, including the two trivial splits.
    """
    if not 1 < p1 <= p2:
        raise InvalidSpec(f"sum_norm_split needs 1 < p1 <= p2, got {p1}, {p2}")
    N = dim(n)
    r = u.grid.nodes
    kk = evaluate(k, r)
    omega = sphere_area(N)
    inner = omega * cumulative_trapezoid(_safe_product(kk, np.abs(u.values) ** p1) * r ** (N - 1), r, initial=0)
    outer_cum = omega * cumulative_trapezoid(_safe_product(kk, np.abs(u.values) ** p2) * r ** (N - 1), r, initial=0)
    outer = np.clip(outer_cum[-1] - outer_cum, 0.0, None)
    if not (np.all(np.isfinite(inner)) and np.all(np.isfinite(outer))):
        raise NonIntegrable("Sum-norm quadrature produced a non-finite value")
    candidates = np.maximum(np.clip(inner, 0.0, None) ** (1 / p1), outer ** (1 / p2))
    return float(np.min(candidates))


def sobolev_ratio(u: RadialFunction, n: DimensionLike) -> float:
    """‖u‖_{2*} / ‖∇u‖₂ on the grid."""
    N = dim(n)
    if u.is_zero:
        raise ZeroFunction("sobolev_ratio is undefined for u = 0")
    critical = 2 * N / (N - 2)
    r = u.grid.nodes
    top = _integrate(r, np.abs(u.values) ** critical, N) ** (1 / critical)
    return top / h1v_norm(u, Zero(), N)
