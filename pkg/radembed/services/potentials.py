"""
Symbolic potentials: asymptotic germs, growth envelopes, decay caps,
pointwise evaluation and the catalog of worked examples.

Near a side every family member behaves like exp(rate·s)·s^power with
s = 1/r at the origin and s = r at infinity (or vanishes identically).
Boundedness of ratios is decided on these germs: exponential rate first,
then power.
"""
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple, Union

import numpy as np

from radembed.core.config import settings
from radembed.core.errors import InvalidSpec, UnsupportedCombination
from radembed.core.numbers import NEG_INF, POS_INF, ExtReal, Real, exact
from radembed.models.domain import (
    BetaRange,
    Dimension,
    GrowthPair,
    InfinitySpec,
    OriginSpec,
    QInterval,
    Side,
)
from radembed.models.potential import (
    ExpInvR,
    ExpR,
    Potential,
    Power,
    PowerExp,
    Product,
    Sum,
    Truncated,
    Zero,
)
from radembed.services.exponents import DimensionLike, dim

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Germ:
    """Leading behaviour exp(rate·s)·s^power as s → ∞."""

    rate: Real
    power: Real

    @property
    def key(self) -> Tuple[Real, Real]:
        return self.rate, self.power

    @property
    def bounded(self) -> bool:
        return self.rate < 0 or (self.rate == 0 and self.power <= 0)


def germ(p: Potential, side: Side) -> Optional[Germ]:
    """Germ of ``p`` at ``side``; None when ``p`` vanishes identically there."""
    side = Side(side)
    at_origin = side == Side.ORIGIN
    zero = exact(0)
    if isinstance(p, Zero):
        return None
    if isinstance(p, Power):
        return Germ(zero, -p.exponent if at_origin else p.exponent)
    if isinstance(p, ExpInvR):
        return Germ(p.b, zero) if at_origin else Germ(zero, zero)
    if isinstance(p, ExpR):
        return Germ(zero, zero) if at_origin else Germ(p.a, zero)
    if isinstance(p, PowerExp):
        return Germ(zero, -p.d) if at_origin else Germ(-p.b, p.d)
    if isinstance(p, Truncated):
        return germ(p.inner, side) if p.side == side else None
    if isinstance(p, Sum):
        terms = [g for g in (germ(p.first, side), germ(p.second, side)) if g is not None]
        return max(terms, key=lambda g: g.key) if terms else None
    if isinstance(p, Product):
        first, second = germ(p.first, side), germ(p.second, side)
        if first is None or second is None:
            return None
        return Germ(first.rate + second.rate, first.power + second.power)
    raise UnsupportedCombination(f"Unsupported potential {type(p).__name__}")


def _support_sides(p: Potential) -> Optional[Tuple[Optional[Real], Optional[Real]]]:
    """(origin cut, infinity cut) for a truncation, None for non-truncations."""
    if isinstance(p, Truncated):
        if p.side == Side.ORIGIN:
            return p.support_radius, None
        return None, p.support_radius
    return None


def is_positive_everywhere(p: Potential) -> bool:
    if isinstance(p, Zero):
        return False
    if isinstance(p, (Power, ExpInvR, ExpR, PowerExp)):
        return True
    if isinstance(p, Truncated):
        return False
    if isinstance(p, Product):
        return is_positive_everywhere(p.first) and is_positive_everywhere(p.second)
    if isinstance(p, Sum):
        if is_positive_everywhere(p.first) or is_positive_everywhere(p.second):
            return True
        cuts = [_support_sides(t) for t in (p.first, p.second)]
        if None in cuts or not all(isinstance(t, Truncated) and is_positive_everywhere(t.inner)
                                   for t in (p.first, p.second)):
            return False
        origin_cut = next((c[0] for c in cuts if c[0] is not None), None)
        infinity_cut = next((c[1] for c in cuts if c[1] is not None), None)
        return origin_cut is not None and infinity_cut is not None and infinity_cut <= origin_cut
    raise UnsupportedCombination(f"Unsupported potential {type(p).__name__}")


def validate_roles(v: Potential, k: Potential) -> None:
    """V only needs to be a family member; K must be strictly positive."""
    germ(v, Side.ORIGIN)
    if not is_positive_everywhere(k):
        raise InvalidSpec("K must be strictly positive on (0, +inf)")


@dataclass(frozen=True)
class Envelope:
    """
    Admissible set of (α, β) ∈ R × [0, 1] for ess sup K/(r^α V^β) < ∞ near ``side``.

    The ratio germ has rate e(β) = rate_K − β·rate_V, linear in β. Where
    e(β) < 0 every α works, where e(β) > 0 none does, and where e(β) = 0
    α is bounded by a linear function of β (above at the origin, below at
    infinity).
    """

    side: Side
    k_germ: Germ
    v_germ: Optional[Germ]

    def _betas_allowed(self, beta) -> bool:
        return 0 <= beta <= 1 and (self.v_germ is not None or beta == 0)

    def rate(self, beta) -> Real:
        if self.v_germ is None:
            return self.k_germ.rate
        return self.k_germ.rate - exact(beta) * self.v_germ.rate

    def alpha_bound(self, beta) -> Real:
        """The α threshold where the ratio rate vanishes (α ≤ bound at origin, α ≥ bound at infinity)."""
        beta = exact(beta)
        v_power = self.v_germ.power if self.v_germ is not None else exact(0)
        if self.side == Side.ORIGIN:
            return beta * v_power - self.k_germ.power
        return self.k_germ.power - beta * v_power

    def contains(self, alpha, beta) -> bool:
        alpha, beta = exact(alpha), exact(beta)
        if not self._betas_allowed(beta):
            return False
        e = self.rate(beta)
        if e < 0:
            return True
        if e > 0:
            return False
        bound = self.alpha_bound(beta)
        return alpha <= bound if self.side == Side.ORIGIN else alpha >= bound

    @property
    def alpha_unbounded_for(self) -> Tuple[BetaRange, ...]:
        """β values (as at most one range) for which every α is admissible."""
        k_rate = self.k_germ.rate
        if self.v_germ is None or self.v_germ.rate == 0:
            if k_rate >= 0:
                return ()
            return (BetaRange.point(0),) if self.v_germ is None else (BetaRange(0, 1),)
        breakpoint = k_rate / self.v_germ.rate
        if self.v_germ.rate > 0:
            # e(β) < 0  ⟺  β > breakpoint
            if breakpoint >= 1:
                return ()
            if breakpoint < 0:
                return (BetaRange(0, 1),)
            return (BetaRange(breakpoint, 1, lo_open=True),)
        # e(β) < 0  ⟺  β < breakpoint
        if breakpoint <= 0:
            return ()
        if breakpoint > 1:
            return (BetaRange(0, 1),)
        return (BetaRange(0, breakpoint, hi_open=True),)

    def edge_betas(self, beta_grid: List[Real]) -> List[Real]:
        """β values with e(β) = 0; the whole grid when e vanishes identically."""
        k_rate = self.k_germ.rate
        if self.v_germ is None:
            return [exact(0)] if k_rate == 0 else []
        if self.v_germ.rate == 0:
            return list(beta_grid) if k_rate == 0 else []
        breakpoint = k_rate / self.v_germ.rate
        return [breakpoint] if 0 <= breakpoint <= 1 else []

    def growth_pairs(self, beta_grid: Optional[List[Real]] = None) -> Tuple[GrowthPair, ...]:
        grid = beta_grid if beta_grid is not None else default_beta_grid()
        return tuple(GrowthPair(self.alpha_bound(beta), beta) for beta in self.edge_betas(grid))


def envelope_contains(env: Envelope, alpha, beta) -> bool:
    return env.contains(alpha, beta)


def default_beta_grid(denominator: int = None) -> List[Fraction]:
    denominator = denominator or settings.BETA_GRID_DENOMINATOR
    return [Fraction(j, denominator) for j in range(denominator + 1)]


def _envelope(v: Potential, k: Potential, side: Side) -> Envelope:
    k_germ = germ(k, side)
    if k_germ is None:
        raise InvalidSpec(f"K vanishes near the {side.value}; K must be positive")
    return Envelope(side=side, k_germ=k_germ, v_germ=germ(v, side))


def envelope_origin(v: Potential, k: Potential) -> Envelope:
    return _envelope(v, k, Side.ORIGIN)


def envelope_infinity(v: Potential, k: Potential) -> Envelope:
    return _envelope(v, k, Side.INFINITY)


def gamma_caps(v: Potential) -> Tuple[Optional[ExtReal], Optional[ExtReal]]:
    """
    (origin_cap, infinity_floor) for ess inf r^γ V > 0.

    origin_cap is the largest admissible γ ≥ 2 near the origin and
    infinity_floor the smallest admissible γ ≤ 2 near infinity; either is
    None when no such γ exists.
    """
    origin_cap = None
    g = germ(v, Side.ORIGIN)
    if g is not None:
        if g.rate > 0:
            origin_cap = POS_INF
        elif g.rate == 0 and g.power >= 2:
            # r^γ V ~ s^{power − γ} bounded below iff γ ≤ power
            origin_cap = g.power

    infinity_floor = None
    g = germ(v, Side.INFINITY)
    if g is not None:
        if g.rate > 0:
            infinity_floor = NEG_INF
        elif g.rate == 0 and -g.power <= 2:
            infinity_floor = -g.power
    return origin_cap, infinity_floor


def origin_spec(v: Potential, k: Potential, beta_grid: Optional[List[Real]] = None) -> OriginSpec:
    validate_roles(v, k)
    env = envelope_origin(v, k)
    cap, _ = gamma_caps(v)
    return OriginSpec(
        growth_candidates=env.growth_pairs(beta_grid),
        gamma_cap=cap,
        alpha_unbounded_for=env.alpha_unbounded_for,
    )


def infinity_spec(v: Potential, k: Potential, beta_grid: Optional[List[Real]] = None) -> InfinitySpec:
    validate_roles(v, k)
    env = envelope_infinity(v, k)
    _, floor = gamma_caps(v)
    return InfinitySpec(
        growth_candidates=env.growth_pairs(beta_grid),
        gamma_floor=floor,
        alpha_unbounded_for=env.alpha_unbounded_for,
    )


def evaluate(p: Potential, r):
    """Pointwise value of ``p``; accepts scalars or numpy arrays of radii > 0."""
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0):
        raise InvalidSpec("Potentials are evaluated at r > 0 only")
    with np.errstate(over="ignore"):
        values = _evaluate(p, r_arr)
    return float(values) if np.ndim(values) == 0 else values


def _evaluate(p: Potential, r: np.ndarray) -> np.ndarray:
    if isinstance(p, Zero):
        return np.zeros_like(r)
    if isinstance(p, Power):
        return float(p.coeff) * r ** float(p.exponent)
    if isinstance(p, ExpInvR):
        return np.exp(float(p.b) / r)
    if isinstance(p, ExpR):
        return np.exp(float(p.a) * r)
    if isinstance(p, PowerExp):
        return r ** float(p.d) * np.exp(-float(p.b) * r)
    if isinstance(p, Truncated):
        inner = _evaluate(p.inner, r)
        radius = float(p.support_radius)
        inside = r <= radius if p.side == Side.ORIGIN else r > radius
        return np.where(inside, inner, 0.0)
    if isinstance(p, Sum):
        return _evaluate(p.first, r) + _evaluate(p.second, r)
    if isinstance(p, Product):
        first, second = _evaluate(p.first, r), _evaluate(p.second, r)
        return np.where((first == 0) | (second == 0), 0.0, first * second)
    raise UnsupportedCombination(f"Unsupported potential {type(p).__name__}")


def power_of(values: np.ndarray, beta: float) -> np.ndarray:
    """values**beta with the convention 0**0 = 1."""
    if beta == 0:
        return np.ones_like(values)
    with np.errstate(divide="ignore", over="ignore"):
        return values ** beta


def growth_ratio(v: Potential, k: Potential, alpha, beta, r) -> np.ndarray:
    """Sampled K / (r^α V^β)."""
    r = np.asarray(r, dtype=float)
    denominator = r ** float(alpha) * power_of(evaluate(v, r), float(beta))
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        return np.where(denominator > 0, evaluate(k, r) / denominator, np.inf)


# Comparison intervals quoted for power potentials V = r^a, K ~ r^{b0} | r^b

def power_weight_interval(n: DimensionLike, a, b, b0) -> QInterval:
    """(max{2, 2(N+b)/(N−2)}, 2(2N−2+2b₀−a)/(2N−2+a))"""
    N = dim(n)
    a, b, b0 = exact(a), exact(b), exact(b0)
    return QInterval.of(max(exact(2), 2 * (N + b) / (N - 2)), 2 * (2 * N - 2 + 2 * b0 - a) / (2 * N - 2 + a))


def sublinear_interval(n: DimensionLike, a, b, b0) -> Optional[QInterval]:
    """The (q̲′, q̄′) interval of the sub-quadratic theory; None where either end is undefined."""
    N = dim(n)
    a, b, b0 = exact(a), exact(b), exact(b0)
    b1, b2, b3 = (a - 2 - 2 * N) / 4, (a - 2) / 2, exact(-(N + 2)) / 2
    if b3 <= b < -2:
        lower = 2 * (N + b) / (N - 2)
    elif b1 <= b < b2:
        lower = 4 * (N + b) / (2 * N - 2 + a)
    else:
        return None
    if b3 < b0 <= -2:
        upper = 2 * (N + b0) / (N - 2)
    elif b1 < b0 <= b2:
        upper = 4 * (N + b0) / (2 * N - 2 + a)
    else:
        return None
    return QInterval.of(lower, upper)


def prior_intervals(n: DimensionLike, a, b, b0) -> Tuple[QInterval, Optional[QInterval]]:
    """Both earlier intervals for V = r^a, K = r^{b0} near 0 and r^b at infinity."""
    return power_weight_interval(n, a, b, b0), sublinear_interval(n, a, b, b0)


# Example catalog

Params = Dict[str, Union[int, Fraction]]


@dataclass
class ExampleCase:
    name: str
    title: str
    defaults: Params
    build: Callable[[Params], Tuple[Potential, Potential, Dimension]]
    expected_intervals: Callable[[Params], Tuple[QInterval, QInterval]]
    sampler: Callable[[random.Random], Params]
    check: Callable[[Params], None] = field(default=lambda params: None)

    def bind(self, overrides: Optional[Params] = None) -> Params:
        params = dict(self.defaults)
        for key, value in (overrides or {}).items():
            if key not in params:
                raise InvalidSpec(f"{self.name} has no parameter {key!r}")
            params[key] = int(value) if key in ("N", "kernel", "variant") else exact(value)
        self.check(params)
        return params

    def instantiate(self, overrides: Optional[Params] = None):
        params = self.bind(overrides)
        v, k, n = self.build(params)
        return params, v, k, n

    def expected(self, overrides: Optional[Params] = None) -> Tuple[QInterval, QInterval, QInterval]:
        params = self.bind(overrides)
        q1, q2 = self.expected_intervals(params)
        return q1, q2, q1.intersect(q2)


def _rational(rng: random.Random, lo, hi, denominator: int = 64) -> Fraction:
    """Random rational strictly inside (lo, hi)."""
    lo, hi = Fraction(lo), Fraction(hi)
    steps = int((hi - lo) * denominator)
    return lo + Fraction(rng.randint(1, max(steps - 1, 1)), denominator)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InvalidSpec(message)


def _power_law_case() -> ExampleCase:
    """V = r^{−a}, K = r^{1−a}, a ≤ 2."""

    def build(p):
        return Power(1, -p["a"]), Power(1, 1 - p["a"]), Dimension(p["N"])

    def expected(p):
        N, a = p["N"], p["a"]
        return (
            QInterval.of(1, 2 * (N - a + 1) / exact(N - 2)),
            QInterval.halfline(2 * (2 * N - a) / (2 * N - a - 2)),
        )

    def sampler(rng):
        return {"N": rng.randint(3, 6), "a": _rational(rng, -4, 2)}

    def check(p):
        _require(p["N"] >= 3, "N must be >= 3")
        _require(p["a"] <= 2, "EX_SWW needs a <= 2")

    return ExampleCase("EX_SWW", "V = r^-a, K = r^(1-a)", {"N": 3, "a": exact(1)}, build, expected, sampler, check)


def _zero_potential_case() -> ExampleCase:
    """V ≡ 0, K = r^d."""

    def build(p):
        return Zero(), Power(1, p["d"]), Dimension(p["N"])

    def expected(p):
        N, d = p["N"], p["d"]
        critical = 2 * (d + N) / exact(N - 2)
        return QInterval.of(1, critical), QInterval.halfline(critical)

    def sampler(rng):
        return {"N": rng.randint(3, 6), "d": _rational(rng, Fraction(-5, 2), 4)}

    def check(p):
        _require(p["N"] >= 3, "N must be >= 3")
        _require(p["d"] > exact(-(p["N"] + 2)) / 2, "EX_BPR needs d > -(N+2)/2")

    return ExampleCase("EX_BPR", "V = 0, K = r^d", {"N": 3, "d": exact(1)}, build, expected, sampler, check)


def _decaying_potential_case() -> ExampleCase:
    """V = e^{−a r}; K₁ = r^d or K₂ = r^d e^{−b r}."""

    def build(p):
        k = Power(1, p["d"]) if p["kernel"] == 1 else PowerExp(p["d"], p["b"])
        return ExpR(-p["a"]), k, Dimension(p["N"])

    def expected(p):
        N, d = p["N"], p["d"]
        critical = 2 * (d + N) / exact(N - 2)
        q2 = QInterval.halfline(critical) if p["kernel"] == 1 else QInterval.halfline(1)
        return QInterval.of(1, critical), q2

    def sampler(rng):
        return {
            "N": rng.randint(3, 6),
            "a": _rational(rng, 0, 3),
            "d": _rational(rng, Fraction(-5, 2), 4),
            "b": _rational(rng, 0, 3),
            "kernel": rng.choice([1, 2]),
        }

    def check(p):
        _require(p["a"] > 0 and p["b"] > 0, "EX_NNP1 needs a > 0 and b > 0")
        _require(p["kernel"] in (1, 2), "kernel must be 1 or 2")
        _require(p["d"] > exact(-(p["N"] + 2)) / 2, "EX_NNP1 needs d > -(N+2)/2")

    defaults = {"N": 3, "a": exact(1), "d": exact(1), "b": exact(1), "kernel": 1}
    return ExampleCase("EX_NNP1", "V = e^(-ar), K = r^d or r^d e^(-br)", defaults, build, expected, sampler, check)


def _singular_potential_case() -> ExampleCase:
    """V = e^{1/r} (variant 0), its truncation to (0,1] (1), or e^{1/r} + r^N (2); K = e^{b/r}."""

    def build(p):
        N = p["N"]
        singular = ExpInvR(1)
        v = {
            0: singular,
            1: Truncated(singular, 1, Side.ORIGIN),
            2: Sum(singular, Power(1, N)),
        }[p["variant"]]
        return v, ExpInvR(p["b"]), Dimension(N)

    def expected(p):
        N, b = p["N"], p["b"]
        q1 = QInterval.halfline(max(exact(1), 2 * b))
        threshold = {0: exact(2), 1: Dimension(N).two_star, 2: exact(1)}[p["variant"]]
        return q1, QInterval.halfline(threshold)

    def sampler(rng):
        return {"N": rng.randint(3, 6), "b": _rational(rng, 0, 1) if rng.random() < 0.9 else Fraction(1),
                "variant": rng.choice([0, 1, 2])}

    def check(p):
        _require(0 < p["b"] <= 1, "EX_NNP2 needs 0 < b <= 1")
        _require(p["variant"] in (0, 1, 2), "variant must be 0, 1 or 2")

    defaults = {"N": 3, "b": Fraction(1, 2), "variant": 0}
    return ExampleCase("EX_NNP2", "V = e^(1/r) and variants, K = e^(b/r)", defaults, build, expected, sampler, check)


def _strong_power_case() -> ExampleCase:
    """V = r^a with −2(N−1) < a < −N; K = r^{b₀} on (0,1], r^b beyond."""

    def build(p):
        N = p["N"]
        k = Sum(Truncated(Power(1, p["b0"]), 1, Side.ORIGIN), Truncated(Power(1, p["b"]), 1, Side.INFINITY))
        return Power(1, p["a"]), k, Dimension(N)

    def expected(p):
        N, a, b, b0 = p["N"], p["a"], p["b"], p["b0"]
        q1 = QInterval.of(
            max(exact(1), 2 * (N + b0) / (N + a)),
            2 * (2 * N - 2 + 2 * b0 - a) / (2 * N - 2 + a),
        )
        q2 = QInterval.halfline(max(exact(1), 2 * (N + b) / exact(N - 2)))
        return q1, q2

    def sampler(rng):
        N = rng.randint(3, 6)
        a = _rational(rng, -2 * (N - 1), -N)
        return {"N": N, "a": a, "b0": _rational(rng, a, a + 4), "b": _rational(rng, -8, 2)}

    def check(p):
        N = p["N"]
        _require(-2 * (N - 1) < p["a"] < -N, "EX_ST needs -2(N-1) < a < -N")
        _require(p["b0"] > p["a"], "EX_ST needs b0 > a")

    defaults = {"N": 3, "a": Fraction(-7, 2), "b0": exact(-3), "b": exact(-5)}
    return ExampleCase("EX_ST", "V = r^a, K = r^b0 near 0 and r^b at infinity", defaults, build, expected, sampler, check)


def sublinear_sample(rng: random.Random) -> Params:
    """EX_ST parameters with b < b₀ on a common branch of ``sublinear_interval``, so the interval is nonempty."""
    N = rng.randint(3, 6)
    a = _rational(rng, -2 * (N - 1), -N)
    if rng.random() < 0.5:
        lo, hi = exact(-(N + 2)) / 2, exact(-2)
    else:
        lo, hi = (a - 2 - 2 * N) / 4, (a - 2) / 2
    t_b, t_b0 = sorted(rng.sample(range(1, 256), 2))
    return {"N": N, "a": a, "b0": lo + (hi - lo) * Fraction(t_b0, 256), "b": lo + (hi - lo) * Fraction(t_b, 256)}


def example_catalog() -> List[ExampleCase]:
    return [
        _power_law_case(),
        _zero_potential_case(),
        _decaying_potential_case(),
        _singular_potential_case(),
        _strong_power_case(),
    ]


def find_example(name: str) -> ExampleCase:
    for case in example_catalog():
        if case.name == name:
            return case
    raise InvalidSpec(f"Unknown example {name!r}")
