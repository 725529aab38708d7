from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

from radembed.core.errors import EmptyRange, InvalidSpec
from radembed.core.numbers import POS_INF, ExtReal, Real, exact, is_infinite, le, lt


class Side(str, Enum):
    ORIGIN = "origin"
    INFINITY = "infinity"


class CaseTag(str, Enum):
    GAMMA_BELOW_N = "GammaBelowN"
    GAMMA_EQ_N = "GammaEqN"
    GAMMA_BETWEEN = "GammaBetween"
    GAMMA_EQ_2NM2 = "GammaEq2Nm2"
    GAMMA_ABOVE = "GammaAbove"


@dataclass(frozen=True)
class Dimension:
    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 3:
            raise InvalidSpec(f"Dimension must be an integer >= 3, got {self.n!r}")

    @property
    def two_star(self) -> Real:
        """Critical Sobolev exponent 2N/(N-2)."""
        return exact(2 * self.n) / (self.n - 2)


@dataclass(frozen=True)
class GrowthPair:
    """Exponents (alpha, beta) bounding K / (r^alpha V^beta) on one side."""

    alpha: ExtReal
    beta: Real

    def __post_init__(self):
        object.__setattr__(self, "alpha", exact(self.alpha))
        object.__setattr__(self, "beta", exact(self.beta))
        if is_infinite(self.beta) or self.beta > 1:
            raise InvalidSpec(f"GrowthPair requires beta <= 1, got {self.beta}")

    def require_engine_range(self) -> "GrowthPair":
        if self.beta < 0:
            raise InvalidSpec(f"Engine candidates need beta in [0, 1], got {self.beta}")
        return self


@dataclass(frozen=True)
class BetaRange:
    """A range of beta values for which every alpha is admissible."""

    lo: Real
    hi: Real
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lo", exact(self.lo))
        object.__setattr__(self, "hi", exact(self.hi))
        if self.lo > self.hi or (self.lo == self.hi and (self.lo_open or self.hi_open)):
            raise EmptyRange(f"Empty beta range [{self.lo}, {self.hi}]")
        if self.lo < 0 or self.hi > 1:
            raise InvalidSpec(f"Beta range must lie in [0, 1], got [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, beta) -> "BetaRange":
        return cls(beta, beta)

    def contains(self, beta) -> bool:
        above = self.lo < beta if self.lo_open else self.lo <= beta
        below = beta < self.hi if self.hi_open else beta <= self.hi
        return above and below


@dataclass(frozen=True)
class QInterval:
    """Open interval (lo, hi) of exponents; empty iff lo >= hi."""

    lo: ExtReal
    hi: ExtReal

    @classmethod
    def of(cls, lo, hi) -> "QInterval":
        lo, hi = exact(lo), exact(hi)
        if not lt(lo, hi):
            return cls.empty()
        return cls(lo, hi)

    @classmethod
    def empty(cls) -> "QInterval":
        return cls(exact(0), exact(0))

    @classmethod
    def halfline(cls, lo) -> "QInterval":
        return cls.of(lo, POS_INF)

    @property
    def is_empty(self) -> bool:
        return not lt(self.lo, self.hi)

    def contains(self, q) -> bool:
        return lt(self.lo, q) and lt(q, self.hi)

    def intersect(self, other: "QInterval") -> "QInterval":
        if self.is_empty or other.is_empty:
            return QInterval.empty()
        return QInterval.of(max(self.lo, other.lo), min(self.hi, other.hi))

    def hull(self, other: "QInterval") -> "QInterval":
        if self.is_empty:
            return other
        if other.is_empty:
            return self
        return QInterval.of(min(self.lo, other.lo), max(self.hi, other.hi))

    def includes(self, other: "QInterval") -> bool:
        """Set inclusion ``other ⊆ self``."""
        if other.is_empty:
            return True
        if self.is_empty:
            return False
        return le(self.lo, other.lo) and le(other.hi, self.hi)

    def __str__(self) -> str:
        from radembed.core.numbers import to_text

        if self.is_empty:
            return "∅"
        return f"({to_text(self.lo)}, {to_text(self.hi)})"


@dataclass(frozen=True)
class RegionSpec:
    beta: Real
    gamma: ExtReal
    n: Dimension
    case_tag: CaseTag

    def __post_init__(self):
        if self.beta > 1:
            raise InvalidSpec(f"Region requires beta <= 1, got {self.beta}")
        if self.gamma < 2:
            raise InvalidSpec(f"Region is defined for gamma >= 2, got {self.gamma}")


@dataclass(frozen=True)
class XiSearch:
    xi_lo: Real
    xi_hi: Real
    grid_points: int
    margin: float

    def __post_init__(self):
        if self.xi_lo > self.xi_hi:
            raise InvalidSpec(f"Empty xi window [{self.xi_lo}, {self.xi_hi}]")
        if self.grid_points < 1000:
            raise InvalidSpec("XiSearch needs at least 1000 grid points")
        if self.margin <= 0:
            raise InvalidSpec("XiSearch margin must be positive")


@dataclass(frozen=True)
class OriginSpec:
    growth_candidates: Tuple[GrowthPair, ...] = ()
    gamma_cap: Optional[ExtReal] = None
    alpha_unbounded_for: Tuple[BetaRange, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "growth_candidates", tuple(self.growth_candidates))
        object.__setattr__(self, "alpha_unbounded_for", tuple(self.alpha_unbounded_for))
        if self.gamma_cap is not None:
            object.__setattr__(self, "gamma_cap", exact(self.gamma_cap))
            if self.gamma_cap < 2:
                raise InvalidSpec(f"gamma_cap must be >= 2, got {self.gamma_cap}")

    @property
    def is_empty(self) -> bool:
        return not self.growth_candidates and not self.alpha_unbounded_for


@dataclass(frozen=True)
class InfinitySpec:
    growth_candidates: Tuple[GrowthPair, ...] = ()
    gamma_floor: Optional[ExtReal] = None
    alpha_unbounded_for: Tuple[BetaRange, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "growth_candidates", tuple(self.growth_candidates))
        object.__setattr__(self, "alpha_unbounded_for", tuple(self.alpha_unbounded_for))
        if self.gamma_floor is not None:
            object.__setattr__(self, "gamma_floor", exact(self.gamma_floor))
            if self.gamma_floor > 2:
                raise InvalidSpec(f"gamma_floor must be <= 2, got {self.gamma_floor}")

    @property
    def is_empty(self) -> bool:
        return not self.growth_candidates and not self.alpha_unbounded_for


@dataclass(frozen=True)
class ChosenParams:
    """Winning parameters on one side; alpha is +/-inf for alpha-unbounded ranges."""

    theorem: str
    alpha: Optional[ExtReal] = None
    beta: Optional[Real] = None
    gamma: Optional[ExtReal] = None
    limit_of_parameters: bool = False


@dataclass(frozen=True)
class EmbeddingVerdict:
    q1_interval: QInterval
    q2_halfline: QInterval
    single_q: QInterval
    origin: ChosenParams
    infinity: ChosenParams
    notes: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def sum_admissible(self) -> bool:
        return not self.q1_interval.is_empty and not self.q2_halfline.is_empty

    @property
    def single_admissible(self) -> bool:
        return not self.single_q.is_empty

    @property
    def theorems_used(self) -> Tuple[str, str]:
        return self.origin.theorem, self.infinity.theorem
