"""
Pydantic documents for problem specs and verdicts.

Scalars travel as JSON numbers or as text ("10/3", "inf"); exact endpoints
are kept alongside their float value so rationals survive a round trip.
"""
from typing import Annotated, Any, Dict, List, Optional, Union

from pydantic import AfterValidator, BaseModel, ConfigDict, Field, model_validator

from radembed.core.config import settings
from radembed.core.errors import InvalidSpec, UnsupportedCombination
from radembed.core.numbers import ExtReal, exact, is_exact, is_infinite, to_text
from radembed.models.domain import (
    BetaRange,
    ChosenParams,
    EmbeddingVerdict,
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
from radembed.services import potentials

Scalar = Union[int, float, str]


def scalar_text(value: Optional[ExtReal]) -> Optional[str]:
    return None if value is None else to_text(value)


def parse_scalar(value: Optional[Scalar]) -> Optional[ExtReal]:
    """Inverse of ``scalar_text``; float reprs come back as floats."""
    if value is None:
        return None
    if isinstance(value, str):
        text = value.strip().lower()
        if "inf" not in text and "/" not in text and ("." in text or "e" in text):
            return float(text)
    return exact(value)


# Intervals

class IntervalDocument(BaseModel):
    lo: float = 0.0
    hi: Optional[float] = None
    lo_exact: Optional[str] = None
    hi_exact: Optional[str] = None
    empty: bool = False

    @classmethod
    def from_interval(cls, interval: QInterval) -> "IntervalDocument":
        if interval.is_empty:
            return cls(empty=True)
        return cls(
            lo=float(interval.lo),
            hi=None if is_infinite(interval.hi) else float(interval.hi),
            lo_exact=str(interval.lo) if is_exact(interval.lo) else None,
            hi_exact=str(interval.hi) if is_exact(interval.hi) else None,
        )

    def to_interval(self) -> QInterval:
        if self.empty:
            return QInterval.empty()
        lo = exact(self.lo_exact) if self.lo_exact is not None else self.lo
        if self.hi is None and self.hi_exact is None:
            return QInterval.halfline(lo)
        hi = exact(self.hi_exact) if self.hi_exact is not None else self.hi
        return QInterval.of(lo, hi)

    def __str__(self) -> str:
        return str(self.to_interval())


# Potentials

class PotentialDocument(BaseModel):
    variant: str
    params: Dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def from_potential(cls, p: Potential) -> "PotentialDocument":
        if isinstance(p, Zero):
            params = {}
        elif isinstance(p, Power):
            params = {"coeff": to_text(p.coeff), "exponent": to_text(p.exponent)}
        elif isinstance(p, ExpInvR):
            params = {"b": to_text(p.b)}
        elif isinstance(p, ExpR):
            params = {"a": to_text(p.a)}
        elif isinstance(p, PowerExp):
            params = {"d": to_text(p.d), "b": to_text(p.b)}
        elif isinstance(p, Truncated):
            params = {
                "inner": cls.from_potential(p.inner).model_dump(),
                "support_radius": to_text(p.support_radius),
                "side": p.side.value,
            }
        elif isinstance(p, (Sum, Product)):
            params = {
                "first": cls.from_potential(p.first).model_dump(),
                "second": cls.from_potential(p.second).model_dump(),
            }
        else:
            raise UnsupportedCombination(f"Cannot serialize {type(p).__name__}")
        return cls(variant=p.variant, params=params)

    def _number(self, key: str):
        if key not in self.params:
            raise InvalidSpec(f"{self.variant} needs parameter {key!r}")
        return parse_scalar(self.params[key])

    def _child(self, key: str) -> Potential:
        if key not in self.params:
            raise InvalidSpec(f"{self.variant} needs parameter {key!r}")
        return PotentialDocument.model_validate(self.params[key]).to_potential()

    def to_potential(self) -> Potential:
        variant = self.variant
        if variant == "Zero":
            return Zero()
        if variant == "Power":
            return Power(self._number("coeff") if "coeff" in self.params else 1, self._number("exponent"))
        if variant == "ExpInvR":
            return ExpInvR(self._number("b"))
        if variant == "ExpR":
            return ExpR(self._number("a"))
        if variant == "PowerExp":
            return PowerExp(self._number("d"), self._number("b"))
        if variant == "Truncated":
            side = self.params.get("side", Side.ORIGIN.value)
            return Truncated(self._child("inner"), self._number("support_radius"), Side(side))
        if variant == "Sum":
            return Sum(self._child("first"), self._child("second"))
        if variant == "Product":
            return Product(self._child("first"), self._child("second"))
        raise UnsupportedCombination(f"Potential variant {variant!r} is outside the symbolic family")


# Explicit growth data

class GrowthPairDocument(BaseModel):
    alpha: Scalar
    beta: Scalar

    def to_pair(self) -> GrowthPair:
        return GrowthPair(parse_scalar(self.alpha), parse_scalar(self.beta))


class BetaRangeDocument(BaseModel):
    lo: Scalar
    hi: Scalar
    lo_open: bool = False
    hi_open: bool = False

    def to_range(self) -> BetaRange:
        return BetaRange(parse_scalar(self.lo), parse_scalar(self.hi), self.lo_open, self.hi_open)


class OriginOverride(BaseModel):
    growth_candidates: List[GrowthPairDocument] = Field(default_factory=list)
    gamma_cap: Optional[Scalar] = None
    alpha_unbounded_for: List[BetaRangeDocument] = Field(default_factory=list)

    def to_spec(self) -> OriginSpec:
        return OriginSpec(
            growth_candidates=tuple(pair.to_pair() for pair in self.growth_candidates),
            gamma_cap=parse_scalar(self.gamma_cap),
            alpha_unbounded_for=tuple(r.to_range() for r in self.alpha_unbounded_for),
        )


class InfinityOverride(BaseModel):
    growth_candidates: List[GrowthPairDocument] = Field(default_factory=list)
    gamma_floor: Optional[Scalar] = None
    alpha_unbounded_for: List[BetaRangeDocument] = Field(default_factory=list)

    def to_spec(self) -> InfinitySpec:
        return InfinitySpec(
            growth_candidates=tuple(pair.to_pair() for pair in self.growth_candidates),
            gamma_floor=parse_scalar(self.gamma_floor),
            alpha_unbounded_for=tuple(r.to_range() for r in self.alpha_unbounded_for),
        )


class Overrides(BaseModel):
    origin: Optional[OriginOverride] = None
    infinity: Optional[InfinityOverride] = None


def _check_version(value: str) -> str:
    if value.split(".")[0] != settings.SCHEMA_VERSION.split(".")[0]:
        raise ValueError(f"Unsupported schema_version {value!r}, expected {settings.SCHEMA_VERSION}")
    return value


SchemaVersion = Annotated[str, AfterValidator(_check_version)]


class ProblemSpec(BaseModel):
    schema_version: SchemaVersion = settings.SCHEMA_VERSION
    dimension: int = Field(ge=3)
    v: Optional[PotentialDocument] = None
    k: Optional[PotentialDocument] = None
    overrides: Optional[Overrides] = None

    @model_validator(mode="after")
    def _one_source_per_side(self) -> "ProblemSpec":
        symbolic = self.v is not None and self.k is not None
        if (self.v is None) != (self.k is None):
            raise ValueError("v and k must be given together")
        overrides = self.overrides or Overrides()
        for side, override in (("origin", overrides.origin), ("infinity", overrides.infinity)):
            if symbolic and override is not None:
                raise ValueError(f"{side}: give either v/k or an override, not both")
            if not symbolic and override is None:
                raise ValueError(f"{side}: no v/k pair and no override to resolve")
        return self

    def potentials(self):
        return self.v.to_potential(), self.k.to_potential()

    def origin_spec(self) -> OriginSpec:
        if self.overrides is not None and self.overrides.origin is not None:
            return self.overrides.origin.to_spec()
        return potentials.origin_spec(*self.potentials())

    def infinity_spec(self) -> InfinitySpec:
        if self.overrides is not None and self.overrides.infinity is not None:
            return self.overrides.infinity.to_spec()
        return potentials.infinity_spec(*self.potentials())


# Verdicts

class ChosenParamsDocument(BaseModel):
    theorem: str
    alpha: Optional[str] = None
    beta: Optional[str] = None
    gamma: Optional[str] = None
    limit_of_parameters: bool = False

    @classmethod
    def from_params(cls, params: ChosenParams) -> "ChosenParamsDocument":
        return cls(
            theorem=params.theorem,
            alpha=scalar_text(params.alpha),
            beta=scalar_text(params.beta),
            gamma=scalar_text(params.gamma),
            limit_of_parameters=params.limit_of_parameters,
        )

    def to_params(self) -> ChosenParams:
        return ChosenParams(
            theorem=self.theorem,
            alpha=parse_scalar(self.alpha),
            beta=parse_scalar(self.beta),
            gamma=parse_scalar(self.gamma),
            limit_of_parameters=self.limit_of_parameters,
        )


class VerdictDocument(BaseModel):
    model_config = ConfigDict(frozen=True)

    schema_version: SchemaVersion = settings.SCHEMA_VERSION
    q1_interval: IntervalDocument
    q2_threshold: IntervalDocument
    single_q: IntervalDocument
    theorems_used: List[str]
    chosen_params: Dict[str, ChosenParamsDocument]
    embedding_target: List[str] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)

    @classmethod
    def from_verdict(cls, verdict: EmbeddingVerdict) -> "VerdictDocument":
        targets = []
        if verdict.sum_admissible:
            targets.append("sum-space")
        if verdict.single_admissible:
            targets.append("single-space")
        return cls(
            q1_interval=IntervalDocument.from_interval(verdict.q1_interval),
            q2_threshold=IntervalDocument.from_interval(verdict.q2_halfline),
            single_q=IntervalDocument.from_interval(verdict.single_q),
            theorems_used=list(verdict.theorems_used),
            chosen_params={
                "origin": ChosenParamsDocument.from_params(verdict.origin),
                "infinity": ChosenParamsDocument.from_params(verdict.infinity),
            },
            embedding_target=targets,
            notes=list(verdict.notes),
        )

    def to_verdict(self) -> EmbeddingVerdict:
        return EmbeddingVerdict(
            q1_interval=self.q1_interval.to_interval(),
            q2_halfline=self.q2_threshold.to_interval(),
            single_q=self.single_q.to_interval(),
            origin=self.chosen_params["origin"].to_params(),
            infinity=self.chosen_params["infinity"].to_params(),
            notes=tuple(self.notes),
        )

    def intervals(self):
        return self.q1_interval.to_interval(), self.q2_threshold.to_interval(), self.single_q.to_interval()

    @property
    def sum_admissible(self) -> bool:
        return "sum-space" in self.embedding_target

