"""Symbolic radial potentials: a closed family of elementary profiles."""
from dataclasses import dataclass
from typing import Union

from radembed.core.errors import InvalidSpec
from radembed.core.numbers import Real, exact, is_infinite
from radembed.models.domain import Side


@dataclass(frozen=True)
class Zero:
    variant = "Zero"


@dataclass(frozen=True)
class Power:
    """coeff * r^exponent"""

    coeff: Real
    exponent: Real
    variant = "Power"

    def __post_init__(self):
        object.__setattr__(self, "coeff", exact(self.coeff))
        object.__setattr__(self, "exponent", exact(self.exponent))
        if self.coeff <= 0 or is_infinite(self.coeff) or is_infinite(self.exponent):
            raise InvalidSpec(f"Power needs a finite positive coefficient, got {self.coeff}")


@dataclass(frozen=True)
class ExpInvR:
    """e^{b/r}"""

    b: Real
    variant = "ExpInvR"

    def __post_init__(self):
        object.__setattr__(self, "b", exact(self.b))


@dataclass(frozen=True)
class ExpR:
    """e^{a r}"""

    a: Real
    variant = "ExpR"

    def __post_init__(self):
        object.__setattr__(self, "a", exact(self.a))


@dataclass(frozen=True)
class PowerExp:
    """r^d e^{-b r}, b > 0"""

    d: Real
    b: Real
    variant = "PowerExp"

    def __post_init__(self):
        object.__setattr__(self, "d", exact(self.d))
        object.__setattr__(self, "b", exact(self.b))
        if self.b <= 0:
            raise InvalidSpec(f"PowerExp needs b > 0, got {self.b}")


@dataclass(frozen=True)
class Truncated:
    """``inner`` on the ``side`` of ``support_radius`` (origin: r <= R, infinity: r > R), zero elsewhere."""

    inner: "Potential"
    support_radius: Real
    side: Side
    variant = "Truncated"

    def __post_init__(self):
        object.__setattr__(self, "support_radius", exact(self.support_radius))
        object.__setattr__(self, "side", Side(self.side))
        if self.support_radius <= 0:
            raise InvalidSpec("Truncation radius must be positive")


@dataclass(frozen=True)
class Sum:
    first: "Potential"
    second: "Potential"
    variant = "Sum"

    def __post_init__(self):
        for part in (self.first, self.second):
            if isinstance(part, Sum):
                raise InvalidSpec("Sum supports at most two terms")


@dataclass(frozen=True)
class Product:
    first: "Potential"
    second: "Potential"
    variant = "Product"


Potential = Union[Zero, Power, ExpInvR, ExpR, PowerExp, Truncated, Sum, Product]
