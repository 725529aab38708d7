"""
Exponent functions and theorem thresholds.

All functions are pure. Rational inputs give exact Fraction results; float
inputs give float results.
"""
import math
from typing import Tuple, Union

from scipy.special import gamma as gamma_fn

from radembed.core.errors import UndefinedAtPole
from radembed.core.numbers import Real, exact
from radembed.models.domain import Dimension

DimensionLike = Union[Dimension, int]


def dim(n: DimensionLike) -> int:
    """Validated integer dimension."""
    if isinstance(n, Dimension):
        return n.n
    return Dimension(n).n


def two_star(n: DimensionLike) -> Real:
    return Dimension(dim(n)).two_star


def alpha_star(beta, n: DimensionLike) -> Real:
    """max{2β − 1 − N/2, −(1−β)N}"""
    N = dim(n)
    beta = exact(beta)
    return max(2 * beta - 1 - exact(N) / 2, -(1 - beta) * N)


def q_star(alpha, beta, n: DimensionLike) -> Real:
    """2(α − 2β + N)/(N − 2)"""
    N = dim(n)
    alpha, beta = exact(alpha), exact(beta)
    return 2 * (alpha - 2 * beta + N) / exact(N - 2)


def q_sub(alpha, beta, gamma, n: DimensionLike) -> Real:
    """2(α − γβ + N)/(N − γ), undefined at γ = N."""
    N = dim(n)
    alpha, beta, gamma = exact(alpha), exact(beta), exact(gamma)
    if gamma == N:
        raise UndefinedAtPole(f"q_sub is undefined at gamma = N = {N}")
    return 2 * (alpha - gamma * beta + N) / (N - gamma)


def q_subsub(alpha, beta, gamma, n: DimensionLike) -> Real:
    """2(2α + (1−2β)γ + 2(N−1))/(2(N−1) − γ), undefined at γ = 2N − 2."""
    N = dim(n)
    alpha, beta, gamma = exact(alpha), exact(beta), exact(gamma)
    if gamma == 2 * N - 2:
        raise UndefinedAtPole(f"q_subsub is undefined at gamma = 2N - 2 = {2 * N - 2}")
    return 2 * (2 * alpha + (1 - 2 * beta) * gamma + 2 * (N - 1)) / (2 * (N - 1) - gamma)


def alpha_thresholds(beta, gamma, n: DimensionLike) -> Tuple[Real, Real, Real]:
    """(α₁, α₂, α₃) = (−(1−β)γ, −(1−β)N, −(N + (1−2β)γ)/2)."""
    N = dim(n)
    beta, gamma = exact(beta), exact(gamma)
    alpha1 = -(1 - beta) * gamma
    alpha2 = -(1 - beta) * N
    alpha3 = -(N + (1 - 2 * beta) * gamma) / 2
    return alpha1, alpha2, alpha3


def thm1_threshold(alpha, beta, n: DimensionLike) -> Real:
    """Lower end of the admissible q₂ half-line from power growth alone."""
    beta = exact(beta)
    return max(exact(1), 2 * beta, q_star(alpha, beta, n))


def thm1_threshold_piecewise(alpha, beta, n: DimensionLike) -> Real:
    beta = exact(beta)
    if exact(alpha) >= alpha_star(beta, n):
        return q_star(alpha, beta, n)
    return max(exact(1), 2 * beta)


def thm2_threshold(alpha, beta, gamma, n: DimensionLike) -> Real:
    """Lower end of the q₂ half-line when r^γ V is bounded below at infinity (γ ≤ 2)."""
    beta, gamma = exact(beta), exact(gamma)
    if gamma > 2:
        raise ValueError(f"thm2_threshold needs gamma <= 2, got {gamma}")
    return max(exact(1), 2 * beta, q_sub(alpha, beta, gamma, n), q_subsub(alpha, beta, gamma, n))


def thm2_threshold_piecewise(alpha, beta, gamma, n: DimensionLike) -> Real:
    alpha, beta, gamma = exact(alpha), exact(beta), exact(gamma)
    if gamma > 2:
        raise ValueError(f"thm2_threshold needs gamma <= 2, got {gamma}")
    alpha1, alpha2, alpha3 = alpha_thresholds(beta, gamma, n)
    if alpha >= alpha1:
        return q_subsub(alpha, beta, gamma, n)
    if alpha >= max(alpha2, alpha3):
        return q_sub(alpha, beta, gamma, n)
    return max(exact(1), 2 * beta)


def scaling_exponent(alpha, beta, q, n: DimensionLike) -> Real:
    """
    Exponent δ in the R^δ decay of the weighted mass of concentrating profiles.

    δ = (N − 2)(q*(α, β) − q)/2. Positive δ means the mass vanishes as R → 0
    (compactness at the origin), negative δ means it vanishes as R → ∞.
    """
    N = dim(n)
    return (N - 2) * (q_star(alpha, beta, N) - exact(q)) / 2


def sobolev_constant(n: DimensionLike) -> float:
    """Sharp constant S_N in ‖u‖_{2*} ≤ S_N ‖∇u‖₂."""
    N = dim(n)
    return (math.pi * N * (N - 2)) ** -0.5 * (gamma_fn(N) / gamma_fn(N / 2)) ** (1.0 / N)


def sphere_area(n: DimensionLike) -> float:
    """Surface measure ω_{N−1} of the unit sphere in R^N."""
    N = dim(n)
    return 2 * math.pi ** (N / 2) / gamma_fn(N / 2)
