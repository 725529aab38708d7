import math

import numpy as np
import pytest

from radembed.core.errors import BranchDomain, DegenerateFit, EmbeddingError, InvalidSpec, PreconditionViolated, ZeroFunction
from radembed.models.domain import Side
from radembed.models.potential import Power, Zero
from radembed.services.exponents import scaling_exponent, sobolev_constant
from radembed.services.numerics import (
    BumpFamily,
    PointwiseMode,
    RadialFunction,
    RadialGrid,
    annulus_check,
    bump_profile,
    decay_slope_fit,
    default_grid,
    h1v_norm,
    lemma_omega_check,
    pointwise_ratio,
    r_lower_bound,
    s_lower_bound,
    sobolev_ratio,
    sum_norm_split,
    weighted_lq,
)

ONE = Power(1, 0)
SMALL_FAMILY = BumpFamily((0.125, 0.25, 0.5))
RADII = [2.0 ** -j for j in range(1, 7)]


def _bump(scale=1.0, n=3, grid=None):
    return BumpFamily((scale,)).member(scale, n, grid or default_grid())


def _zero(grid=None):
    grid = grid or default_grid()
    return RadialFunction.from_values(grid, np.zeros(grid.count))


def _window_max(u, r_lo, r_hi):
    window = u.grid.index_range(r_lo, r_hi)
    return float(np.max(np.abs(u.values[window])))


def test_grid_validation():
    with pytest.raises(InvalidSpec):
        RadialGrid(np.linspace(1.0, 2.0, 10))
    with pytest.raises(InvalidSpec):
        RadialGrid(np.linspace(2.0, 1.0, 100))
    with pytest.raises(InvalidSpec):
        RadialFunction.from_values(default_grid(), np.zeros(3))
    grid = RadialGrid.log_spaced(1e-3, 1e3, 100)
    window = grid.index_range(1.0, 10.0)
    assert np.all(grid.nodes[window] >= 1.0)
    assert np.all(grid.nodes[window] <= 10.0)


def test_bump_profile_support():
    values = bump_profile(np.array([0.0, 1.0, 2.0, 3.0]))
    assert values[0] == 0.0 and values[2] == 0.0 and values[3] == 0.0
    assert values[1] == pytest.approx(math.exp(-1))


def test_tent_profile_norms():
    # r = 1 is a node of this grid
    grid = RadialGrid.log_spaced(count=2 ** 14)
    u = RadialFunction.from_profile(grid, lambda r: np.maximum(0.0, 1.0 - r))
    assert h1v_norm(u, Zero(), 3) == pytest.approx(math.sqrt(4 * math.pi / 3), rel=1e-3)
    assert weighted_lq(u, ONE, 2, n=3) == pytest.approx(4 * math.pi / 30, rel=1e-3)


def test_zero_function_norms():
    u = _zero()
    assert h1v_norm(u, Power(1, -1), 3) == 0.0
    assert weighted_lq(u, ONE, 3, n=3) == 0.0
    assert weighted_lq(_bump(), ONE, 3, 1.0, 1.0, 3) == 0.0
    with pytest.raises(InvalidSpec):
        weighted_lq(u, ONE, 1, n=3)


def test_gradient_norm_invariant_under_aligned_scaling():
    grid = default_grid()
    step = grid.nodes[1] / grid.nodes[0]
    norms = [h1v_norm(_bump(step ** j, 3, grid), Zero(), 3) for j in (-400, 0, 400)]
    assert max(norms) - min(norms) <= 1e-6 * max(norms)


def test_scaling_slope_changes_sign_at_critical_exponent():
    for q in (4, 8):
        values = [s_lower_bound(q, R, Side.ORIGIN, Zero(), ONE, SMALL_FAMILY, 3) for R in RADII]
        slope = decay_slope_fit(RADII, values)
        assert slope == pytest.approx(float(scaling_exponent(0, 0, q, 3)), abs=0.05)


def test_origin_bound_grows_with_radius():
    values = [s_lower_bound(4, R, Side.ORIGIN, Zero(), ONE, SMALL_FAMILY, 3) for R in reversed(RADII)]
    assert all(a <= b for a, b in zip(values, values[1:]))


def test_s_bound_below_r_bound():
    family = BumpFamily((0.25, 0.5, 1.0, 2.0))
    v, k = Power(1, -1), Power(1, 1)
    for side, R in ((Side.ORIGIN, 0.5), (Side.INFINITY, 2.0)):
        s_value = s_lower_bound(3.0, R, side, v, k, family, 3)
        r_value = r_lower_bound(3.0, R, side, v, k, family, 3)
        assert 0 < s_value <= r_value * (1 + 1e-9)


def test_s_lower_bound_rejects_bad_radius():
    with pytest.raises(InvalidSpec):
        s_lower_bound(3, 0.0, Side.ORIGIN, Zero(), ONE, SMALL_FAMILY, 3)


def test_decay_slope_fit():
    radii = np.geomspace(1e-3, 1.0, 8)
    assert decay_slope_fit(radii, 3 * radii ** 2) == pytest.approx(2.0)
    assert decay_slope_fit(radii, np.full(8, 5.0)) == pytest.approx(0.0, abs=1e-12)
    noisy = radii ** -1 * (1 + 0.01 * (-1) ** np.arange(8))
    assert decay_slope_fit(radii, noisy) == pytest.approx(-1.0, abs=0.05)
    with pytest.raises(DegenerateFit):
        decay_slope_fit(radii[:3], radii[:3])
    with pytest.raises(DegenerateFit):
        decay_slope_fit(radii, np.zeros(8))


def test_pointwise_ratio_ni_scale_invariance():
    grid = default_grid()
    step = grid.nodes[1] / grid.nodes[0]
    for n in (3, 4):
        ratios = [pointwise_ratio(_bump(step ** j, n, grid), PointwiseMode.ni(), n) for j in (-800, 0, 800)]
        assert max(ratios) - min(ratios) <= 1e-6 * max(ratios)


def test_pointwise_ratio_modes():
    u = _bump()
    with pytest.raises(ZeroFunction):
        pointwise_ratio(_zero(), PointwiseMode.ni(), 3)
    with pytest.raises(PreconditionViolated):
        pointwise_ratio(u, PointwiseMode.origin(3.0, 1.0, 1.0), 3)
    assert pointwise_ratio(u, PointwiseMode.origin(3.0, 1.0, 3.0), 3) > 0
    assert pointwise_ratio(u, PointwiseMode.infinity(1.0, 1.0, 0.5), 3, Power(1, -1)) > 0
    assert pointwise_ratio(u, PointwiseMode.infinity(1.0, 1.0, 5.0), 3) == 0.0


def test_lemma_small_beta_branch():
    u = h = _bump()
    m = _window_max(u, 0.5, 1.5)
    report = lemma_omega_check(u, h, (0.5, 1.5), 0.0, 0.0, 3.0, Zero(), ONE, m, 0.0, 3)
    assert report.case_label == "beta<=1/2"
    assert report.holds
    assert report.lhs > 0
    assert report.constants["S_N"] == pytest.approx(sobolev_constant(3))


def test_lemma_intermediate_beta_branch():
    u, h = _bump(1.0), _bump(0.75)
    m = _window_max(u, 0.3, 1.8)
    report = lemma_omega_check(u, h, (0.3, 1.8), 0.0, 0.75, 3.0, Power(1, -2), Power(1, -1), m, 0.0, 3)
    assert report.case_label == "1/2<beta<1"
    assert report.holds


def test_lemma_beta_one_branch():
    u = h = _bump()
    m = _window_max(u, 0.3, 1.8)
    report = lemma_omega_check(u, h, (0.3, 1.8), 0.0, 1.0, 3.0, Power(1, -2), Power(1, -2), m, 0.0, 3)
    assert report.case_label == "beta=1"
    assert report.holds


def test_lemma_errors():
    u = _bump()
    with pytest.raises(BranchDomain):
        lemma_omega_check(u, u, (0.5, 1.5), 0.0, 1.0, 2.0, Power(1, -2), ONE, 1.0, 0.0, 3)
    with pytest.raises(PreconditionViolated):
        lemma_omega_check(u, u, (0.5, 1.5), 0.0, 0.0, 3.0, Zero(), ONE, 1e-6, 0.0, 3)
    with pytest.raises(PreconditionViolated):
        lemma_omega_check(u, u, (1.0, 1.0), 0.0, 0.0, 3.0, Zero(), ONE, 1.0, 0.0, 3)


def test_lemma_zero_function_holds():
    report = lemma_omega_check(_zero(), _bump(), (0.5, 1.5), 0.0, 0.0, 3.0, Zero(), ONE, 1.0, 0.0, 3)
    assert report.lhs == 0.0
    assert report.holds


def test_annulus_check_branches():
    u = h = _bump()
    low = annulus_check(u, h, 0.2, 1.5, 1.5, ONE, 2.0, Zero(), 3)
    assert low.case_label == "q<=q_tilde"
    assert low.constants["q_tilde"] == pytest.approx(5 / 3)
    assert low.holds
    high = annulus_check(u, h, 0.2, 1.5, 3.0, ONE, 2.0, Zero(), 3)
    assert high.case_label == "q>q_tilde"
    assert high.holds


def test_annulus_check_zero_function_and_errors():
    assert annulus_check(_zero(), _bump(), 0.2, 1.5, 1.5, ONE, 2.0, Zero(), 3).holds
    with pytest.raises(InvalidSpec):
        annulus_check(_bump(), _bump(), 1.5, 0.2, 1.5, ONE, 2.0, Zero(), 3)
    with pytest.raises(PreconditionViolated):
        annulus_check(_bump(), _bump(), 0.2, 1.5, 1.5, ONE, 1.0, Zero(), 3)


def test_sum_norm_split():
    u = _bump(0.5)
    global_2 = weighted_lq(u, ONE, 2, n=3) ** 0.5
    global_4 = weighted_lq(u, ONE, 4, n=3) ** 0.25
    assert sum_norm_split(u, ONE, 2, 4, 3) <= min(global_2, global_4) * (1 + 1e-9)
    global_3 = weighted_lq(u, ONE, 3, n=3) ** (1 / 3)
    assert sum_norm_split(u, ONE, 3, 3, 3) <= global_3 * (1 + 1e-9)
    assert sum_norm_split(_zero(), ONE, 2, 4, 3) == 0.0
    with pytest.raises(InvalidSpec):
        sum_norm_split(u, ONE, 4, 2, 3)


def test_sobolev_ratio_below_sharp_constant():
    for n in (3, 4, 5):
        assert 0 < sobolev_ratio(_bump(1.0, n), n) < sobolev_constant(n)
    with pytest.raises(ZeroFunction):
        sobolev_ratio(_zero(), 3)


def test_error_types_are_documented():
    for error in (DegenerateFit, ZeroFunction, PreconditionViolated, BranchDomain):
        assert issubclass(error, EmbeddingError)
        assert error.__doc__ and error.__doc__.strip()
