import random
from fractions import Fraction

import pytest

from radembed.core.errors import EmptyRange, InvalidSpec
from radembed.core.numbers import POS_INF
from radembed.models.domain import CaseTag, QInterval
from radembed.services.export import render_svg, write_csv, write_svg
from radembed.services.exponents import q_star
from radembed.services.region import (
    boundary_distance,
    boundary_export,
    build_region,
    membership,
    region_case,
    slice_interval,
    xi_feasible_brute,
    xi_search,
    xi_subcase,
)

F = Fraction


def _rational(rng, lo, hi, denominator=32):
    return F(lo) + F(rng.randint(0, int((F(hi) - F(lo)) * denominator)), denominator)


def test_region_case_tags():
    assert region_case(2, 3) == CaseTag.GAMMA_BELOW_N
    assert region_case(3, 3) == CaseTag.GAMMA_EQ_N
    assert region_case(F(7, 2), 3) == CaseTag.GAMMA_BETWEEN
    assert region_case(4, 3) == CaseTag.GAMMA_EQ_2NM2
    assert region_case(5, 3) == CaseTag.GAMMA_ABOVE
    assert region_case(POS_INF, 3) == CaseTag.GAMMA_ABOVE
    with pytest.raises(InvalidSpec):
        region_case(1, 3)


def test_build_region_rejects_large_beta():
    with pytest.raises(InvalidSpec):
        build_region(F(3, 2), 3, 3)


def test_slice_between_n_and_2n_minus_2():
    spec = build_region(0, F(7, 2), 3)
    assert slice_interval(-3, spec) == QInterval.of(1, 6)
    assert membership(-3, 4, spec)
    assert not membership(-3, 6, spec)
    assert not membership(-3, 1, spec)


def test_slice_above_2n_minus_2_at_beta_one():
    spec = build_region(1, 5, 3)
    assert slice_interval(0, spec) == QInterval.halfline(2)
    assert membership(0, F(201, 100), spec)
    assert not membership(0, 2, spec)


def test_slice_at_2n_minus_2_has_vertical_threshold():
    spec = build_region(1, 4, 3)
    assert slice_interval(-1, spec).is_empty
    assert slice_interval(0, spec).is_empty
    assert slice_interval(1, spec) == QInterval.halfline(2)


def test_gamma_infinity_slice():
    spec = build_region(F(3, 4), POS_INF, 3)
    assert slice_interval(-100, spec) == QInterval.halfline(F(3, 2))


def test_hardy_case_matches_power_growth():
    rng = random.Random(3)
    for _ in range(300):
        N = rng.randint(3, 7)
        alpha, beta = _rational(rng, -3 * N, 3 * N), _rational(rng, 0, 1)
        expected = QInterval.of(max(F(1), 2 * beta), q_star(alpha, beta, N))
        assert slice_interval(alpha, build_region(beta, 2, N)) == expected


def test_hardy_case_with_floats():
    spec = build_region(0.25, 2, 4)
    interval = slice_interval(0.5, spec)
    assert interval.lo == pytest.approx(1.0)
    assert interval.hi == pytest.approx(q_star(0.5, 0.25, 4))


def test_region_grows_with_gamma():
    rng = random.Random(5)
    for _ in range(300):
        N = rng.randint(3, 6)
        beta = _rational(rng, 0, 1)
        g1, g2 = sorted(_rational(rng, 2, 3 * N) for _ in range(2))
        alpha = _rational(rng, -2 * N, 2 * N)
        assert slice_interval(alpha, build_region(beta, g2, N)).includes(
            slice_interval(alpha, build_region(beta, g1, N))
        )


def test_negative_beta_reduces_to_shifted_alpha():
    rng = random.Random(9)
    for _ in range(300):
        N = rng.randint(3, 6)
        beta = _rational(rng, -1, 0)
        gamma = _rational(rng, 2, 3 * N)
        alpha = _rational(rng, -2 * N, 2 * N)
        shifted = slice_interval(alpha - beta * gamma, build_region(0, gamma, N))
        assert slice_interval(alpha, build_region(beta, gamma, N)) == shifted


def test_boundary_distance():
    spec = build_region(0, F(7, 2), 3)
    assert boundary_distance(-3, 4, spec) == pytest.approx(2.0)
    assert boundary_distance(-3, F(11, 2), spec) == pytest.approx(0.5)
    spec = build_region(1, 4, 3)
    assert boundary_distance(F(1, 10), 10, spec) == pytest.approx(0.1)


def test_xi_window():
    search = xi_search(0)
    assert (search.xi_lo, search.xi_hi) == (F(1, 2), 1)
    search = xi_search(1)
    assert (search.xi_lo, search.xi_hi) == (0, 0)
    with pytest.raises(InvalidSpec):
        xi_search(0, grid_points=10)


def test_xi_brute_agrees_with_closed_form():
    search = xi_search(0)
    assert xi_feasible_brute(-3, 0, F(7, 2), 4, search, 3)
    assert not xi_feasible_brute(-3, 0, F(7, 2), 7, search, 3)


def test_xi_brute_sampled_agreement():
    rng = random.Random(21)
    checked = 0
    while checked < 100:
        N = rng.randint(3, 6)
        beta = _rational(rng, 0, F(31, 32))
        gamma = _rational(rng, F(33, 16), 3 * N)
        alpha = _rational(rng, -2 * N, 2 * N)
        q = _rational(rng, 1, 4 * N)
        spec = build_region(beta, gamma, N)
        if boundary_distance(alpha, q, spec) <= 1e-6:
            continue
        brute = xi_feasible_brute(alpha, beta, gamma, q, xi_search(beta), N)
        assert brute == membership(alpha, q, spec), (alpha, beta, gamma, q, N)
        checked += 1


def test_xi_brute_rejects_hardy_gamma():
    with pytest.raises(InvalidSpec):
        xi_feasible_brute(0, 0, 2, 3, xi_search(0), 3)


def test_xi_subcase():
    assert xi_subcase(0, 0, 3, 3) is None
    assert xi_subcase(-10, 0, 5, 3) == "I"
    assert xi_subcase(0, 0, 5, 3) == "II"


def test_boundary_export_joint_label_at_gamma_two():
    export = boundary_export(build_region(0, 2, 3), (-3, 3), 61)
    upper = [c for c in export.curves if c.kind == "upper"]
    lower = [c for c in export.curves if c.kind == "lower"]
    assert [c.label for c in upper] == ["q_*=q_**"]
    assert [c.label for c in lower] == ["max{1,2β}"]
    assert all(alpha > -2.5 for alpha, _ in upper[0].points)


def test_boundary_export_vertical_line():
    export = boundary_export(build_region(0, 3, 3), (-5, 3), 41)
    vertical = [c for c in export.curves if c.kind == "vertical"]
    assert len(vertical) == 1
    assert all(alpha == pytest.approx(-3.0) for alpha, _ in vertical[0].points)
    assert export.thresholds["α₂"] == pytest.approx(-3.0)


def test_boundary_export_vertical_labels(tmp_path):
    export = boundary_export(build_region(0, 3, 3), (-5, 3), 41)
    vertical = [c for c in export.curves if c.kind == "vertical"]
    assert vertical[0].label == "α₁=α₂=α₃"
    names = [path.name for path in write_csv(export, tmp_path)]
    assert any("vertical_alpha1_alpha2_alpha3" in name for name in names)

    export = boundary_export(build_region(1, 4, 3), (-2, 3), 41)
    vertical = [c for c in export.curves if c.kind == "vertical"]
    assert [c.label for c in vertical] == ["α₁"]
    assert all(alpha == pytest.approx(0.0) for alpha, _ in vertical[0].points)


def test_boundary_export_sides_of_curves():
    eps = F(1, 10 ** 6)
    for beta, gamma in ((0, F(7, 2)), (F(1, 2), 5), (0, F(5, 2)), (1, 5)):
        spec = build_region(beta, gamma, 3)
        export = boundary_export(spec, (-4, 4), 33)
        for curve in export.curves:
            if curve.kind == "vertical":
                continue
            for alpha, q in curve.points:
                interval = slice_interval(F(alpha), spec)
                if float(interval.hi) - float(interval.lo) < 1e-3:
                    continue
                inward = eps if curve.kind == "lower" else -eps
                boundary = interval.lo if curve.kind == "lower" else interval.hi
                assert membership(F(alpha), boundary + inward, spec)
                assert not membership(F(alpha), boundary - inward, spec)


def test_boundary_export_rejects_degenerate_range():
    with pytest.raises(EmptyRange):
        boundary_export(build_region(0, 3, 3), (1, 1), 10)
    with pytest.raises(EmptyRange):
        boundary_export(build_region(0, 3, 3), (0, 1), 1)


def test_write_csv_and_svg(tmp_path):
    export = boundary_export(build_region(0, F(7, 2), 3), (-4, 4), 50)
    paths = write_csv(export, tmp_path / "csv")
    assert paths
    for path in paths:
        assert path.name.endswith("_GammaBetween.csv")
        assert path.read_text().splitlines()[0] == "alpha,q,label"

    svg_path = write_svg(export, tmp_path / "region.svg")
    assert svg_path.name == "region_GammaBetween.svg"
    text = svg_path.read_text()
    assert "<svg" in text and "</svg>" in text
    assert "<polyline" in render_svg(export)
