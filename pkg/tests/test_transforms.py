"""Test the X-ray and plane transforms, their normalizations, and the functions on
lines built from a velocity/pressure pair
"""

import math

import numpy as np
import pytest

from igeuler.fields import SmoothField, zero_field
from igeuler.fields.families import offset_scalar_bump, random_potential, random_tensor_field
from igeuler.fields.solutions import q_zero, radial_scalar, symmetric_gradient
from igeuler.geometry import LineNH, plane_frame
from igeuler.transforms import GrassmannFunction, NormalizationError, convert
from igeuler.transforms.euler import (
    build_F,
    build_w,
    halfplane_energy,
    iq_zero_function,
    iq_zero_lineintegral,
    plane_energy,
    plane_flux,
    w0_ray,
    w_first_order,
    w_function,
    w_mass,
    xray_2d,
)
from igeuler.transforms.xray import (
    phi_chart,
    radon_plane,
    xray,
    xray_function,
    xray_mass,
    xray_unit,
)
from igeuler.utils.types import Convention, HalfPlaneSelector

# ∫ (1 − t²)⁴ dt over [−1, 1]
POLY_CHORD = 256 / 315


@pytest.fixture(scope="module")
def poly_scalar(polybump):
    return radial_scalar(polybump)


def test_convert():
    line = LineNH(0.0, 0.0, 1.0, 1.0)
    k = math.sqrt(3.0)
    assert convert(2.0, line, 0, Convention.CHART, Convention.UNIT_SPEED) == pytest.approx(2 * k)
    assert convert(2.0, line, 1, Convention.CHART, Convention.UNIT_SPEED) == pytest.approx(2.0)
    assert convert(2.0, line, 2, Convention.CHART, Convention.UNIT_SPEED) == pytest.approx(2 / k)
    assert convert(2.0, line, 2, Convention.UNIT_SPEED, Convention.CHART) == pytest.approx(2 * k)
    assert convert(2.0, line, 2, Convention.CHART, Convention.CHART) == 2.0


def test_xray_normalizations(poly_scalar, quadrature):
    vertical = LineNH(0.0, 0.0, 0.0, 0.0)
    assert xray(poly_scalar, vertical, quadrature) == pytest.approx(POLY_CHORD)
    assert xray_unit(poly_scalar, vertical, quadrature) == pytest.approx(POLY_CHORD)

    # a tilted line through the origin sees the same radial profile in arc length
    tilted = LineNH(0.0, 0.0, 1.0, 0.0)
    assert xray_unit(poly_scalar, tilted, quadrature) == pytest.approx(POLY_CHORD)
    assert xray(poly_scalar, tilted, quadrature) == pytest.approx(POLY_CHORD / math.sqrt(2))
    assert xray(poly_scalar, LineNH(1.5, 0.0, 0.0, 0.0), quadrature) == 0.0


@pytest.mark.parametrize("rank", [0, 1, 2])
def test_phi_chart_matches_chart_integral(rank, quadrature, rng):
    field = random_tensor_field(rank, rng)
    line = LineNH(0.1, -0.2, 0.8, -1.1)
    value = phi_chart(field, (line.y1, line.y2), (line.a1, line.a2), quadrature)
    assert value == pytest.approx(xray(field, line, quadrature), rel=1e-8, abs=1e-12)
    unit = xray_unit(field, line, quadrature)
    assert convert(value, line, rank, Convention.CHART, Convention.UNIT_SPEED) == pytest.approx(
        unit, rel=1e-8, abs=1e-12
    )


def test_phi_chart_detects_disagreement(scalar_bump, quadrature, mocker):
    mocker.patch("igeuler.transforms.xray.xray", return_value=123.0)
    with pytest.raises(NormalizationError, match="chart integral"):
        phi_chart(scalar_bump, (0.0, 0.0), (0.2, 0.1), quadrature)
    # unchecked evaluation skips the comparison
    phi_chart(scalar_bump, (0.0, 0.0), (0.2, 0.1), quadrature, check=False)


@pytest.mark.parametrize("rank", [0, 1])
def test_xray_kills_symmetric_gradients(rank, quadrature, rng):
    gradient = symmetric_gradient(random_potential(rank, rng))
    for line in (LineNH(0.1, 0.0, 0.3, -0.4), LineNH(-0.2, 0.3, 1.5, 0.5)):
        mass = xray_mass(gradient, line, quadrature)
        assert abs(xray(gradient, line, quadrature)) <= 1e-8 * mass + 1e-15


def test_grassmann_function(scalar_bump, quadrature):
    func = xray_function(scalar_bump, quadrature, memoize=True)
    assert func.convention == Convention.UNIT_SPEED
    assert func.sources == (scalar_bump,)
    line = LineNH(0.1, 0.0, 0.2, 0.3)
    value = func(line)
    assert func.at(0.1, 0.0, 0.2, 0.3) == value
    # coordinates within the memo quantum share one entry
    assert func(line.shifted((1e-12, 0.0, 0.0, 0.0))) == value
    assert func.memo_size == 1
    func.clear_memo()
    assert func.memo_size == 0

    assert func.scaled(2.0)(line) == pytest.approx(2 * value)
    chart = xray_function(scalar_bump, quadrature, Convention.CHART)
    assert chart(line) == pytest.approx(value / line.k)
    assert not chart.memoize
    assert chart.with_memo().memoize

    plain = GrassmannFunction(lambda m: m.y1 + m.a2, "affine")
    assert plain.at(1.0, 0.0, 0.0, 2.0) == 3.0
    assert "affine" in repr(plain)


def test_grassmann_memo_is_bounded(mocker):
    spy = mocker.Mock(side_effect=lambda m: m.y1 + 2 * m.y2)
    func = GrassmannFunction(spy, "affine", memoize=True, memo_limit=2)
    lines = [LineNH(0.1 * i, 0.0, 0.0, 0.0) for i in range(3)]
    for line in lines:
        func(line)
    assert func.memo_size == 2
    # the oldest line was evicted and is evaluated again
    assert func(lines[0]) == pytest.approx(0.0)
    assert spy.call_count == 4
    func(lines[2])
    assert spy.call_count == 4
    assert func.with_memo().memo_limit == 2
    with pytest.raises(ValueError, match="positive"):
        GrassmannFunction(spy, "affine", memo_limit=0)


def test_radon_plane(poly_solution, quadrature):
    v, _ = poly_solution
    with pytest.raises(ValueError, match="rank-2"):
        radon_plane(v, plane_frame(np.array([0.0, 0.0, 1.0]), 0.0), quadrature)
    assert radon_plane(zero_field(2), plane_frame(np.ones(3), 0.1), quadrature) == 0.0

    # f·δ restricted to any plane has trace 2f; ∫ (1 − |x|²)⁸ over a plane at
    # distance d is π(1 − d²)⁹/9
    isotropic = SmoothField(
        2,
        lambda x: np.clip(1.0 - np.einsum("...i,...i->...", x, x), 0.0, None)[..., None, None] ** 8
        * np.eye(3),
        1.0,
    )
    d = 0.25
    plane = plane_frame(np.array([0.3, -0.2, 1.0]), d)
    expected = 2 * math.pi * (1 - d * d) ** 9 / 9
    assert radon_plane(isotropic, plane, quadrature) == pytest.approx(expected, rel=1e-6)


def test_iq_zero_matches_xray_of_q0(vector_field, scalar_bump, quadrature):
    q0 = q_zero(vector_field, scalar_bump)
    func = iq_zero_function(vector_field, scalar_bump, quadrature)
    for line in (LineNH(0.0, 0.1, 0.5, 0.5), LineNH(0.3, -0.2, -1.2, 0.4)):
        expected = xray_unit(q0, line, quadrature)
        mass = xray_mass(q0, line, quadrature)
        assert abs(iq_zero_lineintegral(vector_field, scalar_bump, line, quadrature) - expected) <= 1e-9 * mass + 1e-14
        assert func(line) == pytest.approx(iq_zero_lineintegral(vector_field, scalar_bump, line, quadrature))


def test_w_variants_agree_on_solutions(bump_solution, quadrature):
    v, _ = bump_solution
    line = LineNH(0.2, -0.1, 0.6, -0.4)
    scale = w_mass(v, line, quadrature)
    assert scale > 0.0
    h2 = build_w(v, line, quadrature, HalfPlaneSelector.H2)
    assert abs(build_w(v, line, quadrature, HalfPlaneSelector.H1) - h2) <= 1e-6 * scale
    turned = build_w(v, line, quadrature, HalfPlaneSelector.ROTATED, 0.7)
    assert abs(turned - h2) <= 1e-6 * scale
    assert w_function(v, quadrature)(line) == h2


@pytest.mark.parametrize("which", [HalfPlaneSelector.H1, HalfPlaneSelector.H2])
def test_w_first_order(vector_field, quadrature, which):
    small = LineNH(0.1, -0.05, 0.004, -0.007)
    exact = build_w(vector_field, small, quadrature, which)
    approx = w_first_order(vector_field, small, which, quadrature)
    bound = (small.a1**2 + small.a2**2) * halfplane_energy(vector_field, small, quadrature, which)
    assert abs(exact - approx) <= 2.0 * bound
    with pytest.raises(ValueError, match="H1 and H2"):
        w_first_order(vector_field, small, HalfPlaneSelector.ROTATED, quadrature)


def test_flux_and_w0(bump_solution, quadrature):
    v, _ = bump_solution
    # the radial flux (−v²v³, v¹v³) is odd in x₃ and integrates to zero
    assert build_F(v, 0.2, 0.3, quadrature) == pytest.approx([0.0, 0.0], abs=1e-15)
    assert build_F(v, 2.0, 0.0, quadrature) == pytest.approx([0.0, 0.0])
    origin = (0.1, 0.2)
    assert w0_ray(v, origin, (1.0, 0.0), quadrature) == pytest.approx(
        w0_ray(v, origin, (0.0, 1.0), quadrature), abs=1e-12
    )
    assert xray_2d(v, origin, (1.0, 1.0), quadrature) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError, match="unit vector"):
        w0_ray(v, origin, (1.0, 1.0), quadrature)


def test_plane_flux_vanishes_for_solutions(bump_solution, quadrature):
    v, _ = bump_solution
    plane = plane_frame(np.array([0.2, 0.5, -1.0]), 0.3)
    energy = plane_energy(v, plane, quadrature)
    assert energy > 0.0
    for z in (plane.b1, plane.b2, (plane.b1 + plane.b2) / math.sqrt(2)):
        assert abs(plane_flux(v, plane, z, quadrature)) <= 1e-7 * energy


def test_offset_bump_xray_is_translation_covariant(quadrature):
    centered = offset_scalar_bump(np.zeros(3), 0.6, 1.0)
    shifted = offset_scalar_bump(np.array([0.1, 0.2, 0.0]), 0.6, 1.0)
    line = LineNH(0.05, -0.1, 0.3, 0.2)
    moved = line.shifted((0.1, 0.2, 0.0, 0.0))
    assert xray_unit(shifted, moved, quadrature) == pytest.approx(
        xray_unit(centered, line, quadrature), rel=1e-9
    )
