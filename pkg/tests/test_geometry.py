"""Test line coordinates, half-plane frames and plane frames"""

import math

import numpy as np
import pytest

from igeuler.geometry import (
    ChartError,
    LineNH,
    chart_from_point_direction,
    half_plane_frame,
    k_factors,
    plane_frame,
    rotate_line,
    sample_lines,
    sample_planes,
)
from igeuler.utils.types import HalfPlaneSelector


def test_chart_from_point_direction():
    line = chart_from_point_direction(np.array([1.0, 2.0, 3.0]), np.array([1.0, 1.0, 2.0]))
    assert line.coords == pytest.approx((-0.5, 0.5, 0.5, 0.5))
    # the point lies on the line at parameter t = x₃
    assert line.point(3.0) == pytest.approx([1.0, 2.0, 3.0])

    with pytest.raises(ChartError, match="horizontal"):
        chart_from_point_direction(np.zeros(3), np.array([1.0, 0.0, 0.0]))


@pytest.mark.parametrize(
    ("x", "xi", "expected"),
    [
        ((0.0, 0.0, 1.0), (1.0, 1.0, 1.0), (-1.0, -1.0, 1.0, 1.0)),
        ((0.0, 0.0, 0.0), (0.0, 0.0, 2.0), (0.0, 0.0, 0.0, 0.0)),
        ((1.0, 2.0, 3.0), (-2.0, -2.0, -4.0), (-0.5, 0.5, 0.5, 0.5)),
    ],
)
def test_chart_examples(x, xi, expected):
    line = chart_from_point_direction(np.array(x), np.array(xi))
    assert line.coords == pytest.approx(expected)


def test_line_properties():
    line = LineNH(0.5, 0.0, 1.0, 1.0)
    assert line.k == pytest.approx(math.sqrt(3.0))
    assert np.linalg.norm(line.unit_direction) == pytest.approx(1.0)
    assert k_factors(line) == pytest.approx((math.sqrt(3.0), math.sqrt(2.0), math.sqrt(2.0)))
    assert LineNH(0.5, 0.0, 0.0, 0.0).distance_to_origin() == pytest.approx(0.5)
    assert line.shifted((0.1, 0.2, 0.0, -1.0)).coords == pytest.approx((0.6, 0.2, 1.0, 0.0))


def test_clip_to_ball():
    assert LineNH(0.0, 0.0, 0.0, 0.0).clip_to_ball(1.0) == pytest.approx((-1.0, 1.0))
    # slope 1 through the origin: chord of length 2 covers |t| ≤ 1/√2
    lo, hi = LineNH(0.0, 0.0, 1.0, 0.0).clip_to_ball(1.0)
    assert (lo, hi) == pytest.approx((-1 / math.sqrt(2), 1 / math.sqrt(2)))
    assert LineNH(2.0, 0.0, 0.0, 0.0).clip_to_ball(1.0) is None


def test_rotate_line():
    rotated = rotate_line(LineNH(1.0, 0.0, 1.0, 0.0), math.pi / 2)
    assert rotated.coords == pytest.approx((0.0, 1.0, 0.0, 1.0), abs=1e-15)
    line = LineNH(0.3, -0.2, 0.5, 0.7)
    assert rotate_line(line, 2 * math.pi).coords == pytest.approx(line.coords)


@pytest.mark.parametrize(
    ("line", "selector", "normal"),
    [
        (LineNH(0.0, 0.0, 0.0, 1.0), HalfPlaneSelector.H1, (0.0, 1 / math.sqrt(2), -1 / math.sqrt(2))),
        (LineNH(0.0, 0.0, 1.0, 0.0), HalfPlaneSelector.H2, (-1 / math.sqrt(2), 0.0, 1 / math.sqrt(2))),
        (LineNH(0.3, 0.1, 0.0, 0.0), HalfPlaneSelector.H1, (0.0, 1.0, 0.0)),
        (LineNH(0.3, 0.1, 0.0, 0.0), HalfPlaneSelector.H2, (-1.0, 0.0, 0.0)),
    ],
)
def test_half_plane_normals(line, selector, normal):
    assert half_plane_frame(line, selector).normal == pytest.approx(normal, abs=1e-15)


@pytest.mark.parametrize("selector", [HalfPlaneSelector.H1, HalfPlaneSelector.H2])
def test_orientation_on_random_lines(selector):
    lines = sample_lines(np.random.default_rng(50), 50)
    for line in lines:
        frame = half_plane_frame(line, selector)
        assert frame.orientation() == pytest.approx(1.0, abs=1e-12)
        assert frame.interior[0 if selector == HalfPlaneSelector.H1 else 1] > 0.0


@pytest.mark.parametrize("selector", [HalfPlaneSelector.H1, HalfPlaneSelector.H2])
def test_half_plane_frame(selector):
    line = LineNH(0.2, -0.1, 0.7, -1.3)
    frame = half_plane_frame(line, selector)
    basis = np.stack([frame.along, frame.interior, frame.normal])
    assert basis @ basis.T == pytest.approx(np.eye(3), abs=1e-14)
    assert frame.orientation() == pytest.approx(1.0)
    # interior normal points toward increasing x₁ (H1) or x₂ (H2)
    axis = 0 if selector == HalfPlaneSelector.H1 else 1
    assert frame.interior[axis] > 0.0
    # boundary s = 0 is the line itself
    assert frame.point(0.0, 0.0) == pytest.approx(line.base_point)

    # the coordinate-plane parametrization spans the same plane
    raw = frame.raw_point(np.array([0.3]), np.array([0.4]))[0]
    assert np.dot(raw - line.base_point, frame.normal) == pytest.approx(0.0, abs=1e-14)


def test_half_plane_frame_rejects_rotated():
    with pytest.raises(ValueError, match="H1 or H2"):
        half_plane_frame(LineNH(0, 0, 0, 0), HalfPlaneSelector.ROTATED)


def test_rotated_frame():
    frame = half_plane_frame(LineNH(0.1, 0.2, 0.3, 0.4), HalfPlaneSelector.H2)
    turned = frame.rotated(0.8)
    assert turned.selector == HalfPlaneSelector.ROTATED
    assert turned.orientation() == pytest.approx(1.0)
    assert np.dot(turned.interior, frame.interior) == pytest.approx(math.cos(0.8))


def test_support_rectangle():
    frame = half_plane_frame(LineNH(0.0, 0.0, 0.0, 0.0), HalfPlaneSelector.H2)
    assert frame.support_rectangle(1.0) == pytest.approx(((0.0, 1.0), (-1.0, 1.0)))
    far = half_plane_frame(LineNH(0.0, 3.0, 0.0, 0.0), HalfPlaneSelector.H2)
    assert far.support_rectangle(1.0) is None


def test_plane_frame():
    frame = plane_frame(np.array([0.0, 0.0, 2.0]), 0.5)
    assert frame.normal == pytest.approx([0.0, 0.0, 1.0])
    basis = np.stack([frame.b1, frame.b2, frame.normal])
    assert basis @ basis.T == pytest.approx(np.eye(3), abs=1e-14)
    assert frame.point(0.0, 0.0) == pytest.approx([0.0, 0.0, 0.5])
    assert frame.support_square(1.0) == pytest.approx((-math.sqrt(0.75), math.sqrt(0.75)))
    assert plane_frame(np.array([1.0, 0.0, 0.0]), 1.5).support_square(1.0) is None


def test_sampling_is_reproducible():
    lines = sample_lines(np.random.default_rng(3), 20, alpha_box=1.5)
    again = sample_lines(np.random.default_rng(3), 20, alpha_box=1.5)
    assert [m.coords for m in lines] == [m.coords for m in again]
    assert all(abs(m.y1) <= 0.8 and abs(m.a2) <= 1.5 for m in lines)

    planes = sample_planes(np.random.default_rng(3), 10)
    assert all(abs(p.offset) <= 0.9 for p in planes)
    assert all(np.linalg.norm(p.normal) == pytest.approx(1.0) for p in planes)
