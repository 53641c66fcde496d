"""Test composite Gauss–Legendre rules on intervals, lines, half-planes and planes"""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from igeuler.geometry import LineNH, half_plane_frame, plane_frame
from igeuler.quadrature import (
    QuadratureError,
    QuadratureSpec,
    composite_rule,
    gauss_legendre,
    integrate_halfplane,
    integrate_interval,
    integrate_line,
    integrate_plane,
)
from igeuler.utils.types import HalfPlaneSelector


def test_spec():
    spec = QuadratureSpec()
    assert (spec.nodes_per_unit, spec.order) == (8, 16)
    assert spec.doubled().order == 32
    assert spec.doubled().nodes_per_unit == 8
    assert spec.panel_length == pytest.approx(0.125)
    with pytest.raises(ValidationError):
        QuadratureSpec(order=4)
    with pytest.raises(ValidationError):
        spec.order = 20  # frozen


def test_gauss_legendre_is_read_only():
    nodes, weights = gauss_legendre(8)
    assert weights.sum() == pytest.approx(2.0)
    with pytest.raises(ValueError, match="read-only"):
        nodes[0] = 0.0


def test_composite_rule(quadrature):
    nodes, weights = composite_rule(-0.3, 1.2, quadrature)
    # ceil(1.5 · 8) panels of 16 nodes each
    assert len(nodes) == 12 * 16
    assert weights.sum() == pytest.approx(1.5)
    assert nodes.min() > -0.3
    assert nodes.max() < 1.2


def test_integrate_interval(quadrature):
    assert integrate_interval(lambda x: x**5, 0.0, 1.0, quadrature) == pytest.approx(1 / 6)
    assert integrate_interval(np.cos, 0.0, math.pi / 2, quadrature) == pytest.approx(1.0)
    assert integrate_interval(lambda x: x, 1.0, 0.0, quadrature) == 0.0

    tensor = integrate_interval(
        lambda x: np.stack([x, x * x], axis=-1), 0.0, 1.0, quadrature
    )
    assert tensor == pytest.approx([0.5, 1 / 3])


def test_integrate_line(quadrature):
    line = LineNH(0.0, 0.0, 0.0, 0.0)
    assert integrate_line(lambda t: 1.0 - t * t, line, 1.0, quadrature) == pytest.approx(4 / 3)
    assert integrate_line(lambda t: np.ones_like(t), LineNH(2.0, 0.0, 0.0, 0.0), 1.0, quadrature) == 0.0


def test_integrate_halfplane(quadrature):
    frame = half_plane_frame(LineNH(0.0, 0.0, 0.0, 0.0), HalfPlaneSelector.H2)
    # the covering rectangle is padded by one panel, away from the boundary s = 0
    area = integrate_halfplane(lambda s, t: np.ones_like(s), frame, 1.0, quadrature)
    assert area == pytest.approx(1.125 * 2.25)
    # ∫∫ s(1 − s² − t²)⁸ over the half-disc s > 0 is B(3/2, 9)
    moment = integrate_halfplane(
        lambda s, t: s * np.clip(1.0 - s * s - t * t, 0.0, None) ** 8, frame, 1.0, quadrature
    )
    expected = math.gamma(1.5) * math.gamma(9) / math.gamma(10.5)
    assert moment == pytest.approx(expected, rel=1e-5)


def test_integrate_plane(quadrature):
    frame = plane_frame(np.array([0.0, 1.0, 1.0]), 0.0)
    value = integrate_plane(
        lambda a, b: np.clip(1.0 - a * a - b * b, 0.0, None) ** 8, frame, 1.0, quadrature
    )
    # ∫ (1 − r²)⁸ over the unit disc = π/9
    assert value == pytest.approx(math.pi / 9, rel=1e-5)
    assert integrate_plane(lambda a, b: a + 1.0, plane_frame(np.ones(3), 2.0), 1.0, quadrature) == 0.0


def test_quadrature_error():
    error = QuadratureError("did not converge", 1e-3)
    assert str(error) == "did not converge"
    assert error.error_estimate == 1e-3
