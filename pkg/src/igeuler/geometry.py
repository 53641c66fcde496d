"""John coordinates on the manifold of non-horizontal lines, and the oriented
half-plane and plane frames that every integral transform integrates over.

A non-horizontal line m is written ``m(y₁, y₂, α₁, α₂)`` and consists of the points
``(y₁ + α₁t, y₂ + α₂t, t)``; the vector ``α = (α₁, α₂, 1)`` gives its positive
direction.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from igeuler.utils.types import HalfPlaneSelector, Points

_logger = logging.getLogger(__name__)

ORIENTATION_TOLERANCE = 1e-12


class ChartError(ValueError):
    """Indicates a line outside the chart of non-horizontal lines."""


def rotation_z(theta: float) -> np.ndarray:
    """Return the rotation matrix about the x₃-axis by ``theta``."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


@dataclass(frozen=True)
class LineNH:
    """Non-horizontal affine line in John coordinates."""

    y1: float
    y2: float
    a1: float
    a2: float

    @property
    def coords(self) -> tuple[float, float, float, float]:
        """Return ``(y₁, y₂, α₁, α₂)``."""
        return (self.y1, self.y2, self.a1, self.a2)

    @property
    def base_point(self) -> np.ndarray:
        """Return the intercept with the plane x₃ = 0."""
        return np.array([self.y1, self.y2, 0.0])

    @property
    def direction(self) -> np.ndarray:
        """Return the chart direction ``(α₁, α₂, 1)``."""
        return np.array([self.a1, self.a2, 1.0])

    @property
    def k(self) -> float:
        """Return ``√(1 + α₁² + α₂²)``, the length of the chart direction."""
        return math.sqrt(1.0 + self.a1 * self.a1 + self.a2 * self.a2)

    @property
    def unit_direction(self) -> np.ndarray:
        """Return the positive unit direction ``e_m = α / k``."""
        return self.direction / self.k

    def point(self, t: np.ndarray | float) -> Points:
        """Evaluate the chart parametrization at parameter(s) ``t`` (the x₃ value)."""
        t = np.asarray(t, dtype=float)
        return self.base_point + t[..., None] * self.direction

    def point_direction(self) -> tuple[np.ndarray, np.ndarray]:
        """Return a point on the line and its chart direction (inverse of the chart)."""
        return self.base_point, self.direction

    def shifted(self, delta: tuple[float, float, float, float]) -> "LineNH":
        """Return the line with coordinates displaced by ``delta``."""
        return LineNH(*(c + d for c, d in zip(self.coords, delta, strict=True)))

    def distance_to_origin(self) -> float:
        """Return the Euclidean distance between the line and the origin."""
        y0 = self.base_point
        e = self.unit_direction
        return float(np.linalg.norm(y0 - np.dot(y0, e) * e))

    def clip_to_ball(self, radius: float) -> tuple[float, float] | None:
        """Find the chart-parameter interval where the line meets a centered ball.

        :param radius: ball radius
        :return: ``(t_lo, t_hi)`` or None when the line misses the open ball
        """
        y0 = self.base_point
        alpha = self.direction
        a = float(np.dot(alpha, alpha))
        b = float(np.dot(y0, alpha))
        c = float(np.dot(y0, y0)) - radius * radius
        disc = b * b - a * c
        if disc <= 0.0:
            return None
        root = math.sqrt(disc)
        return ((-b - root) / a, (-b + root) / a)


def chart_from_point_direction(x: np.ndarray, xi: np.ndarray) -> LineNH:
    """Compute John coordinates of the line through ``x`` with direction ``xi``.

    :param x: any point of the line
    :param xi: any direction vector of the line
    :return: line in chart coordinates
    :raise ChartError: if ``xi`` is horizontal
    """
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    if xi[2] == 0.0:
        msg = f"Direction {xi.tolist()} is horizontal; line lies outside the non-horizontal chart"
        raise ChartError(msg)
    a1 = xi[0] / xi[2]
    a2 = xi[1] / xi[2]
    return LineNH(
        float(x[0] - a1 * x[2]), float(x[1] - a2 * x[2]), float(a1), float(a2)
    )


def k_factors(line: LineNH) -> tuple[float, float, float]:
    """Return ``(k, k₁, k₂)`` for the slopes of ``line``."""
    return (
        line.k,
        math.sqrt(1.0 + line.a1 * line.a1),
        math.sqrt(1.0 + line.a2 * line.a2),
    )


def rotate_line(line: LineNH, theta: float) -> LineNH:
    """Apply the rotation by ``theta`` about the x₃-axis to a line.

    Rotations about the vertical axis act on the chart by rotating ``(y₁, y₂)`` and
    ``(α₁, α₂)`` simultaneously.
    """
    c, s = math.cos(theta), math.sin(theta)
    return LineNH(
        c * line.y1 - s * line.y2,
        s * line.y1 + c * line.y2,
        c * line.a1 - s * line.a2,
        s * line.a1 + c * line.a2,
    )


@dataclass(frozen=True)
class HalfPlaneFrame:
    """Half-plane bounded by a line, with orthonormal in-plane axes.

    Points are ``base + t·e_m + s·ν_m`` with ``s ≥ 0``; ``t`` is arc length along the
    boundary and ``ν_m`` the interior unit normal to the boundary. ``normal`` is the
    unit normal ``ν_H`` making ``(e_m, ν_m, ν_H)`` positively oriented.
    """

    line: LineNH
    selector: HalfPlaneSelector
    along: np.ndarray
    interior: np.ndarray
    normal: np.ndarray
    area_factor: float

    def point(self, s: np.ndarray, t: np.ndarray) -> Points:
        """Map in-plane coordinates to points of ℝ³ (broadcasting ``s`` with ``t``)."""
        s = np.asarray(s, dtype=float)[..., None]
        t = np.asarray(t, dtype=float)[..., None]
        return self.line.base_point + t * self.along + s * self.interior

    def raw_point(self, a: np.ndarray, x3: np.ndarray) -> Points:
        """Map the coordinate-plane parametrization to points.

        For ``H1`` this is ``(x₁, x₃) ↦ (x₁, y₂ + α₂x₃, x₃)``, for ``H2``
        ``(x₂, x₃) ↦ (y₁ + α₁x₃, x₂, x₃)``; the area element is
        ``area_factor · da dx₃``.
        """
        a, x3 = np.broadcast_arrays(np.asarray(a, float), np.asarray(x3, float))
        m = self.line
        if self.selector == HalfPlaneSelector.H1:
            return np.stack([a, m.y2 + m.a2 * x3, x3], axis=-1)
        if self.selector == HalfPlaneSelector.H2:
            return np.stack([m.y1 + m.a1 * x3, a, x3], axis=-1)
        msg = f"Half-plane {self.selector} has no coordinate-plane parametrization"
        raise ValueError(msg)

    def orientation(self) -> float:
        """Return ``det(e_m, ν_m, ν_H)``."""
        return float(np.linalg.det(np.stack([self.along, self.interior, self.normal])))

    def support_rectangle(
        self, radius: float
    ) -> tuple[tuple[float, float], tuple[float, float]] | None:
        """Find the ``(s, t)`` rectangle covering the half-plane's meet with a ball.

        :param radius: radius of the centered support ball
        :return: ``((s_lo, s_hi), (t_lo, t_hi))`` or None when the meet is empty
        """
        base = self.line.base_point
        offset = float(np.dot(base, self.normal))
        if abs(offset) >= radius:
            return None
        rho = math.sqrt(radius * radius - offset * offset)
        t_c = -float(np.dot(base, self.along))
        s_c = -float(np.dot(base, self.interior))
        if s_c + rho <= 0.0:
            return None
        return ((max(0.0, s_c - rho), s_c + rho), (t_c - rho, t_c + rho))

    def rotated(self, theta: float) -> "HalfPlaneFrame":
        """Rotate the half-plane about its boundary line by ``theta``."""
        c, s = math.cos(theta), math.sin(theta)
        interior = c * self.interior + s * self.normal
        normal = np.cross(self.along, interior)
        return HalfPlaneFrame(
            self.line, HalfPlaneSelector.ROTATED, self.along, interior, normal, 1.0
        )


def half_plane_frame(line: LineNH, selector: HalfPlaneSelector) -> HalfPlaneFrame:
    """Build the half-plane ``H(m)₁`` (parallel to x₁) or ``H(m)₂`` (parallel to x₂).

    The interior normals satisfy ``⟨ν₁, e₁⟩ > 0`` and ``⟨ν₂, e₂⟩ > 0``.

    :param line: boundary line
    :param selector: ``H1`` or ``H2``
    :return: oriented frame
    :raise ValueError: for an unknown selector, or if the orientation check fails
    """
    _, k1, k2 = k_factors(line)
    along = line.unit_direction
    if selector == HalfPlaneSelector.H1:
        normal = np.array([0.0, 1.0 / k2, -line.a2 / k2])
        area_factor = k2
    elif selector == HalfPlaneSelector.H2:
        normal = np.array([-1.0 / k1, 0.0, line.a1 / k1])
        area_factor = k1
    else:
        msg = f"Selector must be H1 or H2, got {selector}"
        raise ValueError(msg)
    interior = np.cross(normal, along)
    frame = HalfPlaneFrame(line, selector, along, interior, normal, area_factor)
    det = frame.orientation()
    if abs(det - 1.0) > ORIENTATION_TOLERANCE:
        msg = f"Half-plane frame {selector} of {line} has orientation {det}"
        raise ValueError(msg)
    return frame


@dataclass(frozen=True)
class PlaneFrame:
    """Affine plane ``{⟨x, ν⟩ = d}`` with an orthonormal in-plane basis."""

    normal: np.ndarray
    offset: float
    b1: np.ndarray
    b2: np.ndarray

    def point(self, a: np.ndarray, b: np.ndarray) -> Points:
        """Map in-plane coordinates to points (origin at the foot of the normal)."""
        a = np.asarray(a, dtype=float)[..., None]
        b = np.asarray(b, dtype=float)[..., None]
        return self.offset * self.normal + a * self.b1 + b * self.b2

    def support_square(self, radius: float) -> tuple[float, float] | None:
        """Return the in-plane half-width ``(−ρ, ρ)`` of the meet with a centered ball."""
        if abs(self.offset) >= radius:
            return None
        rho = math.sqrt(radius * radius - self.offset * self.offset)
        return (-rho, rho)


def plane_frame(normal: np.ndarray, offset: float) -> PlaneFrame:
    """Build a plane frame from a (not necessarily unit) normal and an offset.

    :param normal: normal vector, normalized here
    :param offset: signed distance ``d`` of the plane from the origin along the unit normal
    """
    nu = np.asarray(normal, dtype=float)
    nu = nu / np.linalg.norm(nu)
    helper = np.eye(3)[int(np.argmin(np.abs(nu)))]
    b1 = helper - np.dot(helper, nu) * nu
    b1 /= np.linalg.norm(b1)
    b2 = np.cross(nu, b1)
    return PlaneFrame(nu, float(offset), b1, b2)


def sample_lines(
    rng: np.random.Generator,
    n: int,
    y_box: float = 0.8,
    alpha_box: float = 2.0,
) -> list[LineNH]:
    """Draw lines with intercepts in ``[−y_box, y_box]²`` and slopes in ``[−alpha_box, alpha_box]²``."""
    ys = rng.uniform(-y_box, y_box, size=(n, 2))
    alphas = rng.uniform(-alpha_box, alpha_box, size=(n, 2))
    return [
        LineNH(float(y[0]), float(y[1]), float(a[0]), float(a[1]))
        for y, a in zip(ys, alphas, strict=True)
    ]


def sample_planes(
    rng: np.random.Generator, n: int, max_offset: float = 0.9
) -> list[PlaneFrame]:
    """Draw planes with isotropic normals and offsets in ``[−max_offset, max_offset]``."""
    normals = rng.normal(size=(n, 3))
    offsets = rng.uniform(-max_offset, max_offset, size=n)
    return [plane_frame(nu, float(d)) for nu, d in zip(normals, offsets, strict=True)]
