"""Integral objects built from a velocity/pressure pair: the half-plane function
w, the vertical flux F and its ray potential w₀, IQ₀, and the direct line
formulas for second derivatives of w at vertical lines.

Half-plane integrands are written in the coordinate-plane measure (``dx₂dx₃`` on
``H2``, ``dx₁dx₃`` on ``H1``) and divided by the frame's area factor, so integrating
them against the orthonormal area element reproduces the coordinate formulas.
"""

import logging
import math
from collections.abc import Callable

import numpy as np

from igeuler.fields import SmoothField
from igeuler.fields.solutions import outer_product
from igeuler.geometry import HalfPlaneFrame, LineNH, PlaneFrame, half_plane_frame
from igeuler.quadrature import (
    QuadratureSpec,
    composite_rule,
    integrate_halfplane,
    integrate_interval,
    integrate_line,
    integrate_plane,
)
from igeuler.transforms import GrassmannFunction
from igeuler.transforms.xray import xray_unit
from igeuler.utils.types import Convention, HalfPlaneSelector, Points

_logger = logging.getLogger(__name__)


def _coordinate_integrand(
    v: SmoothField, frame: HalfPlaneFrame, x: Points
) -> np.ndarray:
    u = v(x)
    line = frame.line
    a1, a2 = line.a1, line.a2
    along = u[..., 0] * a1 + u[..., 1] * a2 + u[..., 2]
    if frame.selector == HalfPlaneSelector.H2:
        return along * (u[..., 0] - a1 * u[..., 2]) / line.k
    return -along * (u[..., 1] - a2 * u[..., 2]) / line.k


def w_integrand(
    v: SmoothField, frame: HalfPlaneFrame
) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    """Return the integrand of w over ``frame`` in its orthonormal coordinates."""
    if frame.selector == HalfPlaneSelector.ROTATED:

        def rotated(ss: np.ndarray, tt: np.ndarray) -> np.ndarray:
            u = v(frame.point(ss, tt))
            return -(u @ frame.along) * (u @ frame.normal)

        return rotated

    def coordinate(ss: np.ndarray, tt: np.ndarray) -> np.ndarray:
        x = frame.point(ss, tt)
        return _coordinate_integrand(v, frame, x) / frame.area_factor

    return coordinate


def _frame(line: LineNH, variant: HalfPlaneSelector, theta: float) -> HalfPlaneFrame:
    if variant == HalfPlaneSelector.ROTATED:
        return half_plane_frame(line, HalfPlaneSelector.H2).rotated(theta)
    return half_plane_frame(line, variant)


def build_w(
    v: SmoothField,
    line: LineNH,
    spec: QuadratureSpec,
    variant: HalfPlaneSelector = HalfPlaneSelector.H2,
    theta: float = 0.0,
) -> float:
    """Evaluate w(m) by integrating over a half-plane bounded by m.

    ``H2`` integrates ``(1/k)(α₁v¹+α₂v²+v³)(v¹−α₁v³)`` over ``x₂ > y₂+α₂x₃``;
    ``H1`` integrates ``−(1/k)(α₁v¹+α₂v²+v³)(v²−α₂v³)`` over ``x₁ > y₁+α₁x₃``;
    ``ROTATED`` integrates ``−⟨e_m,v⟩⟨ν_H,v⟩`` over ``H2`` turned by ``theta`` about m.
    All three agree when ``v`` solves the steady Euler system.

    :param v: velocity
    :param line: boundary line
    :param spec: quadrature policy
    :param variant: half-plane selector
    :param theta: rotation angle, used by ``ROTATED`` only
    """
    frame = _frame(line, variant, theta)
    return float(integrate_halfplane(w_integrand(v, frame), frame, v.support_radius, spec))


def w_mass(
    v: SmoothField,
    line: LineNH,
    spec: QuadratureSpec,
    variant: HalfPlaneSelector = HalfPlaneSelector.H2,
) -> float:
    """Return the L¹ mass of the w integrand over the half-plane."""
    frame = _frame(line, variant, 0.0)
    integrand = w_integrand(v, frame)
    return float(
        integrate_halfplane(
            lambda ss, tt: np.abs(integrand(ss, tt)), frame, v.support_radius, spec
        )
    )


def w_first_order(
    v: SmoothField, line: LineNH, which: HalfPlaneSelector, spec: QuadratureSpec
) -> float:
    """Evaluate w truncated to first order in ``(α₁, α₂)``.

    ``H2`` integrates ``α₂v¹v² + v¹v³ + α₁((v¹)² − (v³)²)`` over ``x₂ > l₂``;
    ``H1`` integrates ``α₂((v³)² − (v²)²) − α₁v¹v² − v²v³`` over ``x₁ > l₁``.
    The difference from :func:`build_w` is ``O(|α|²)``.
    """
    if which not in (HalfPlaneSelector.H1, HalfPlaneSelector.H2):
        msg = f"First-order expressions exist for H1 and H2 only, got {which}"
        raise ValueError(msg)
    frame = half_plane_frame(line, which)
    a1, a2 = line.a1, line.a2

    def integrand(ss: np.ndarray, tt: np.ndarray) -> np.ndarray:
        u = v(frame.point(ss, tt))
        v1, v2, v3 = u[..., 0], u[..., 1], u[..., 2]
        if which == HalfPlaneSelector.H2:
            value = a2 * v1 * v2 + v1 * v3 + a1 * (v1 * v1 - v3 * v3)
        else:
            value = a2 * (v3 * v3 - v2 * v2) - a1 * v1 * v2 - v2 * v3
        return value / frame.area_factor

    return float(integrate_halfplane(integrand, frame, v.support_radius, spec))


def w_function(
    v: SmoothField,
    spec: QuadratureSpec,
    variant: HalfPlaneSelector = HalfPlaneSelector.H2,
    memoize: bool = False,
) -> GrassmannFunction:
    """Wrap w as a function on lines."""

    def evaluate(line: LineNH) -> float:
        return build_w(v, line, spec, variant)

    return GrassmannFunction(
        evaluate, f"w[{variant.value}]", Convention.UNIT_SPEED, (v,), memoize
    )


def flux_field(
    v: SmoothField, spec: QuadratureSpec
) -> Callable[[np.ndarray], np.ndarray]:
    """Return the vectorized flux ``F(x₁,x₂) = ∫ (−v²v³, v¹v³) dx₃``.

    The returned callable maps planar points ``(..., 2)`` to ``(..., 2)``. Each
    vertical chord of the support ball is mapped onto one reference rule so that all
    points are integrated in a single batch.
    """
    radius = v.support_radius
    nodes, weights = composite_rule(-radius, radius, spec)
    unit_nodes = nodes / radius
    unit_weights = weights / radius

    def flux(xy: np.ndarray) -> np.ndarray:
        xy = np.asarray(xy, dtype=float)
        gap = radius * radius - np.einsum("...i,...i->...", xy, xy)
        half = np.sqrt(np.clip(gap, 0.0, None))
        x3 = half[..., None] * unit_nodes
        points = np.stack(
            np.broadcast_arrays(xy[..., 0, None], xy[..., 1, None], x3), axis=-1
        )
        u = v(points)
        integrand = np.stack(
            [-u[..., 1] * u[..., 2], u[..., 0] * u[..., 2]], axis=-1
        )
        total = np.einsum("...ni,n->...i", integrand, unit_weights)
        return half[..., None] * total

    return flux


def build_F(  # noqa: N802
    v: SmoothField, x1: float, x2: float, spec: QuadratureSpec
) -> np.ndarray:
    """Evaluate the flux ``F(x₁, x₂) = ∫ (−v²v³, v¹v³) dx₃`` at one point.

    :return: array of shape ``(2,)``; zero outside the support disc
    """
    return flux_field(v, spec)(np.array([x1, x2]))


def _ray_interval(
    origin: np.ndarray, direction: np.ndarray, radius: float
) -> tuple[float, float] | None:
    b = float(np.dot(origin, direction))
    c = float(np.dot(origin, origin)) - radius * radius
    disc = b * b - c
    if disc <= 0.0:
        return None
    root = math.sqrt(disc)
    lo, hi = max(0.0, -b - root), -b + root
    if hi <= lo:
        return None
    return lo, hi


def w0_ray(
    v: SmoothField,
    origin: tuple[float, float] | np.ndarray,
    direction: tuple[float, float] | np.ndarray,
    spec: QuadratureSpec,
) -> float:
    """Integrate ``⟨e_r, F⟩`` along the planar ray from ``origin`` in ``direction``.

    For solutions the value is w₀(origin) whatever the direction.

    :raise ValueError: if ``direction`` is not a unit vector
    """
    origin = np.asarray(origin, dtype=float)
    direction = np.asarray(direction, dtype=float)
    if abs(float(np.linalg.norm(direction)) - 1.0) > 1e-12:
        msg = f"Ray direction {direction.tolist()} is not a unit vector"
        raise ValueError(msg)
    interval = _ray_interval(origin, direction, v.support_radius)
    if interval is None:
        return 0.0
    flux = flux_field(v, spec)

    def integrand(s: np.ndarray) -> np.ndarray:
        return flux(origin + s[:, None] * direction) @ direction

    return float(integrate_interval(integrand, *interval, spec))


def xray_2d(
    v: SmoothField,
    point: tuple[float, float] | np.ndarray,
    direction: tuple[float, float] | np.ndarray,
    spec: QuadratureSpec,
) -> float:
    """Integrate ``⟨d, F⟩`` over the whole planar line through ``point`` along ``d``.

    This is the X-ray transform of the flux in the horizontal plane; it vanishes for
    solutions.
    """
    point = np.asarray(point, dtype=float)
    direction = np.asarray(direction, dtype=float)
    direction = direction / np.linalg.norm(direction)
    radius = v.support_radius
    foot = point - np.dot(point, direction) * direction
    gap = radius * radius - float(np.dot(foot, foot))
    if gap <= 0.0:
        return 0.0
    half = math.sqrt(gap)
    flux = flux_field(v, spec)
    return float(
        integrate_interval(
            lambda s: flux(foot + s[:, None] * direction) @ direction, -half, half, spec
        )
    )


def iq_zero_lineintegral(
    v: SmoothField, p: SmoothField, line: LineNH, spec: QuadratureSpec
) -> float:
    """Integrate ``p + |v|² − 2⟨v, e_m⟩²`` with respect to arc length along m.

    For a solution pair this equals ``Pw(m)``.
    """
    e = line.unit_direction
    radius = max(v.support_radius, p.support_radius)

    def integrand(t: np.ndarray) -> np.ndarray:
        x = line.point(t)
        u = v(x)
        return p(x) + np.einsum("...i,...i->...", u, u) - 2.0 * (u @ e) ** 2

    # chart parameter t has ds = k dt
    return line.k * float(integrate_line(integrand, line, radius, spec))


def iq_zero_function(
    v: SmoothField, p: SmoothField, spec: QuadratureSpec, memoize: bool = False
) -> GrassmannFunction:
    """Wrap ``IQ₀`` as a function on lines."""

    def evaluate(line: LineNH) -> float:
        return iq_zero_lineintegral(v, p, line, spec)

    return GrassmannFunction(evaluate, "IQ0", Convention.UNIT_SPEED, (v, p), memoize)


def xray_outer_function(
    v: SmoothField, spec: QuadratureSpec, memoize: bool = False
) -> GrassmannFunction:
    """Wrap the unit-speed ``I(v⊗v)`` as a function on lines."""
    vv = outer_product(v)

    def evaluate(line: LineNH) -> float:
        return xray_unit(vv, line, spec)

    return GrassmannFunction(evaluate, "I(vv)", Convention.UNIT_SPEED, (v,), memoize)


def plane_flux(
    v: SmoothField, plane: PlaneFrame, z: np.ndarray, spec: QuadratureSpec
) -> float:
    """Integrate ``⟨v, z⟩⟨v, ν_L⟩`` over a plane; zero for solutions and in-plane ``z``."""
    z = np.asarray(z, dtype=float)

    def integrand(aa: np.ndarray, bb: np.ndarray) -> np.ndarray:
        u = v(plane.point(aa, bb))
        return (u @ z) * (u @ plane.normal)

    return float(integrate_plane(integrand, plane, v.support_radius, spec))


def plane_energy(v: SmoothField, plane: PlaneFrame, spec: QuadratureSpec) -> float:
    """Integrate ``|v|²`` over a plane."""

    def integrand(aa: np.ndarray, bb: np.ndarray) -> np.ndarray:
        u = v(plane.point(aa, bb))
        return np.einsum("...i,...i->...", u, u)

    return float(integrate_plane(integrand, plane, v.support_radius, spec))


def _vertical(
    v: SmoothField,
    y1: float,
    y2: float,
    spec: QuadratureSpec,
    integrand: Callable[[np.ndarray], np.ndarray],
) -> float:
    line = LineNH(y1, y2, 0.0, 0.0)
    return float(integrate_line(integrand, line, v.support_radius, spec))


def _products(v: SmoothField, x: Points) -> tuple[np.ndarray, np.ndarray]:
    """Return ``v`` and ``d[i, j, k] = ∂_k(v^i v^j)`` at ``x``."""
    u = v(x)
    jac = v.jacobian(x)
    d = jac[..., :, None, :] * u[..., None, :, None] + u[..., :, None, None] * jac[
        ..., None, :, :
    ]
    return u, d


def cor_w12(v: SmoothField, y1: float, y2: float, spec: QuadratureSpec) -> float:
    """Evaluate ``∂²w/∂y₂∂α₁`` at the vertical line through ``(y₁, y₂)``.

    ``∫ ((v³)² − (v¹)² − x₃∂₁(v³v¹)) dx₃``, with ``x₃`` measured from the line's
    base point.
    """
    line = LineNH(y1, y2, 0.0, 0.0)

    def integrand(t: np.ndarray) -> np.ndarray:
        u, d = _products(v, line.point(t))
        return u[..., 2] ** 2 - u[..., 0] ** 2 - t * d[..., 2, 0, 0]

    return _vertical(v, y1, y2, spec, integrand)


def cor_w21(v: SmoothField, y1: float, y2: float, spec: QuadratureSpec) -> float:
    """Evaluate ``∂²w/∂y₁∂α₂`` at the vertical line through ``(y₁, y₂)``.

    ``∫ ((v²)² − (v³)² + x₃∂₂(v³v²)) dx₃``.
    """
    line = LineNH(y1, y2, 0.0, 0.0)

    def integrand(t: np.ndarray) -> np.ndarray:
        u, d = _products(v, line.point(t))
        return u[..., 1] ** 2 - u[..., 2] ** 2 + t * d[..., 2, 1, 1]

    return _vertical(v, y1, y2, spec, integrand)


def cor_laplace(v: SmoothField, y1: float, y2: float, spec: QuadratureSpec) -> float:
    """Evaluate ``(∂²_{y₁} + ∂²_{y₂})w`` at a vertical line.

    ``∫ (∂₁(v²v³) − ∂₂(v¹v³)) dx₃``.
    """
    line = LineNH(y1, y2, 0.0, 0.0)

    def integrand(t: np.ndarray) -> np.ndarray:
        _, d = _products(v, line.point(t))
        return d[..., 1, 2, 0] - d[..., 0, 2, 1]

    return _vertical(v, y1, y2, spec, integrand)


def cor_john(
    v: SmoothField, p: SmoothField, y1: float, y2: float, spec: QuadratureSpec
) -> float:
    """Evaluate ``Lw`` at a vertical line as ``∫ (p + (v¹)² + (v²)² − (v³)²) dx₃``."""
    line = LineNH(y1, y2, 0.0, 0.0)
    radius = max(v.support_radius, p.support_radius)

    def integrand(t: np.ndarray) -> np.ndarray:
        x = line.point(t)
        u = v(x)
        return p(x) + u[..., 0] ** 2 + u[..., 1] ** 2 - u[..., 2] ** 2

    return float(integrate_line(integrand, line, radius, spec))


def cor_mass(
    v: SmoothField, p: SmoothField, y1: float, y2: float, spec: QuadratureSpec
) -> float:
    """Return ``∫ (|p| + |v|² + |x₃|·|∇(v⊗v)|) dx₃`` on a vertical line.

    Bounds the magnitude of every integrand of the vertical-line formulas.
    """
    line = LineNH(y1, y2, 0.0, 0.0)
    radius = max(v.support_radius, p.support_radius)

    def integrand(t: np.ndarray) -> np.ndarray:
        x = line.point(t)
        u, d = _products(v, x)
        flat = d.reshape(d.shape[:-3] + (-1,))
        return (
            np.abs(p(x))
            + np.einsum("...i,...i->...", u, u)
            + np.abs(t) * np.linalg.norm(flat, axis=-1)
        )

    return float(integrate_line(integrand, line, radius, spec))


def halfplane_energy(
    v: SmoothField,
    line: LineNH,
    spec: QuadratureSpec,
    variant: HalfPlaneSelector = HalfPlaneSelector.H2,
) -> float:
    """Integrate ``|v|²`` over the half-plane ``H1`` or ``H2`` of a line."""
    frame = half_plane_frame(line, variant)

    def integrand(ss: np.ndarray, tt: np.ndarray) -> np.ndarray:
        u = v(frame.point(ss, tt))
        return np.einsum("...i,...i->...", u, u)

    return float(integrate_halfplane(integrand, frame, v.support_radius, spec))
