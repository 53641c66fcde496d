"""Tensor X-ray transform, its chart function and the Radon plane transform."""

import logging
import math

import numpy as np

from igeuler.fields import SmoothField
from igeuler.geometry import LineNH, PlaneFrame
from igeuler.quadrature import (
    QuadratureSpec,
    integrate_interval,
    integrate_line,
    integrate_plane,
)
from igeuler.transforms import GrassmannFunction, NormalizationError
from igeuler.utils.types import Convention

_logger = logging.getLogger(__name__)

CONSISTENCY_RTOL = 1e-8
CONSISTENCY_ATOL = 1e-12


def _contract(values: np.ndarray, direction: np.ndarray, rank: int) -> np.ndarray:
    for _ in range(rank):
        values = values @ direction
    return values


def xray(f: SmoothField, line: LineNH, spec: QuadratureSpec) -> float:
    """Integrate ``f(α,…,α)`` along the chart parametrization, ``α = (α₁, α₂, 1)``.

    :param f: field of rank 0, 1 or 2
    :param line: non-horizontal line
    :param spec: quadrature policy
    :return: ``∫ f_{i…}(y + tα) α_i… dt``
    """
    alpha = line.direction

    def integrand(t: np.ndarray) -> np.ndarray:
        return _contract(f(line.point(t)), alpha, f.rank)

    return float(integrate_line(integrand, line, f.support_radius, spec))


def _unit_chord(
    line: LineNH, radius: float
) -> tuple[np.ndarray, np.ndarray, tuple[float, float]] | None:
    e = line.unit_direction
    foot = line.base_point - np.dot(line.base_point, e) * e
    gap = radius * radius - float(np.dot(foot, foot))
    if gap <= 0.0:
        return None
    half = math.sqrt(gap)
    return foot, e, (-half, half)


def xray_unit(f: SmoothField, line: LineNH, spec: QuadratureSpec) -> float:
    """Integrate ``f(e_m,…,e_m)`` with respect to arc length (a function on lines).

    The line is parametrized from the foot of its perpendicular from the origin, a
    path independent of the chart used by :func:`xray`.
    """
    chord = _unit_chord(line, f.support_radius)
    if chord is None:
        return 0.0
    foot, e, (lo, hi) = chord

    def integrand(s: np.ndarray) -> np.ndarray:
        return _contract(f(foot + s[..., None] * e), e, f.rank)

    return float(integrate_interval(integrand, lo, hi, spec))


def xray_mass(f: SmoothField, line: LineNH, spec: QuadratureSpec) -> float:
    """Return the L¹ mass ``∫ |f(e_m,…,e_m)| ds`` of the unit-speed integrand."""
    chord = _unit_chord(line, f.support_radius)
    if chord is None:
        return 0.0
    foot, e, (lo, hi) = chord
    return float(
        integrate_interval(
            lambda s: np.abs(_contract(f(foot + s[..., None] * e), e, f.rank)),
            lo,
            hi,
            spec,
        )
    )


def phi_chart(
    f: SmoothField,
    y: tuple[float, float],
    alpha: tuple[float, float],
    spec: QuadratureSpec,
    check: bool = True,
) -> float:
    """Evaluate ``φ = k^{h−1}·If`` at chart point ``(y, α)``.

    ``φ`` is the function on ℝ⁴ that John's range conditions constrain. It is
    computed from the unit-speed transform; with ``check`` the result is compared
    against the chart integral, which must coincide with it.

    :raise NormalizationError: if the two paths disagree
    """
    line = LineNH(y[0], y[1], alpha[0], alpha[1])
    value = line.k ** (f.rank - 1) * xray_unit(f, line, spec)
    if check:
        direct = xray(f, line, spec)
        if abs(value - direct) > CONSISTENCY_ATOL + CONSISTENCY_RTOL * abs(direct):
            msg = (
                f"Chart function of {f.name} at {line.coords} is {value:.12e} but the "
                f"chart integral is {direct:.12e}"
            )
            raise NormalizationError(msg)
    return value


def xray_function(
    f: SmoothField,
    spec: QuadratureSpec,
    convention: Convention = Convention.UNIT_SPEED,
    memoize: bool = False,
) -> GrassmannFunction:
    """Wrap the X-ray transform of ``f`` as a function on lines.

    :param convention: ``UNIT_SPEED`` for ``If`` on M, ``CHART`` for ``φ``
    """
    if convention == Convention.CHART:

        def evaluate(line: LineNH) -> float:
            return xray(f, line, spec)

    else:

        def evaluate(line: LineNH) -> float:
            return xray_unit(f, line, spec)

    return GrassmannFunction(
        evaluate, f"xray[{f.name}]", convention, sources=(f,), memoize=memoize
    )


def radon_plane(q: SmoothField, plane: PlaneFrame, spec: QuadratureSpec) -> float:
    """Integrate the trace of a rank-2 field restricted to a plane.

    ``JQ(L) = ∫_L Q(b₁,b₁) + Q(b₂,b₂) dσ`` for an orthonormal basis of the plane.

    :raise ValueError: if ``q`` is not rank 2
    """
    if q.rank != 2:
        msg = f"The plane transform takes rank-2 fields, got rank {q.rank}"
        raise ValueError(msg)
    b1, b2 = plane.b1, plane.b2

    def integrand(aa: np.ndarray, bb: np.ndarray) -> np.ndarray:
        values = q(plane.point(aa, bb))
        return (values @ b1) @ b1 + (values @ b2) @ b2

    return float(integrate_plane(integrand, plane, q.support_radius, spec))


def radon_plane_mass(q: SmoothField, plane: PlaneFrame, spec: QuadratureSpec) -> float:
    """Return the L¹ mass of the plane transform's integrand."""
    b1, b2 = plane.b1, plane.b2

    def integrand(aa: np.ndarray, bb: np.ndarray) -> np.ndarray:
        values = q(plane.point(aa, bb))
        return np.abs((values @ b1) @ b1 + (values @ b2) @ b2)

    return float(integrate_plane(integrand, plane, q.support_radius, spec))
