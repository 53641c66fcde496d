"""Truncated composite Gauss–Legendre integration over intervals, lines,
half-planes and planes.

Integrands are compactly supported in a centered ball, so every domain is clipped to
its intersection with that ball before nodes are laid out.
"""

import logging
import math
from collections.abc import Callable
from functools import lru_cache

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from igeuler.geometry import HalfPlaneFrame, LineNH, PlaneFrame

_logger = logging.getLogger(__name__)


class QuadratureError(Exception):
    """Indicates an adaptive quadrature that did not reach its requested accuracy."""

    def __init__(self, msg: str, error_estimate: float) -> None:
        """Record the achieved error estimate alongside the message."""
        super().__init__(msg)
        self.error_estimate = error_estimate


class QuadratureSpec(BaseModel):
    """Composite Gauss–Legendre policy: ``order`` nodes on each of
    ``nodes_per_unit`` panels per unit length.
    """

    model_config = ConfigDict(frozen=True)

    nodes_per_unit: int = Field(default=8, ge=4)
    order: int = Field(default=16, ge=8)

    def doubled(self) -> "QuadratureSpec":
        """Return the same panel layout with twice the per-panel order."""
        return self.model_copy(update={"order": 2 * self.order})

    @property
    def panel_length(self) -> float:
        """Return the nominal panel length."""
        return 1.0 / self.nodes_per_unit


@lru_cache(maxsize=32)
def gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Return read-only Gauss–Legendre nodes and weights on ``[−1, 1]``."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def composite_rule(a: float, b: float, spec: QuadratureSpec) -> tuple[np.ndarray, np.ndarray]:
    """Lay out composite nodes and weights on ``[a, b]``."""
    panels = max(1, math.ceil((b - a) * spec.nodes_per_unit))
    x, w = gauss_legendre(spec.order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def integrate_interval(
    func: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    spec: QuadratureSpec,
) -> np.ndarray | float:
    """Integrate a vectorized integrand over ``[a, b]``.

    :param func: maps an array of nodes of shape (N,) to values of shape (N, ...)
    :return: scalar for scalar integrands, array for tensor-valued ones
    """
    if b <= a:
        return 0.0
    nodes, weights = composite_rule(a, b, spec)
    values = np.asarray(func(nodes))
    result = np.tensordot(weights, values, axes=(0, 0))
    return float(result) if result.ndim == 0 else result


def integrate_line(
    func: Callable[[np.ndarray], np.ndarray],
    line: LineNH,
    radius: float,
    spec: QuadratureSpec,
) -> np.ndarray | float:
    """Integrate over the chart parameter of a line, clipped to the support ball.

    :param func: integrand in the chart parameter ``t`` (the x₃ coordinate)
    :param line: integration line
    :param radius: support radius of the integrand
    :return: ``∫ func(t) dt``; zero when the line misses the support ball
    """
    chord = line.clip_to_ball(radius)
    if chord is None:
        return 0.0
    return integrate_interval(func, chord[0], chord[1], spec)


def _tensor_rule(
    s_range: tuple[float, float], t_range: tuple[float, float], spec: QuadratureSpec
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    s, ws = composite_rule(*s_range, spec)
    t, wt = composite_rule(*t_range, spec)
    ss, tt = np.meshgrid(s, t, indexing="ij")
    return ss, tt, ws[:, None] * wt[None, :]


def _contract(weights: np.ndarray, values: np.ndarray) -> np.ndarray | float:
    result = np.tensordot(weights, values, axes=([0, 1], [0, 1]))
    return float(result) if result.ndim == 0 else result


def integrate_halfplane(
    func: Callable[[np.ndarray, np.ndarray], np.ndarray],
    frame: HalfPlaneFrame,
    radius: float,
    spec: QuadratureSpec,
) -> np.ndarray | float:
    """Integrate over a half-plane in its orthonormal ``(s, t)`` coordinates.

    The area element of the orthonormal coordinates is ``ds dt``. The covering
    rectangle is padded by one panel on every side except the boundary ``s = 0``.

    :param func: maps meshgrid arrays ``(s, t)`` to values
    :param frame: oriented half-plane
    :param radius: support radius of the integrand
    :return: ``∫_H func dσ``; zero when the half-plane misses the support ball
    """
    rect = frame.support_rectangle(radius + spec.panel_length)
    if rect is None:
        return 0.0
    ss, tt, weights = _tensor_rule(rect[0], rect[1], spec)
    return _contract(weights, np.asarray(func(ss, tt)))


def integrate_plane(
    func: Callable[[np.ndarray, np.ndarray], np.ndarray],
    frame: PlaneFrame,
    radius: float,
    spec: QuadratureSpec,
) -> np.ndarray | float:
    """Integrate over a plane in its orthonormal in-plane coordinates.

    :param func: maps meshgrid arrays ``(a, b)`` to values
    :param frame: integration plane
    :param radius: support radius of the integrand
    :return: ``∫_L func dσ``; zero when the plane misses the support ball
    """
    half = frame.support_square(radius + spec.panel_length)
    if half is None:
        return 0.0
    aa, bb, weights = _tensor_rule(half, half, spec)
    return _contract(weights, np.asarray(func(aa, bb)))
