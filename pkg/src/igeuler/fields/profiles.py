"""Radial profiles ψ(s) of the squared radius s = |x|², and the pressure profile
that turns a radial velocity into a solution of the steady Euler system.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Chebyshev
from scipy import integrate

from igeuler.quadrature import QuadratureError

_logger = logging.getLogger(__name__)

DEFAULT_PRESSURE_DEGREE = 200
PRESSURE_QUAD_EPSABS = 1e-14
PRESSURE_QUAD_EPSREL = 1e-12
PRESSURE_TABLE_TOLERANCE = 1e-10


@dataclass(frozen=True)
class RadialProfile:
    """Smooth function of the squared radius, vanishing for ``s ≥ s_max``."""

    value: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray], np.ndarray]
    s_max: float
    name: str = ""

    def __call__(self, s: np.ndarray | float) -> np.ndarray:
        """Evaluate ψ(s)."""
        return self.value(np.asarray(s, dtype=float))

    @property
    def support_radius(self) -> float:
        """Return the spatial support radius ``√s_max``."""
        return math.sqrt(self.s_max)


def _inside(s: np.ndarray, s_max: float) -> tuple[np.ndarray, np.ndarray]:
    s = np.asarray(s, dtype=float)
    return s, s < s_max


def make_bump_profile(radius: float, amplitude: float) -> RadialProfile:
    """Build ``ψ(s) = A·exp(−1/(R² − s))`` for ``s < R²`` and 0 otherwise.

    :param radius: support radius R
    :param amplitude: amplitude A
    :raise ValueError: if R is not positive or A is not finite
    """
    if not radius > 0.0:
        msg = f"Bump radius must be positive, got {radius}"
        raise ValueError(msg)
    if not math.isfinite(amplitude):
        msg = f"Bump amplitude must be finite, got {amplitude}"
        raise ValueError(msg)
    r2 = radius * radius

    def value(s: np.ndarray) -> np.ndarray:
        s, inside = _inside(s, r2)
        out = np.zeros_like(s)
        gap = r2 - s[inside]
        out[inside] = amplitude * np.exp(-1.0 / gap)
        return out

    def derivative(s: np.ndarray) -> np.ndarray:
        s, inside = _inside(s, r2)
        out = np.zeros_like(s)
        gap = r2 - s[inside]
        # ψ′ = −ψ / gap², folded into one exponent so the edge underflows cleanly
        out[inside] = -amplitude * np.exp(-1.0 / gap - 2.0 * np.log(gap))
        return out

    return RadialProfile(value, derivative, r2, name=f"bump(R={radius}, A={amplitude})")


def make_polynomial_profile(radius: float, amplitude: float) -> RadialProfile:
    """Build ``ψ(s) = A·(R² − s)⁴`` for ``s < R²`` and 0 otherwise."""
    if not radius > 0.0:
        msg = f"Profile radius must be positive, got {radius}"
        raise ValueError(msg)
    r2 = radius * radius

    def value(s: np.ndarray) -> np.ndarray:
        s, inside = _inside(s, r2)
        return np.where(inside, amplitude * (r2 - s) ** 4, 0.0)

    def derivative(s: np.ndarray) -> np.ndarray:
        s, inside = _inside(s, r2)
        return np.where(inside, -4.0 * amplitude * (r2 - s) ** 3, 0.0)

    return RadialProfile(
        value, derivative, r2, name=f"polybump(R={radius}, A={amplitude})"
    )


def make_zero_profile(radius: float = 1.0) -> RadialProfile:
    """Build the vanishing profile."""

    def zero(s: np.ndarray) -> np.ndarray:
        return np.zeros_like(np.asarray(s, dtype=float))

    return RadialProfile(zero, zero, radius * radius, name="zero")


def make_pressure_profile(
    psi: RadialProfile, degree: int = DEFAULT_PRESSURE_DEGREE
) -> RadialProfile:
    """Tabulate ``G(s) = 2∫_s^∞ (ψψ′·t + ψ²) dt`` for the pressure ``p = G(|x|²)``.

    G is computed by adaptive quadrature at Chebyshev nodes of ``[0, s_max]`` and
    interpolated; ``G′ = −2(ψψ′·s + ψ²)`` is exact.

    :param psi: velocity profile
    :param degree: Chebyshev interpolation degree
    :raise QuadratureError: if a table entry misses its accuracy target, or the
        interpolant deviates from direct quadrature at interior check points
    """
    s_max = psi.s_max

    def integrand(t: float) -> float:
        t_arr = np.array([t])
        p, dp = psi(t_arr)[0], psi.derivative(t_arr)[0]
        return 2.0 * (p * dp * t + p * p)

    def tail(s: float) -> float:
        value, abserr = integrate.quad(
            integrand,
            s,
            s_max,
            epsabs=PRESSURE_QUAD_EPSABS,
            epsrel=PRESSURE_QUAD_EPSREL,
            limit=200,
        )
        if abserr > PRESSURE_TABLE_TOLERANCE * max(1.0, abs(value)):
            msg = f"Pressure integral on [{s}, {s_max}] did not converge (error estimate {abserr:.3e})"
            raise QuadratureError(msg, abserr)
        return value

    table = Chebyshev.interpolate(np.vectorize(tail), degree, domain=[0.0, s_max])
    checkpoints = np.linspace(0.0, s_max, 7)[1:-1] + 0.01 * s_max
    deviation = max(abs(table(s) - tail(s)) for s in checkpoints)
    _logger.debug(
        "pressure table for %s: degree %s, self-check deviation %.3e",
        psi.name,
        degree,
        deviation,
    )
    if deviation > PRESSURE_TABLE_TOLERANCE * max(1.0, abs(tail(0.0))):
        msg = (
            f"Pressure table for {psi.name} at degree {degree} deviates from direct "
            f"quadrature by {deviation:.3e}"
        )
        raise QuadratureError(msg, deviation)

    def value(s: np.ndarray) -> np.ndarray:
        s, inside = _inside(s, s_max)
        return np.where(inside, table(np.clip(s, 0.0, s_max)), 0.0)

    def derivative(s: np.ndarray) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        p = psi(s)
        return -2.0 * (p * psi.derivative(s) * s + p * p)

    return RadialProfile(value, derivative, s_max, name=f"pressure[{psi.name}]")
