"""Radial solutions of the steady Euler system and tensor fields derived from a
velocity/pressure pair.
"""

import logging

import numpy as np

from igeuler.fields import SmoothField, fd_jacobian
from igeuler.fields.profiles import (
    DEFAULT_PRESSURE_DEGREE,
    RadialProfile,
    make_pressure_profile,
)
from igeuler.utils.types import Points, Values

_logger = logging.getLogger(__name__)

EPSILON = np.zeros((3, 3, 3))
EPSILON[0, 1, 2] = EPSILON[1, 2, 0] = EPSILON[2, 0, 1] = 1.0
EPSILON[0, 2, 1] = EPSILON[2, 1, 0] = EPSILON[1, 0, 2] = -1.0
EPSILON.setflags(write=False)


def _squared_radius(x: Points) -> np.ndarray:
    return np.einsum("...i,...i->...", x, x)


def radial_scalar(profile: RadialProfile) -> SmoothField:
    """Build the scalar field ``f(x) = ψ(|x|²)`` with analytic gradient ``2ψ′(|x|²)·x``."""

    def evaluate(x: Points) -> Values:
        return profile(_squared_radius(x))

    def first(x: Points) -> Values:
        return 2.0 * profile.derivative(_squared_radius(x))[..., None] * x

    return SmoothField(
        0, evaluate, profile.support_radius, first, name=f"scalar[{profile.name}]"
    )


def radial_velocity(psi: RadialProfile) -> SmoothField:
    """Build ``v(x) = ψ(|x|²)·x`` with analytic Jacobian ``ψδ_ij + 2ψ′x_ix_j``."""

    def evaluate(x: Points) -> Values:
        return psi(_squared_radius(x))[..., None] * x

    def first(x: Points) -> Values:
        s = _squared_radius(x)
        value = psi(s)[..., None, None]
        slope = psi.derivative(s)[..., None, None]
        return value * np.eye(3) + 2.0 * slope * x[..., :, None] * x[..., None, :]

    return SmoothField(
        1, evaluate, psi.support_radius, first, name=f"velocity[{psi.name}]"
    )


def radial_pressure(
    psi: RadialProfile, degree: int = DEFAULT_PRESSURE_DEGREE
) -> SmoothField:
    """Build the compactly supported pressure solving the Euler system for ``radial_velocity(ψ)``.

    :param psi: velocity profile
    :param degree: Chebyshev degree of the pressure table
    :raise QuadratureError: if the pressure table cannot be built accurately
    """
    return radial_scalar(make_pressure_profile(psi, degree))


def outer_product(v: SmoothField) -> SmoothField:
    """Build the rank-2 field ``v⊗v``."""

    def evaluate(x: Points) -> Values:
        u = v(x)
        return u[..., :, None] * u[..., None, :]

    def first(x: Points) -> Values:
        u = v(x)
        jac = v.jacobian(x)
        return (
            jac[..., :, None, :] * u[..., None, :, None]
            + u[..., :, None, None] * jac[..., None, :, :]
        )

    return SmoothField(2, evaluate, v.support_radius, first, name=f"outer[{v.name}]")


def q_zero(v: SmoothField, p: SmoothField) -> SmoothField:
    """Build ``Q₀ = (p + |v|²)δ_ij − 2v⊗v``."""
    radius = max(v.support_radius, p.support_radius)

    def evaluate(x: Points) -> Values:
        u = v(x)
        trace_part = p(x) + np.einsum("...i,...i->...", u, u)
        return trace_part[..., None, None] * np.eye(3) - 2.0 * u[..., :, None] * u[
            ..., None, :
        ]

    def first(x: Points) -> Values:
        u = v(x)
        jac = v.jacobian(x)
        grad_trace = p.jacobian(x) + 2.0 * np.einsum("...l,...lk->...k", u, jac)
        return grad_trace[..., None, None, :] * np.eye(3)[..., None] - 2.0 * (
            jac[..., :, None, :] * u[..., None, :, None]
            + u[..., :, None, None] * jac[..., None, :, :]
        )

    return SmoothField(2, evaluate, radius, first, name=f"Q0[{v.name}]")


def symmetric_gradient(u: SmoothField) -> SmoothField:
    """Apply the symmetric inner differentiation ``d_s`` to a scalar or vector field.

    :param u: field of rank 0 or 1
    :return: gradient (rank 1) or symmetrized Jacobian (rank 2)
    :raise ValueError: for rank-2 input
    """
    if u.rank == 0:
        return SmoothField(
            1, u.jacobian, u.support_radius, u.hessian, name=f"ds[{u.name}]"
        )
    if u.rank == 1:

        def evaluate(x: Points) -> Values:
            jac = u.jacobian(x)
            return 0.5 * (jac + np.swapaxes(jac, -1, -2))

        def first(x: Points) -> Values:
            hess = u.hessian(x)
            return 0.5 * (hess + np.swapaxes(hess, -2, -3))

        return SmoothField(2, evaluate, u.support_radius, first, name=f"ds[{u.name}]")
    msg = f"d_s is only provided for rank 0 and 1 potentials, got rank {u.rank}"
    raise ValueError(msg)


def psi_tensor(v: SmoothField) -> SmoothField:
    """Build Ψ, the symmetrization of ``curl(v⊗v)``.

    ``2Ψ^{ij} = ε_{ilm}∂_m(v^j v^l) + ε_{jlm}∂_m(v^i v^l)``.
    """

    def evaluate(x: Points) -> Values:
        u = v(x)
        jac = v.jacobian(x)
        # d[j, l, m] = ∂_m(v^j v^l)
        d = jac[..., :, None, :] * u[..., None, :, None] + u[
            ..., :, None, None
        ] * jac[..., None, :, :]
        a = np.einsum("ilm,...jlm->...ij", EPSILON, d)
        return 0.5 * (a + np.swapaxes(a, -1, -2))

    return SmoothField(2, evaluate, v.support_radius, name=f"Psi[{v.name}]")


def curl(v: SmoothField) -> SmoothField:
    """Build the vorticity ``ω = curl v`` (a vector field, not a symmetric tensor)."""

    def evaluate(x: Points) -> Values:
        return np.einsum("ijk,...kj->...i", EPSILON, v.jacobian(x))

    return SmoothField(1, evaluate, v.support_radius, name=f"curl[{v.name}]")


def laplacian(u: SmoothField) -> SmoothField:
    """Build ``Δu`` of a scalar field as the trace of its Hessian.

    :raise ValueError: if ``u`` is not a scalar field
    """
    if u.rank != 0:
        msg = f"The Laplacian is built for scalar fields, got rank {u.rank}"
        raise ValueError(msg)

    def evaluate(x: Points) -> Values:
        return np.einsum("...ii->...", u.hessian(x))

    return SmoothField(0, evaluate, u.support_radius, name=f"laplacian[{u.name}]")


def euler_residual(v: SmoothField, p: SmoothField, x: Points) -> Values:
    """Evaluate ``div(v⊗v) + ∇p`` by 4th-order central differences.

    :param v: velocity
    :param p: pressure
    :param x: points of shape ``(..., 3)``
    :return: residual vectors of shape ``(..., 3)``
    """
    x = np.asarray(x, dtype=float)
    radius = max(v.support_radius, p.support_radius)
    step = 1e-4 * radius
    vv = outer_product(v)
    divergence = np.einsum("...ijj->...i", fd_jacobian(vv.evaluator, x, step))
    return divergence + fd_jacobian(p.evaluator, x, step)


def radial_solution(
    psi: RadialProfile, degree: int = DEFAULT_PRESSURE_DEGREE
) -> tuple[SmoothField, SmoothField]:
    """Build the velocity/pressure pair of a radial profile."""
    _logger.debug("building radial solution for %s", psi.name)
    return radial_velocity(psi), radial_pressure(psi, degree)
