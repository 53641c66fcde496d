"""Non-radial compactly supported test fields: off-center bumps carrying affine
tensor coefficients, random draws of those, and rotated copies of any field.
"""

import numpy as np

from igeuler.fields import SmoothField
from igeuler.geometry import rotation_z
from igeuler.utils.types import Points, Values


def _offset_bump(x: Points, center: np.ndarray, radius: float) -> tuple[np.ndarray, np.ndarray]:
    """Return ``b(x) = exp(−1/(R² − |x−c|²))`` and its gradient."""
    d = x - center
    gap = radius * radius - np.einsum("...i,...i->...", d, d)
    inside = gap > 0.0
    safe = np.where(inside, gap, 1.0)
    value = np.where(inside, np.exp(-1.0 / safe), 0.0)
    slope = np.where(inside, -np.exp(-1.0 / safe - 2.0 * np.log(safe)), 0.0)
    return value, 2.0 * slope[..., None] * d


def offset_scalar_bump(center: np.ndarray, radius: float, amplitude: float) -> SmoothField:
    """Build ``u(x) = A·exp(−1/(R² − |x−c|²))`` with analytic gradient."""
    center = np.asarray(center, dtype=float)

    def evaluate(x: Points) -> Values:
        return amplitude * _offset_bump(x, center, radius)[0]

    def first(x: Points) -> Values:
        return amplitude * _offset_bump(x, center, radius)[1]

    support = float(np.linalg.norm(center)) + radius
    return SmoothField(0, evaluate, support, first, name="offset_bump")


def affine_bump_field(
    rank: int,
    center: np.ndarray,
    radius: float,
    constant: np.ndarray,
    linear: np.ndarray,
) -> SmoothField:
    """Build ``f(x) = b(x)·(a + B·x)`` with an off-center bump ``b``.

    :param rank: tensor rank (0, 1 or 2)
    :param center: bump center
    :param radius: bump radius
    :param constant: coefficient ``a`` of shape ``(3,)*rank``, symmetrized for rank 2
    :param linear: coefficient ``B`` of shape ``(3,)*rank + (3,)``, symmetrized for rank 2
    """
    center = np.asarray(center, dtype=float)
    constant = np.asarray(constant, dtype=float)
    linear = np.asarray(linear, dtype=float)
    if rank == 2:
        constant = 0.5 * (constant + constant.T)
        linear = 0.5 * (linear + np.swapaxes(linear, 0, 1))

    def coefficients(x: Points) -> Values:
        return constant + np.tensordot(x, linear, axes=([-1], [-1])).reshape(
            x.shape[:-1] + constant.shape
        )

    def evaluate(x: Points) -> Values:
        bump = _offset_bump(x, center, radius)[0]
        return bump.reshape(bump.shape + (1,) * rank) * coefficients(x)

    def first(x: Points) -> Values:
        bump, grad = _offset_bump(x, center, radius)
        coeff = coefficients(x)
        return (
            coeff[..., None] * grad.reshape(grad.shape[:-1] + (1,) * rank + (3,))
            + bump.reshape(bump.shape + (1,) * (rank + 1)) * linear
        )

    support = float(np.linalg.norm(center)) + radius
    return SmoothField(rank, evaluate, support, first, name=f"affine_bump[rank {rank}]")


def random_tensor_field(rank: int, rng: np.random.Generator) -> SmoothField:
    """Draw an affine bump field of the given rank, supported in the unit ball."""
    center = rng.uniform(-0.25, 0.25, size=3)
    radius = float(rng.uniform(0.5, 0.7))
    constant = rng.normal(size=(3,) * rank)
    linear = rng.normal(size=(3,) * rank + (3,))
    return affine_bump_field(rank, center, radius, constant, linear)


def random_potential(rank: int, rng: np.random.Generator) -> SmoothField:
    """Draw a potential ``u`` of rank 0 or 1 for the kernel of the ray transform."""
    if rank == 0:
        return offset_scalar_bump(
            rng.uniform(-0.25, 0.25, size=3),
            float(rng.uniform(0.5, 0.7)),
            float(rng.uniform(0.5, 2.0)),
        )
    return random_tensor_field(rank, rng)


def rotated_field(field: SmoothField, theta: float) -> SmoothField:
    """Push a field forward by the rotation about the x₃-axis by ``theta``.

    ``f_θ(x) = R·f(Rᵀx)`` with every tensor index transformed by R.
    """
    rot = rotation_z(theta)

    def transform(values: Values) -> Values:
        if field.rank == 0:
            return values
        if field.rank == 1:
            return values @ rot.T
        return np.einsum("ia,...ab,jb->...ij", rot, values, rot)

    def evaluate(x: Points) -> Values:
        return transform(field(np.asarray(x) @ rot))

    return SmoothField(
        field.rank, evaluate, field.support_radius, name=f"rotated[{field.name}]"
    )
