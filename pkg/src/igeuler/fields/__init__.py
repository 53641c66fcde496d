"""Provide compactly supported smooth fields on ℝ³ and their derivatives.

A field is a vectorized evaluator plus metadata rather than a grid: evaluators take
points of shape ``(..., 3)`` and return values of shape ``(..., 3, ..., 3)`` with one
trailing axis of length 3 per tensor index. Derivative arrays append one more axis
per differentiation, so ``jacobian(x)[..., i, k] = ∂_k f_i(x)``.
"""

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from igeuler.utils.types import Points, Values

FIRST_STEP_FACTOR = 1e-4
SECOND_STEP_FACTOR = 1e-3

_FIRST_OFFSETS = (-2.0, -1.0, 1.0, 2.0)
_FIRST_WEIGHTS = (1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0)


def fd_jacobian(
    func: Callable[[Points], Values], x: Points, step: float
) -> Values:
    """Differentiate a vectorized evaluator with 4th-order central differences.

    :param func: evaluator mapping points ``(..., 3)`` to values ``(..., *shape)``
    :param x: evaluation points
    :param step: stencil spacing
    :return: array of shape ``(..., *shape, 3)``
    """
    x = np.asarray(x, dtype=float)
    columns = []
    for k in range(3):
        shift = np.zeros(3)
        shift[k] = step
        column = sum(
            w * np.asarray(func(x + o * shift))
            for o, w in zip(_FIRST_OFFSETS, _FIRST_WEIGHTS, strict=True)
        )
        columns.append(column / step)
    return np.stack(columns, axis=-1)


@dataclass(frozen=True)
class SmoothField:
    """Compactly supported smooth symmetric tensor field of rank 0, 1 or 2.

    ``first`` and ``second`` are optional analytic derivative evaluators; missing
    derivatives are computed by central differences with steps proportional to the
    support radius.
    """

    rank: int
    evaluator: Callable[[Points], Values]
    support_radius: float
    first: Callable[[Points], Values] | None = None
    second: Callable[[Points], Values] | None = None
    name: str = ""

    def __post_init__(self) -> None:
        """Check rank and support metadata."""
        if self.rank not in (0, 1, 2):
            msg = f"Field rank must be 0, 1 or 2, got {self.rank}"
            raise ValueError(msg)
        if not self.support_radius > 0.0:
            msg = f"Support radius must be positive, got {self.support_radius}"
            raise ValueError(msg)

    @property
    def symmetric(self) -> bool:
        """Return True: only symmetric tensor fields are represented."""
        return True

    @property
    def shape(self) -> tuple[int, ...]:
        """Return the component shape of one value."""
        return (3,) * self.rank

    def __call__(self, x: Points) -> Values:
        """Evaluate components at points ``x``."""
        return np.asarray(self.evaluator(np.asarray(x, dtype=float)))

    def jacobian(self, x: Points) -> Values:
        """Evaluate first partial derivatives (analytic when available)."""
        x = np.asarray(x, dtype=float)
        if self.first is not None:
            return np.asarray(self.first(x))
        return fd_jacobian(self.evaluator, x, FIRST_STEP_FACTOR * self.support_radius)

    def hessian(self, x: Points) -> Values:
        """Evaluate second partial derivatives.

        Uses the analytic Hessian, else differences of the analytic Jacobian, else
        nested differences with a coarser step to limit round-off.
        """
        x = np.asarray(x, dtype=float)
        if self.second is not None:
            return np.asarray(self.second(x))
        if self.first is not None:
            return fd_jacobian(self.first, x, FIRST_STEP_FACTOR * self.support_radius)
        step = SECOND_STEP_FACTOR * self.support_radius
        return fd_jacobian(
            lambda y: fd_jacobian(self.evaluator, y, step), x, step
        )

    def contract(self, x: Points, direction: np.ndarray) -> np.ndarray:
        """Evaluate ``f(x)(ξ, …, ξ)`` for a fixed direction ``ξ``."""
        values = self(x)
        for _ in range(self.rank):
            values = values @ direction
        return values


def zero_field(rank: int, support_radius: float = 1.0) -> SmoothField:
    """Return the identically vanishing field of the given rank."""
    shape = (3,) * rank

    def evaluate(x: Points) -> Values:
        return np.zeros(x.shape[:-1] + shape)

    def first(x: Points) -> Values:
        return np.zeros(x.shape[:-1] + shape + (3,))

    def second(x: Points) -> Values:
        return np.zeros(x.shape[:-1] + shape + (3, 3))

    return SmoothField(rank, evaluate, support_radius, first, second, name="zero")
