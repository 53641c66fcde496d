"""Finite-difference realizations of the John operator L and the invariant
operators P and Δ_M acting on functions of lines, and their nested powers.

Derivatives are taken in the chart coordinates ``(y₁, y₂, α₁, α₂)``:

* ``L = ∂²/∂α₂∂y₁ − ∂²/∂α₁∂y₂``
* ``P = k²L + α₁∂_{y₂} − α₂∂_{y₁}``
* ``Δ_M = k₁²∂²_{y₁} + k₂²∂²_{y₂} + 2α₁α₂∂²_{y₁y₂}``
"""

import itertools
import logging
from collections.abc import Callable, Sequence
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.spatial.transform import Rotation

from igeuler.geometry import LineNH, chart_from_point_direction, k_factors
from igeuler.transforms import GrassmannFunction
from igeuler.utils.types import OperatorName

_logger = logging.getLogger(__name__)

SUPPORT_STEP_RATIO = 50.0

# (offsets, weights) per (derivative order, stencil order)
_STENCILS: dict[tuple[int, int], tuple[tuple[float, ...], tuple[float, ...]]] = {
    (1, 2): ((-1.0, 1.0), (-0.5, 0.5)),
    (1, 4): ((-2.0, -1.0, 1.0, 2.0), (1 / 12, -8 / 12, 8 / 12, -1 / 12)),
    (2, 2): ((-1.0, 0.0, 1.0), (1.0, -2.0, 1.0)),
    (2, 4): ((-2.0, -1.0, 0.0, 1.0, 2.0), (-1 / 12, 16 / 12, -30 / 12, 16 / 12, -1 / 12)),
}


class StencilError(Exception):
    """Indicates a finite-difference stencil leaving the sampled chart box."""


class FDSpec(BaseModel):
    """Central-difference policy in the chart coordinates."""

    model_config = ConfigDict(frozen=True)

    h_y: float = Field(default=5e-3, gt=0.0)
    h_alpha: float = Field(default=5e-3, gt=0.0)
    order: Literal[2, 4] = 4
    richardson: int = Field(default=1, ge=0, le=3)
    alpha_box: float = Field(default=3.0, gt=0.0)

    @property
    def steps(self) -> tuple[float, float, float, float]:
        """Return per-coordinate steps for ``(y₁, y₂, α₁, α₂)``."""
        return (self.h_y, self.h_y, self.h_alpha, self.h_alpha)

    def scaled(self, factor: float) -> "FDSpec":
        """Return the policy with both steps multiplied by ``factor``."""
        return self.model_copy(
            update={"h_y": factor * self.h_y, "h_alpha": factor * self.h_alpha}
        )

    def check_support(self, support_radius: float) -> None:
        """Require ``h_y ≤ R/50`` for a field supported in radius ``R``.

        :raise ValueError: if the y-step is too coarse for the support
        """
        if self.h_y > support_radius / SUPPORT_STEP_RATIO:
            msg = (
                f"Step h_y={self.h_y} is too coarse for support radius {support_radius} "
                f"(limit {support_radius / SUPPORT_STEP_RATIO})"
            )
            raise ValueError(msg)


def _raw_partial(
    u: Callable[[LineNH], float],
    line: LineNH,
    orders: tuple[int, int, int, int],
    steps: tuple[float, ...],
    fd: FDSpec,
) -> float:
    axes = []
    for order, step in zip(orders, steps, strict=True):
        if order == 0:
            axes.append(((0.0,), (1.0,)))
            continue
        offsets, weights = _STENCILS[(order, fd.order)]
        axes.append(
            (
                tuple(o * step for o in offsets),
                tuple(w / step**order for w in weights),
            )
        )
    total = 0.0
    for combo in itertools.product(*(zip(*axis, strict=True) for axis in axes)):
        delta = tuple(c[0] for c in combo)
        weight = float(np.prod([c[1] for c in combo]))
        shifted = line.shifted(delta)
        if max(abs(shifted.a1), abs(shifted.a2)) > fd.alpha_box:
            msg = (
                f"Stencil point {shifted.coords} leaves the chart box "
                f"|α| ≤ {fd.alpha_box}"
            )
            raise StencilError(msg)
        total += weight * u(shifted)
    return total


def partial(
    u: Callable[[LineNH], float],
    line: LineNH,
    orders: tuple[int, int, int, int],
    fd: FDSpec,
) -> float:
    """Approximate a mixed partial derivative in ``(y₁, y₂, α₁, α₂)``.

    Tensor-product central stencils, refined by ``fd.richardson`` levels of step
    halving with Richardson extrapolation.

    :param u: function on lines
    :param line: evaluation line
    :param orders: derivative order per coordinate, each 0, 1 or 2
    :param fd: difference policy
    :raise StencilError: if a stencil point has ``|α_i|`` beyond the chart box
    """
    if any(o not in (0, 1, 2) for o in orders):
        msg = f"Derivative orders must be 0, 1 or 2 per coordinate, got {orders}"
        raise ValueError(msg)
    if not any(orders):
        return float(u(line))
    estimates = [
        _raw_partial(u, line, orders, tuple(s / 2**j for s in fd.steps), fd)
        for j in range(fd.richardson + 1)
    ]
    power = fd.order
    while len(estimates) > 1:
        factor = 2.0**power
        estimates = [
            (factor * fine - coarse) / (factor - 1.0)
            for coarse, fine in zip(estimates[:-1], estimates[1:], strict=True)
        ]
        power += 2
    return estimates[0]


def john_L(u: Callable[[LineNH], float], line: LineNH, fd: FDSpec) -> float:  # noqa: N802
    """Apply ``L = ∂²/∂α₂∂y₁ − ∂²/∂α₁∂y₂``."""
    return partial(u, line, (1, 0, 0, 1), fd) - partial(u, line, (0, 1, 1, 0), fd)


def op_P(u: Callable[[LineNH], float], line: LineNH, fd: FDSpec) -> float:  # noqa: N802
    """Apply ``P = k²L + α₁∂_{y₂} − α₂∂_{y₁}``."""
    k = line.k
    return (
        k * k * john_L(u, line, fd)
        + line.a1 * partial(u, line, (0, 1, 0, 0), fd)
        - line.a2 * partial(u, line, (1, 0, 0, 0), fd)
    )


def op_laplaceM(u: Callable[[LineNH], float], line: LineNH, fd: FDSpec) -> float:  # noqa: N802
    """Apply the fiber-wise Laplacian ``k₁²∂²_{y₁} + k₂²∂²_{y₂} + 2α₁α₂∂²_{y₁y₂}``."""
    _, k1, k2 = k_factors(line)
    value = k1 * k1 * partial(u, line, (2, 0, 0, 0), fd) + k2 * k2 * partial(
        u, line, (0, 2, 0, 0), fd
    )
    if line.a1 != 0.0 and line.a2 != 0.0:
        value += 2.0 * line.a1 * line.a2 * partial(u, line, (1, 1, 0, 0), fd)
    return value


OPERATORS: dict[OperatorName, Callable[[Callable[[LineNH], float], LineNH, FDSpec], float]] = {
    OperatorName.L: john_L,
    OperatorName.P: op_P,
    OperatorName.LAPLACE_M: op_laplaceM,
}


def _memoized(u: Callable[[LineNH], float]) -> GrassmannFunction:
    if isinstance(u, GrassmannFunction):
        return u if u.memoize else u.with_memo()
    return GrassmannFunction(u, getattr(u, "__name__", "u"), memoize=True)


def op_chain(
    ops: Sequence[OperatorName],
    u: Callable[[LineNH], float],
    line: LineNH,
    fd: FDSpec,
) -> float:
    """Apply a composition of operators, outermost first.

    The innermost operator uses the base steps without extrapolation; each enclosing
    level doubles the steps, and only the outermost level extrapolates. Every level
    memoizes its values so overlapping stencils share evaluations.

    :param ops: operator names, ``ops[0]`` applied last
    :raise StencilError: if any nested stencil leaves the chart box
    """
    if not ops:
        return float(u(line))
    depth = len(ops)
    func = _memoized(u)
    plain = fd.model_copy(update={"richardson": 0})
    for level, name in enumerate(reversed(ops[1:])):
        level_fd = plain.scaled(2.0**level)
        operator = OPERATORS[name]
        func = GrassmannFunction(
            lambda m, op=operator, f=func, s=level_fd: op(f, m, s),
            f"{name.value}({func.provenance})",
            func.convention,
            func.sources,
            memoize=True,
        )
    result = OPERATORS[ops[0]](func, line, fd.scaled(2.0 ** (depth - 1)))
    _logger.debug(
        "applied %s at %s with %s memoized outer-level values",
        "∘".join(o.value for o in ops),
        line.coords,
        func.memo_size,
    )
    return result


def op_power(
    op: OperatorName,
    n: int,
    u: Callable[[LineNH], float],
    line: LineNH,
    fd: FDSpec,
) -> float:
    """Apply ``op`` n times (``1 ≤ n ≤ 3``) by nested differences.

    :raise ValueError: for n outside ``1..3``
    :raise StencilError: if any nested stencil leaves the chart box
    """
    if not 1 <= n <= 3:
        msg = f"Operator powers are provided for 1 ≤ n ≤ 3, got {n}"
        raise ValueError(msg)
    if n == 1:
        return OPERATORS[op](u, line, fd)
    return op_chain([op] * n, u, line, fd)


def op_P_definition(  # noqa: N802
    u: Callable[[LineNH], float], line: LineNH, fd: FDSpec
) -> float:
    """Evaluate Pu at a line by moving it to the vertical line through the origin.

    With a rigid motion ``g`` taking ``line`` to the x₃-axis, ``Pu(line) = L u_g(0)``
    where ``u_g(m) = u(g⁻¹(m))``. Any such motion gives the same value.
    """
    anchor = line.base_point
    rotation, _ = Rotation.align_vectors([[0.0, 0.0, 1.0]], [line.unit_direction])
    inverse = rotation.inv()

    def pulled_back(m: LineNH) -> float:
        point, direction = m.point_direction()
        return u(
            chart_from_point_direction(
                anchor + inverse.apply(point), inverse.apply(direction)
            )
        )

    return john_L(pulled_back, LineNH(0.0, 0.0, 0.0, 0.0), fd)


def remark_pde(u: Callable[[LineNH], float], line: LineNH, fd: FDSpec) -> float:
    """Evaluate ``P³u + 4PΔ_M u``, which vanishes on X-ray images of symmetric rank-2 fields."""
    cubic = op_chain([OperatorName.P] * 3, u, line, fd)
    mixed = op_chain([OperatorName.P, OperatorName.LAPLACE_M], u, line, fd)
    return cubic + 4.0 * mixed
