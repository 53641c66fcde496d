"""Provide helpful type definitions and references."""

from enum import StrEnum

import numpy as np
import numpy.typing as npt

# points are (..., 3) arrays; field values carry the rank axes after the point axes
Points = npt.NDArray[np.float64]
Values = npt.NDArray[np.float64]


class ProfileKind(StrEnum):
    """Define supported radial profile families"""

    BUMP = "bump"
    POLYNOMIAL = "polybump"
    ZERO = "zero"


class HalfPlaneSelector(StrEnum):
    """Define the half-planes bounded by a line that carry explicit formulas"""

    H1 = "H1"
    H2 = "H2"
    ROTATED = "rotated"


class Convention(StrEnum):
    """Define normalizations of line integrals over tensor fields.

    ``CHART`` integrates along the non-unit direction (α₁, α₂, 1) with respect to the
    x₃ parameter; ``UNIT_SPEED`` contracts with the unit direction and integrates
    with respect to arc length, giving a genuine function on line space.
    """

    CHART = "chart"
    UNIT_SPEED = "unit_speed"


class SuiteName(StrEnum):
    """Define the named verification suites"""

    LEMMA31 = "lemma31"
    KERNEL_AND_RANGE = "kernel_and_range"
    W_CONSTRUCTION = "w_construction"
    MAIN_PDE = "main_pde"
    CONJECTURES_RADIAL = "conjectures_radial"
    POINTWISE_PDES = "pointwise_pdes"
    CONVERGENCE = "convergence"


class SampleObject(StrEnum):
    """Define objects that can be swept over a grid by ``igeuler sample``"""

    W = "w"
    IQ0 = "IQ0"
    XRAY = "xray"
    J = "J"


class OperatorName(StrEnum):
    """Define the invariant differential operators on functions of lines"""

    L = "L"
    P = "P"
    LAPLACE_M = "laplace_m"
