"""Provide configuration definitions for command-line runs."""

from pydantic import BaseModel, ConfigDict, Field, field_validator

from igeuler.fields.profiles import DEFAULT_PRESSURE_DEGREE
from igeuler.operators import FDSpec
from igeuler.quadrature import QuadratureSpec
from igeuler.utils.types import ProfileKind, SuiteName
from igeuler.verify.suites import DEFAULT_TOLERANCES


class FieldFamilyConfig(BaseModel):
    """Describe the radial profile the solution is built from"""

    model_config = ConfigDict(frozen=True)

    kind: ProfileKind = ProfileKind.BUMP
    radius: float = Field(default=1.0, gt=0.0)
    amplitude: float = 1.0
    pressure_degree: int = Field(default=DEFAULT_PRESSURE_DEGREE, ge=16)


class SuiteSettings(BaseModel):
    """Describe sample counts, switches and tolerances of the verification suites"""

    model_config = ConfigDict(frozen=True)

    enabled: list[SuiteName] = [
        SuiteName.LEMMA31,
        SuiteName.KERNEL_AND_RANGE,
        SuiteName.W_CONSTRUCTION,
        SuiteName.MAIN_PDE,
        SuiteName.CONJECTURES_RADIAL,
        SuiteName.POINTWISE_PDES,
        SuiteName.CONVERGENCE,
    ]
    lemma31_planes: int = Field(default=20, ge=0)
    lemma31_directions: int = Field(default=3, ge=1)
    kernel_lines: int = Field(default=50, ge=1)
    kernel_potentials: int = Field(default=3, ge=0)
    kernel_ranks: list[int] = [0, 1, 2]
    include_l3: bool = False
    w_samples: int = Field(default=50, ge=1)
    corollary_lines: int = Field(default=1, ge=1)
    include_corollary: bool = True
    main_pde_lines: int = Field(default=20, ge=1)
    include_covariance: bool = True
    include_remark: bool = False
    conjecture_lines: int = Field(default=100, ge=1)
    conjecture_planes: int = Field(default=30, ge=1)
    pointwise_points: int = Field(default=1000, ge=1)
    convergence_samples: int = Field(default=5, ge=1)
    tolerances: dict[str, float] = dict(DEFAULT_TOLERANCES)

    @field_validator("kernel_ranks")
    @classmethod
    def check_ranks(cls, ranks: list[int]) -> list[int]:
        """Require tensor ranks in {0, 1, 2}."""
        bad = [h for h in ranks if h not in (0, 1, 2)]
        if bad:
            msg = f"Tensor ranks must be 0, 1 or 2, got {bad}"
            raise ValueError(msg)
        return ranks

    @field_validator("tolerances")
    @classmethod
    def check_tolerances(cls, tolerances: dict[str, float]) -> dict[str, float]:
        """Require known tolerance keys with positive values."""
        unknown = sorted(set(tolerances) - set(DEFAULT_TOLERANCES))
        if unknown:
            msg = f"Unknown tolerance keys {unknown}; known keys are {sorted(DEFAULT_TOLERANCES)}"
            raise ValueError(msg)
        nonpositive = sorted(k for k, v in tolerances.items() if not v > 0.0)
        if nonpositive:
            msg = f"Tolerances must be positive: {nonpositive}"
            raise ValueError(msg)
        return {**DEFAULT_TOLERANCES, **tolerances}


class RunConfig(BaseModel):
    """Describe a complete, reproducible run"""

    model_config = ConfigDict(frozen=True)

    family: FieldFamilyConfig = FieldFamilyConfig()
    quadrature: QuadratureSpec = QuadratureSpec()
    fd: FDSpec = FDSpec()
    suites: SuiteSettings = SuiteSettings()
    seed: int = Field(default=0, ge=0)
    jobs: int | None = Field(default=None, ge=1)
    out: str | None = None
