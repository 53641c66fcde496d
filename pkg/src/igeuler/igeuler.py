"""Full-service interface to building solution fields, the functions on line
space derived from them, and the verification suites that check them.

"""

import hashlib
import logging
import logging.config
import os
import pathlib
from collections.abc import Sequence
from importlib import resources

import numpy as np
import yaml
from pydantic import ValidationError

from igeuler.cli.schema import FieldFamilyConfig, RunConfig, SuiteSettings
from igeuler.fields import SmoothField
from igeuler.fields.profiles import (
    DEFAULT_PRESSURE_DEGREE,
    RadialProfile,
    make_bump_profile,
    make_polynomial_profile,
    make_zero_profile,
)
from igeuler.fields.solutions import q_zero, radial_scalar, radial_solution
from igeuler.geometry import LineNH, plane_frame
from igeuler.operators import FDSpec
from igeuler.quadrature import QuadratureSpec
from igeuler.transforms import GrassmannFunction
from igeuler.transforms.euler import iq_zero_function, w_function, xray_outer_function
from igeuler.transforms.xray import radon_plane, xray_function
from igeuler.utils.types import HalfPlaneSelector, ProfileKind, SampleObject, SuiteName
from igeuler.verify import ResidualReport
from igeuler.verify.pool import ordered_map
from igeuler.verify.study import StudyReport, run_study
from igeuler.verify.suites import (
    suite_conjectures_radial,
    suite_kernel_and_range,
    suite_lemma31,
    suite_main_pde,
    suite_pointwise_pdes,
    suite_quadrature_convergence,
    suite_w_construction,
)

# Configure logging from file or use default
logging_config_file = os.environ.get("IGEULER_LOGGING_CONFIG", None)
if logging_config_file and pathlib.Path(logging_config_file).is_file():
    with pathlib.Path(logging_config_file).open() as fd:
        try:
            config = yaml.safe_load(fd.read())
            logging.config.dictConfig(config)
        except Exception:
            logging.exception("Error in Logging Configuration. Using default configs")

_logger = logging.getLogger(__name__)


class ConfigError(ValueError):
    """Indicates an unreadable configuration or a reference to an unknown suite."""


def default_config_path() -> pathlib.Path:
    """Return the path of the packaged default configuration."""
    return pathlib.Path(str(resources.files("igeuler") / "data" / "default_config.json"))


def load_config(path: str | os.PathLike | None = None) -> RunConfig:
    """Load a run configuration.

    Resolution order: explicit ``path``, then the ``IGEULER_CONFIG`` environment
    value, then the packaged default.

    :raise ConfigError: if the file is missing or does not validate
    """
    path = path or os.environ.get("IGEULER_CONFIG") or default_config_path()
    config_path = pathlib.Path(path)
    try:
        text = config_path.read_text(encoding="utf-8")
    except OSError as e:
        msg = f"Cannot read configuration {config_path}: {e}"
        raise ConfigError(msg) from e
    try:
        cfg = RunConfig.model_validate_json(text)
    except ValidationError as e:
        msg = f"Invalid configuration {config_path}: {e}"
        raise ConfigError(msg) from e
    _logger.debug("load_config: %s → %s", config_path, config_hash(cfg))
    return cfg


def save_config(cfg: RunConfig, path: str | os.PathLike) -> None:
    """Write a configuration as indented JSON."""
    pathlib.Path(path).write_text(cfg.model_dump_json(indent=2) + "\n", encoding="utf-8")


def config_hash(cfg: RunConfig) -> str:
    """Return the SHA-256 of the canonical JSON dump of a configuration."""
    return hashlib.sha256(cfg.model_dump_json().encode("utf-8")).hexdigest()


def create_profile(kind: ProfileKind, radius: float = 1.0, amplitude: float = 1.0) -> RadialProfile:
    """Provide factory to create a radial profile of the requested family.

    * ``bump``: ``A·exp(−1/(R² − s))``
    * ``polybump``: ``A·(R² − s)⁴``
    * ``zero``: the vanishing profile on the ball of radius R
    """
    if kind == ProfileKind.BUMP:
        profile = make_bump_profile(radius, amplitude)
    elif kind == ProfileKind.POLYNOMIAL:
        profile = make_polynomial_profile(radius, amplitude)
    elif kind == ProfileKind.ZERO:
        profile = make_zero_profile(radius)
    else:
        msg = f"Profile kind {kind} is not implemented"
        raise ValueError(msg)
    _logger.debug("create_profile: %s → %s", kind, profile.name)
    return profile


class IgEuler:
    """Define core IgEuler class."""

    def __init__(
        self,
        /,
        velocity: SmoothField,
        pressure: SmoothField,
        quadrature: QuadratureSpec | None = None,
        fd: FDSpec | None = None,
        jobs: int | None = None,
        profile: RadialProfile | None = None,
        pressure_degree: int = DEFAULT_PRESSURE_DEGREE,
    ) -> None:
        """Initialize an instance around a velocity/pressure pair. ``from_family``
        builds the radial solution of a configured profile.

        :param velocity: velocity field v
        :param pressure: pressure field p
        :param quadrature: quadrature policy for every integral
        :param fd: difference policy for every operator
        :param jobs: worker count for sample sweeps
        :param profile: radial profile the pair was built from, if any
        :param pressure_degree: Chebyshev degree of pressure tables rebuilt from ``profile``
        """
        self.velocity = velocity
        self.pressure = pressure
        self.quadrature = quadrature or QuadratureSpec()
        self.fd = fd or FDSpec()
        self.jobs = jobs
        self.profile = profile
        self.pressure_degree = pressure_degree

    @classmethod
    def from_family(
        cls,
        family: FieldFamilyConfig,
        quadrature: QuadratureSpec | None = None,
        fd: FDSpec | None = None,
        jobs: int | None = None,
    ) -> "IgEuler":
        """Build the radial solution of a configured profile family.

        :raise QuadratureError: if the pressure table cannot be built accurately
        """
        profile = create_profile(family.kind, family.radius, family.amplitude)
        velocity, pressure = radial_solution(profile, family.pressure_degree)
        return cls(
            velocity, pressure, quadrature, fd, jobs, profile, family.pressure_degree
        )

    @classmethod
    def from_config(cls, cfg: RunConfig, jobs: int | None = None) -> "IgEuler":
        """Build an instance from a run configuration; ``jobs`` overrides the config."""
        return cls.from_family(cfg.family, cfg.quadrature, cfg.fd, jobs or cfg.jobs)

    def w(self, variant: HalfPlaneSelector = HalfPlaneSelector.H2) -> GrassmannFunction:
        """Return w computed on the half-plane ``variant``."""
        return w_function(self.velocity, self.quadrature, variant)

    def iq_zero(self) -> GrassmannFunction:
        """Return the unit-speed ``IQ₀``."""
        return iq_zero_function(self.velocity, self.pressure, self.quadrature)

    def xray_vv(self) -> GrassmannFunction:
        """Return the unit-speed ``I(v⊗v)``."""
        return xray_outer_function(self.velocity, self.quadrature)

    def xray_p(self) -> GrassmannFunction:
        """Return the unit-speed ``Ip``."""
        return xray_function(self.pressure, self.quadrature)

    def scalar_field(self) -> SmoothField:
        """Return the scalar bump ``ψ(|x|²)`` of the profile, or the pressure."""
        if self.profile is None:
            return self.pressure
        return radial_scalar(self.profile)

    def run_suite(
        self, name: SuiteName, settings: SuiteSettings, seed: int = 0
    ) -> list[ResidualReport]:
        """Run one named suite on this instance's fields.

        The kernel/range suite produces one report per configured tensor rank.

        :raise ConfigError: for the radial conjecture suite without a profile
        """
        v, p = self.velocity, self.pressure
        tolerances = settings.tolerances
        common = {"seed": seed, "tolerances": tolerances}
        _logger.info("running suite %s with seed %s", name.value, seed)
        if name == SuiteName.LEMMA31:
            return [
                suite_lemma31(
                    v,
                    p,
                    settings.lemma31_planes,
                    settings.lemma31_directions,
                    quadrature=self.quadrature,
                    jobs=self.jobs,
                    **common,
                )
            ]
        if name == SuiteName.KERNEL_AND_RANGE:
            return [
                suite_kernel_and_range(
                    h,
                    n_lines=settings.kernel_lines,
                    n_potentials=settings.kernel_potentials,
                    quadrature=self.quadrature,
                    fd=self.fd,
                    include_l3=settings.include_l3,
                    jobs=self.jobs,
                    **common,
                )
                for h in settings.kernel_ranks
            ]
        if name == SuiteName.W_CONSTRUCTION:
            return [
                suite_w_construction(
                    v,
                    p,
                    n_samples=settings.w_samples,
                    n_corollary=settings.corollary_lines,
                    quadrature=self.quadrature,
                    fd=self.fd,
                    include_corollary=settings.include_corollary,
                    jobs=self.jobs,
                    **common,
                )
            ]
        if name == SuiteName.MAIN_PDE:
            return [
                suite_main_pde(
                    v,
                    p,
                    settings.main_pde_lines,
                    quadrature=self.quadrature,
                    fd=self.fd,
                    include_covariance=settings.include_covariance,
                    include_remark=settings.include_remark,
                    jobs=self.jobs,
                    **common,
                )
            ]
        if name == SuiteName.CONJECTURES_RADIAL:
            if self.profile is None:
                msg = "The radial conjecture suite needs the radial profile of the solution"
                raise ConfigError(msg)
            return [
                suite_conjectures_radial(
                    self.profile,
                    settings.conjecture_lines,
                    settings.conjecture_planes,
                    quadrature=self.quadrature,
                    pressure_degree=self.pressure_degree,
                    jobs=self.jobs,
                    **common,
                )
            ]
        if name == SuiteName.POINTWISE_PDES:
            return [suite_pointwise_pdes(v, p, settings.pointwise_points, **common)]
        if name == SuiteName.CONVERGENCE:
            return [
                suite_quadrature_convergence(
                    v,
                    p,
                    settings.convergence_samples,
                    quadrature=self.quadrature,
                    jobs=self.jobs,
                    **common,
                )
            ]
        msg = f"Suite {name} is not implemented"
        raise ConfigError(msg)

    def run_study(self, seed: int = 0, n_lines: int = 10) -> StudyReport:
        """Sweep the difference step on the scalar field of this instance."""
        return run_study(
            self.scalar_field(), seed, n_lines, self.quadrature, self.fd, jobs=self.jobs
        )

    def sample(
        self, obj: SampleObject, points: Sequence[tuple[float, float, float, float]]
    ) -> list[float]:
        """Evaluate an object over grid points, in grid order.

        Line objects (``w``, ``IQ0``, ``xray``) take ``(y₁, y₂, α₁, α₂)``; ``J`` takes
        ``(θ, φ, d, ·)`` for the plane with normal ``(sinθcosφ, sinθsinφ, cosθ)`` at
        signed distance ``d``.
        """
        if obj == SampleObject.J:
            q0 = q_zero(self.velocity, self.pressure)

            def evaluate(point: tuple[float, float, float, float]) -> float:
                theta, phi, d = point[:3]
                normal = np.array(
                    [
                        np.sin(theta) * np.cos(phi),
                        np.sin(theta) * np.sin(phi),
                        np.cos(theta),
                    ]
                )
                return radon_plane(q0, plane_frame(normal, d), self.quadrature)

            return ordered_map(evaluate, points, self.jobs)

        if obj == SampleObject.W:
            func = self.w()
        elif obj == SampleObject.IQ0:
            func = self.iq_zero()
        elif obj == SampleObject.XRAY:
            func = xray_function(self.scalar_field(), self.quadrature)
        else:
            msg = f"Sample object {obj} is not implemented"
            raise ConfigError(msg)
        return ordered_map(lambda point: func(LineNH(*point)), points, self.jobs)
