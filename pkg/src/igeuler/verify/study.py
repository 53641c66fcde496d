"""Step sweep and order doubling for the finite-difference and quadrature defaults.

The sweep evaluates the commutation ``Δ_M(If) = I(Δf)`` and the range identity
``Lφ = 0`` of a scalar field at every step of :data:`STUDY_STEPS`, with
``h_y = h_α = h``. A step lies on the plateau of a check when its relative error
is within :data:`PLATEAU_FACTOR` of the best step, or below :data:`NOISE_FLOOR`.
"""

import logging
import math
import time

import numpy as np
from pydantic import BaseModel, ConfigDict

from igeuler.fields import SmoothField
from igeuler.fields.solutions import laplacian
from igeuler.geometry import LineNH, sample_lines
from igeuler.operators import FDSpec, john_L, op_laplaceM
from igeuler.quadrature import QuadratureSpec
from igeuler.transforms import GrassmannFunction
from igeuler.transforms.xray import xray_function, xray_unit
from igeuler.utils.types import Convention
from igeuler.verify.pool import ordered_map

_logger = logging.getLogger(__name__)

STUDY_STEPS = (2e-2, 1e-2, 5e-3, 2e-3, 1e-3)
PLATEAU_FACTOR = 10.0
NOISE_FLOOR = 1e-8
# sampled lines keep |y| ≤ 0.85, so every stencil stays off the unit sphere
STUDY_Y_BOX = 0.6
TOLERANCE_MARGIN = 10.0


class StudyRow(BaseModel):
    """One residual of one check at one step and line."""

    model_config = ConfigDict(frozen=True)

    check: str
    step: float
    sample_id: int
    coords: tuple[float, float, float, float]
    residual: float
    scale: float


class StudyReport(BaseModel):
    """Outcome of a step sweep with its order-doubling companion."""

    field: str
    seed: int
    configured_step: float
    rows: list[StudyRow] = []
    errors: dict[str, dict[float, float]] = {}
    plateaus: dict[str, list[float]] = {}
    doubling_change: float = 0.0
    runtime: float = 0.0

    @property
    def plateau(self) -> list[float]:
        """Return the steps on the plateau of every check, largest first."""
        if not self.plateaus:
            return []
        common = set.intersection(*(set(steps) for steps in self.plateaus.values()))
        return sorted(common, reverse=True)

    @property
    def recommended_step(self) -> float | None:
        """Return the common plateau step with the smallest worst-case error."""
        if not self.plateau:
            return None
        return min(
            self.plateau,
            key=lambda step: max(errors[step] for errors in self.errors.values()),
        )

    @property
    def verdict(self) -> bool:
        """Return True if the configured step lies on the common plateau."""
        return any(math.isclose(step, self.configured_step) for step in self.plateau)

    def suggested_tolerances(self) -> dict[str, float]:
        """Round ``TOLERANCE_MARGIN`` times the error at the configured step up to a
        power of ten, per check.
        """
        suggested = {}
        for check, errors in self.errors.items():
            error = next(
                (e for s, e in errors.items() if math.isclose(s, self.configured_step)),
                max(errors.values()),
            )
            bound = max(TOLERANCE_MARGIN * error, np.finfo(float).eps)
            suggested[check] = 10.0 ** math.ceil(math.log10(bound))
        return suggested


def plateau_steps(errors: dict[float, float]) -> list[float]:
    """Return the steps whose error is within the plateau band, largest first.

    :param errors: relative error per step
    """
    if not errors:
        return []
    band = max(PLATEAU_FACTOR * min(errors.values()), NOISE_FLOOR)
    return sorted((step for step, error in errors.items() if error <= band), reverse=True)


def _swapped(phi: GrassmannFunction) -> GrassmannFunction:
    return GrassmannFunction(
        lambda m: phi(LineNH(m.y1, m.y2, m.a2, m.a1)),
        f"swapped[{phi.provenance}]",
        Convention.CHART,
    )


def step_sweep(
    field: SmoothField,
    lines: list[LineNH],
    quadrature: QuadratureSpec,
    fd: FDSpec,
    steps: tuple[float, ...] = STUDY_STEPS,
    jobs: int | None = None,
) -> list[StudyRow]:
    """Evaluate both study checks at every line for every step.

    Transform values are memoized across steps, so a line visited by several
    stencils is integrated once.

    :raise ValueError: if ``field`` is not scalar
    """
    source = laplacian(field)
    transformed = xray_function(field, quadrature, memoize=True)
    phi = xray_function(field, quadrature, Convention.CHART, memoize=True)
    swapped = _swapped(phi)
    expected = ordered_map(lambda line: xray_unit(source, line, quadrature), lines, jobs)
    rows: list[StudyRow] = []
    for step in steps:
        step_fd = fd.model_copy(update={"h_y": step, "h_alpha": step})

        def evaluate(line: LineNH, s: FDSpec = step_fd) -> tuple[float, float, float]:
            return (
                op_laplaceM(transformed, line, s),
                john_L(phi, line, s),
                abs(john_L(swapped, line, s)),
            )

        results = ordered_map(evaluate, lines, jobs)
        commutation_scale = max((abs(e) for e in expected), default=0.0)
        range_scale = max((r[2] for r in results), default=0.0)
        for i, (line, (lap, range_value, _)) in enumerate(zip(lines, results, strict=True)):
            rows.append(
                StudyRow(
                    check="commutation",
                    step=step,
                    sample_id=i,
                    coords=line.coords,
                    residual=lap - expected[i],
                    scale=commutation_scale,
                )
            )
            rows.append(
                StudyRow(
                    check="range",
                    step=step,
                    sample_id=i,
                    coords=line.coords,
                    residual=range_value,
                    scale=range_scale,
                )
            )
        _logger.debug("step %s: %s chart values memoized", step, phi.memo_size)
    return rows


def relative_errors(rows: list[StudyRow]) -> dict[str, dict[float, float]]:
    """Reduce rows to ``max |residual| / scale`` per check and step.

    A check whose scale vanishes counts its largest residual as the error.
    """
    errors: dict[str, dict[float, float]] = {}
    for row in rows:
        error = abs(row.residual) / row.scale if row.scale > 0.0 else abs(row.residual)
        per_step = errors.setdefault(row.check, {})
        per_step[row.step] = max(per_step.get(row.step, 0.0), error)
    return errors


def order_doubling(
    field: SmoothField,
    lines: list[LineNH],
    quadrature: QuadratureSpec,
    jobs: int | None = None,
) -> float:
    """Return the largest ``|I_g − I_2g| / (1 + |I_2g|)`` over ``lines``."""
    fine = quadrature.doubled()

    def change(line: LineNH) -> float:
        coarse, refined = xray_unit(field, line, quadrature), xray_unit(field, line, fine)
        return abs(coarse - refined) / (1.0 + abs(refined))

    return max(ordered_map(change, lines, jobs), default=0.0)


def run_study(
    field: SmoothField,
    seed: int = 0,
    n_lines: int = 10,
    quadrature: QuadratureSpec | None = None,
    fd: FDSpec | None = None,
    steps: tuple[float, ...] = STUDY_STEPS,
    jobs: int | None = None,
) -> StudyReport:
    """Sweep the difference step on lines drawn from ``default_rng(seed)`` and
    measure the quadrature change under order doubling.

    :param field: scalar field supported in the unit ball
    :param fd: policy whose ``h_y`` is the configured step; its stencil order and
        Richardson levels are kept for every step
    """
    started = time.perf_counter()
    quadrature = quadrature or QuadratureSpec()
    fd = fd or FDSpec()
    lines = sample_lines(np.random.default_rng(seed), n_lines, y_box=STUDY_Y_BOX)
    rows = step_sweep(field, lines, quadrature, fd, steps, jobs)
    errors = relative_errors(rows)
    report = StudyReport(
        field=field.name,
        seed=seed,
        configured_step=fd.h_y,
        rows=rows,
        errors=errors,
        plateaus={check: plateau_steps(e) for check, e in errors.items()},
        doubling_change=order_doubling(field, lines, quadrature, jobs),
        runtime=time.perf_counter() - started,
    )
    _logger.info(
        "study on %s: plateau %s, configured step %s %s, doubling change %.3e (%.1f s)",
        field.name,
        report.plateau,
        fd.h_y,
        "on plateau" if report.verdict else "OFF plateau",
        report.doubling_change,
        report.runtime,
    )
    return report
