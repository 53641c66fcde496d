"""Write residual reports, sample sweeps and step sweeps as CSV, with JSON summaries."""

import logging
import pathlib
from collections.abc import Sequence

import pandas as pd
from pydantic import BaseModel

from igeuler.verify import ResidualReport
from igeuler.verify.study import StudyReport

_logger = logging.getLogger(__name__)

SUITE_COLUMNS = [
    "suite",
    "sample_id",
    "coord_1",
    "coord_2",
    "coord_3",
    "coord_4",
    "residual",
    "scale",
    "tolerance",
    "pass",
]
SAMPLE_COLUMNS = [
    "object",
    "sample_id",
    "coord_1",
    "coord_2",
    "coord_3",
    "coord_4",
    "value",
]


class SuiteSummary(BaseModel):
    """Summarize one suite report"""

    suite: str
    family: str
    restricted_to: str | None
    verdict: str
    rows: int
    max_residual: float
    runtime: float


class RunSummary(BaseModel):
    """Summarize a suite run"""

    verdict: str
    seed: int
    config_hash: str
    runtime: float
    suites: list[SuiteSummary]


def suite_frame(reports: Sequence[ResidualReport]) -> pd.DataFrame:
    """Flatten reports into one table with the documented columns."""
    records = [
        (row.check, row.sample_id, *row.coords, row.residual, row.scale, row.tolerance, row.passed)
        for report in reports
        for row in report.rows
    ]
    return pd.DataFrame.from_records(records, columns=SUITE_COLUMNS)


def write_suite_csv(reports: Sequence[ResidualReport], path: str | pathlib.Path) -> None:
    """Rewrite ``path`` with every row of every report."""
    suite_frame(reports).to_csv(path, index=False, lineterminator="\n", encoding="utf-8")
    _logger.debug("wrote %s report rows to %s", sum(len(r.rows) for r in reports), path)


def summary_path(path: str | pathlib.Path) -> pathlib.Path:
    """Return the summary location ``<out>.summary.json`` for a CSV path."""
    return pathlib.Path(f"{path}.summary.json")


def build_summary(
    reports: Sequence[ResidualReport], seed: int, config_hash: str
) -> RunSummary:
    """Collect suite verdicts, residuals and runtimes."""
    suites = [
        SuiteSummary(
            suite=report.suite,
            family=report.family,
            restricted_to=report.restricted_to,
            verdict="pass" if report.verdict else "fail",
            rows=len(report.rows),
            max_residual=report.max_residual,
            runtime=report.runtime,
        )
        for report in reports
    ]
    return RunSummary(
        verdict="pass" if all(r.verdict for r in reports) else "fail",
        seed=seed,
        config_hash=config_hash,
        runtime=sum(r.runtime for r in reports),
        suites=suites,
    )


def write_summary(summary: RunSummary, path: str | pathlib.Path) -> pathlib.Path:
    """Rewrite the JSON summary next to the CSV at ``path``."""
    target = summary_path(path)
    target.write_text(summary.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return target


def write_sample_csv(
    obj: str,
    points: Sequence[tuple[float, float, float, float]],
    values: Sequence[float],
    path: str | pathlib.Path,
) -> None:
    """Rewrite ``path`` with one row per grid point."""
    records = [
        (obj, i, *point, value)
        for i, (point, value) in enumerate(zip(points, values, strict=True))
    ]
    frame = pd.DataFrame.from_records(records, columns=SAMPLE_COLUMNS)
    frame.to_csv(path, index=False, lineterminator="\n", encoding="utf-8")


STUDY_COLUMNS = [
    "check",
    "step",
    "sample_id",
    "coord_1",
    "coord_2",
    "coord_3",
    "coord_4",
    "residual",
    "scale",
]


class StudySummary(BaseModel):
    """Summarize a step sweep"""

    verdict: str
    field: str
    seed: int
    config_hash: str
    configured_step: float
    plateau: list[float]
    recommended_step: float | None
    errors: dict[str, dict[str, float]]
    suggested_tolerances: dict[str, float]
    doubling_change: float
    runtime: float


def write_study(report: StudyReport, config_hash: str, path: str | pathlib.Path) -> pathlib.Path:
    """Rewrite the study CSV at ``path`` and its JSON summary next to it."""
    records = [
        (row.check, row.step, row.sample_id, *row.coords, row.residual, row.scale)
        for row in report.rows
    ]
    frame = pd.DataFrame.from_records(records, columns=STUDY_COLUMNS)
    frame.to_csv(path, index=False, lineterminator="\n", encoding="utf-8")
    summary = StudySummary(
        verdict="pass" if report.verdict else "fail",
        field=report.field,
        seed=report.seed,
        config_hash=config_hash,
        configured_step=report.configured_step,
        plateau=report.plateau,
        recommended_step=report.recommended_step,
        errors={
            check: {f"{step:g}": error for step, error in errors.items()}
            for check, errors in report.errors.items()
        },
        suggested_tolerances=report.suggested_tolerances(),
        doubling_change=report.doubling_change,
        runtime=report.runtime,
    )
    target = summary_path(path)
    target.write_text(summary.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return target
