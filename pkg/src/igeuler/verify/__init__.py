"""Provide residual reports for the verification suites."""

from collections.abc import Sequence

from pydantic import BaseModel, ConfigDict

RADIAL_RESTRICTION = "radial solutions"


class ResidualRow(BaseModel):
    """One residual of one named check at one sample."""

    model_config = ConfigDict(frozen=True)

    sample_id: int
    check: str
    coords: tuple[float, float, float, float]
    residual: float
    scale: float
    tolerance: float

    @property
    def passed(self) -> bool:
        """Return True if ``|residual| ≤ tolerance × scale``."""
        return abs(self.residual) <= self.tolerance * self.scale


class ResidualReport(BaseModel):
    """Residuals of one suite run.

    The verdict passes iff every row passes; for a vanishing input family both
    residuals and scales are 0 and every row passes.
    """

    suite: str
    seed: int
    family: str
    restricted_to: str | None = None
    rows: list[ResidualRow] = []
    runtime: float = 0.0

    @property
    def verdict(self) -> bool:
        """Return True if every residual is within tolerance."""
        return all(row.passed for row in self.rows)

    @property
    def max_residual(self) -> float:
        """Return the largest absolute residual, or 0 for an empty report."""
        return max((abs(row.residual) for row in self.rows), default=0.0)

    @property
    def checks(self) -> list[str]:
        """Return check names in first-seen order."""
        return list(dict.fromkeys(row.check for row in self.rows))

    def failing(self) -> list[ResidualRow]:
        """Return the rows outside tolerance."""
        return [row for row in self.rows if not row.passed]


def make_rows(
    check: str,
    coords: Sequence[Sequence[float]],
    residuals: Sequence[float],
    scale: float,
    tolerance: float,
) -> list[ResidualRow]:
    """Build rows of one check sharing a scale and tolerance.

    :param check: check name
    :param coords: up to four descriptor coordinates per sample, zero-padded
    :param residuals: one residual per sample
    :param scale: same-dimensional normalizer for the check
    :param tolerance: relative tolerance
    """
    rows = []
    for i, (c, r) in enumerate(zip(coords, residuals, strict=True)):
        padded = tuple(float(x) for x in c) + (0.0,) * (4 - len(c))
        rows.append(
            ResidualRow(
                sample_id=i,
                check=check,
                coords=padded,
                residual=float(r),
                scale=float(scale),
                tolerance=tolerance,
            )
        )
    return rows


__all__ = ["RADIAL_RESTRICTION", "ResidualReport", "ResidualRow", "make_rows"]
