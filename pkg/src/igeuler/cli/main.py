"""Provide the ``igeuler`` command: run verification suites, sample transforms
over grids, sweep the difference step, and write the resolved configuration.

Exit codes: 0 all verdicts pass, 1 some residual exceeds its tolerance, 2 usage
or configuration error, 3 numerical failure.
"""

import argparse
import itertools
import logging
import pathlib
import time
from collections.abc import Sequence

import numpy as np

from igeuler.cli.reports import (
    build_summary,
    write_sample_csv,
    write_study,
    write_suite_csv,
    write_summary,
)
from igeuler.igeuler import ConfigError, IgEuler, config_hash, load_config, save_config
from igeuler.operators import StencilError
from igeuler.quadrature import QuadratureError
from igeuler.transforms import NormalizationError
from igeuler.utils.types import SampleObject, SuiteName

_logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

DEFAULT_OUT = "igeuler_report.csv"
DEFAULT_STUDY_OUT = "igeuler_study.csv"
LINE_KEYS = ("y1", "y2", "a1", "a2")
PLANE_KEYS = ("theta", "phi", "d")

NUMERICAL_ERRORS = (QuadratureError, StencilError, NormalizationError)


def parse_grid(spec: str, obj: SampleObject) -> list[tuple[float, float, float, float]]:
    """Expand ``key=start:stop:steps`` items into grid points.

    Each axis has ``steps + 1`` equally spaced values; missing axes are fixed at 0.
    Line objects use keys ``y1, y2, a1, a2``; ``J`` uses ``theta, phi, d``.

    :raise ValueError: for malformed items or unknown keys
    """
    keys = PLANE_KEYS if obj == SampleObject.J else LINE_KEYS
    axes: dict[str, np.ndarray] = {key: np.zeros(1) for key in keys}
    for item in filter(None, (part.strip() for part in spec.split(","))):
        key, sep, ranges = item.partition("=")
        key = key.strip()
        if not sep or key not in keys:
            msg = f"Grid item {item!r} must be key=start:stop:steps with key in {keys}"
            raise ValueError(msg)
        try:
            start, stop, steps = ranges.split(":")
            n = int(steps)
            lo, hi = float(start), float(stop)
        except ValueError as e:
            msg = f"Grid item {item!r} must be key=start:stop:steps"
            raise ValueError(msg) from e
        if n < 0:
            msg = f"Grid item {item!r} has a negative step count"
            raise ValueError(msg)
        axes[key] = np.linspace(lo, hi, n + 1)
    points = []
    for combo in itertools.product(*(axes[key] for key in keys)):
        values = tuple(float(c) for c in combo)
        points.append(values + (0.0,) * (4 - len(values)))
    return points


def _suite_names(name: str, enabled: Sequence[SuiteName]) -> list[SuiteName]:
    if name == "all":
        return list(enabled)
    try:
        return [SuiteName(name)]
    except ValueError as e:
        known = ", ".join(s.value for s in SuiteName)
        msg = f"Unknown suite {name!r}; known suites: all, {known}"
        raise ConfigError(msg) from e


def cmd_suite(
    name: str,
    config_path: str | None,
    out_path: str | None,
    seed: int | None = None,
    jobs: int | None = None,
) -> int:
    """Run a named suite (or ``all``) and write its CSV report and JSON summary.

    :return: exit code
    """
    try:
        cfg = load_config(config_path)
        names = _suite_names(name, cfg.suites.enabled)
    except ConfigError as e:
        _logger.error("%s", e)
        return EXIT_USAGE
    seed = cfg.seed if seed is None else seed
    out = pathlib.Path(out_path or cfg.out or DEFAULT_OUT)
    started = time.perf_counter()
    try:
        app = IgEuler.from_config(cfg, jobs)
        reports = [
            report for n in names for report in app.run_suite(n, cfg.suites, seed)
        ]
    except NUMERICAL_ERRORS as e:
        _logger.error("numerical failure: %s", e)
        return EXIT_NUMERICAL
    except ValueError as e:
        _logger.error("%s", e)
        return EXIT_USAGE
    write_suite_csv(reports, out)
    summary = build_summary(reports, seed, config_hash(cfg))
    summary_file = write_summary(summary, out)
    _logger.info(
        "%s: %s in %.1f s; report %s, summary %s",
        name,
        summary.verdict,
        time.perf_counter() - started,
        out,
        summary_file,
    )
    return EXIT_PASS if summary.verdict == "pass" else EXIT_FAIL


def cmd_sample(
    obj: str,
    grid: str,
    config_path: str | None,
    out_path: str | None,
    jobs: int | None = None,
) -> int:
    """Evaluate ``w``, ``IQ0``, ``xray`` or ``J`` over a grid and write a CSV.

    :return: exit code
    """
    try:
        cfg = load_config(config_path)
        target = SampleObject(obj)
        points = parse_grid(grid, target)
    except ValueError as e:
        _logger.error("%s", e)
        return EXIT_USAGE
    out = pathlib.Path(out_path or cfg.out or DEFAULT_OUT)
    try:
        app = IgEuler.from_config(cfg, jobs)
        values = app.sample(target, points)
    except NUMERICAL_ERRORS as e:
        _logger.error("numerical failure: %s", e)
        return EXIT_NUMERICAL
    write_sample_csv(target.value, points, values, out)
    _logger.info("sampled %s at %s grid points into %s", target.value, len(points), out)
    return EXIT_PASS


def cmd_study(
    config_path: str | None,
    out_path: str | None,
    seed: int | None = None,
    n_lines: int = 10,
    jobs: int | None = None,
) -> int:
    """Sweep the difference step and write the study CSV and JSON summary.

    :return: exit code, 1 when the configured step is off the plateau
    """
    if n_lines < 1:
        _logger.error("The study needs at least one line, got %s", n_lines)
        return EXIT_USAGE
    try:
        cfg = load_config(config_path)
    except ConfigError as e:
        _logger.error("%s", e)
        return EXIT_USAGE
    seed = cfg.seed if seed is None else seed
    out = pathlib.Path(out_path or DEFAULT_STUDY_OUT)
    try:
        report = IgEuler.from_config(cfg, jobs).run_study(seed, n_lines)
    except NUMERICAL_ERRORS as e:
        _logger.error("numerical failure: %s", e)
        return EXIT_NUMERICAL
    summary_file = write_study(report, config_hash(cfg), out)
    _logger.info(
        "study: plateau %s, recommended step %s; data %s, summary %s",
        report.plateau,
        report.recommended_step,
        out,
        summary_file,
    )
    return EXIT_PASS if report.verdict else EXIT_FAIL


def cmd_config(config_path: str | None, out_path: str) -> int:
    """Write the resolved configuration to ``out_path``.

    :return: exit code
    """
    try:
        cfg = load_config(config_path)
    except ConfigError as e:
        _logger.error("%s", e)
        return EXIT_USAGE
    save_config(cfg, out_path)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser."""
    parser = argparse.ArgumentParser(
        prog="igeuler",
        description="Verify integral-geometric identities of steady Euler flows.",
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="log more (repeatable)"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    suite = commands.add_parser("suite", help="run a verification suite")
    suite.add_argument("name", help="suite name or 'all'")
    suite.add_argument("--config", help="JSON configuration file")
    suite.add_argument("--out", help="CSV report path")
    suite.add_argument("--seed", type=int, help="override the configured seed")
    suite.add_argument("--jobs", type=int, help="worker threads")

    sample = commands.add_parser("sample", help="evaluate an object over a grid")
    sample.add_argument("object", help="one of w, IQ0, xray, J")
    sample.add_argument(
        "--grid", required=True, help="comma separated key=start:stop:steps items"
    )
    sample.add_argument("--config", help="JSON configuration file")
    sample.add_argument("--out", help="CSV output path")
    sample.add_argument("--jobs", type=int, help="worker threads")

    study = commands.add_parser("study", help="sweep the difference step")
    study.add_argument("--config", help="JSON configuration file")
    study.add_argument("--out", help="CSV output path")
    study.add_argument("--seed", type=int, help="override the configured seed")
    study.add_argument("--lines", type=int, default=10, help="sampled lines")
    study.add_argument("--jobs", type=int, help="worker threads")

    config = commands.add_parser("config", help="write the resolved configuration")
    config.add_argument("--config", help="JSON configuration file")
    config.add_argument("--out", required=True, help="output path")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line.

    :param argv: arguments without the program name; defaults to ``sys.argv``
    :return: exit code
    """
    args = build_parser().parse_args(argv)
    if not logging.getLogger().handlers:
        level = logging.WARNING - 10 * min(args.verbose, 2)
        logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    if args.command == "suite":
        return cmd_suite(args.name, args.config, args.out, args.seed, args.jobs)
    if args.command == "sample":
        return cmd_sample(args.object, args.grid, args.config, args.out, args.jobs)
    if args.command == "study":
        return cmd_study(args.config, args.out, args.seed, args.lines, args.jobs)
    return cmd_config(args.config, args.out)


if __name__ == "__main__":
    raise SystemExit(main())
