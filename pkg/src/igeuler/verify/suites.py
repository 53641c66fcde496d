"""Verification suites: each binds fields, transforms and operators into a
residual report for one family of identities.

Every suite draws all of its random samples from ``numpy.random.default_rng(seed)``
before any evaluation, and gathers results by sample index, so reports are
reproducible for a fixed seed whatever the worker count.
"""

import logging
import math
import time

import numpy as np

from igeuler.fields import SmoothField
from igeuler.fields.families import random_potential, random_tensor_field, rotated_field
from igeuler.fields.profiles import RadialProfile
from igeuler.fields.solutions import (
    laplacian,
    outer_product,
    psi_tensor,
    q_zero,
    radial_solution,
    symmetric_gradient,
)
from igeuler.geometry import LineNH, PlaneFrame, rotate_line, sample_lines, sample_planes
from igeuler.operators import (
    FDSpec,
    john_L,
    op_laplaceM,
    op_P,
    op_P_definition,
    op_power,
    partial,
    remark_pde,
)
from igeuler.quadrature import QuadratureSpec
from igeuler.transforms import GrassmannFunction
from igeuler.transforms.euler import (
    build_w,
    cor_john,
    cor_laplace,
    cor_mass,
    cor_w12,
    cor_w21,
    halfplane_energy,
    iq_zero_function,
    iq_zero_lineintegral,
    plane_energy,
    plane_flux,
    w0_ray,
    w_first_order,
    w_function,
    w_mass,
    xray_2d,
    xray_outer_function,
)
from igeuler.transforms.xray import (
    radon_plane,
    radon_plane_mass,
    xray,
    xray_function,
    xray_mass,
    xray_unit,
)
from igeuler.utils.types import Convention, HalfPlaneSelector, OperatorName, SuiteName
from igeuler.verify import RADIAL_RESTRICTION, ResidualReport, ResidualRow, make_rows
from igeuler.verify.pool import ordered_map

_logger = logging.getLogger(__name__)

DEFAULT_TOLERANCES: dict[str, float] = {
    "lemma31": 1e-7,
    "kernel": 1e-8,
    "range": 1e-5,
    "range_l3": 1e-2,
    "commutation": 1e-4,
    "w_construction": 1e-6,
    "first_order": 2.0,
    "corollary": 1e-4,
    "main_pde": 1e-4,
    "scalar_lemma": 1e-6,
    "covariance": 1e-5,
    "remark_pde": 1e-2,
    "conjectures": 1e-7,
    "pointwise": 1e-5,
    "convergence": 1e-9,
}


def _tolerance(tolerances: dict[str, float] | None, key: str) -> float:
    if tolerances and key in tolerances:
        return tolerances[key]
    return DEFAULT_TOLERANCES[key]


def _check(suite: SuiteName, name: str) -> str:
    return f"{suite.value}/{name}"


def _finish(
    suite: SuiteName,
    seed: int,
    family: str,
    rows: list[ResidualRow],
    started: float,
    restricted_to: str | None = RADIAL_RESTRICTION,
) -> ResidualReport:
    report = ResidualReport(
        suite=suite.value,
        seed=seed,
        family=family,
        restricted_to=restricted_to,
        rows=rows,
        runtime=time.perf_counter() - started,
    )
    _logger.info(
        "suite %s on %s: %s (%s rows, max residual %.3e, %.1f s)",
        suite.value,
        family,
        "pass" if report.verdict else "FAIL",
        len(rows),
        report.max_residual,
        report.runtime,
    )
    return report


def _plane_coords(plane: PlaneFrame) -> tuple[float, float, float]:
    nu = plane.normal
    return (
        math.acos(max(-1.0, min(1.0, float(nu[2])))),
        math.atan2(float(nu[1]), float(nu[0])),
        plane.offset,
    )


def suite_lemma31(
    v: SmoothField,
    p: SmoothField,  # noqa: ARG001
    n_planes: int = 20,
    n_z: int = 3,
    seed: int = 0,
    quadrature: QuadratureSpec | None = None,
    tolerances: dict[str, float] | None = None,
    jobs: int | None = None,
) -> ResidualReport:
    """Check ``∫_L ⟨v,z⟩⟨v,ν_L⟩ dσ = 0`` for random planes and in-plane ``z``.

    Scale: the largest ``∫_L |v|² dσ`` over the sampled planes.
    """
    started = time.perf_counter()
    quadrature = quadrature or QuadratureSpec()
    rng = np.random.default_rng(seed)
    planes = sample_planes(rng, n_planes)
    angles = rng.uniform(0.0, 2.0 * math.pi, size=(n_planes, n_z))

    def evaluate(i: int) -> tuple[list[float], float]:
        plane = planes[i]
        fluxes = [
            plane_flux(v, plane, math.cos(a) * plane.b1 + math.sin(a) * plane.b2, quadrature)
            for a in angles[i]
        ]
        return fluxes, plane_energy(v, plane, quadrature)

    results = ordered_map(evaluate, range(n_planes), jobs)
    scale = max((energy for _, energy in results), default=0.0)
    coords, residuals = [], []
    for plane, row_angles, (fluxes, _) in zip(planes, angles, results, strict=True):
        for a, flux in zip(row_angles, fluxes, strict=True):
            coords.append((*_plane_coords(plane), float(a)))
            residuals.append(flux)
    rows = make_rows(
        _check(SuiteName.LEMMA31, "plane_flux"),
        coords,
        residuals,
        scale,
        _tolerance(tolerances, "lemma31"),
    )
    return _finish(SuiteName.LEMMA31, seed, v.name, rows, started)


def suite_kernel_and_range(
    h: int,
    seed: int = 0,
    n_lines: int = 50,
    n_potentials: int = 3,
    quadrature: QuadratureSpec | None = None,
    fd: FDSpec | None = None,
    tolerances: dict[str, float] | None = None,
    include_l3: bool = False,
    jobs: int | None = None,
) -> ResidualReport:
    """Check the kernel and range characterizations of the rank-``h`` X-ray transform.

    * ``I(d_s u) = 0`` for random potentials ``u`` of rank ``h − 1`` (``h ≥ 1``),
      scaled by the largest L¹ mass of the transform integrand.
    * ``L^{h+1}φ = 0`` for the chart function of a random rank-``h`` field; for
      ``h = 2`` only when ``include_l3`` is set. The scale is the largest
      ``|L^{h+1}φ̃|`` of the same function with its slopes swapped, which lies
      outside the kernel of L.
    * ``Δ_M(If) = I(Δf)`` for the random scalar field (``h = 0``), scaled by the
      largest ``|I(Δf)|``.

    :raise ValueError: for ``h`` outside ``{0, 1, 2}``
    """
    if h not in (0, 1, 2):
        msg = f"Tensor rank must be 0, 1 or 2, got {h}"
        raise ValueError(msg)
    started = time.perf_counter()
    quadrature = quadrature or QuadratureSpec()
    fd = fd or FDSpec()
    rng = np.random.default_rng(seed)
    lines = sample_lines(rng, n_lines)
    potentials = [random_potential(h - 1, rng) for _ in range(n_potentials)] if h else []
    field = random_tensor_field(h, rng)
    rows: list[ResidualRow] = []

    for j, potential in enumerate(potentials):
        gradient = symmetric_gradient(potential)

        def kernel(line: LineNH, f: SmoothField = gradient) -> tuple[float, float]:
            return xray(f, line, quadrature), xray_mass(f, line, quadrature)

        results = ordered_map(kernel, lines, jobs)
        rows += make_rows(
            _check(SuiteName.KERNEL_AND_RANGE, f"kernel_h{h}_u{j}"),
            [line.coords for line in lines],
            [value for value, _ in results],
            max(mass for _, mass in results),
            _tolerance(tolerances, "kernel"),
        )

    if h < 2 or include_l3:
        fd.check_support(field.support_radius)
        phi = xray_function(field, quadrature, Convention.CHART)
        swapped = GrassmannFunction(
            lambda m: phi(LineNH(m.y1, m.y2, m.a2, m.a1)),
            f"swapped[{phi.provenance}]",
            Convention.CHART,
        )

        def range_residual(line: LineNH) -> tuple[float, float]:
            return (
                op_power(OperatorName.L, h + 1, phi, line, fd),
                abs(op_power(OperatorName.L, h + 1, swapped, line, fd)),
            )

        results = ordered_map(range_residual, lines, jobs)
        rows += make_rows(
            _check(SuiteName.KERNEL_AND_RANGE, f"range_L{h + 1}_h{h}"),
            [line.coords for line in lines],
            [value for value, _ in results],
            max(size for _, size in results),
            _tolerance(tolerances, "range_l3" if h == 2 else "range"),
        )

    if h == 0:
        transformed = xray_function(field, quadrature)
        source = laplacian(field)

        def commutation(line: LineNH) -> tuple[float, float]:
            expected = xray_unit(source, line, quadrature)
            return op_laplaceM(transformed, line, fd) - expected, abs(expected)

        results = ordered_map(commutation, lines, jobs)
        rows += make_rows(
            _check(SuiteName.KERNEL_AND_RANGE, "commutation"),
            [line.coords for line in lines],
            [value for value, _ in results],
            max(size for _, size in results),
            _tolerance(tolerances, "commutation"),
        )
    return _finish(
        SuiteName.KERNEL_AND_RANGE, seed, f"random rank-{h} fields", rows, started, None
    )


def suite_w_construction(
    v: SmoothField,
    p: SmoothField,
    seed: int = 0,
    n_samples: int = 50,
    n_corollary: int = 1,
    quadrature: QuadratureSpec | None = None,
    fd: FDSpec | None = None,
    tolerances: dict[str, float] | None = None,
    include_corollary: bool = True,
    jobs: int | None = None,
) -> ResidualReport:
    """Check the coherence of the construction of w from a solution.

    Checks H1/H2 agreement, agreement with a turned half-plane, ray-independence
    of w₀, ``w(y₁,y₂,0,0) = w₀(y₁,y₂)``, vanishing of the planar X-ray transform of
    the flux, the first-order expansion for small slopes, and (with
    ``include_corollary``) finite-difference derivatives of w at vertical lines
    against their direct line-integral formulas.
    """
    started = time.perf_counter()
    quadrature = quadrature or QuadratureSpec()
    fd = fd or FDSpec()
    rng = np.random.default_rng(seed)
    lines = sample_lines(rng, n_samples)
    thetas = rng.uniform(-math.pi / 2, math.pi / 2, size=n_samples)
    points = rng.uniform(-0.55, 0.55, size=(n_samples, 2))
    ray_angles = rng.uniform(0.0, 2.0 * math.pi, size=n_samples)
    flux_points = rng.uniform(-0.8, 0.8, size=(n_samples, 2))
    flux_angles = rng.uniform(0.0, math.pi, size=n_samples)
    small_lines = [
        LineNH(line.y1, line.y2, 1e-2 * line.a1, 1e-2 * line.a2) for line in lines
    ]
    corollary_points = [(0.0, 0.0)] + [
        tuple(c) for c in rng.uniform(-0.3, 0.3, size=(max(0, n_corollary - 1), 2))
    ]

    def on_line(i: int) -> dict[str, float]:
        line = lines[i]
        h2 = build_w(v, line, quadrature, HalfPlaneSelector.H2)
        small = small_lines[i]
        first_scale = (small.a1**2 + small.a2**2) * halfplane_energy(
            v, small, quadrature
        )
        return {
            "h1_vs_h2": build_w(v, line, quadrature, HalfPlaneSelector.H1) - h2,
            "rotated": build_w(
                v, line, quadrature, HalfPlaneSelector.ROTATED, float(thetas[i])
            )
            - h2,
            "first_order": build_w(v, small, quadrature)
            - w_first_order(v, small, HalfPlaneSelector.H2, quadrature),
            "first_order_scale": first_scale,
            "mass": w_mass(v, line, quadrature),
        }

    def on_point(i: int) -> dict[str, float]:
        origin = points[i]
        a = ray_angles[i]
        d1 = np.array([math.cos(a), math.sin(a)])
        d2 = np.array([-d1[1], d1[0]])
        w0 = w0_ray(v, origin, d1, quadrature)
        vertical = LineNH(float(origin[0]), float(origin[1]), 0.0, 0.0)
        flux_dir = np.array([math.cos(flux_angles[i]), math.sin(flux_angles[i])])
        return {
            "w0_rays": w0 - w0_ray(v, origin, d2, quadrature),
            "w_equals_w0": build_w(v, vertical, quadrature) - w0,
            "flux_xray": xray_2d(v, flux_points[i], flux_dir, quadrature),
            "mass": w_mass(v, vertical, quadrature),
        }

    line_results = ordered_map(on_line, range(n_samples), jobs)
    point_results = ordered_map(on_point, range(n_samples), jobs)
    scale = max(
        [r["mass"] for r in line_results] + [r["mass"] for r in point_results],
        default=0.0,
    )
    tol = _tolerance(tolerances, "w_construction")
    rows: list[ResidualRow] = []
    line_coords = [line.coords for line in lines]
    for name in ("h1_vs_h2", "rotated"):
        rows += make_rows(
            _check(SuiteName.W_CONSTRUCTION, name),
            line_coords,
            [r[name] for r in line_results],
            scale,
            tol,
        )
    rows += make_rows(
        _check(SuiteName.W_CONSTRUCTION, "first_order"),
        [line.coords for line in small_lines],
        [r["first_order"] for r in line_results],
        max((r["first_order_scale"] for r in line_results), default=0.0),
        _tolerance(tolerances, "first_order"),
    )
    point_coords = [
        (x[0], x[1], a, 0.0) for x, a in zip(points, ray_angles, strict=True)
    ]
    for name in ("w0_rays", "w_equals_w0"):
        rows += make_rows(
            _check(SuiteName.W_CONSTRUCTION, name),
            point_coords,
            [r[name] for r in point_results],
            scale,
            tol,
        )
    rows += make_rows(
        _check(SuiteName.W_CONSTRUCTION, "flux_xray"),
        [(x[0], x[1], a, 0.0) for x, a in zip(flux_points, flux_angles, strict=True)],
        [r["flux_xray"] for r in point_results],
        scale,
        tol,
    )

    if include_corollary:
        fd.check_support(v.support_radius)
        w = w_function(v, quadrature, memoize=True)

        def corollary(point: tuple[float, float]) -> dict[str, float]:
            y1, y2 = point
            line = LineNH(y1, y2, 0.0, 0.0)
            w12 = cor_w12(v, y1, y2, quadrature)
            w21 = cor_w21(v, y1, y2, quadrature)
            john = cor_john(v, p, y1, y2, quadrature)
            return {
                "cor_w12": partial(w, line, (0, 1, 1, 0), fd) - w12,
                "cor_w21": partial(w, line, (1, 0, 0, 1), fd) - w21,
                "cor_laplace": partial(w, line, (2, 0, 0, 0), fd)
                + partial(w, line, (0, 2, 0, 0), fd)
                - cor_laplace(v, y1, y2, quadrature),
                "cor_john": john_L(w, line, fd) - john,
                "cor_difference": (w21 - w12) - john,
                "mass": cor_mass(v, p, y1, y2, quadrature),
            }

        cor_results = ordered_map(corollary, corollary_points, jobs)
        cor_scale = max(r["mass"] for r in cor_results)
        for name in ("cor_w12", "cor_w21", "cor_laplace", "cor_john", "cor_difference"):
            rows += make_rows(
                _check(SuiteName.W_CONSTRUCTION, name),
                [(y1, y2, 0.0, 0.0) for y1, y2 in corollary_points],
                [r[name] for r in cor_results],
                cor_scale,
                _tolerance(tolerances, "corollary"),
            )
    return _finish(SuiteName.W_CONSTRUCTION, seed, v.name, rows, started)


def suite_main_pde(
    v: SmoothField,
    p: SmoothField,
    n_lines: int = 20,
    seed: int = 0,
    quadrature: QuadratureSpec | None = None,
    fd: FDSpec | None = None,
    tolerances: dict[str, float] | None = None,
    include_covariance: bool = True,
    include_remark: bool = False,
    jobs: int | None = None,
) -> ResidualReport:
    """Check the second-order equations satisfied by w and by X-ray images.

    * ``P²w + 4Δ_M w = 0`` and ``P I(v⊗v) − 2Δ_M w = 0``, scaled by ``max|I(v⊗v)|``
    * ``P(Ip) = 0``, scaled by ``max|Ip|``
    * ``Pw = IQ₀``, scaled by ``max|I(v⊗v)|``
    * with ``include_covariance``: P commutes with rotations about the x₃-axis, and
      the chart formula for P agrees with its rigid-motion definition, on the X-ray
      image of a random non-radial rank-2 field
    * with ``include_remark``: ``P³u + 4PΔ_M u = 0`` for ``u = IQ`` of a random
      rank-2 field ``Q``
    """
    started = time.perf_counter()
    quadrature = quadrature or QuadratureSpec()
    fd = fd or FDSpec()
    fd.check_support(v.support_radius)
    rng = np.random.default_rng(seed)
    lines = sample_lines(rng, n_lines, alpha_box=1.5)
    thetas = rng.uniform(0.0, 2.0 * math.pi, size=n_lines)
    anisotropic = random_tensor_field(2, rng)
    remark_field = random_tensor_field(2, rng)

    w = w_function(v, quadrature, memoize=True)
    ivv = xray_outer_function(v, quadrature, memoize=True)
    ip = xray_function(p, quadrature, memoize=True)
    iq0 = iq_zero_function(v, p, quadrature)

    def evaluate(line: LineNH) -> dict[str, float]:
        laplace_w = op_laplaceM(w, line, fd)
        return {
            "p2w_plus_4lap": op_power(OperatorName.P, 2, w, line, fd) + 4.0 * laplace_w,
            "p_ivv_minus_2lap": op_P(ivv, line, fd) - 2.0 * laplace_w,
            "pw_minus_iq0": op_P(w, line, fd) - iq0(line),
            "p_ip": op_P(ip, line, fd),
            "ivv": abs(ivv(line)),
            "ip": abs(ip(line)),
        }

    results = ordered_map(evaluate, lines, jobs)
    coords = [line.coords for line in lines]
    vv_scale = max((r["ivv"] for r in results), default=0.0)
    tol = _tolerance(tolerances, "main_pde")
    rows: list[ResidualRow] = []
    for name in ("p2w_plus_4lap", "p_ivv_minus_2lap", "pw_minus_iq0"):
        rows += make_rows(
            _check(SuiteName.MAIN_PDE, name),
            coords,
            [r[name] for r in results],
            vv_scale,
            tol,
        )
    rows += make_rows(
        _check(SuiteName.MAIN_PDE, "p_ip"),
        coords,
        [r["p_ip"] for r in results],
        max((r["ip"] for r in results), default=0.0),
        _tolerance(tolerances, "scalar_lemma"),
    )

    if include_covariance:
        base = xray_function(anisotropic, quadrature)

        def covariance(i: int) -> dict[str, float]:
            line, theta = lines[i], float(thetas[i])
            turned = xray_function(rotated_field(anisotropic, theta), quadrature)
            value = op_P(base, line, fd)
            return {
                "rotation": op_P(turned, rotate_line(line, theta), fd) - value,
                "definition": op_P_definition(base, line, fd) - value,
                "size": abs(base(line)),
            }

        cov_results = ordered_map(covariance, range(n_lines), jobs)
        cov_scale = max((r["size"] for r in cov_results), default=0.0)
        for name in ("rotation", "definition"):
            rows += make_rows(
                _check(SuiteName.MAIN_PDE, f"p_covariance_{name}"),
                [(*line.coords[:3], float(t)) for line, t in zip(lines, thetas, strict=True)]
                if name == "rotation"
                else coords,
                [r[name] for r in cov_results],
                cov_scale,
                _tolerance(tolerances, "covariance"),
            )

    if include_remark:
        iq = xray_function(remark_field, quadrature, memoize=True)

        def remark(line: LineNH) -> tuple[float, float]:
            return remark_pde(iq, line, fd), abs(iq(line))

        remark_results = ordered_map(remark, lines, jobs)
        rows += make_rows(
            _check(SuiteName.MAIN_PDE, "remark_p3_plus_4plap"),
            coords,
            [value for value, _ in remark_results],
            max((size for _, size in remark_results), default=0.0),
            _tolerance(tolerances, "remark_pde"),
        )
    return _finish(SuiteName.MAIN_PDE, seed, v.name, rows, started)


def suite_conjectures_radial(
    psi: RadialProfile,
    n_lines: int = 100,
    n_planes: int = 30,
    seed: int = 0,
    quadrature: QuadratureSpec | None = None,
    tolerances: dict[str, float] | None = None,
    pressure_degree: int = 200,
    jobs: int | None = None,
) -> ResidualReport:
    """Check ``w ≡ 0``, ``IQ₀ ≡ 0`` and ``JQ₀ ≡ 0`` for the radial solution of ψ.

    Each check is scaled by the largest L¹ mass of its own integrand.
    """
    started = time.perf_counter()
    quadrature = quadrature or QuadratureSpec()
    v, p = radial_solution(psi, pressure_degree)
    q0 = q_zero(v, p)
    rng = np.random.default_rng(seed)
    lines = sample_lines(rng, n_lines)
    planes = sample_planes(rng, n_planes)
    tol = _tolerance(tolerances, "conjectures")

    def on_line(line: LineNH) -> tuple[float, float, float, float]:
        return (
            build_w(v, line, quadrature),
            w_mass(v, line, quadrature),
            iq_zero_lineintegral(v, p, line, quadrature),
            xray_mass(q0, line, quadrature),
        )

    def on_plane(plane: PlaneFrame) -> tuple[float, float]:
        return radon_plane(q0, plane, quadrature), radon_plane_mass(q0, plane, quadrature)

    line_results = ordered_map(on_line, lines, jobs)
    plane_results = ordered_map(on_plane, planes, jobs)
    coords = [line.coords for line in lines]
    rows = make_rows(
        _check(SuiteName.CONJECTURES_RADIAL, "w"),
        coords,
        [r[0] for r in line_results],
        max((r[1] for r in line_results), default=0.0),
        tol,
    )
    rows += make_rows(
        _check(SuiteName.CONJECTURES_RADIAL, "iq0"),
        coords,
        [r[2] for r in line_results],
        max((r[3] for r in line_results), default=0.0),
        tol,
    )
    rows += make_rows(
        _check(SuiteName.CONJECTURES_RADIAL, "jq0"),
        [_plane_coords(plane) for plane in planes],
        [r[0] for r in plane_results],
        max((r[1] for r in plane_results), default=0.0),
        tol,
    )
    return _finish(SuiteName.CONJECTURES_RADIAL, seed, psi.name, rows, started)


def _ball_points(rng: np.random.Generator, n: int, radius: float) -> np.ndarray:
    directions = rng.normal(size=(n, 3))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    radii = radius * rng.uniform(0.0, 1.0, size=n) ** (1.0 / 3.0)
    return directions * radii[:, None]


def suite_pointwise_pdes(
    v: SmoothField,
    p: SmoothField,
    n_points: int = 1000,
    seed: int = 0,
    tolerances: dict[str, float] | None = None,
) -> ResidualReport:
    """Check pointwise consequences for ``Q₀`` and ``Ψ(v)`` at random points.

    * ``Σ ∂²q^{ij}/∂x_i∂x_j − Δ tr Q₀ = 0``
    * ``2∂²q^{ij}/∂x_i∂x_j − ∂²q^{ii}/∂x_j² − ∂²q^{jj}/∂x_i² = 0`` for ``i < j``
    * every component of Ψ(v) vanishes

    ``Q₀`` residuals are scaled by ``max|∂²Q₀|``; Ψ residuals by ``max|∂(v⊗v)|``.
    """
    started = time.perf_counter()
    rng = np.random.default_rng(seed)
    x = _ball_points(rng, n_points, max(v.support_radius, p.support_radius))
    q0 = q_zero(v, p)
    # hess[..., i, j, k, l] = ∂_l ∂_k q^{ij}
    hess = q0.hessian(x)
    divergence = np.einsum("...ijij->...", hess)
    laplace_trace = np.einsum("...iikk->...", hess)
    hess_scale = float(np.max(np.abs(hess))) if n_points else 0.0
    tol = _tolerance(tolerances, "pointwise")
    coords = [tuple(point) for point in x]
    rows = make_rows(
        _check(SuiteName.POINTWISE_PDES, "jq0"),
        coords,
        divergence - laplace_trace,
        hess_scale,
        tol,
    )
    for i, j in ((0, 1), (0, 2), (1, 2)):
        residual = 2.0 * hess[..., i, j, i, j] - hess[..., i, i, j, j] - hess[..., j, j, i, i]
        rows += make_rows(
            _check(SuiteName.POINTWISE_PDES, f"system_{i + 1}{j + 1}"),
            coords,
            residual,
            hess_scale,
            tol,
        )
    psi_values = psi_tensor(v)(x)
    flux_scale = (
        float(np.max(np.abs(outer_product(v).jacobian(x)))) if n_points else 0.0
    )
    rows += make_rows(
        _check(SuiteName.POINTWISE_PDES, "psi"),
        coords,
        np.max(np.abs(psi_values), axis=(-1, -2)),
        flux_scale,
        tol,
    )
    return _finish(SuiteName.POINTWISE_PDES, seed, v.name, rows, started)


def suite_quadrature_convergence(
    v: SmoothField,
    p: SmoothField,
    n_samples: int = 5,
    seed: int = 0,
    quadrature: QuadratureSpec | None = None,
    tolerances: dict[str, float] | None = None,
    jobs: int | None = None,
) -> ResidualReport:
    """Compare every integral family at the given rule and at doubled order.

    Residuals are the changes under order doubling, scaled by the largest L¹ mass of
    the corresponding integrand.
    """
    started = time.perf_counter()
    quadrature = quadrature or QuadratureSpec()
    fine = quadrature.doubled()
    rng = np.random.default_rng(seed)
    lines = sample_lines(rng, n_samples)
    planes = sample_planes(rng, n_samples)
    vv = outer_product(v)
    q0 = q_zero(v, p)

    def evaluate(i: int) -> dict[str, tuple[float, float]]:
        line, plane = lines[i], planes[i]
        return {
            "xray_vv": (
                xray_unit(vv, line, quadrature) - xray_unit(vv, line, fine),
                xray_mass(vv, line, fine),
            ),
            "iq0": (
                iq_zero_lineintegral(v, p, line, quadrature)
                - iq_zero_lineintegral(v, p, line, fine),
                xray_mass(q0, line, fine),
            ),
            "w": (
                build_w(v, line, quadrature) - build_w(v, line, fine),
                w_mass(v, line, fine),
            ),
            "jq0": (
                radon_plane(q0, plane, quadrature) - radon_plane(q0, plane, fine),
                radon_plane_mass(q0, plane, fine),
            ),
        }

    results = ordered_map(evaluate, range(n_samples), jobs)
    tol = _tolerance(tolerances, "convergence")
    rows: list[ResidualRow] = []
    for name in ("xray_vv", "iq0", "w"):
        rows += make_rows(
            _check(SuiteName.CONVERGENCE, name),
            [line.coords for line in lines],
            [r[name][0] for r in results],
            max((r[name][1] for r in results), default=0.0),
            tol,
        )
    rows += make_rows(
        _check(SuiteName.CONVERGENCE, "jq0"),
        [_plane_coords(plane) for plane in planes],
        [r["jq0"][0] for r in results],
        max((r["jq0"][1] for r in results), default=0.0),
        tol,
    )
    return _finish(SuiteName.CONVERGENCE, seed, v.name, rows, started)
