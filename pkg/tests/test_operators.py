"""Test finite-difference operators on functions of lines"""

import pytest
from pydantic import ValidationError

from igeuler.fields.families import rotated_field
from igeuler.fields.solutions import laplacian, radial_scalar
from igeuler.geometry import LineNH, rotate_line
from igeuler.operators import (
    FDSpec,
    StencilError,
    john_L,
    op_chain,
    op_laplaceM,
    op_P,
    op_P_definition,
    op_power,
    partial,
)
from igeuler.transforms import GrassmannFunction
from igeuler.transforms.xray import xray_function, xray_unit
from igeuler.utils.types import Convention, OperatorName

LINE = LineNH(0.1, 0.2, 0.5, 0.3)


@pytest.fixture(scope="module")
def poly_scalar(polybump):
    return radial_scalar(polybump)


def bilinear(m: LineNH) -> float:
    return m.y1 * m.a2 + m.y2


def quartic(m: LineNH) -> float:
    return (m.y1 * m.a2) ** 2


def test_fd_spec():
    fd = FDSpec()
    assert fd.steps == (5e-3, 5e-3, 5e-3, 5e-3)
    assert fd.scaled(2.0).h_y == pytest.approx(1e-2)
    fd.check_support(1.0)
    with pytest.raises(ValueError, match="too coarse"):
        FDSpec(h_y=0.05).check_support(1.0)
    with pytest.raises(ValidationError):
        FDSpec(order=3)
    with pytest.raises(ValidationError):
        FDSpec(richardson=4)


@pytest.mark.parametrize("richardson", [0, 1, 2])
def test_partial_is_exact_on_polynomials(richardson):
    fd = FDSpec(richardson=richardson)
    assert partial(bilinear, LINE, (1, 0, 0, 1), fd) == pytest.approx(1.0, abs=1e-8)
    assert partial(bilinear, LINE, (0, 1, 0, 0), fd) == pytest.approx(1.0, abs=1e-8)
    assert partial(bilinear, LINE, (0, 0, 0, 0), fd) == bilinear(LINE)
    assert partial(quartic, LINE, (2, 0, 0, 0), fd) == pytest.approx(2 * LINE.a2**2, abs=1e-7)
    with pytest.raises(ValueError, match="0, 1 or 2"):
        partial(bilinear, LINE, (3, 0, 0, 0), fd)


def test_second_order_stencils():
    fd = FDSpec(order=2, richardson=0)
    assert john_L(bilinear, LINE, fd) == pytest.approx(1.0, abs=1e-8)
    assert partial(quartic, LINE, (2, 0, 0, 0), fd) == pytest.approx(2 * LINE.a2**2, abs=1e-7)


def test_john_L(fd):
    assert john_L(bilinear, LINE, fd) == pytest.approx(1.0, abs=1e-8)
    assert john_L(lambda m: m.y2 * m.a1, LINE, fd) == pytest.approx(-1.0, abs=1e-8)
    assert john_L(lambda m: m.y1 * m.a1 + m.y2 * m.a2, LINE, fd) == pytest.approx(0.0, abs=1e-8)


def test_op_P(fd):
    # k²·1 + α₁·1 − α₂·α₂
    expected = (1 + 0.25 + 0.09) + 0.5 - 0.09
    assert op_P(bilinear, LINE, fd) == pytest.approx(expected, abs=1e-8)
    vertical = LineNH(0.1, 0.2, 0.0, 0.0)
    assert op_P(bilinear, vertical, fd) == pytest.approx(john_L(bilinear, vertical, fd), abs=1e-10)


def test_op_laplaceM(fd):
    assert op_laplaceM(lambda m: m.y1**2 + m.y2**2, LineNH(0.0, 0.0, 0.0, 0.0), fd) == pytest.approx(
        4.0, abs=1e-7
    )
    tilted = LineNH(0.1, 0.2, 0.5, -0.4)
    # k₁²·2 + 2α₁α₂·1 on y₁² + y₁y₂
    expected = 2 * (1 + 0.25) + 2 * 0.5 * -0.4
    assert op_laplaceM(lambda m: m.y1**2 + m.y1 * m.y2, tilted, fd) == pytest.approx(expected, abs=1e-7)


def test_op_chain_and_power(fd):
    # L(y₁²α₂²) = 4y₁α₂ and L(4y₁α₂) = 4
    assert op_chain([OperatorName.L, OperatorName.L], quartic, LINE, fd) == pytest.approx(4.0, abs=1e-5)
    assert op_power(OperatorName.L, 2, quartic, LINE, fd) == pytest.approx(4.0, abs=1e-5)
    assert op_power(OperatorName.L, 1, quartic, LINE, fd) == pytest.approx(
        4 * LINE.y1 * LINE.a2, abs=1e-7
    )
    assert op_chain([], bilinear, LINE, fd) == bilinear(LINE)
    with pytest.raises(ValueError, match="1 ≤ n ≤ 3"):
        op_power(OperatorName.P, 4, quartic, LINE, fd)


def test_op_chain_memoizes_inner_levels(fd, mocker):
    spy = mocker.Mock(side_effect=quartic)
    func = GrassmannFunction(spy, "quartic")
    op_chain([OperatorName.L, OperatorName.L], func, LINE, fd.model_copy(update={"richardson": 0}))
    # the nested tensor stencils overlap, so distinct lines are evaluated once each
    distinct = {tuple(round(c / 1e-9) for c in call.args[0].coords) for call in spy.call_args_list}
    assert spy.call_count == len(distinct)


def test_stencil_leaving_chart_box():
    fd = FDSpec(alpha_box=3.0)
    with pytest.raises(StencilError, match="chart box"):
        john_L(bilinear, LineNH(0.0, 0.0, 2.999, 0.0), fd)


def test_P_is_invariant(scalar_bump, quadrature, fd):
    u = xray_function(scalar_bump, quadrature, Convention.UNIT_SPEED)
    line = LineNH(0.1, -0.1, 0.4, -0.3)
    value = op_P(u, line, fd)
    assert op_P_definition(u, line, fd) == pytest.approx(value, rel=1e-4, abs=1e-6)

    # P commutes with rotations about the x₃-axis
    theta = 0.5
    turned = xray_function(rotated_field(scalar_bump, theta), quadrature)
    assert op_P(turned, rotate_line(line, theta), fd) == pytest.approx(value, rel=1e-4, abs=1e-6)


@pytest.mark.parametrize(
    "line",
    [LineNH(0.1, 0.2, 0.5, 0.3), LineNH(-0.3, 0.1, -1.2, 0.4), LineNH(0.2, -0.25, 0.8, -0.9)],
)
@pytest.mark.parametrize(
    ("name", "rel", "abs_"), [("poly_scalar", 1e-6, 1e-9), ("scalar_bump", 1e-4, 1e-5)]
)
def test_laplaceM_commutes_with_xray(line, name, rel, abs_, quadrature, fd, request):
    field = request.getfixturevalue(name)
    transformed = op_laplaceM(xray_function(field, quadrature), line, fd)
    expected = xray_unit(laplacian(field), line, quadrature)
    assert transformed == pytest.approx(expected, rel=rel, abs=abs_)
