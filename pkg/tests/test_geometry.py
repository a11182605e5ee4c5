import numpy as np
import pytest

from siocalc import (
    CurveModel,
    HypothesisViolatedError,
    KhvedelidzeWeight,
    PointOffCurveError,
    SpaceContext,
    VariableExponent,
    carleson_constant,
    check_dini_lipschitz,
    check_khvedelidze,
    s_boundedness,
    whirl_exponent,
)


def make_ctx(p=2.0, marked=(), radius=1.0):
    curve = CurveModel.circle(radius)
    exponent = VariableExponent.constant(p, curve.length)
    weight = KhvedelidzeWeight(tuple(marked))
    return SpaceContext(curve, exponent, weight, 1.0)


def test_circle_basic_geometry():
    curve = CurveModel.circle()
    assert curve.length == pytest.approx(2 * np.pi, rel=1e-12)
    assert curve.diameter == pytest.approx(2.0, rel=1e-12)
    assert curve.point(0.0) == pytest.approx(1.0 + 0j)
    assert curve.point(0.25) == pytest.approx(1j)
    assert curve.is_jordan()


def test_param_of_round_trip():
    curve = CurveModel.circle(2.0, 1.0 + 1j)
    for u in (0.0, 0.1, 0.37, 0.99):
        assert curve.param_of(curve.point(u)) == pytest.approx(u, abs=1e-12)


def test_param_of_rejects_off_curve_point():
    curve = CurveModel.circle()
    with pytest.raises(PointOffCurveError):
        curve.param_of(3.0 + 0j)


def test_carleson_constant_of_circle_is_pi():
    assert carleson_constant(CurveModel.circle()) == pytest.approx(np.pi, rel=1e-2)
    assert carleson_constant(CurveModel.circle(3.0)) == pytest.approx(np.pi, rel=1e-2)


def test_whirl_exponent_zero_on_circle():
    curve = CurveModel.circle()
    assert whirl_exponent(curve, curve.point(0.3)) == pytest.approx(0.0, abs=1e-6)


def test_whirl_exponent_reads_marked_spiral():
    t0 = 1.0 + 0j
    curve = CurveModel.spiral_marked([(t0, 0.7)])
    assert whirl_exponent(curve, t0) == pytest.approx(0.7)
    assert whirl_exponent(curve, -1.0 + 0j) == pytest.approx(0.0)


def test_constant_exponent_passes_dini():
    curve = CurveModel.circle()
    report = check_dini_lipschitz(VariableExponent.constant(2.0, curve.length), curve, 1.0)
    assert report.passed
    assert report.max_ratio == 0.0


def test_discontinuous_exponent_fails_dini():
    curve = CurveModel.circle()
    p = VariableExponent.piecewise_constant([(0.0, 0.5, 2.0), (0.5, 1.0, 4.0)])
    report = check_dini_lipschitz(p, curve, 1.0)
    assert not report.passed
    assert report.max_ratio == np.inf


def test_khvedelidze_rows_and_boundedness():
    curve = CurveModel.circle()
    t1 = complex(curve.point(0.0))
    t2 = complex(curve.point(0.5))
    ctx = make_ctx(2.0, [(t1, 0.2), (t2, -0.1)])
    rows = check_khvedelidze(ctx)
    assert [r.passed for r in rows] == [True, True]
    assert rows[0].value == pytest.approx(0.7)
    assert s_boundedness(ctx).bounded


def test_boundedness_fails_outside_open_interval():
    curve = CurveModel.circle()
    t1 = complex(curve.point(0.25))
    ctx = make_ctx(2.0, [(t1, 0.6)])  # 1/2 + 0.6 > 1
    decision = s_boundedness(ctx)
    assert not decision.bounded
    assert decision.reasons


def test_boundedness_raises_on_dini_failure():
    curve = CurveModel.circle()
    p = VariableExponent.piecewise_constant([(0.0, 0.5, 2.0), (0.5, 1.0, 3.0)])
    ctx = SpaceContext(curve, p, KhvedelidzeWeight.empty(), 1.0)
    with pytest.raises(HypothesisViolatedError):
        s_boundedness(ctx)


def test_context_lambda_and_delta_lookup():
    curve = CurveModel.spiral_marked([(1.0 + 0j, 0.5)])
    p = VariableExponent.constant(3.0, curve.length)
    ctx = SpaceContext(curve, p, KhvedelidzeWeight(((1.0 + 0j, 0.25),)), 1.0)
    assert ctx.p_at_point(1.0 + 0j) == pytest.approx(3.0)
    assert ctx.lambda_at_point(1.0 + 0j) == pytest.approx(0.25)
    assert ctx.lambda_at_point(-1.0 + 0j) == 0.0
    assert ctx.delta_at_point(1.0 + 0j) == pytest.approx(0.5)
    assert ctx.delta_at_point(1j) == 0.0
