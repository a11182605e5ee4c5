import numpy as np
import pytest

from siocalc import (
    AlgebraElement,
    CurveModel,
    HypothesisViolatedError,
    KhvedelidzeWeight,
    MatrixSymbol,
    PCSymbol,
    SpaceContext,
    VariableExponent,
    classify_algebra_element,
    classify_element_direct,
    classify_pair,
    classify_scalar,
    closed_range_scalar,
    criterion_value,
)


def make_ctx(p=2.0, marked=(), curve=None):
    if curve is None:
        curve = CurveModel.circle()
    exponent = VariableExponent.constant(p, curve.length)
    return SpaceContext(curve, exponent, KhvedelidzeWeight(tuple(marked)), 1.0)


def jump_symbol(left, right):
    """Symbol with a(t-0) = left and a(t+0) = right at parameter 0.5."""
    return PCSymbol.piecewise_constant([(0.0, left), (0.5, right)])


def test_criterion_value_sign_jump():
    ctx = make_ctx()
    a = jump_symbol(1.0, -1.0)
    row = criterion_value(a, complex(ctx.curve.point(0.5)), ctx)
    assert row.zeta == pytest.approx(-1.0)
    assert row.v == pytest.approx(0.0, abs=1e-14)
    assert row.distance_to_integers == pytest.approx(0.0, abs=1e-14)


def test_criterion_value_quarter_jump():
    ctx = make_ctx()
    a = jump_symbol(1j, 1.0)
    row = criterion_value(a, complex(ctx.curve.point(0.5)), ctx)
    assert row.zeta == pytest.approx(1j)
    assert row.v == pytest.approx(0.25, abs=1e-14)


def test_criterion_value_with_whirl():
    t0 = -1.0 + 0j
    curve = CurveModel.spiral_marked([(t0, 1.0)])
    ctx = make_ctx(curve=curve)
    a = jump_symbol(np.exp(np.pi), 1.0)
    row = criterion_value(a, t0, ctx)
    assert row.delta == pytest.approx(1.0)
    assert row.v == pytest.approx(1.0, abs=1e-12)
    assert row.distance_to_integers == pytest.approx(0.0, abs=1e-12)


def test_classify_scalar_dichotomy():
    ctx = make_ctx()
    assert classify_scalar(jump_symbol(1j, 1.0), ctx).verdict == "Fredholm"
    bad = classify_scalar(jump_symbol(1.0, -1.0), ctx)
    assert bad.verdict == "NotSemiFredholm"
    assert any("criterion-integer" in r for r in bad.reasons)


def test_classify_scalar_weight_point_can_flip_verdict():
    curve = CurveModel.circle()
    t0 = complex(curve.point(0.5))
    a = jump_symbol(1j, 1.0)  # v = 1/4 + lambda at the jump point
    ctx = make_ctx(2.0, [(t0, 0.2)])
    assert classify_scalar(a, ctx).verdict == "Fredholm"
    ctx_bad = make_ctx(2.0, [(t0, -0.25)])
    bad = classify_scalar(a, ctx_bad)
    assert bad.verdict == "NotSemiFredholm"


def test_classify_scalar_degenerate_symbol():
    ctx = make_ctx()
    cls = classify_scalar(jump_symbol(0.0, 1.0), ctx)
    assert cls.verdict == "NotSemiFredholm"
    assert any("symbol-degenerate" in r for r in cls.reasons)


def test_classify_requires_bounded_space():
    curve = CurveModel.circle()
    t0 = complex(curve.point(0.25))
    ctx = make_ctx(2.0, [(t0, 0.7)])
    with pytest.raises(HypothesisViolatedError):
        classify_scalar(PCSymbol.constant(1.0), ctx)


def test_closed_range_agrees_with_classification():
    ctx = make_ctx()
    for a in (jump_symbol(1j, 1.0), jump_symbol(1.0, -1.0), jump_symbol(2.0, 3.0)):
        assert closed_range_scalar(a, ctx) == classify_scalar(a, ctx).is_fredholm


def test_classify_pair_scalar_reduction():
    ctx = make_ctx()
    a = MatrixSymbol.scalar(jump_symbol(1j, 1.0))
    b = MatrixSymbol.scalar(PCSymbol.constant(2.0))
    assert classify_pair(a, b, ctx).verdict == "Fredholm"


def test_classify_pair_matrix_on_engine_space():
    ctx = make_ctx()
    one = PCSymbol.constant(1.0)
    tau = PCSymbol.tau()
    a = MatrixSymbol([[tau, PCSymbol.constant(0.1)], [PCSymbol.constant(0.0), one]])
    cls = classify_pair(a, MatrixSymbol.identity(2), ctx, (32, 48, 64))
    assert cls.verdict == "Fredholm"
    assert cls.numeric_evidence is not None
    assert cls.numeric_evidence.index_estimate == -1


def test_classify_pair_matrix_rejects_other_spaces():
    curve = CurveModel.circle()
    ctx = make_ctx(3.0, curve=curve)
    a = MatrixSymbol.identity(2)
    with pytest.raises(HypothesisViolatedError):
        classify_pair(a, a, ctx)


def test_classify_pair_degenerate_coefficient():
    ctx = make_ctx()
    a = MatrixSymbol.scalar(PCSymbol.trig({0: 1.0, 1: -1.0}))  # vanishes at tau = 1
    cls = classify_pair(a, MatrixSymbol.identity(1), ctx)
    assert cls.verdict == "NotSemiFredholm"


def test_element_classification_matches_dilated_route():
    ctx = make_ctx()
    one = MatrixSymbol.scalar(PCSymbol.constant(1.0))
    tau = MatrixSymbol.scalar(PCSymbol.tau())
    two = MatrixSymbol.scalar(PCSymbol.constant(2.0))
    three = MatrixSymbol.scalar(PCSymbol.constant(3.0))
    A = AlgebraElement.build(1, [[(three, one)], [(one, two), (tau, one)]])
    direct = classify_element_direct(A, ctx, (24, 32, 48))
    dilated = classify_algebra_element(A, ctx, (24, 32, 48))
    assert direct.verdict == dilated.verdict == "Fredholm"
