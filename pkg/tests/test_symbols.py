import numpy as np
import pytest

from siocalc import (
    MatrixSymbol,
    PCSymbol,
    SingularSymbolError,
    essential_invertibility,
    is_nonsingular,
    jump_set,
    one_sided_limits,
)


def sign_symbol():
    return PCSymbol.piecewise_constant([(0.0, 1.0), (0.5, -1.0)])


def test_piecewise_constant_values_and_jumps():
    a = sign_symbol()
    assert a.value(0.25) == pytest.approx(1.0)
    assert a.value(0.75) == pytest.approx(-1.0)
    assert jump_set(a) == pytest.approx([0.0, 0.5])
    left, right = a.one_sided_limits(0.5)
    assert left == pytest.approx(1.0)
    assert right == pytest.approx(-1.0)


def test_left_continuity_at_breakpoint():
    a = sign_symbol()
    # at the breakpoint itself the value is the limit from the left
    assert a.value(0.5) == pytest.approx(1.0)


def test_trig_symbol_evaluation_and_fourier():
    a = PCSymbol.trig({1: 2.0, -2: 0.5j})
    u = np.array([0.1, 0.6])
    expect = 2.0 * np.exp(2j * np.pi * u) + 0.5j * np.exp(-4j * np.pi * u)
    assert np.allclose(a.value(u), expect, atol=1e-14)
    assert a.fourier_coefficient(1) == pytest.approx(2.0)
    assert a.fourier_coefficient(-2) == pytest.approx(0.5j)
    assert a.fourier_coefficient(3) == pytest.approx(0.0, abs=1e-14)


def test_sign_symbol_fourier_against_quadrature():
    a = sign_symbol()
    n = 20000
    u = (np.arange(n) + 0.5) / n
    vals = a.value(u)
    for k in (-3, -1, 0, 1, 2, 5):
        quad = np.sum(vals * np.exp(-2j * np.pi * k * u)) / n
        assert a.fourier_coefficient(k) == pytest.approx(quad, abs=1e-7)


def test_product_refines_breakpoints():
    a = sign_symbol()
    b = PCSymbol.piecewise_constant([(0.25, 2.0), (0.75, 3.0)])
    c = a * b
    assert c.value(0.1) == pytest.approx(3.0)
    assert c.value(0.3) == pytest.approx(2.0)
    assert c.value(0.6) == pytest.approx(-2.0)
    assert c.value(0.8) == pytest.approx(-3.0)


def test_sum_and_scale():
    a = PCSymbol.tau()
    b = PCSymbol.constant(1.0)
    c = (a + b).scale(2.0)
    u = 0.37
    assert c.value(u) == pytest.approx(2.0 * (np.exp(2j * np.pi * u) + 1.0))
    d = a - a
    assert abs(d.value(0.2)) < 1e-15


def test_inverse_of_nonvanishing_symbol():
    a = PCSymbol.piecewise_constant([(0.0, 2.0), (0.5, 1j)])
    inv = a.inverse()
    assert inv.value(0.25) == pytest.approx(0.5)
    assert inv.value(0.75) == pytest.approx(-1j)


def test_inverse_rejects_vanishing_symbol():
    a = PCSymbol.piecewise_constant([(0.0, 0.0), (0.5, 1.0)])
    with pytest.raises(SingularSymbolError):
        a.inverse()


def test_tau_power_inverse_is_negative_power():
    a = PCSymbol.tau(2)
    inv = a.inverse()
    u = 0.13
    assert inv.value(u) == pytest.approx(np.exp(-4j * np.pi * u))


def test_matrix_symbol_algebra():
    one = PCSymbol.constant(1.0)
    tau = PCSymbol.tau()
    m = MatrixSymbol([[one, tau], [PCSymbol.constant(0.0), one]])
    prod = m.multiply(m)
    u = 0.29
    v = prod.value(u)
    t = np.exp(2j * np.pi * u)
    assert np.allclose(v, [[1.0, 2 * t], [0.0, 1.0]], atol=1e-13)
    det = m.determinant()
    assert det.value(u) == pytest.approx(1.0)
    inv = m.inverse()
    assert np.allclose(inv.value(u) @ m.value(u), np.eye(2), atol=1e-12)


def test_matrix_one_sided_limits():
    a = sign_symbol()
    m = MatrixSymbol([[a]])
    left, right = m.one_sided_limits(0.5)
    assert left[0, 0] == pytest.approx(1.0)
    assert right[0, 0] == pytest.approx(-1.0)
    sl, sr = one_sided_limits(m, 0.5)
    assert np.allclose(sl, left) and np.allclose(sr, right)


def test_nonsingularity_report():
    good = MatrixSymbol.scalar(sign_symbol())
    assert is_nonsingular(good).passed
    bad = MatrixSymbol.scalar(PCSymbol.trig({0: 1.0, 1: -1.0}))  # 1 - tau vanishes
    assert not is_nonsingular(bad).passed
    assert essential_invertibility(good)
    assert not essential_invertibility(bad)
