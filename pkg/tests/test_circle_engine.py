import numpy as np
import pytest

from siocalc import (
    FourierTruncation,
    MatrixSymbol,
    ModeVector,
    OpExpr,
    PCSymbol,
    adjoint_residual,
    assemble,
    cauchy_pv,
    h_involution_apply,
    identity_residual,
    multiplication_matrix,
    pair_section_builder,
    random_invertible_coeffs,
    riesz_apply,
    riesz_matrices,
    spectral_report,
    winding_number,
)
from siocalc.circle_engine import conv_coeffs, fourier_table


def test_riesz_matrices_are_exact_projections():
    trunc = FourierTruncation(32)
    P, Q, S = riesz_matrices(trunc)
    I = np.eye(trunc.dim)
    assert np.array_equal(P @ P, P)
    assert np.array_equal(Q @ Q, Q)
    assert not np.any(P @ Q)
    assert np.array_equal(S, P - Q)
    assert np.array_equal(S @ S, I)


def test_multiplication_matrix_identity_and_shift():
    trunc = FourierTruncation(8)
    one = multiplication_matrix(MatrixSymbol.scalar(PCSymbol.constant(1.0)), trunc)
    assert np.allclose(one.matrix, np.eye(trunc.dim), atol=1e-14)
    tau = multiplication_matrix(MatrixSymbol.scalar(PCSymbol.tau()), trunc)
    x = np.zeros(trunc.dim, dtype=complex)
    x[8] = 1.0  # mode 0
    y = tau.matrix @ x
    assert y[9] == pytest.approx(1.0)  # mode 0 -> mode 1
    assert np.count_nonzero(np.abs(y) > 1e-14) == 1


def test_assemble_identity_pair():
    trunc = FourierTruncation(8)
    win = trunc.modes
    op = assemble(
        MatrixSymbol.scalar(PCSymbol.constant(1.0)),
        MatrixSymbol.scalar(PCSymbol.constant(1.0)),
        rows_modes=win,
        cols_modes=win,
    )
    assert np.allclose(op.matrix, np.eye(trunc.dim), atol=1e-14)


def test_mode_vector_window_round_trip():
    x = ModeVector(-3, np.arange(1, 8, dtype=complex))
    w = x.to_window(5)
    back = ModeVector.from_window(w, 5)
    r = back.restrict(3)
    assert r.m_min == -3
    assert np.allclose(r.coeffs, x.coeffs)


def test_riesz_apply_splits_modes():
    x = ModeVector(-2, np.array([1.0, 2.0, 3.0, 4.0, 5.0], dtype=complex))
    p = riesz_apply("P", x)
    q = riesz_apply("Q", x)
    assert np.allclose(p.to_window(2), [0, 0, 3, 4, 5])
    assert np.allclose(q.to_window(2), [1, 2, 0, 0, 0])


def test_h_involution_is_involution_and_antilinear():
    rng = np.random.default_rng(11)
    x = ModeVector(-4, rng.standard_normal(9) + 1j * rng.standard_normal(9))
    twice = h_involution_apply(h_involution_apply(x))
    assert twice.m_min == x.m_min
    assert np.allclose(twice.coeffs, x.coeffs, atol=1e-15)
    ax = h_involution_apply(x.scaled(2.0 + 1j))
    hx = h_involution_apply(x).scaled(2.0 - 1j)
    assert np.allclose(ax.coeffs, hx.coeffs, atol=1e-15)


def test_adjoint_residual_vanishes():
    assert adjoint_residual(FourierTruncation(64)) <= 1e-12


def test_cauchy_pv_fourier_multiplier_oracle():
    one = PCSymbol.constant(1.0)
    t = np.exp(2j * np.pi * 0.0)
    assert cauchy_pv(one, t) == pytest.approx(1.0, abs=1e-6)
    tau = PCSymbol.tau()
    t = np.exp(2j * np.pi * 0.3)
    assert cauchy_pv(tau, t) == pytest.approx(t, abs=1e-6)
    taum = PCSymbol.tau(-1)
    assert cauchy_pv(taum, t) == pytest.approx(-1.0 / t, abs=1e-6)


def test_spectral_report_toeplitz_shift():
    builder = pair_section_builder(
        MatrixSymbol.scalar(PCSymbol.tau()), MatrixSymbol.identity(1)
    )
    report = spectral_report(builder, sweep=(16, 32, 64), margin=lambda n: 8)
    assert report.kernel == 0
    assert report.cokernel == 1
    assert report.index_estimate == -1
    assert report.stabilized
    assert report.fredholm_evidence


def test_spectral_report_identity():
    builder = pair_section_builder(
        MatrixSymbol.identity(1), MatrixSymbol.identity(1)
    )
    report = spectral_report(builder, sweep=(16, 32, 64), margin=lambda n: 8)
    assert report.kernel == 0 and report.cokernel == 0
    assert report.index_estimate == 0


def test_spectral_report_sign_symbol_collapses():
    sign = PCSymbol.piecewise_constant([(0.0, 1.0), (0.5, -1.0)])
    builder = pair_section_builder(MatrixSymbol.scalar(sign), MatrixSymbol.identity(1))
    report = spectral_report(builder, sweep=(32, 64, 128))
    assert report.nonfredholm_evidence
    assert not report.fredholm_evidence


def test_winding_numbers():
    assert winding_number(PCSymbol.tau()) == 1
    assert winding_number(PCSymbol.constant(5.0)) == 0
    assert winding_number(PCSymbol.tau(-2)) == -2


def test_opexpr_projection_identities():
    trunc = FourierTruncation(32)
    P, Q, I = OpExpr.P(), OpExpr.Q(), OpExpr.I()
    assert identity_residual(P * P, P, trunc) == 0.0
    assert identity_residual(P + Q, I, trunc) == 0.0


def test_random_invertible_coeffs_are_inverse_pairs():
    rng = np.random.default_rng(3)
    for _ in range(5):
        c, cinv = random_invertible_coeffs(rng)
        conv = conv_coeffs(c, cinv, None)
        for k, v in conv.items():
            target = 1.0 if k == 0 else 0.0
            assert abs(v - target) < 1e-12


def test_fourier_table_matches_symbol_method():
    sign = PCSymbol.piecewise_constant([(0.0, 1.0), (0.5, -1.0)])
    ks = np.arange(-5, 6)
    tab = fourier_table(sign, ks)
    for k, c in zip(ks, tab):
        assert c == pytest.approx(sign.fourier_coefficient(int(k)), abs=1e-13)
