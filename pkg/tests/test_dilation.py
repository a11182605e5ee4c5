import numpy as np
import pytest

from siocalc import (
    AlgebraElement,
    InsufficientTruncationError,
    MatrixSymbol,
    PCSymbol,
    dilate,
    verify_dilation_identity,
)


def scalar(sym):
    return MatrixSymbol.scalar(sym)


def random_matrix_symbol(rng, N, deg):
    entries = []
    for i in range(N):
        row = []
        for j in range(N):
            coeffs = {0: 3.0 + 0.2 * rng.standard_normal() if i == j else 0.3}
            for m in range(1, deg + 1):
                for s in (m, -m):
                    coeffs[s] = (rng.standard_normal() + 1j * rng.standard_normal()) * 0.3 / m
            row.append(PCSymbol.trig(coeffs))
        entries.append(row)
    return MatrixSymbol(entries)


def test_dimension_formula():
    one = scalar(PCSymbol.constant(1.0))
    tau = scalar(PCSymbol.tau())
    cases = [
        (1, [[(tau, one)]], 3),
        (1, [[(tau, one), (one, tau)], [(one, one), (tau, tau)]], 7),
        (2, [[(MatrixSymbol.identity(2), MatrixSymbol.identity(2))] * 3], 10),
    ]
    for N, terms, expect in cases:
        A = AlgebraElement.build(N, terms)
        assert A.D == expect
        assert dilate(A).D == expect


def test_terms_are_padded_to_rectangular():
    one = scalar(PCSymbol.constant(1.0))
    tau = scalar(PCSymbol.tau())
    A = AlgebraElement.build(1, [[(tau, one)], [(one, one), (tau, tau)]])
    assert A.k == 2 and A.r == 2
    assert len(A.terms[0]) == 2


def test_identity_element_dilates_consistently():
    A = AlgebraElement.identity(1)
    result = dilate(A)
    assert result.D == 3
    assert result.a.N == 3 and result.b.N == 3
    assert verify_dilation_identity(A, 32) <= 1e-13


def test_dilation_identity_single_product():
    tau = scalar(PCSymbol.tau())
    one = scalar(PCSymbol.constant(1.0))
    A = AlgebraElement.build(1, [[(tau, one), (one, tau)]])
    assert verify_dilation_identity(A, 64) <= 1e-13


def test_dilation_identity_random_elements():
    rng = np.random.default_rng(17)
    for _ in range(4):
        k = int(rng.integers(1, 4))
        r = int(rng.integers(1, 4))
        N = int(rng.integers(1, 3))
        terms = [
            [(random_matrix_symbol(rng, N, 3), random_matrix_symbol(rng, N, 3)) for _ in range(r)]
            for _ in range(k)
        ]
        A = AlgebraElement.build(N, terms)
        assert verify_dilation_identity(A, 128) <= 1e-12


def test_insufficient_truncation_is_reported():
    rng = np.random.default_rng(1)
    terms = [[(random_matrix_symbol(rng, 1, 8), random_matrix_symbol(rng, 1, 8))] * 3]
    A = AlgebraElement.build(1, terms)
    with pytest.raises(InsufficientTruncationError):
        verify_dilation_identity(A, 16)
