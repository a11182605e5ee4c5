"""Piecewise-continuous scalar and matrix coefficient functions.

A symbol is a finite list of arcs of the parameter circle [0, 1), each
carrying a smooth closed-form piece (constant, trigonometric polynomial,
or an opaque callable).  One-sided limits at breakpoints are evaluated
exactly from the adjacent pieces, never extracted from samples.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from .errors import DegenerateSymbolError, SingularSymbolError

BREAK_TOL = 1e-12
DEFAULT_MAX_DEGREE = 128
DET_TOL = 1e-10
ESSENTIAL_TOL = 1e-8


# ---------------------------------------------------------------------
# pieces
# ---------------------------------------------------------------------

class ConstPiece:
    __slots__ = ("value_",)

    def __init__(self, value: complex):
        self.value_ = complex(value)

    def value(self, u):
        u = np.asarray(u, dtype=float)
        return np.full(u.shape, self.value_, dtype=complex)

    def __repr__(self):
        return f"ConstPiece({self.value_})"


class TrigPiece:
    """Trigonometric polynomial sum_m c_m exp(2 pi i m u)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[int, complex]):
        self.coeffs = {int(m): complex(c) for m, c in coeffs.items() if c != 0}
        if not self.coeffs:
            self.coeffs = {0: 0j}

    def value(self, u):
        u = np.asarray(u, dtype=float)
        out = np.zeros(u.shape, dtype=complex)
        for m, c in self.coeffs.items():
            out += c * np.exp(2j * np.pi * m * u)
        return out

    @property
    def degree(self) -> int:
        return max(abs(m) for m in self.coeffs)

    def __repr__(self):
        return f"TrigPiece({self.coeffs})"


class FuncPiece:
    """Opaque smooth evaluator; used for inverses of general pieces."""

    __slots__ = ("fn",)

    def __init__(self, fn: Callable[[np.ndarray], np.ndarray]):
        self.fn = fn

    def value(self, u):
        u = np.asarray(u, dtype=float)
        return np.asarray(self.fn(u), dtype=complex).reshape(u.shape)

    def __repr__(self):
        return "FuncPiece(...)"


Piece = ConstPiece | TrigPiece | FuncPiece


def _piece_mul(p1: Piece, p2: Piece, max_degree: int) -> tuple[Piece, float]:
    """Pointwise product of two pieces; returns (piece, truncation error)."""
    if isinstance(p1, ConstPiece) and isinstance(p2, ConstPiece):
        return ConstPiece(p1.value_ * p2.value_), 0.0
    if isinstance(p1, ConstPiece) and isinstance(p2, TrigPiece):
        return TrigPiece({m: p1.value_ * c for m, c in p2.coeffs.items()}), 0.0
    if isinstance(p1, TrigPiece) and isinstance(p2, ConstPiece):
        return _piece_mul(p2, p1, max_degree)
    if isinstance(p1, TrigPiece) and isinstance(p2, TrigPiece):
        out: dict[int, complex] = {}
        for m1, c1 in p1.coeffs.items():
            for m2, c2 in p2.coeffs.items():
                out[m1 + m2] = out.get(m1 + m2, 0j) + c1 * c2
        dropped = sum(abs(c) for m, c in out.items() if abs(m) > max_degree)
        kept = {m: c for m, c in out.items() if abs(m) <= max_degree}
        return TrigPiece(kept), float(dropped)
    return FuncPiece(lambda u, a=p1, b=p2: a.value(u) * b.value(u)), 0.0


def _piece_add(p1: Piece, p2: Piece) -> Piece:
    if isinstance(p1, ConstPiece) and isinstance(p2, ConstPiece):
        return ConstPiece(p1.value_ + p2.value_)
    if isinstance(p1, ConstPiece):
        p1 = TrigPiece({0: p1.value_})
    if isinstance(p2, ConstPiece):
        p2 = TrigPiece({0: p2.value_})
    if isinstance(p1, TrigPiece) and isinstance(p2, TrigPiece):
        out = dict(p1.coeffs)
        for m, c in p2.coeffs.items():
            out[m] = out.get(m, 0j) + c
        return TrigPiece(out)
    return FuncPiece(lambda u, a=p1, b=p2: a.value(u) + b.value(u))


def _piece_scale(p: Piece, alpha: complex) -> Piece:
    if isinstance(p, ConstPiece):
        return ConstPiece(alpha * p.value_)
    if isinstance(p, TrigPiece):
        return TrigPiece({m: alpha * c for m, c in p.coeffs.items()})
    return FuncPiece(lambda u, a=p, s=alpha: s * a.value(u))


def _piece_inverse(p: Piece) -> Piece:
    if isinstance(p, ConstPiece):
        if p.value_ == 0:
            raise SingularSymbolError("cannot invert a zero constant piece")
        return ConstPiece(1.0 / p.value_)
    if isinstance(p, TrigPiece) and len(p.coeffs) == 1:
        (m, c), = p.coeffs.items()
        if c == 0:
            raise SingularSymbolError("cannot invert a zero piece")
        return TrigPiece({-m: 1.0 / c})
    return FuncPiece(lambda u, a=p: 1.0 / a.value(u))


# ---------------------------------------------------------------------
# scalar symbols
# ---------------------------------------------------------------------

class PCSymbol:
    """Scalar piecewise-continuous function on the parameter circle.

    breaks[i] starts the arc covered by pieces[i]; the last arc wraps
    around to breaks[0].  With the left-continuity flag set, the value
    exactly at a breakpoint is the limit from the preceding arc.
    """

    def __init__(
        self,
        breaks: Sequence[float],
        pieces: Sequence[Piece],
        left_continuous: bool = True,
        truncation_error: float = 0.0,
    ):
        if len(breaks) != len(pieces) or len(breaks) == 0:
            raise ValueError("need one piece per breakpoint")
        order = np.argsort(np.asarray(breaks, dtype=float))
        self.breaks = np.asarray(breaks, dtype=float)[order] % 1.0
        self.pieces = [pieces[i] for i in order]
        if np.any(np.diff(self.breaks) < BREAK_TOL):
            raise ValueError("breakpoints must be distinct")
        self.left_continuous = left_continuous
        self.truncation_error = float(truncation_error)

    # -- constructors ---------------------------------------------------
    @staticmethod
    def constant(c: complex) -> "PCSymbol":
        return PCSymbol([0.0], [ConstPiece(c)])

    @staticmethod
    def trig(coeffs: dict[int, complex]) -> "PCSymbol":
        return PCSymbol([0.0], [TrigPiece(coeffs)])

    @staticmethod
    def tau(power: int = 1) -> "PCSymbol":
        """The coordinate function raised to an integer power."""
        return PCSymbol.trig({power: 1.0})

    @staticmethod
    def piecewise_constant(segments: Sequence[tuple[float, complex]]) -> "PCSymbol":
        """segments: (start parameter, value) pairs; each value holds
        until the next start (wrapping)."""
        return PCSymbol([s for s, _ in segments], [ConstPiece(v) for _, v in segments])

    # -- evaluation -------------------------------------------------------
    def _arc_index(self, u: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self.breaks, u + BREAK_TOL, side="right") - 1
        return np.where(idx < 0, len(self.pieces) - 1, idx)

    def value(self, u):
        u = np.atleast_1d(np.asarray(u, dtype=float)) % 1.0
        idx = self._arc_index(u)
        if self.left_continuous:
            # exactly at a breakpoint, take the preceding arc's limit
            at_break = np.isclose(
                u[:, None], self.breaks[None, :], atol=BREAK_TOL, rtol=0
            ).any(axis=1)
            idx = np.where(at_break, (idx - 1) % len(self.pieces), idx)
        out = np.empty(u.shape, dtype=complex)
        for i, piece in enumerate(self.pieces):
            m = idx == i
            if m.any():
                out[m] = piece.value(u[m])
        return out if out.size > 1 else complex(out[0])

    def one_sided_limits(self, u0: float) -> tuple[complex, complex]:
        """(limit from below, limit from above) at parameter u0."""
        u0 = float(u0) % 1.0
        hits = np.isclose(u0, self.breaks, atol=BREAK_TOL, rtol=0)
        if not hits.any():
            v = complex(np.atleast_1d(self.value(u0))[0])
            return v, v
        i = int(np.argmax(hits))
        right = complex(self.pieces[i].value(np.array([u0]))[0])
        left_piece = self.pieces[(i - 1) % len(self.pieces)]
        u_left = u0 if u0 > 0 else 1.0  # evaluate the wrapping arc at 1-
        left = complex(left_piece.value(np.array([u_left]))[0])
        return left, right

    @property
    def degree(self) -> int:
        return max(
            (p.degree for p in self.pieces if isinstance(p, TrigPiece)), default=0
        )

    # -- algebra ----------------------------------------------------------
    def _refined_with(self, other: "PCSymbol") -> np.ndarray:
        merged = np.concatenate([self.breaks, other.breaks])
        merged = np.sort(merged % 1.0)
        keep = np.concatenate([[True], np.diff(merged) > BREAK_TOL])
        return merged[keep]

    def _piece_on(self, u0: float) -> Piece:
        """Piece covering the arc starting at u0."""
        idx = int(np.searchsorted(self.breaks, u0 + BREAK_TOL, side="right") - 1)
        if idx < 0:
            idx = len(self.pieces) - 1
        return self.pieces[idx]

    def _zip(self, other: "PCSymbol", combine) -> "PCSymbol":
        breaks = self._refined_with(other)
        pieces = []
        err = self.truncation_error + other.truncation_error
        for u0 in breaks:
            piece, e = combine(self._piece_on(u0), other._piece_on(u0))
            pieces.append(piece)
            err += e
        return PCSymbol(breaks, pieces, self.left_continuous, err)

    def __mul__(self, other):
        if isinstance(other, PCSymbol):
            return self._zip(
                other, lambda p, q: _piece_mul(p, q, DEFAULT_MAX_DEGREE)
            )
        return self.scale(other)

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, PCSymbol):
            return self._zip(other, lambda p, q: (_piece_add(p, q), 0.0))
        return self + PCSymbol.constant(other)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, PCSymbol):
            other = PCSymbol.constant(other)
        return self + other.scale(-1.0)

    def scale(self, alpha: complex) -> "PCSymbol":
        return PCSymbol(
            self.breaks,
            [_piece_scale(p, alpha) for p in self.pieces],
            self.left_continuous,
            abs(alpha) * self.truncation_error,
        )

    def inverse(self) -> "PCSymbol":
        report = is_nonsingular(MatrixSymbol.scalar(self))
        if not report.passed:
            raise SingularSymbolError(
                f"symbol vanishes near parameters {report.witnesses[:3]}"
            )
        return PCSymbol(
            self.breaks,
            [_piece_inverse(p) for p in self.pieces],
            self.left_continuous,
            self.truncation_error,
        )

    # -- Fourier ------------------------------------------------------------
    def fourier_coefficient(self, k: int) -> complex:
        """Exact arc-wise coefficient of exp(2 pi i k u) for constant and
        trig pieces; high-order quadrature for opaque pieces."""
        total = 0j
        nb = len(self.breaks)
        for i, piece in enumerate(self.pieces):
            u0 = self.breaks[i]
            u1 = self.breaks[(i + 1) % nb] if i + 1 < nb else self.breaks[0] + 1.0
            if isinstance(piece, ConstPiece):
                total += piece.value_ * _mode_integral(-k, u0, u1)
            elif isinstance(piece, TrigPiece):
                for m, c in piece.coeffs.items():
                    total += c * _mode_integral(m - k, u0, u1)
            else:
                nq = 512
                uu = u0 + (np.arange(nq) + 0.5) * (u1 - u0) / nq
                vals = piece.value(uu) * np.exp(-2j * np.pi * k * uu)
                total += vals.sum() * (u1 - u0) / nq
        return complex(total)

    def fourier_coefficients(self, kmax: int) -> np.ndarray:
        """Coefficients for modes -kmax..kmax (index m + kmax)."""
        return np.array(
            [self.fourier_coefficient(k) for k in range(-kmax, kmax + 1)]
        )


def _mode_integral(m: int, u0: float, u1: float) -> complex:
    """Integral of exp(2 pi i m u) over [u0, u1]."""
    if m == 0:
        return complex(u1 - u0)
    f = 2j * np.pi * m
    return complex((np.exp(f * u1) - np.exp(f * u0)) / f)


# ---------------------------------------------------------------------
# matrix symbols
# ---------------------------------------------------------------------

class MatrixSymbol:
    """Square grid of scalar symbols sharing a refined breakpoint list."""

    def __init__(self, entries: Sequence[Sequence[PCSymbol]]):
        n = len(entries)
        if any(len(row) != n for row in entries):
            raise ValueError("entries must form a square grid")
        self.N = n
        # refine all entries to the common breakpoint union
        union = entries[0][0].breaks
        for row in entries:
            for e in row:
                union = _merge_breaks(union, e.breaks)
        self.breaks = union
        self.entries = [
            [_rebase(e, union) for e in row] for row in entries
        ]

    @staticmethod
    def scalar(a: PCSymbol) -> "MatrixSymbol":
        return MatrixSymbol([[a]])

    @staticmethod
    def identity(N: int) -> "MatrixSymbol":
        one, zero = PCSymbol.constant(1.0), PCSymbol.constant(0.0)
        return MatrixSymbol(
            [[one if i == j else zero for j in range(N)] for i in range(N)]
        )

    @staticmethod
    def diagonal(diag: Sequence[PCSymbol]) -> "MatrixSymbol":
        zero = PCSymbol.constant(0.0)
        N = len(diag)
        return MatrixSymbol(
            [[diag[i] if i == j else zero for j in range(N)] for i in range(N)]
        )

    @property
    def truncation_error(self) -> float:
        return sum(e.truncation_error for row in self.entries for e in row)

    def value(self, u: float) -> np.ndarray:
        return np.array(
            [[complex(np.atleast_1d(e.value(u))[0]) for e in row] for row in self.entries]
        )

    def one_sided_limits(self, u0: float) -> tuple[np.ndarray, np.ndarray]:
        left = np.empty((self.N, self.N), dtype=complex)
        right = np.empty((self.N, self.N), dtype=complex)
        for i in range(self.N):
            for j in range(self.N):
                left[i, j], right[i, j] = self.entries[i][j].one_sided_limits(u0)
        return left, right

    # -- algebra --------------------------------------------------------
    def multiply(self, other: "MatrixSymbol") -> "MatrixSymbol":
        if self.N != other.N:
            raise ValueError("size mismatch")
        out = []
        for i in range(self.N):
            row = []
            for j in range(self.N):
                acc = PCSymbol.constant(0.0)
                for k in range(self.N):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return MatrixSymbol(out)

    def add(self, other: "MatrixSymbol") -> "MatrixSymbol":
        if self.N != other.N:
            raise ValueError("size mismatch")
        return MatrixSymbol(
            [
                [self.entries[i][j] + other.entries[i][j] for j in range(self.N)]
                for i in range(self.N)
            ]
        )

    def transpose(self) -> "MatrixSymbol":
        return MatrixSymbol(
            [[self.entries[j][i] for j in range(self.N)] for i in range(self.N)]
        )

    def scale(self, alpha: complex) -> "MatrixSymbol":
        return MatrixSymbol(
            [[e.scale(alpha) for e in row] for row in self.entries]
        )

    def determinant(self) -> PCSymbol:
        if self.N == 1:
            return self.entries[0][0]
        if self.N == 2:
            a, b = self.entries[0]
            c, d = self.entries[1]
            return a * d - b * c
        det = PCSymbol.constant(0.0)
        for j in range(self.N):
            minor = MatrixSymbol(
                [
                    [self.entries[i][jj] for jj in range(self.N) if jj != j]
                    for i in range(1, self.N)
                ]
            )
            term = self.entries[0][j] * minor.determinant()
            det = det + term.scale((-1.0) ** j)
        return det

    def inverse(self) -> "MatrixSymbol":
        report = is_nonsingular(self)
        if not report.passed:
            raise SingularSymbolError(
                f"matrix symbol singular near parameters {report.witnesses[:3]}"
            )
        det_inv = self.determinant().inverse()
        if self.N == 1:
            return MatrixSymbol([[det_inv]])
        cof = []
        for i in range(self.N):
            row = []
            for j in range(self.N):
                minor = MatrixSymbol(
                    [
                        [self.entries[ii][jj] for jj in range(self.N) if jj != j]
                        for ii in range(self.N)
                        if ii != i
                    ]
                )
                row.append(minor.determinant().scale((-1.0) ** (i + j)))
            cof.append(row)
        # adjugate = cofactor transpose
        return MatrixSymbol(
            [
                [cof[j][i] * det_inv for j in range(self.N)]
                for i in range(self.N)
            ]
        )


def _merge_breaks(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    merged = np.sort(np.concatenate([a, b]) % 1.0)
    keep = np.concatenate([[True], np.diff(merged) > BREAK_TOL])
    return merged[keep]


def _rebase(sym: PCSymbol, breaks: np.ndarray) -> PCSymbol:
    """Re-express sym on a refined breakpoint list (pieces are reused)."""
    if len(breaks) == len(sym.breaks) and np.allclose(breaks, sym.breaks, atol=BREAK_TOL):
        return sym
    pieces = [sym._piece_on(u0) for u0 in breaks]
    return PCSymbol(breaks, pieces, sym.left_continuous, sym.truncation_error)


# ---------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------

def one_sided_limits(a: "PCSymbol | MatrixSymbol", u0: float):
    return a.one_sided_limits(u0)


def jump_set(a: "PCSymbol | MatrixSymbol", tol: float = 1e-12) -> list[float]:
    """Breakpoints where the one-sided limits genuinely differ."""
    breaks = a.breaks
    out = []
    for u0 in breaks:
        left, right = a.one_sided_limits(u0)
        diff = np.abs(np.asarray(left) - np.asarray(right)).max()
        if diff > tol:
            out.append(float(u0))
    return out


class NonsingularityReport:
    def __init__(self, passed: bool, witnesses: list[float], min_abs_det: float):
        self.passed = passed
        self.witnesses = witnesses
        self.min_abs_det = min_abs_det

    def __bool__(self):
        return self.passed


def is_nonsingular(
    a: MatrixSymbol, tol_det: float = DET_TOL, grid: int = 64
) -> NonsingularityReport:
    """det a(t+-0) != 0 at breakpoints and |det a| > tol on piece grids.

    Determinants are evaluated pointwise (never expanded symbolically),
    so the check stays cheap for large matrix sizes."""
    if isinstance(a, PCSymbol):
        a = MatrixSymbol.scalar(a)
    witnesses: list[float] = []
    min_abs = math.inf
    for u0 in a.breaks:
        for mat in a.one_sided_limits(u0):
            v = np.linalg.det(np.atleast_2d(mat))
            min_abs = min(min_abs, abs(v))
            if abs(v) <= tol_det:
                witnesses.append(float(u0))
    nb = len(a.breaks)
    all_u = []
    for i in range(nb):
        u0 = a.breaks[i]
        u1 = a.breaks[(i + 1) % nb] if i + 1 < nb else a.breaks[0] + 1.0
        all_u.append(u0 + (np.arange(1, grid) / grid) * (u1 - u0))
    uu = np.concatenate(all_u)
    stacked = np.empty((uu.size, a.N, a.N), dtype=complex)
    for i in range(a.N):
        for j in range(a.N):
            stacked[:, i, j] = a.entries[i][j].value(uu)
    vals = np.linalg.det(stacked)
    bad = np.abs(vals) <= tol_det
    min_abs = min(min_abs, float(np.abs(vals).min()))
    witnesses.extend(float(x % 1.0) for x in uu[bad])
    return NonsingularityReport(not witnesses, witnesses, min_abs)


def essential_invertibility(
    a: "MatrixSymbol | PCSymbol", tol: float = ESSENTIAL_TOL, grid: int = 64
) -> bool:
    """inf |det a| > tol on the sampling grid and at one-sided limits."""
    if isinstance(a, PCSymbol):
        a = MatrixSymbol.scalar(a)
    return is_nonsingular(a, tol_det=tol, grid=grid).passed


def symbol_algebra(op: str, a, b=None):
    """Dispatcher over {multiply, add, inverse, transpose, determinant}."""
    if isinstance(a, PCSymbol):
        a = MatrixSymbol.scalar(a)
    if isinstance(b, PCSymbol):
        b = MatrixSymbol.scalar(b)
    if op == "multiply":
        return a.multiply(b)
    if op == "add":
        return a.add(b)
    if op == "inverse":
        return a.inverse()
    if op == "transpose":
        return a.transpose()
    if op == "determinant":
        return a.determinant()
    raise ValueError(f"unknown symbol operation {op!r}")
