"""Finite-section numerical engine on the unit circle.

Operators act in Fourier coordinates on the mode window -n..n, where the
analytic projection is an exact 0/1 diagonal.  Coefficient functions
enter through their (closed-form) Fourier coefficients; defect numbers
are estimated from rectangular sections that extend the row window so
that kernel vectors supported in the column window are measured exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import (
    DegenerateSymbolError,
    InsufficientTruncationError,
    NumericFailureError,
    UnsupportedEntryError,
)
from .symbols import ConstPiece, FuncPiece, MatrixSymbol, PCSymbol, TrigPiece

RANK_TOL = 1e-8
GAP_TOL = 1e-3
COLLAPSE_FLOOR = 1e-12
DEFAULT_SWEEP = (64, 128, 256)


@dataclass(frozen=True)
class FourierTruncation:
    """Mode window -n..n with block size N; dimension (2n+1)N."""

    n: int
    block: int = 1

    def __post_init__(self):
        if self.n < 8:
            raise ValueError("truncation half-bandwidth must be >= 8")
        if self.block < 1:
            raise ValueError("block size must be >= 1")

    @property
    def modes(self) -> np.ndarray:
        return np.arange(-self.n, self.n + 1)

    @property
    def dim(self) -> int:
        return (2 * self.n + 1) * self.block


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense finite section with its row/column mode windows."""

    matrix: np.ndarray
    rows_modes: np.ndarray
    cols_modes: np.ndarray
    block: int
    tag: str = ""


def riesz_matrices(trunc: FourierTruncation):
    """(P_n, Q_n, S_n): exact diagonal projections in Fourier coordinates."""
    diag = np.repeat((trunc.modes >= 0).astype(float), trunc.block)
    P = np.diag(diag)
    Q = np.eye(trunc.dim) - P
    S = P - Q
    return P, Q, S


# ---------------------------------------------------------------------
# multiplication operators
# ---------------------------------------------------------------------

def _mode_integral_vec(ms: np.ndarray, u0: float, u1: float) -> np.ndarray:
    out = np.empty(ms.shape, dtype=complex)
    zero = ms == 0
    out[zero] = u1 - u0
    nz = ~zero
    f = 2j * np.pi * ms[nz]
    out[nz] = (np.exp(f * u1) - np.exp(f * u0)) / f
    return out


def fourier_table(sym: PCSymbol, ks: np.ndarray) -> np.ndarray:
    """Fourier coefficients of a scalar symbol at all modes in ks."""
    ks = np.asarray(ks)
    total = np.zeros(ks.shape, dtype=complex)
    nb = len(sym.breaks)
    for i, piece in enumerate(sym.pieces):
        u0 = sym.breaks[i]
        u1 = sym.breaks[(i + 1) % nb] if i + 1 < nb else sym.breaks[0] + 1.0
        if isinstance(piece, ConstPiece):
            if piece.value_ != 0:
                total += piece.value_ * _mode_integral_vec(-ks, u0, u1)
        elif isinstance(piece, TrigPiece):
            for m, c in piece.coeffs.items():
                total += c * _mode_integral_vec(m - ks, u0, u1)
        else:
            nq = 512
            uu = u0 + (np.arange(nq) + 0.5) * (u1 - u0) / nq
            vals = piece.value(uu)
            phases = np.exp(-2j * np.pi * np.outer(ks, uu))
            total += phases @ vals * (u1 - u0) / nq
    return total


def multiplication_matrix(
    a: "MatrixSymbol | PCSymbol",
    trunc: FourierTruncation | None = None,
    rows_modes: np.ndarray | None = None,
    cols_modes: np.ndarray | None = None,
) -> OperatorMatrix:
    """Block-Toeplitz section of the multiplication operator."""
    if isinstance(a, PCSymbol):
        a = MatrixSymbol.scalar(a)
    if rows_modes is None:
        rows_modes = trunc.modes
    if cols_modes is None:
        cols_modes = trunc.modes
    R = np.asarray(rows_modes)
    C = np.asarray(cols_modes)
    N = a.N
    kmin = int(R.min() - C.max())
    kmax = int(R.max() - C.min())
    ks = np.arange(kmin, kmax + 1)
    kidx = R[:, None] - C[None, :] - kmin
    out = np.zeros((R.size * N, C.size * N), dtype=complex)
    view = out.reshape(R.size, N, C.size, N)
    for i in range(N):
        for j in range(N):
            tab = fourier_table(a.entries[i][j], ks)
            view[:, i, :, j] = tab[kidx]
    return OperatorMatrix(out, R, C, N, tag="mult")


def assemble(
    a: "MatrixSymbol | PCSymbol",
    b: "MatrixSymbol | PCSymbol",
    trunc: FourierTruncation | None = None,
    rows_modes: np.ndarray | None = None,
    cols_modes: np.ndarray | None = None,
) -> OperatorMatrix:
    """Section of aP + bQ: a-columns on modes >= 0, b-columns below."""
    if isinstance(a, PCSymbol):
        a = MatrixSymbol.scalar(a)
    if isinstance(b, PCSymbol):
        b = MatrixSymbol.scalar(b)
    if a.N != b.N:
        raise ValueError("coefficient sizes differ")
    Ma = multiplication_matrix(a, trunc, rows_modes, cols_modes)
    Mb = multiplication_matrix(b, trunc, rows_modes, cols_modes)
    C = Ma.cols_modes
    colmask = np.repeat(C >= 0, a.N)
    out = Mb.matrix.copy()
    out[:, colmask] = Ma.matrix[:, colmask]
    return OperatorMatrix(out, Ma.rows_modes, C, a.N, tag="aP+bQ")


# ---------------------------------------------------------------------
# mode vectors and the conjugation involution
# ---------------------------------------------------------------------

class ModeVector:
    """Fourier coefficients on a contiguous signed-mode support.

    coeffs has shape (L,) for scalars or (L, N) for block vectors; entry
    i belongs to mode m_min + i.
    """

    def __init__(self, m_min: int, coeffs: np.ndarray):
        self.m_min = int(m_min)
        self.coeffs = np.asarray(coeffs, dtype=complex)

    @staticmethod
    def delta(m: int, block: int = 1, component: int = 0) -> "ModeVector":
        c = np.zeros((1, block), dtype=complex) if block > 1 else np.zeros(1, dtype=complex)
        if block > 1:
            c[0, component] = 1.0
        else:
            c[0] = 1.0
        return ModeVector(m, c)

    @staticmethod
    def from_window(x: np.ndarray, n: int, block: int = 1) -> "ModeVector":
        x = np.asarray(x, dtype=complex)
        if block > 1:
            x = x.reshape(2 * n + 1, block)
        return ModeVector(-n, x)

    @property
    def m_max(self) -> int:
        return self.m_min + self.coeffs.shape[0] - 1

    @property
    def block(self) -> int:
        return 1 if self.coeffs.ndim == 1 else self.coeffs.shape[1]

    def to_window(self, n: int) -> np.ndarray:
        shape = (2 * n + 1,) + self.coeffs.shape[1:]
        out = np.zeros(shape, dtype=complex)
        for i in range(self.coeffs.shape[0]):
            m = self.m_min + i
            if -n <= m <= n:
                out[m + n] = self.coeffs[i]
        return out.reshape(-1) if self.coeffs.ndim > 1 else out

    def restrict(self, n: int) -> "ModeVector":
        lo = max(self.m_min, -n)
        hi = min(self.m_max, n)
        if hi < lo:
            return ModeVector(0, np.zeros((1,) + self.coeffs.shape[1:], dtype=complex))
        return ModeVector(lo, self.coeffs[lo - self.m_min : hi - self.m_min + 1])

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def scaled(self, alpha: complex) -> "ModeVector":
        return ModeVector(self.m_min, alpha * self.coeffs)

    def add(self, other: "ModeVector") -> "ModeVector":
        lo = min(self.m_min, other.m_min)
        hi = max(self.m_max, other.m_max)
        shape = (hi - lo + 1,) + self.coeffs.shape[1:]
        out = np.zeros(shape, dtype=complex)
        out[self.m_min - lo : self.m_min - lo + self.coeffs.shape[0]] += self.coeffs
        out[other.m_min - lo : other.m_min - lo + other.coeffs.shape[0]] += other.coeffs
        return ModeVector(lo, out)

    def inner(self, other: "ModeVector") -> complex:
        """Parseval inner product sum x_m conj(y_m)."""
        lo = max(self.m_min, other.m_min)
        hi = min(self.m_max, other.m_max)
        if hi < lo:
            return 0j
        xs = self.coeffs[lo - self.m_min : hi - self.m_min + 1]
        ys = other.coeffs[lo - other.m_min : hi - other.m_min + 1]
        return complex(np.sum(xs * np.conj(ys)))


def riesz_apply(kind: str, x: ModeVector) -> ModeVector:
    """Apply P, Q, S, or I to a mode vector (exact multiplier action)."""
    modes = np.arange(x.m_min, x.m_max + 1)
    if kind == "I":
        return ModeVector(x.m_min, x.coeffs.copy())
    if kind == "P":
        mask = modes >= 0
    elif kind == "Q":
        mask = modes < 0
    elif kind == "S":
        sign = np.where(modes >= 0, 1.0, -1.0)
        shaped = sign if x.coeffs.ndim == 1 else sign[:, None]
        return ModeVector(x.m_min, x.coeffs * shaped)
    else:
        raise UnsupportedEntryError(f"unknown projection kind {kind!r}")
    shaped = mask if x.coeffs.ndim == 1 else mask[:, None]
    return ModeVector(x.m_min, x.coeffs * shaped)


def h_involution_apply(x: ModeVector) -> ModeVector:
    """Antilinear conjugation (H phi)(t) = e^{-i Theta(t)} conj(phi(t)).

    On Fourier coefficients of the unit circle: y_j = -i conj(x_{-j-1}),
    so the support [m0, m1] maps to [-m1-1, -m0-1].  Applying twice
    returns the input exactly.
    """
    flipped = np.conj(x.coeffs[::-1])
    return ModeVector(-x.m_max - 1, -1j * flipped)


def convolve_apply(coeffs: dict, x: ModeVector) -> ModeVector:
    """Apply the multiplication operator with Fourier coefficients
    {mode: scalar or NxN matrix} to a mode vector."""
    items = sorted(coeffs.items())
    if not items:
        return ModeVector(0, np.zeros_like(x.coeffs[:1]))
    mmin = items[0][0]
    mmax = items[-1][0]
    lo = x.m_min + mmin
    hi = x.m_max + mmax
    shape = (hi - lo + 1,) + x.coeffs.shape[1:]
    out = np.zeros(shape, dtype=complex)
    for m, c in items:
        start = x.m_min + m - lo
        seg = out[start : start + x.coeffs.shape[0]]
        if np.ndim(c) == 0:
            seg += c * x.coeffs
        else:
            seg += x.coeffs @ np.asarray(c).T
    return ModeVector(lo, out)


# ---------------------------------------------------------------------
# principal-value quadrature
# ---------------------------------------------------------------------

def cauchy_pv(f, t: complex, M: int = 8192, K: int = 4) -> complex:
    """Principal-value quadrature of (1/pi i) int f(tau)/(tau-t) dtau on
    the unit circle.

    The grid is rotated so t is a node; the node at t and its K nearest
    neighbours on each side are excluded, the window radius is
    Richardson-extrapolated over K, 2K, 4K, and the residual first-order
    puncture error -h (f(t) + 2 t f'(t)) is added back in closed form.
    """
    t = complex(t)
    if abs(abs(t) - 1.0) > 1e-9:
        raise DegenerateSymbolError(f"point {t} is not on the unit circle")
    if M < 64 * K:
        raise NumericFailureError("quadrature grid too coarse for the window sweep")
    ut = math.atan2(t.imag, t.real) / (2.0 * math.pi)
    us = ut + np.arange(M) / M
    tau = np.exp(2j * np.pi * us)
    tau[0] = t  # exact node at the singularity
    vals = _evaluate_on_circle(f, us, tau)
    # spectral data for the correction term and a resolution check
    d = np.fft.fft(vals) / M  # d_k = c_m t^m for the signed mode m(k)
    modes = np.fft.fftfreq(M, d=1.0 / M).astype(int)
    peak = np.abs(d).max()
    if peak > 0 and np.abs(d[np.abs(modes) > M // 4]).max() > 1e-8 * peak:
        raise NumericFailureError(
            "function is not resolved by the quadrature grid (spectral tail)"
        )
    ft = complex(np.sum(d))
    fp = complex(np.sum(modes * d)) / t
    h = 1.0 / M
    idx = np.arange(M)
    dist = np.minimum(idx, M - idx)

    def punctured(k_ex: int) -> complex:
        mask = dist > k_ex
        return complex(
            (1.0 / (np.pi * 1j))
            * np.sum(vals[mask] / (tau[mask] - t) * 2j * np.pi * tau[mask])
            * h
        )

    base = (8 * punctured(K) - 6 * punctured(2 * K) + punctured(4 * K)) / 3.0
    return base + h * (ft + 2.0 * t * fp)


def _evaluate_on_circle(f, us: np.ndarray, tau: np.ndarray) -> np.ndarray:
    if isinstance(f, PCSymbol):
        return np.atleast_1d(f.value(us))
    if callable(f):
        return np.asarray(f(tau), dtype=complex)
    # SampledFunction on uniform circle nodes: trigonometric interpolation
    values = np.asarray(f.values, dtype=complex)
    params = np.asarray(f.params, dtype=float)
    n = params.size
    modes = np.fft.fftfreq(n, d=1.0 / n).astype(int)
    c = (np.fft.fft(values) / n) * np.exp(-2j * np.pi * modes * params[0])
    phases = np.exp(2j * np.pi * np.outer(us, modes))
    return phases @ c


# ---------------------------------------------------------------------
# adjoint identity
# ---------------------------------------------------------------------

def adjoint_residual(
    trunc: FourierTruncation, trials: int = 8, seed: int = 0
) -> float:
    """max |<S x, y> + <x, H S H y>| over random margin vectors,
    verifying that the adjoint of S is -H S H."""
    rng = np.random.default_rng(seed)
    n = trunc.n
    worst = 0.0
    for _ in range(trials):
        x = ModeVector(-(n - 1), rng.standard_normal(2 * n - 1) + 1j * rng.standard_normal(2 * n - 1))
        y = ModeVector(-(n - 1), rng.standard_normal(2 * n - 1) + 1j * rng.standard_normal(2 * n - 1))
        lhs = riesz_apply("S", x).inner(y)
        rhs = x.inner(h_involution_apply(riesz_apply("S", h_involution_apply(y))))
        denom = max(x.norm() * y.norm(), 1e-30)
        worst = max(worst, abs(lhs + rhs) / denom)
    return worst


# ---------------------------------------------------------------------
# spectral reports
# ---------------------------------------------------------------------

@dataclass(frozen=True)
class SweepEntry:
    n: int
    kernel: int
    cokernel: int
    sigma_max: float
    sigma_min: float
    ratio: float
    gap: float


@dataclass(frozen=True)
class SpectralReport:
    entries: tuple[SweepEntry, ...]
    kernel: int
    cokernel: int
    index_estimate: int
    stabilized: bool
    sigma_gap: float
    fredholm_evidence: bool
    nonfredholm_evidence: bool
    inconclusive: bool
    singular_values: np.ndarray = field(repr=False)
    winding_estimate: int | None = None

    def to_rows(self) -> list[tuple[int, int, float]]:
        """CSV rows (n, sigma_index, sigma_value) for the largest n."""
        n = self.entries[-1].n
        return [
            (n, i, float(s)) for i, s in enumerate(self.singular_values)
        ]


def pair_section_builder(
    a: "MatrixSymbol | PCSymbol", b: "MatrixSymbol | PCSymbol"
) -> Callable[[int, int], tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Square / kernel / cokernel sections of aP+bQ at window n, margin d."""

    def build(n: int, d: int):
        win = np.arange(-n, n + 1)
        ext = np.arange(-(n + d), n + d + 1)
        sq = assemble(a, b, rows_modes=win, cols_modes=win).matrix
        K = assemble(a, b, rows_modes=ext, cols_modes=win).matrix
        W = assemble(a, b, rows_modes=win, cols_modes=ext).matrix
        return sq, K, W

    return build


def spectral_report(
    builder,
    sweep: Sequence[int] = DEFAULT_SWEEP,
    rank_tol: float = RANK_TOL,
    gap_tol: float = GAP_TOL,
    margin: Callable[[int], int] | None = None,
    winding_estimate: int | None = None,
) -> SpectralReport:
    """Defect-number estimation across a truncation sweep.

    builder(n, d) must return the square section on modes -n..n, the
    kernel section (rows extended by d), and the cokernel section
    (columns extended by d).
    """
    if len(sweep) < 3:
        raise ValueError("sweep needs at least 3 truncation sizes")
    sweep = sorted(sweep)
    entries = []
    last_sv = None
    for n in sweep:
        d = margin(n) if margin is not None else n
        sq, K, W = builder(n, d)
        svq = np.linalg.svd(sq, compute_uv=False)
        svK = np.linalg.svd(K, compute_uv=False)
        svW = np.linalg.svd(W, compute_uv=False)
        ker = int((svK < rank_tol * svK[0]).sum())
        cok = int((svW < rank_tol * svW[0]).sum())
        ratio = float(svq[-1] / svq[0])
        drop = ker + cok
        retained = svq[: svq.size - drop] if drop else svq
        gap = float(retained[-1] / svq[0]) if retained.size else 0.0
        entries.append(
            SweepEntry(n, ker, cok, float(svq[0]), float(svq[-1]), ratio, gap)
        )
        last_sv = svq
    stabilized = (
        entries[-1].kernel == entries[-2].kernel
        and entries[-1].cokernel == entries[-2].cokernel
    )
    gap_last = entries[-1].gap
    fredholm = stabilized and gap_last >= gap_tol
    decays = all(
        (e2.ratio <= e1.ratio / 10.0) or (e2.ratio <= COLLAPSE_FLOOR)
        for e1, e2 in zip(entries, entries[1:])
    )
    nonfredholm = (not fredholm) and decays
    return SpectralReport(
        entries=tuple(entries),
        kernel=entries[-1].kernel,
        cokernel=entries[-1].cokernel,
        index_estimate=entries[-1].kernel - entries[-1].cokernel,
        stabilized=stabilized,
        sigma_gap=gap_last,
        fredholm_evidence=fredholm,
        nonfredholm_evidence=nonfredholm,
        inconclusive=not (fredholm or nonfredholm),
        singular_values=last_sv,
        winding_estimate=winding_estimate,
    )


def winding_number(c: PCSymbol, samples: int = 4096) -> int:
    """Accumulated argument of c along the circle divided by 2 pi."""
    u = (np.arange(samples) + 0.5) / samples
    vals = np.atleast_1d(c.value(u))
    mags = np.abs(vals)
    if mags.min() < 1e-8 * max(mags.max(), 1e-30):
        raise DegenerateSymbolError("symbol passes too close to zero for winding")
    closed = np.concatenate([vals, vals[:1]])
    total = float(np.sum(np.angle(closed[1:] / closed[:-1]))) / (2.0 * np.pi)
    w = round(total)
    return int(w)


# ---------------------------------------------------------------------
# operator expressions and identity residuals
# ---------------------------------------------------------------------

class OpExpr:
    """Formal sum of compositions of the atoms P, Q, I, S, H, and
    multiplication operators given by Fourier coefficient dictionaries.

    terms is a list of atom lists; each atom list is applied right to
    left.  H is antilinear, so composition order matters and the
    expression is never materialized as a matrix when H occurs.
    """

    def __init__(self, terms: list[list]):
        self.terms = terms

    # -- constructors ------------------------------------------------
    @staticmethod
    def atom(kind: str, coeffs: dict | None = None) -> "OpExpr":
        if kind in ("P", "Q", "I", "S", "H"):
            return OpExpr([[(kind, None)]])
        if kind == "M":
            return OpExpr([[("M", dict(coeffs))]])
        raise UnsupportedEntryError(f"unknown atom {kind!r}")

    @staticmethod
    def P() -> "OpExpr":
        return OpExpr.atom("P")

    @staticmethod
    def Q() -> "OpExpr":
        return OpExpr.atom("Q")

    @staticmethod
    def I() -> "OpExpr":
        return OpExpr.atom("I")

    @staticmethod
    def H() -> "OpExpr":
        return OpExpr.atom("H")

    @staticmethod
    def mult(coeffs: dict) -> "OpExpr":
        return OpExpr.atom("M", coeffs)

    @staticmethod
    def from_symbol(a: PCSymbol, kmax: int) -> "OpExpr":
        ks = np.arange(-kmax, kmax + 1)
        tab = fourier_table(a, ks)
        return OpExpr.mult({int(k): complex(c) for k, c in zip(ks, tab) if c != 0})

    # -- algebra -------------------------------------------------------
    def __mul__(self, other: "OpExpr") -> "OpExpr":
        return OpExpr([t1 + t2 for t1 in self.terms for t2 in other.terms])

    def __add__(self, other: "OpExpr") -> "OpExpr":
        return OpExpr(self.terms + other.terms)

    def __sub__(self, other: "OpExpr") -> "OpExpr":
        return self + other.scale(-1.0)

    def scale(self, alpha: complex) -> "OpExpr":
        return OpExpr([[("M", {0: alpha})] + t for t in self.terms])

    # -- application -----------------------------------------------------
    def growth(self) -> int:
        """Worst-case support growth in modes over all terms."""
        worst = 0
        for term in self.terms:
            g = 0
            for kind, data in term:
                if kind == "M":
                    g += max(abs(int(m)) for m in data) if data else 0
            worst = max(worst, g)
        return worst

    def apply(self, x: ModeVector, window: int | None = None) -> ModeVector:
        """Apply the expression; with a window, every intermediate is
        truncated to modes |m| <= window (finite-section semantics)."""
        acc: ModeVector | None = None
        for term in self.terms:
            y = x
            for kind, data in reversed(term):
                if kind == "M":
                    y = convolve_apply(data, y)
                elif kind == "H":
                    y = h_involution_apply(y)
                else:
                    y = riesz_apply(kind, y)
                if window is not None:
                    y = y.restrict(window)
            acc = y if acc is None else acc.add(y)
        return acc


def identity_residual(
    lhs: OpExpr,
    rhs: OpExpr,
    trunc: FourierTruncation,
    trials: int = 10,
    seed: int = 0,
) -> float:
    """max relative discrepancy of the two expressions on random vectors
    whose support leaves enough margin that every intermediate product
    stays inside the window."""
    n = trunc.n
    margin = max(lhs.growth(), rhs.growth())
    half = n - margin
    if half < 1:
        raise InsufficientTruncationError(
            f"window n={n} too small for coefficient growth {margin}"
        )
    rng = np.random.default_rng(seed)
    worst = 0.0
    size = 2 * half + 1
    for _ in range(trials):
        x = ModeVector(
            -half, rng.standard_normal(size) + 1j * rng.standard_normal(size)
        )
        diff = lhs.apply(x, window=n).add(rhs.apply(x, window=n).scaled(-1.0))
        worst = max(worst, diff.norm() / x.norm())
    return worst


def operator_section(expr: OpExpr, n: int) -> np.ndarray:
    """Dense finite section of a (linear) expression on modes -n..n."""
    for term in expr.terms:
        if any(kind == "H" for kind, _ in term):
            raise UnsupportedEntryError(
                "antilinear expressions have no matrix section"
            )
    dim = 2 * n + 1
    modes = np.arange(-n, n + 1)

    def atom_matrix(kind: str, coeffs) -> np.ndarray:
        if kind == "I":
            return np.eye(dim, dtype=complex)
        if kind == "P":
            return np.diag((modes >= 0).astype(complex))
        if kind == "Q":
            return np.diag((modes < 0).astype(complex))
        if kind == "S":
            return np.diag(np.where(modes >= 0, 1.0, -1.0).astype(complex))
        # multiplication: Toeplitz in the mode difference
        table = np.zeros(4 * n + 1, dtype=complex)
        for m, c in coeffs.items():
            if isinstance(c, np.ndarray):
                raise UnsupportedEntryError(
                    "matrix-valued coefficients have no scalar section"
                )
            if abs(m) <= 2 * n:
                table[m + 2 * n] = c
        diff = modes[:, None] - modes[None, :]
        return table[diff + 2 * n]

    out = np.zeros((dim, dim), dtype=complex)
    for term in expr.terms:
        mat = None
        for kind, coeffs in term:
            f = atom_matrix(kind, coeffs)
            mat = f if mat is None else mat @ f
        out += mat
    return out


def compactness_profile(expr: OpExpr, n: int) -> dict:
    """Singular-value decay of the truncated expression: sigma list and
    the ratio sigma_20 / sigma_1 used as a compactness discriminator."""
    mat = operator_section(expr, n)
    sv = np.linalg.svd(mat, compute_uv=False)
    ratio = float(sv[19] / sv[0]) if sv.size >= 20 and sv[0] > 0 else 0.0
    return {"singular_values": sv, "ratio_20_1": ratio}


# ---------------------------------------------------------------------
# random invertible coefficient generators
# ---------------------------------------------------------------------

def conv_coeffs(d1: dict, d2: dict, cutoff: int | None = None) -> dict:
    """Convolution (pointwise product) of Fourier coefficient dicts."""
    out: dict[int, complex] = {}
    for m1, c1 in d1.items():
        for m2, c2 in d2.items():
            m = m1 + m2
            if cutoff is not None and abs(m) > cutoff:
                continue
            out[m] = out.get(m, 0j) + c1 * c2
    return {m: c for m, c in out.items() if abs(c) > 0}


def random_invertible_coeffs(
    rng: np.random.Generator,
    n_outer: int = 1,
    n_inner: int = 1,
    cutoff: int = 48,
) -> tuple[dict, dict]:
    """A trig-truncated invertible symbol and its inverse.

    The symbol is a product of elementary factors (1 - tau/w) with
    |w| >= 2 and (1 - v/tau) with |v| <= 1/2, so it has no zeros near
    the unit circle, winding number zero, and inverse coefficients that
    decay at least geometrically with ratio 1/2; tails beyond the cutoff
    are below 1e-12.
    """
    c: dict[int, complex] = {0: 1.0 + 0j}
    cinv: dict[int, complex] = {0: 1.0 + 0j}
    for _ in range(n_outer):
        w = (2.0 + rng.uniform(0, 2)) * np.exp(2j * np.pi * rng.uniform())
        c = conv_coeffs(c, {0: 1.0, 1: -1.0 / w}, cutoff)
        geo = {m: (1.0 / w) ** m for m in range(cutoff + 1)}
        cinv = conv_coeffs(cinv, geo, cutoff)
    for _ in range(n_inner):
        v = rng.uniform(0.1, 0.5) * np.exp(2j * np.pi * rng.uniform())
        c = conv_coeffs(c, {0: 1.0, -1: -v}, cutoff)
        geo = {-m: v**m for m in range(cutoff + 1)}
        cinv = conv_coeffs(cinv, geo, cutoff)
    scale = rng.uniform(0.5, 2.0) * np.exp(2j * np.pi * rng.uniform())
    c = {m: scale * x for m, x in c.items()}
    cinv = {m: x / scale for m, x in cinv.items()}
    # drop negligible tails so operator expressions stay narrow-banded
    tol = 1e-14 * max(abs(x) for x in c.values())
    c = {m: x for m, x in c.items() if abs(x) > tol}
    cinv = {m: x for m, x in cinv.items() if abs(x) > 1e-14}
    return c, cinv
