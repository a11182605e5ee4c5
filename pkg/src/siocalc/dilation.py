"""Linear dilation: reduces a sum of products of operators
a_ij P + b_ij Q to a single operator aP + bQ with block coefficients of
size D = N(k(r+1)+1), and verifies the defining block identity.

Block layout (in units of N): the first m = k(r+1) block rows/columns
carry Z (identity diagonal, minus the factor operators on the block
superdiagonal), the last block column carries X (k copies of -I at the
bottom), the last block row carries Y (k copies of I at the front).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .circle_engine import (
    ModeVector,
    convolve_apply,
    fourier_table,
    riesz_apply,
)
from .errors import InsufficientTruncationError, UnsupportedEntryError
from .symbols import ConstPiece, MatrixSymbol, PCSymbol, TrigPiece


# ---------------------------------------------------------------------
# algebra elements
# ---------------------------------------------------------------------

@dataclass(frozen=True)
class AlgebraElement:
    """Sum over i <= k of products over j <= r of (a_ij P + b_ij Q).

    Products shorter than r are padded on the right with exact identity
    factors, so terms is always rectangular k x r.
    """

    N: int
    terms: tuple[tuple[tuple[MatrixSymbol, MatrixSymbol], ...], ...]

    @staticmethod
    def build(
        N: int,
        terms: Sequence[Sequence[tuple[MatrixSymbol, MatrixSymbol]]],
    ) -> "AlgebraElement":
        if not terms or any(not t for t in terms):
            raise ValueError("need k >= 1 products with r >= 1 factors each")
        r = max(len(t) for t in terms)
        ident = MatrixSymbol.identity(N)
        padded = []
        for t in terms:
            t = list(t)
            for a, b in t:
                if a.N != N or b.N != N:
                    raise ValueError("coefficient size mismatch")
            t.extend((ident, ident) for _ in range(r - len(t)))
            padded.append(tuple(t))
        return AlgebraElement(N, tuple(padded))

    @staticmethod
    def identity(N: int = 1) -> "AlgebraElement":
        ident = MatrixSymbol.identity(N)
        return AlgebraElement.build(N, [[(ident, ident)]])

    @property
    def k(self) -> int:
        return len(self.terms)

    @property
    def r(self) -> int:
        return len(self.terms[0])

    @property
    def D(self) -> int:
        return self.N * (self.k * (self.r + 1) + 1)


# ---------------------------------------------------------------------
# block construction
# ---------------------------------------------------------------------

@dataclass(frozen=True)
class PQEntry:
    """One operator entry of the form alpha P + beta Q + gamma I."""

    alpha: PCSymbol
    beta: PCSymbol
    gamma: PCSymbol

    @staticmethod
    def zero() -> "PQEntry":
        z = PCSymbol.constant(0.0)
        return PQEntry(z, z, z)

    @staticmethod
    def scalar_identity(c: complex = 1.0) -> "PQEntry":
        z = PCSymbol.constant(0.0)
        return PQEntry(z, z, PCSymbol.constant(c))

    @staticmethod
    def pair(alpha: PCSymbol, beta: PCSymbol) -> "PQEntry":
        return PQEntry(alpha, beta, PCSymbol.constant(0.0))


@dataclass(frozen=True)
class DilationBlocks:
    """The blocks of the dilation identity, at scalar-entry granularity.

    Z, X, Y are grids of PQEntry (affine in P, Q, I); W and the factor
    products are genuinely higher order and are kept as factor lists
    (see element application below).
    """

    m: int  # k(r+1) blocks of size N
    N: int
    Z: list  # (mN) x (mN) grid of PQEntry
    X: list  # (mN) x N grid
    Y: list  # N x (mN) grid
    W_factors: list  # per block column: list of (a, b) factor pairs


def build_blocks(A: AlgebraElement) -> DilationBlocks:
    k, r, N = A.k, A.r, A.N
    m = k * (r + 1)
    Z = [[PQEntry.zero() for _ in range(m * N)] for _ in range(m * N)]
    for s in range(m * N):
        Z[s][s] = PQEntry.scalar_identity(1.0)
    # superdiagonal: block (l-1)k+i -> column lk+i carries -(a_il P + b_il Q)
    for l in range(1, r + 1):
        for i in range(k):
            a, b = A.terms[i][l - 1]
            bi, bj = ((l - 1) * k + i) * N, (l * k + i) * N
            for rr in range(N):
                for cc in range(N):
                    Z[bi + rr][bj + cc] = PQEntry.pair(
                        a.entries[rr][cc].scale(-1.0),
                        b.entries[rr][cc].scale(-1.0),
                    )
    X = [[PQEntry.zero() for _ in range(N)] for _ in range(m * N)]
    for i in range(k):
        base = (r * k + i) * N
        for cc in range(N):
            X[base + cc][cc] = PQEntry.scalar_identity(-1.0)
    Y = [[PQEntry.zero() for _ in range(m * N)] for _ in range(N)]
    for i in range(k):
        base = i * N
        for cc in range(N):
            Y[cc][base + cc] = PQEntry.scalar_identity(1.0)
    # W block column lk+i holds the left product A_i1 ... A_il (l=0: I)
    W_factors = []
    for l in range(r + 1):
        for i in range(k):
            W_factors.append(list(A.terms[i][:l]))
    return DilationBlocks(m, N, Z, X, Y, W_factors)


def flatten(grid: Sequence[Sequence[PQEntry]]) -> tuple[MatrixSymbol, MatrixSymbol]:
    """Entrywise a = alpha + gamma, b = beta + gamma (using I = P + Q)."""
    a_rows, b_rows = [], []
    for row in grid:
        a_row, b_row = [], []
        for e in row:
            if not isinstance(e, PQEntry):
                raise UnsupportedEntryError(
                    f"entry {e!r} is not affine in P, Q, I"
                )
            a_row.append(e.alpha + e.gamma)
            b_row.append(e.beta + e.gamma)
        a_rows.append(a_row)
        b_rows.append(b_row)
    return MatrixSymbol(a_rows), MatrixSymbol(b_rows)


@dataclass(frozen=True)
class DilationResult:
    a: MatrixSymbol
    b: MatrixSymbol
    D: int
    layout: dict = field(default_factory=dict)


def dilate(A: AlgebraElement) -> DilationResult:
    """Flattened right-hand side [[Z, X], [Y, 0]] of the dilation identity."""
    blocks = build_blocks(A)
    mN = blocks.m * blocks.N
    N = blocks.N
    D = mN + N
    grid = [[PQEntry.zero() for _ in range(D)] for _ in range(D)]
    for i in range(mN):
        for j in range(mN):
            grid[i][j] = blocks.Z[i][j]
        for j in range(N):
            grid[i][mN + j] = blocks.X[i][j]
    for i in range(N):
        for j in range(mN):
            grid[mN + i][j] = blocks.Y[i][j]
    a, b = flatten(grid)
    assert D == A.D
    layout = {
        "k": A.k,
        "r": A.r,
        "N": A.N,
        "z_span": (0, mN),
        "x_col": (0, mN, mN, D),
        "y_row": (mN, D, 0, mN),
    }
    return DilationResult(a, b, D, layout)


# ---------------------------------------------------------------------
# identity verification (finite sections, mode-margin exact)
# ---------------------------------------------------------------------

def _coeff_dict(sym: MatrixSymbol) -> tuple[dict, int]:
    """{mode: NxN array} for a matrix symbol whose entries are global
    constant/trig pieces (banded multiplication operators)."""
    N = sym.N
    degree = 0
    for row in sym.entries:
        for e in row:
            if len(e.pieces) != 1 or not isinstance(
                e.pieces[0], (ConstPiece, TrigPiece)
            ):
                raise UnsupportedEntryError(
                    "identity verification needs global trig-polynomial "
                    "coefficients"
                )
            if isinstance(e.pieces[0], TrigPiece):
                degree = max(degree, e.pieces[0].degree)
    ks = np.arange(-degree, degree + 1)
    out: dict[int, np.ndarray] = {}
    for i in range(N):
        for j in range(N):
            tab = fourier_table(sym.entries[i][j], ks)
            for kk, c in zip(ks, tab):
                if c != 0:
                    out.setdefault(int(kk), np.zeros((N, N), complex))[i, j] = c
    return out, degree


class _Factor:
    """One operator factor a P + b Q acting on block-N mode vectors."""

    def __init__(self, a: MatrixSymbol, b: MatrixSymbol):
        self.ca, self.da = _coeff_dict(a)
        self.cb, self.db = _coeff_dict(b)
        self.degree = max(self.da, self.db)

    def apply(self, x: ModeVector) -> ModeVector:
        yp = convolve_apply(self.ca, riesz_apply("P", x))
        yq = convolve_apply(self.cb, riesz_apply("Q", x))
        return yp.add(yq)


def _zero_block_vec(N: int) -> ModeVector:
    return ModeVector(0, np.zeros((1, N), dtype=complex))


def _apply_entry(entry: PQEntry, x: ModeVector) -> ModeVector:
    # scalar entries act on scalar mode vectors
    out = _zero_scalar()
    for sym, kind in ((entry.alpha, "P"), (entry.beta, "Q"), (entry.gamma, "I")):
        coeffs, _ = _coeff_dict(MatrixSymbol.scalar(sym))
        if not coeffs:
            continue
        flat = {m: c[0, 0] for m, c in coeffs.items()}
        out = out.add(convolve_apply(flat, riesz_apply(kind, x)))
    return out


def _zero_scalar() -> ModeVector:
    return ModeVector(0, np.zeros(1, dtype=complex))


def verify_dilation_identity(
    A: AlgebraElement, n: int, trials: int = 5, seed: int = 0
) -> float:
    """Residual of the block identity

        [[I,0],[W,I]] [[I,0],[0,A]] [[Z,X],[0,I]]  =  [[Z,X],[Y,0]]

    evaluated on random vectors whose Fourier support leaves enough
    margin that every intermediate product stays inside the window."""
    k, r, N = A.k, A.r, A.N
    blocks = build_blocks(A)
    factors = [[_Factor(a, b) for a, b in term] for term in A.terms]
    d = max((f.degree for term in factors for f in term), default=0)
    if n < 4 * max(d, 1) * (r + 1):
        raise InsufficientTruncationError(
            f"window n={n} below the required margin 4*d*(r+1)={4*max(d,1)*(r+1)}"
        )
    half = n - 2 * d * (r + 1)
    m = blocks.m
    mN = m * N
    rng = np.random.default_rng(seed)

    def apply_affine_grid(grid, xs, n_rows):
        """grid of PQEntry (scalar granularity) applied to scalar vectors."""
        out = []
        for i in range(n_rows):
            acc = _zero_scalar()
            for j, xj in enumerate(xs):
                e = grid[i][j]
                acc = acc.add(_apply_entry(e, xj))
            out.append(acc)
        return out

    def apply_product(term_factors, x_block: ModeVector) -> ModeVector:
        y = x_block
        for f in reversed(term_factors):
            y = f.apply(y)
        return y

    def block_of(xs_scalar, b):
        """Collect scalar components b*N..b*N+N-1 into one block vector."""
        comps = xs_scalar[b * N : (b + 1) * N]
        lo = min(c.m_min for c in comps)
        hi = max(c.m_max for c in comps)
        out = np.zeros((hi - lo + 1, N), dtype=complex)
        for cc, c in enumerate(comps):
            out[c.m_min - lo : c.m_min - lo + c.coeffs.shape[0], cc] += c.coeffs
        return ModeVector(lo, out)

    def scatter_block(y_block: ModeVector):
        return [
            ModeVector(y_block.m_min, y_block.coeffs[:, cc].copy())
            for cc in range(N)
        ]

    worst = 0.0
    size = 2 * half + 1
    for _ in range(trials):
        xs = [
            ModeVector(
                -half,
                rng.standard_normal(size) + 1j * rng.standard_normal(size),
            )
            for _ in range(mN + N)
        ]
        norm_x = float(np.sqrt(sum(x.norm() ** 2 for x in xs)))
        # right-hand side [[Z, X],[Y, 0]]
        top_rhs = apply_affine_grid(
            [row[:mN] for row in blocks.Z], xs[:mN], mN
        )
        x_contrib = apply_affine_grid(blocks.X, xs[mN:], mN)
        top_rhs = [a.add(bv) for a, bv in zip(top_rhs, x_contrib)]
        bot_rhs = apply_affine_grid(blocks.Y, xs[:mN], N)
        # left-hand side, factor by factor (right to left)
        # step 1: [[Z, X],[0, I]]
        top = [a.add(bv) for a, bv in zip(
            apply_affine_grid([row[:mN] for row in blocks.Z], xs[:mN], mN),
            apply_affine_grid(blocks.X, xs[mN:], mN),
        )]
        bot = list(xs[mN:])
        # step 2: [[I, 0],[0, A]]
        bot_block = block_of(bot, 0)
        acc = _zero_block_vec(N)
        for term in factors:
            acc = acc.add(apply_product(term, bot_block))
        bot = scatter_block(acc)
        # step 3: [[I, 0],[W, I]]
        w_contrib = [_zero_scalar() for _ in range(N)]
        for bcol, term_factors in enumerate(blocks.W_factors):
            xb = block_of(top, bcol)
            yb = apply_product(
                [_Factor(a, b) for a, b in term_factors], xb
            ) if term_factors else xb
            parts = scatter_block(yb)
            w_contrib = [w.add(p) for w, p in zip(w_contrib, parts)]
        bot = [b.add(w) for b, w in zip(bot, w_contrib)]
        # compare
        res = 0.0
        for lhs_v, rhs_v in zip(top + bot, top_rhs + bot_rhs):
            res += lhs_v.add(rhs_v.scaled(-1.0)).norm() ** 2
        worst = max(worst, float(np.sqrt(res)) / norm_x)
    return worst
