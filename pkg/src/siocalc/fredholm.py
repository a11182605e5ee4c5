"""Fredholm classification of aP + bQ.

Scalar coefficients are decided by the jump criterion: at each jump (and
each weight point) the number

    v = -arg(zeta)/(2 pi) + delta(t) log|zeta| / (2 pi) + 1/p(t) + lambda(t),
    zeta = a(t-0)/a(t+0),

must avoid the integers.  Matrix coefficients on the engine space (unit
circle, p = 2, no weight) are decided by the finite-section certificate.
There is no third verdict: a semi-Fredholm operator of this form is
automatically Fredholm, so near-integer values fail safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circle_engine import (
    DEFAULT_SWEEP,
    SpectralReport,
    assemble,
    pair_section_builder,
    spectral_report,
)
from .errors import (
    DegenerateSymbolError,
    HypothesisViolatedError,
    NumericFailureError,
)
from .geometry import UNIT_CIRCLE, SpaceContext, s_boundedness
from .symbols import (
    ConstPiece,
    MatrixSymbol,
    PCSymbol,
    TrigPiece,
    essential_invertibility,
    is_nonsingular,
    jump_set,
)

#: margin below which "distance to the integers" is treated as zero;
#: the criterion is an open condition, so ties fail safe
NEAR_BOUNDARY = 1e-9

LIMIT_TOL = 1e-12


@dataclass(frozen=True)
class CriterionValue:
    point: complex
    param: float
    zeta: complex
    v: float
    distance_to_integers: float
    delta: float
    p: float
    lam: float


@dataclass(frozen=True)
class Classification:
    verdict: str  # "Fredholm" | "NotSemiFredholm"
    reasons: tuple[str, ...]
    criterion_table: tuple[CriterionValue, ...]
    numeric_evidence: SpectralReport | None = None
    boundary_warnings: tuple[str, ...] = ()

    @property
    def is_fredholm(self) -> bool:
        return self.verdict == "Fredholm"


def criterion_value(a: PCSymbol, t: complex, ctx: SpaceContext) -> CriterionValue:
    """Evaluate the jump criterion at one curve point, with the
    principal argument branch arg in (-pi, pi]."""
    u = ctx.curve.param_of(t)
    left, right = a.one_sided_limits(u)
    if abs(left) <= LIMIT_TOL or abs(right) <= LIMIT_TOL:
        raise DegenerateSymbolError(
            f"one-sided limit vanishes at parameter {u}: ({left}, {right})"
        )
    zeta = left / right
    delta = ctx.delta_at_point(t)
    p = ctx.p_at_point(t)
    lam = ctx.lambda_at_point(t)
    arg = math.atan2(zeta.imag, zeta.real)
    if arg <= -math.pi:  # normalize to (-pi, pi]
        arg = math.pi
    v = -arg / (2.0 * math.pi) + delta * math.log(abs(zeta)) / (2.0 * math.pi)
    v += 1.0 / p + lam
    dist = abs(v - round(v))
    return CriterionValue(complex(t), u, zeta, v, dist, delta, p, lam)


def _criterion_points(a: PCSymbol, ctx: SpaceContext) -> list[float]:
    """Curve parameters where the criterion must be evaluated: jumps of
    the coefficient plus all weight points."""
    params = list(jump_set(a))
    for t_k, _ in ctx.weight.marked:
        u = ctx.curve.param_of(t_k)
        if all(abs(u - q) > 1e-12 and abs(abs(u - q) - 1.0) > 1e-12 for q in params):
            params.append(u)
    return sorted(params)


def _criterion_table(a: PCSymbol, ctx: SpaceContext) -> tuple[CriterionValue, ...]:
    return tuple(
        criterion_value(a, complex(np.atleast_1d(ctx.curve.point(u))[0]), ctx)
        for u in _criterion_points(a, ctx)
    )


def _require_bounded(ctx: SpaceContext) -> None:
    decision = s_boundedness(ctx)
    if not decision.bounded:
        raise HypothesisViolatedError(
            "the singular integral operator is unbounded on this space; "
            "no Fredholm criterion applies",
            decision,
        )


def classify_scalar(a: PCSymbol, ctx: SpaceContext) -> Classification:
    """Fredholm dichotomy for aP + Q with a scalar coefficient."""
    _require_bounded(ctx)
    report = is_nonsingular(MatrixSymbol.scalar(a))
    if not report.passed:
        return Classification(
            "NotSemiFredholm",
            (
                "symbol-degenerate: coefficient vanishes near parameters "
                f"{[round(w, 6) for w in report.witnesses[:3]]}",
            ),
            (),
        )
    table = _criterion_table(a, ctx)
    reasons = []
    warnings = []
    for row in table:
        if row.distance_to_integers <= NEAR_BOUNDARY:
            reasons.append(
                f"criterion-integer at parameter {row.param:.6g} "
                f"(v = {row.v:.12g})"
            )
            if row.distance_to_integers > 0.0:
                warnings.append(
                    f"near-boundary margin {row.distance_to_integers:.3e} at "
                    f"parameter {row.param:.6g}; classified not semi-Fredholm "
                    "because the criterion is an open condition"
                )
    verdict = "NotSemiFredholm" if reasons else "Fredholm"
    return Classification(verdict, tuple(reasons), table, None, tuple(warnings))


def closed_range_scalar(a: PCSymbol, ctx: SpaceContext) -> bool:
    """Closed-range test for aP + Q: the image is closed exactly when
    the jump criterion holds at every point, which coincides with the
    Fredholm verdict.  Kept as an independent decision path."""
    _require_bounded(ctx)
    report = is_nonsingular(MatrixSymbol.scalar(a))
    if not report.passed:
        raise DegenerateSymbolError(
            "closed-range test needs nonvanishing one-sided limits"
        )
    for u in _criterion_points(a, ctx):
        t = complex(np.atleast_1d(ctx.curve.point(u))[0])
        row = criterion_value(a, t, ctx)
        if row.distance_to_integers <= NEAR_BOUNDARY:
            return False
    return True


# ---------------------------------------------------------------------
# matrix pairs and algebra elements
# ---------------------------------------------------------------------

def _is_engine_context(ctx: SpaceContext) -> bool:
    c = ctx.curve
    return (
        c.family == UNIT_CIRCLE
        and abs(c.radius - 1.0) < 1e-12
        and abs(c.center) < 1e-12
        and not ctx.weight.marked
        and abs(ctx.exponent.p_min - 2.0) < 1e-12
        and abs(ctx.exponent.p_max - 2.0) < 1e-12
    )


def _banded_degree(a: MatrixSymbol) -> int | None:
    """Trig degree when every entry is one global smooth piece, else None."""
    deg = 0
    for row in a.entries:
        for e in row:
            if len(e.pieces) != 1:
                return None
            piece = e.pieces[0]
            if isinstance(piece, TrigPiece):
                deg = max(deg, piece.degree)
            elif not isinstance(piece, ConstPiece):
                return None
    return deg


def _default_sweep(N: int) -> tuple[int, ...]:
    budget = 1100  # target top dimension (2n+1)N for the SVD sweep
    n_top = min(256, max(16, (budget // N - 1) // 2))
    if n_top >= 256:
        return DEFAULT_SWEEP
    return tuple(sorted({max(8, n_top // 4), max(10, n_top // 2), n_top}))


def _margin_fn(a: MatrixSymbol, b: MatrixSymbol):
    da, db = _banded_degree(a), _banded_degree(b)
    if da is None or db is None:
        return lambda n: n  # dense coefficients: extend by a full window
    d = max(8, 2 * max(da, db))
    return lambda n: min(n, d)


def _numeric_verdict(report: SpectralReport) -> Classification:
    if report.fredholm_evidence:
        return Classification("Fredholm", (), (), report)
    if report.nonfredholm_evidence:
        return Classification(
            "NotSemiFredholm",
            ("numeric-certificate: section minimum singular value collapses",),
            (),
            report,
        )
    raise NumericFailureError(
        "finite-section sweep did not stabilize; classification inconclusive",
        report,
    )


def classify_pair(
    a: MatrixSymbol,
    b: MatrixSymbol,
    ctx: SpaceContext,
    truncations: tuple[int, ...] | None = None,
) -> Classification:
    """Fredholm dichotomy for aP + bQ with matrix coefficients."""
    if a.N != b.N:
        raise ValueError("coefficient sizes differ")
    _require_bounded(ctx)
    bad = []
    if not essential_invertibility(a):
        bad.append("a")
    if not essential_invertibility(b):
        bad.append("b")
    if bad:
        return Classification(
            "NotSemiFredholm",
            tuple(
                f"symbol-degenerate: coefficient {name} is not essentially "
                "invertible" for name in bad
            ),
            (),
        )
    if a.N == 1:
        # aP + bQ = b (b^-1 a P + Q) modulo the invertible factor bI
        c = (b.inverse().multiply(a)).entries[0][0]
        return classify_scalar(c, ctx)
    if not _is_engine_context(ctx):
        raise HypothesisViolatedError(
            "matrix coefficients are classified numerically and only on the "
            "unit circle with constant exponent 2 and no weight"
        )
    sweep = truncations or _default_sweep(a.N)
    report = spectral_report(
        pair_section_builder(a, b), sweep=sweep, margin=_margin_fn(a, b)
    )
    return _numeric_verdict(report)


def classify_algebra_element(A, ctx: SpaceContext, truncations=None) -> Classification:
    """Classify a sum of products by dilating it to a single pair."""
    from .dilation import dilate

    result = dilate(A)
    return classify_pair(result.a, result.b, ctx, truncations)


def element_section_builder(A):
    """Square / kernel / cokernel sections of an algebra element,
    computed from products of generously windowed factor sections."""

    def build(n: int, d: int):
        ext = np.arange(-(n + d), n + d + 1)
        total = None
        for term in A.terms:
            mat = None
            for a_ij, b_ij in term:
                f = assemble(a_ij, b_ij, rows_modes=ext, cols_modes=ext).matrix
                mat = f if mat is None else mat @ f
            total = mat if total is None else total + mat
        N = A.N
        dim_ext = ext.size * N
        lo = d * N
        hi = dim_ext - d * N
        sq = total[lo:hi, lo:hi]
        K = total[:, lo:hi]
        W = total[lo:hi, :]
        return sq, K, W

    return build


def _element_total_symbols(A) -> tuple[MatrixSymbol, MatrixSymbol]:
    """Coefficients of the single aP + bQ the element equals modulo
    compact operators: products multiply, terms add."""
    a_tot = None
    b_tot = None
    for term in A.terms:
        a_term = None
        b_term = None
        for a_ij, b_ij in term:
            a_term = a_ij if a_term is None else a_term.multiply(a_ij)
            b_term = b_ij if b_term is None else b_term.multiply(b_ij)
        a_tot = a_term if a_tot is None else a_tot.add(a_term)
        b_tot = b_term if b_tot is None else b_tot.add(b_term)
    return a_tot, b_tot


def classify_element_direct(A, ctx: SpaceContext, truncations=None) -> Classification:
    """Numeric classification of the element itself, without dilation."""
    _require_bounded(ctx)
    if not _is_engine_context(ctx):
        raise HypothesisViolatedError(
            "direct element classification runs on the engine space only"
        )
    a_tot, b_tot = _element_total_symbols(A)
    bad = [
        name
        for name, sym in (("P-coefficient", a_tot), ("Q-coefficient", b_tot))
        if not essential_invertibility(sym)
    ]
    if bad:
        return Classification(
            "NotSemiFredholm",
            tuple(
                f"symbol-degenerate: total {name} of the element is not "
                "essentially invertible" for name in bad
            ),
            (),
        )
    sweep = truncations or _default_sweep(A.N)
    degs = [
        max(
            _banded_degree(a_ij) or 10**9,
            _banded_degree(b_ij) or 10**9,
        )
        for term in A.terms
        for a_ij, b_ij in term
    ]
    worst = max(degs, default=0)
    if worst >= 10**9:
        margin = lambda n: n
    else:
        margin = lambda n: min(n, max(8, 2 * worst * max(1, A.r)))
    report = spectral_report(element_section_builder(A), sweep=sweep, margin=margin)
    return _numeric_verdict(report)
