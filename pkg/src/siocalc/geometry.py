"""Curves, variable exponents, Khvedelidze weights, and the boundedness
gate for the Cauchy singular integral operator.

Everything here is parametrized over u in [0, 1).  For the circle
families the parameter is proportional to arc length; sampled curves are
reparametrized by cumulative chord length on construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from .errors import (
    HypothesisViolatedError,
    InvalidCurveError,
    PointOffCurveError,
)

UNIT_CIRCLE = "unit_circle"
SPIRAL_MARKED = "spiral_marked"
SAMPLED = "sampled"

#: relative (to curve length) tolerance for matching a point to the curve
POINT_MATCH_RTOL = 1e-9


@dataclass(frozen=True)
class CurveModel:
    """Parametrized Jordan curve with optional whirl data.

    ``whirl_points`` is a tuple of (point, delta) pairs; on piecewise
    smooth curves delta is identically zero and the tuple is empty.
    """

    family: str
    center: complex = 0j
    radius: float = 1.0
    samples: np.ndarray | None = None
    whirl_points: tuple[tuple[complex, float], ...] = ()
    closed: bool = True
    _cumlen: np.ndarray | None = field(default=None, repr=False)

    # -- constructors -------------------------------------------------
    @staticmethod
    def circle(radius: float = 1.0, center: complex = 0j) -> "CurveModel":
        if radius <= 0:
            raise InvalidCurveError(f"circle radius must be positive, got {radius}")
        return CurveModel(family=UNIT_CIRCLE, center=center, radius=radius)

    @staticmethod
    def spiral_marked(
        whirl_points: Sequence[tuple[complex, float]],
        radius: float = 1.0,
        center: complex = 0j,
    ) -> "CurveModel":
        """Circle geometry carrying declared whirl exponents at marked
        points (zero elsewhere)."""
        pts = [p for p, _ in whirl_points]
        if len({(round(p.real, 12), round(p.imag, 12)) for p in pts}) != len(pts):
            raise InvalidCurveError("whirl points must be pairwise distinct")
        return CurveModel(
            family=SPIRAL_MARKED,
            center=center,
            radius=radius,
            whirl_points=tuple((complex(p), float(d)) for p, d in whirl_points),
        )

    @staticmethod
    def from_samples(points: Sequence[complex], closed: bool = True) -> "CurveModel":
        pts = np.asarray(points, dtype=complex)
        if pts.size < 3:
            raise InvalidCurveError("need at least 3 sample points")
        seg = np.abs(np.diff(pts))
        if closed:
            seg = np.concatenate([seg, [abs(pts[0] - pts[-1])]])
        total = float(seg.sum())
        if total <= 0:
            raise InvalidCurveError("sampled curve has zero length")
        cum = np.concatenate([[0.0], np.cumsum(seg)])
        return CurveModel(
            family=SAMPLED, samples=pts, closed=closed, _cumlen=cum
        )

    # -- geometry -----------------------------------------------------
    @property
    def length(self) -> float:
        if self.family in (UNIT_CIRCLE, SPIRAL_MARKED):
            return 2.0 * math.pi * self.radius
        return float(self._cumlen[-1])

    @property
    def diameter(self) -> float:
        if self.family in (UNIT_CIRCLE, SPIRAL_MARKED):
            return 2.0 * self.radius
        pts = self.samples
        # coarse but adequate: pairwise max over (decimated) samples
        step = max(1, pts.size // 2048)
        sub = pts[::step]
        return float(np.abs(sub[:, None] - sub[None, :]).max())

    def point(self, u):
        """Curve point(s) at parameter(s) u (vectorized)."""
        u = np.asarray(u, dtype=float) % 1.0
        if self.family in (UNIT_CIRCLE, SPIRAL_MARKED):
            return self.center + self.radius * np.exp(2j * np.pi * u)
        # arc-length interpolation between samples
        s = u * self.length
        idx = np.searchsorted(self._cumlen, s, side="right") - 1
        idx = np.clip(idx, 0, self.samples.size - (1 if self.closed else 2))
        s0 = self._cumlen[idx]
        seg = self._cumlen[idx + 1] - s0
        frac = np.where(seg > 0, (s - s0) / np.where(seg > 0, seg, 1.0), 0.0)
        nxt = (idx + 1) % self.samples.size
        return self.samples[idx] * (1 - frac) + self.samples[nxt] * frac

    def tangent_angle(self, u):
        """Angle of the positively oriented tangent, radians."""
        u = np.asarray(u, dtype=float) % 1.0
        if self.family in (UNIT_CIRCLE, SPIRAL_MARKED):
            return (2.0 * np.pi * u + np.pi / 2.0) % (2.0 * np.pi)
        h = 0.5 / max(self.samples.size, 64)
        d = self.point(u + h) - self.point(u - h)
        return np.angle(d) % (2.0 * np.pi)

    def param_of(self, point: complex, rtol: float = POINT_MATCH_RTOL) -> float:
        """Parameter of a point on the curve; raises if off-curve."""
        tol = max(rtol, POINT_MATCH_RTOL) * self.length
        if self.family in (UNIT_CIRCLE, SPIRAL_MARKED):
            z = complex(point) - self.center
            if abs(abs(z) - self.radius) > tol:
                raise PointOffCurveError(
                    f"point {point} is {abs(abs(z) - self.radius):.3e} away from the circle"
                )
            return (math.atan2(z.imag, z.real) / (2.0 * math.pi)) % 1.0
        d = np.abs(self.samples - point)
        i = int(np.argmin(d))
        if d[i] > tol:
            raise PointOffCurveError(
                f"point {point} is {d[i]:.3e} away from the nearest sample"
            )
        return float(self._cumlen[i] / self.length)

    def is_jordan(self, resolution: int = 512, rtol: float = 1e-6) -> bool:
        """Injectivity of the parametrization, tested at resolution."""
        if not self.closed:
            return False
        u = (np.arange(resolution) + 0.5) / resolution
        pts = self.point(u)
        d = np.abs(pts[:, None] - pts[None, :])
        np.fill_diagonal(d, np.inf)
        return bool(d.min() > rtol * self.length / resolution)


# ---------------------------------------------------------------------
# variable exponents
# ---------------------------------------------------------------------

class ExponentPiece:
    """One smooth piece of a variable exponent over a parameter arc."""

    def __init__(self, u0: float, u1: float, kind: str, data: dict):
        self.u0 = float(u0)
        self.u1 = float(u1)
        self.kind = kind
        self.data = dict(data)

    def evaluate(self, u, length: float):
        u = np.asarray(u, dtype=float)
        if self.kind == "constant":
            return np.full_like(u, float(self.data["value"]), dtype=float)
        if self.kind == "affine":
            # affine in arc length measured from the piece start
            s = (u - self.u0) * length
            return float(self.data["value"]) + float(self.data["slope"]) * s
        if self.kind == "trig":
            out = np.full_like(u, float(self.data.get("a0", 0.0)), dtype=float)
            for k, a, b in self.data.get("modes", ()):  # a cos + b sin
                out = out + a * np.cos(2 * np.pi * k * u) + b * np.sin(2 * np.pi * k * u)
            return out
        if self.kind == "mapped":
            base: ExponentPiece = self.data["base"]
            return self.data["fn"](base.evaluate(u, length))
        raise ValueError(f"unknown exponent piece kind {self.kind!r}")


class VariableExponent:
    """Piecewise-smooth exponent p: Gamma -> (1, inf), parametrized by u."""

    def __init__(self, pieces: Sequence[ExponentPiece], length: float = 2 * math.pi):
        if not pieces:
            raise ValueError("need at least one piece")
        self.pieces = sorted(pieces, key=lambda p: p.u0)
        self.length = float(length)
        self._pmin, self._pmax = self._extrema()
        if not (1.0 < self._pmin and self._pmax < math.inf):
            raise ValueError(
                f"exponent must satisfy 1 < p < inf, sampled range "
                f"[{self._pmin:.6g}, {self._pmax:.6g}]"
            )

    @staticmethod
    def constant(value: float, length: float = 2 * math.pi) -> "VariableExponent":
        return VariableExponent(
            [ExponentPiece(0.0, 1.0, "constant", {"value": value})], length
        )

    @staticmethod
    def piecewise_constant(
        segments: Sequence[tuple[float, float, float]], length: float = 2 * math.pi
    ) -> "VariableExponent":
        """segments: (u0, u1, value) triples covering [0, 1)."""
        return VariableExponent(
            [ExponentPiece(u0, u1, "constant", {"value": v}) for u0, u1, v in segments],
            length,
        )

    def _piece_index(self, u: np.ndarray) -> np.ndarray:
        starts = np.array([p.u0 for p in self.pieces])
        idx = np.searchsorted(starts, u, side="right") - 1
        return np.where(idx < 0, len(self.pieces) - 1, idx)

    def __call__(self, u):
        u = np.atleast_1d(np.asarray(u, dtype=float)) % 1.0
        idx = self._piece_index(u)
        out = np.empty_like(u)
        for i, piece in enumerate(self.pieces):
            m = idx == i
            if m.any():
                out[m] = piece.evaluate(u[m], self.length)
        return out if out.size > 1 else float(out[0])

    def _extrema(self, n: int = 4096) -> tuple[float, float]:
        u = (np.arange(n) + 0.5) / n
        vals = np.atleast_1d(self(u))
        for p in self.pieces:
            vals = np.append(vals, p.evaluate(np.array([p.u0, p.u1 - 1e-12]), self.length))
        return float(vals.min()), float(vals.max())

    @property
    def p_min(self) -> float:
        return self._pmin

    @property
    def p_max(self) -> float:
        return self._pmax

    def breakpoints(self) -> list[float]:
        return [p.u0 for p in self.pieces]

    def one_sided_at(self, u0: float) -> tuple[float, float]:
        """Left/right limits at a piece boundary."""
        u0 = u0 % 1.0
        left_piece = None
        right_piece = None
        for p in self.pieces:
            if abs(p.u0 - u0) < 1e-15 or abs(p.u0 - u0 + 1.0) < 1e-15:
                right_piece = p
            if abs(p.u1 - u0) < 1e-15 or abs(p.u1 - u0 - 1.0) < 1e-15:
                left_piece = p
        if right_piece is None or left_piece is None:
            v = float(np.atleast_1d(self(u0))[0])
            return v, v
        lv = float(left_piece.evaluate(np.array([u0 if u0 > 0 else 1.0]), self.length)[0])
        rv = float(right_piece.evaluate(np.array([u0]), self.length)[0])
        return lv, rv

    def is_continuous(self, tol: float = 1e-12) -> bool:
        return all(
            abs(lv - rv) <= tol
            for lv, rv in (self.one_sided_at(p.u0) for p in self.pieces)
        )


# ---------------------------------------------------------------------
# weights
# ---------------------------------------------------------------------

@dataclass(frozen=True)
class KhvedelidzeWeight:
    """Finite product of power weights prod |t - t_k|^{lambda_k}."""

    marked: tuple[tuple[complex, float], ...] = ()

    def __post_init__(self):
        pts = [p for p, _ in self.marked]
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if abs(pts[i] - pts[j]) < 1e-12:
                    raise ValueError("weight points must be pairwise distinct")

    @staticmethod
    def empty() -> "KhvedelidzeWeight":
        return KhvedelidzeWeight(())

    def value(self, t):
        t = np.asarray(t, dtype=complex)
        out = np.ones(t.shape, dtype=float)
        for point, lam in self.marked:
            out = out * np.abs(t - point) ** lam
        return out if out.ndim else float(out)


def lambda_at(weight: KhvedelidzeWeight, t: complex, tol: float = 1e-9) -> float:
    """lambda_k when t coincides with a marked point, else 0."""
    for point, lam in weight.marked:
        if abs(complex(t) - point) <= tol:
            return lam
    return 0.0


# ---------------------------------------------------------------------
# space context
# ---------------------------------------------------------------------

@dataclass(frozen=True)
class SpaceContext:
    """The analytic setting (Gamma, p(.), rho) of every decision."""

    curve: CurveModel
    exponent: VariableExponent
    weight: KhvedelidzeWeight = field(default_factory=KhvedelidzeWeight.empty)
    dini_constant: float = 1.0

    def __post_init__(self):
        tol = POINT_MATCH_RTOL * self.curve.length
        for point, _ in self.weight.marked:
            self.curve.param_of(point, POINT_MATCH_RTOL)  # raises if off-curve
        del tol

    @property
    def point_tolerance(self) -> float:
        return POINT_MATCH_RTOL * self.curve.length

    def p_at_point(self, t: complex) -> float:
        return float(np.atleast_1d(self.exponent(self.curve.param_of(t)))[0])

    def p_at_param(self, u: float) -> float:
        return float(np.atleast_1d(self.exponent(u))[0])

    def lambda_at_point(self, t: complex) -> float:
        return lambda_at(self.weight, t, self.point_tolerance)

    def delta_at_point(self, t: complex) -> float:
        return whirl_exponent(self.curve, t)

    def without_weight(self) -> "SpaceContext":
        return replace(self, weight=KhvedelidzeWeight.empty())


# ---------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------

def carleson_constant(curve: CurveModel, resolution: int = 2048) -> float:
    """Estimate sup_{t,R} |Gamma(t,R)| / R by sampling centers and
    sweeping R over a logarithmic grid from L*1e-4 to diam(Gamma)."""
    if resolution < 64:
        raise ValueError("resolution must be >= 64")
    L = curve.length
    if L <= 0:
        raise InvalidCurveError("curve has zero length")
    u = (np.arange(resolution) + 0.5) / resolution
    pts = np.asarray(curve.point(u))
    w = L / resolution
    dist = np.abs(pts[:, None] - pts[None, :])
    diam = float(dist.max())
    radii = np.geomspace(L * 1e-4, diam, 48)
    best = 0.0
    dist_sorted = np.sort(dist, axis=1)
    for R in radii:
        # arc measure: neighbours at full weight, the center sample
        # contributes at most its own window 2R
        count = np.searchsorted(dist_sorted.ravel(), 0, side="left")  # placeholder
        counts = (dist_sorted <= R).sum(axis=1)
        measure = (counts - 1) * w + min(w, 2.0 * R)
        best = max(best, float(measure.max() / R))
    return best


def whirl_exponent(
    curve: CurveModel,
    t: complex,
    n_neighbors: int = 256,
    n_skip: int = 4,
    match_rtol: float = 1e-6,
) -> float:
    """Spirality exponent delta(t).

    unit_circle: identically 0.  spiral_marked: the stored exponent at
    marked points, 0 elsewhere.  sampled: least-squares slope of
    arg(tau - t) against -log|tau - t| over the nearest samples,
    excluding the innermost few where wrap noise dominates.
    """
    t = complex(t)
    if curve.family == UNIT_CIRCLE:
        curve.param_of(t)  # validates on-curve
        return 0.0
    if curve.family == SPIRAL_MARKED:
        curve.param_of(t)
        tol = POINT_MATCH_RTOL * curve.length
        for point, d in curve.whirl_points:
            if abs(point - t) <= max(tol, 1e-9):
                return d
        return 0.0
    # sampled: regression path
    pts = curve.samples
    d = np.abs(pts - t)
    tol = match_rtol * curve.length
    if d.min() > tol:
        raise PointOffCurveError(f"point {t} is {d.min():.3e} away from the samples")
    order = np.argsort(d)
    sel = order[n_skip : n_skip + n_neighbors]
    sel = sel[d[sel] > 0]
    if sel.size < 8:
        raise InvalidCurveError("too few samples near the query point")
    # group by curve side (contiguous index runs) so each side gets its
    # own O(1) intercept while the slope is shared
    sel_sorted = np.sort(sel)
    gaps = np.where(np.diff(sel_sorted) > 1)[0]
    runs = np.split(sel_sorted, gaps + 1)
    xs, ys, cols = [], [], []
    for run_id, run in enumerate(runs):
        ang = np.unwrap(np.angle(pts[run] - t))
        xs.append(-np.log(d[run]))
        ys.append(ang)
        cols.append(np.full(run.size, run_id))
    x = np.concatenate(xs)
    y = np.concatenate(ys)
    col = np.concatenate(cols)
    design = np.zeros((x.size, 1 + len(runs)))
    design[:, 0] = x
    for rid in range(len(runs)):
        design[col == rid, 1 + rid] = 1.0
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    return float(coef[0])


@dataclass(frozen=True)
class DiniReport:
    passed: bool
    max_ratio: float
    worst_pair: tuple[float, float] | None
    constant: float


def check_dini_lipschitz(
    exponent: VariableExponent,
    curve: CurveModel,
    constant: float,
    resolution: int = 512,
) -> DiniReport:
    """Verify |p(tau)-p(t)| <= -A/log|tau-t| over sampled pairs with
    |tau-t| <= 1/2 and report the worst observed ratio."""
    if constant <= 0:
        raise ValueError("Dini-Lipschitz constant must be positive")
    # a genuine discontinuity makes the ratio diverge at the break
    for u0 in exponent.breakpoints():
        lv, rv = exponent.one_sided_at(u0)
        if abs(lv - rv) > 1e-12:
            return DiniReport(False, math.inf, (u0, u0), constant)
    u = (np.arange(resolution) + 0.5) / resolution
    pts = np.asarray(curve.point(u))
    pv = np.atleast_1d(exponent(u))
    dist = np.abs(pts[:, None] - pts[None, :])
    dp = np.abs(pv[:, None] - pv[None, :])
    mask = (dist > 0) & (dist <= 0.5) & (dist < 1.0)
    ratio = np.zeros_like(dist)
    ratio[mask] = dp[mask] * (-np.log(dist[mask]))
    i, j = np.unravel_index(np.argmax(ratio), ratio.shape)
    worst = float(ratio[i, j])
    pair = (float(u[i]), float(u[j])) if worst > 0 else None
    return DiniReport(worst <= constant, worst, pair, constant)


@dataclass(frozen=True)
class KhvedelidzeRow:
    index: int
    point: complex
    value: float
    passed: bool


def check_khvedelidze(ctx: SpaceContext) -> list[KhvedelidzeRow]:
    """Per marked point: the value 1/p(t_k) + lambda_k and whether it
    lies in the open interval (0, 1)."""
    rows = []
    for k, (point, lam) in enumerate(ctx.weight.marked, start=1):
        val = 1.0 / ctx.p_at_point(point) + lam
        rows.append(KhvedelidzeRow(k, point, val, 0.0 < val < 1.0))
    return rows


@dataclass(frozen=True)
class BoundednessDecision:
    bounded: bool
    reasons: tuple[str, ...]
    dini: DiniReport
    khvedelidze: tuple[KhvedelidzeRow, ...]


def s_boundedness(ctx: SpaceContext, resolution: int = 512) -> BoundednessDecision:
    """Boundedness of S on L^{p(.)}(Gamma, rho): the Khvedelidze
    condition at every marked point, under the Dini-Lipschitz gate."""
    dini = check_dini_lipschitz(ctx.exponent, ctx.curve, ctx.dini_constant, resolution)
    if not dini.passed:
        raise HypothesisViolatedError(
            "exponent fails the Dini-Lipschitz condition; criterion not applicable",
            dini,
        )
    rows = check_khvedelidze(ctx)
    reasons = tuple(
        f"weight point k={r.index} at {r.point}: 1/p+lambda = {r.value:.6g} not in (0,1)"
        for r in rows
        if not r.passed
    )
    return BoundednessDecision(not reasons, reasons, dini, tuple(rows))
