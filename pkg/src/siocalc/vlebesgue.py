"""Modulars, Luxemburg-Nakano norms, conjugate exponents, duality
pairings, and the embedding parameter for weighted variable-exponent
spaces on curves.

Functions are discretized on uniform arc-length midpoint nodes; the
quadrature weights always sum to the curve length exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import AlignmentError, HypothesisViolatedError, NumericFailureError
from .geometry import (
    CurveModel,
    ExponentPiece,
    SpaceContext,
    VariableExponent,
    s_boundedness,
)

LUXEMBURG_MAX_ITER = 200


@dataclass(frozen=True)
class SampledFunction:
    """Function values on quadrature nodes of a curve.

    params are the curve parameters u in [0,1); points the curve points;
    weights the arc-length measures |dtau| per node.
    """

    params: np.ndarray
    points: np.ndarray
    weights: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        n = self.params.size
        if n < 16:
            raise ValueError("need at least 16 nodes")
        if not (self.weights > 0).all():
            raise ValueError("quadrature weights must be strictly positive")
        if self.values.shape[0] != n:
            raise ValueError("values must align with nodes")

    @staticmethod
    def on_curve(
        curve: CurveModel,
        fn: Callable[[np.ndarray], np.ndarray],
        resolution: int = 1024,
    ) -> "SampledFunction":
        """Sample fn(points) at uniform arc-length midpoints."""
        u = (np.arange(resolution) + 0.5) / resolution
        pts = np.asarray(curve.point(u))
        w = np.full(resolution, curve.length / resolution)
        vals = np.asarray(fn(pts), dtype=complex)
        vals = np.broadcast_to(vals, (resolution,) + vals.shape[1:]).copy()
        return SampledFunction(u, pts, w, vals)

    def same_nodes(self, other: "SampledFunction") -> bool:
        return (
            self.params.size == other.params.size
            and np.array_equal(self.params, other.params)
            and np.array_equal(self.weights, other.weights)
        )

    def scaled(self, alpha: complex) -> "SampledFunction":
        return SampledFunction(self.params, self.points, self.weights, alpha * self.values)

    @property
    def magnitudes(self) -> np.ndarray:
        v = self.values
        if v.ndim == 1:
            return np.abs(v)
        return np.sqrt((np.abs(v) ** 2).sum(axis=1))


@dataclass(frozen=True)
class ModularReport:
    lam: float
    modular_value: float
    iterations: int
    converged: bool


def modular(f: SampledFunction, lam: float, ctx: SpaceContext) -> float:
    """Quadrature of the modular integral sum w_j |f_j rho_j / lam|^{p_j}."""
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    rho = np.atleast_1d(ctx.weight.value(f.points))
    p = np.atleast_1d(ctx.exponent(f.params))
    integrand = (f.magnitudes * rho / lam) ** p
    return float(np.sum(f.weights * integrand))


def luxemburg_norm(
    f: SampledFunction, ctx: SpaceContext, tol: float = 1e-12
) -> float:
    """inf{lam > 0 : modular(f, lam) <= 1} by bracketing and bisection."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    rho = np.atleast_1d(ctx.weight.value(f.points))
    peak = float((f.magnitudes * rho).max())
    if peak == 0.0:
        return 0.0
    lo = 1e-12 * peak
    hi = lo
    iterations = 0
    while modular(f, hi, ctx) > 1.0:
        hi *= 2.0
        iterations += 1
        if iterations > LUXEMBURG_MAX_ITER:
            raise NumericFailureError(
                "Luxemburg bracketing failed to find modular <= 1",
                ModularReport(hi, modular(f, hi, ctx), iterations, False),
            )
    # bisect until the modular at the candidate is within tol of 1
    for _ in range(LUXEMBURG_MAX_ITER):
        mid = 0.5 * (lo + hi)
        m = modular(f, mid, ctx)
        iterations += 1
        if abs(m - 1.0) <= tol:
            return mid
        if m > 1.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-16 * hi:
            return hi
    m = modular(f, hi, ctx)
    if abs(m - 1.0) <= 1e-6 or hi - lo <= 1e-12 * hi:
        return hi
    raise NumericFailureError(
        "Luxemburg bisection did not converge",
        ModularReport(hi, m, iterations, False),
    )


def conjugate_exponent(p: VariableExponent) -> VariableExponent:
    """Pointwise p*(t) = p(t)/(p(t)-1).  Applying twice is the identity."""
    pieces = []
    for base in p.pieces:
        if base.kind == "constant":
            v = float(base.data["value"])
            pieces.append(
                ExponentPiece(base.u0, base.u1, "constant", {"value": v / (v - 1.0)})
            )
        elif base.kind == "mapped" and base.data.get("tag") == "conjugate":
            pieces.append(base.data["base"])  # involution: unwrap
        else:
            pieces.append(
                ExponentPiece(
                    base.u0,
                    base.u1,
                    "mapped",
                    {"base": base, "fn": lambda x: x / (x - 1.0), "tag": "conjugate"},
                )
            )
    return VariableExponent(pieces, p.length)


@dataclass(frozen=True)
class HoelderResult:
    lhs: float
    rhs: float
    holds: bool


def hoelder_check(f: SampledFunction, g: SampledFunction, ctx: SpaceContext) -> HoelderResult:
    """||fg||_1 <= (1 + 1/p_min - 1/p_max) ||f||_p ||g||_p*  (unweighted)."""
    if not f.same_nodes(g):
        raise AlignmentError("f and g must share the node set")
    plain = ctx.without_weight()
    dual = SpaceContext(
        plain.curve, conjugate_exponent(plain.exponent), dini_constant=plain.dini_constant
    )
    lhs = float(np.sum(f.weights * f.magnitudes * g.magnitudes))
    const = 1.0 + 1.0 / plain.exponent.p_min - 1.0 / plain.exponent.p_max
    rhs = const * luxemburg_norm(f, plain) * luxemburg_norm(g, dual)
    return HoelderResult(lhs, rhs, lhs <= rhs * (1.0 + 1e-8))


def embedding_epsilon(ctx: SpaceContext) -> float:
    """Largest dyadic eps in {2^-1, ..., 2^-20} such that the weighted
    space embeds continuously into L^{1+eps}: for every marked point,
    0 < (1/p(t_k)+lambda_k)(1+eps) < 1, and 1+eps < p_min."""
    decision = s_boundedness(ctx)
    if not decision.bounded:
        raise HypothesisViolatedError(
            "weight fails the boundedness criterion; no embedding parameter",
            decision,
        )
    vals = [1.0 / ctx.p_at_point(t) + lam for t, lam in ctx.weight.marked]
    for k in range(1, 21):
        eps = 2.0 ** (-k)
        if 1.0 + eps >= ctx.exponent.p_min:
            continue
        if all(0.0 < v * (1.0 + eps) < 1.0 for v in vals):
            return eps
    raise HypothesisViolatedError(
        "no dyadic embedding parameter found; weight values at the boundary",
        vals,
    )


def duality_pairing(f: SampledFunction, g: SampledFunction) -> complex:
    """Quadrature of the pairing integral of f(tau) conj(g(tau)) |dtau|."""
    if not f.same_nodes(g):
        raise AlignmentError("f and g must share the node set")
    fv, gv = f.values, g.values
    if fv.ndim == 1:
        prod = fv * np.conj(gv)
    else:
        prod = (fv * np.conj(gv)).sum(axis=1)
    return complex(np.sum(f.weights * prod))
