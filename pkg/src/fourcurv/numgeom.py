"""Curvature of coordinate metric charts by high-order finite differences.

Christoffel symbols and the Riemann tensor are assembled from 4th-order
central-difference derivatives of the metric; the curvature is re-expressed
in the orthonormal frame obtained by Gram-Schmidt on the coordinate vectors
(equivalently, the inverse-transpose Cholesky factor, which preserves the
coordinate orientation) and packed into the 6x6 operator convention of
:mod:`fourcurv.curvops`.  Each evaluation is done at steps h and h/2; the
emitted operator is the h/2 evaluation and the error estimate comes from the
Richardson comparison of the pair.

Also provides Gauss-Legendre quadrature for the 1-D orbit integrals of
cohomogeneity-one metrics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss

from .curvops import COORDINATE, PAIRS, STRUCTURAL_TOL, CurvatureOperator
from .errors import (
    BadIntervalError,
    OutsideDomainError,
    SingularMetricError,
    StepTooLargeError,
)

# 4th-order central stencils
_OFF1 = (-2, -1, 1, 2)
_C1 = (1.0, -8.0, 8.0, -1.0)          # first derivative, / (12 h)
_OFF2 = (-2, -1, 0, 1, 2)
_C2 = (-1.0, 16.0, -30.0, 16.0, -1.0)  # second derivative, / (12 h^2)


@dataclass(frozen=True, eq=False)
class MetricChart:
    """A coordinate box with a pointwise metric evaluation.

    ``metric_at`` must be a pure function of the coordinates returning a
    symmetric positive-definite 4x4 matrix (checked by Cholesky at every
    evaluation).
    """

    domain: tuple[tuple[float, float], ...]
    metric_at: Callable[[np.ndarray], np.ndarray]
    suggested_step: float
    name: str = "chart"

    def contains(self, point, margin: float = 0.0) -> bool:
        return all(lo + margin <= x <= hi - margin
                   for x, (lo, hi) in zip(point, self.domain))

    def margin_of(self, point) -> float:
        return min(min(x - lo, hi - x)
                   for x, (lo, hi) in zip(point, self.domain))


@dataclass(frozen=True, eq=False)
class PointCurvature:
    """Frame curvature data at a chart point."""

    operator: CurvatureOperator
    ricci: np.ndarray
    einstein_residual: float
    step_used: float
    error_estimate: float

    def to_dict(self) -> dict:
        return {
            "operator": self.operator.to_dict(),
            "ricci": np.asarray(self.ricci).tolist(),
            "einsteinResidual": self.einstein_residual,
            "stepUsed": self.step_used,
            "errorEstimate": self.error_estimate,
        }


def _checked_metric(chart: MetricChart, x: np.ndarray) -> np.ndarray:
    g = np.asarray(chart.metric_at(x), dtype=float)
    if g.shape != (4, 4):
        raise SingularMetricError("metric evaluation must return a 4x4 matrix")
    try:
        np.linalg.cholesky(0.5 * (g + g.T))
    except np.linalg.LinAlgError:
        raise SingularMetricError(f"metric not positive-definite at {x.tolist()}")
    return g


def _metric_derivatives(chart, x, h):
    """g, dg[m,i,j] = d_m g_ij and d2g[m,n,i,j] by 4th-order stencils."""
    g = _checked_metric(chart, x)
    dg = np.zeros((4, 4, 4))
    d2g = np.zeros((4, 4, 4, 4))
    for m in range(4):
        acc1 = np.zeros((4, 4))
        acc2 = -30.0 * g
        for off, c1 in zip(_OFF1, _C1):
            xp = x.copy()
            xp[m] += off * h
            gm = _checked_metric(chart, xp)
            acc1 += c1 * gm
            acc2 += (16.0 if abs(off) == 1 else -1.0) * gm
        dg[m] = acc1 / (12.0 * h)
        d2g[m, m] = acc2 / (12.0 * h * h)
    for m in range(4):
        for n in range(m + 1, 4):
            acc = np.zeros((4, 4))
            for om, cm in zip(_OFF1, _C1):
                for on, cn in zip(_OFF1, _C1):
                    xp = x.copy()
                    xp[m] += om * h
                    xp[n] += on * h
                    acc += cm * cn * _checked_metric(chart, xp)
            d2g[m, n] = d2g[n, m] = acc / (144.0 * h * h)
    return g, dg, d2g


def _frame_curvature(chart, x, h):
    """(operator 6x6, frame Ricci 4x4, frame) at x with step h."""
    g, dg, d2g = _metric_derivatives(chart, x, h)
    ginv = np.linalg.inv(g)
    # dgS[i,l,j] = d_i g_lj + d_j g_li - d_l g_ij
    dgS = np.transpose(dg, (0, 1, 2)) + np.transpose(dg, (2, 1, 0)) - np.transpose(dg, (1, 0, 2))
    Gam = 0.5 * np.einsum("kl,ilj->kij", ginv, dgS)
    dginv = -np.einsum("ka,mab,bl->mkl", ginv, dg, ginv)
    d2gS = (np.transpose(d2g, (0, 1, 2, 3))
            + np.transpose(d2g, (0, 3, 2, 1))
            - np.transpose(d2g, (0, 2, 1, 3)))
    dGam = 0.5 * (np.einsum("mkl,ilj->mkij", dginv, dgS)
                  + np.einsum("kl,milj->mkij", ginv, d2gS))
    # R^r_smn = d_m Gam^r_ns - d_n Gam^r_ms + Gam^r_ml Gam^l_ns - Gam^r_nl Gam^l_ms
    Rud = (np.einsum("mrns->rsmn", dGam) - np.einsum("nrms->rsmn", dGam)
           + np.einsum("rml,lns->rsmn", Gam, Gam)
           - np.einsum("rnl,lms->rsmn", Gam, Gam))
    Rdddd = np.einsum("ra,asmn->rsmn", g, Rud)
    Ric = np.einsum("msmn->sn", Rud)
    # Gram-Schmidt frame on coordinate vectors = inverse-transpose Cholesky;
    # det F = 1/sqrt(det g) > 0, so coordinate orientation is preserved.
    L = np.linalg.cholesky(g)
    F = np.linalg.inv(L).T
    Rf = np.einsum("rsmn,ra,sb,mc,nd->abcd", Rdddd, F, F, F, F, optimize=True)
    Ricf = F.T @ Ric @ F
    op = np.empty((6, 6))
    for p, (i, j) in enumerate(PAIRS):
        for q, (k, l) in enumerate(PAIRS):
            op[p, q] = Rf[i, j, k, l]
    return op, Ricf


def curvature_at(chart: MetricChart, point, step: float | None = None) -> PointCurvature:
    """Frame curvature operator of a chart at an interior point.

    Evaluates the 4th-order stencil at steps ``h`` and ``h/2`` and emits the
    ``h/2`` result; ``error_estimate`` is the Richardson error bound of the
    emitted values (with a safety factor of two and a machine-noise floor).
    The point must be interior with margin at least ``2 * step`` in every
    coordinate.
    """
    x = np.asarray(point, dtype=float)
    if x.shape != (4,):
        raise OutsideDomainError("point must have 4 coordinates")
    if not chart.contains(x):
        raise OutsideDomainError(f"point {x.tolist()} outside chart domain")
    h = float(step) if step is not None else chart.suggested_step
    if h <= 0:
        raise StepTooLargeError("step must be positive")
    if chart.margin_of(x) < 2.0 * h:
        raise StepTooLargeError(
            f"margin {chart.margin_of(x):.3e} is below the 2*step stencil requirement"
        )
    op_h, _ = _frame_curvature(chart, x, h)
    op_h2, ric = _frame_curvature(chart, x, h / 2.0)
    scale = max(1.0, float(np.abs(op_h2).max()))
    err = 2.0 * float(np.abs(op_h - op_h2).max()) / 15.0 + 1e-13 * scale
    operator = CurvatureOperator(op_h2, basis=COORDINATE,
                                 tol=max(STRUCTURAL_TOL, 10.0 * err))
    s = float(np.trace(ric))
    residual = float(np.abs(ric - (s / 4.0) * np.eye(4)).max()) / max(1.0, abs(s))
    return PointCurvature(
        operator=operator,
        ricci=ric,
        einstein_residual=residual,
        step_used=h / 2.0,
        error_estimate=err,
    )


@dataclass(frozen=True)
class ConvergenceStudy:
    steps: tuple[float, ...]
    errors: tuple[float, ...]
    slope: float | None  # None when errors sit at machine noise

    def to_dict(self) -> dict:
        return {
            "steps": list(self.steps),
            "errors": list(self.errors),
            "slope": self.slope if self.slope is not None else "NotApplicable",
        }


def convergence_study(chart: MetricChart, point, steps: Sequence[float]) -> ConvergenceStudy:
    """Operator error versus step against the finest-step Richardson limit.

    Requires at least three decreasing steps, all valid at the point.  The
    reference is the Richardson extrapolation of the finest pair
    ``(h_min, h_min/2)``; the fitted log-log slope should sit near the
    stencil order (4) and is reported as None when every error is at
    machine-noise level.
    """
    steps = [float(s) for s in steps]
    if len(steps) < 3 or any(s2 >= s1 for s1, s2 in zip(steps, steps[1:])):
        raise BadIntervalError("need at least 3 strictly decreasing steps")
    x = np.asarray(point, dtype=float)
    if not chart.contains(x):
        raise OutsideDomainError(f"point {x.tolist()} outside chart domain")
    if chart.margin_of(x) < 2.0 * max(steps):
        raise StepTooLargeError("largest step violates the stencil margin")
    ops = [_frame_curvature(chart, x, h)[0] for h in steps]
    fine, _ = _frame_curvature(chart, x, steps[-1] / 2.0)
    reference = (16.0 * fine - ops[-1]) / 15.0
    errors = [float(np.abs(op - reference).max()) for op in ops]
    slope = None
    if max(errors) > 1e-12 * max(1.0, float(np.abs(reference).max())):
        fit = np.polyfit(np.log(steps), np.log(np.maximum(errors, 1e-300)), 1)
        slope = float(fit[0])
    return ConvergenceStudy(steps=tuple(steps), errors=tuple(errors), slope=slope)


def orbit_quadrature(f: Callable[[float], float], weight: Callable[[float], float],
                     interval: tuple[float, float], nodes: int) -> float:
    """Gauss-Legendre value of the weighted 1-D integral of f over interval."""
    lo, hi = float(interval[0]), float(interval[1])
    if not (np.isfinite(lo) and np.isfinite(hi)) or hi <= lo:
        raise BadIntervalError(f"bad interval [{lo}, {hi}]")
    if nodes < 16:
        raise BadIntervalError("orbit quadrature needs at least 16 nodes")
    xs, ws = leggauss(int(nodes))
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    total = 0.0
    for xi, wi in zip(xs, ws):
        t = mid + half * xi
        total += wi * f(t) * weight(t)
    return float(half * total)
