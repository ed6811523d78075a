"""The Page metric pipeline on the twisted 2-sphere bundle over the 2-sphere.

The metric is the cohomogeneity-one Einstein metric with positive
cosmological constant discovered by Page on CP^2 # conj(CP^2), written in
the triaxial form

    g = u(r)^2 dr^2 + v(r)^2 (s1^2 + s2^2) + w(r)^2 s3^2,

with the invariant coframe s1 = cos(psi) dth + sin(psi) sin(th) dph,
s2 = -sin(psi) dth + cos(psi) sin(th) dph, s3 = dpsi + cos(th) dph.  The
radial coordinate here is the angle r in (0, pi) with x = -cos(r), in which
every metric component is analytic up to the ends; the generic orbit is a
Berger 3-sphere and the two ends are 2-sphere bolts where the psi-circle
closes (w -> 0 with proper slope 1/2 for the 4*pi period, v bounded away
from zero).

With the cosmological constant normalized to 3 (unit round 4-sphere scale):

    q(r) = 1 - k^2 x^2
    U(r) = 3 - k^2 - k^2 (1 + k^2) x^2
    W    = 3 + 6 k^2 - k^4
    u    = sqrt((1 + k^2) q / U)
    v    = sqrt((1 + k^2) q / W)
    w    = (2 k sqrt(1 + k^2) / W) sin(r) sqrt(U / q)

where the shape parameter k in (0, 1) is the unique root of

    k^4 + 4 k^3 - 6 k^2 + 12 k - 3 = 0.

Transcription of these functions is NOT trusted: it is certified a
posteriori by the Einstein-residual oracle (:func:`verify_einstein`), which
detects any error in the profile functions at far-above-tolerance levels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import curvops, numgeom, secsign
from .errors import NonConvergentError
from .secsign import PlaneWitness

PAGE_LAMBDA = 3.0
# coefficients of the shape-parameter quartic, highest degree first
PAGE_SHAPE_QUARTIC = (1.0, 4.0, -6.0, 12.0, -3.0)


def page_shape_parameter() -> float:
    """The root of the shape quartic in (0, 1), by deterministic bisection."""

    def p(x: float) -> float:
        c4, c3, c2, c1, c0 = PAGE_SHAPE_QUARTIC
        return (((c4 * x + c3) * x + c2) * x + c1) * x + c0

    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if p(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class EndpointData:
    """Numeric smooth-closure data at one end of the radial interval."""

    v_limit: float
    w_slope_proper: float

    def to_dict(self) -> dict:
        return {"vLimit": self.v_limit, "wSlopeProper": self.w_slope_proper}


@dataclass(frozen=True, eq=False)
class CohomOneMetric:
    """A cohomogeneity-one metric through its radial profile functions."""

    u: Callable[[float], float]
    v: Callable[[float], float]
    w: Callable[[float], float]
    length: float
    name: str = "cohom-one"
    metadata: dict | None = None
    suggested_step: float = 0.01

    @property
    def chart(self) -> numgeom.MetricChart:
        u, v, w = self.u, self.v, self.w

        def metric_at(x: np.ndarray) -> np.ndarray:
            r, th = x[0], x[1]
            uu, vv, ww = u(r) ** 2, v(r) ** 2, w(r) ** 2
            cth = np.cos(th)
            g = np.zeros((4, 4))
            g[0, 0] = uu
            g[1, 1] = vv
            g[2, 2] = vv * np.sin(th) ** 2 + ww * cth * cth
            g[3, 3] = ww
            g[2, 3] = g[3, 2] = ww * cth
            return g

        return numgeom.MetricChart(
            domain=((0.0, self.length), (0.0, np.pi),
                    (-np.pi, np.pi), (-2.0 * np.pi, 2.0 * np.pi)),
            metric_at=metric_at,
            suggested_step=self.suggested_step,
            name=self.name,
        )

    def endpoint_data(self, delta: float = 1e-5) -> tuple[EndpointData, EndpointData]:
        out = []
        for r0, sign in ((0.0, 1.0), (self.length, -1.0)):
            r = r0 + sign * delta
            proper = abs(self.u(r0 + sign * delta / 2.0)) * delta
            out.append(EndpointData(
                v_limit=float(self.v(r)),
                w_slope_proper=float(self.w(r) / proper),
            ))
        return out[0], out[1]

    def orbit_volume(self, r: float) -> float:
        """Riemannian volume of the orbit at radius r (psi period 4*pi)."""
        return 16.0 * math.pi**2 * self.u(r) * self.v(r) ** 2 * self.w(r)


def page_metric() -> CohomOneMetric:
    """The Page metric, normalized to cosmological constant 3."""
    k = page_shape_parameter()
    k2 = k * k
    T = 1.0 + k2
    W = 3.0 + 6.0 * k2 - k2 * k2
    sqT = math.sqrt(T)

    def q_of(r: float) -> float:
        x = -math.cos(r)
        return 1.0 - k2 * x * x

    def U_of(r: float) -> float:
        x = -math.cos(r)
        return 3.0 - k2 - k2 * (1.0 + k2) * x * x

    def u(r: float) -> float:
        return math.sqrt(T * q_of(r) / U_of(r))

    def v(r: float) -> float:
        return math.sqrt(T * q_of(r) / W)

    def w(r: float) -> float:
        return (2.0 * k * sqT / W) * math.sin(r) * math.sqrt(U_of(r) / q_of(r))

    return CohomOneMetric(
        u=u, v=v, w=w,
        length=float(np.pi),
        name="page",
        metadata={"lambda": PAGE_LAMBDA, "shapeParameter": k},
        suggested_step=0.004,
    )


def sphere_ansatz(radius: float = 1.0) -> CohomOneMetric:
    """The round 4-sphere written in the same cohomogeneity-one ansatz."""

    def u(r: float) -> float:
        return radius

    def v(r: float) -> float:
        return radius * math.sin(r) / 2.0

    return CohomOneMetric(
        u=u, v=v, w=v,
        length=float(np.pi),
        name="sphere4-ansatz",
        metadata={"lambda": 3.0 / radius**2},
        suggested_step=0.004,
    )


def chebyshev_radii(m: CohomOneMetric, n: int, margin_frac: float = 0.02) -> list[float]:
    """n Chebyshev-distributed radii on the margin-clamped interval."""
    lo = margin_frac * m.length
    hi = (1.0 - margin_frac) * m.length
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    return [mid + half * math.cos(math.pi * (2 * j + 1) / (2 * n)) for j in range(n)]


def _orbit_point(r: float) -> np.ndarray:
    # th = pi/2 keeps clear of the Euler-angle degeneracy at th in {0, pi}
    return np.array([r, np.pi / 2.0, 0.0, 0.0])


def _orbit_step(m: CohomOneMetric, r: float) -> float:
    return min(m.suggested_step, 0.4 * min(r, m.length - r))


def orbit_curvature(m: CohomOneMetric, r: float) -> numgeom.PointCurvature:
    """Frame curvature of the orbit through radius r (one point per orbit)."""
    return numgeom.curvature_at(m.chart, _orbit_point(r), step=_orbit_step(m, r))


@dataclass(frozen=True)
class EinsteinCheck:
    max_residual: float
    lambda_: float
    lambda_spread: float
    radii: tuple[float, ...]
    residuals: tuple[float, ...]

    def to_dict(self) -> dict:
        return {
            "maxResidual": self.max_residual,
            "lambda": self.lambda_,
            "lambdaSpread": self.lambda_spread,
            "radii": list(self.radii),
            "residuals": list(self.residuals),
        }


def verify_einstein(m: CohomOneMetric, radii: Sequence[float]) -> EinsteinCheck:
    """Einstein residual of the metric at the given radii.

    Samples one point per orbit (the metric is orbit-homogeneous), returns
    the worst residual max|Ric - (s/4) g| / max(1, |s|) and the fitted
    cosmological constant, whose relative spread across radii must stay
    small for a genuinely Einstein profile.
    """
    residuals = []
    lambdas = []
    for r in radii:
        pc = orbit_curvature(m, float(r))
        residuals.append(pc.einstein_residual)
        lambdas.append(float(np.trace(pc.ricci)) / 4.0)
    lam = float(np.mean(lambdas))
    spread = float(np.max(lambdas) - np.min(lambdas)) / max(1.0, abs(lam))
    return EinsteinCheck(
        max_residual=float(np.max(residuals)),
        lambda_=lam,
        lambda_spread=spread,
        radii=tuple(float(r) for r in radii),
        residuals=tuple(residuals),
    )


@dataclass(frozen=True, eq=False)
class NegativeCurvatureReport:
    min_sec: float
    witness_radius: float
    witness: PlaneWitness
    gl_defect_range: tuple[float, float]

    def to_dict(self) -> dict:
        return {
            "minSec": self.min_sec,
            "witnessRadius": self.witness_radius,
            "witness": self.witness.to_dict(),
            "glDefectRange": list(self.gl_defect_range),
        }


def certify_negative_curvature(m: CohomOneMetric,
                               radii: Sequence[float] | None = None) -> NegativeCurvatureReport:
    """Certified minimum of sectional curvature over a radial sweep.

    Applies the exact Einstein eigenvalue range orbit by orbit and returns
    the global minimum with a witnessing 2-plane.  The saturation defect of
    the pointwise Weyl bound is reported alongside but never asserted: the
    sign guarantee does not apply when sectional curvature is indefinite.
    """
    if radii is None:
        radii = chebyshev_radii(m, 64)
    best: tuple[float, float, PlaneWitness] | None = None
    defect_lo, defect_hi = math.inf, -math.inf
    for r in radii:
        pc = orbit_curvature(m, float(r))
        d = curvops.decompose(pc.operator)
        report = curvops.gl_defect(d)
        defect_lo = min(defect_lo, report.defect)
        defect_hi = max(defect_hi, report.defect)
        min_w, _ = secsign.einstein_extreme_witnesses(
            pc.operator, tol=max(curvops.CLASSIFY_TOL, 20.0 * pc.error_estimate))
        if best is None or min_w.sec_value < best[0]:
            best = (min_w.sec_value, float(r), min_w)
    min_sec, radius, witness = best
    return NegativeCurvatureReport(
        min_sec=min_sec,
        witness_radius=radius,
        witness=witness,
        gl_defect_range=(defect_lo, defect_hi),
    )


@dataclass(frozen=True)
class CharNumbers:
    chi: float
    tau: float
    nodes: int
    doubling_delta: float

    def to_dict(self) -> dict:
        return {
            "chi": self.chi,
            "tau": self.tau,
            "nodes": self.nodes,
            "doublingDelta": self.doubling_delta,
        }


def _char_integrals(m: CohomOneMetric, nodes: int, flip: bool) -> tuple[float, float]:
    eps = 1e-3 * m.length
    interval = (eps, m.length - eps)
    sign = -1.0 if flip else 1.0
    cache: dict[float, tuple[float, float]] = {}

    def densities(r: float) -> tuple[float, float]:
        if r not in cache:
            pc = orbit_curvature(m, r)
            d = curvops.decompose(pc.operator)
            cd = curvops.char_densities(
                d, tol=max(curvops.CLASSIFY_TOL, 20.0 * pc.error_estimate))
            cache[r] = (cd.euler_density, cd.signature_density)
        return cache[r]

    chi = numgeom.orbit_quadrature(
        lambda r: densities(r)[0], m.orbit_volume, interval, nodes)
    tau = numgeom.orbit_quadrature(
        lambda r: sign * densities(r)[1], m.orbit_volume, interval, nodes)
    return chi, tau


def integrate_char_numbers(m: CohomOneMetric, nodes: int = 48,
                           orientation_flipped: bool = False) -> CharNumbers:
    """Euler characteristic and signature by orbit quadrature.

    Integrates the pointwise characteristic densities against the orbit
    volume 16 pi^2 u v^2 w over the end-clamped radial interval, at the
    requested node count and at twice that count; raises
    :class:`NonConvergentError` when doubling moves either result by more
    than 1e-3.  Orientation flip negates the signature integrand.
    """
    chi1, tau1 = _char_integrals(m, nodes, orientation_flipped)
    chi2, tau2 = _char_integrals(m, 2 * nodes, orientation_flipped)
    delta = max(abs(chi2 - chi1), abs(tau2 - tau1))
    if delta > 1e-3:
        raise NonConvergentError(
            f"node doubling moved the integrals by {delta:.3e} (> 1e-3)")
    return CharNumbers(chi=chi2, tau=tau2, nodes=2 * nodes, doubling_delta=delta)
