"""Exact integer and rational arithmetic for the (chi, tau) geography of
closed oriented 4-manifolds.

Every comparison is exact: the strict bound chi > (15/8)|tau| for
non-positively curved non-flat Einstein metrics, the Gromov-Luck bound
chi >= |tau| for aspherical manifolds, the Bogomolov-Miyaoka-Yau bound
chi >= 3 tau with its ball-quotient equality line, the first Chern number
c1^2 = 2 chi + 3 tau, and the Todd/Beauville parity obstruction for carrying
complex structures with both orientations (tau must be even).

The module evaluates necessary conditions only; it never claims a lattice
point is realized by a manifold.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

EINSTEIN_SLOPE = Fraction(15, 8)

CSV_HEADER = ("chi,tau,gromov_luck,einstein_nonpos_strict,bmy,"
              "bmy_equality,c1sq,both_orientations_complex")


@dataclass(frozen=True)
class GeoPoint:
    chi: int
    tau: int

    def __post_init__(self):
        if not isinstance(self.chi, int) or not isinstance(self.tau, int):
            raise TypeError("chi and tau are topological invariants: integers only")


@dataclass(frozen=True)
class GeoReport:
    gromov_luck: bool
    einstein_nonpos_strict: bool
    bmy: bool
    bmy_equality: bool
    c1sq: int
    both_orientations_complex_possible: bool

    def to_dict(self) -> dict:
        return {
            "gromovLuck": self.gromov_luck,
            "einsteinNonPosStrict": self.einstein_nonpos_strict,
            "bmy": self.bmy,
            "bmyEquality": self.bmy_equality,
            "c1sq": self.c1sq,
            "bothOrientationsComplexPossible": self.both_orientations_complex_possible,
        }


def report(p: GeoPoint) -> GeoReport:
    """All geography flags of an integer (chi, tau) pair, exactly."""
    chi, tau = p.chi, p.tau
    return GeoReport(
        gromov_luck=chi >= abs(tau),
        einstein_nonpos_strict=8 * chi > 15 * abs(tau),
        bmy=chi >= 3 * tau,
        bmy_equality=chi == 3 * tau,
        c1sq=2 * chi + 3 * tau,
        both_orientations_complex_possible=tau % 2 == 0,
    )


@dataclass(frozen=True)
class LatticeObstruction:
    """Outcome of intersecting chi = 2 + tau with chi = (15/8) tau."""

    applicable: bool
    tau: Fraction | None
    chi: Fraction | None
    integral: bool | None

    def to_dict(self) -> dict:
        if not self.applicable:
            return {"applicable": False, "tauValue": None, "integral": None}
        return {
            "applicable": True,
            "tauValue": f"{self.tau.numerator}/{self.tau.denominator}",
            "chiValue": f"{self.chi.numerator}/{self.chi.denominator}",
            "integral": self.integral,
        }


def self_dual_lattice_obstruction(b1_zero: bool) -> LatticeObstruction:
    """The non-integrality that rules out the saturated self-dual case.

    When the first Betti number vanishes, chi = 2 + tau; intersected with
    the saturated line chi = (15/8) tau this forces tau = 16/7, which is not
    an integer.  Returns a NotApplicable marker when b1 is not known to
    vanish.
    """
    if not b1_zero:
        return LatticeObstruction(applicable=False, tau=None, chi=None, integral=None)
    # (15/8) tau = 2 + tau  =>  (7/8) tau = 2
    tau = Fraction(2) / (EINSTEIN_SLOPE - 1)
    chi = EINSTEIN_SLOPE * tau
    assert chi == 2 + tau
    return LatticeObstruction(
        applicable=True, tau=tau, chi=chi, integral=tau.denominator == 1)


def scan_rows(chi_max: int) -> Iterator[tuple[GeoPoint, GeoReport]]:
    """All integer points with 0 <= chi <= chi_max, |tau| <= chi, in
    lexicographic order."""
    if chi_max < 0:
        raise ValueError("chi_max must be non-negative")
    for chi in range(chi_max + 1):
        for tau in range(-chi, chi + 1):
            p = GeoPoint(chi, tau)
            yield p, report(p)


def _csv_bool(flag: bool) -> str:
    return "true" if flag else "false"


def scan_csv(chi_max: int) -> str:
    """The scan as a deterministic, platform-independent CSV table."""
    out = io.StringIO()
    out.write(CSV_HEADER + "\n")
    for p, rep in scan_rows(chi_max):
        out.write(",".join([
            str(p.chi),
            str(p.tau),
            _csv_bool(rep.gromov_luck),
            _csv_bool(rep.einstein_nonpos_strict),
            _csv_bool(rep.bmy),
            _csv_bool(rep.bmy_equality),
            str(rep.c1sq),
            _csv_bool(rep.both_orientations_complex_possible),
        ]) + "\n")
    return out.getvalue()
