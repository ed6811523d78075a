"""Pointwise curvature algebra for oriented Riemannian 4-manifolds.

A curvature operator is a symmetric endomorphism of the 6-dimensional space
of 2-forms at a point, written in the ordered coordinate basis

    e1^e2, e1^e3, e1^e4, e2^e3, e2^e4, e3^e4

of an oriented orthonormal coframe.  The basis is declared orthonormal, the
Hodge star acts with the sign pattern of this ordering, and the operator is
normalized so that sec(span(X, Y)) = <R(X^Y), X^Y> for orthonormal X, Y.
With this convention the identity operator is the unit round 4-sphere
(s = 12, sec = 1).

The module provides the self-dual/anti-self-dual split, the block
decomposition (scalar curvature s, Weyl halves W+/W-, traceless-Ricci
block), the Gursky-LeBrun saturation defect |s|/sqrt(6) - (|W+| + |W-|)
with its equality-case classifier, and the Chern-Gauss-Bonnet /
Hirzebruch-signature densities for Einstein operators.

All value types are immutable after construction (arrays are marked
read-only) and every operation is a pure function of its inputs, so
unrestricted concurrent use is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from .errors import (
    BianchiViolationError,
    IndefiniteSignError,
    InvalidBlocksError,
    NotEinsteinError,
    NotKahlerError,
    NotSymmetricError,
)

# Absolute tolerance for symmetry / first-Bianchi / block-trace validation.
STRUCTURAL_TOL = 1e-9
# Relative tolerance (scaled by max(1, |s|)) for saturation, eigenvalue
# multiplicities and the Einstein test.
CLASSIFY_TOL = 1e-7

BASIS_LABELS = ("e1^e2", "e1^e3", "e1^e4", "e2^e3", "e2^e4", "e3^e4")
PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

# Hodge star pairs the basis 2-forms (0,5), (1,4), (2,3) with signs +,-,+.
# The self-dual frame is f_a = (E_i + sign * E_j)/sqrt(2); flipping the sign
# gives the anti-self-dual frame.
_SD_PAIRS = ((0, 5, 1.0), (1, 4, -1.0), (2, 3, 1.0))

COORDINATE = "coordinate"
SD_ASD = "sd-asd"


class CoverClass(str, Enum):
    SPHERE_PRODUCT = "SphereProduct"
    FLAT = "Flat"
    HYPERBOLIC_PLANE_PRODUCT = "HyperbolicPlaneProduct"
    NOT_SATURATED = "NotSaturated"


class EqualityBranch(str, Enum):
    NON_POSITIVE = "NonPositive"
    NON_NEGATIVE = "NonNegative"
    NONE = "None"


class CurvatureSign(str, Enum):
    NON_POSITIVE = "NonPositive"
    NON_NEGATIVE = "NonNegative"
    INDEFINITE = "Indefinite"
    ZERO = "Zero"


def hodge_star_matrix() -> np.ndarray:
    """Matrix of the Hodge star on 2-forms in the coordinate basis."""
    H = np.zeros((6, 6))
    for i, j, sign in _SD_PAIRS:
        H[i, j] = sign
        H[j, i] = sign
    return H


def _block_transform(M: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Coordinate-basis 6x6 -> (A, B, C) blocks of the SD/ASD-basis matrix.

    Uses the index arithmetic of the sqrt(2)-normalized eigenframe directly,
    so the transform is exact on dyadic inputs (only adds and halving).
    """
    A = np.empty((3, 3))
    B = np.empty((3, 3))
    C = np.empty((3, 3))
    for a, (ia, ja, sa) in enumerate(_SD_PAIRS):
        for b, (ib, jb, sb) in enumerate(_SD_PAIRS):
            mm = M[ia, ib]
            mj = sb * M[ia, jb]
            jm = sa * M[ja, ib]
            jj = sa * sb * M[ja, jb]
            A[a, b] = 0.5 * ((mm + jj) + (mj + jm))
            C[a, b] = 0.5 * ((mm + jj) - (mj + jm))
            B[a, b] = 0.5 * ((mm - jj) - (mj - jm))
    return A, B, C


def _block_assemble(A: np.ndarray, B: np.ndarray, C: np.ndarray) -> np.ndarray:
    """Inverse of :func:`_block_transform`; exact on dyadic inputs."""
    M = np.empty((6, 6))
    for a, (ia, ja, sa) in enumerate(_SD_PAIRS):
        for b, (ib, jb, sb) in enumerate(_SD_PAIRS):
            app = A[a, b]
            cpp = C[a, b]
            bpp = B[a, b]
            bqq = B[b, a]
            M[ia, ib] = 0.5 * ((app + cpp) + (bpp + bqq))
            M[ja, jb] = sa * sb * 0.5 * ((app + cpp) - (bpp + bqq))
            M[ia, jb] = sb * 0.5 * ((app - cpp) - (bpp - bqq))
            M[ja, ib] = sa * 0.5 * ((app - cpp) + (bpp - bqq))
    return M


def _sd_asd_to_blocks(M: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    return M[:3, :3].copy(), M[:3, 3:].copy(), M[3:, 3:].copy()


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


# ---------------------------------------------------------------------------
# 2-forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TwoForm:
    """A 2-form given by its 6 coefficients in the coordinate basis."""

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=float)
        if c.shape != (6,):
            raise ValueError("TwoForm needs exactly 6 coefficients")
        object.__setattr__(self, "coefficients", _readonly(c))

    @classmethod
    def from_wedge(cls, X, Y) -> "TwoForm":
        """The decomposable form X ^ Y of two tangent vectors."""
        X = np.asarray(X, dtype=float)
        Y = np.asarray(Y, dtype=float)
        c = np.array([X[i] * Y[j] - X[j] * Y[i] for i, j in PAIRS])
        return cls(c)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coefficients))

    def wedge_square(self) -> float:
        """Coefficient of the wedge square against the volume form (Plucker).

        Vanishes exactly on decomposable forms.
        """
        c = self.coefficients
        return 2.0 * (c[0] * c[5] - c[1] * c[4] + c[2] * c[3])

    def is_decomposable(self, tol: float = 1e-10) -> bool:
        """Decomposability, checked through both equivalent criteria.

        The wedge-square pairing must vanish and the self-dual and
        anti-self-dual halves must have equal norm; the two tests are
        required to agree within tolerance.
        """
        scale = max(1.0, self.norm() ** 2)
        plucker_zero = abs(self.wedge_square()) <= 2 * tol * scale
        plus, minus = sd_projectors(self)
        norms_equal = abs(plus.norm() ** 2 - minus.norm() ** 2) <= tol * scale
        if plucker_zero != norms_equal:
            raise AssertionError(
                "decomposability criteria disagree; tolerance too tight for input"
            )
        return plucker_zero


def sd_projectors(omega: TwoForm) -> tuple[TwoForm, TwoForm]:
    """Split a 2-form into its self-dual and anti-self-dual parts.

    Returns ``(plus, minus)`` with ``plus + minus == omega``, where the parts
    are the +1 and -1 eigencomponents of the Hodge star.
    """
    c = omega.coefficients
    star = hodge_star_matrix() @ c
    return TwoForm(0.5 * (c + star)), TwoForm(0.5 * (c - star))


def sd_frame_components(omega: TwoForm) -> tuple[np.ndarray, np.ndarray]:
    """Coordinates of a 2-form in the orthonormal SD/ASD eigenframes."""
    c = omega.coefficients
    plus = np.empty(3)
    minus = np.empty(3)
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    for a, (i, j, sign) in enumerate(_SD_PAIRS):
        plus[a] = (c[i] + sign * c[j]) * inv_sqrt2
        minus[a] = (c[i] - sign * c[j]) * inv_sqrt2
    return plus, minus


def two_form_from_frame_components(plus, minus) -> TwoForm:
    """Inverse of :func:`sd_frame_components`."""
    plus = np.asarray(plus, dtype=float)
    minus = np.asarray(minus, dtype=float)
    c = np.zeros(6)
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    for a, (i, j, sign) in enumerate(_SD_PAIRS):
        c[i] += (plus[a] + minus[a]) * inv_sqrt2
        c[j] += sign * (plus[a] - minus[a]) * inv_sqrt2
    return TwoForm(c)


# ---------------------------------------------------------------------------
# Curvature operators and their decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CurvatureOperator:
    """Symmetric 6x6 curvature operator with a basis convention tag.

    Construction validates admissibility: the symmetry defect
    ``max|R - R^T|`` and the first-Bianchi defect (trace of the SD diagonal
    block minus trace of the ASD diagonal block) must both lie within
    ``tol``.
    """

    matrix: np.ndarray
    basis: str = COORDINATE
    tol: float = STRUCTURAL_TOL

    def __post_init__(self):
        M = np.asarray(self.matrix, dtype=float)
        if M.shape != (6, 6):
            raise ValueError("curvature operator must be a 6x6 matrix")
        if self.basis not in (COORDINATE, SD_ASD):
            raise ValueError(f"unknown basis tag {self.basis!r}")
        sym_defect = float(np.abs(M - M.T).max())
        if not sym_defect <= self.tol:
            raise NotSymmetricError(
                f"symmetry defect {sym_defect:.3e} exceeds tolerance {self.tol:.1e}",
                defect=sym_defect,
            )
        A, _, C = self.blocks_of(M, self.basis)
        bianchi = float(np.trace(A) - np.trace(C))
        if not abs(bianchi) <= self.tol:
            raise BianchiViolationError(
                f"Bianchi trace defect {bianchi:.3e} exceeds tolerance {self.tol:.1e}",
                defect=abs(bianchi),
            )
        object.__setattr__(self, "matrix", _readonly(M))

    @staticmethod
    def blocks_of(M: np.ndarray, basis: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        if basis == SD_ASD:
            return _sd_asd_to_blocks(M)
        return _block_transform(M)

    def blocks(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """The (A, B, C) blocks of the operator in the SD/ASD frame."""
        return self.blocks_of(self.matrix, self.basis)

    def in_coordinate_basis(self) -> np.ndarray:
        if self.basis == COORDINATE:
            return np.array(self.matrix)
        return _block_assemble(*self.blocks())

    def in_sd_asd_basis(self) -> np.ndarray:
        A, B, C = self.blocks()
        M = np.zeros((6, 6))
        M[:3, :3] = A
        M[:3, 3:] = B
        M[3:, :3] = B.T
        M[3:, 3:] = C
        return M

    def norm(self) -> float:
        return float(np.linalg.norm(self.matrix))

    def symmetry_defect(self) -> float:
        return float(np.abs(self.matrix - self.matrix.T).max())

    def bianchi_defect(self) -> float:
        A, _, C = self.blocks()
        return float(abs(np.trace(A) - np.trace(C)))

    def to_dict(self) -> dict:
        return {"basis": self.basis, "matrix": self.matrix.tolist()}

    @classmethod
    def from_dict(cls, data: dict, tol: float = STRUCTURAL_TOL) -> "CurvatureOperator":
        if "matrix" not in data:
            raise ValueError("operator JSON needs a 'matrix' field")
        return cls(np.asarray(data["matrix"], dtype=float),
                   basis=data.get("basis", COORDINATE), tol=tol)


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Block decomposition of a curvature operator.

    ``s`` is the scalar curvature, ``w_plus``/``w_minus`` the traceless
    Weyl halves acting on the SD/ASD frames, ``ric_block`` the off-diagonal
    traceless-Ricci block, and the spectra are sorted ascending.
    """

    s: float
    w_plus: np.ndarray
    w_minus: np.ndarray
    ric_block: np.ndarray
    spectrum_plus: np.ndarray
    spectrum_minus: np.ndarray

    def __post_init__(self):
        for name in ("w_plus", "w_minus", "ric_block", "spectrum_plus", "spectrum_minus"):
            object.__setattr__(self, name, _readonly(getattr(self, name)))

    @property
    def einstein_constant(self) -> float:
        return self.s / 4.0

    def norm_w_plus(self) -> float:
        return float(np.linalg.norm(self.w_plus))

    def norm_w_minus(self) -> float:
        return float(np.linalg.norm(self.w_minus))

    def einstein_residual(self) -> float:
        """Frobenius norm of the traceless-Ricci block over max(1, |s|)."""
        return float(np.linalg.norm(self.ric_block)) / max(1.0, abs(self.s))

    def is_einstein(self, tol: float = CLASSIFY_TOL) -> bool:
        return self.einstein_residual() <= tol

    def orientation_flipped(self) -> "Decomposition":
        """Swap the roles of the SD and ASD halves."""
        return Decomposition(
            s=self.s,
            w_plus=self.w_minus,
            w_minus=self.w_plus,
            ric_block=self.ric_block.T,
            spectrum_plus=self.spectrum_minus,
            spectrum_minus=self.spectrum_plus,
        )

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "wPlus": self.w_plus.tolist(),
            "wMinus": self.w_minus.tolist(),
            "ricBlock": self.ric_block.tolist(),
            "spectra": {
                "plus": self.spectrum_plus.tolist(),
                "minus": self.spectrum_minus.tolist(),
            },
        }


def _sorted_spectrum(W: np.ndarray) -> np.ndarray:
    # eigvalsh returns ascending order for symmetric input
    return np.linalg.eigvalsh(0.5 * (W + W.T))


def decompose(op: CurvatureOperator) -> Decomposition:
    """Split an admissible curvature operator into its irreducible blocks.

    The SD diagonal block equals ``w_plus + (s/12) I``, the ASD diagonal
    block equals ``w_minus + (s/12) I`` and the off-diagonal block is the
    traceless-Ricci part.  The scalar curvature is twice the sum of the two
    diagonal-block traces.  All arithmetic is exact basis bookkeeping, so
    exactly-representable model operators decompose exactly.
    """
    A, B, C = op.blocks()
    s = 2.0 * (np.trace(A) + np.trace(C))
    w_plus = A - (s / 12.0) * np.eye(3)
    w_minus = C - (s / 12.0) * np.eye(3)
    return Decomposition(
        s=float(s),
        w_plus=w_plus,
        w_minus=w_minus,
        ric_block=B,
        spectrum_plus=_sorted_spectrum(w_plus),
        spectrum_minus=_sorted_spectrum(w_minus),
    )


def recompose(d: Decomposition, basis: str = COORDINATE,
              tol: float = STRUCTURAL_TOL) -> CurvatureOperator:
    """Rebuild the curvature operator from a decomposition.

    Raises :class:`InvalidBlocksError` when the Weyl halves are not traceless
    symmetric within ``tol``.
    """
    for name, W in (("w_plus", d.w_plus), ("w_minus", d.w_minus)):
        if abs(float(np.trace(W))) > tol * max(1.0, abs(d.s)):
            raise InvalidBlocksError(f"{name} has nonzero trace {np.trace(W):.3e}")
        if np.abs(W - W.T).max() > tol:
            raise InvalidBlocksError(f"{name} is not symmetric")
    A = d.w_plus + (d.s / 12.0) * np.eye(3)
    C = d.w_minus + (d.s / 12.0) * np.eye(3)
    if basis == SD_ASD:
        M = np.zeros((6, 6))
        M[:3, :3] = A
        M[:3, 3:] = d.ric_block
        M[3:, :3] = d.ric_block.T
        M[3:, 3:] = C
    else:
        M = _block_assemble(A, d.ric_block, C)
    return CurvatureOperator(M, basis=basis, tol=tol)


# ---------------------------------------------------------------------------
# The Gursky-LeBrun defect and the saturation classifier
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GLReport:
    """Saturation report for the bound |s|/sqrt(6) >= |W+| + |W-|."""

    defect: float
    norm_w_plus: float
    norm_w_minus: float
    equality_branch: EqualityBranch
    saturated: bool
    cover_class: CoverClass

    def to_dict(self) -> dict:
        return {
            "defect": self.defect,
            "normWPlus": self.norm_w_plus,
            "normWMinus": self.norm_w_minus,
            "equalityBranch": self.equality_branch.value,
            "saturated": self.saturated,
            "coverClass": self.cover_class.value,
        }


def _multiplicities_hold(d: Decomposition, branch: EqualityBranch, tol: float) -> bool:
    scale = max(1.0, abs(d.s))
    lp, mp, vp = d.spectrum_plus
    lm, mm, vm = d.spectrum_minus
    if branch is EqualityBranch.NON_POSITIVE:
        # top eigenvalue doubled in each half
        return (vp - mp) <= tol * scale and (vm - mm) <= tol * scale
    if branch is EqualityBranch.NON_NEGATIVE:
        # bottom eigenvalue doubled in each half
        return (mp - lp) <= tol * scale and (mm - lm) <= tol * scale
    return False


def _is_flat(d: Decomposition, tol: float) -> bool:
    return (abs(d.s) <= tol
            and d.norm_w_plus() <= tol
            and d.norm_w_minus() <= tol)


def gl_defect(d: Decomposition, tol: float = CLASSIFY_TOL) -> GLReport:
    """Evaluate the defect |s|/sqrt(6) - (|W+| + |W-|) and test saturation.

    The defect is defined for every operator; its sign guarantee only holds
    under the Einstein/semi-definite hypotheses, which this function does not
    check.  ``saturated`` requires both a vanishing defect and the
    branch-specific doubled eigenvalues, with the branch chosen by the sign
    of the scalar curvature.  The cover class is the saturation model the
    operator is pointwise consistent with, and is only assigned to Einstein
    inputs.
    """
    nwp = d.norm_w_plus()
    nwm = d.norm_w_minus()
    defect = abs(d.s) / math.sqrt(6.0) - (nwp + nwm)
    scale = max(1.0, abs(d.s))

    branch = EqualityBranch.NONE
    saturated = False
    cover = CoverClass.NOT_SATURATED
    if abs(defect) <= tol * scale:
        if _is_flat(d, tol):
            saturated = True
            cover = CoverClass.FLAT if d.is_einstein(tol) else CoverClass.NOT_SATURATED
        elif d.s < 0 and _multiplicities_hold(d, EqualityBranch.NON_POSITIVE, tol):
            branch = EqualityBranch.NON_POSITIVE
            saturated = True
            if d.is_einstein(tol):
                cover = CoverClass.HYPERBOLIC_PLANE_PRODUCT
        elif d.s > 0 and _multiplicities_hold(d, EqualityBranch.NON_NEGATIVE, tol):
            branch = EqualityBranch.NON_NEGATIVE
            saturated = True
            if d.is_einstein(tol):
                cover = CoverClass.SPHERE_PRODUCT
    return GLReport(
        defect=float(defect),
        norm_w_plus=nwp,
        norm_w_minus=nwm,
        equality_branch=branch,
        saturated=saturated,
        cover_class=cover,
    )


def classify_equality(d: Decomposition, curvature_sign: CurvatureSign,
                      tol: float = CLASSIFY_TOL) -> CoverClass:
    """Classify a saturated Einstein operator by its model cover.

    This is pointwise algebra: it reports which of the three saturation
    models (sphere product, flat space, hyperbolic-plane product) the
    operator is consistent with, given the certified sign of its sectional
    curvature.  Raises :class:`NotEinsteinError` for non-Einstein input and
    :class:`IndefiniteSignError` when the sign is indefinite.
    """
    if not d.is_einstein(tol):
        raise NotEinsteinError(
            f"traceless-Ricci residual {d.einstein_residual():.3e} exceeds {tol:.1e}",
            residual=d.einstein_residual(),
        )
    if curvature_sign is CurvatureSign.INDEFINITE:
        raise IndefiniteSignError(
            "equality classification requires semi-definite sectional curvature"
        )
    if _is_flat(d, tol):
        return CoverClass.FLAT
    scale = max(1.0, abs(d.s))
    nwp = d.norm_w_plus()
    nwm = d.norm_w_minus()
    defect = abs(d.s) / math.sqrt(6.0) - (nwp + nwm)
    if abs(defect) > tol * scale:
        return CoverClass.NOT_SATURATED
    if (curvature_sign is CurvatureSign.NON_NEGATIVE
            and _multiplicities_hold(d, EqualityBranch.NON_NEGATIVE, tol)):
        return CoverClass.SPHERE_PRODUCT
    if (curvature_sign is CurvatureSign.NON_POSITIVE
            and _multiplicities_hold(d, EqualityBranch.NON_POSITIVE, tol)):
        return CoverClass.HYPERBOLIC_PLANE_PRODUCT
    return CoverClass.NOT_SATURATED


# ---------------------------------------------------------------------------
# Characteristic densities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CharDensities:
    """Euler and signature integrands of an Einstein operator.

    ``ratio`` is the Euler-to-signature quotient as an exact rational
    (computed from the exact rational values of the float inputs), or None
    when the signature density vanishes.
    """

    euler_density: float
    signature_density: float
    ratio: Fraction | None

    def to_dict(self) -> dict:
        ratio = None if self.ratio is None else f"{self.ratio.numerator}/{self.ratio.denominator}"
        return {
            "eulerDensity": self.euler_density,
            "signatureDensity": self.signature_density,
            "ratio": ratio,
        }


def _frobenius_sq_exact(W: np.ndarray) -> Fraction:
    total = Fraction(0)
    for x in np.asarray(W, dtype=float).ravel():
        total += Fraction(float(x)) ** 2
    return total


def char_densities(d: Decomposition, tol: float = CLASSIFY_TOL) -> CharDensities:
    """Chern-Gauss-Bonnet and signature densities of an Einstein operator.

        euler     = (|W+|^2 + |W-|^2 + s^2/24) / (8 pi^2)
        signature = (|W+|^2 - |W-|^2) / (12 pi^2)

    The norms are evaluated in exact rational arithmetic on the matrix
    entries so the ratio is exact whenever the inputs are.  Restricted to
    Einstein operators: the general traceless-Ricci correction is out of
    scope here.
    """
    if not d.is_einstein(tol):
        raise NotEinsteinError(
            f"densities need an Einstein operator; residual {d.einstein_residual():.3e}",
            residual=d.einstein_residual(),
        )
    wp2 = _frobenius_sq_exact(d.w_plus)
    wm2 = _frobenius_sq_exact(d.w_minus)
    s2 = Fraction(float(d.s)) ** 2
    euler_frac = wp2 + wm2 + s2 / 24
    sig_frac = wp2 - wm2
    ratio = None
    if sig_frac != 0:
        ratio = Fraction(3, 2) * euler_frac / sig_frac
    return CharDensities(
        euler_density=float(euler_frac) / (8.0 * math.pi**2),
        signature_density=float(sig_frac) / (12.0 * math.pi**2),
        ratio=ratio,
    )


@dataclass(frozen=True)
class KahlerSignatureCheck:
    density: float
    non_negative: bool

    def to_dict(self) -> dict:
        return {"density": self.density, "nonNegative": self.non_negative}


def kahler_signature_check(d: Decomposition, tol: float = CLASSIFY_TOL) -> KahlerSignatureCheck:
    """Pointwise signature integrand |W+|^2 - |W-|^2 for a Kahler operator.

    Verifies the Kahler identity |W+|^2 = s^2/24 first and raises
    :class:`NotKahlerError` if it fails.  For non-positively curved
    Kahler-Einstein operators the returned density is non-negative, which is
    the pointwise mechanism behind the signature bound tau >= 0.
    """
    wp2 = float(np.sum(d.w_plus * d.w_plus))
    wm2 = float(np.sum(d.w_minus * d.w_minus))
    target = d.s * d.s / 24.0
    scale = max(1.0, d.s * d.s)
    if abs(wp2 - target) > tol * scale:
        raise NotKahlerError(
            f"|W+|^2 = {wp2:.6g} deviates from s^2/24 = {target:.6g}"
        )
    density = wp2 - wm2
    return KahlerSignatureCheck(density=density, non_negative=density >= -tol * scale)
