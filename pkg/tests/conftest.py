"""Shared generators for randomized operator tests.

All randomness is seeded through numpy Generators so every run is
reproducible bit-for-bit.
"""

from __future__ import annotations

import numpy as np
import pytest

from fourcurv import curvops
from fourcurv.curvops import SD_ASD, CurvatureOperator


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random SO(3) matrix via QR with positive diagonal."""
    Q, R = np.linalg.qr(rng.standard_normal((3, 3)))
    Q = Q * np.sign(np.diag(R))
    if np.linalg.det(Q) < 0:
        Q[:, 0] = -Q[:, 0]
    return Q


def random_traceless_symmetric(rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    M = rng.standard_normal((3, 3)) * scale
    M = 0.5 * (M + M.T)
    return M - (np.trace(M) / 3.0) * np.eye(3)


def random_admissible_operator(rng: np.random.Generator, scale: float = 1.0,
                               basis: str = SD_ASD) -> CurvatureOperator:
    """Random symmetric operator with the Bianchi trace balance enforced."""
    M = rng.standard_normal((6, 6)) * scale
    M = 0.5 * (M + M.T)
    A, B, C = M[:3, :3], M[:3, 3:], M[3:, 3:]
    shift = (np.trace(A) - np.trace(C)) / 6.0
    A = A - shift * np.eye(3)
    C = C + shift * np.eye(3)
    full = np.zeros((6, 6))
    full[:3, :3] = A
    full[:3, 3:] = B
    full[3:, :3] = B.T
    full[3:, 3:] = C
    op = CurvatureOperator(full, basis=SD_ASD)
    if basis == SD_ASD:
        return op
    return CurvatureOperator(op.in_coordinate_basis(), basis="coordinate")


def assemble_einstein(s: float, w_plus: np.ndarray, w_minus: np.ndarray,
                      basis: str = SD_ASD) -> CurvatureOperator:
    M = np.zeros((6, 6))
    M[:3, :3] = w_plus + (s / 12.0) * np.eye(3)
    M[3:, 3:] = w_minus + (s / 12.0) * np.eye(3)
    op = CurvatureOperator(M, basis=SD_ASD, tol=1e-8)
    if basis == SD_ASD:
        return op
    return CurvatureOperator(op.in_coordinate_basis(), basis="coordinate", tol=1e-8)


def random_einstein_operator(rng: np.random.Generator, scale: float = 1.0) -> CurvatureOperator:
    wp = random_traceless_symmetric(rng, scale)
    wm = random_traceless_symmetric(rng, scale)
    s = float(rng.normal(0.0, 4.0 * scale))
    return assemble_einstein(s, wp, wm)


def rotated_spectrum(rng: np.random.Generator, spectrum) -> np.ndarray:
    Q = random_rotation(rng)
    return Q @ np.diag(np.asarray(spectrum, dtype=float)) @ Q.T


def grid_oracle_qmax(op: CurvatureOperator, n_grid: int = 2562,
                     polish_top: int = 256) -> float:
    """Independent q_max oracle: exhaustive direction grid with exact inner
    solves, then alternation polish of the best candidates.

    Every one of the ``n_grid`` Fibonacci directions gets an exact inner
    solve; the ``polish_top`` best are then alternated to convergence.  This
    searches two orders of magnitude more starts than the production
    configuration.
    """
    from fourcurv.secsign import _alternating_max, _fibonacci_sphere, _sphere_max_batch

    A, B, C = op.blocks()
    a, Qa = np.linalg.eigh(A)
    c, Qc = np.linalg.eigh(C)
    Bt = Qa.T @ B @ Qc
    u = _fibonacci_sphere(n_grid)
    v = _sphere_max_batch(c, u @ Bt)
    q = (np.sum(u * u * a[None, :], axis=1) + np.sum(v * v * c[None, :], axis=1)
         + 2.0 * np.sum(u * (v @ Bt.T), axis=1))
    top = np.argsort(q)[-polish_top:]
    q_best, _, _ = _alternating_max(a, c, Bt, u[top], 200, 1e-13)
    return float(q_best)


def bare_grid_qmax(op: CurvatureOperator, n_grid: int = 2562) -> float:
    """Lower bound on q_max from the bare exhaustive grid (no polish)."""
    from fourcurv.secsign import _fibonacci_sphere, _sphere_max_batch

    A, B, C = op.blocks()
    a, Qa = np.linalg.eigh(A)
    c, Qc = np.linalg.eigh(C)
    Bt = Qa.T @ B @ Qc
    u = _fibonacci_sphere(n_grid)
    v = _sphere_max_batch(c, u @ Bt)
    q = (np.sum(u * u * a[None, :], axis=1) + np.sum(v * v * c[None, :], axis=1)
         + 2.0 * np.sum(u * (v @ Bt.T), axis=1))
    return float(q.max())


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(0)
