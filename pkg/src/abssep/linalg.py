"""Small dense eigen-solvers and matrix predicates.

The workhorse is a cyclic Jacobi solver that runs on a whole stack of matrices at
once: every plane rotation is applied to all matrices in the batch with a single
numpy expression, and matrices that have already converged get the identity
rotation. Matrices here are tiny (p x p with p rarely above 6), so the batch
dimension is where the speed comes from.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .exceptions import IndexOutOfRange, NoConvergence

OFF_DIAGONAL_RTOL = 1e-14
SYMMETRY_ATOL = 1e-12


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds shared by PSD tests and inequality margins.

    A quantity counts as non-negative when it is at least
    ``-(psd_abs + psd_rel * scale)``, where ``scale`` is the magnitude of the
    numbers being compared.
    """

    psd_abs: float = 1e-10
    psd_rel: float = 1e-8
    jacobi_sweep_limit: int = 64

    def __post_init__(self):
        if not (self.psd_abs > 0 and self.psd_rel > 0 and self.jacobi_sweep_limit > 0):
            raise ValueError("tolerances must all be positive")

    def threshold(self, scale) -> np.ndarray | float:
        return self.psd_abs + self.psd_rel * np.abs(scale)


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True)
class EigenResult:
    eigenvalues: tuple
    iterations: int
    converged: bool
    eigenvectors: Optional[np.ndarray] = None

    @property
    def min(self) -> float:
        return self.eigenvalues[0]


def check_symmetric(a, atol: float = SYMMETRY_ATOL) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise ValueError(f"expected square matrices, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    if a.size and np.max(np.abs(a - np.swapaxes(a, -1, -2))) > atol:
        raise ValueError("matrix is not symmetric")
    return a


def jacobi_eigh(a, sweep_limit: int = 64, vectors: bool = False):
    """Cyclic Jacobi on a stack of symmetric matrices.

    Parameters
    ----------
    a : array_like, shape (..., d, d)
    sweep_limit : int
        A sweep visits every (p, q) pair above the diagonal once.
    vectors : bool
        Accumulate the rotations so eigenvectors come back too.

    Returns
    -------
    w : ndarray, shape (..., d)
        Eigenvalues in ascending order.
    v : ndarray, shape (..., d, d) or None
        ``v[..., :, j]`` is the unit eigenvector of ``w[..., j]``.
    sweeps : int

    Raises
    ------
    NoConvergence
        When some matrix in the stack still has off-diagonal mass above
        ``1e-14 * ||a||_F`` after ``sweep_limit`` sweeps.
    """
    a = np.array(a, dtype=float)
    lead = a.shape[:-2]
    d = a.shape[-1]
    A = a.reshape((-1, d, d)).copy()
    batch = A.shape[0]
    V = np.broadcast_to(np.eye(d), (batch, d, d)).copy() if vectors else None
    iu = np.triu_indices(d, 1)
    target = OFF_DIAGONAL_RTOL * np.sqrt(np.einsum("bij,bij->b", A, A))

    def off_norm():
        return np.sqrt(2.0 * np.sum(A[:, iu[0], iu[1]] ** 2, axis=1))

    sweeps = 0
    active = off_norm() > target
    while np.any(active):
        if sweeps >= sweep_limit:
            raise NoConvergence(f"Jacobi did not converge within {sweep_limit} sweeps")
        sweeps += 1
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = A[:, p, q]
                rot = active & (apq != 0.0)
                if not rot.any():
                    continue
                safe = np.where(rot, apq, 1.0)
                # a subnormal a_pq overflows theta to inf, which correctly yields t = 0
                with np.errstate(over="ignore"):
                    theta = (A[:, q, q] - A[:, p, p]) / (2.0 * safe)
                t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
                t = np.where(rot, t, 0.0)
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                cc = c[:, None]
                ss = s[:, None]
                col_p = A[:, :, p].copy()
                col_q = A[:, :, q]
                A[:, :, p] = cc * col_p - ss * col_q
                A[:, :, q] = ss * col_p + cc * col_q
                row_p = A[:, p, :].copy()
                row_q = A[:, q, :]
                A[:, p, :] = cc * row_p - ss * row_q
                A[:, q, :] = ss * row_p + cc * row_q
                A[rot, p, q] = 0.0
                A[rot, q, p] = 0.0
                if vectors:
                    vp = V[:, :, p].copy()
                    vq = V[:, :, q]
                    V[:, :, p] = cc * vp - ss * vq
                    V[:, :, q] = ss * vp + cc * vq
        active = off_norm() > target

    w = np.diagonal(A, axis1=1, axis2=2).copy()
    order = np.argsort(w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    if vectors:
        V = np.take_along_axis(V, order[:, None, :], axis=2)
        V = V.reshape(lead + (d, d))
    return w.reshape(lead + (d,)), V, sweeps


def sym_eigenvalues(a, tol: Tolerances = DEFAULT_TOLERANCES, vectors: bool = False) -> EigenResult:
    a = check_symmetric(a)
    if a.ndim != 2:
        raise ValueError("sym_eigenvalues takes a single matrix; use jacobi_eigh for stacks")
    w, v, sweeps = jacobi_eigh(a, tol.jacobi_sweep_limit, vectors=vectors)
    return EigenResult(tuple(w.tolist()), sweeps, True, v)


def is_psd(a, tol: Tolerances = DEFAULT_TOLERANCES) -> tuple[bool, float]:
    """Return ``(psd, min_eigenvalue)``.

    The cutoff is ``-(psd_abs + psd_rel * max|a_ij|)``.
    """
    a = check_symmetric(a)
    if a.size == 0:
        return True, 0.0
    lo = sym_eigenvalues(a, tol).min
    return bool(lo >= -tol.threshold(np.max(np.abs(a)))), lo


def row_diagonally_dominant(a, row: int) -> bool:
    a = np.asarray(a, dtype=float)
    if not 0 <= row < a.shape[0]:
        raise IndexOutOfRange(f"row {row} outside 0..{a.shape[0] - 1}")
    r = np.abs(a[row])
    return bool(r[row] >= r.sum() - r[row])


def all_ones_quadratic(a) -> float:
    """``1^T a 1``, the sum of all entries."""
    return float(np.sum(a))


def real_embedding(h) -> np.ndarray:
    """``[[Re h, -Im h], [Im h, Re h]]``: same eigenvalues as ``h``, each twice."""
    h = np.asarray(h, dtype=complex)
    re, im = h.real, h.imag
    return np.block([[re, -im], [im, re]])


def check_hermitian(h, atol: float = SYMMETRY_ATOL) -> np.ndarray:
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    if h.size and np.max(np.abs(h - h.conj().T)) > atol:
        raise ValueError("matrix is not Hermitian")
    return h


def hermitian_min_eigenvalue(h, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    h = check_hermitian(h)
    emb = real_embedding(h)
    emb = 0.5 * (emb + emb.T)
    w, _, _ = jacobi_eigh(emb, tol.jacobi_sweep_limit)
    return float(w[0])
