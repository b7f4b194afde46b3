"""Brute-force cross-checks that do not go through the criteria.

Two independent routes to a "not absolutely PPT" certificate:

* :func:`random_unitary_falsifier` samples global unitaries, rotates the
  diagonal state and looks for a negative eigenvalue of the partial transpose.
  It works on explicit density matrices and never touches a matricization.
* :func:`x_witness` takes the eigenvector of a negative eigenvalue of some
  matricization, turns it into a descending Schmidt vector and re-evaluates the
  quadratic form with the ordering pair that vector actually induces.

Failure to find a witness is evidence, not proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .exceptions import DimensionMismatch, DimensionTooLarge, UnsupportedP
from .linalg import DEFAULT_TOLERANCES, SYMMETRY_ATOL, Tolerances, jacobi_eigh
from .matricization import build_lambda_sym, canonical_pairs, compatible_pair_for, is_compatible
from .spectrum import Dims, Spectrum

MAX_ORACLE_TOTAL = 36
TRACE_ATOL = 1e-10


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian ``mn x mn`` matrix with unit trace.

    The first tensor factor is the m-dimensional one. ``trace_tolerance`` can be
    loosened for inputs that are only normalized to a few decimals.
    """

    dims: Dims
    data: np.ndarray
    trace_tolerance: float = TRACE_ATOL

    def __post_init__(self):
        a = np.array(self.data, dtype=complex)
        d = self.dims.total
        if a.shape != (d, d):
            raise DimensionMismatch(f"expected a {d}x{d} matrix, got {a.shape}")
        if np.max(np.abs(a - a.conj().T)) > SYMMETRY_ATOL:
            raise ValueError("density matrix is not Hermitian")
        tr = np.trace(a).real
        if abs(tr - 1.0) > self.trace_tolerance:
            raise ValueError(f"trace {tr!r} differs from 1 by more than {self.trace_tolerance:g}")
        a.setflags(write=False)
        object.__setattr__(self, "data", a)

    @property
    def trace(self) -> float:
        return float(np.trace(self.data).real)


def embed_diag(s: Spectrum) -> DensityMatrix:
    return DensityMatrix(s.dims, np.diag(s.as_array()).astype(complex), max(TRACE_ATOL, s.sum_tolerance))


def _ginibre(d, seed):
    rng = np.random.default_rng(seed)
    return (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)


def _haar_from_ginibre(z):
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r, axis1=-2, axis2=-1)
    phase = np.where(np.abs(diag) > 0, diag / np.where(np.abs(diag) > 0, np.abs(diag), 1.0), 1.0)
    return q * phase[..., None, :]


def haar_unitary(d: int, seed) -> np.ndarray:
    """Haar-distributed ``d x d`` unitary; ``seed`` is anything numpy accepts."""
    if d < 1:
        raise ValueError("d must be at least 1")
    return _haar_from_ginibre(_ginibre(d, seed))


def partial_transpose(rho, dims: Optional[Dims] = None) -> np.ndarray:
    """Transpose the second tensor factor.

    Works on a single matrix or a stack ``(..., mn, mn)``.
    """
    if isinstance(rho, DensityMatrix):
        dims, a = rho.dims, rho.data
    else:
        a = np.asarray(rho)
        if dims is None:
            raise DimensionMismatch("dims are required for a bare array")
    m, n = dims.m, dims.n
    if a.shape[-2:] != (m * n, m * n):
        raise DimensionMismatch(f"matrix shape {a.shape[-2:]} does not match {m}x{n}")
    lead = a.shape[:-2]
    t = a.reshape(lead + (m, n, m, n))
    t = np.swapaxes(t, -3, -1)
    return t.reshape(lead + (m * n, m * n))


@dataclass(frozen=True)
class FalsifierResult:
    trials: int
    seed: int
    threshold: float
    first: Optional[tuple]
    worst: tuple

    @property
    def found(self) -> bool:
        return self.first is not None

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "threshold": self.threshold,
            "found": self.found,
            "first": None if self.first is None else {"trial": self.first[0], "min_eigenvalue": self.first[1]},
            "worst": {"trial": self.worst[0], "min_eigenvalue": self.worst[1]},
        }


def random_unitary_falsifier(
    s: Spectrum, trials: int = 2000, seed: int = 0, tol: Tolerances = DEFAULT_TOLERANCES, chunk: int = 500
) -> FalsifierResult:
    """Search random unitary orbits of ``diag(s)`` for a non-PPT state.

    Trial ``i`` uses the unitary seeded with ``(seed, i)``, so results do not
    depend on ``chunk``. Eigenvalues come from LAPACK here, which keeps this
    oracle independent of the package's own Jacobi solver.
    """
    dims = s.dims
    d = dims.total
    if d > MAX_ORACLE_TOTAL:
        raise DimensionTooLarge(f"m*n={d} exceeds the oracle limit of {MAX_ORACLE_TOTAL}")
    if trials < 1:
        raise ValueError("trials must be positive")
    lam = s.as_array()
    cut = float(tol.threshold(lam[0]))
    first, worst = None, (0, np.inf)
    for start in range(0, trials, chunk):
        idx = range(start, min(start + chunk, trials))
        U = _haar_from_ginibre(np.stack([_ginibre(d, [seed, i]) for i in idx]))
        rho = (U * lam[None, None, :]) @ np.conj(np.swapaxes(U, -1, -2))
        mins = np.linalg.eigvalsh(partial_transpose(rho, dims))[:, 0]
        j = int(np.argmin(mins))
        if mins[j] < worst[1]:
            worst = (start + j, float(mins[j]))
        if first is None:
            bad = np.flatnonzero(mins < -cut)
            if bad.size:
                first = (start + int(bad[0]), float(mins[bad[0]]))
    return FalsifierResult(trials, seed, cut, first, worst)


@dataclass(frozen=True)
class XWitness:
    """A Schmidt vector certifying that some unitary orbit leaves the PPT set.

    ``eigen_value`` is the most negative eigenvalue found among the exact-test
    matrices (matrix ``matrix``). ``quadratic_value`` is ``x^T Lambda x`` for the
    sorted absolute eigenvector ``x`` under the ordering pair ``x`` induces; it
    is never larger than ``eigen_value``.
    """

    x: tuple
    matrix: int
    eigen_value: float
    quadratic_value: float
    compatible: bool

    def to_dict(self) -> dict:
        return {
            "x": list(self.x),
            "matrix": self.matrix,
            "eigen_value": self.eigen_value,
            "quadratic_value": self.quadratic_value,
            "compatible": self.compatible,
        }


def x_witness(s: Spectrum, tol: Tolerances = DEFAULT_TOLERANCES) -> Optional[XWitness]:
    p = s.dims.p
    if p > 4:
        raise UnsupportedP(f"x_witness needs the full template set, unavailable for p={p}")
    mats = np.stack([build_lambda_sym(s, op) for op in canonical_pairs(p)])
    w, v, _ = jacobi_eigh(mats, tol.jacobi_sweep_limit, vectors=True)
    t = int(np.argmin(w[:, 0]))
    lo = float(w[t, 0])
    if lo >= -tol.threshold(s.values[0]):
        return None
    x = np.sort(np.abs(v[t][:, 0]))[::-1]
    x = x / np.linalg.norm(x)
    op = compatible_pair_for(x)
    q = float(x @ build_lambda_sym(s, op) @ x)
    return XWitness(tuple(x.tolist()), t + 1, lo, q, is_compatible(x, op))
