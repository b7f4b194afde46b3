"""Eigenvalue spectra of bipartite states.

A :class:`Spectrum` is the only input the classifier needs: the eigenvalues of an
``m x n`` density matrix, stored in non-increasing order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .exceptions import BadSum, NegativeEigenvalue, WrongDims, WrongLength

#: entries in ``[-NEG_CLAMP, 0)`` are treated as solver dust and set to zero
NEG_CLAMP = 1e-12
DEFAULT_SUM_TOLERANCE = 1e-6


@dataclass(frozen=True)
class Dims:
    """Local dimensions ``m <= n`` of a bipartite system.

    Build with :meth:`of` when the caller's order is unknown; it swaps the two
    factors if needed and remembers that it did.
    """

    m: int
    n: int
    swapped: bool = field(default=False, compare=False)

    def __post_init__(self):
        for name, v in (("m", self.m), ("n", self.n)):
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise WrongDims(f"{name} must be an integer, got {v!r}")
        if self.m < 2:
            raise WrongDims(f"subsystem dimensions must be at least 2, got m={self.m}")
        if self.m > self.n:
            raise WrongDims(f"expected m <= n, got ({self.m}, {self.n}); use Dims.of")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "n", int(self.n))

    @classmethod
    def of(cls, m: int, n: int) -> "Dims":
        if isinstance(m, (int, np.integer)) and isinstance(n, (int, np.integer)) and m > n:
            return cls(n, m, swapped=True)
        return cls(m, n)

    @property
    def p(self) -> int:
        return self.m

    @property
    def total(self) -> int:
        return self.m * self.n

    @property
    def p_plus(self) -> int:
        return self.p * (self.p + 1) // 2

    @property
    def p_minus(self) -> int:
        return self.p * (self.p - 1) // 2


@dataclass(frozen=True)
class Spectrum:
    """Validated eigenvalues of an ``m x n`` state, largest first.

    Prefer :func:`make_spectrum`; the constructor assumes ``values`` are already
    sorted and clamped and only re-checks the invariants.
    """

    dims: Dims
    values: tuple
    sum_tolerance: float = DEFAULT_SUM_TOLERANCE

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != self.dims.total:
            raise WrongLength(f"expected {self.dims.total} eigenvalues, got {len(vals)}")
        if any(a < b for a, b in zip(vals, vals[1:])):
            raise ValueError("Spectrum values must be sorted in non-increasing order")
        if vals and vals[-1] < 0:
            raise NegativeEigenvalue(f"negative eigenvalue {vals[-1]!r}")
        total = sum(vals)
        if not abs(total - 1.0) <= self.sum_tolerance:
            raise BadSum(f"eigenvalues sum to {total!r}, not 1 within {self.sum_tolerance:g}")

    def __len__(self):
        return len(self.values)

    def lam(self, i: int) -> float:
        """1-based access, so ``s.lam(1)`` is the largest eigenvalue."""
        if not 1 <= i <= len(self.values):
            raise IndexError(f"eigenvalue index {i} outside 1..{len(self.values)}")
        return self.values[i - 1]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def with_dims(self, dims: Dims) -> "Spectrum":
        return Spectrum(dims, self.values, self.sum_tolerance)


def _as_dims(dims) -> Dims:
    if isinstance(dims, Dims):
        return dims
    m, n = dims
    return Dims.of(m, n)


def make_spectrum(
    dims,
    raw: Iterable[float],
    sum_tolerance: float = DEFAULT_SUM_TOLERANCE,
    normalize: bool = False,
) -> Spectrum:
    """Validate ``raw`` eigenvalues in any order and return a sorted Spectrum.

    ``dims`` may be a :class:`Dims` or an ``(m, n)`` tuple in either order.
    Nothing is rescaled unless ``normalize=True``, in which case the values are
    divided by their sum first.
    """
    dims = _as_dims(dims)
    arr = np.asarray(list(raw), dtype=float)
    if arr.ndim != 1 or arr.size != dims.total:
        raise WrongLength(f"expected {dims.total} eigenvalues for {dims.m}x{dims.n}, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise NegativeEigenvalue("eigenvalues must be finite")
    if np.any(arr < -NEG_CLAMP):
        raise NegativeEigenvalue(f"eigenvalue {arr.min()!r} is below -{NEG_CLAMP:g}")
    arr = np.where(arr < 0, 0.0, arr)
    if normalize:
        total = arr.sum()
        if total <= 0:
            raise BadSum("cannot normalize a spectrum that sums to zero")
        arr = arr / total
    arr = np.sort(arr)[::-1]
    return Spectrum(dims, tuple(arr.tolist()), float(sum_tolerance))


def purity(s: Spectrum) -> float:
    """``tr(rho^2)``, the sum of squared eigenvalues."""
    v = s.as_array()
    return float(np.dot(v, v))


def max_mixed(dims) -> Spectrum:
    dims = _as_dims(dims)
    return Spectrum(dims, (1.0 / dims.total,) * dims.total)


def pure_state(dims) -> Spectrum:
    dims = _as_dims(dims)
    return Spectrum(dims, (1.0,) + (0.0,) * (dims.total - 1))


@dataclass(frozen=True)
class SpectrumEnsemble:
    """Recipe for a reproducible batch of flat-Dirichlet spectra."""

    dims: Dims
    seed: int
    count: int

    def __post_init__(self):
        if not isinstance(self.dims, Dims):
            object.__setattr__(self, "dims", _as_dims(self.dims))
        if int(self.count) < 1:
            raise ValueError(f"count must be at least 1, got {self.count}")
        if int(self.seed) < 0:
            raise ValueError("seed must be non-negative")


def raw_simplex_draws(ensemble: SpectrumEnsemble) -> np.ndarray:
    """Unsorted flat-Dirichlet rows, shape ``(count, m*n)``.

    Row ``i`` comes from its own generator seeded with ``(seed, i)``, so any slice
    of the ensemble can be regenerated independently.
    """
    d = ensemble.dims.total
    out = np.empty((ensemble.count, d))
    for i in range(ensemble.count):
        e = np.random.default_rng([ensemble.seed, i]).standard_exponential(d)
        out[i] = e / e.sum()
    return out


def sample_uniform_simplex(ensemble: SpectrumEnsemble) -> list:
    rows = -np.sort(-raw_simplex_draws(ensemble), axis=1)
    return [Spectrum(ensemble.dims, tuple(r.tolist()), 1e-9) for r in rows]


def spectra_matrix(spectra: Sequence[Spectrum]) -> np.ndarray:
    """Stack same-dims spectra into a ``(batch, m*n)`` array."""
    if not spectra:
        raise ValueError("need at least one spectrum")
    dims = {(s.dims.m, s.dims.n) for s in spectra}
    if len(dims) != 1:
        raise WrongDims(f"spectra have mixed dimensions {sorted(dims)}")
    return np.array([s.values for s in spectra], dtype=float)
