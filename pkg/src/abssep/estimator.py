"""scikit-learn front end.

Rows of ``X`` are eigenvalue spectra (any order). The estimator has nothing to
learn, so ``fit`` only validates shapes and records the label set; ``predict``
returns verdict strings and ``transform`` returns the criterion margins as
features.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .criteria import EXACT_NAMES, VerdictKind, evaluate_batch
from .exceptions import BadSum, InternalInconsistency, NegativeEigenvalue, WrongLength
from .linalg import Tolerances
from .spectrum import NEG_CLAMP, Dims


def check_spectra(X, dims: Dims, sum_tolerance: float = 1e-6, normalize: bool = False) -> np.ndarray:
    """Validate a 2-D array of spectra and return it sorted descending per row.

    Mirrors :func:`abssep.spectrum.make_spectrum` row by row.
    """
    X = check_array(X, dtype=np.float64, ensure_2d=True, copy=True)
    if X.shape[1] != dims.total:
        raise WrongLength(f"each row needs {dims.total} eigenvalues, got {X.shape[1]}")
    if np.any(X < -NEG_CLAMP):
        r = int(np.argwhere(X < -NEG_CLAMP)[0, 0])
        raise NegativeEigenvalue(f"row {r} has an eigenvalue below -{NEG_CLAMP:g}")
    X[X < 0] = 0.0
    sums = X.sum(axis=1)
    if normalize:
        if np.any(sums <= 0):
            raise BadSum("cannot normalize a row that sums to zero")
        X /= sums[:, None]
    elif np.any(np.abs(sums - 1.0) > sum_tolerance):
        r = int(np.argmax(np.abs(sums - 1.0)))
        raise BadSum(f"row {r} sums to {sums[r]!r}")
    return -np.sort(-X, axis=1)


class SpectralPPTClassifier(ClassifierMixin, TransformerMixin, BaseEstimator):
    """Label spectra as absolutely PPT, not absolutely PPT, or undecided.

    Parameters
    ----------
    m, n : int
        Local dimensions; swapped automatically if ``m > n``.
    psd_abs, psd_rel : float
        Absolute and relative parts of the tolerance, see :class:`Tolerances`.
    sum_tolerance : float
        Allowed deviation of each row sum from 1.
    normalize : bool
        Divide rows by their sums instead of rejecting them.
    strict : bool
        Raise :class:`InternalInconsistency` when criteria contradict each other.

    Examples
    --------
    >>> clf = SpectralPPTClassifier(m=2, n=2).fit([[0.25] * 4])
    >>> clf.predict([[0.25] * 4, [1, 0, 0, 0]]).tolist()
    ['absolutely-ppt-exact', 'not-absolutely-ppt']
    """

    def __init__(self, m=2, n=2, psd_abs=1e-10, psd_rel=1e-8, sum_tolerance=1e-6, normalize=False, strict=True):
        self.m = m
        self.n = n
        self.psd_abs = psd_abs
        self.psd_rel = psd_rel
        self.sum_tolerance = sum_tolerance
        self.normalize = normalize
        self.strict = strict

    def _prepare(self):
        dims = Dims.of(self.m, self.n)
        tol = Tolerances(psd_abs=self.psd_abs, psd_rel=self.psd_rel)
        return dims, tol

    def fit(self, X, y=None):
        dims, _ = self._prepare()
        check_spectra(X, dims, self.sum_tolerance, self.normalize)
        self.dims_ = dims
        self.n_features_in_ = dims.total
        self.classes_ = np.array([k.value for k in VerdictKind])
        return self

    def _evaluate(self, X):
        check_is_fitted(self, "dims_")
        _, tol = self._prepare()
        V = check_spectra(X, self.dims_, self.sum_tolerance, self.normalize)
        ev = evaluate_batch(V, self.dims_, tol)
        if self.strict and ev.conflicts.any():
            i = int(np.flatnonzero(ev.conflicts)[0])
            raise InternalInconsistency(f"criteria disagree on row {i}")
        return ev

    def predict(self, X):
        ev = self._evaluate(X)
        return self.classes_[ev.verdict_codes]

    def _feature_names(self):
        dims = self.dims_
        names = []
        if dims.p in EXACT_NAMES:
            names.append(EXACT_NAMES[dims.p])
        names += ["sufficient_sum", "sufficient_two_smallest", "jivulescu_sum3", "gurvits_ball"]
        if dims.m >= 3:
            names.append("not_abs_general")
        if dims.m == 4:
            names.append("not_abs_ququart")
        return names

    def transform(self, X):
        """Criterion margins, one column per name in :meth:`get_feature_names_out`."""
        ev = self._evaluate(X)
        return np.column_stack([ev.margins[name] for name in self._feature_names()])

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "dims_")
        return np.array(self._feature_names(), dtype=object)

    def decision_function(self, X):
        """Signed distance from the absolute-PPT boundary where one is known.

        The exact margin for ``p <= 4``; otherwise the best sufficient-yes margin,
        or minus the best sufficient-no margin when that one fires.
        """
        ev = self._evaluate(X)
        p = self.dims_.p
        if p in EXACT_NAMES:
            return ev.margins[EXACT_NAMES[p]]
        yes = np.maximum(ev.margins["gurvits_ball"], ev.margins["sufficient_sum"])
        no = ev.margins["not_abs_general"]
        return np.where(no > ev.thr, -no, yes)
