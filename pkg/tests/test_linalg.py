import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from abssep.exceptions import IndexOutOfRange, NoConvergence
from abssep.linalg import (
    Tolerances,
    all_ones_quadratic,
    hermitian_min_eigenvalue,
    is_psd,
    jacobi_eigh,
    real_embedding,
    row_diagonally_dominant,
    sym_eigenvalues,
)
from abssep.matricization import build_lambda_sym, canonical_pairs
from abssep.oracle import partial_transpose
from abssep.spectrum import Dims


def test_identity_and_two_by_two():
    assert sym_eigenvalues(np.eye(3)).eigenvalues == (1.0, 1.0, 1.0)
    np.testing.assert_allclose(sym_eigenvalues([[1, 2], [2, 1]]).eigenvalues, (-1, 3), atol=1e-14)


def test_example1_matrices(ex1):
    # eigenvalues ordered matrix by matrix as the canonical pairs are
    first, second = (sym_eigenvalues(build_lambda_sym(ex1, op)).eigenvalues for op in canonical_pairs(3))
    np.testing.assert_allclose(first, (0.1510, 0.2122, 0.2435), atol=5e-4)
    np.testing.assert_allclose(second, (0.1521, 0.2222, 0.2623), atol=5e-4)
    # trace check pins the association: 2*(0.0961 + 0.0961 + 0.1111) = 0.6066
    assert sum(first) == pytest.approx(0.6066, abs=1e-12)


def test_is_psd_examples(ex2, ex1b):
    ok, lo = is_psd(build_lambda_sym(ex2, canonical_pairs(4)[0]))
    assert ok and lo == pytest.approx(0.0733, abs=5e-4)
    ok, lo = is_psd(build_lambda_sym(ex1b, canonical_pairs(3)[0]))
    assert not ok and lo == pytest.approx(-0.5916, abs=5e-4)
    assert is_psd(np.zeros((3, 3))) == (True, 0.0)


def test_is_psd_threshold_is_relative():
    a = np.diag([1.0, -5e-9])
    assert is_psd(a)[0]
    assert not is_psd(a, Tolerances(psd_rel=1e-10))[0]


def test_row_dominance():
    assert all(row_diagonally_dominant(np.eye(3), r) for r in range(3))
    assert not row_diagonally_dominant([[1, 2], [2, 1]], 0)
    with pytest.raises(IndexOutOfRange):
        row_diagonally_dominant(np.eye(2), 2)


def test_example2_first_row_dominant(ex2):
    lam = build_lambda_sym(ex2, canonical_pairs(4)[0])
    assert row_diagonally_dominant(lam, 0)
    assert lam[0, 0] == pytest.approx(0.0950) and np.abs(lam[0, 1:]).sum() == pytest.approx(0.0450)


def test_all_ones_quadratic(ex1b):
    assert all_ones_quadratic(np.eye(4)) == 4
    assert all_ones_quadratic([[1, -1], [-1, 1]]) == 0
    lam = build_lambda_sym(ex1b, canonical_pairs(3)[0])
    assert all_ones_quadratic(lam) < 0


def test_hermitian_examples():
    assert hermitian_min_eigenvalue(np.eye(2, dtype=complex)) == pytest.approx(1.0)
    assert hermitian_min_eigenvalue([[0, 1j], [-1j, 0]]) == pytest.approx(-1.0)


def test_bell_partial_transpose():
    psi = np.zeros(4)
    psi[0] = psi[3] = 1 / np.sqrt(2)
    rho = np.outer(psi, psi).astype(complex)
    assert hermitian_min_eigenvalue(partial_transpose(rho, Dims(2, 2))) == pytest.approx(-0.5, abs=1e-12)


def test_nonconvergence_is_reported():
    rng = np.random.default_rng(0)
    a = rng.standard_normal((6, 6))
    with pytest.raises(NoConvergence):
        jacobi_eigh(a + a.T, sweep_limit=1)


def test_rejects_asymmetric():
    with pytest.raises(ValueError):
        sym_eigenvalues([[1, 2], [0, 1]])


def test_eigenvectors_and_convergence_flag():
    rng = np.random.default_rng(4)
    a = rng.standard_normal((5, 5))
    a = a + a.T
    res = sym_eigenvalues(a, vectors=True)
    assert res.converged and res.iterations >= 1
    v, w = res.eigenvectors, np.array(res.eigenvalues)
    np.testing.assert_allclose(a @ v, v * w, atol=1e-12)
    np.testing.assert_allclose(v.T @ v, np.eye(5), atol=1e-12)


def test_stacks_match_lapack():
    rng = np.random.default_rng(7)
    a = rng.standard_normal((3, 40, 4, 4))
    a = a + np.swapaxes(a, -1, -2)
    w, _, _ = jacobi_eigh(a)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(a), atol=1e-12)


symmetric = st.integers(1, 8).flatmap(
    lambda d: arrays(np.float64, (d, d), elements=st.floats(-10, 10, allow_nan=False, allow_infinity=False))
).map(lambda a: (a + a.T) / 2)


@settings(max_examples=100, deadline=None)
@given(symmetric)
def test_trace_and_frobenius_preserved(a):
    w = np.array(sym_eigenvalues(a).eigenvalues)
    scale = max(1.0, np.abs(a).max())
    assert w.sum() == pytest.approx(np.trace(a), abs=1e-10 * scale * a.shape[0])
    assert (w ** 2).sum() == pytest.approx((a ** 2).sum(), abs=1e-10 * scale ** 2 * a.shape[0] ** 2)
    assert np.all(np.diff(w) >= 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_real_embedding_doubles_spectrum(seed):
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    h = z + z.conj().T
    w, _, _ = jacobi_eigh(real_embedding(h))
    np.testing.assert_allclose(w, np.repeat(np.linalg.eigvalsh(h), 2), atol=1e-10)
    assert hermitian_min_eigenvalue(h) == pytest.approx(np.linalg.eigvalsh(h)[0], abs=1e-10)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 6), st.integers(0, 10**6))
def test_dominant_rows_imply_psd(d, seed):
    rng = np.random.default_rng(seed)
    off = -rng.random((d, d))
    off = (off + off.T) / 2
    np.fill_diagonal(off, 0)
    a = off + np.diag(np.abs(off).sum(axis=1) + rng.random(d) * 0.1)
    assert all(row_diagonally_dominant(a, r) for r in range(d))
    assert is_psd(a)[0]


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 6), st.integers(0, 10**6))
def test_no_dominant_row_forces_nonpositive_sum(d, seed):
    rng = np.random.default_rng(seed)
    off = -rng.random((d, d)) - 0.01
    off = (off + off.T) / 2
    np.fill_diagonal(off, 0)
    a = off + np.diag(np.abs(off).sum(axis=1) * rng.uniform(0, 0.99, d))
    assert not any(row_diagonally_dominant(a, r) for r in range(d))
    assert all_ones_quadratic(a) <= 0
    assert not is_psd(a)[0]
