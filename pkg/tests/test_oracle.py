import numpy as np
import pytest

from abssep.criteria import exact_qutrit
from abssep.exceptions import DimensionMismatch, DimensionTooLarge, UnsupportedP
from abssep.oracle import (
    DensityMatrix,
    embed_diag,
    haar_unitary,
    partial_transpose,
    random_unitary_falsifier,
    x_witness,
)
from abssep.spectrum import Dims, make_spectrum, max_mixed, pure_state


def test_embed_diag(ex1):
    rho = embed_diag(ex1)
    assert rho.data.shape == (9, 9)
    np.testing.assert_array_equal(np.diag(rho.data).real, ex1.values)
    assert rho.trace == pytest.approx(0.9999, abs=1e-12)


def test_density_matrix_checks():
    with pytest.raises(DimensionMismatch):
        DensityMatrix(Dims(2, 2), np.eye(3) / 3)
    with pytest.raises(ValueError, match="Hermitian"):
        DensityMatrix(Dims(2, 2), np.diag([1, 0, 0, 0]) + np.triu(np.ones((4, 4)), 1) * 1j)
    with pytest.raises(ValueError, match="trace"):
        DensityMatrix(Dims(2, 2), np.eye(4) / 2)


@pytest.mark.parametrize("d", [1, 2, 5, 9])
def test_haar_is_unitary(d):
    u = haar_unitary(d, [3, d])
    np.testing.assert_allclose(u @ u.conj().T, np.eye(d), atol=1e-12)
    if d == 1:
        assert abs(abs(u[0, 0]) - 1) < 1e-15


def test_haar_entries_have_mean_square_one_over_d():
    d = 4
    u = np.stack([haar_unitary(d, [0, i]) for i in range(4000)])
    np.testing.assert_allclose(np.mean(np.abs(u) ** 2, axis=0), 1 / d, atol=0.02)
    # phase fixing removes the bias toward a positive real diagonal
    assert abs(np.mean(u[:, 0, 0].real)) < 0.02


def test_partial_transpose_moves_indices():
    m, n = 2, 3
    rng = np.random.default_rng(0)
    a = rng.standard_normal((6, 6))
    t = partial_transpose(a, Dims(m, n))
    for i in range(m):
        for j in range(n):
            for k in range(m):
                for l in range(n):
                    assert t[i * n + j, k * n + l] == a[i * n + l, k * n + j]
    np.testing.assert_array_equal(partial_transpose(t, Dims(m, n)), a)
    stack = np.stack([a, 2 * a])
    np.testing.assert_array_equal(partial_transpose(stack, Dims(m, n))[1], 2 * t)


def test_conjugation_keeps_spectrum(ex2):
    u = haar_unitary(16, 1)
    rho = u @ np.diag(ex2.as_array()) @ u.conj().T
    np.testing.assert_allclose(np.linalg.eigvalsh(rho)[::-1], ex2.values, atol=1e-12)


def test_falsifier_finds_nothing_for_example1(ex1):
    res = random_unitary_falsifier(ex1, trials=2000, seed=0)
    assert not res.found and res.worst[1] > 0
    assert res.to_dict()["found"] is False


def test_falsifier_breaks_pure_states():
    res = random_unitary_falsifier(pure_state((2, 2)), trials=2000, seed=0)
    assert res.found
    # a pure state's partial transpose can reach -1/2 at most
    assert -0.5 - 1e-12 <= res.worst[1] < -0.45
    assert random_unitary_falsifier(pure_state((2, 3)), trials=200, seed=4).found


def test_falsifier_is_chunk_independent(ex2b):
    a = random_unitary_falsifier(ex2b, trials=300, seed=5, chunk=7)
    b = random_unitary_falsifier(ex2b, trials=300, seed=5, chunk=300)
    assert a == b


def test_falsifier_refuses_large_dims():
    with pytest.raises(DimensionTooLarge):
        random_unitary_falsifier(max_mixed((6, 7)), trials=1)


def test_falsifier_stays_above_half_exact_minimum(ex1, ex1b):
    # the symmetric matrices carry 2*lambda on the diagonal, so half their
    # smallest eigenvalue bounds every partial-transpose eigenvalue on the orbit
    for s in (ex1, ex1b):
        lo = min(exact_qutrit(s).detail["min_eigenvalues"])
        assert random_unitary_falsifier(s, trials=500, seed=2).worst[1] >= lo / 2 - 1e-12
    pure = pure_state((2, 2))
    assert random_unitary_falsifier(pure, trials=2000, seed=0).worst[1] == pytest.approx(-0.5, abs=0.05)


def test_x_witness_examples(ex1, ex1b, ex2b):
    assert x_witness(ex1) is None
    w = x_witness(ex1b)
    assert w.compatible and w.matrix in (1, 2)
    assert w.eigen_value == pytest.approx(-0.5916, abs=5e-4)
    assert w.quadratic_value <= w.eigen_value + 1e-12
    assert np.all(np.diff(w.x) <= 0) and np.linalg.norm(w.x) == pytest.approx(1)
    w = x_witness(ex2b)
    assert w.quadratic_value < 0
    with pytest.raises(UnsupportedP):
        x_witness(max_mixed((5, 5)))


def _orbit_point_from_witness(s, x):
    """Rotate diag(lambda) against the partial transpose of the Schmidt projector.

    Pairing the largest eigenvalues with the most negative eigenvectors of
    W = (|psi><psi|)^T_B minimises <psi|rho^T_B|psi> over the unitary orbit.
    """
    m, n = s.dims.m, s.dims.n
    psi = np.zeros(m * n)
    for i, xi in enumerate(x):
        psi[i * n + i] = xi
    W = partial_transpose(np.outer(psi, psi), s.dims)
    w, vecs = np.linalg.eigh(W)
    rho = (vecs * s.as_array()) @ vecs.T
    return rho, psi, float(s.as_array() @ w)


@pytest.mark.parametrize("name", ["ex1b", "ex2b"])
def test_witness_builds_a_non_ppt_state(name, request):
    s = request.getfixturevalue(name)
    w = x_witness(s)
    rho, psi, value = _orbit_point_from_witness(s, np.array(w.x))
    np.testing.assert_allclose(np.linalg.eigvalsh(rho)[::-1], s.values, atol=1e-12)
    pt = partial_transpose(rho, s.dims)
    assert psi @ pt @ psi == pytest.approx(value, abs=1e-12)
    assert value == pytest.approx(w.quadratic_value / 2, abs=1e-12)
    assert np.linalg.eigvalsh(pt)[0] <= value + 1e-12 and value < 0


def test_witness_for_the_shortcut_counterexample():
    from test_criteria import SHORTCUT_COUNTEREXAMPLE

    s = make_spectrum((4, 4), SHORTCUT_COUNTEREXAMPLE, normalize=True)
    w = x_witness(s)
    rho, _, value = _orbit_point_from_witness(s, np.array(w.x))
    assert np.linalg.eigvalsh(partial_transpose(rho, s.dims))[0] <= value + 1e-12 and value < 0
