import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abssep.exceptions import BadSum, NegativeEigenvalue, WrongDims, WrongLength
from abssep.fixtures import get_fixture
from abssep.spectrum import (
    Dims,
    Spectrum,
    SpectrumEnsemble,
    make_spectrum,
    max_mixed,
    pure_state,
    purity,
    raw_simplex_draws,
    sample_uniform_simplex,
)

EX1 = get_fixture("example1").eigenvalues


def test_dims_derived_sizes():
    d = Dims(3, 5)
    assert (d.p, d.total, d.p_plus, d.p_minus) == (3, 15, 6, 3)
    assert d.p_plus + d.p_minus == d.p ** 2


def test_dims_auto_swap_sets_flag():
    d = Dims.of(5, 3)
    assert (d.m, d.n, d.swapped) == (3, 5, True)
    assert not Dims.of(3, 5).swapped
    with pytest.raises(WrongDims):
        Dims(5, 3)


@pytest.mark.parametrize("m,n", [(1, 3), (0, 0), (2.0, 3)])
def test_dims_rejects_bad_values(m, n):
    with pytest.raises(WrongDims):
        Dims(m, n)


def test_make_spectrum_sorts_shuffled_input():
    raw = list(EX1)
    np.random.default_rng(3).shuffle(raw)
    s = make_spectrum((3, 3), raw, sum_tolerance=2e-3)
    assert s.values == (0.1336, 0.1336, 0.1111, 0.1111, 0.1111, 0.1111, 0.0961, 0.0961, 0.0961)


def test_make_spectrum_maximally_mixed():
    assert make_spectrum((2, 2), [0.25] * 4) == max_mixed((2, 2))


def test_bad_sum_rejected_without_renormalizing():
    with pytest.raises(BadSum):
        make_spectrum((2, 2), [0.5] * 4)
    s = make_spectrum((2, 2), [0.5] * 4, normalize=True)
    assert s.values == (0.25,) * 4


def test_wrong_length_and_negative():
    with pytest.raises(WrongLength):
        make_spectrum((2, 2), [1.0, 0.0])
    with pytest.raises(NegativeEigenvalue):
        make_spectrum((2, 2), [1.1, 0.0, 0.0, -0.1])


def test_tiny_negative_is_clamped():
    s = make_spectrum((2, 2), [1.0, 0.0, 0.0, -5e-13])
    assert s.values[-1] == 0.0


def test_example1_default_tolerance_is_too_strict():
    # rounded to four decimals, the values sum to 0.9999
    with pytest.raises(BadSum):
        make_spectrum((3, 3), EX1)


def test_purity_examples():
    assert purity(max_mixed((3, 3))) == pytest.approx(1 / 9)
    assert purity(pure_state((2, 2))) == 1.0
    s = make_spectrum((3, 3), EX1, 2e-3)
    direct = sum(v * v for v in EX1)
    assert purity(s) == pytest.approx(direct, abs=1e-15)
    assert 1 / 9 <= purity(s) <= 1


def test_max_mixed_entries():
    s = max_mixed((3, 4))
    assert len(s) == 12 and set(s.values) == {1 / 12}
    assert purity(s) == pytest.approx(1 / 12)


def test_one_based_access():
    s = make_spectrum((2, 2), [0.4, 0.3, 0.2, 0.1])
    assert s.lam(1) == 0.4 and s.lam(4) == 0.1
    with pytest.raises(IndexError):
        s.lam(0)


def test_spectrum_is_frozen():
    s = max_mixed((2, 2))
    with pytest.raises(AttributeError):
        s.values = (1, 0, 0, 0)


def test_constructor_rechecks_order():
    with pytest.raises(ValueError):
        Spectrum(Dims(2, 2), (0.1, 0.2, 0.3, 0.4))


def test_samples_validate_and_are_deterministic():
    ens = SpectrumEnsemble(Dims(2, 2), seed=11, count=1000)
    a = sample_uniform_simplex(ens)
    b = sample_uniform_simplex(ens)
    assert a == b
    for s in a:
        make_spectrum((2, 2), s.values, sum_tolerance=1e-9)


def test_item_stream_depends_only_on_index():
    big = raw_simplex_draws(SpectrumEnsemble(Dims(2, 3), 5, 20))
    small = raw_simplex_draws(SpectrumEnsemble(Dims(2, 3), 5, 7))
    np.testing.assert_array_equal(big[:7], small)


def test_flat_dirichlet_mean_is_uniform():
    dims = Dims(2, 2)
    draws = raw_simplex_draws(SpectrumEnsemble(dims, 2024, 100_000))
    mean = draws.mean(axis=0)
    # each coordinate is Beta(1, N-1): variance (N-1) / (N^2 (N+1))
    N = dims.total
    se = np.sqrt((N - 1) / (N * N * (N + 1)) / draws.shape[0])
    assert np.all(np.abs(mean - 1 / N) <= 3 * se)


def test_ensemble_rejects_empty():
    with pytest.raises(ValueError):
        SpectrumEnsemble(Dims(2, 2), 0, 0)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(0.0, 1.0), min_size=6, max_size=6).filter(lambda v: sum(v) > 1e-3), st.randoms())
def test_permutation_invariance(raw, rnd):
    shuffled = list(raw)
    rnd.shuffle(shuffled)
    a = make_spectrum((2, 3), raw, normalize=True)
    b = make_spectrum((2, 3), shuffled, normalize=True)
    np.testing.assert_allclose(a.values, b.values, rtol=0, atol=1e-15)
    assert all(x >= y for x, y in zip(a.values, a.values[1:]))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(1e-6, 1.0), min_size=9, max_size=9))
def test_purity_minimized_by_uniform(raw):
    s = make_spectrum((3, 3), raw, normalize=True)
    assert purity(s) >= 1 / 9 - 1e-12
    if np.ptp(s.values) > 1e-6:
        assert purity(s) > 1 / 9
