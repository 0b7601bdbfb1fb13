import numpy as np
import pytest
from hypothesis import given, strategies as st

from gmewit.lanczos import ConvergenceError, lanczos_lowest


def random_symmetric(n, rng):
    a = rng.standard_normal((n, n))
    return (a + a.T) / 2


@given(st.integers(0, 2**32 - 1), st.integers(5, 80))
def test_matches_dense_eigh(seed, n):
    rng = np.random.default_rng(seed)
    a = random_symmetric(n, rng)
    res = lanczos_lowest(lambda x: a @ x, n, seed=seed, krylov_dim=30, max_matvecs=5000)
    assert res.eigenvalue == pytest.approx(np.linalg.eigvalsh(a)[0], abs=1e-9)
    assert res.residual <= 1e-8
    assert np.linalg.norm(a @ res.vector - res.eigenvalue * res.vector) <= 1e-8


def test_ritz_values_decrease_within_cycle(rng):
    a = random_symmetric(200, rng)
    res = lanczos_lowest(lambda x: a @ x, 200, krylov_dim=40, max_matvecs=5000)
    assert res.restarts >= 1
    hist = np.array(res.ritz_history)
    # each cycle contributes krylov_dim steps plus one residual check outside the history
    for cycle in np.array_split(hist, np.arange(40, len(hist), 40)):
        assert np.all(np.diff(cycle) <= 1e-12)
    # restarts keep the Ritz vector, so the lowest value never goes back up either
    assert np.all(np.diff(hist) <= 1e-10)


def test_iteration_cap_raises(rng):
    a = random_symmetric(300, rng)
    with pytest.raises(ConvergenceError):
        lanczos_lowest(lambda x: a @ x, 300, krylov_dim=5, max_matvecs=20)


def test_deflation_gives_next_eigenvalue(rng):
    a = random_symmetric(60, rng)
    w, v = np.linalg.eigh(a)
    res = lanczos_lowest(lambda x: a @ x, 60, deflate=[v[:, 0]])
    assert res.eigenvalue == pytest.approx(w[1], abs=1e-9)
    assert abs(res.vector @ v[:, 0]) < 1e-10


def test_exact_invariant_subspace():
    # a start vector inside a 2-d eigenspace exhausts the Krylov space in two steps
    a = np.diag([-3.0, 1.0, 5.0, 7.0])
    res = lanczos_lowest(lambda x: a @ x, 4, v0=np.array([1.0, 1.0, 0, 0]))
    assert res.eigenvalue == pytest.approx(-3, abs=1e-12)
    assert res.matvecs <= 3


def test_start_vector_in_deflated_space_rejected():
    a = np.eye(3)
    with pytest.raises(ValueError):
        lanczos_lowest(lambda x: a @ x, 3, v0=np.array([1.0, 0, 0]), deflate=[np.array([1.0, 0, 0])])


def test_seed_reproducible(rng):
    a = random_symmetric(150, rng)
    r1 = lanczos_lowest(lambda x: a @ x, 150, seed=7, krylov_dim=30, max_matvecs=5000)
    r2 = lanczos_lowest(lambda x: a @ x, 150, seed=7, krylov_dim=30, max_matvecs=5000)
    assert r1.matvecs == r2.matvecs
    np.testing.assert_array_equal(r1.vector, r2.vector)
