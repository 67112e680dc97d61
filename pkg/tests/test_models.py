import math

import numpy as np
import pytest

from discspec.errors import DomainError
from discspec.models import (GridSpec, ModelTriple, PotentialSpec, build_abstract_model,
                             build_laplacian, build_potential, build_schrodinger_model,
                             compute_omega0, default_map_parameter, grid_points)

from conftest import random_complex


def test_laplacian_1d_spectrum():
    L = build_laplacian(GridSpec(1, 3, 1.0))
    ref = [2 - 2 * math.cos(k * math.pi / 4) for k in (1, 2, 3)]
    np.testing.assert_allclose(np.linalg.eigvalsh(L), ref, atol=1e-14)
    np.testing.assert_allclose(ref, [2 - math.sqrt(2), 2, 2 + math.sqrt(2)], atol=1e-14)


def test_laplacian_2d_is_kronecker_sum():
    g1 = GridSpec(1, 2, 0.7)
    w1 = np.linalg.eigvalsh(build_laplacian(g1))
    L2 = build_laplacian(GridSpec(2, 2, 0.7))
    assert L2.shape == (4, 4)
    ref = sorted(a + b for a in w1 for b in w1)
    np.testing.assert_allclose(np.linalg.eigvalsh(L2), ref, atol=1e-12)


@pytest.mark.parametrize("g", [GridSpec(1, 10, 0.3), GridSpec(2, 6, 0.5), GridSpec(3, 4, 1.0)])
def test_laplacian_symmetric_nonnegative(g):
    L = build_laplacian(g)
    assert np.array_equal(L, L.T)
    assert np.linalg.eigvalsh(L)[0] >= -1e-10


def test_laplacian_dimension_guard():
    with pytest.raises(DomainError):
        build_laplacian(GridSpec(3, 17, 0.1))


def test_grid_rejects_bad_spec():
    with pytest.raises(DomainError):
        GridSpec(4, 3, 1.0)
    with pytest.raises(DomainError):
        GridSpec(2, 1, 1.0)


def test_grid_points_cell_centred():
    x = grid_points(GridSpec(1, 4, 0.5))
    np.testing.assert_allclose(x[:, 0], [-0.75, -0.25, 0.25, 0.75])


def test_potential_zero_and_constant():
    V, norm = build_potential(GridSpec(1, 5, 1.0), PotentialSpec("gaussian_complex", 0j), 2)
    assert not V.any() and norm == 0
    c = 2 - 1j
    table = tuple([c] * 7)
    V, norm = build_potential(GridSpec(1, 7, 1.0), PotentialSpec("custom_table", table=table), 3)
    assert norm == pytest.approx(abs(c) * 7 ** (1 / 3), rel=1e-14)
    np.testing.assert_array_equal(np.diag(V), table)


def test_gaussian_norm_converges_to_continuum():
    # ||A exp(-|x|^2 / (2 w^2))||_p^p over R^2 = |A|^p 2 pi w^2 / p
    A, w, p = -3 + 4j, 0.8, 2.0
    exact = abs(A) ** p * 2 * math.pi * w ** 2 / p
    g = GridSpec(2, 48, 0.125)
    _, norm = build_potential(g, PotentialSpec("gaussian_complex", A, w), p)
    assert norm ** p == pytest.approx(exact, rel=1e-6)


def test_custom_table_size_checked():
    with pytest.raises(DomainError):
        build_potential(GridSpec(1, 4, 1.0), PotentialSpec("custom_table", table=(1, 2)))


def test_potential_non_finite_rejected():
    with pytest.raises(DomainError):
        build_potential(GridSpec(1, 2, 1.0), PotentialSpec("custom_table", table=(1, np.inf)))


def test_stretched_exponential_tail_ordering():
    x = np.array([[5.0], [10.0], [20.0]])
    slow = np.abs(PotentialSpec("pavlov_decay", 1.0, decay_power=0.4).evaluate(x))
    fast = np.abs(PotentialSpec("pavlov_decay", 1.0, decay_power=1.0).evaluate(x))
    assert np.all(slow > fast)
    assert np.all(np.diff(np.log(slow)) > np.diff(np.log(fast)))


def test_omega0_examples(rng):
    assert compute_omega0(np.array([[-2.0]])).omega0 == 2
    B = random_complex(rng, (4, 4))
    assert compute_omega0(B @ B.conj().T + 1j * np.eye(4)).omega0 == 0


def test_omega0_certifies_half_plane(rng):
    H = random_complex(rng, (8, 8))
    res = compute_omega0(H)
    f = res.witness
    assert (f.conj() @ H @ f).real >= -res.omega0 - 1e-10
    for _ in range(1000):
        f = random_complex(rng, 8)
        f /= np.linalg.norm(f)
        assert (f.conj() @ H @ f).real + res.omega0 >= -1e-9


def test_abstract_model_deterministic():
    a = build_abstract_model(42, 10, 1.0)
    b = build_abstract_model(42, 10, 1.0)
    assert a.H0.tobytes() == b.H0.tobytes() and a.M.tobytes() == b.M.tobytes()
    assert build_abstract_model(43, 10, 1.0).M.tobytes() != a.M.tobytes()


def test_abstract_model_zero_perturbation():
    m = build_abstract_model(1, 6, 0.0)
    assert np.array_equal(m.H, m.H0)
    assert m.omega0 == 0


def test_abstract_model_invariants():
    for seed in range(50):
        m = build_abstract_model(seed, 12, 1.0)
        assert m.check() == []
        assert np.linalg.norm(m.M, 2) <= 1.0 + 1e-12
        assert np.array_equal(m.H, m.H0 + m.M)
        h0 = np.diag(m.H0).real
        assert np.all((0 <= h0) & (h0 <= 10))
        assert m.a ** 2 == pytest.approx(1.5 * (m.omega0 + 1))


def test_model_check_flags_violations():
    m = ModelTriple(np.diag([1.0, 2.0]), np.diag([-3.0, 0.0]), 1.0, 2)
    assert "need a^2 > omega0" in m.check()
    m = ModelTriple(np.array([[0, 1], [0, 0]]), np.zeros((2, 2)), 1.0, 2)
    assert "H0 is not selfadjoint" in m.check()


def test_default_map_parameter():
    assert default_map_parameter(0) ** 2 == pytest.approx(1.5)
    for w in (0.0, 0.3, 7.0, 1e4):
        assert default_map_parameter(w) ** 2 > w


def test_schrodinger_model():
    g = GridSpec(2, 6, 0.5)
    model, norm = build_schrodinger_model(g, PotentialSpec("gaussian_complex", 2j, 1.0), 2)
    assert model.check() == []
    assert norm > 0 and model.dim == 36
