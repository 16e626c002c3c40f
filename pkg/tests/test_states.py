import numpy as np
import pytest

from cohwit import jsonio, states


def plus_projector():
    return np.full((2, 2), 0.5, dtype=complex)


def test_validate_accepts_maximally_mixed():
    rho = states.validate(np.eye(2) / 2)
    assert rho.dim == 2


def test_validate_rejects_bad_trace():
    with pytest.raises(ValueError, match="trace"):
        states.validate(np.diag([0.6, 0.6]))


def test_validate_rejects_indefinite_matrix():
    # eigenvalues 0.5 +/- 0.6, so the smallest is -0.1
    with pytest.raises(ValueError, match="positive semidefinite") as err:
        states.validate(np.array([[0.5, 0.6], [0.6, 0.5]]))
    assert "-0.1" in str(err.value)


def test_validate_rejects_non_hermitian():
    with pytest.raises(ValueError, match="hermitian"):
        states.validate(np.array([[0.5, 0.5], [0.0, 0.5]]))


def test_validate_rejects_non_square():
    with pytest.raises(ValueError, match="square"):
        states.validate(np.ones((2, 3)) / 6)


def test_validate_rejects_non_finite():
    m = np.eye(2, dtype=complex) / 2
    m[0, 1] = np.nan
    with pytest.raises(ValueError, match="finite"):
        states.validate(m)


def test_dephase_plus_state():
    rho = states.validate(plus_projector())
    out = states.dephase(rho)
    assert np.array_equal(out.matrix, np.eye(2, dtype=complex) / 2)


def test_dephase_fixes_diagonal_states():
    rho = states.validate(np.diag([0.3, 0.7]))
    assert np.array_equal(states.dephase(rho).matrix, rho.matrix)


def test_dephase_idempotent_exactly():
    rho = states.random_density(4, 4, seed=5)
    once = states.dephase(rho)
    twice = states.dephase(once)
    assert np.array_equal(once.matrix, twice.matrix)


def test_dephase_preserves_trace_exactly():
    rho = states.random_density(5, 3, seed=8)
    assert np.trace(states.dephase(rho).matrix).real == np.trace(rho.matrix).real


def test_dephase_output_is_incoherent():
    rho = states.random_density(6, 6, seed=9)
    inc = states.diagonal_part(states.dephase(rho))
    p = inc.probabilities
    assert np.all(p >= -1e-10) and np.all(p <= 1 + 1e-10)
    assert abs(p.sum() - 1) < 1e-10


def test_maximally_coherent_small_dims():
    assert np.allclose(states.maximally_coherent(2).amplitudes, np.ones(2) / np.sqrt(2))
    assert np.allclose(states.maximally_coherent(3).amplitudes, np.ones(3) / np.sqrt(3))


def test_maximally_coherent_self_overlap():
    psi = states.maximally_coherent(5)
    assert abs(psi.overlap(psi.to_density()) - 1.0) < 1e-12


def test_maximally_coherent_rejects_zero_dim():
    with pytest.raises(ValueError):
        states.maximally_coherent(0)


def test_bloch_origin_is_maximally_mixed():
    rho = states.bloch_to_density(states.BlochVector(0, 0, 0))
    assert np.array_equal(rho.matrix, np.eye(2, dtype=complex) / 2)


def test_bloch_x_axis_is_plus_state():
    rho = states.bloch_to_density(states.BlochVector(1, 0, 0))
    assert np.allclose(rho.matrix, plus_projector(), atol=1e-15)


def test_bloch_round_trip():
    rng = np.random.default_rng(21)
    for _ in range(50):
        v = rng.standard_normal(3)
        v *= rng.uniform(0, 1) / np.linalg.norm(v)
        b = states.BlochVector(*v)
        back = states.density_to_bloch(states.bloch_to_density(b))
        assert max(abs(back.s1 - b.s1), abs(back.s2 - b.s2), abs(back.s3 - b.s3)) < 1e-12


def test_bloch_rejects_outside_ball():
    with pytest.raises(ValueError, match="unit ball"):
        states.BlochVector(1.0, 0.1, 0.0)


def test_random_density_is_valid_and_deterministic():
    a = states.random_density(4, 4, seed=42)
    b = states.random_density(4, 4, seed=42)
    assert np.array_equal(a.matrix, b.matrix)
    states.validate(a.matrix)  # passes the full validator again


def test_random_density_rank_one_purity():
    rho = states.random_density(4, 1, seed=3)
    purity = np.trace(rho.matrix @ rho.matrix).real
    assert abs(purity - 1.0) < 1e-10


def test_random_density_rejects_bad_rank():
    with pytest.raises(ValueError, match="rank"):
        states.random_density(3, 4, seed=0)


def test_density_eigenvalues_within_unit_range():
    from cohwit import linalg

    for seed in range(5):
        rho = states.random_density(5, 2 + seed % 4, seed=seed)
        lam = linalg.hermitian_eig(rho.matrix).eigenvalues
        assert lam[0] >= -1e-8 and lam[-1] <= 1 + 1e-8


def test_state_json_round_trip(tmp_path):
    rho = states.random_density(3, 2, seed=14)
    path = tmp_path / "state.json"
    states.save_state(path, rho)
    back = states.load_state(path)
    assert np.allclose(back.matrix, rho.matrix, atol=1e-11)


def test_state_json_rejects_nan_literal():
    text = '{"dim": 2, "matrix": [[[0.5, 0], [NaN, 0]], [[0, 0], [0.5, 0]]]}'
    with pytest.raises(ValueError, match="non-finite"):
        states.state_from_dict(jsonio.loads_strict(text))


def test_state_json_rejects_shape_mismatch():
    with pytest.raises(ValueError, match="matrix"):
        states.state_from_dict({"dim": 2, "matrix": [[[1.0, 0.0]]]})
