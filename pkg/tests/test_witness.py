import math

import numpy as np
import pytest

from cohwit import states, witness


def test_alpha_of_two_level_example():
    psi = states.PureState([math.sqrt(0.8), math.sqrt(0.2)])
    assert abs(witness.alpha_of(psi) - 0.8) < 1e-15


@pytest.mark.parametrize("d", [2, 3, 4, 7])
def test_alpha_of_maximally_coherent(d):
    assert abs(witness.alpha_of(states.maximally_coherent(d)) - 1.0 / d) < 1e-12


def test_alpha_of_basis_state():
    assert witness.alpha_of(states.basis_state(0, 3)) == 1.0


def test_build_witness_flat_target_matches_explicit_matrix():
    psi = states.maximally_coherent(2)
    w = witness.build_witness(psi)
    expected = np.eye(2, dtype=complex) / 2 - np.full((2, 2), 0.5)
    assert np.allclose(witness.witness_matrix(w), expected, atol=1e-14)


def test_basis_state_witness_detects_nothing():
    w = witness.build_witness(states.basis_state(0, 2))
    for seed in range(20):
        rho = states.random_density(2, 2, seed=seed)
        assert witness.evaluate(w, rho) >= -1e-12


def test_witness_nonnegative_on_random_incoherent_states():
    psi = states.PureState([math.sqrt(0.8), math.sqrt(0.2)])
    w = witness.build_witness(psi)
    for seed in range(100):
        delta = states.random_incoherent(2, seed=seed).to_density()
        assert witness.evaluate(w, delta) >= -1e-12


def test_evaluate_flat_witness_on_its_own_target():
    psi = states.maximally_coherent(2)
    w = witness.build_witness(psi)
    assert abs(witness.evaluate(w, psi.to_density()) - (-0.5)) < 1e-12


def test_evaluate_zero_on_maximally_mixed():
    for d in (2, 3, 5):
        w = witness.build_witness(states.maximally_coherent(d))
        rho = states.validate(np.eye(d) / d)
        assert abs(witness.evaluate(w, rho)) < 1e-12


def test_evaluate_own_target_never_positive():
    rng = np.random.default_rng(4)
    for _ in range(10):
        raw = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        psi = states.PureState(raw / np.linalg.norm(raw))
        w = witness.build_witness(psi)
        assert witness.evaluate(w, psi.to_density()) <= 1e-12


def test_evaluate_dimension_mismatch():
    w = witness.build_witness(states.maximally_coherent(2))
    with pytest.raises(ValueError, match="dimension mismatch"):
        witness.evaluate(w, states.validate(np.eye(3) / 3))


def test_rfcw_state_examples():
    plus = witness.rfcw_state((1,))
    assert np.allclose(plus.amplitudes, np.array([1, 1]) / np.sqrt(2), atol=1e-15)
    minus = witness.rfcw_state((-1,))
    assert np.allclose(minus.amplitudes, np.array([1, -1]) / np.sqrt(2), atol=1e-15)
    mid = witness.rfcw_state((-1, 1))
    assert np.allclose(mid.amplitudes, np.array([1, -1, 1]) / np.sqrt(3), atol=1e-15)


def test_rfcw_state_rejects_bad_entries():
    with pytest.raises(ValueError, match="sign vector"):
        witness.rfcw_state((1, 0))


def test_witness_vertex_validity():
    rng = np.random.default_rng(6)
    for _ in range(20):
        raw = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        w = witness.build_witness(states.PureState(raw / np.linalg.norm(raw)))
        for i in range(5):
            vertex = states.basis_state(i, 5).to_density()
            assert witness.evaluate(w, vertex) >= -1e-12


def test_rfcw_vertex_expectation_is_exactly_zero():
    for a in [(1,), (-1,), (1, -1), (-1, -1, 1)]:
        w = witness.rfcw_witness(a)
        d = len(a) + 1
        for i in range(d):
            vertex = states.basis_state(i, d).to_density()
            assert abs(witness.evaluate(w, vertex)) < 1e-14


def test_evaluate_is_linear_in_the_state():
    rng = np.random.default_rng(8)
    w = witness.rfcw_witness((1, -1, 1))
    for seed in range(10):
        rho1 = states.random_density(4, 4, seed=100 + seed)
        rho2 = states.random_density(4, 2, seed=200 + seed)
        p = rng.uniform(0, 1)
        mix = states.validate(p * rho1.matrix + (1 - p) * rho2.matrix)
        lhs = witness.evaluate(w, mix)
        rhs = p * witness.evaluate(w, rho1) + (1 - p) * witness.evaluate(w, rho2)
        assert abs(lhs - rhs) < 1e-12


def test_complex_targets_are_accepted():
    raw = np.array([1.0, 1.0j]) / np.sqrt(2)
    w = witness.build_witness(states.PureState(raw))
    assert abs(w.alpha - 0.5) < 1e-12


def test_witness_alpha_below_target_max_is_rejected():
    with pytest.raises(ValueError, match="alpha"):
        witness.FidelityWitness(0.5, states.PureState([math.sqrt(0.8), math.sqrt(0.2)]))


def test_witness_json_round_trip():
    w = witness.build_witness(states.PureState([math.sqrt(0.8), math.sqrt(0.2)]))
    obj = witness.witness_to_dict(w)
    back = witness.witness_from_dict(obj)
    assert abs(back.alpha - w.alpha) < 1e-11
    assert np.allclose(back.target.amplitudes, w.target.amplitudes, atol=1e-11)
