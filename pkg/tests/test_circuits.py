import numpy as np
import pytest

from cohwit import circuits, faithful


def sdu(k, signs):
    return circuits.SignDiagonalUnitary(k, signs)


def random_sign_pattern(rng, k):
    signs = rng.choice([1, -1], size=1 << k)
    signs[0] = 1
    return sdu(k, signs)


def test_single_qubit_z():
    c = circuits.synthesize(sdu(1, (1, -1)))
    assert len(c.gates) == 1
    gate = c.gates[0]
    assert gate.action == "Z" and gate.target == 0 and gate.controls == ()
    assert np.array_equal(circuits.to_matrix(c), np.diag([1, -1]).astype(complex))


def test_two_qubit_first_generator():
    # flips only index 01: control q0=0, Z on q1
    c = circuits.synthesize(sdu(2, (1, -1, 1, 1)))
    assert len(c.gates) == 1
    gate = c.gates[0]
    assert gate.controls == ((0, 0),) and gate.target == 1 and gate.action == "Z"
    assert np.array_equal(circuits.to_matrix(c), np.diag([1, -1, 1, 1]).astype(complex))


def test_two_qubit_second_generator():
    # flips only index 10: control q0=1, Z0 on q1
    c = circuits.synthesize(sdu(2, (1, 1, -1, 1)))
    assert len(c.gates) == 1
    gate = c.gates[0]
    assert gate.controls == ((0, 1),) and gate.target == 1 and gate.action == "Z0"
    assert np.array_equal(circuits.to_matrix(c), np.diag([1, 1, -1, 1]).astype(complex))


def test_two_qubit_triple_flip():
    c = circuits.synthesize(sdu(2, (1, -1, -1, -1)))
    assert len(c.gates) == 3
    assert np.array_equal(circuits.to_matrix(c), np.diag([1, -1, -1, -1]).astype(complex))


def test_empty_circuit_is_identity():
    c = circuits.Circuit(qubits=2, gates=())
    assert np.array_equal(circuits.to_matrix(c), np.eye(4, dtype=complex))


def test_synthesis_round_trip_random_patterns():
    rng = np.random.default_rng(42)
    for _ in range(100):
        k = int(rng.integers(1, 5))
        u = random_sign_pattern(rng, k)
        c = circuits.synthesize(u)
        assert np.array_equal(np.diag(circuits.to_matrix(c)).real, np.array(u.signs, dtype=float))
        assert len(c.gates) == sum(1 for s in u.signs if s == -1)


def test_all_k2_patterns_exact():
    for bits in range(8):
        signs = [1] + [1 - 2 * ((bits >> (2 - j)) & 1) for j in range(3)]
        u = sdu(2, signs)
        c = circuits.synthesize(u)
        assert np.array_equal(np.diag(circuits.to_matrix(c)).real, np.array(signs, dtype=float))


def test_circuit_matrix_is_unitary_involution():
    rng = np.random.default_rng(43)
    u = random_sign_pattern(rng, 3)
    m = circuits.to_matrix(circuits.synthesize(u))
    assert np.array_equal(m @ m.conj().T, np.eye(8, dtype=complex))


def test_apply_maps_flat_state_to_signed_state():
    c = circuits.synthesize(sdu(2, (1, -1, 1, 1)))
    flat = np.full(4, 0.5, dtype=complex)
    out = circuits.apply(c, flat)
    assert np.array_equal(out, np.array([1, -1, 1, 1], dtype=complex) / 2)


def test_apply_twice_restores_state():
    rng = np.random.default_rng(44)
    u = random_sign_pattern(rng, 3)
    c = circuits.synthesize(u)
    vec = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    vec /= np.linalg.norm(vec)
    assert np.array_equal(circuits.apply(c, circuits.apply(c, vec)), vec)


def test_apply_matches_matrix_action():
    rng = np.random.default_rng(45)
    for _ in range(10):
        k = int(rng.integers(1, 5))
        u = random_sign_pattern(rng, k)
        c = circuits.synthesize(u)
        vec = rng.standard_normal(1 << k) + 1j * rng.standard_normal(1 << k)
        vec /= np.linalg.norm(vec)
        diff = np.abs(circuits.apply(c, vec) - circuits.to_matrix(c) @ vec).max()
        assert diff < 1e-14


def test_apply_preserves_norm_exactly():
    rng = np.random.default_rng(46)
    u = random_sign_pattern(rng, 4)
    c = circuits.synthesize(u)
    vec = rng.standard_normal(16) + 1j * rng.standard_normal(16)
    vec /= np.linalg.norm(vec)
    out = circuits.apply(c, vec)
    assert float(np.vdot(out, out).real) == float(np.vdot(vec, vec).real)


def test_apply_rejects_wrong_length():
    c = circuits.synthesize(sdu(2, (1, -1, 1, 1)))
    with pytest.raises(ValueError, match="length"):
        circuits.apply(c, np.ones(3) / np.sqrt(3))


def test_rejects_leading_minus():
    with pytest.raises(ValueError, match="leading"):
        sdu(1, (-1, 1))


def test_generator_u11_k2():
    gens = circuits.standard_generators(2)
    assert gens["U_11"].signs == (1, -1, 1, 1)
    assert gens["U_12"].signs == (1, 1, -1, 1)
    assert gens["U_13"].signs == (1, 1, 1, -1)
    assert gens["U_31"].signs == (1, -1, -1, -1)


def test_generator_u11_k3_flips_only_index_one():
    gens = circuits.standard_generators(3)
    signs = gens["U_11"].signs
    assert signs[1] == -1
    assert all(s == 1 for i, s in enumerate(signs) if i != 1)
    # realized with every control pinned to zero and a Z on the last qubit
    c = circuits.synthesize(gens["U_11"])
    assert c.gates == (circuits.Gate(controls=((0, 0), (1, 0)), target=2, action="Z"),)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_generators_match_reduced_family(k):
    d = 1 << k
    gens = circuits.standard_generators(k)
    assert len(gens) == d * (d - 1) // 2
    produced = [u.sign_vector() for u in gens.values()]
    assert produced == faithful.reduced_family(d)


def test_text_format_round_trip():
    rng = np.random.default_rng(47)
    for _ in range(20):
        k = int(rng.integers(1, 5))
        u = random_sign_pattern(rng, k)
        c = circuits.synthesize(u)
        text = circuits.format_circuit(c)
        back = circuits.parse_circuit(text)
        assert back == c
        assert circuits.format_circuit(back) == text


def test_text_format_single_qubit_gate_line():
    c = circuits.synthesize(sdu(1, (1, -1)))
    assert circuits.format_circuit(c) == "QUBITS 1\nGATE action=Z target=0\n"


def test_parse_rejects_missing_header():
    with pytest.raises(ValueError, match="QUBITS"):
        circuits.parse_circuit("GATE action=Z target=0\n")


def test_gate_rejects_target_among_controls():
    with pytest.raises(ValueError, match="control"):
        circuits.Gate(controls=((0, 1),), target=0, action="Z")
