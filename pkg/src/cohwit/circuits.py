"""Circuits for sign-diagonal unitaries on k qubits.

A sign-diagonal unitary is diag(s) with s in {+1, -1}^(2^k) and s[0] = +1.
Every such unitary is realized by pattern-controlled single-qubit phase
flips: one gate per -1 entry, whose controls pin the first k-1 bits of the
flipped basis index and whose action is Z = diag(1, -1) when the last bit
is 1 and Z0 = diag(-1, 1) when it is 0.  Qubit 0 is the most significant
bit of the basis index.  Synthesis is deliberately naive (no gate merging),
so the circuit matrix equals diag(s) bit-exactly and the gate list maps
one-to-one onto the flipped indices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import faithful

_MAX_MATRIX_QUBITS = 12

ACTIONS = ("Z", "Z0")


@dataclass(frozen=True)
class Gate:
    """A controlled phase flip.

    ``controls`` lists (qubit, required_bit) pairs; unlisted qubits are
    free.  ``action`` is "Z" (flip amplitudes whose target bit is 1) or
    "Z0" (flip those whose target bit is 0).
    """

    controls: tuple[tuple[int, int], ...]
    target: int
    action: str

    def __post_init__(self):
        if self.action not in ACTIONS:
            raise ValueError(f"action must be one of {ACTIONS}, got {self.action!r}")
        seen = set()
        for qubit, bit in self.controls:
            if bit not in (0, 1):
                raise ValueError(f"control bit must be 0 or 1, got {bit}")
            if qubit in seen:
                raise ValueError(f"duplicate control on qubit {qubit}")
            seen.add(qubit)
        if self.target in seen:
            raise ValueError(f"target qubit {self.target} is also a control")


@dataclass(frozen=True)
class Circuit:
    qubits: int
    gates: tuple[Gate, ...]

    def __post_init__(self):
        for gate in self.gates:
            indices = [gate.target] + [q for q, _ in gate.controls]
            if any(not 0 <= q < self.qubits for q in indices):
                raise ValueError(f"gate uses qubit outside 0..{self.qubits - 1}: {gate}")


class SignDiagonalUnitary:
    """diag(signs) on k qubits, signs in {+1,-1}^(2^k) with leading +1."""

    __slots__ = ("qubits", "signs")

    def __init__(self, qubits: int, signs):
        if qubits < 1:
            raise ValueError(f"need at least one qubit, got {qubits}")
        signs = tuple(int(s) for s in signs)
        if len(signs) != 1 << qubits:
            raise ValueError(f"expected {1 << qubits} signs for {qubits} qubits, got {len(signs)}")
        if any(s not in (1, -1) for s in signs):
            raise ValueError("signs must be +1 or -1")
        if signs[0] != 1:
            raise ValueError("the leading sign must be +1")
        self.qubits = qubits
        self.signs = signs

    @classmethod
    def from_sign_vector(cls, qubits: int, a) -> "SignDiagonalUnitary":
        """Prepend the fixed +1 to a (d-1)-entry sign vector."""
        return cls(qubits, (1, *a))

    def sign_vector(self) -> tuple[int, ...]:
        return self.signs[1:]


def synthesize(u: SignDiagonalUnitary) -> Circuit:
    """One pattern-controlled flip per -1 entry, in ascending index order."""
    k = u.qubits
    gates = []
    for index, sign in enumerate(u.signs):
        if sign == 1:
            continue
        controls = tuple((q, (index >> (k - 1 - q)) & 1) for q in range(k - 1))
        action = "Z" if index & 1 else "Z0"
        gates.append(Gate(controls=controls, target=k - 1, action=action))
    return Circuit(qubits=k, gates=tuple(gates))


def _gate_diagonal(gate: Gate, k: int) -> np.ndarray:
    """The +-1 diagonal of one gate on the full 2^k space."""
    idx = np.arange(1 << k)
    matched = np.ones(1 << k, dtype=bool)
    for qubit, bit in gate.controls:
        matched &= ((idx >> (k - 1 - qubit)) & 1) == bit
    target_bit = (idx >> (k - 1 - gate.target)) & 1
    flip = matched & (target_bit == (1 if gate.action == "Z" else 0))
    diag = np.ones(1 << k)
    diag[flip] = -1.0
    return diag


def circuit_diagonal(c: Circuit) -> np.ndarray:
    """The +-1 diagonal of the whole circuit (all gates commute)."""
    diag = np.ones(1 << c.qubits)
    for gate in c.gates:
        diag *= _gate_diagonal(gate, c.qubits)
    return diag


def to_matrix(c: Circuit) -> np.ndarray:
    """Product of the gate matrices in application order, as a dense matrix."""
    if c.qubits > _MAX_MATRIX_QUBITS:
        raise ValueError(f"matrix form is limited to {_MAX_MATRIX_QUBITS} qubits")
    return np.diag(circuit_diagonal(c).astype(complex))


def apply(c: Circuit, state) -> np.ndarray:
    """Run the circuit on a statevector (sign flips on amplitudes only)."""
    vec = np.asarray(state, dtype=complex)
    if vec.ndim != 1 or vec.size != 1 << c.qubits:
        raise ValueError(f"state must have length {1 << c.qubits}, got shape {vec.shape}")
    out = vec.copy()
    for gate in c.gates:
        out *= _gate_diagonal(gate, c.qubits)
    return out


def standard_generators(k: int) -> dict[str, SignDiagonalUnitary]:
    """The named d(d-1)/2 generators of the screening family on k qubits.

    Names follow the triangular layout U_<row><col>: row 1 holds the single
    flips (U_11 flips basis index 1, U_12 index 2, ...), and row i >= 2
    holds the products of i-1 distinct row-1 elements with U_11, in the
    same order as `faithful.reduced_family`.
    """
    if k < 1:
        raise ValueError(f"need at least one qubit, got {k}")
    d = 1 << k
    family = faithful.reduced_family(d)
    names = {}
    pos = 0
    for row in range(1, d):
        for col in range(1, d - row + 1):
            sep = "" if col < 10 else "_"
            names[f"U_{row}{sep}{col}"] = SignDiagonalUnitary.from_sign_vector(k, family[pos])
            pos += 1
    return names


# ---------------------------------------------------------------------------
# text format:
#   QUBITS <k>
#   GATE action=Z|Z0 target=<q> [controls=<q>:<0|1>[,...]]

def format_circuit(c: Circuit) -> str:
    lines = [f"QUBITS {c.qubits}"]
    for gate in c.gates:
        line = f"GATE action={gate.action} target={gate.target}"
        if gate.controls:
            line += " controls=" + ",".join(f"{q}:{b}" for q, b in gate.controls)
        lines.append(line)
    return "\n".join(lines) + "\n"


def parse_circuit(text: str) -> Circuit:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("QUBITS "):
        raise ValueError('circuit text must start with a "QUBITS <k>" header')
    try:
        qubits = int(lines[0].split()[1])
    except (IndexError, ValueError) as exc:
        raise ValueError(f"malformed header: {lines[0]!r}") from exc
    gates = []
    for line in lines[1:]:
        if not line.startswith("GATE "):
            raise ValueError(f"malformed gate line: {line!r}")
        fields = dict(token.split("=", 1) for token in line.split()[1:] if "=" in token)
        if "action" not in fields or "target" not in fields:
            raise ValueError(f"gate line needs action= and target=: {line!r}")
        controls = []
        if "controls" in fields and fields["controls"]:
            for token in fields["controls"].split(","):
                q, _, b = token.partition(":")
                controls.append((int(q), int(b)))
        gates.append(
            Gate(controls=tuple(controls), target=int(fields["target"]), action=fields["action"])
        )
    return Circuit(qubits=qubits, gates=tuple(gates))
