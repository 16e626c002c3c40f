"""Validated quantum-state model: density matrices, pure states, incoherent
states, the qubit Bloch parametrization, dephasing, and seeded random-state
generation.

The incoherent reference basis is always the computational basis; storage
index i corresponds to basis vector |i+1> in 1-based labelling.  Validation
is strict at construction, so downstream code may assume the invariants
without rechecking.
"""

from __future__ import annotations

import numpy as np

from . import jsonio, linalg

HERMITIAN_ATOL = 1e-8
TRACE_ATOL = 1e-8
PSD_ATOL = 1e-8
NORM_ATOL = 1e-10

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def _frozen(a: np.ndarray) -> np.ndarray:
    out = np.array(a)
    out.setflags(write=False)
    return out


class DensityMatrix:
    """A Hermitian, PSD, unit-trace complex matrix."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        self.matrix = _frozen(_check_density(matrix))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim})"


class PureState:
    """A normalized complex amplitude vector."""

    __slots__ = ("amplitudes",)

    def __init__(self, amplitudes):
        a = np.asarray(amplitudes, dtype=complex)
        if a.ndim != 1 or a.size == 0:
            raise ValueError("amplitudes must be a non-empty vector")
        if not (np.all(np.isfinite(a.real)) and np.all(np.isfinite(a.imag))):
            raise ValueError("amplitudes must be finite")
        norm_sq = float((a.real**2 + a.imag**2).sum())
        if abs(norm_sq - 1.0) > NORM_ATOL:
            raise ValueError(f"state is not normalized: |psi|^2 = {norm_sq:.12g}")
        self.amplitudes = _frozen(a)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, np.conj(self.amplitudes))

    def overlap(self, rho: DensityMatrix) -> float:
        """<psi| rho |psi> as a real number."""
        if rho.dim != self.dim:
            raise ValueError(f"dimension mismatch: state {self.dim}, matrix {rho.dim}")
        return float(np.real(np.vdot(self.amplitudes, rho.matrix @ self.amplitudes)))

    def to_density(self) -> DensityMatrix:
        return DensityMatrix(self.projector())


class IncoherentState:
    """A probability vector over the reference basis (a diagonal state)."""

    __slots__ = ("probabilities",)

    def __init__(self, probabilities):
        p = np.asarray(probabilities, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise ValueError("probabilities must be a non-empty vector")
        if np.any(p < -NORM_ATOL) or np.any(p > 1.0 + NORM_ATOL):
            raise ValueError("probabilities must lie in [0, 1]")
        if abs(float(p.sum()) - 1.0) > NORM_ATOL:
            raise ValueError(f"probabilities must sum to 1, got {p.sum():.12g}")
        self.probabilities = _frozen(p)

    @property
    def dim(self) -> int:
        return self.probabilities.shape[0]

    def to_density(self) -> DensityMatrix:
        return DensityMatrix(np.diag(self.probabilities.astype(complex)))


class BlochVector:
    """Qubit Bloch coordinates (s1, s2, s3), norm at most 1."""

    __slots__ = ("s1", "s2", "s3")

    def __init__(self, s1: float, s2: float, s3: float):
        s1, s2, s3 = float(s1), float(s2), float(s3)
        norm_sq = s1 * s1 + s2 * s2 + s3 * s3
        if norm_sq > 1.0 + NORM_ATOL:
            raise ValueError(f"Bloch vector lies outside the unit ball: |s|^2 = {norm_sq:.12g}")
        self.s1, self.s2, self.s3 = s1, s2, s3

    def __iter__(self):
        return iter((self.s1, self.s2, self.s3))


def _check_density(raw) -> np.ndarray:
    """Return the validated matrix or raise naming the first violated invariant."""
    a = linalg.as_complex_matrix(raw)
    n, m = a.shape
    if n != m:
        raise ValueError(f"matrix is not square: shape {a.shape}")
    defect = linalg.hermiticity_defect(a)
    if defect > HERMITIAN_ATOL:
        raise ValueError(f"matrix is not hermitian: max deviation {defect:.6g}")
    tr = np.trace(a).real
    if abs(tr - 1.0) > TRACE_ATOL:
        raise ValueError(f"trace must be 1: got {tr:.6g}")
    eig = linalg.hermitian_eig(a)
    lam_min = float(eig.eigenvalues[0])
    if lam_min < -PSD_ATOL:
        raise ValueError(f"matrix is not positive semidefinite: eigenvalue {lam_min:.6g}")
    return a


def validate(raw) -> DensityMatrix:
    """Validate a raw matrix as a density matrix.

    Checks run in a fixed order (square, finite, hermitian, trace, PSD) and
    the raised error names the first violated invariant.
    """
    return DensityMatrix(raw)


def dephase(rho: DensityMatrix) -> DensityMatrix:
    """Project onto the diagonal: keep the populations, zero the coherences."""
    return DensityMatrix(np.diag(np.diag(rho.matrix).real).astype(complex))


def diagonal_part(rho: DensityMatrix) -> IncoherentState:
    """The diagonal of rho as an incoherent state."""
    return IncoherentState(np.diag(rho.matrix).real)


def maximally_coherent(d: int) -> PureState:
    """The flat superposition with all amplitudes 1/sqrt(d)."""
    if d < 1:
        raise ValueError(f"dimension must be at least 1, got {d}")
    return PureState(np.full(d, 1.0 / np.sqrt(d), dtype=complex))


def basis_state(i: int, d: int) -> PureState:
    amps = np.zeros(d, dtype=complex)
    amps[i] = 1.0
    return PureState(amps)


def bloch_to_density(b: BlochVector) -> DensityMatrix:
    """rho = (I + s1*X + s2*Y + s3*Z) / 2."""
    m = 0.5 * (np.eye(2, dtype=complex) + b.s1 * PAULI_X + b.s2 * PAULI_Y + b.s3 * PAULI_Z)
    return DensityMatrix(m)


def density_to_bloch(rho: DensityMatrix) -> BlochVector:
    if rho.dim != 2:
        raise ValueError(f"Bloch coordinates are defined for qubits only, got dim {rho.dim}")
    m = rho.matrix
    return BlochVector(
        float(np.trace(m @ PAULI_X).real),
        float(np.trace(m @ PAULI_Y).real),
        float(np.trace(m @ PAULI_Z).real),
    )


def random_density(d: int, rank: int, seed: int) -> DensityMatrix:
    """Seeded Ginibre-induced random state: G G^dagger / tr, G of shape (d, rank)."""
    if not 1 <= rank <= d:
        raise ValueError(f"rank must be in [1, {d}], got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real)


def random_incoherent(d: int, seed: int) -> IncoherentState:
    """Seeded random probability vector (flat Dirichlet via exponentials)."""
    rng = np.random.default_rng(seed)
    w = rng.exponential(size=d)
    return IncoherentState(w / w.sum())


# ---------------------------------------------------------------------------
# JSON state format: {"dim": d, "matrix": [[[re, im], ...], ...]}

def state_to_dict(rho: DensityMatrix) -> dict:
    return {
        "dim": rho.dim,
        "matrix": [[jsonio.complex_to_pair(z) for z in row] for row in rho.matrix],
    }


def state_from_dict(obj) -> DensityMatrix:
    if not isinstance(obj, dict) or "dim" not in obj or "matrix" not in obj:
        raise ValueError('state JSON must be an object with "dim" and "matrix" keys')
    d = obj["dim"]
    if not isinstance(d, int) or d < 1:
        raise ValueError(f'"dim" must be a positive integer, got {d!r}')
    rows = obj["matrix"]
    if not isinstance(rows, list) or len(rows) != d or any(len(r) != d for r in rows):
        raise ValueError(f'"matrix" must be a {d}x{d} array of [re, im] pairs')
    m = np.array(
        [[jsonio.pair_to_complex(entry, "matrix entry") for entry in row] for row in rows]
    )
    return validate(m)


def load_state(path) -> DensityMatrix:
    return state_from_dict(jsonio.load_file(path))


def save_state(path, rho: DensityMatrix) -> None:
    jsonio.write_file(path, state_to_dict(rho))
