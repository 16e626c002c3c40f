"""Fidelity-based coherence witnesses.

A witness here is the observable W = alpha*I - |psi><psi| where alpha is the
largest squared overlap of |psi| with any diagonal state; a sign witness is
the alpha = 1/d special case whose target is a flat superposition with +-1
coefficients.  Tr(W delta) >= 0 for every diagonal delta, so a negative
expectation certifies coherence.
"""

from __future__ import annotations

import numpy as np

from . import jsonio
from .states import DensityMatrix, PureState

ALPHA_SLACK = 1e-12

SignVector = tuple[int, ...]


class FidelityWitness:
    """Offset + target pair representing alpha*I - |psi><psi|."""

    __slots__ = ("alpha", "target")

    def __init__(self, alpha: float, target: PureState):
        alpha = float(alpha)
        if not 0.0 < alpha <= 1.0 + ALPHA_SLACK:
            raise ValueError(f"alpha must lie in (0, 1], got {alpha:.12g}")
        if alpha < alpha_of(target) - ALPHA_SLACK:
            raise ValueError(
                "alpha is below the largest squared target coefficient; "
                "some diagonal state would get a negative expectation"
            )
        self.alpha = alpha
        self.target = target

    @property
    def dim(self) -> int:
        return self.target.dim


def alpha_of(psi: PureState) -> float:
    """Largest squared amplitude magnitude, the witness offset for |psi>."""
    a = psi.amplitudes
    return float((a.real**2 + a.imag**2).max())


def build_witness(psi: PureState) -> FidelityWitness:
    """The tightest valid witness for the given target state."""
    return FidelityWitness(alpha_of(psi), psi)


def witness_matrix(w: FidelityWitness) -> np.ndarray:
    """Explicit matrix alpha*I - |psi><psi|."""
    return w.alpha * np.eye(w.dim, dtype=complex) - w.target.projector()


def evaluate(w: FidelityWitness, rho: DensityMatrix) -> float:
    """Expectation Tr(W rho) = alpha - <psi|rho|psi>."""
    if w.dim != rho.dim:
        raise ValueError(f"dimension mismatch: witness {w.dim}, state {rho.dim}")
    return w.alpha - w.target.overlap(rho)


def check_sign_vector(a) -> SignVector:
    vec = tuple(int(x) for x in a)
    if not vec:
        raise ValueError("sign vector must have at least one entry")
    if any(x not in (1, -1) for x in vec):
        raise ValueError(f"sign vector entries must be +1 or -1, got {vec}")
    return vec


def rfcw_state(a) -> PureState:
    """Flat superposition (1, a_2, ..., a_d)/sqrt(d) indexed by the sign vector."""
    vec = check_sign_vector(a)
    d = len(vec) + 1
    amps = np.empty(d, dtype=complex)
    amps[0] = 1.0
    amps[1:] = vec
    return PureState(amps / np.sqrt(d))


def rfcw_witness(a) -> FidelityWitness:
    """The sign witness I/d - |phi_a><phi_a|."""
    return build_witness(rfcw_state(a))


class RFCW:
    """A sign witness identified by its sign vector."""

    __slots__ = ("sign_vector", "dim")

    def __init__(self, sign_vector):
        self.sign_vector = check_sign_vector(sign_vector)
        self.dim = len(self.sign_vector) + 1

    def state(self) -> PureState:
        return rfcw_state(self.sign_vector)

    def as_witness(self) -> FidelityWitness:
        return rfcw_witness(self.sign_vector)


# ---------------------------------------------------------------------------
# JSON: {"alpha": x, "psi": [[re, im], ...]}

def witness_to_dict(w: FidelityWitness) -> dict:
    return {
        "alpha": jsonio.round12(w.alpha),
        "psi": [jsonio.complex_to_pair(z) for z in w.target.amplitudes],
    }


def pure_state_from_dict(obj) -> PureState:
    if not isinstance(obj, dict) or "psi" not in obj:
        raise ValueError('witness JSON must be an object with a "psi" key')
    amps = obj["psi"]
    if not isinstance(amps, list) or not amps:
        raise ValueError('"psi" must be a non-empty list of [re, im] pairs')
    return PureState(np.array([jsonio.pair_to_complex(p, "amplitude") for p in amps]))


def witness_from_dict(obj) -> FidelityWitness:
    psi = pure_state_from_dict(obj)
    if "alpha" in obj:
        return FidelityWitness(jsonio.require_finite(obj["alpha"], "alpha"), psi)
    return build_witness(psi)
