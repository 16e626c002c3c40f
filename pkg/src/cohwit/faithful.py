"""Faithfulness tests for coherent states.

A state's coherence is *faithful* when some fidelity-based witness detects
it.  Detection by the full family of sign witnesses (flat superpositions
with +-1 coefficients, leading coefficient fixed +1) is equivalent: the
decomposition certificate produced here writes any real-coefficient
fidelity witness as a PSD diagonal remainder plus a mixture of sign
witnesses, so a negative expectation must already show up at some sign
vector.  The decision routines below maximize the target overlap
<phi_a| rho |phi_a> over sign vectors and compare against the threshold
1/d; anything strictly above it (beyond a strictness epsilon) is faithful.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .states import BlochVector, DensityMatrix, PureState, bloch_to_density
from .witness import SignVector, check_sign_vector

STRICTNESS_EPS = 1e-9

_ENUM_BLOCK = 1 << 16
_MAX_ENUM_DIM = 24
_MAX_CERT_DIM = 16

_PHASE_MAX_SWEEPS = 200
_PHASE_TOL = 1e-12


@dataclass
class FaithfulnessReport:
    """Outcome of a faithfulness decision.

    ``margin`` is ``best_overlap - threshold``; the verdict is "faithful"
    exactly when the margin exceeds the strictness epsilon used for the
    test, and ``marginal`` flags states whose margin sits inside that
    epsilon band (reported unfaithful so the verdict never rests on
    rounding noise).  ``best_sign`` is the winning sign vector, or an
    (a, b) pair for the bipartite product test.
    """

    verdict: str
    mode: str
    best_overlap: float
    threshold: float
    margin: float
    best_sign: tuple
    marginal: bool
    notes: dict = field(default_factory=dict)

    @property
    def faithful(self) -> bool:
        return self.verdict == "faithful"

    def to_dict(self) -> dict:
        sign: object
        if self.best_sign and isinstance(self.best_sign[0], tuple):
            sign = [list(part) for part in self.best_sign]
        else:
            sign = list(self.best_sign)
        out = {
            "verdict": self.verdict,
            "mode": self.mode,
            "best_overlap": self.best_overlap,
            "threshold": self.threshold,
            "margin": self.margin,
            "best_sign": sign,
            "marginal": self.marginal,
        }
        out.update(self.notes)
        return out


def _report(best_overlap: float, threshold: float, best_sign, mode: str, eps: float,
            notes: dict | None = None) -> FaithfulnessReport:
    margin = best_overlap - threshold
    return FaithfulnessReport(
        verdict="faithful" if margin > eps else "unfaithful",
        mode=mode,
        best_overlap=float(best_overlap),
        threshold=float(threshold),
        margin=float(margin),
        best_sign=best_sign,
        marginal=bool(abs(margin) <= eps),
        notes=notes or {},
    )


def enumerate_sign_vectors(d: int) -> list[SignVector]:
    """All 2^(d-1) sign vectors (a_2, ..., a_d) in lexicographic order, +1 first."""
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    if d > _MAX_ENUM_DIM:
        raise ValueError(f"exhaustive enumeration is limited to dimension {_MAX_ENUM_DIM}")
    return list(itertools.product((1, -1), repeat=d - 1))


def _sign_rows(d: int, start: int, stop: int) -> np.ndarray:
    """Rows (1, a_2, ..., a_d) for enumeration indices [start, stop).

    Index 0 is the all-+1 vector; counting is lexicographic with +1 before
    -1, i.e. the binary digits of the index, most significant first, select
    the -1 positions.
    """
    idx = np.arange(start, stop, dtype=np.int64)
    rows = np.empty((idx.size, d), dtype=float)
    rows[:, 0] = 1.0
    for j in range(d - 1):
        shift = d - 2 - j
        rows[:, j + 1] = 1.0 - 2.0 * ((idx >> shift) & 1)
    return rows


def _index_to_sign(index: int, d: int) -> SignVector:
    return tuple(1 - 2 * ((index >> (d - 2 - j)) & 1) for j in range(d - 1))


def _overlaps(rows: np.ndarray, real_rho: np.ndarray) -> np.ndarray:
    # <phi|rho|phi> = s.rho.s / d for the real sign row s; the imaginary
    # part cancels exactly for Hermitian rho, so only Re(rho) enters.
    d = real_rho.shape[0]
    return ((rows @ real_rho) * rows).sum(axis=1) / d


def _best_sign_overlap(real_rho: np.ndarray) -> tuple[float, int]:
    d = real_rho.shape[0]
    total = 1 << (d - 1)
    best = -np.inf
    best_index = 0
    for start in range(0, total, _ENUM_BLOCK):
        stop = min(start + _ENUM_BLOCK, total)
        vals = _overlaps(_sign_rows(d, start, stop), real_rho)
        k = int(np.argmax(vals))
        if vals[k] > best:
            best = float(vals[k])
            best_index = start + k
    return best, best_index


def is_faithful(rho: DensityMatrix, eps: float = STRICTNESS_EPS) -> FaithfulnessReport:
    """Exhaustive faithfulness test over all 2^(d-1) sign vectors.

    The best overlap max_a <phi_a|rho|phi_a> is compared against 1/d; ties
    resolve to the lexicographically smallest sign vector.  This is the
    authoritative decision; `screen_reduced` is the cheaper screening that
    can under-detect.
    """
    d = rho.dim
    if d < 2:
        raise ValueError(f"faithfulness is defined for dimension >= 2, got {d}")
    if d > _MAX_ENUM_DIM:
        raise ValueError(f"exhaustive enumeration is limited to dimension {_MAX_ENUM_DIM}")
    best, best_index = _best_sign_overlap(np.real(rho.matrix))
    return _report(best, 1.0 / d, _index_to_sign(best_index, d), "full", eps)


def qubit_faithful(b: BlochVector, eps: float = STRICTNESS_EPS) -> FaithfulnessReport:
    """Analytic qubit shortcut: best overlap (1 + |s1|)/2.

    Agrees with the exhaustive test on verdict and overlap.  The notes
    record the open-interval rule 0 < s1 < 1 sometimes quoted for qubits
    and whether it disagrees with the overlap criterion implemented here
    (it does at s1 = 1 and for negative s1, where the sign flip a = (-1)
    still detects the coherence).
    """
    s1 = b.s1
    best_overlap = (1.0 + abs(s1)) / 2.0
    best_sign = (1,) if s1 >= 0 else (-1,)
    report = _report(best_overlap, 0.5, best_sign, "full", eps)
    open_interval = bool(0.0 < s1 < 1.0)
    report.notes = {
        "s1": float(s1),
        "open_interval_faithful": open_interval,
        "open_interval_disagrees": open_interval != report.faithful,
    }
    return report


def reduced_family(d: int) -> list[SignVector]:
    """The economical screening family of d(d-1)/2 sign vectors.

    Row 1 holds the d-1 single flips at positions 2..d.  Row i for
    2 <= i <= d-1 holds d-i vectors flipping {2} union S, where S runs over
    the lexicographically smallest (i-1)-element subsets of {3..d}; these
    are exactly the products of i-1 distinct first-row elements with the
    first flip.  The all-+1 vector is not a member.
    """
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")

    def flips_to_vector(fls: frozenset[int]) -> SignVector:
        return tuple(-1 if pos in fls else 1 for pos in range(2, d + 1))

    family = [flips_to_vector(frozenset([j])) for j in range(2, d + 1)]
    for i in range(2, d):
        subsets = itertools.islice(itertools.combinations(range(3, d + 1), i - 1), d - i)
        for s in subsets:
            family.append(flips_to_vector(frozenset((2, *s))))
    return family


def screen_reduced(rho: DensityMatrix, eps: float = STRICTNESS_EPS) -> FaithfulnessReport:
    """Screening test over the reduced family plus the all-+1 vector.

    Its best overlap never exceeds the exhaustive one, so "faithful" here
    implies "faithful" for `is_faithful`, but not conversely.
    """
    d = rho.dim
    if d < 2:
        raise ValueError(f"faithfulness is defined for dimension >= 2, got {d}")
    vectors = [tuple([1] * (d - 1))] + reduced_family(d)
    rows = np.ones((len(vectors), d))
    for r, vec in enumerate(vectors):
        rows[r, 1:] = vec
    vals = _overlaps(rows, np.real(rho.matrix))
    best = float(vals.max())
    # ties resolve to the lexicographically smallest vector (+1 before -1)
    tied = [vectors[i] for i in np.flatnonzero(vals == best)]
    winner = min(tied, key=lambda vec: tuple(0 if s > 0 else 1 for s in vec))
    return _report(best, 1.0 / d, winner, "reduced", eps)


def is_faithful_bipartite(rho: DensityMatrix, dim_a: int, dim_b: int,
                          eps: float = STRICTNESS_EPS) -> FaithfulnessReport:
    """Product-sign faithfulness test for a bipartite state.

    Maximizes <phi_a (x) phi_b| rho |phi_a (x) phi_b> over independent sign
    vectors on the two subsystems.  The target product state is normalized,
    so the detection threshold is 1/(dim_a*dim_b); for equal subsystem
    dimensions the notes also carry the looser unnormalized-target
    threshold 1/dim_a for comparison.
    """
    d = rho.dim
    if dim_a < 2 or dim_b < 2:
        raise ValueError("subsystem dimensions must each be at least 2")
    if dim_a * dim_b != d:
        raise ValueError(f"state dimension {d} does not factor as {dim_a} x {dim_b}")
    if dim_a > _MAX_ENUM_DIM or dim_b > _MAX_ENUM_DIM:
        raise ValueError(f"exhaustive enumeration is limited to dimension {_MAX_ENUM_DIM}")

    r4 = np.real(rho.matrix).reshape(dim_a, dim_b, dim_a, dim_b)
    rows_a = _sign_rows(dim_a, 0, 1 << (dim_a - 1))
    rows_b = _sign_rows(dim_b, 0, 1 << (dim_b - 1))
    best = -np.inf
    best_pair = (0, 0)
    for ia in range(rows_a.shape[0]):
        sa = rows_a[ia]
        # contract the A side: M[j, l] = sum_{i, k} sa_i R[i, j, k, l] sa_k
        m = np.einsum("i,ijkl,k->jl", sa, r4, sa)
        vals = ((rows_b @ m) * rows_b).sum(axis=1)
        k = int(np.argmax(vals))
        if vals[k] > best:
            best = float(vals[k])
            best_pair = (ia, k)
    best /= dim_a * dim_b
    sign_pair = (_index_to_sign(best_pair[0], dim_a), _index_to_sign(best_pair[1], dim_b))
    notes: dict = {"subsystem_dims": [dim_a, dim_b]}
    if dim_a == dim_b:
        notes["unnormalized_target_threshold"] = 1.0 / dim_a
    return _report(best, 1.0 / (dim_a * dim_b), sign_pair, "full", eps, notes)


# ---------------------------------------------------------------------------
# Phase-vector ascent (an extension beyond the +-1 family)

def phase_ascent(matrix: np.ndarray, theta0: np.ndarray | None = None,
                 max_sweeps: int = _PHASE_MAX_SWEEPS, tol: float = _PHASE_TOL
                 ) -> tuple[float, np.ndarray]:
    """Coordinate ascent of <phi_theta|rho|phi_theta> over unimodular phases.

    phi_theta has amplitudes exp(i theta_j)/sqrt(d); the first phase is
    pinned to zero (a global phase is irrelevant).  Each cyclic update sets
    theta_j to the argument of sum_{k != j} rho_jk exp(i theta_k), which is
    the exact maximizer of the objective in that coordinate, so the ascent
    is monotone.  Returns (overlap, theta).
    """
    d = matrix.shape[0]
    z = np.ones(d, dtype=complex) if theta0 is None else np.exp(1j * np.asarray(theta0, dtype=float))
    z[0] = 1.0
    value = float(np.real(np.vdot(z, matrix @ z)))
    for _ in range(max_sweeps):
        for j in range(1, d):
            w = matrix[j, :] @ z - matrix[j, j] * z[j]
            mag = abs(w)
            if mag > 0.0:
                z[j] = w / mag
        new_value = float(np.real(np.vdot(z, matrix @ z)))
        if new_value - value < tol:
            value = max(value, new_value)
            break
        value = new_value
    theta = np.angle(z)
    theta[0] = 0.0
    return value / d, theta


def best_phase_overlap(rho: DensityMatrix) -> tuple[float, np.ndarray]:
    """Phase ascent from deterministic starts; returns the best local maximum.

    Starts: the flat phase vector, the best sign vector of the exhaustive
    test, and the entrywise phases of the leading eigenvector.
    """
    m = rho.matrix
    d = rho.dim
    starts = [np.zeros(d)]
    if d <= _MAX_ENUM_DIM:
        _, best_index = _best_sign_overlap(np.real(m))
        sign = np.array((1,) + _index_to_sign(best_index, d), dtype=float)
        starts.append(np.where(sign < 0, np.pi, 0.0))
    lead = linalg.hermitian_eig(m).eigenvectors[:, -1]
    theta_lead = np.angle(lead)
    starts.append(theta_lead - theta_lead[0])
    best_val, best_theta = -np.inf, np.zeros(d)
    for theta0 in starts:
        val, theta = phase_ascent(m, theta0)
        if val > best_val:
            best_val, best_theta = val, theta
    return best_val, best_theta


def phase_report(rho: DensityMatrix, eps: float = STRICTNESS_EPS) -> FaithfulnessReport:
    """Exhaustive verdict annotated with the phase-family diagnostic.

    The phase family can detect coherence the +-1 family misses (states
    whose coherences are purely imaginary, for instance); the flag never
    changes the sign-family verdict, it only reports that a relaxed
    detection exists.
    """
    report = is_faithful(rho, eps)
    overlap, theta = best_phase_overlap(rho)
    report.mode = "phase"
    report.notes.update(
        {
            "phase_overlap": float(overlap),
            "phase_detectable": bool(overlap - report.threshold > eps),
            "phase_vector": [float(t) for t in theta],
        }
    )
    return report


# ---------------------------------------------------------------------------
# Decomposition certificate

@dataclass
class DecompositionCertificate:
    """Proof that a real-coefficient fidelity witness dominates sign witnesses.

    For the witness of the target with sorted amplitudes beta_1 >= ... >=
    beta_d >= 0, the independent-sign distribution with mean gamma_j =
    beta_j/beta_1 per position has probabilities p_a = prod (1+a_j
    gamma_j)/2, and the remainder W - d beta_1^2 sum_a p_a W_a is the
    diagonal matrix with entries beta_1^2 - beta_i^2 >= 0 (stated in the
    sorted frame; ``permutation`` maps sorted positions back to the input).
    A negative witness expectation therefore forces a negative expectation
    at some sign vector.
    """

    gammas: np.ndarray
    probabilities: dict[SignVector, float]
    residual_diag: np.ndarray
    offdiag_norm: float
    permutation: tuple[int, ...]

    def check(self, p_tol: float = 1e-12, diag_tol: float = 1e-12,
              offdiag_tol: float = 1e-10) -> list[str]:
        """Violated-invariant messages; empty when the certificate is sound."""
        problems = []
        p = np.array(list(self.probabilities.values()))
        if p.size and p.min() < -p_tol:
            problems.append(f"negative probability {p.min():.3e}")
        if abs(p.sum() - 1.0) > p_tol:
            problems.append(f"probabilities sum to {p.sum():.15g}")
        if self.residual_diag.min() < -diag_tol:
            problems.append(f"negative residual diagonal {self.residual_diag.min():.3e}")
        if self.offdiag_norm > offdiag_tol:
            problems.append(f"off-diagonal residual norm {self.offdiag_norm:.3e}")
        return problems

    def to_dict(self) -> dict:
        return {
            "gammas": [float(g) for g in self.gammas],
            "probabilities": {
                "".join("+" if s > 0 else "-" for s in key): float(val)
                for key, val in self.probabilities.items()
            },
            "residual_diag": [float(x) for x in self.residual_diag],
            "offdiag_norm": float(self.offdiag_norm),
            "permutation": list(self.permutation),
        }


def decompose_witness(psi: PureState) -> DecompositionCertificate:
    """Build the sign-mixture certificate for a real-nonnegative target.

    The amplitudes are sorted decreasing internally; gammas, probabilities
    and the residual all live in that sorted frame.  Rejects targets with
    complex or negative amplitudes.
    """
    amps = psi.amplitudes
    d = psi.dim
    if d < 2:
        raise ValueError(f"certificate requires dimension >= 2, got {d}")
    if d > _MAX_CERT_DIM:
        raise ValueError(f"exhaustive certificate is limited to dimension {_MAX_CERT_DIM}")
    if np.abs(amps.imag).max() > 1e-12:
        raise ValueError("target amplitudes must be real")
    re = amps.real
    if re.min() < -1e-12:
        raise ValueError("target amplitudes must be nonnegative")
    re = np.clip(re, 0.0, None)

    order = np.argsort(-re, kind="stable")
    beta = re[order]
    beta1 = float(beta[0])
    if beta1 <= 0.0:
        raise ValueError("leading amplitude is zero")
    gamma = beta / beta1  # gamma[0] == 1

    rows = _sign_rows(d, 0, 1 << (d - 1))
    p = np.prod((1.0 + rows[:, 1:] * gamma[1:]) / 2.0, axis=1)

    # honest residual: W - d beta1^2 sum_a p_a W_a, summed term by term
    second_moment = rows.T @ (p[:, None] * rows)
    witness_sorted = beta1**2 * np.eye(d) - np.outer(beta, beta)
    mixture = float(p.sum()) * np.eye(d) - second_moment  # equals d * sum_a p_a W_a
    residual = witness_sorted - beta1**2 * mixture
    diag = np.diag(residual).copy()
    off = residual - np.diag(diag)

    probabilities = {
        _index_to_sign(i, d): float(p[i]) for i in range(p.size)
    }
    return DecompositionCertificate(
        gammas=gamma[1:].copy(),
        probabilities=probabilities,
        residual_diag=diag,
        offdiag_norm=float(np.linalg.norm(off)),
        permutation=tuple(int(i) for i in order),
    )
