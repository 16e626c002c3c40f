"""Coherence quantifiers tied to faithfulness.

Provides the relative entropy of coherence (equal to the distillable
coherence), the max- and min-relative entropies between states, and the
largest-coherence-fraction quantity defined through a small semidefinite
program: 2^value is the minimal trace of a diagonal matrix X with
diag(X) >= rho in the PSD order.  The program is solved by a deterministic
log-barrier Newton method that certifies its own optimality with a dual
feasible point; the reported ``dual_bound`` is the rank-one bound obtained
from the phase-vector ascent (d times the best flat-superposition overlap),
which also lower-bounds the optimum but is not always tight.

All logarithms are base 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import faithful, linalg, witness
from .states import DensityMatrix, dephase

SUPPORT_EIG_TOL = 1e-9
BOUND_SLACK = 1e-6

_CMAX_TARGET_GAP = 1e-9
_CMAX_FAIL_GAP = 1e-4
_CMAX_MAX_OUTER = 60
_CMAX_MAX_NEWTON = 80
_CMAX_T_GROWTH = 20.0


class CmaxConvergenceError(linalg.ConvergenceError):
    """The trace-minimization failed to certify its optimum.

    Carries the best primal value and the best dual bound reached, so a
    caller can still report the bracket.
    """

    def __init__(self, message: str, primal_trace: float, dual_bound: float):
        super().__init__(message)
        self.primal_trace = primal_trace
        self.dual_bound = dual_bound


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """-sum(lam * log2(lam)) over the spectrum, with 0 log 0 = 0."""
    lam = linalg.hermitian_eig(rho.matrix).eigenvalues
    if lam[0] < -1e-8:
        raise ValueError(f"state has eigenvalue {lam[0]:.3e} below -1e-8")
    lam = np.clip(lam, 0.0, None)
    nz = lam[lam > 0.0]
    return float(-(nz * np.log2(nz)).sum())


def relative_entropy_coherence(rho: DensityMatrix) -> float:
    """S(diag(rho)) - S(rho) in bits; zero exactly on incoherent states."""
    val = von_neumann_entropy(dephase(rho)) - von_neumann_entropy(rho)
    if val < -1e-8:
        raise linalg.ConvergenceError(
            f"entropy difference {val:.3e} is negative beyond rounding"
        )
    return max(0.0, val)


def d_max(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """log2 of the smallest factor lam with rho <= lam * sigma.

    Infinite when rho has weight outside sigma's support (threshold 1e-9 on
    sigma's eigenvalues); otherwise the top eigenvalue of
    sigma^(-1/2) rho sigma^(-1/2) on the support.
    """
    if rho.dim != sigma.dim:
        raise ValueError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")
    eig = linalg.hermitian_eig(sigma.matrix)
    support = eig.eigenvalues > SUPPORT_EIG_TOL
    if not support.all():
        v_out = eig.eigenvectors[:, ~support]
        leak = float(np.real(np.einsum("ij,ik,kj->", v_out.conj(), rho.matrix, v_out)))
        if leak > SUPPORT_EIG_TOL:
            return math.inf
    v_s = eig.eigenvectors[:, support]
    lam_s = eig.eigenvalues[support]
    b = (v_s.conj().T @ rho.matrix @ v_s) / np.sqrt(np.outer(lam_s, lam_s))
    top = float(linalg.hermitian_eig(b).eigenvalues[-1])
    return float(np.log2(max(top, np.finfo(float).tiny)))


def d_min(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """-log2 Tr(P sigma) with P the projector onto rho's support."""
    if rho.dim != sigma.dim:
        raise ValueError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")
    eig = linalg.hermitian_eig(rho.matrix)
    cols = eig.eigenvectors[:, eig.eigenvalues > SUPPORT_EIG_TOL]
    val = float(np.real(np.einsum("ij,ik,kj->", cols.conj(), sigma.matrix, cols)))
    if val <= 1e-14:
        return math.inf
    return float(-np.log2(val))


@dataclass
class CmaxResult:
    """Certified output of the diagonal trace-minimization.

    ``primal_trace`` is the trace of the feasible diagonal majorizer X
    (so 2^value); ``dual_bound`` is the rank-one phase-vector bound with
    its phases in ``dual_witness``; ``gap`` is their difference, which can
    stay positive when the true optimum needs a higher-rank dual point.
    """

    value: float
    primal_trace: float
    dual_bound: float
    gap: float
    primal_diag: np.ndarray
    dual_witness: np.ndarray


def _log_barrier_objective(x: np.ndarray, r: np.ndarray, t: float) -> float:
    a = np.diag(x).astype(complex) - r
    try:
        chol = np.linalg.cholesky(a)
    except np.linalg.LinAlgError:
        return math.inf
    return t * float(x.sum()) - 2.0 * float(np.log(np.diag(chol).real).sum())


def _trace_min_diagonal(r: np.ndarray, target_gap: float, max_outer: int,
                        max_newton: int) -> tuple[np.ndarray, float, float]:
    """min sum(x) over diagonal X = diag(x) with X - r PSD, by barrier Newton.

    Returns (x, primal, certified_dual); certified_dual is the best value of
    Tr(r Y) over the dual-feasible points Y built from the scaled barrier
    inverse, so primal - certified_dual bounds the distance to optimality.
    """
    d = r.shape[0]
    diag = np.diag(r).real.copy()
    lam_min = float(linalg.hermitian_eig(np.diag(diag).astype(complex) - r).eigenvalues[0])
    x = diag + max(0.0, -lam_min) + 0.5
    t = 1.0
    best_dual = -math.inf
    for _ in range(max_outer):
        for _ in range(max_newton):
            a = np.diag(x).astype(complex) - r
            a_inv = np.linalg.inv(a)
            grad = t - np.real(np.diag(a_inv))
            hess = np.abs(a_inv) ** 2
            try:
                dx = -np.linalg.solve(hess, grad)
            except np.linalg.LinAlgError:
                dx = -np.linalg.lstsq(hess, grad, rcond=None)[0]
            decrement = float(-grad @ dx)
            if decrement / 2.0 <= 1e-12:
                break
            base = _log_barrier_objective(x, r, t)
            alpha = 1.0
            while alpha > 1e-14:
                trial = x + alpha * dx
                if _log_barrier_objective(trial, r, t) <= base - 0.25 * alpha * decrement:
                    break
                alpha *= 0.5
            x = x + alpha * dx
        # dual-feasible certificate from the barrier inverse: normalize the
        # diagonal of A^-1 / t to exactly one (PSD is preserved)
        a_inv = np.linalg.inv(np.diag(x).astype(complex) - r)
        dy = np.real(np.diag(a_inv)) / t
        scale = 1.0 / np.sqrt(dy)
        y = (a_inv / t) * np.outer(scale, scale)
        best_dual = max(best_dual, float(np.real(np.trace(r @ y))))
        if float(x.sum()) - best_dual <= target_gap:
            break
        t = min(t * _CMAX_T_GROWTH, 1e18)
    return x, float(x.sum()), best_dual


def c_max(rho: DensityMatrix, target_gap: float = _CMAX_TARGET_GAP,
          fail_gap: float = _CMAX_FAIL_GAP, max_outer: int = _CMAX_MAX_OUTER) -> CmaxResult:
    """log2 of the minimal trace of a diagonal majorizer of rho.

    The primal is solved to a certified accuracy of ``target_gap``; if the
    solver cannot certify ``fail_gap`` within its iteration caps a
    CmaxConvergenceError carrying both bounds is raised.  The reported
    ``dual_bound`` is d times the best phase-vector overlap, a feasible
    rank-one dual point.
    """
    x, primal, certified_dual = _trace_min_diagonal(
        rho.matrix, target_gap, max_outer, _CMAX_MAX_NEWTON
    )
    overlap, theta = faithful.best_phase_overlap(rho)
    dual_bound = rho.dim * overlap
    if primal - certified_dual > fail_gap:
        raise CmaxConvergenceError(
            f"trace minimization stalled: certified gap {primal - certified_dual:.3e}",
            primal_trace=primal,
            dual_bound=dual_bound,
        )
    return CmaxResult(
        value=float(np.log2(primal)),
        primal_trace=primal,
        dual_bound=float(dual_bound),
        gap=float(primal - dual_bound),
        primal_diag=x,
        dual_witness=theta,
    )


@dataclass
class MeasureReport:
    """Coherence measures of one state plus the witness-based lower bound.

    ``rfcw_lhs`` is 1 - d*Tr(W_a rho) at the best sign witness, which equals
    d times the best sign overlap and never exceeds 2^c_max (within slack).
    """

    c_r: float
    c_max: CmaxResult
    rfcw_lhs: float
    bound_satisfied: bool

    def to_dict(self) -> dict:
        return {
            "c_r": self.c_r,
            "c_max": self.c_max.value,
            "c_max_gap": self.c_max.gap,
            "rfcw_lhs": self.rfcw_lhs,
            "bound_satisfied": self.bound_satisfied,
        }


def rfcw_bound(rho: DensityMatrix) -> MeasureReport:
    """Assemble the measure report for one state.

    Evaluates the best sign witness, the relative entropy of coherence, and
    the trace-minimization, and checks that d times the best sign overlap
    stays below 2^c_max (the witness measurement lower-bounds the measure).
    """
    report = faithful.is_faithful(rho)
    best = witness.rfcw_witness(report.best_sign)
    rfcw_lhs = 1.0 - rho.dim * witness.evaluate(best, rho)
    result = c_max(rho)
    return MeasureReport(
        c_r=relative_entropy_coherence(rho),
        c_max=result,
        rfcw_lhs=float(rfcw_lhs),
        bound_satisfied=bool(rfcw_lhs <= result.primal_trace + BOUND_SLACK),
    )
