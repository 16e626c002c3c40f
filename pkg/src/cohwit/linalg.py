"""Dense complex-matrix kernel: products, Kronecker products, Hermitian
eigendecomposition, and positive-semidefiniteness tests.

Every routine treats its inputs as immutable and returns fresh arrays, so
concurrent use from multiple threads is safe.  Matrices are plain
``numpy.ndarray`` objects with dtype ``complex128``; tolerances are explicit
so that results are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

HERMITIAN_ATOL = 1e-8
DEFAULT_PSD_TOL = 1e-8

_JACOBI_MAX_SWEEPS = 100
_JACOBI_OFF_TOL = 1e-12


class ConvergenceError(RuntimeError):
    """An iterative numerical routine exceeded its iteration cap."""


def as_complex_matrix(m) -> np.ndarray:
    """Coerce to a 2-d complex128 array, rejecting non-finite entries."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got array of shape {a.shape}")
    if not (np.all(np.isfinite(a.real)) and np.all(np.isfinite(a.imag))):
        raise ValueError("matrix has non-finite entries")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.conj(m).T


def hermiticity_defect(m: np.ndarray) -> float:
    """Largest absolute entry of m - m^dagger."""
    return float(np.abs(m - dagger(m)).max())


def multiply(a, b) -> np.ndarray:
    """Matrix product a @ b with an explicit inner-dimension check."""
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch in product: {a.shape} @ {b.shape}")
    return a @ b


def kron(a, b) -> np.ndarray:
    """Kronecker product with the first factor's indices major."""
    return np.kron(as_complex_matrix(a), as_complex_matrix(b))


@dataclass(frozen=True)
class HermitianEig:
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` is real and ascending; column i of ``eigenvectors`` is a
    unit eigenvector for ``eigenvalues[i]``, and the columns are mutually
    orthonormal.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _jacobi_rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Apply one two-sided unitary rotation that zeroes a[p, q].

    The rotation is the complex Jacobi rotation: the phase of a[p, q] is
    absorbed into column q, then a real rotation angle is chosen from the
    2x2 block exactly as in the symmetric case.
    """
    apq = a[p, q]
    mag = abs(apq)
    phase = apq / mag
    tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
    if tau >= 0.0:
        t = 1.0 / (tau + math.hypot(1.0, tau))
    else:
        t = -1.0 / (-tau + math.hypot(1.0, tau))
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c
    cphase = np.conj(phase)

    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - s * cphase * col_q
    a[:, q] = s * col_p + c * cphase * col_q
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - s * phase * row_q
    a[q, :] = s * row_p + c * phase * row_q
    # exact zeros / real diagonal by construction; suppress rounding residue
    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real

    vp = v[:, p].copy()
    vq = v[:, q].copy()
    v[:, p] = c * vp - s * cphase * vq
    v[:, q] = s * vp + c * cphase * vq


def hermitian_eig(m, atol: float = HERMITIAN_ATOL) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    m : array_like
        Square matrix, Hermitian up to ``atol`` in the max-entry norm.
    atol : float
        Allowed Hermiticity defect of the input.

    Returns
    -------
    HermitianEig
        Ascending eigenvalues and matching orthonormal eigenvector columns.

    Raises
    ------
    ValueError
        Non-square or non-Hermitian input.
    ConvergenceError
        No convergence within the sweep cap (numerical failure).
    """
    a = as_complex_matrix(m)
    n, n2 = a.shape
    if n != n2:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    defect = hermiticity_defect(a)
    if defect > atol:
        raise ValueError(f"matrix is not hermitian: max deviation {defect:.3e}")
    a = (a + dagger(a)) / 2.0
    v = np.eye(n, dtype=complex)
    if n == 1:
        return HermitianEig(np.array([a[0, 0].real]), v)

    scale = float(np.linalg.norm(a))
    stop = _JACOBI_OFF_TOL * max(1.0, scale)
    skip = stop / (2.0 * n)
    for _ in range(_JACOBI_MAX_SWEEPS):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= stop:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) > skip:
                    _jacobi_rotate(a, v, p, q)
    else:
        raise ConvergenceError(
            f"Jacobi eigensolver did not converge within {_JACOBI_MAX_SWEEPS} sweeps"
        )

    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return HermitianEig(w[order], np.ascontiguousarray(v[:, order]))


def is_psd(m, tol: float = DEFAULT_PSD_TOL, atol: float = HERMITIAN_ATOL) -> bool:
    """True iff the smallest eigenvalue of the Hermitian input is >= -tol."""
    eig = hermitian_eig(m, atol=atol)
    return bool(eig.eigenvalues[0] >= -tol)
