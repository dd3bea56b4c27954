"""Dense Hermitian linear algebra on small complex matrices.

Plain ``numpy`` arrays in, plain arrays out; the typed state wrappers live in
:mod:`qfdiv.states`.  Eigenvector phases follow a fixed convention so repeated
runs on identical input are bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    DomainError,
    NegativeSpectrum,
    NoConvergence,
    NotHermitian,
    SingularState,
)

HERMITIAN_TOL = 1e-10
# eigenvalues in [-PSD_CLAMP_TOL, 0) are treated as exact zeros
PSD_CLAMP_TOL = 1e-8


def as_complex_matrix(a):
    """Coerce input to a square complex128 array with finite entries."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DomainError("matrix contains non-finite entries")
    return m


def hermiticity_defect(a):
    """Largest entrywise deviation of ``a`` from its conjugate transpose."""
    a = np.asarray(a)
    return float(np.max(np.abs(a - a.conj().T)))


def require_hermitian(a, tol=HERMITIAN_TOL):
    """Validate Hermiticity within ``tol`` and return the symmetrized copy."""
    m = as_complex_matrix(a)
    defect = hermiticity_defect(m)
    if defect > tol:
        raise NotHermitian(f"max |A - A^dag| = {defect:.3e} exceeds {tol:.1e}")
    return (m + m.conj().T) / 2


@dataclass(frozen=True)
class HermitianEigen:
    """Spectral decomposition A = V diag(w) V^dag.

    ``eigenvalues`` are real and ascending; column k of ``vectors`` is the
    eigenvector for ``eigenvalues[k]``, phase-fixed so its largest-modulus
    component is real and positive.
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray


def _fix_phases(u):
    # rotate each column so its largest-modulus entry is real positive
    lead = u[np.argmax(np.abs(u), axis=0), np.arange(u.shape[1])]
    return u * (lead.conj() / np.abs(lead))


def hermitian_eig(a, tol=HERMITIAN_TOL):
    """Eigendecomposition of a Hermitian matrix with deterministic phases."""
    m = require_hermitian(a, tol)
    try:
        w, u = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"eigensolver failed: {exc}") from exc
    return HermitianEigen(w, _fix_phases(u))


def matrix_function_psd(a, f, tol=HERMITIAN_TOL):
    """Apply a scalar function to a PSD Hermitian matrix through its spectrum.

    Eigenvalues in ``[-PSD_CLAMP_TOL, 0)`` are clamped to zero first; anything
    more negative raises :class:`NegativeSpectrum`.
    """
    eig = hermitian_eig(a, tol)
    w = eig.eigenvalues
    if w[0] < -PSD_CLAMP_TOL:
        raise NegativeSpectrum(
            f"min eigenvalue {w[0]:.3e} below -{PSD_CLAMP_TOL:.1e}"
        )
    w = np.where(w < 0.0, 0.0, w)
    try:
        fw = np.array([float(f(x)) for x in w])
    except (ArithmeticError, TypeError, ValueError) as exc:
        raise DomainError(f"function undefined on the spectrum: {exc}") from exc
    if not np.all(np.isfinite(fw)):
        raise DomainError("function produced non-finite values on the spectrum")
    return (eig.vectors * fw) @ eig.vectors.conj().T


def inv_sqrt_psd(a, eps=1e-10):
    """Inverse square root A^{-1/2} of a positive definite Hermitian matrix."""
    eig = hermitian_eig(a)
    if eig.eigenvalues[0] <= eps:
        raise SingularState(
            f"min eigenvalue {eig.eigenvalues[0]:.3e} not above {eps:.1e}"
        )
    w = eig.eigenvalues ** -0.5
    return (eig.vectors * w) @ eig.vectors.conj().T


def abs_hermitian(x):
    """Operator absolute value |X| = sqrt(X^2) of a Hermitian matrix."""
    eig = hermitian_eig(x)
    return (eig.vectors * np.abs(eig.eigenvalues)) @ eig.vectors.conj().T


def trace_norm_hermitian(x):
    """Trace norm of a Hermitian matrix: sum of absolute eigenvalues."""
    m = require_hermitian(x)
    return float(np.sum(np.abs(np.linalg.eigvalsh(m))))


def loewner_geq(x, y, tol=HERMITIAN_TOL):
    """Whether X >= Y in the Loewner order, up to ``-tol`` on the spectrum."""
    mx = require_hermitian(x)
    my = require_hermitian(y)
    if mx.shape != my.shape:
        raise DimensionMismatch(f"shape mismatch {mx.shape} vs {my.shape}")
    return bool(np.linalg.eigvalsh(mx - my)[0] >= -tol)


def matrix_polynomial(coeffs, x):
    """Evaluate sum_k coeffs[k] X^k by Horner's rule; X may be non-Hermitian."""
    m = as_complex_matrix(x)
    eye = np.eye(m.shape[0], dtype=np.complex128)
    out = np.zeros_like(m)
    for c in reversed(list(coeffs)):
        out = out @ m + c * eye
    return out
