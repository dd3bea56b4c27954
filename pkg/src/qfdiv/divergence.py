"""Classical f-divergences and the standard quantum divergences.

All quantum definitions here are the conventional ones (relative entropy,
chi-squared, trace distance, max-relative entropy); the maximal f-divergence
lives in :mod:`qfdiv.maximal`.  Entropic quantities are in nats.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatch, SingularState, ZeroReference
from .linalg import hermitian_eig, inv_sqrt_psd, trace_norm_hermitian

SINGULAR_EPS = 1e-10


def classical_f_div(p, q, f):
    """D_f(p || q) = sum_i q_i f(p_i / q_i); q must be strictly positive."""
    if len(p) != len(q):
        raise DimensionMismatch(f"lengths {len(p)} and {len(q)} differ")
    qp = q.probs
    if qp.min() <= 0.0:
        raise ZeroReference("reference distribution has a zero entry")
    return float(sum(f.at(pi / qi) * qi for pi, qi in zip(p.probs, qp)))


def quantum_relative_entropy(rho, sigma):
    """Umegaki relative entropy tr rho (ln rho - ln sigma), in nats.

    Zero eigenvalues of rho contribute nothing; sigma must be invertible.
    """
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dimensions {rho.dim} and {sigma.dim} differ")
    eig_s = hermitian_eig(sigma.mat)
    if eig_s.eigenvalues[0] <= SINGULAR_EPS:
        raise SingularState(
            f"sigma has min eigenvalue {eig_s.eigenvalues[0]:.3e}"
        )
    log_s = (eig_s.vectors * np.log(eig_s.eigenvalues)) @ eig_s.vectors.conj().T
    p = hermitian_eig(rho.mat).eigenvalues
    entropy = sum(x * math.log(x) for x in p if x > 0.0)
    cross = float(np.trace(rho.mat @ log_s).real)
    return float(entropy) - cross


def quantum_chi2(rho, sigma):
    """Chi-squared divergence tr((sigma^{-1/2} rho sigma^{-1/2})^2 sigma) - 1."""
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dimensions {rho.dim} and {sigma.dim} differ")
    s = inv_sqrt_psd(sigma.mat, SINGULAR_EPS)
    x = s @ rho.mat @ s
    x = (x + x.conj().T) / 2
    return float(np.trace(x @ x @ sigma.mat).real) - 1.0


def trace_distance(rho, sigma):
    """Trace norm ||rho - sigma||_1 (lies in [0, 2])."""
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dimensions {rho.dim} and {sigma.dim} differ")
    return trace_norm_hermitian(rho.mat - sigma.mat)


def max_relative_entropy(rho, sigma):
    """D_max(rho || sigma) = ln of the largest eigenvalue of
    sigma^{-1/2} rho sigma^{-1/2}, in nats."""
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dimensions {rho.dim} and {sigma.dim} differ")
    s = inv_sqrt_psd(sigma.mat, SINGULAR_EPS)
    x = s @ rho.mat @ s
    x = (x + x.conj().T) / 2
    top = float(np.linalg.eigvalsh(x)[-1])
    return math.log(top)
