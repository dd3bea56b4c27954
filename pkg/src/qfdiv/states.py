"""Typed carriers for states and channels, plus random ensembles.

Random sampling is reproducible: every Monte Carlo sample draws from its own
substream derived from (seed, sample index), so results do not depend on
evaluation order.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .errors import BadRank, DimensionMismatch, InvariantViolation, OutOfRange

STATE_TOL = 1e-10
CHANNEL_TOL = 1e-9
CONDITION_TOL = 1e-9


def substream(seed, *key):
    """Independent generator derived from a base seed and an index key."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


class ClassicalDistribution:
    """Probability vector: nonnegative entries summing to one within ``tol``."""

    __slots__ = ("probs",)

    def __init__(self, probs, tol=STATE_TOL):
        p = np.array(probs, dtype=float)
        if p.ndim != 1 or p.size < 1:
            raise InvariantViolation("shape", f"expected a vector, got shape {p.shape}")
        if not np.all(np.isfinite(p)):
            raise InvariantViolation("finiteness", "non-finite entries")
        if p.min() < 0.0:
            raise InvariantViolation("nonnegativity", f"min entry {p.min():.3e}")
        defect = abs(float(p.sum()) - 1.0)
        if defect > tol:
            raise InvariantViolation("normalization", f"|sum - 1| = {defect:.3e}")
        p.flags.writeable = False
        self.probs = p

    def __len__(self):
        return self.probs.size

    def __repr__(self):
        return f"ClassicalDistribution({self.probs.tolist()})"


class DensityMatrix:
    """Hermitian PSD matrix with unit trace; the carrier for quantum states."""

    __slots__ = ("mat",)

    def __init__(self, mat, tol=STATE_TOL):
        m = linalg.as_complex_matrix(mat)
        defect = linalg.hermiticity_defect(m)
        if defect > tol:
            raise InvariantViolation("hermiticity", f"max |A - A^dag| = {defect:.3e}")
        m = (m + m.conj().T) / 2
        tr = float(m.trace().real)
        if abs(tr - 1.0) > tol:
            raise InvariantViolation("trace", f"|tr - 1| = {abs(tr - 1.0):.3e}")
        low = float(np.linalg.eigvalsh(m)[0])
        if low < -tol:
            raise InvariantViolation("positivity", f"min eigenvalue {low:.3e}")
        m.flags.writeable = False
        self.mat = m

    @property
    def dim(self):
        return self.mat.shape[0]

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim})"


class QuantumChannel:
    """Kraus family {A_i} with sum_i A_i^dag A_i = I within ``tol``."""

    __slots__ = ("kraus",)

    def __init__(self, kraus, tol=CHANNEL_TOL):
        ops = [np.array(a, dtype=np.complex128) for a in kraus]
        if not ops:
            raise InvariantViolation("completeness", "empty Kraus family")
        shape = ops[0].shape
        if len(shape) != 2 or any(a.shape != shape for a in ops):
            raise DimensionMismatch("Kraus operators must share one 2-d shape")
        stack = np.array(ops)
        comp = np.einsum("kij,kil->jl", stack.conj(), stack)
        defect = float(np.max(np.abs(comp - np.eye(shape[1]))))
        if defect > tol:
            raise InvariantViolation(
                "completeness", f"max |sum A^dag A - I| = {defect:.3e}"
            )
        stack.flags.writeable = False
        self.kraus = stack

    @property
    def dim_in(self):
        return self.kraus.shape[2]

    @property
    def dim_out(self):
        return self.kraus.shape[1]

    def __repr__(self):
        k, out, inn = self.kraus.shape
        return f"QuantumChannel({k} Kraus ops, {inn} -> {out})"


def random_density(n, rank=None, seed=None):
    """Draw a random density matrix GG^dag / tr(GG^dag), G an n x rank
    complex Gaussian.

    rank = n (the default) is the Hilbert-Schmidt ensemble; rank < n gives
    rank-deficient states; rank > n keeps full rank but concentrates the
    measure toward the maximally mixed state (induced ensemble with an
    environment of dimension ``rank``).
    """
    if rank is None:
        rank = n
    if rank < 1:
        raise BadRank(f"rank must be at least 1, got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    m = g @ g.conj().T
    m = (m + m.conj().T) / 2
    return DensityMatrix(m / m.trace().real)


def random_channel(n, k=None, seed=None):
    """Draw a Haar-random isometry C^n -> C^(kn) and split it into k Kraus
    blocks; k defaults to n."""
    if k is None:
        k = n
    if k < 1 or n < 1:
        raise DimensionMismatch(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((k * n, n)) + 1j * rng.standard_normal((k * n, n))
    q, r = np.linalg.qr(g)
    diag = np.diagonal(r)
    q = q * (diag / np.abs(diag))
    return QuantumChannel([q[i * n : (i + 1) * n, :] for i in range(k)])


def apply_channel(channel, rho):
    """Apply a channel to a state: sum_i A_i rho A_i^dag."""
    if channel.dim_in != rho.dim:
        raise DimensionMismatch(
            f"channel expects dimension {channel.dim_in}, state has {rho.dim}"
        )
    out = np.zeros((channel.dim_out, channel.dim_out), dtype=np.complex128)
    for a in channel.kraus:
        out += a @ rho.mat @ a.conj().T
    return DensityMatrix(out)


def diagonal_state(p):
    """Embed a classical distribution (or probability vector) as a diagonal
    density matrix."""
    if not isinstance(p, ClassicalDistribution):
        p = ClassicalDistribution(p)
    return DensityMatrix(np.diag(p.probs.astype(np.complex128)))


def satisfies_abs_condition(rho, sigma, tol=CONDITION_TOL):
    """Whether |rho - sigma| <= rho + sigma in the Loewner order."""
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dimensions {rho.dim} and {sigma.dim} differ")
    diff = rho.mat - sigma.mat
    return linalg.loewner_geq(rho.mat + sigma.mat, linalg.abs_hermitian(diff), tol)


def regularize(rho, delta):
    """Mix a state with the maximally mixed one: (1 - delta) rho + delta I/n.

    Never applied automatically; callers opt in when they need an invertible
    state.
    """
    if not 0.0 < delta < 1.0:
        raise OutOfRange(f"delta must be in (0, 1), got {delta}")
    n = rho.dim
    return DensityMatrix((1.0 - delta) * rho.mat + delta * np.eye(n) / n)
