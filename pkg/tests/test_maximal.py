"""Tests for the maximal f-divergence witness construction."""

import math

import numpy as np
import pytest
from conftest import maximally_mixed, plus_state

from qfdiv.divergence import (
    classical_f_div,
    max_relative_entropy,
    quantum_chi2,
    quantum_relative_entropy,
    trace_distance,
)
from qfdiv.errors import DimensionMismatch, NotOperatorConvex, SingularState
from qfdiv.generators import FGenerator, builtin_generator
from qfdiv.linalg import hermitian_eig, inv_sqrt_psd, matrix_polynomial
from qfdiv.maximal import (
    Witness,
    build_witness,
    check_dpi_maximal,
    check_maximality,
    extremes_mM,
    maximal_f_div,
    verify_witness,
)
from qfdiv.states import (
    ClassicalDistribution,
    apply_channel,
    diagonal_state,
    random_channel,
    random_density,
    substream,
)

KL = builtin_generator("kl")
CHI2 = builtin_generator("chi2")
TV = builtin_generator("tv")


# ---------------------------------------------------------------------------
# hand case: rho = |+><+|, sigma = I/2
# ---------------------------------------------------------------------------


def test_witness_hand_case_spectrum_and_distributions():
    w = build_witness(plus_state(), maximally_mixed())
    assert np.allclose(w.lambdas, [0.0, 2.0], atol=1e-12)
    assert np.allclose(w.s.probs, [0.5, 0.5], atol=1e-12)
    assert np.allclose(w.r.probs, [0.0, 1.0], atol=1e-12)


def test_witness_hand_case_divergences():
    w = build_witness(plus_state(), maximally_mixed())
    assert w.f_divergence(KL) == pytest.approx(math.log(2.0), abs=1e-12)
    assert w.f_divergence(TV) == pytest.approx(1.0, abs=1e-12)
    assert w.f_divergence(CHI2) == pytest.approx(1.0, abs=1e-12)


def test_witness_hand_case_reconstructs_both_states():
    rho, sigma = plus_state(), maximally_mixed()
    w = build_witness(rho, sigma)
    back_r = apply_channel(w.channel, diagonal_state(w.r))
    back_s = apply_channel(w.channel, diagonal_state(w.s))
    assert trace_distance(back_r, rho) <= 1e-12
    assert trace_distance(back_s, sigma) <= 1e-12


def test_witness_hand_case_report_passes():
    report = verify_witness(plus_state(), maximally_mixed(), KL)
    assert report.passed
    assert report.worst <= 1e-12
    assert set(report.residuals) == {
        "r_normalization",
        "s_normalization",
        "reconstruct_rho",
        "reconstruct_sigma",
        "kraus_completeness",
        "divergence_match",
    }


def test_extremes_hand_case():
    ext = extremes_mM(plus_state(), maximally_mixed())
    assert ext.m == pytest.approx(0.0, abs=1e-12)
    assert ext.M == pytest.approx(2.0, abs=1e-12)


# ---------------------------------------------------------------------------
# classical reduction
# ---------------------------------------------------------------------------


def test_maximal_divergence_reduces_to_classical_on_diagonal_states():
    rng = substream(40)
    for _ in range(20):
        p = ClassicalDistribution(rng.dirichlet(np.ones(4)))
        q = ClassicalDistribution(rng.dirichlet(np.ones(4)) * 0.96 + 0.01)
        rho, sigma = diagonal_state(p), diagonal_state(q)
        for f in (KL, CHI2, TV):
            assert maximal_f_div(rho, sigma, f) == pytest.approx(
                classical_f_div(p, q, f), abs=1e-9
            )


def test_witness_on_diagonal_pair_sorts_likelihood_ratios():
    p = ClassicalDistribution([0.1, 0.6, 0.3])
    q = ClassicalDistribution([0.2, 0.3, 0.5])
    w = build_witness(diagonal_state(p), diagonal_state(q))
    assert np.allclose(w.lambdas, sorted([0.5, 2.0, 0.6]), atol=1e-12)
    # s collects the sigma weights in the same sorted order
    assert np.allclose(w.s.probs, [0.2, 0.5, 0.3], atol=1e-12)
    assert np.allclose(w.r.probs, [0.1, 0.3, 0.6], atol=1e-12)


# ---------------------------------------------------------------------------
# randomized witness invariants
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("dim", [2, 3, 4, 6])
def test_witness_report_passes_on_random_pairs(dim):
    for i in range(25):
        rho = random_density(dim, seed=substream(41, dim, i, 0))
        sigma = random_density(dim, seed=substream(41, dim, i, 1))
        report = verify_witness(rho, sigma, KL)
        assert report.passed, report.residuals


def test_witness_handles_rank_deficient_rho():
    rho = random_density(4, rank=2, seed=substream(43, 0))
    sigma = random_density(4, seed=substream(43, 1))
    w = build_witness(rho, sigma)
    assert np.sum(w.lambdas <= 1e-10) == 2
    assert np.sum(w.r.probs <= 1e-10) == 2
    assert verify_witness(rho, sigma, KL).passed
    assert verify_witness(rho, sigma, TV).passed


def test_witness_is_deterministic():
    rho = random_density(4, seed=substream(44, 0))
    sigma = random_density(4, seed=substream(44, 1))
    w1 = build_witness(rho, sigma)
    w2 = build_witness(rho, sigma)
    assert np.array_equal(w1.lambdas, w2.lambdas)
    assert np.array_equal(w1.basis, w2.basis)
    assert np.array_equal(w1.r.probs, w2.r.probs)
    assert np.array_equal(w1.channel.kraus, w2.channel.kraus)


def test_chi2_maximal_coincides_with_standard_quantum_chi2():
    worst = 0.0
    for i in range(200):
        rho = random_density(4, seed=substream(42, i, 0))
        sigma = random_density(4, seed=substream(42, i, 1))
        gap = abs(maximal_f_div(rho, sigma, CHI2) - quantum_chi2(rho, sigma))
        worst = max(worst, gap)
    assert worst <= 1e-9


def test_maximality_dominates_standard_divergences():
    for i in range(100):
        rho = random_density(4, seed=substream(45, i, 0))
        sigma = random_density(4, seed=substream(45, i, 1))
        rep = check_maximality(rho, sigma)
        assert rep["kl_slack"] >= -1e-10
        assert rep["tv_slack"] >= -1e-10
        assert rep["chi2_mismatch"] <= 1e-9
        assert rep["max_kl"] >= rep["relative_entropy"] - 1e-10
        assert rep["max_tv"] >= rep["trace_distance"] - 1e-10


def test_extremes_match_max_relative_entropy_in_both_directions():
    for i in range(50):
        rho = random_density(4, seed=substream(46, i, 0))
        sigma = random_density(4, seed=substream(46, i, 1))
        ext = extremes_mM(rho, sigma)
        assert math.log(ext.M) == pytest.approx(
            max_relative_entropy(rho, sigma), abs=1e-9
        )
        assert -math.log(ext.m) == pytest.approx(
            max_relative_entropy(sigma, rho), abs=1e-9
        )


def test_maximal_divergence_matches_direct_trace_formula():
    # For polynomial f the maximal divergence equals
    # tr(sqrt(sigma) f(sigma^{-1/2} rho sigma^{-1/2}) sqrt(sigma)),
    # computed here through an independent monomial-basis route.
    rng = substream(47)
    base = {
        1: np.array([-1.0, 1.0, 0.0, 0.0, 0.0]),
        2: np.array([1.0, -2.0, 1.0, 0.0, 0.0]),
        4: np.array([1.0, -4.0, 6.0, -4.0, 1.0]),
    }
    for i in range(20):
        c1 = float(rng.uniform(-1.0, 1.0))
        c2 = float(rng.uniform(0.0, 1.0))
        c4 = float(rng.uniform(0.0, 1.0))
        f = FGenerator(
            name="poly",
            value=lambda x, c1=c1, c2=c2, c4=c4: (
                c1 * (x - 1.0) + c2 * (x - 1.0) ** 2 + c4 * (x - 1.0) ** 4
            ),
            value_at_zero=-c1 + c2 + c4,
            second_derivative=lambda x, c2=c2, c4=c4: (
                2.0 * c2 + 12.0 * c4 * (x - 1.0) ** 2
            ),
        )
        coeffs = c1 * base[1] + c2 * base[2] + c4 * base[4]
        rho = random_density(4, seed=substream(47, i, 0))
        sigma = random_density(4, seed=substream(47, i, 1))
        inv_sqrt = inv_sqrt_psd(sigma.mat)
        eig = hermitian_eig(sigma.mat)
        sqrt_s = (eig.vectors * eig.eigenvalues**0.5) @ eig.vectors.conj().T
        t = inv_sqrt @ rho.mat @ inv_sqrt
        direct = float(
            np.trace(sqrt_s @ matrix_polynomial(coeffs, t) @ sqrt_s).real
        )
        scale = max(1.0, abs(direct))
        assert abs(maximal_f_div(rho, sigma, f) - direct) <= 1e-8 * scale


# ---------------------------------------------------------------------------
# data processing
# ---------------------------------------------------------------------------


def test_dpi_holds_for_operator_convex_generators():
    for i in range(40):
        rho = random_density(3, seed=substream(48, i, 0))
        sigma = random_density(3, seed=substream(48, i, 1))
        ch = random_channel(3, seed=substream(48, i, 2))
        for f in (KL, CHI2):
            before, after = check_dpi_maximal(rho, sigma, ch, f)
            assert after <= before + 1e-8


def test_dpi_rejects_non_operator_convex_generator():
    rho = random_density(2, seed=substream(49, 0))
    sigma = random_density(2, seed=substream(49, 1))
    ch = random_channel(2, seed=substream(49, 2))
    with pytest.raises(NotOperatorConvex):
        check_dpi_maximal(rho, sigma, ch, TV)


def test_witness_channel_attains_dpi_equality():
    # Feeding the classical witness pair through the recovery channel gives
    # back (rho, sigma), so the divergence is exactly preserved.
    for i in range(20):
        rho = random_density(4, seed=substream(50, i, 0))
        sigma = random_density(4, seed=substream(50, i, 1))
        w = build_witness(rho, sigma)
        before, after = check_dpi_maximal(
            diagonal_state(w.r), diagonal_state(w.s), w.channel, KL
        )
        assert after == pytest.approx(before, abs=1e-9)
        assert before == pytest.approx(w.f_divergence(KL), abs=1e-9)


# ---------------------------------------------------------------------------
# error paths
# ---------------------------------------------------------------------------


def test_witness_requires_invertible_sigma():
    with pytest.raises(SingularState):
        build_witness(maximally_mixed(), diagonal_state([1.0, 0.0]))


def test_witness_rejects_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        build_witness(
            random_density(2, seed=substream(51, 0)),
            random_density(3, seed=substream(51, 1)),
        )
