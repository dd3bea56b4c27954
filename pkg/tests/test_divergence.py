"""Tests for classical f-divergences and the standard quantum divergences."""

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
from qfdiv.errors import DimensionMismatch, SingularState, ZeroReference
from qfdiv.generators import builtin_generator
from qfdiv.states import (
    ClassicalDistribution,
    diagonal_state,
    random_density,
    substream,
)

KL = builtin_generator("kl")
CHI2 = builtin_generator("chi2")
TV = builtin_generator("tv")

P34 = ClassicalDistribution([0.75, 0.25])
Q12 = ClassicalDistribution([0.5, 0.5])


# ---------------------------------------------------------------------------
# classical divergences: hand values
# ---------------------------------------------------------------------------


def test_classical_kl_hand_value():
    # 0.75 ln 1.5 + 0.25 ln 0.5 = 0.13081203594113697
    assert classical_f_div(P34, Q12, KL) == pytest.approx(
        0.13081203594113697, abs=1e-15
    )


def test_classical_chi2_hand_value():
    # 0.5 (1.5^2 + 0.5^2) - 1 = 0.25
    assert classical_f_div(P34, Q12, CHI2) == pytest.approx(0.25, abs=1e-15)


def test_classical_tv_hand_value():
    # 0.5 |1.5 - 1| + 0.5 |0.5 - 1| = 0.5 = ||p - q||_1
    assert classical_f_div(P34, Q12, TV) == pytest.approx(0.5, abs=1e-15)


def test_classical_divergence_vanishes_on_equal_distributions():
    for f in (KL, CHI2, TV):
        assert classical_f_div(Q12, Q12, f) == pytest.approx(0.0, abs=1e-15)


def test_classical_divergence_handles_zero_in_p():
    p = ClassicalDistribution([0.0, 1.0])
    # kl: q_0 f(0) = 0;  chi2: 0.5 (-1) + 0.5 (2^2 - 1) = 1;  tv: ||p-q||_1 = 1
    assert classical_f_div(p, Q12, KL) == pytest.approx(math.log(2.0), abs=1e-15)
    assert classical_f_div(p, Q12, CHI2) == pytest.approx(1.0, abs=1e-15)
    assert classical_f_div(p, Q12, TV) == pytest.approx(1.0, abs=1e-15)


def test_classical_divergence_rejects_zero_reference():
    with pytest.raises(ZeroReference):
        classical_f_div(Q12, ClassicalDistribution([1.0, 0.0]), KL)


def test_classical_divergence_rejects_length_mismatch():
    with pytest.raises(DimensionMismatch):
        classical_f_div(ClassicalDistribution([1.0]), Q12, KL)


# ---------------------------------------------------------------------------
# quantum divergences
# ---------------------------------------------------------------------------


def test_quantum_relative_entropy_pure_vs_mixed():
    # D(|+><+| || I/2) = ln 2
    assert quantum_relative_entropy(plus_state(), maximally_mixed()) == (
        pytest.approx(math.log(2.0), abs=1e-12)
    )


def test_quantum_chi2_pure_vs_mixed():
    # tr((2 rho)^2 / 2) - 1 = 2 tr(rho^2) - 1 = 1 for a pure state
    assert quantum_chi2(plus_state(), maximally_mixed()) == pytest.approx(
        1.0, abs=1e-12
    )


def test_trace_distance_pure_vs_mixed():
    assert trace_distance(plus_state(), maximally_mixed()) == pytest.approx(
        1.0, abs=1e-12
    )


def test_max_relative_entropy_pure_vs_mixed():
    # largest eigenvalue of sigma^{-1/2} rho sigma^{-1/2} is 2
    assert max_relative_entropy(plus_state(), maximally_mixed()) == pytest.approx(
        math.log(2.0), abs=1e-12
    )


def test_quantum_divergences_reduce_to_classical_on_diagonal_states():
    rng = substream(30)
    for _ in range(25):
        p = ClassicalDistribution(rng.dirichlet(np.ones(4)))
        q = ClassicalDistribution(rng.dirichlet(np.ones(4) * 3.0) * 0.96 + 0.01)
        rho, sigma = diagonal_state(p), diagonal_state(q)
        assert quantum_relative_entropy(rho, sigma) == pytest.approx(
            classical_f_div(p, q, KL), abs=1e-9
        )
        assert quantum_chi2(rho, sigma) == pytest.approx(
            classical_f_div(p, q, CHI2), abs=1e-9
        )
        assert trace_distance(rho, sigma) == pytest.approx(
            classical_f_div(p, q, TV), abs=1e-9
        )
        assert max_relative_entropy(rho, sigma) == pytest.approx(
            math.log(max(p.probs / q.probs)), abs=1e-9
        )


def test_quantum_divergences_vanish_on_equal_states():
    rho = random_density(4, seed=substream(31, 0))
    assert quantum_relative_entropy(rho, rho) == pytest.approx(0.0, abs=1e-10)
    assert quantum_chi2(rho, rho) == pytest.approx(0.0, abs=1e-10)
    assert trace_distance(rho, rho) == 0.0
    assert max_relative_entropy(rho, rho) == pytest.approx(0.0, abs=1e-10)


def test_quantum_divergences_require_invertible_reference():
    rho = maximally_mixed()
    singular = diagonal_state([1.0, 0.0])
    with pytest.raises(SingularState):
        quantum_relative_entropy(rho, singular)
    with pytest.raises(SingularState):
        quantum_chi2(rho, singular)
    with pytest.raises(SingularState):
        max_relative_entropy(rho, singular)


def test_quantum_divergences_reject_dimension_mismatch():
    rho = random_density(2, seed=substream(32, 0))
    sigma = random_density(3, seed=substream(32, 1))
    for fn in (
        quantum_relative_entropy,
        quantum_chi2,
        trace_distance,
        max_relative_entropy,
    ):
        with pytest.raises(DimensionMismatch):
            fn(rho, sigma)
