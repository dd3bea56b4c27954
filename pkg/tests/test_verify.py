"""Tests for the seeded Monte Carlo verification suites."""

import pytest

from qfdiv.generators import builtin_generator
from qfdiv.verify import (
    binette_sharpness_search,
    condition_rate,
    dpi_suite,
    maximality_suite,
    operator_jensen_suite,
    pinsker_suite,
    reverse_pinsker_suite,
    trace_identity_suite,
    witness_binette_suite,
    witness_suite,
    zeta1_suite,
)

KL = builtin_generator("kl")
CHI2 = builtin_generator("chi2")
TV = builtin_generator("tv")


def test_witness_suite_passes():
    result = witness_suite(dims=(2, 3, 4), pairs_per_dim=15, seed=42)
    assert result.name == "witness"
    assert result.passed
    assert result.worst <= 1e-9


def test_dpi_suite_passes_with_equality_through_recovery_channel():
    result = dpi_suite(dim=4, trials=25, seed=42)
    assert result.name == "dpi"
    assert result.passed
    assert result.extras["equality_worst"] <= 1e-9
    assert 0.0 <= result.extras["tv_increase_rate"] <= 1.0


def test_maximality_suite_passes():
    result = maximality_suite(dim=4, samples=100, seed=42)
    assert result.name == "maximality"
    assert result.passed


def test_pinsker_suite_passes():
    result = pinsker_suite(dim=4, samples=100, seed=42)
    assert result.name == "pinsker"
    assert result.passed


def test_reverse_pinsker_trace_distance_suite_fails_as_documented():
    # The trace-distance form of the reverse-Pinsker bound is numerically
    # false on condition-satisfying non-commuting pairs; the suite exists to
    # measure the violation, and the witness-form residual it carries must
    # stay at machine precision.
    result = reverse_pinsker_suite(dim=4, samples=100, seed=42)
    assert result.name == "reverse-pinsker"
    assert not result.passed
    assert result.worst > result.tol
    assert result.extras["condition_met"] > 0
    assert result.extras["violations_tv"] > 0
    assert result.extras["witness_form_worst"] <= 1e-9


def test_reverse_pinsker_suite_is_deterministic():
    a = reverse_pinsker_suite(dim=4, samples=50, seed=42)
    b = reverse_pinsker_suite(dim=4, samples=50, seed=42)
    assert a.worst == b.worst
    assert a.extras == b.extras


def test_witness_binette_suite_passes():
    result = witness_binette_suite(dim=4, samples=200, seed=42)
    assert result.name == "witness-binette"
    assert result.passed
    assert result.worst <= 1e-9


def test_zeta1_suite_passes_on_default_grids():
    result = zeta1_suite()
    assert result.name == "zeta1"
    assert result.passed
    assert result.worst <= 1e-7


def test_trace_identity_suite_passes():
    result = trace_identity_suite(trials=100, seed=42)
    assert result.name == "trace-identity"
    assert result.passed


def test_operator_jensen_suite_passes():
    result = operator_jensen_suite(trials=60, seed=42)
    assert result.name == "operator-jensen"
    assert result.passed


def test_condition_rate_is_one_for_commuting_pairs():
    result = condition_rate(dim=4, samples=200, seed=42, commuting=True)
    assert result.extras["rate"] == 1.0
    assert result.passed


def test_condition_rate_exceeds_eighty_percent_for_environment_doubled():
    result = condition_rate(dim=4, samples=500, seed=42)
    assert result.extras["environment"] == 8
    assert result.extras["rate"] > 0.80
    assert result.passed


def test_condition_rate_is_rare_for_square_hilbert_schmidt():
    result = condition_rate(dim=4, samples=300, seed=42, environment=4)
    assert result.extras["rate"] < 0.20
    assert not result.passed


@pytest.mark.parametrize("f", [KL, CHI2, TV], ids=lambda f: f.name)
def test_binette_bound_is_numerically_sharp(f):
    best = binette_sharpness_search(0.5, 2.0, f)
    assert best >= 1.0 - 1e-4
    assert best <= 1.0 + 1e-9
