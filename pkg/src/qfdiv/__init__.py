"""Classical and quantum f-divergences with explicit maximal-divergence
witnesses and numerically verified Pinsker-type bounds."""

from .bounds import (
    BoundReport,
    adaptive_simpson,
    audenaert_eisert_bound,
    binette_rhs,
    check_audenaert_eisert,
    check_quantum_pinsker_chi2,
    check_reverse_pinsker_quantum,
    decoherence_bounds,
    pinsker_chi2_lower,
    zeta1_closed,
    zeta1_integral,
)
from .divergence import (
    classical_f_div,
    max_relative_entropy,
    quantum_chi2,
    quantum_relative_entropy,
    trace_distance,
)
from .errors import QfdivError
from .generators import BUILTIN_NAMES, FGenerator, builtin_generator
from .maximal import (
    Extremes,
    Witness,
    WitnessReport,
    build_witness,
    check_dpi_maximal,
    check_maximality,
    extremes_mM,
    maximal_f_div,
    verify_witness,
)
from .states import (
    ClassicalDistribution,
    DensityMatrix,
    QuantumChannel,
    apply_channel,
    diagonal_state,
    random_channel,
    random_density,
    regularize,
    satisfies_abs_condition,
    substream,
)

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_NAMES",
    "BoundReport",
    "ClassicalDistribution",
    "DensityMatrix",
    "Extremes",
    "FGenerator",
    "QfdivError",
    "QuantumChannel",
    "Witness",
    "WitnessReport",
    "adaptive_simpson",
    "apply_channel",
    "audenaert_eisert_bound",
    "binette_rhs",
    "build_witness",
    "builtin_generator",
    "check_audenaert_eisert",
    "check_dpi_maximal",
    "check_maximality",
    "check_quantum_pinsker_chi2",
    "check_reverse_pinsker_quantum",
    "classical_f_div",
    "decoherence_bounds",
    "diagonal_state",
    "extremes_mM",
    "max_relative_entropy",
    "maximal_f_div",
    "pinsker_chi2_lower",
    "quantum_chi2",
    "quantum_relative_entropy",
    "random_channel",
    "random_density",
    "regularize",
    "satisfies_abs_condition",
    "substream",
    "trace_distance",
    "verify_witness",
    "zeta1_closed",
    "zeta1_integral",
]
