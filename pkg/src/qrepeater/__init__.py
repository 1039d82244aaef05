"""Entanglement distribution over a chain of lossy cavities.

The package models an eight-atom repeater line: stage 1 heralds
entangled pairs on the outer atoms of two four-atom segments, stage 2
fuses those pairs either by a Bell measurement or by a second
cavity-mediated interaction.  :mod:`qrepeater.analytic` carries the
closed forms, :mod:`qrepeater.oracle` the independent numerical
propagation used to validate them.
"""

from .core import (
    FOUR_ATOM_KETS,
    TWO_QUBIT_KETS,
    DegenerateMeasurementError,
    DerivedParams,
    FourAtomState,
    ModelParams,
    SingularDetuningError,
    StageOneCoefficients,
    SwapOutcome,
    TwoQubitPureState,
    derive_params,
    ket_index,
    large_detuning_check,
)
from .analytic import (
    BellChoice,
    PairVariant,
    bsm_swap,
    collapse_pair,
    pair_state,
    parse_case,
    qed_collapse,
    qed_joint_state,
    qed_swap,
    stage1_coefficients,
    stage1_state,
)
from .measures import ComparisonReport, compare_states, concurrence_pure, phase_align
from .oracle import (
    FullVsEffectiveReport,
    OracleHamiltonian,
    build_effective,
    build_full,
    embed_pair_operator,
    full_vs_effective_report,
    postselect,
    propagate,
    wootters_concurrence,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "TWO_QUBIT_KETS",
    "FOUR_ATOM_KETS",
    "ket_index",
    "ModelParams",
    "DerivedParams",
    "TwoQubitPureState",
    "FourAtomState",
    "StageOneCoefficients",
    "SwapOutcome",
    "SingularDetuningError",
    "DegenerateMeasurementError",
    "derive_params",
    "large_detuning_check",
    "PairVariant",
    "BellChoice",
    "parse_case",
    "stage1_coefficients",
    "stage1_state",
    "pair_state",
    "collapse_pair",
    "bsm_swap",
    "qed_joint_state",
    "qed_collapse",
    "qed_swap",
    "concurrence_pure",
    "phase_align",
    "compare_states",
    "ComparisonReport",
    "OracleHamiltonian",
    "build_effective",
    "build_full",
    "embed_pair_operator",
    "propagate",
    "postselect",
    "wootters_concurrence",
    "FullVsEffectiveReport",
    "full_vs_effective_report",
]
