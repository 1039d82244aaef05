"""Closed-form protocol states for both stages of the repeater chain.

Stage 1: two pairs of atoms each start maximally entangled,
(|eg> - |ge>)/sqrt(2), on (1,2) and (3,4).  Atoms 2 and 3 sit in a lossy
cavity and undergo the dispersive photon-mediated exchange with coupling
lam = g**2/delta_c.  Measuring the cavity pair in |eg> or |ge> heralds an
entangled pair on the outer atoms (1,4); the same protocol on (5,6,7,8)
produces a pair on (5,8).

Stage 2: the two heralded pairs are fused on the middle atoms (4,5),
either by projecting onto a Bell state (bsm_swap) or by running a second
dispersive interaction for a duration tau - t and then measuring (4,5)
in the bare basis (qed_joint_state / qed_collapse).

All state amplitudes follow the ordering conventions of :mod:`.core`.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .core import (
    DegenerateMeasurementError,
    DerivedParams,
    FourAtomState,
    StageOneCoefficients,
    SwapOutcome,
    TwoQubitPureState,
    ket_index,
)
from .measures import concurrence_pure

__all__ = [
    "PairVariant",
    "BellChoice",
    "STAGE1_KETS",
    "parse_case",
    "stage1_coefficients",
    "stage1_state",
    "pair_state",
    "collapse_pair",
    "bsm_swap",
    "qed_joint_state",
    "qed_collapse",
    "qed_swap",
]

# kets populated by the stage-1 state, in coefficient order
STAGE1_KETS = ("eegg", "egeg", "egge", "geeg", "gege", "ggee")

_STAGE1_IDX = tuple(ket_index(k) for k in STAGE1_KETS)


class PairVariant(Enum):
    """Which heralding outcome on the cavity pair prepared the outer pair.

    EG carries the (amps[0], amps[4]) coefficients on (|eg>, |ge>), GE
    carries (amps[1], amps[5]).
    """

    EG = "eg"
    GE = "ge"


class BellChoice(Enum):
    """Bell state projected onto the fusion pair (4,5)."""

    PHI_PLUS = "phi_plus"  # (|ee> + |gg>)/sqrt(2)
    PSI_PLUS = "psi_plus"  # (|eg> + |ge>)/sqrt(2)

    @property
    def amps(self) -> np.ndarray:
        out = np.zeros(4, dtype=complex)
        if self is BellChoice.PHI_PLUS:
            out[ket_index("ee")] = out[ket_index("gg")] = 2 ** -0.5
        else:
            out[ket_index("eg")] = out[ket_index("ge")] = 2 ** -0.5
        return out


def parse_case(tag: str) -> tuple[PairVariant, PairVariant]:
    """Split a case tag like "eg-ge" into (left, right) pair variants."""
    try:
        left, right = tag.split("-")
        return PairVariant(left), PairVariant(right)
    except ValueError:
        raise ValueError(f"case tag must look like 'eg-ge', got {tag!r}") from None


def stage1_coefficients(derived: DerivedParams, t: float) -> StageOneCoefficients:
    """Amplitudes of the four-atom state after interaction time t >= 0.

    With z = lam*t the six coefficients are
    (-i/2) e^{-iz} sin z,  (1/2) e^{-iz} cos z,  -1/2,
    -(1/2) e^{-2iz},  (1/2) e^{-iz} cos z,  (-i/2) e^{-iz} sin z.
    lam may be complex; the trigonometric factors then grow or decay.
    """
    if t < 0:
        raise ValueError(f"interaction time must be non-negative, got {t}")
    z = derived.lam * t
    damp = np.exp(-1j * z)
    l_flip = -0.5j * damp * np.sin(z)
    l_stay = 0.5 * damp * np.cos(z)
    amps = np.array([l_flip, l_stay, -0.5, -0.5 * np.exp(-2j * z), l_stay, l_flip])
    norm = float(np.sqrt(np.sum(np.abs(amps) ** 2)))
    return StageOneCoefficients(amps=amps, norm=norm, t=float(t), lam=complex(derived.lam))


def stage1_state(
    derived: DerivedParams, t: float, labels: tuple[int, int, int, int] = (1, 2, 3, 4)
) -> FourAtomState:
    """Normalized four-atom state at time t on labels (1,2,3,4) or (5,6,7,8)."""
    if tuple(labels) not in ((1, 2, 3, 4), (5, 6, 7, 8)):
        raise ValueError(f"stage-1 states live on (1,2,3,4) or (5,6,7,8), got {labels}")
    c = stage1_coefficients(derived, t)
    amps = np.zeros(16, dtype=complex)
    amps[list(_STAGE1_IDX)] = c.amps / c.norm
    return FourAtomState(tuple(labels), amps)


def _variant_coeffs(c: StageOneCoefficients, variant: PairVariant) -> tuple[complex, complex]:
    if variant is PairVariant.EG:
        return complex(c.amps[0]), complex(c.amps[4])
    return complex(c.amps[1]), complex(c.amps[5])


def pair_state(
    c: StageOneCoefficients,
    variant: PairVariant,
    labels: tuple[int, int] = (1, 4),
) -> TwoQubitPureState:
    """Normalized heralded pair state a|eg> + b|ge> for the given variant."""
    a, b = _variant_coeffs(c, variant)
    n = np.hypot(abs(a), abs(b))
    if n == 0.0:
        raise DegenerateMeasurementError("heralded pair has zero amplitude")
    return TwoQubitPureState(labels, np.array([0.0, a, b, 0.0]) / n)


def collapse_pair(
    c: StageOneCoefficients,
    outcome: str,
    labels: tuple[int, int] = (1, 4),
) -> tuple[TwoQubitPureState, float]:
    """Collapse after measuring the cavity pair, with the Born probability.

    outcome is "eg" or "ge" on the measured (cavity) atoms; labels names
    the surviving outer pair.  Probability is taken against the
    normalized stage-1 state, so the four outcomes sum to one.
    """
    if outcome not in ("eg", "ge"):
        raise ValueError(f"measured outcome must be 'eg' or 'ge', got {outcome!r}")
    variant = PairVariant(outcome)
    a, b = _variant_coeffs(c, variant)
    weight = abs(a) ** 2 + abs(b) ** 2
    if weight == 0.0:
        raise DegenerateMeasurementError(f"outcome {outcome} has zero probability")
    prob = weight / (c.norm * c.norm)
    return pair_state(c, variant, labels), float(prob)


def bsm_swap(
    left: PairVariant,
    right: PairVariant,
    bell: BellChoice,
    c: StageOneCoefficients,
) -> SwapOutcome:
    """Fuse the two heralded pairs by a Bell measurement on atoms (4,5).

    The matched combinations (same variant with PHI_PLUS, different
    variants with PSI_PLUS) produce the projected Bell state itself on
    (1,8); the other four produce partially entangled states.  The
    returned probability is the closed form with the one-sided
    normalization (|amps[0]|^2 + |amps[4]|^2)^2, which the coefficient
    symmetry makes exact for every case.
    """
    a1, b1 = _variant_coeffs(c, left)
    a2, b2 = _variant_coeffs(c, right)
    denom = (abs(c.amps[0]) ** 2 + abs(c.amps[4]) ** 2) ** 2
    if bell is BellChoice.PHI_PLUS:
        u, v = a1 * b2, b1 * a2  # ket weights on |ee>, |gg> of (1,8)
        kets = ("ee", "gg")
    else:
        u, v = a1 * a2, b1 * b2  # ket weights on |eg>, |ge> of (1,8)
        kets = ("eg", "ge")
    bell_producing = (left is right) == (bell is BellChoice.PHI_PLUS)
    if bell_producing and bell is BellChoice.PHI_PLUS:
        prob = abs(u) ** 2 / denom
    else:
        prob = (abs(u) ** 2 + abs(v) ** 2) / (2.0 * denom)
    route = f"bsm-{bell.value}"
    case = f"{left.value}-{right.value}"
    if prob == 0.0:
        raise DegenerateMeasurementError(f"outcome {route} for case {case} has zero probability")
    amps = np.zeros(4, dtype=complex)
    if bell_producing:
        amps = bell.amps
    else:
        n = np.hypot(abs(u), abs(v))
        amps[ket_index(kets[0])] = u / n
        amps[ket_index(kets[1])] = v / n
    state = TwoQubitPureState((1, 8), amps)
    return SwapOutcome(
        state=state,
        probability=float(prob),
        concurrence=concurrence_pure(state),
        route=route,
        case=case,
    )


def qed_joint_state(
    left: PairVariant,
    right: PairVariant,
    c: StageOneCoefficients,
    tau: float,
) -> FourAtomState:
    """State of atoms (1,4,5,8) after the fusion pair interacted until tau.

    The fusion interaction runs from the stage-1 time c.t to tau >= c.t
    with the same exchange coupling, so the only new ingredient is the
    phase e^{-2i lam (tau - t)}.  The returned state is not renormalized:
    its norm records the decay accumulated during the extra interaction.
    """
    if tau < c.t:
        raise ValueError(f"tau={tau} precedes the stage-1 time t={c.t}")
    a1, b1 = _variant_coeffs(c, left)
    a2, b2 = _variant_coeffs(c, right)
    phase = np.exp(-2j * c.lam * (tau - c.t))
    half_p = 0.5 * (phase + 1.0)
    half_m = 0.5 * (phase - 1.0)
    pref = 1.0 / (np.hypot(abs(a1), abs(b1)) * np.hypot(abs(a2), abs(b2)))
    amps = np.zeros(16, dtype=complex)
    amps[ket_index("eegg")] = pref * a1 * a2 * half_m
    amps[ket_index("egeg")] = pref * a1 * a2 * half_p
    amps[ket_index("gege")] = pref * b1 * b2 * half_p
    amps[ket_index("ggee")] = pref * b1 * b2 * half_m
    amps[ket_index("egge")] = pref * a1 * b2
    amps[ket_index("geeg")] = pref * b1 * a2 * phase
    return FourAtomState((1, 4, 5, 8), amps)


def qed_collapse(
    joint: FourAtomState,
    outcome: str,
    case: str | None = None,
) -> SwapOutcome:
    """Measure atoms (4,5) of the joint state in the bare basis.

    outcome "eg" keeps the |eegg> and |gege> kets, outcome "ge" the
    |egeg> and |ggee> kets; either way the survivors form a|eg> + b|ge>
    on atoms (1,8).  The probability is (|a|^2+|b|^2) divided by the
    squared norm of the joint state, i.e. the Born rule applied after
    renormalizing the input.
    """
    if tuple(joint.labels) != (1, 4, 5, 8):
        raise ValueError(f"fusion states live on labels (1,4,5,8), got {joint.labels}")
    if outcome == "eg":
        a, b = joint.amp("eegg"), joint.amp("gege")
    elif outcome == "ge":
        a, b = joint.amp("egeg"), joint.amp("ggee")
    else:
        raise ValueError(f"measured outcome must be 'eg' or 'ge', got {outcome!r}")
    weight = abs(a) ** 2 + abs(b) ** 2
    route = f"qed-{outcome}"
    if weight == 0.0:
        raise DegenerateMeasurementError(f"outcome {route} has zero probability")
    total = float(np.sum(np.abs(joint.amps) ** 2))
    amps = np.array([0.0, a, b, 0.0]) / np.sqrt(weight)
    state = TwoQubitPureState((1, 8), amps)
    return SwapOutcome(
        state=state,
        probability=float(weight / total),
        concurrence=concurrence_pure(state),
        route=route,
        case=case,
    )


def qed_swap(
    left: PairVariant,
    right: PairVariant,
    c: StageOneCoefficients,
    tau: float,
    outcome: str,
) -> SwapOutcome:
    """Convenience wrapper: build the joint state and collapse it."""
    joint = qed_joint_state(left, right, c, tau)
    return qed_collapse(joint, outcome, case=f"{left.value}-{right.value}")
