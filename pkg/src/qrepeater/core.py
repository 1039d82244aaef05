"""Domain types and parameter handling for the repeater chain.

Unit and ordering conventions used throughout the package:

* the atom-field coupling g sets the scale: every rate is quoted as a
  multiple of g and every time as a multiple of 1/g (axes are g*t),
* qubit basis states are ordered with |e> before |g>; multi-atom kets
  list atoms by ascending label with tensor factors running left to
  right, so "eegg" reads atom-by-atom in label order,
* all value objects are immutable after construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

__all__ = [
    "TWO_QUBIT_KETS",
    "FOUR_ATOM_KETS",
    "ket_index",
    "SingularDetuningError",
    "DegenerateMeasurementError",
    "ModelParams",
    "DerivedParams",
    "TwoQubitPureState",
    "FourAtomState",
    "StageOneCoefficients",
    "SwapOutcome",
    "derive_params",
    "large_detuning_check",
]

TWO_QUBIT_KETS = ("ee", "eg", "ge", "gg")
FOUR_ATOM_KETS = tuple("".join(k) for k in itertools.product("eg", repeat=4))


def ket_index(ket: str) -> int:
    """Index of a ket string such as "eg" or "eegg" in the lexicographic basis.

    |e> sorts before |g>; the first letter is the most significant digit.
    """
    idx = 0
    for ch in ket:
        if ch not in "eg":
            raise ValueError(f"ket letters must be 'e' or 'g', got {ket!r}")
        idx = 2 * idx + (ch == "g")
    return idx


class SingularDetuningError(ValueError):
    """The complex detuning vanished, so the exchange coupling is undefined."""


class DegenerateMeasurementError(ValueError):
    """The requested measurement outcome has probability zero; no
    post-measurement state exists."""


@dataclass(frozen=True)
class ModelParams:
    """Physical rates of the lossy atom-cavity model.

    Parameters
    ----------
    g : float
        Atom-field coupling, must be positive.  Sets the unit of rate.
    delta : float
        Atom-field detuning (atomic transition minus cavity frequency).
        Any sign is allowed.
    kappa : float
        Cavity photon leakage rate, non-negative.
    gamma : float
        Atomic spontaneous emission rate, non-negative.
    """

    g: float = 1.0
    delta: float = 0.0
    kappa: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        if not self.g > 0:
            raise ValueError(f"g must be positive, got {self.g}")
        if self.kappa < 0 or self.gamma < 0:
            raise ValueError("decay rates kappa and gamma must be non-negative")


@dataclass(frozen=True)
class DerivedParams:
    """Quantities derived from :class:`ModelParams`.

    delta_c is the dissipation-shifted complex detuning
    delta + i*(kappa - gamma)/2 and lam = g**2 / delta_c is the effective
    photon-mediated exchange coupling between the two cavity atoms.
    """

    delta_c: complex
    lam: complex


def derive_params(params: ModelParams) -> DerivedParams:
    """Compute the complex detuning and effective exchange coupling.

    Pure function: identical inputs give bit-identical outputs.  Raises
    :class:`SingularDetuningError` when the complex detuning is zero.
    """
    delta_c = complex(params.delta, 0.5 * (params.kappa - params.gamma))
    if delta_c == 0:
        raise SingularDetuningError(
            "delta + i(kappa - gamma)/2 = 0: the exchange coupling g**2/delta_c "
            "is undefined"
        )
    lam = params.g * params.g / delta_c
    return DerivedParams(delta_c=delta_c, lam=lam)


def large_detuning_check(params: ModelParams, factor: float = 10.0) -> bool:
    """True when |delta_c| >= factor * g, the regime where the dispersive
    closed forms are trustworthy.  Advisory only; nothing blocks on it."""
    if not factor > 0:
        raise ValueError("factor must be positive")
    delta_c = complex(params.delta, 0.5 * (params.kappa - params.gamma))
    return abs(delta_c) >= factor * params.g


def _frozen_amps(raw, size: int) -> np.ndarray:
    amps = np.array(raw, dtype=complex)
    if amps.shape != (size,):
        raise ValueError(f"amplitude vector must have shape ({size},), got {amps.shape}")
    amps.setflags(write=False)
    return amps


@dataclass(frozen=True, eq=False)
class TwoQubitPureState:
    """Pure state of one labeled atom pair over (|ee>, |eg>, |ge>, |gg>)."""

    labels: tuple[int, int]
    amps: np.ndarray

    def __post_init__(self):
        labels = tuple(int(l) for l in self.labels)
        if len(labels) != 2:
            raise ValueError("a pair state carries exactly two atom labels")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "amps", _frozen_amps(self.amps, 4))

    def amp(self, ket: str) -> complex:
        if len(ket) != 2:
            raise ValueError("two-qubit kets have two letters")
        return complex(self.amps[ket_index(ket)])

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalize(self) -> "TwoQubitPureState":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize a zero state")
        return TwoQubitPureState(self.labels, self.amps / n)


@dataclass(frozen=True, eq=False)
class FourAtomState:
    """Pure state of four labeled atoms over the 16 kets "eeee".."gggg"."""

    labels: tuple[int, int, int, int]
    amps: np.ndarray

    def __post_init__(self):
        labels = tuple(int(l) for l in self.labels)
        if len(labels) != 4:
            raise ValueError("a four-atom state carries exactly four atom labels")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "amps", _frozen_amps(self.amps, 16))

    def amp(self, ket: str) -> complex:
        if len(ket) != 4:
            raise ValueError("four-atom kets have four letters")
        return complex(self.amps[ket_index(ket)])

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalize(self) -> "FourAtomState":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize a zero state")
        return FourAtomState(self.labels, self.amps / n)


@dataclass(frozen=True, eq=False)
class StageOneCoefficients:
    """The six ket amplitudes of the post-interaction four-atom state.

    amps holds the coefficients of (|eegg>, |egeg>, |egge>, |geeg>,
    |gege>, |ggee>) in that order, norm is the Euclidean norm of amps,
    t is the interaction time and lam the exchange coupling that
    produced them.  Structure is validated on construction: the first
    and last entries coincide, as do the second and fifth, and the
    third has magnitude 1/2 exactly.
    """

    amps: np.ndarray
    norm: float
    t: float
    lam: complex

    def __post_init__(self):
        amps = _frozen_amps(self.amps, 6)
        object.__setattr__(self, "amps", amps)
        if amps[0] != amps[5] or amps[1] != amps[4]:
            raise ValueError("coefficient symmetry violated: need amps[0]==amps[5] and amps[1]==amps[4]")
        if abs(amps[2]) != 0.5:
            raise ValueError("the stationary coefficient must have magnitude 1/2")
        recomputed = float(np.sqrt(np.sum(np.abs(amps) ** 2)))
        if abs(self.norm - recomputed) > 1e-12 * max(1.0, recomputed):
            raise ValueError("stored norm disagrees with the amplitudes")


@dataclass(frozen=True, eq=False)
class SwapOutcome:
    """Post-measurement pair state with its outcome probability and concurrence.

    route is one of "bsm-phi_plus", "bsm-psi_plus", "qed-eg", "qed-ge";
    case tags the input pair variants as "<left>-<right>" where each side
    is the stage-1 heralding outcome ("eg" or "ge") that prepared it.
    """

    state: TwoQubitPureState
    probability: float
    concurrence: float
    route: str
    case: str | None = None

    def __post_init__(self):
        if not -1e-9 <= self.probability <= 1 + 1e-9:
            raise ValueError(f"probability out of range: {self.probability}")
        if not -1e-9 <= self.concurrence <= 1 + 1e-9:
            raise ValueError(f"concurrence out of range: {self.concurrence}")
