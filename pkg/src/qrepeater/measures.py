"""Entanglement measures and state-comparison helpers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import TwoQubitPureState

__all__ = ["concurrence_pure", "phase_align", "ComparisonReport", "compare_states"]


def concurrence_pure(state: TwoQubitPureState | np.ndarray) -> float:
    """Concurrence 2|a*d - b*c| of a normalized two-qubit pure state.

    Accepts a :class:`TwoQubitPureState` or a bare length-4 amplitude
    vector over (|ee>, |eg>, |ge>, |gg>).  Raises ValueError for
    unnormalized input.  The result is clipped into [0, 1].
    """
    amps = np.asarray(getattr(state, "amps", state), dtype=complex)
    if amps.shape != (4,):
        raise ValueError("expected a two-qubit amplitude vector of length 4")
    if abs(np.linalg.norm(amps) - 1.0) > 1e-10:
        raise ValueError("concurrence_pure requires a normalized state")
    a, b, c, d = amps
    return float(min(1.0, max(0.0, 2.0 * abs(a * d - b * c))))


def phase_align(amps: np.ndarray) -> np.ndarray:
    """Rotate a state vector so its largest-magnitude amplitude is real positive.

    Removes the global phase deterministically; a zero vector is returned
    unchanged.
    """
    amps = np.asarray(amps, dtype=complex)
    k = int(np.argmax(np.abs(amps)))
    mag = abs(amps[k])
    if mag == 0.0:
        return amps.copy()
    return amps * (amps[k].conjugate() / mag)


@dataclass(frozen=True)
class ComparisonReport:
    """Fidelity |<x|y>|**2, its complement and the worst amplitude
    deviation after both vectors were rotated to a common phase gauge."""

    fidelity: float
    infidelity: float
    max_amp_diff: float
    phase_aligned: bool = True


def compare_states(x: np.ndarray, y: np.ndarray) -> ComparisonReport:
    """Compare two normalized state vectors of equal dimension.

    fidelity + infidelity = 1 by construction.  max_amp_diff is measured
    after y was rotated by the phase of <x|y>, which cancels the global
    phase stably even when several amplitudes tie in magnitude (aligning
    each vector to its own largest entry is ambiguous there).  Orthogonal
    inputs are compared without rotation.
    """
    x = np.asarray(getattr(x, "amps", x), dtype=complex)
    y = np.asarray(getattr(y, "amps", y), dtype=complex)
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    overlap = complex(np.vdot(x, y))
    fidelity = float(abs(overlap) ** 2)
    y_rot = y if overlap == 0 else y * (overlap.conjugate() / abs(overlap))
    diff = float(np.max(np.abs(x - y_rot)))
    return ComparisonReport(fidelity=fidelity, infidelity=1.0 - fidelity, max_amp_diff=diff)
