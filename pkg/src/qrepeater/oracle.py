"""Numerical ground truth for the closed forms.

Everything here is deliberately independent of :mod:`.analytic`: states
are propagated by matrix exponentials of explicitly built Hamiltonians
(scaling-and-squaring Pade via scipy; nothing assumes a unitary
diagonalization), measurements are generic partial inner products, and
the Wootters concurrence works for arbitrary two-qubit density matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .core import (
    DegenerateMeasurementError,
    DerivedParams,
    FourAtomState,
    ModelParams,
    TWO_QUBIT_KETS,
    TwoQubitPureState,
    derive_params,
    ket_index,
)

__all__ = [
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


@dataclass(frozen=True, eq=False)
class OracleHamiltonian:
    """A Hamiltonian matrix with its basis labels.

    kind is "effective" (two atoms) or "full" (two atoms plus cavity
    mode).  For the full model the bare frequencies and photon cutoff
    are recorded, together with the diagonal of the free part h0_diag
    used for interaction-picture transforms.
    """

    kind: str
    matrix: np.ndarray
    basis: tuple[str, ...]
    omega: float | None = None
    omega_atom: float | None = None
    photon_cutoff: int | None = None
    h0_diag: np.ndarray | None = None

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] != len(self.basis):
            raise ValueError("matrix must be square and match the basis length")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def build_effective(derived: DerivedParams) -> OracleHamiltonian:
    """Dispersive two-atom Hamiltonian over (|ee>, |eg>, |ge>, |gg>).

    |ee> carries energy 2*lam, the single-excitation block is
    lam * [[1, 1], [1, 1]] (equal shift and flip-flop), and |gg> is
    stationary.  lam may be complex.
    """
    lam = derived.lam
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = 2.0 * lam
    m[1, 1] = m[2, 2] = m[1, 2] = m[2, 1] = lam
    return OracleHamiltonian(kind="effective", matrix=m, basis=TWO_QUBIT_KETS)


def embed_pair_operator(op: np.ndarray, num_atoms: int, first: int) -> np.ndarray:
    """Embed a two-atom operator acting on adjacent slots (first, first+1).

    Slots are 0-based positions in the tensor product of num_atoms
    qubits.  Returns the (2**num_atoms)-dimensional matrix.
    """
    op = np.asarray(op, dtype=complex)
    if op.shape != (4, 4):
        raise ValueError("op must be a 4x4 two-atom operator")
    if not 0 <= first <= num_atoms - 2:
        raise ValueError(f"slot {first} does not fit {num_atoms} atoms")
    left = np.eye(2 ** first, dtype=complex)
    right = np.eye(2 ** (num_atoms - first - 2), dtype=complex)
    return np.kron(np.kron(left, op), right)


def build_full(
    params: ModelParams,
    photon_cutoff: int = 3,
    omega: float = 0.0,
) -> OracleHamiltonian:
    """Full non-Hermitian Hamiltonian of two atoms coupled to a lossy mode.

    Basis ordering is atom_a (x) atom_b (x) photon number 0..cutoff.  The
    free part holds the bare frequencies and the decay terms
    -i*gamma/2 per excited atom and -i*kappa/2 per photon; the coupling
    part exchanges one excitation between each atom and the mode with
    strength g.  Because the observable comparison is done in the
    interaction picture, any gauge choice of omega gives identical
    results; omega_atom is fixed to omega + delta.

    photon_cutoff must be at least 2 so that two-excitation exchange
    paths are representable.
    """
    if photon_cutoff < 2:
        raise ValueError(f"photon cutoff must be >= 2, got {photon_cutoff}")
    dim_ph = photon_cutoff + 1
    omega_atom = omega + params.delta

    a = np.diag(np.sqrt(np.arange(1.0, dim_ph)), 1).astype(complex)
    n_ph = a.conj().T @ a
    eye2 = np.eye(2, dtype=complex)
    eye_ph = np.eye(dim_ph, dtype=complex)
    raise_op = np.array([[0, 1], [0, 0]], dtype=complex)  # |e><g|
    lower_op = raise_op.conj().T
    n_e = np.diag([1.0, 0.0]).astype(complex)
    sz = np.diag([1.0, -1.0]).astype(complex)

    def triple(x, y, z):
        return np.kron(np.kron(x, y), z)

    h0 = omega * triple(eye2, eye2, n_ph)
    h0 += 0.5 * omega_atom * (triple(sz, eye2, eye_ph) + triple(eye2, sz, eye_ph))
    h0 += -0.5j * params.gamma * (triple(n_e, eye2, eye_ph) + triple(eye2, n_e, eye_ph))
    h0 += -0.5j * params.kappa * triple(eye2, eye2, n_ph)

    h1 = params.g * (
        triple(raise_op, eye2, a)
        + triple(lower_op, eye2, a.conj().T)
        + triple(eye2, raise_op, a)
        + triple(eye2, lower_op, a.conj().T)
    )

    basis = tuple(
        f"{atoms}|{n}" for atoms in TWO_QUBIT_KETS for n in range(dim_ph)
    )
    return OracleHamiltonian(
        kind="full",
        matrix=h0 + h1,
        basis=basis,
        omega=float(omega),
        omega_atom=float(omega_atom),
        photon_cutoff=int(photon_cutoff),
        h0_diag=np.diag(h0).copy(),
    )


def propagate(
    ham: OracleHamiltonian | np.ndarray,
    psi0: np.ndarray,
    duration: float,
) -> np.ndarray:
    """Apply exp(-i H duration) to psi0.

    The norm is generally not preserved: it shrinks under net decay and
    can grow when spontaneous emission outweighs cavity loss in the
    effective model.  duration = 0 returns psi0 exactly.
    """
    matrix = ham.matrix if isinstance(ham, OracleHamiltonian) else np.asarray(ham, dtype=complex)
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (matrix.shape[0],):
        raise ValueError(f"state dimension {psi0.shape} does not match H {matrix.shape}")
    return expm(-1j * duration * matrix) @ psi0


def postselect(
    state: FourAtomState,
    atoms: tuple[int, int],
    outcome: str | np.ndarray,
) -> tuple[TwoQubitPureState, float]:
    """Project two labeled atoms onto an outcome ket and keep the rest.

    outcome is a ket string like "eg" or a normalized length-4 vector
    over the basis of the measured pair, ordered as atoms is ordered.
    Returns the renormalized remaining pair (labels in ascending input
    order) and the Born probability taken against the normalized input.
    Raises :class:`DegenerateMeasurementError` for probability zero.
    """
    labels = state.labels
    if len(atoms) != 2 or atoms[0] == atoms[1]:
        raise ValueError("exactly two distinct atoms must be measured")
    try:
        pos = [labels.index(a) for a in atoms]
    except ValueError:
        raise ValueError(f"atoms {atoms} not found among labels {labels}") from None

    if isinstance(outcome, str):
        out = np.zeros(4, dtype=complex)
        out[ket_index(outcome)] = 1.0
    else:
        out = np.asarray(outcome, dtype=complex)
        if out.shape != (4,):
            raise ValueError("outcome vector must have length 4")
        if abs(np.linalg.norm(out) - 1.0) > 1e-10:
            raise ValueError("outcome ket must be normalized")

    total = float(np.sum(np.abs(state.amps) ** 2))
    if total == 0.0:
        raise ValueError("cannot measure a zero state")
    psi = state.amps.reshape((2, 2, 2, 2))
    collapsed = np.tensordot(out.reshape(2, 2).conj(), psi, axes=([0, 1], pos))
    weight = float(np.sum(np.abs(collapsed) ** 2))
    if weight == 0.0:
        raise DegenerateMeasurementError("projected outcome has zero probability")
    remaining = tuple(l for i, l in enumerate(labels) if i not in pos)
    pair = TwoQubitPureState(remaining, collapsed.reshape(4) / np.sqrt(weight))
    return pair, weight / total


_SYSY = np.array(
    [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=float
)  # sigma_y (x) sigma_y in the e<g basis


def wootters_concurrence(rho: np.ndarray) -> float:
    """Concurrence of an arbitrary two-qubit density matrix.

    Validates hermiticity, unit trace and positivity (all at 1e-10).
    The spin-flip eigenvalues are obtained as singular values of
    L^T (sigma_y x sigma_y) L with rho = L L^+, which is algebraically
    the usual sqrt-eigenvalue recipe but stays accurate for nearly pure
    inputs.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("expected a 4x4 density matrix")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-10:
        raise ValueError("density matrix must be Hermitian")
    if abs(np.trace(rho).real - 1.0) > 1e-10 or abs(np.trace(rho).imag) > 1e-10:
        raise ValueError("density matrix must have unit trace")
    evals, vecs = np.linalg.eigh(0.5 * (rho + rho.conj().T))
    if evals.min() < -1e-10:
        raise ValueError("density matrix must be positive semidefinite")
    factor = vecs * np.sqrt(np.clip(evals, 0.0, None))
    sv = np.linalg.svd(factor.T @ _SYSY @ factor, compute_uv=False)
    return float(max(0.0, sv[0] - sv[1] - sv[2] - sv[3]))


@dataclass(frozen=True)
class FullVsEffectiveReport:
    """Per-probe infidelities between full-model and effective dynamics.

    Each probe is an initial two-atom state (cavity starts in vacuum).
    vacuum_weights records how much population stayed in the cavity
    vacuum at the comparison time.
    """

    params: ModelParams
    t: float
    photon_cutoff: int
    labels: tuple[str, ...]
    infidelities: tuple[float, ...]
    vacuum_weights: tuple[float, ...]

    @property
    def max_infidelity(self) -> float:
        return max(self.infidelities)


_ROOT2 = 2 ** -0.5
_DEFAULT_PROBES = (
    ("ee", (1, 0, 0, 0)),
    ("eg", (0, 1, 0, 0)),
    ("ge", (0, 0, 1, 0)),
    ("gg", (0, 0, 0, 1)),
    ("eg+ge", (0, _ROOT2, _ROOT2, 0)),
    ("eg-ge", (0, _ROOT2, -_ROOT2, 0)),
    ("ee+gg", (_ROOT2, 0, 0, _ROOT2)),
)


def full_vs_effective_report(
    params: ModelParams,
    t: float,
    photon_cutoff: int = 3,
    omega: float = 0.0,
    probes: tuple[tuple[str, tuple], ...] = _DEFAULT_PROBES,
) -> FullVsEffectiveReport:
    """Propagate probe states under both models and compare.

    The full-model state is moved to the interaction picture and the
    cavity is projected onto vacuum before renormalizing.  Projection
    and the (diagonal, non-unitary when kappa != gamma) free rotation
    commute, so the rotation is applied to the vacuum block only; this
    keeps the amplified photon rows out of the arithmetic.
    """
    full = build_full(params, photon_cutoff=photon_cutoff, omega=omega)
    eff = build_effective(derive_params(params))
    dim_ph = photon_cutoff + 1
    u_full = expm(-1j * t * full.matrix)
    u_eff = expm(-1j * t * eff.matrix)
    h0_vac = full.h0_diag.reshape(4, dim_ph)[:, 0]
    rotate = np.exp(1j * h0_vac * t)

    labels, infids, weights = [], [], []
    for name, raw in probes:
        v = np.asarray(raw, dtype=complex)
        v = v / np.linalg.norm(v)
        psi_t = u_full @ np.kron(v, np.eye(dim_ph, dtype=complex)[0])
        vac = psi_t.reshape(4, dim_ph)[:, 0]
        weight = float(np.sum(np.abs(vac) ** 2) / np.sum(np.abs(psi_t) ** 2))
        vac = vac * rotate
        vac_norm = np.linalg.norm(vac)
        if vac_norm == 0.0:
            raise DegenerateMeasurementError(f"probe {name} left no vacuum population")
        vac = vac / vac_norm
        pe = u_eff @ v
        pe = pe / np.linalg.norm(pe)
        labels.append(name)
        infids.append(float(1.0 - abs(np.vdot(pe, vac)) ** 2))
        weights.append(weight)
    return FullVsEffectiveReport(
        params=params,
        t=float(t),
        photon_cutoff=int(photon_cutoff),
        labels=tuple(labels),
        infidelities=tuple(infids),
        vacuum_weights=tuple(weights),
    )
