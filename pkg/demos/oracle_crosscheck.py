"""Every closed form in the package against an independent numeric route.

Three cross-checks, mirroring the library's verify battery:

1. the stage-1 closed-form state vs matrix-exponential propagation of
   the reduced four-atom Hamiltonian, across decay regimes;
2. the reduced model itself vs full atom-cavity propagation with the
   photon mode kept, as a function of detuning (validity of the
   far-detuned elimination);
3. the general density-matrix concurrence vs the pure-state formula on
   random states.
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from qrepeater import (
    ModelParams,
    build_effective,
    compare_states,
    concurrence_pure,
    derive_params,
    embed_pair_operator,
    full_vs_effective_report,
    propagate,
    stage1_state,
    wootters_concurrence,
)

OUT = os.path.join(os.path.dirname(__file__), "output")


def stage1_residuals():
    ts = np.linspace(0.0, 50.0, 26)
    rows = []
    for kappa, gamma in ((10.0, 10.0), (20.0, 10.0), (10.0, 20.0), (0.0, 0.0)):
        p = ModelParams(g=1.0, delta=10.0, kappa=kappa, gamma=gamma)
        d = derive_params(p)
        h16 = embed_pair_operator(build_effective(d).matrix, 4, 1)
        psi0 = stage1_state(d, 0.0).amps
        diffs = []
        for t in ts:
            ref = propagate(h16, psi0, t)
            ref /= np.linalg.norm(ref)
            diffs.append(compare_states(stage1_state(d, t).amps, ref).max_amp_diff)
        rows.append((f"kappa={kappa:g} gamma={gamma:g}", ts, np.array(diffs)))
    return rows


def detuning_validity():
    deltas = np.array([3.0, 5.0, 8.0, 12.0, 20.0, 30.0, 50.0])
    infs = []
    for delta in deltas:
        p = ModelParams(g=1.0, delta=float(delta), kappa=10.0, gamma=10.0)
        inf = max(
            full_vs_effective_report(p, t, photon_cutoff=3).max_infidelity
            for t in (2.5, 5.0, 10.0)
        )
        infs.append(inf)
    return deltas, np.array(infs)


def concurrence_residuals(n=400):
    rng = np.random.default_rng(20240817)
    pure, mixed = [], []
    for _ in range(n):
        v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        v /= np.linalg.norm(v)
        pure.append(concurrence_pure(v))
        mixed.append(wootters_concurrence(np.outer(v, v.conj())))
    return np.array(pure), np.array(mixed)


def main():
    os.makedirs(OUT, exist_ok=True)
    fig, (ax1, ax2, ax3) = plt.subplots(1, 3, figsize=(13, 4))

    for label, ts, diffs in stage1_residuals():
        ax1.semilogy(ts, np.maximum(diffs, 1e-18), marker=".", label=label)
        print(f"stage 1 vs propagation, {label}: max diff {diffs.max():.2e}")
    ax1.set_xlabel("gt")
    ax1.set_ylabel("max aligned amplitude difference")
    ax1.set_title("closed form vs matrix exponential", fontsize=10)
    ax1.legend(fontsize=7)

    deltas, infs = detuning_validity()
    ax2.loglog(deltas, infs, marker="o")
    guide = infs[-1] * (deltas / deltas[-1]) ** -2.0
    ax2.loglog(deltas, guide, linestyle=":", color="gray", label="1/delta^2 trend")
    ax2.set_xlabel("delta / g")
    ax2.set_ylabel("worst infidelity, gt <= 10")
    ax2.set_title("reduced model vs full atom-cavity model", fontsize=10)
    ax2.legend(fontsize=8)
    print(f"reduced-model infidelity: {infs[0]:.2e} at delta=3g, {infs[-1]:.2e} at delta=50g")

    pure, mixed = concurrence_residuals()
    ax3.scatter(pure, np.abs(mixed - pure) + 1e-18, s=6)
    ax3.set_yscale("log")
    ax3.set_xlabel("pure-state concurrence")
    ax3.set_ylabel("|density-matrix route - pure route|")
    ax3.set_title("concurrence, two routes", fontsize=10)
    print(f"concurrence route disagreement: max {np.abs(mixed - pure).max():.2e} over {pure.size} states")

    fig.tight_layout()
    path = os.path.join(OUT, "oracle_crosscheck.png")
    fig.savefig(path, dpi=120)
    print(f"figure written to {path}")


if __name__ == "__main__":
    main()
