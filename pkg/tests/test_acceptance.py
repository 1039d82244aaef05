"""Acceptance gate: nine numbered criteria, one verdict line each.

Each test computes its figure of merit, records an "ACCEPTANCE n
PASS/FAIL ..." line with the measured values, then asserts.  The
conftest terminal-summary hook prints the recorded lines after the run.
"""

import numpy as np
import pytest

from qrepeater import (
    BellChoice,
    DegenerateMeasurementError,
    FourAtomState,
    ModelParams,
    PairVariant,
    bsm_swap,
    compare_states,
    concurrence_pure,
    derive_params,
    parse_case,
    postselect,
    propagate,
    qed_joint_state,
    qed_swap,
    stage1_coefficients,
    stage1_state,
    wootters_concurrence,
)
from qrepeater.analytic import pair_state
from qrepeater.cli import full_vs_effective_report
from qrepeater.oracle import build_effective, embed_pair_operator

from conftest import grid_params

REPORT = []

ALL_CASES = ("eg-eg", "eg-ge", "ge-eg", "ge-ge")


def record(criterion: int, ok: bool, detail: str) -> None:
    REPORT.append(f"ACCEPTANCE {criterion} {'PASS' if ok else 'FAIL'} {detail}")


def coeffs(params, t):
    return stage1_coefficients(derive_params(params), t)


def test_criterion_1_analytic_state_matches_propagation_oracle():
    """Closed-form four-atom state vs matrix-exponential propagation."""
    ts = np.linspace(0.0, 50.0, 17)
    worst = 0.0
    points = 0
    for p in grid_params():
        d = derive_params(p)
        h16 = embed_pair_operator(build_effective(d).matrix, 4, 1)
        psi0 = stage1_state(d, 0.0).amps
        for t in ts:
            ref = propagate(h16, psi0, t)
            ref = ref / np.linalg.norm(ref)
            worst = max(worst, compare_states(stage1_state(d, t).amps, ref).max_amp_diff)
            points += 1
    ok = worst <= 1e-10
    record(1, ok, f"analytic vs oracle state: max aligned amplitude diff {worst:.3e} <= 1e-10 ({points} grid points)")
    assert ok


def test_criterion_2_stated_equalities_hold():
    """Concurrence and success-probability coincidences between cases."""
    ts = np.linspace(0.0, 50.0, 17)[1:]
    offsets = (2.5, 7.9, 25.0)
    worst_c = worst_s = worst_q = 0.0
    for p in grid_params():
        for t in ts:
            c = coeffs(p, t)
            spread = [
                bsm_swap(*parse_case(case), bell, c).concurrence
                for case, bell in (
                    ("eg-eg", BellChoice.PSI_PLUS),
                    ("eg-ge", BellChoice.PHI_PLUS),
                    ("ge-eg", BellChoice.PHI_PLUS),
                    ("ge-ge", BellChoice.PSI_PLUS),
                )
            ]
            worst_c = max(worst_c, max(spread) - min(spread))
            spread = [
                bsm_swap(*parse_case(case), bell, c).probability
                for case, bell in (
                    ("eg-eg", BellChoice.PHI_PLUS),
                    ("eg-ge", BellChoice.PSI_PLUS),
                    ("ge-eg", BellChoice.PSI_PLUS),
                    ("ge-ge", BellChoice.PHI_PLUS),
                )
            ]
            worst_s = max(worst_s, max(spread) - min(spread))
            for off in offsets:
                q = {
                    (case, oc): qed_swap(*parse_case(case), c, t + off, oc).concurrence
                    for case in ALL_CASES
                    for oc in ("eg", "ge")
                }
                mids = [q["eg-ge", "eg"], q["eg-ge", "ge"], q["ge-eg", "eg"], q["ge-eg", "ge"]]
                worst_q = max(worst_q, max(mids) - min(mids))
                worst_q = max(worst_q, abs(q["ge-ge", "eg"] - q["eg-eg", "ge"]))
                worst_q = max(worst_q, abs(q["ge-ge", "ge"] - q["eg-eg", "eg"]))
    ok = worst_c <= 1e-12 and worst_s <= 1e-12 and worst_q <= 1e-12
    record(2, ok, f"stated equalities: spreads {worst_c:.3e} (swap concurrences), {worst_s:.3e} (success probabilities), {worst_q:.3e} (mediated-fusion concurrences), all <= 1e-12")
    assert ok


def test_criterion_3_success_probability_ceiling():
    """The Bell-producing outcome peaks at 1/4, first at lam*t = pi/4."""
    p = ModelParams(g=1.0, delta=10.0, kappa=10.0, gamma=10.0)
    lam = derive_params(p).lam.real
    step = 2e-3
    ts = np.arange(step, 50.0 + step / 2, step)
    probs = np.empty(ts.size)
    for i, t in enumerate(ts):
        probs[i] = bsm_swap(
            PairVariant.EG, PairVariant.EG, BellChoice.PHI_PLUS, coeffs(p, t)
        ).probability
    peak = float(np.max(probs))
    window = ts < (np.pi / 2) / lam
    first_peak_t = float(ts[window][np.argmax(probs[window])])
    loc_err = abs(lam * first_peak_t - np.pi / 4)
    ok = abs(peak - 0.25) <= 1e-6 and loc_err <= lam * step
    record(3, ok, f"success ceiling: max probability {peak:.9f} (|diff from 1/4| = {abs(peak - 0.25):.2e} <= 1e-6), first peak at lam*t = pi/4 + {loc_err:.1e}")
    assert ok


def test_criterion_4_balanced_decay_makes_everything_periodic():
    """kappa = gamma: all outputs repeat with period pi/lam (= pi*delta/g)."""
    offset = 7.3
    worst = 0.0
    for delta in (10.0, 30.0):
        p = ModelParams(g=1.0, delta=delta, kappa=10.0, gamma=10.0)
        d = derive_params(p)
        period = np.pi / d.lam.real
        assert period == pytest.approx(np.pi * delta, rel=1e-15)
        for k in range(1, 41):
            t = k * period / 40.0
            c0, c1 = coeffs(p, t), coeffs(p, t + period)
            worst = max(worst, float(np.max(np.abs(c0.amps - c1.amps))))
            for case in ALL_CASES:
                left, right = parse_case(case)
                for bell in BellChoice:
                    o0 = bsm_swap(left, right, bell, c0)
                    o1 = bsm_swap(left, right, bell, c1)
                    worst = max(worst, abs(o0.concurrence - o1.concurrence))
                    worst = max(worst, abs(o0.probability - o1.probability))
                for oc in ("eg", "ge"):
                    q0 = qed_swap(left, right, c0, t + offset, oc)
                    q1 = qed_swap(left, right, c1, t + period + offset, oc)
                    worst = max(worst, abs(q0.concurrence - q1.concurrence))
                    worst = max(worst, abs(q0.probability - q1.probability))
    ok = worst <= 1e-10
    record(4, ok, f"balanced-decay periodicity: max |f(t) - f(t + pi*delta)| = {worst:.3e} <= 1e-10 over all outputs, delta in {{10, 30}}")
    assert ok


def test_criterion_5_lossy_cavity_saturates_the_swap():
    """kappa > gamma: swap concurrence converges to 1, success to 1/4."""
    p = ModelParams(g=1.0, delta=10.0, kappa=20.0, gamma=10.0)
    ts = np.arange(0.0, 200.0 + 0.005, 0.01)
    conc = np.empty(ts.size)
    prob = np.empty(ts.size)
    for i, t in enumerate(ts):
        c = coeffs(p, t)
        conc[i] = bsm_swap(PairVariant.EG, PairVariant.EG, BellChoice.PSI_PLUS, c).concurrence
        try:
            prob[i] = bsm_swap(PairVariant.EG, PairVariant.EG, BellChoice.PHI_PLUS, c).probability
        except DegenerateMeasurementError:
            prob[i] = 0.0
    in_band = (np.abs(conc - 1.0) <= 1e-3) & (np.abs(prob - 0.25) <= 1e-3)
    stays = np.flip(np.cumprod(np.flip(in_band.astype(np.int64)))).astype(bool)
    ok = bool(stays.any()) and not bool(stays[0])
    onset = float(ts[int(np.argmax(stays))]) if stays.any() else float("inf")
    ok = ok and onset < 190.0
    record(5, ok, f"lossy saturation: concurrence -> 1 and success -> 1/4 within 1e-3 for all gt >= {onset:.2f} (through gt = 200; final values {conc[-1]:.6f}, {prob[-1]:.6f})")
    assert ok


def test_criterion_6_zero_length_fusion_window_leaves_product_states():
    """At tau = t the eg-measured fusion outcome carries no entanglement."""
    t = 5.0
    worst_p = 0.0
    exact = True
    for p in grid_params():
        c = coeffs(p, t)
        for case in ALL_CASES:
            left, right = parse_case(case)
            out = qed_swap(left, right, c, t, "eg")
            exact = exact and out.concurrence == 0.0
            joint = FourAtomState(
                (1, 4, 5, 8),
                np.kron(pair_state(c, left).amps, pair_state(c, right).amps),
            )
            collapsed, prob_oracle = postselect(joint, (4, 5), "eg")
            exact = exact and concurrence_pure(collapsed.amps) == 0.0
            worst_p = max(worst_p, abs(out.probability - prob_oracle))
    ok = exact and worst_p <= 1e-15
    record(6, ok, f"zero-length fusion window: eg-measured concurrence exactly 0.0 (analytic and projection) for all cases, probability agreement {worst_p:.1e}")
    assert ok


def test_criterion_7_mixed_state_concurrence_agrees_on_pure_inputs():
    rng = np.random.default_rng(20240817)
    worst = 0.0
    for _ in range(1000):
        v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        v /= np.linalg.norm(v)
        rho = np.outer(v, v.conj())
        worst = max(worst, abs(wootters_concurrence(rho) - concurrence_pure(v)))
    ok = worst <= 1e-12
    record(7, ok, f"density-matrix concurrence vs pure formula: max |diff| = {worst:.3e} <= 1e-12 over 1000 seeded states")
    assert ok


def test_criterion_8_dispersive_model_is_valid_at_large_detuning():
    """Full atom-cavity propagation vs the reduced model, vacuum start."""
    ts = (2.5, 5.0, 10.0)

    def max_inf(params):
        return max(full_vs_effective_report(params, t, photon_cutoff=3).max_infidelity for t in ts)

    far_balanced = max_inf(ModelParams(g=1.0, delta=30.0, kappa=10.0, gamma=10.0))
    # sqrt(875) + 5j also has magnitude 30, with unequal decay rates
    far_lossy = max_inf(ModelParams(g=1.0, delta=float(np.sqrt(875.0)), kappa=20.0, gamma=10.0))
    near = max_inf(ModelParams(g=1.0, delta=3.0, kappa=10.0, gamma=10.0))
    far = max(far_balanced, far_lossy)
    ok = far <= 0.05 and far < near
    record(8, ok, f"dispersive validity: infidelity {far_balanced:.2e} (balanced) / {far_lossy:.2e} (unequal rates) at |delta_c| = 30g, both <= 0.05 and < {near:.2e} at |delta_c| = 3g")
    assert ok


def test_criterion_9_closed_form_swap_probabilities_match_projection():
    """Both Bell projections, all four cases, against the brute-force oracle."""
    worst_p = worst_c = 0.0
    combos = 0
    for p in grid_params():
        for t in (3.125, 7.7, 12.5, 31.0):
            c = coeffs(p, t)
            for case in ALL_CASES:
                left, right = parse_case(case)
                joint = FourAtomState(
                    (1, 4, 5, 8),
                    np.kron(pair_state(c, left).amps, pair_state(c, right).amps),
                )
                for bell in BellChoice:
                    out = bsm_swap(left, right, bell, c)
                    projected, prob = postselect(joint, (4, 5), bell.amps)
                    worst_p = max(worst_p, abs(out.probability - prob))
                    worst_c = max(
                        worst_c,
                        abs(out.concurrence - concurrence_pure(projected.amps)),
                    )
                    combos += 1
    ok = worst_p <= 1e-12 and worst_c <= 1e-12
    record(9, ok, f"closed forms vs Bell projection: max probability diff {worst_p:.3e}, max concurrence diff {worst_c:.3e}, both <= 1e-12 ({combos} projections; published one-sided normalization is exact)")
    assert ok
