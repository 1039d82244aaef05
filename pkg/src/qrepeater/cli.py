"""Command-line front end.

Subcommands: stage1, bsm, qed, sweep, verify.  All rate flags are quoted
in units of g and times as g*t.  Sweeps write CSV (RFC-4180 style) or
JSON datasets with a documented column schema; verify runs the built-in
cross-check battery and emits a JSON report.

Exit codes: 0 success, 1 verification failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .analytic import (
    BellChoice,
    PairVariant,
    bsm_swap,
    collapse_pair,
    parse_case,
    qed_joint_state,
    qed_swap,
    stage1_coefficients,
    stage1_state,
)
from .core import (
    DegenerateMeasurementError,
    ModelParams,
    SingularDetuningError,
    derive_params,
    large_detuning_check,
)
from .measures import compare_states, concurrence_pure, phase_align
from .oracle import (
    build_effective,
    embed_pair_operator,
    full_vs_effective_report,
    postselect,
    propagate,
    wootters_concurrence,
)

BSM_ROUTES = ("bsm-phi_plus", "bsm-psi_plus")
QED_ROUTES = ("qed-eg", "qed-ge")
ALL_CASES = ("eg-eg", "eg-ge", "ge-eg", "ge-ge")


# ---------------------------------------------------------------------------
# sweep machinery

@dataclass(frozen=True)
class SweepSpec:
    """One branch of a sweep: fixed parameters plus a time or tau grid.

    Grids are (start, stop, steps) in g*t units with steps >= 2 and
    start < stop.  Exactly one of t_grid / t_fixed must be set; tau_grid
    requires t_fixed (the fusion sweeps hold the stage-1 time constant).
    """

    params: ModelParams
    cases: tuple[str, ...]
    routes: tuple[str, ...]
    t_grid: tuple[float, float, int] | None = None
    t_fixed: float | None = None
    tau_grid: tuple[float, float, int] | None = None

    def __post_init__(self):
        if (self.t_grid is None) == (self.t_fixed is None):
            raise ValueError("exactly one of t_grid / t_fixed must be given")
        if self.tau_grid is not None and self.t_fixed is None:
            raise ValueError("a tau grid requires a fixed stage-1 time")
        if self.t_fixed is not None and self.tau_grid is None:
            raise ValueError("a fixed stage-1 time requires a tau grid")
        for grid in (self.t_grid, self.tau_grid):
            if grid is None:
                continue
            start, stop, steps = grid
            if steps < 2 or not start < stop:
                raise ValueError(f"grid must satisfy start < stop and steps >= 2, got {grid}")
        if not self.cases or not self.routes:
            raise ValueError("at least one case and one route are required")
        for case in self.cases:
            parse_case(case)
        expected = QED_ROUTES if self.tau_grid is not None else BSM_ROUTES
        for route in self.routes:
            if route not in expected:
                raise ValueError(f"route {route!r} does not fit this sweep (expected {expected})")


def _grid(points: tuple[float, float, int]) -> np.ndarray:
    start, stop, steps = points
    return np.linspace(start, stop, steps)


def sweep_columns(spec: SweepSpec) -> list[str]:
    cols = ["delta", "kappa", "gamma", "gt"]
    if spec.tau_grid is not None:
        cols.append("gtau")
    cols += ["case", "route", "concurrence", "success_probability", "N"]
    return cols


def _swap_for_route(case: str, route: str, coeffs, tau: float | None):
    left, right = parse_case(case)
    if route == "bsm-phi_plus":
        return bsm_swap(left, right, BellChoice.PHI_PLUS, coeffs)
    if route == "bsm-psi_plus":
        return bsm_swap(left, right, BellChoice.PSI_PLUS, coeffs)
    if route in QED_ROUTES:
        return qed_swap(left, right, coeffs, tau, route.split("-")[1])
    raise ValueError(f"unknown route {route!r}")


def run_sweep(spec: SweepSpec) -> list[dict]:
    """Evaluate one sweep branch; row order is grid-major, then case, then route.

    Points where the requested outcome has probability zero are kept
    with success_probability 0.0 and concurrence NaN.
    """
    p = spec.params
    d = derive_params(p)
    base = {"delta": p.delta / p.g, "kappa": p.kappa / p.g, "gamma": p.gamma / p.g}
    rows: list[dict] = []

    def emit(gt, gtau, case, route, coeffs):
        row = dict(base)
        row["gt"] = float(gt)
        if gtau is not None:
            row["gtau"] = float(gtau)
        row["case"] = case
        row["route"] = route
        try:
            out = _swap_for_route(case, route, coeffs, None if gtau is None else gtau / p.g)
            row["concurrence"] = out.concurrence
            row["success_probability"] = out.probability
        except DegenerateMeasurementError:
            row["concurrence"] = math.nan
            row["success_probability"] = 0.0
        row["N"] = coeffs.norm
        rows.append(row)

    if spec.tau_grid is None:
        for gt in _grid(spec.t_grid):
            coeffs = stage1_coefficients(d, gt / p.g)
            for case in spec.cases:
                for route in spec.routes:
                    emit(gt, None, case, route, coeffs)
    else:
        coeffs = stage1_coefficients(d, spec.t_fixed / p.g)
        for gtau in _grid(spec.tau_grid):
            for case in spec.cases:
                for route in spec.routes:
                    emit(spec.t_fixed, gtau, case, route, coeffs)
    return rows


def write_rows(rows: list[dict], columns: list[str], path: str, fmt: str) -> None:
    """Serialize sweep rows deterministically.

    CSV floats use the shortest round-trip repr; the JSON mirror encodes
    NaN concurrences as null.
    """
    if fmt == "csv":
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(columns)
            for row in rows:
                writer.writerow(
                    [repr(float(v)) if isinstance(v, float) else str(v)
                     for v in (row[c] for c in columns)]
                )
    elif fmt == "json":
        clean = [
            {c: (None if isinstance(row[c], float) and math.isnan(row[c]) else row[c])
             for c in columns}
            for row in rows
        ]
        with open(path, "w") as fh:
            json.dump(clean, fh, indent=2)
            fh.write("\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# figure presets

_BSM_GRID = (0.0, 100.0, 2001)
_QED_STEPS = 2001
_QED_SPAN = 100.0


def _bsm_branch(delta, kappa, gamma, route):
    return SweepSpec(
        params=ModelParams(g=1.0, delta=delta, kappa=kappa, gamma=gamma),
        cases=("eg-eg",),
        routes=(route,),
        t_grid=_BSM_GRID,
    )


def _qed_branch(delta, kappa, gamma, gt, case, route):
    return SweepSpec(
        params=ModelParams(g=1.0, delta=delta, kappa=kappa, gamma=gamma),
        cases=(case,),
        routes=(route,),
        t_fixed=gt,
        tau_grid=(gt, gt + _QED_SPAN, _QED_STEPS),
    )


PRESETS: dict[str, tuple[SweepSpec, ...]] = {
    # fused-pair concurrence vs gt through the Bell-measurement route
    "fig2a": (_bsm_branch(10, 10, 10, "bsm-psi_plus"), _bsm_branch(10, 20, 10, "bsm-psi_plus")),
    "fig2b": (_bsm_branch(10, 20, 10, "bsm-psi_plus"), _bsm_branch(30, 20, 10, "bsm-psi_plus")),
    # Bell-route success probability vs gt
    "fig3a": (_bsm_branch(10, 10, 10, "bsm-phi_plus"), _bsm_branch(10, 20, 10, "bsm-phi_plus")),
    "fig3b": (_bsm_branch(10, 20, 10, "bsm-phi_plus"), _bsm_branch(30, 20, 10, "bsm-phi_plus")),
    # mediated-fusion concurrences vs gtau at fixed gt
    "fig4a": (_qed_branch(10, 20, 10, 10, "eg-eg", "qed-eg"), _qed_branch(30, 20, 10, 10, "eg-eg", "qed-eg")),
    "fig4b": (_qed_branch(10, 20, 10, 10, "eg-eg", "qed-ge"), _qed_branch(30, 20, 10, 10, "eg-eg", "qed-ge")),
    "fig4c": (_qed_branch(10, 20, 10, 10, "eg-ge", "qed-eg"), _qed_branch(30, 20, 10, 10, "eg-ge", "qed-eg")),
    "fig5a": (_qed_branch(10, 10, 10, 10, "eg-eg", "qed-eg"), _qed_branch(10, 20, 10, 10, "eg-eg", "qed-eg")),
    "fig5b": (_qed_branch(10, 10, 10, 10, "eg-eg", "qed-ge"), _qed_branch(10, 20, 10, 10, "eg-eg", "qed-ge")),
    "fig5c": (_qed_branch(10, 10, 10, 10, "eg-ge", "qed-eg"), _qed_branch(10, 20, 10, 10, "eg-ge", "qed-eg")),
    "fig6a": (_qed_branch(10, 20, 10, 3, "eg-eg", "qed-eg"), _qed_branch(10, 20, 10, 10, "eg-eg", "qed-eg")),
    "fig6b": (_qed_branch(10, 20, 10, 3, "eg-eg", "qed-ge"), _qed_branch(10, 20, 10, 10, "eg-eg", "qed-ge")),
    "fig6c": (_qed_branch(10, 20, 10, 3, "eg-ge", "qed-eg"), _qed_branch(10, 20, 10, 10, "eg-ge", "qed-eg")),
}


# ---------------------------------------------------------------------------
# verification battery

_VERIFY_COMBOS = (
    (10.0, 10.0, 10.0),
    (10.0, 20.0, 10.0),
    (10.0, 10.0, 20.0),
    (10.0, 0.0, 0.0),
    (30.0, 20.0, 10.0),
    (2.0, 10.0, 10.0),
)
_VERIFY_TS = tuple(np.linspace(0.0, 50.0, 11))
_VERIFY_TAU_OFFSETS = (0.0, 2.5, 7.9, 25.0)


def _verify_stage1_vs_oracle(params_list) -> float:
    worst = 0.0
    for p in params_list:
        d = derive_params(p)
        h16 = embed_pair_operator(build_effective(d).matrix, 4, 1)
        psi0 = stage1_state(d, 0.0).amps
        for gt in _VERIFY_TS:
            got = stage1_state(d, gt / p.g)
            ref = propagate(h16, psi0, gt / p.g)
            ref = ref / np.linalg.norm(ref)
            worst = max(worst, compare_states(got.amps, ref).max_amp_diff)
    return worst


def _verify_identities(params_list):
    """Max spread of the concurrence and probability identities."""
    worst_c = worst_s = worst_q = 0.0
    for p in params_list:
        d = derive_params(p)
        for gt in _VERIFY_TS:
            if gt == 0.0:
                continue
            c = stage1_coefficients(d, gt / p.g)
            gammas = [
                bsm_swap(PairVariant.EG, PairVariant.EG, BellChoice.PSI_PLUS, c),
                bsm_swap(PairVariant.EG, PairVariant.GE, BellChoice.PHI_PLUS, c),
                bsm_swap(PairVariant.GE, PairVariant.EG, BellChoice.PHI_PLUS, c),
                bsm_swap(PairVariant.GE, PairVariant.GE, BellChoice.PSI_PLUS, c),
            ]
            cs = [o.concurrence for o in gammas]
            worst_c = max(worst_c, max(cs) - min(cs))
            bells = [
                bsm_swap(PairVariant.EG, PairVariant.EG, BellChoice.PHI_PLUS, c),
                bsm_swap(PairVariant.EG, PairVariant.GE, BellChoice.PSI_PLUS, c),
                bsm_swap(PairVariant.GE, PairVariant.EG, BellChoice.PSI_PLUS, c),
                bsm_swap(PairVariant.GE, PairVariant.GE, BellChoice.PHI_PLUS, c),
            ]
            ss = [o.probability for o in bells]
            worst_s = max(worst_s, max(ss) - min(ss))
            for off in _VERIFY_TAU_OFFSETS:
                if off == 0.0:
                    continue
                tau = (gt + off) / p.g
                q = {
                    (case, oc): qed_swap(*parse_case(case), c, tau, oc).concurrence
                    for case in ALL_CASES
                    for oc in ("eg", "ge")
                }
                mids = [q["eg-ge", "eg"], q["eg-ge", "ge"], q["ge-eg", "eg"], q["ge-eg", "ge"]]
                worst_q = max(worst_q, max(mids) - min(mids))
                worst_q = max(worst_q, abs(q["ge-ge", "eg"] - q["eg-eg", "ge"]))
                worst_q = max(worst_q, abs(q["ge-ge", "ge"] - q["eg-eg", "eg"]))
    return worst_c, worst_s, worst_q


def _verify_bsm_vs_projection(params_list) -> float:
    from .core import FourAtomState
    from .analytic import pair_state

    worst = 0.0
    for p in params_list:
        d = derive_params(p)
        for gt in _VERIFY_TS:
            if gt == 0.0:
                continue
            c = stage1_coefficients(d, gt / p.g)
            for case in ALL_CASES:
                left, right = parse_case(case)
                prod = FourAtomState(
                    (1, 4, 5, 8),
                    np.kron(pair_state(c, left).amps, pair_state(c, right).amps),
                )
                for bell in BellChoice:
                    out = bsm_swap(left, right, bell, c)
                    _, prob = postselect(prod, (4, 5), bell.amps)
                    worst = max(worst, abs(out.probability - prob))
    return worst


def _verify_qed_vs_oracle(params_list) -> float:
    from .core import FourAtomState
    from .analytic import pair_state

    worst = 0.0
    h_eff_cache = {}
    for p in params_list:
        d = derive_params(p)
        h16 = embed_pair_operator(build_effective(d).matrix, 4, 1)
        for gt in (2.0, 10.0):
            c = stage1_coefficients(d, gt / p.g)
            for case in ("eg-eg", "ge-eg"):
                left, right = parse_case(case)
                prod = np.kron(pair_state(c, left).amps, pair_state(c, right).amps)
                for off in (1.3, 6.0):
                    tau = (gt + off) / p.g
                    got = qed_joint_state(left, right, c, tau)
                    ref = propagate(h16, prod, tau - c.t)
                    worst = max(worst, float(np.max(np.abs(got.amps - ref))))
    return worst


def _verify_wootters(n: int = 200, seed: int = 20240817) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        v = v / np.linalg.norm(v)
        rho = np.outer(v, v.conj())
        worst = max(worst, abs(wootters_concurrence(rho) - concurrence_pure(v)))
    return worst


def _verify_periodicity(params_list) -> float:
    worst = 0.0
    for p in params_list:
        if p.kappa != p.gamma:
            continue
        d = derive_params(p)
        period = math.pi / d.lam.real
        for k in range(0, 41):
            t = k * period / 40.0
            c0 = stage1_coefficients(d, t)
            c1 = stage1_coefficients(d, t + period)
            worst = max(worst, float(np.max(np.abs(c0.amps - c1.amps))))
    return worst


_FVE_COMBOS = ((30.0, 10.0, 10.0), (3.0, 10.0, 10.0))


def _verify_full_vs_effective():
    rows = []
    for delta, kappa, gamma in _FVE_COMBOS:
        p = ModelParams(g=1.0, delta=delta, kappa=kappa, gamma=gamma)
        worst = 0.0
        for gt in (2.0, 5.0, 10.0):
            worst = max(worst, full_vs_effective_report(p, gt).max_infidelity)
        rows.append(
            {
                "delta": delta,
                "kappa": kappa,
                "gamma": gamma,
                "abs_delta_c": abs(derive_params(p).delta_c),
                "max_gt": 10.0,
                "max_infidelity": worst,
            }
        )
    return rows


def run_verification() -> dict:
    """Run the cross-check battery and return a JSON-ready report."""
    params_list = [
        ModelParams(g=1.0, delta=dd, kappa=kk, gamma=gg) for dd, kk, gg in _VERIFY_COMBOS
    ]
    fve_params = [
        ModelParams(g=1.0, delta=dd, kappa=kk, gamma=gg) for dd, kk, gg in _FVE_COMBOS
    ]
    warnings = [
        f"|delta_c| = {abs(derive_params(p).delta_c):g} < 10 g for delta={p.delta:g}, "
        f"kappa={p.kappa:g}, gamma={p.gamma:g}: dispersive closed forms degrade"
        for p in params_list + fve_params
        if not large_detuning_check(p)
    ]
    worst_c, worst_s, worst_q = _verify_identities(params_list)
    fve = _verify_full_vs_effective()
    by_delta = {row["abs_delta_c"]: row["max_infidelity"] for row in fve}
    checks = [
        ("stage1_analytic_vs_oracle", _verify_stage1_vs_oracle(params_list), 1e-10),
        ("bsm_concurrence_identity", worst_c, 1e-12),
        ("bsm_success_identity", worst_s, 1e-12),
        ("qed_concurrence_identities", worst_q, 1e-12),
        ("bsm_closed_form_vs_projection", _verify_bsm_vs_projection(params_list), 1e-12),
        ("qed_joint_vs_oracle", _verify_qed_vs_oracle(params_list), 1e-10),
        ("wootters_vs_pure", _verify_wootters(), 1e-12),
        ("periodicity_kappa_eq_gamma", _verify_periodicity(params_list), 1e-10),
        ("full_vs_effective_large_detuning", by_delta[30.0], 0.05),
        ("full_vs_effective_monotone", by_delta[30.0] - by_delta[3.0], 0.0),
    ]
    report = {
        "passed": all(value <= tol for _, value, tol in checks),
        "checks": [
            {"name": name, "max_error": value, "tolerance": tol, "passed": value <= tol}
            for name, value, tol in checks
        ],
        "full_vs_effective": fve,
        "warnings": warnings,
    }
    return report


# ---------------------------------------------------------------------------
# argument parsing and commands

def _fmtc(z: complex) -> str:
    return repr(complex(z))


def _add_param_flags(sp, require_delta=True):
    sp.add_argument("--g", type=float, default=1.0, help="coupling strength (sets the unit; default 1)")
    sp.add_argument("--delta", type=float, required=require_delta, help="atom-field detuning, units of g")
    sp.add_argument("--kappa", type=float, default=0.0, help="cavity leakage rate, units of g")
    sp.add_argument("--gamma", type=float, default=0.0, help="spontaneous emission rate, units of g")


def _params_from(args) -> ModelParams:
    g = args.g
    return ModelParams(g=g, delta=args.delta * g, kappa=args.kappa * g, gamma=args.gamma * g)


def _warn_detuning(p: ModelParams):
    if not large_detuning_check(p):
        d = derive_params(p)
        print(
            f"warning: |delta_c| = {abs(d.delta_c) / p.g:g} g is below 10 g; "
            "the dispersive closed forms degrade",
            file=sys.stderr,
        )


def _parse_range(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected start:stop:steps, got {text!r}")
    return float(parts[0]), float(parts[1]), int(parts[2])


def _split_list(values: list[str] | None) -> tuple[str, ...]:
    out: list[str] = []
    for v in values or []:
        out.extend(x for x in v.split(",") if x)
    return tuple(out)


def cmd_stage1(args) -> int:
    p = _params_from(args)
    d = derive_params(p)
    _warn_detuning(p)
    t = args.gt / p.g
    c = stage1_coefficients(d, t)
    state = stage1_state(d, t)
    print(f"parameters: g={args.g:g}  delta={args.delta:g}g  kappa={args.kappa:g}g  gamma={args.gamma:g}g")
    print(f"derived: delta_c={_fmtc(d.delta_c / p.g)} g  lam={_fmtc(d.lam / p.g)} g")
    print(f"stage-1 coefficients at gt={args.gt:g}:")
    for name, idx in (("L1=L6", 0), ("L2=L5", 1), ("L3", 2), ("L4", 3)):
        print(f"  {name} = {_fmtc(c.amps[idx])}")
    print(f"  N = {c.norm!r}")
    print("four-atom state amplitudes (nonzero kets):")
    for ket, amp in zip(("eegg", "egeg", "egge", "geeg", "gege", "ggee"), c.amps / c.norm):
        print(f"  |{ket}> {_fmtc(amp)}")
    for outcome in ("eg", "ge"):
        pair, prob = collapse_pair(c, outcome)
        print(f"heralded pair (1,4) for cavity outcome {outcome}:")
        print(f"  probability = {prob!r}")
        print(f"  amplitudes (ee,eg,ge,gg) = [{', '.join(_fmtc(a) for a in pair.amps)}]")
        print(f"  concurrence = {concurrence_pure(pair)!r}")
    return 0


def cmd_bsm(args) -> int:
    p = _params_from(args)
    d = derive_params(p)
    _warn_detuning(p)
    c = stage1_coefficients(d, args.gt / p.g)
    left, right = parse_case(args.case)
    out = bsm_swap(left, right, BellChoice(args.bell), c)
    print(f"case {out.case}  route {out.route}  gt={args.gt:g}")
    print(f"success_probability = {out.probability!r}")
    print(f"concurrence = {out.concurrence!r}")
    print(f"pair (1,8) amplitudes (ee,eg,ge,gg) = [{', '.join(_fmtc(a) for a in out.state.amps)}]")
    return 0


def cmd_qed(args) -> int:
    p = _params_from(args)
    d = derive_params(p)
    _warn_detuning(p)
    if args.gtau < args.gt:
        raise ValueError(f"--gtau must be >= --gt, got {args.gtau} < {args.gt}")
    c = stage1_coefficients(d, args.gt / p.g)
    left, right = parse_case(args.case)
    joint = qed_joint_state(left, right, c, args.gtau / p.g)
    out = qed_swap(left, right, c, args.gtau / p.g, args.route)
    print(f"case {out.case}  route {out.route}  gt={args.gt:g}  gtau={args.gtau:g}")
    print(f"joint-state norm before measurement = {joint.norm()!r}")
    print(f"success_probability = {out.probability!r}")
    print(f"concurrence = {out.concurrence!r}")
    print(f"pair (1,8) amplitudes (ee,eg,ge,gg) = [{', '.join(_fmtc(a) for a in out.state.amps)}]")
    return 0


def cmd_sweep(args) -> int:
    if args.preset is not None:
        if args.preset not in PRESETS:
            raise ValueError(
                f"unknown preset {args.preset!r}; available: {', '.join(sorted(PRESETS))}"
            )
        specs = PRESETS[args.preset]
    else:
        if args.delta is None:
            raise ValueError("manual sweeps need --delta (or use --preset)")
        p = _params_from(args)
        cases = _split_list(args.case) or ALL_CASES
        routes = _split_list(args.route)
        if not routes:
            raise ValueError("manual sweeps need --route (e.g. bsm-phi_plus or qed-eg)")
        if args.gt is None:
            raise ValueError("manual sweeps need --gt as start:stop:steps or a scalar with --gtau")
        if ":" in args.gt:
            spec = SweepSpec(params=p, cases=cases, routes=routes, t_grid=_parse_range(args.gt))
        else:
            if args.gtau is None:
                raise ValueError("a scalar --gt needs a --gtau range")
            spec = SweepSpec(
                params=p,
                cases=cases,
                routes=routes,
                t_fixed=float(args.gt),
                tau_grid=_parse_range(args.gtau),
            )
        specs = (spec,)
    for spec in specs:
        _warn_detuning(spec.params)
    columns = sweep_columns(specs[0])
    rows: list[dict] = []
    for spec in specs:
        if sweep_columns(spec) != columns:
            raise ValueError("all branches of one sweep must share a schema")
        rows.extend(run_sweep(spec))
    write_rows(rows, columns, args.out, args.format)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def cmd_verify(args) -> int:
    report = run_verification()
    text = json.dumps(report, indent=2)
    if args.out is not None:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    for w in report["warnings"]:
        print(f"warning: {w}", file=sys.stderr)
    if not report["passed"]:
        failed = [c["name"] for c in report["checks"] if not c["passed"]]
        print(f"verification FAILED: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qrepeater",
        description="Lossy-cavity repeater chain: heralded pair generation and swapping.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("stage1", help="coefficients, four-atom state and heralded pairs at one time")
    _add_param_flags(sp)
    sp.add_argument("--gt", type=float, required=True, help="stage-1 interaction time, g*t")
    sp.set_defaults(func=cmd_stage1)

    sp = sub.add_parser("bsm", help="fuse two heralded pairs by a Bell measurement")
    _add_param_flags(sp)
    sp.add_argument("--gt", type=float, required=True)
    sp.add_argument("--case", default="eg-eg", choices=ALL_CASES, help="heralding outcomes <left>-<right>")
    sp.add_argument("--bell", default="phi_plus", choices=[b.value for b in BellChoice])
    sp.set_defaults(func=cmd_bsm)

    sp = sub.add_parser("qed", help="fuse two heralded pairs by a second mediated interaction")
    _add_param_flags(sp)
    sp.add_argument("--gt", type=float, required=True)
    sp.add_argument("--gtau", type=float, required=True, help="end of the fusion interaction, g*tau")
    sp.add_argument("--case", default="eg-eg", choices=ALL_CASES)
    sp.add_argument("--route", default="eg", choices=["eg", "ge"], help="measured outcome on atoms (4,5)")
    sp.set_defaults(func=cmd_qed)

    sp = sub.add_parser("sweep", help="write a dataset over a time or tau grid")
    _add_param_flags(sp, require_delta=False)
    sp.add_argument("--preset", default=None, help=f"one of {', '.join(sorted(PRESETS))}")
    sp.add_argument("--gt", default=None, help="start:stop:steps, or a scalar when --gtau is a range")
    sp.add_argument("--gtau", default=None, help="start:stop:steps for fusion sweeps")
    sp.add_argument("--case", action="append", help="case tag(s), comma separated or repeated")
    sp.add_argument("--route", action="append", help="route tag(s), comma separated or repeated")
    sp.add_argument("--out", required=True, help="output file path")
    sp.add_argument("--format", default="csv", choices=["csv", "json"])
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("verify", help="run the cross-check battery and emit a JSON report")
    sp.add_argument("--out", default=None, help="report path (default: stdout)")
    sp.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SingularDetuningError, DegenerateMeasurementError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
