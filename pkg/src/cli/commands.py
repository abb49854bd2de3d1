"""
Subcommand handlers. Each takes the parsed argparse namespace, writes
`key=value` lines to stdout and returns an exit code; domain errors
propagate to `main`, which maps them to exit codes.
"""

import argparse
import math
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from loguru import logger

from ..ensembles import MatrixEnsemble, NonzeroLaw, SignalPrior, SupportMode
from ..errors import LpThresholdError, NoBracket, RecordFormatError
from ..experiment import (
    SweepConfig,
    TrialWriter,
    estimate_critical_alpha,
    finite_size_fit,
    load_estimates,
    load_sweep_config,
    load_trials,
    prepare_resume,
    run_trials,
    save_estimates,
    trial_keys,
)
from ..replica import (
    CurveMethod,
    PNorm,
    RsOrderParams,
    SaddleOptions,
    ThresholdCurve,
    at_stability,
    critical_alpha,
    predicted_mse,
    solve_rs_saddle,
    threshold_curve,
    worst_case_l1_alpha,
)
from .plots import finite_size_plot, phase_diagram, write_plot
from .tables import load_curves, save_curves, write_curves

logger = logger.bind(name="CLI")

TRIALS_FILE = "trials.csv"
ESTIMATES_FILE = "estimates.csv"


def emit(key: str, value) -> None:
    if isinstance(value, float):
        value = repr(value)
    elif isinstance(value, bool):
        value = str(value).lower()
    print(f"{key}={value}")


def parse_rho_grid(text: str) -> List[float]:
    """`start:stop:count`, inclusive of both ends"""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected start:stop:count, got {text!r}")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad rho grid {text!r}: {exc}") from exc
    if count < 1 or (count == 1 and start != stop) or stop < start:
        raise argparse.ArgumentTypeError(f"bad rho grid {text!r}")
    if count == 1:
        return [start]
    step = (stop - start) / (count - 1)
    return [start + k * step for k in range(count - 1)] + [stop]


def _norms(values: Sequence[int]) -> List[PNorm]:
    return [PNorm.from_p(value) for value in dict.fromkeys(values)]


def cmd_theory(args: argparse.Namespace) -> int:
    norms = _norms(args.p)
    if args.rho is not None:
        # everything is computed before the first line goes out
        values = [("rho", args.rho)]
        for p in norms:
            key = "alpha_c" if len(norms) == 1 else f"alpha_c_{p.name}"
            values.append((key, critical_alpha(p, args.rho)))
        if args.worst_case:
            values.append(("alpha_worst_case", worst_case_l1_alpha(args.rho)))
        for key, value in values:
            emit(key, value)
        return 0

    curves: List[ThresholdCurve] = [threshold_curve(p, args.rho_grid) for p in norms]
    if args.worst_case:
        curves.append(threshold_curve(PNorm.L1, args.rho_grid, method=CurveMethod.WORST_CASE))
    gaps = sum(len(curve.gaps) for curve in curves)
    if gaps:
        logger.warning(f"{gaps} grid point(s) could not be evaluated; see the log for details")

    fmt = args.format or (Path(args.out).suffix.lstrip(".") if args.out else "csv")
    if fmt == "svg":
        if not args.out:
            raise ValueError("--format svg needs --out")
        spec = _phase_diagram_from_curves(curves)
        write_plot(spec, args.out)
    elif args.out:
        save_curves(curves, args.out)
        logger.info(f"Wrote {sum(len(c.points) for c in curves)} curve points to {args.out}")
    else:
        write_curves(curves, sys.stdout)
    if args.out:
        emit("out", args.out)
    return 0


def _phase_diagram_from_curves(curves: Sequence[ThresholdCurve]):
    typical = [curve for curve in curves if curve.method is CurveMethod.REPLICA and curve.points]
    worst = next((c.points for c in curves if c.method is CurveMethod.WORST_CASE and c.points), None)
    reference = next((c.points for c in typical if c.p is PNorm.L1), None)
    return phase_diagram([(f"p={c.p.p}", c.points) for c in typical], worst_case=worst, reference=reference)


def _sweep_from_args(args: argparse.Namespace) -> SweepConfig:
    if args.config:
        sweep = load_sweep_config(args.config)
        if args.workers:
            sweep.workers = args.workers
        return sweep
    if args.rho is None or args.n_list is None:
        raise ValueError("experiment needs --config or both --rho and --n-list")
    prior = SignalPrior(
        rho=args.rho,
        nonzero_law=NonzeroLaw.parse(args.prior),
        support_mode=SupportMode.parse(args.support),
    )
    kwargs = dict(
        rho=args.rho,
        n_values=args.n_list,
        trials_per_point=args.trials,
        ensemble=MatrixEnsemble.parse(args.ensemble),
        prior=prior,
        master_seed=args.seed,
        alpha_window=args.alpha_window,
    )
    if args.workers:
        kwargs["workers"] = args.workers
    return SweepConfig(**kwargs)


def cmd_experiment(args: argparse.Namespace) -> int:
    sweep = _sweep_from_args(args)
    out_dir = Path(args.out_dir)
    trials_path = out_dir / TRIALS_FILE
    out_dir.mkdir(parents=True, exist_ok=True)

    skip = prepare_resume(trials_path, master_seed=sweep.master_seed) if args.resume else set()
    logger.info(f"Sweep rho={sweep.rho} N={sweep.n_values} ensemble={sweep.ensemble.value}, "
                f"{sweep.total_trials} trials")
    try:
        with TrialWriter(trials_path, append=args.resume) as writer:
            run_trials(sweep, skip=skip, sink=writer.write, progress=not args.no_progress)
    except KeyboardInterrupt:
        logger.warning(f"Interrupted; completed trials are kept in {trials_path}, rerun with --resume")
        return 1

    wanted = set(trial_keys(sweep))
    records = [record for record in load_trials(trials_path) if record.key in wanted]
    estimates = []
    for n in sweep.n_values:
        try:
            estimate = estimate_critical_alpha(records, sweep.rho, n)
        except NoBracket as exc:
            logger.warning(f"n={n}: {exc}")
            continue
        estimates.append(estimate)
        emit(f"alpha_c_n[{n}]", estimate.alpha_c_n)
        emit(f"stderr[{n}]", estimate.stderr)

    if not estimates:
        logger.error("No N produced a bracketed 50% crossing")
        return 1
    estimates_path = out_dir / ESTIMATES_FILE
    save_estimates(estimates, estimates_path)
    emit("trials_csv", str(trials_path))
    emit("estimates_csv", str(estimates_path))

    if len({estimate.n for estimate in estimates}) >= 4:
        emit("alpha_c_inf", float(finite_size_fit(estimates)[0]))
    else:
        logger.warning("Fewer than four N values have estimates; skipping the 1/N extrapolation")
    return 0


def cmd_plot(args: argparse.Namespace) -> int:
    if args.figure == "2a":
        curves = load_curves(args.input)
        typical = [(f"p={p.p}", points) for (p, method), points in curves.items()
                   if method is CurveMethod.REPLICA]
        worst = next((points for (_, method), points in curves.items() if method is CurveMethod.WORST_CASE), None)
        reference = curves.get((PNorm.L1, CurveMethod.REPLICA))
        if not typical:
            raise RecordFormatError("no replica curves in the input files")
        spec = phase_diagram(typical, worst_case=worst, reference=reference)
    else:
        estimates = [estimate for path in args.input for estimate in load_estimates(path)]
        if not estimates:
            raise RecordFormatError("no estimates in the input files")
        estimates.sort(key=lambda estimate: estimate.n)
        points = [(1.0 / e.n, e.alpha_c_n) for e in estimates]
        errors = [e.stderr for e in estimates]
        coefficients = None
        if len({e.n for e in estimates}) >= 4:
            coefficients = [float(c) for c in finite_size_fit(estimates)]
        theory = _theory_reference(estimates[0].rho) if args.theory else None
        spec = finite_size_plot(points, errors=errors, coefficients=coefficients, theory=theory)
        if coefficients is not None:
            emit("alpha_c_inf", coefficients[0])

    emit("out", str(write_plot(spec, args.out)))
    return 0


def _theory_reference(rho: float) -> Optional[float]:
    try:
        return critical_alpha(PNorm.L1, rho)
    except LpThresholdError as exc:
        logger.warning(f"no replica reference line at rho={rho}: {exc}")
        return None


def cmd_saddle(args: argparse.Namespace) -> int:
    p = PNorm.from_p(args.p)
    options = SaddleOptions(branch=args.branch)
    params: RsOrderParams = solve_rs_saddle(p, args.alpha, args.rho, options=options)
    verdict = at_stability(p, args.alpha, args.rho, params)

    for name, value in params.to_dict().items():
        emit(name, float(value))
    emit("branch", "success" if params.is_successful_branch else "failure")
    emit("mse", predicted_mse(params, args.rho))
    emit("at_lhs", float(verdict.at_condition_lhs))
    emit("rs_stable", verdict.rs_stable)
    return 0


def cmd_extrapolate(args: argparse.Namespace) -> int:
    estimates = load_estimates(args.estimates)
    if len({e.n for e in estimates}) < 4:
        logger.error(f"{args.estimates} holds estimates for fewer than four distinct N")
        return 1
    c0, c1, c2 = (float(c) for c in finite_size_fit(estimates))
    emit("alpha_c_inf", c0)
    emit("c1", c1)
    emit("c2", c2)
    if math.isfinite(c0) and estimates:
        reference = _theory_reference(estimates[0].rho)
        if reference is not None:
            emit("alpha_c_theory", reference)
    return 0
