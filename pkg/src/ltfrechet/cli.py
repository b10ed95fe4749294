"""Command-line interface.

Subcommands: fit (maximum likelihood on a dataset), simulate (estimator
quality study), curves (distribution/survival curve samples, optionally
with a Kaplan-Meier overlay), compare (information-criterion ranking)
and dataset (export a built-in dataset).

Reports are CSV or JSON on stdout or a file.  Exit codes: 0 success,
2 usage or parse error, 3 numerical failure (non-convergence or an
infeasible calibration).  Reports start with a '# generated ...' line
unless --no-timestamp is passed; with it, identical flags and seeds
produce byte-identical output.
"""
from __future__ import annotations

import csv
import io
import json
import sys
from datetime import datetime, timezone

import click
import numpy as np

from . import __version__
from .datasets import BUILTIN_DATASETS, load_builtin
from .distribution import LfParams, cdf, hazard, pdf, survival
from .inference import CensoredSample, FitResult, NoEvents, fit
from .model_eval import (
    compare,
    fit_lt_weibull,
    information_criteria,
    kaplan_meier,
)
from .montecarlo import CalibrationInfeasible, Scenario, run_scenario
from .numerics import OptimizerConfig

EXIT_NUMERICAL = 3

_MODEL_FITTERS = {"lf": fit, "lt-weibull": fit_lt_weibull}
# Row order for fit/simulate reports mirrors the usual table layout.
_REPORT_ORDER = {"lf": ("alpha", "lambda", "p"), "lt-weibull": ("shape", "scale", "p")}


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _timestamp_line() -> str:
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return f"# generated {stamp} by ltfrechet {__version__}"


def _render_csv(columns, rows, timestamp: bool) -> str:
    buf = io.StringIO()
    if timestamp:
        buf.write(_timestamp_line() + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row.get(c)) for c in columns])
    return buf.getvalue()


def _render_json(payload, timestamp: bool) -> str:
    if timestamp:
        payload = {"generated": _timestamp_line()[2:], **payload}
    return json.dumps(payload, indent=2) + "\n"


def _write_report(text: str, output: str) -> None:
    if output == "-":
        click.echo(text, nl=False)
    else:
        with open(output, "w") as handle:
            handle.write(text)


def read_dataset(path: str) -> CensoredSample:
    """Parse a two-column CSV with header time,status (1 event, 0 censored)."""
    try:
        with open(path, newline="") as handle:
            lines = list(csv.reader(handle))
    except OSError as exc:
        raise click.UsageError(f"cannot read {path}: {exc}")
    if not lines or [c.strip() for c in lines[0]] != ["time", "status"]:
        raise click.UsageError(f"{path}:1: expected header 'time,status'")
    times, events = [], []
    for lineno, row in enumerate(lines[1:], start=2):
        if not row:
            continue
        if len(row) != 2:
            raise click.UsageError(f"{path}:{lineno}: expected 2 fields, got {len(row)}")
        try:
            t = float(row[0])
        except ValueError:
            raise click.UsageError(f"{path}:{lineno}: invalid time {row[0]!r}")
        if not np.isfinite(t) or t <= 0:
            raise click.UsageError(f"{path}:{lineno}: time must be positive, got {row[0]!r}")
        status = row[1].strip()
        if status not in {"0", "1"}:
            raise click.UsageError(f"{path}:{lineno}: status must be 0 or 1, got {row[1]!r}")
        times.append(t)
        events.append(status == "1")
    if not times:
        raise click.UsageError(f"{path}: no data rows")
    return CensoredSample(times=np.array(times), events=np.array(events))


def _load_data(source: str) -> CensoredSample:
    if source in BUILTIN_DATASETS:
        return load_builtin(source)
    return read_dataset(source)


def _optimizer_options(func):
    decorators = [
        click.option("--restarts", default=4, show_default=True,
                     help="Additional randomized optimizer starts."),
        click.option("--max-iterations", default=2000, show_default=True),
        click.option("--tolerance", default=1e-11, show_default=True,
                     help="Relative simplex spread declaring convergence."),
        click.option("--annealing", is_flag=True, default=False,
                     help="Run a simulated-annealing prelude before each start."),
        click.option("--annealing-steps", default=1000, show_default=True),
        click.option("--annealing-temp", default=1.0, show_default=True),
    ]
    for decorator in reversed(decorators):
        func = decorator(func)
    return func


def _build_config(restarts, max_iterations, tolerance, annealing,
                  annealing_steps, annealing_temp) -> OptimizerConfig:
    try:
        return OptimizerConfig(
            max_iterations=max_iterations,
            simplex_tolerance=tolerance,
            restarts=restarts,
            annealing_enabled=annealing,
            annealing_steps=annealing_steps,
            annealing_initial_temp=annealing_temp,
        )
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _output_options(func):
    decorators = [
        click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                     default="csv", show_default=True),
        click.option("--output", default="-", show_default=True,
                     help="Report destination; - writes to stdout."),
        click.option("--no-timestamp", is_flag=True, default=False,
                     help="Suppress the generated-at header line."),
    ]
    for decorator in reversed(decorators):
        func = decorator(func)
    return func


@click.group()
@click.version_option(version=__version__)
def main():
    """Cure-fraction survival analysis with the long-term Frechet model."""


def _fit_rows(result: FitResult, score) -> list[dict]:
    order = _REPORT_ORDER[result.model]
    by_name = {name: i for i, name in enumerate(result.param_names)}
    rows = []
    for name in order:
        i = by_name[name]
        rows.append(
            {
                "parameter": name,
                "estimate": float(result.theta[i]),
                "se": float(result.std_errors[i]) if result.std_errors is not None else None,
                "ci_lower": float(result.ci_lower[i]) if result.ci_lower is not None else None,
                "ci_upper": float(result.ci_upper[i]) if result.ci_upper is not None else None,
            }
        )
    for name, value in (("neg_loglik", score.neg_loglik), ("aic", score.aic),
                        ("aicc", score.aicc)):
        rows.append({"parameter": name, "estimate": float(value),
                     "se": None, "ci_lower": None, "ci_upper": None})
    return rows


@main.command("fit")
@click.option("--data", "data_src", default="kersey1987", show_default=True,
              help="CSV path or builtin dataset name.")
@click.option("--model", "model_name", type=click.Choice(sorted(_MODEL_FITTERS)),
              default="lf", show_default=True)
@click.option("--ci-level", default=0.95, show_default=True)
@_optimizer_options
@_output_options
def cmd_fit(data_src, model_name, ci_level, restarts, max_iterations, tolerance,
            annealing, annealing_steps, annealing_temp, fmt, output, no_timestamp):
    """Fit a long-term survival model by maximum likelihood."""
    data = _load_data(data_src)
    config = _build_config(restarts, max_iterations, tolerance, annealing,
                           annealing_steps, annealing_temp)
    if not 0.0 < ci_level < 1.0:
        raise click.UsageError("--ci-level must lie in (0, 1)")
    try:
        result = _MODEL_FITTERS[model_name](data, config=config, level=ci_level)
    except NoEvents as exc:
        raise click.UsageError(str(exc))
    score = information_criteria(result.loglik, k=3, n=data.n)

    rows = _fit_rows(result, score)
    if fmt == "csv":
        text = _render_csv(["parameter", "estimate", "se", "ci_lower", "ci_upper"],
                           rows, not no_timestamp)
    else:
        payload = {
            "model": result.model,
            "converged": result.converged,
            "n_events": result.n_events,
            "n_censored": result.n_censored,
            "ci_level": result.ci_level,
            "parameters": [r for r in rows if r["parameter"] in result.param_names],
            "neg_loglik": score.neg_loglik,
            "aic": score.aic,
            "aicc": score.aicc,
        }
        text = _render_json(payload, not no_timestamp)
    _write_report(text, output)
    if not result.converged:
        click.echo("warning: optimizer did not converge", err=True)
        sys.exit(EXIT_NUMERICAL)


@main.command("simulate")
@click.option("--lambda", "lam", type=float, required=True, help="True scale.")
@click.option("--alpha", type=float, required=True, help="True shape.")
@click.option("--p", type=float, required=True, help="True cure fraction.")
@click.option("--censoring", type=float, required=True,
              help="Target censored proportion (must exceed the cure fraction).")
@click.option("--n", "sizes", default="25,50,100,200,300", show_default=True,
              help="Comma-separated sample sizes.")
@click.option("--reps", default=2000, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--ci-level", default=0.95, show_default=True)
@click.option("--jobs", default=1, show_default=True,
              help="Worker processes; results do not depend on this.")
@_output_options
def cmd_simulate(lam, alpha, p, censoring, sizes, reps, seed, ci_level, jobs,
                 fmt, output, no_timestamp):
    """Estimate MRE, MSE and interval coverage on simulated samples."""
    try:
        sample_sizes = tuple(int(part) for part in sizes.split(",") if part.strip())
    except ValueError:
        raise click.UsageError(f"--n must be a comma-separated integer list, got {sizes!r}")
    try:
        scenario = Scenario(
            truth=LfParams(lam, alpha, p),
            sample_sizes=sample_sizes,
            replications=reps,
            target_censoring=censoring,
            ci_level=ci_level,
            base_seed=seed,
        )
        reports = run_scenario(scenario, n_jobs=jobs)
    except CalibrationInfeasible as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_NUMERICAL)
    except ValueError as exc:
        raise click.UsageError(str(exc))

    rows = []
    for report in reports:
        for name in ("alpha", "lambda", "p"):
            rows.append(
                {
                    "n": report.n,
                    "parameter": name,
                    "mre": report.mre[name],
                    "mse": report.mse[name],
                    "coverage": report.coverage[name],
                    "m_p": report.realized_censoring,
                    "replications_used": report.replications_used,
                }
            )
    if fmt == "csv":
        text = _render_csv(
            ["n", "parameter", "mre", "mse", "coverage", "m_p", "replications_used"],
            rows, not no_timestamp,
        )
    else:
        text = _render_json({"scenario": {"lambda": lam, "alpha": alpha, "p": p,
                                          "target_censoring": censoring,
                                          "replications": reps, "seed": seed},
                             "rows": rows}, not no_timestamp)
    _write_report(text, output)


@main.command("curves")
@click.option("--lambda", "lam", type=float, required=True)
@click.option("--alpha", type=float, required=True)
@click.option("--p", type=float, default=0.0, show_default=True)
@click.option("--t-min", default=0.01, show_default=True)
@click.option("--t-max", default=10.0, show_default=True)
@click.option("--points", default=200, show_default=True)
@click.option("--spacing", type=click.Choice(["log", "linear"]), default="log",
              show_default=True)
@click.option("--data", "data_src", default=None,
              help="Optional dataset; adds a Kaplan-Meier column.")
@_output_options
def cmd_curves(lam, alpha, p, t_min, t_max, points, spacing, data_src,
               fmt, output, no_timestamp):
    """Sample pdf, cdf, survival and hazard on a time grid."""
    try:
        params = LfParams(lam, alpha, p)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    if points < 2:
        raise click.UsageError("--points must be at least 2")
    if not 0 < t_min < t_max:
        raise click.UsageError("need 0 < t-min < t-max")
    if spacing == "log":
        grid = np.geomspace(t_min, t_max, points)
    else:
        grid = np.linspace(t_min, t_max, points)

    columns = ["t", "pdf", "cdf", "survival", "hazard"]
    km_values = None
    if data_src is not None:
        curve = kaplan_meier(_load_data(data_src))
        km_values = curve.survival_at(grid)
        columns.append("km")

    pdf_values = pdf(params, grid)
    cdf_values = cdf(params, grid)
    surv_values = survival(params, grid)
    hazard_values = hazard(params, grid)
    rows = []
    for i, t in enumerate(grid):
        row = {
            "t": float(t),
            "pdf": float(pdf_values[i]),
            "cdf": float(cdf_values[i]),
            "survival": float(surv_values[i]),
            "hazard": float(hazard_values[i]),
        }
        if km_values is not None:
            row["km"] = float(km_values[i])
        rows.append(row)
    if fmt == "csv":
        text = _render_csv(columns, rows, not no_timestamp)
    else:
        text = _render_json({"params": {"lambda": lam, "alpha": alpha, "p": p},
                             "rows": rows}, not no_timestamp)
    _write_report(text, output)


@main.command("compare")
@click.option("--data", "data_src", default="kersey1987", show_default=True)
@click.option("--models", default="lf,lt-weibull", show_default=True,
              help="Comma-separated list of models to fit and rank.")
@click.option("--ci-level", default=0.95, show_default=True)
@_optimizer_options
@_output_options
def cmd_compare(data_src, models, ci_level, restarts, max_iterations, tolerance,
                annealing, annealing_steps, annealing_temp, fmt, output, no_timestamp):
    """Fit several models and rank them by AICc."""
    names = [name.strip() for name in models.split(",") if name.strip()]
    if not names:
        raise click.UsageError("--models must name at least one model")
    unknown = [name for name in names if name not in _MODEL_FITTERS]
    if unknown:
        raise click.UsageError(f"unknown models: {', '.join(unknown)}")
    data = _load_data(data_src)
    config = _build_config(restarts, max_iterations, tolerance, annealing,
                           annealing_steps, annealing_temp)

    scored, failures = [], {}
    any_nonconverged = False
    for name in names:
        try:
            result = _MODEL_FITTERS[name](data, config=config, level=ci_level)
        except NoEvents as exc:
            failures[name] = str(exc)
            continue
        any_nonconverged = any_nonconverged or not result.converged
        scored.append((name, information_criteria(result.loglik, k=3, n=data.n)))

    ranked = compare(scored) if scored else []
    rank_of = {name: i + 1 for i, (name, _) in enumerate(ranked)}
    rows = []
    for name in names:
        if name in failures:
            rows.append({"model": name, "neg_loglik": None, "aic": None,
                         "aicc": None, "rank": None})
        else:
            score = dict(scored)[name]
            rows.append({"model": name, "neg_loglik": score.neg_loglik,
                         "aic": score.aic, "aicc": score.aicc,
                         "rank": rank_of[name]})
    for name, message in failures.items():
        click.echo(f"error: model {name}: {message}", err=True)

    if fmt == "csv":
        text = _render_csv(["model", "neg_loglik", "aic", "aicc", "rank"],
                           rows, not no_timestamp)
    else:
        text = _render_json({"rows": rows, "errors": failures}, not no_timestamp)
    _write_report(text, output)
    if failures:
        sys.exit(2)
    if any_nonconverged:
        sys.exit(EXIT_NUMERICAL)


@main.command("dataset")
@click.option("--name", default="kersey1987", show_default=True,
              type=click.Choice(sorted(BUILTIN_DATASETS)))
@click.option("--output", default="-", show_default=True)
def cmd_dataset(name, output):
    """Export a built-in dataset as time,status CSV."""
    data = load_builtin(name)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["time", "status"])
    for t, event in zip(data.times, data.events):
        writer.writerow([repr(float(t)), int(event)])
    _write_report(buf.getvalue(), output)


if __name__ == "__main__":
    main()
