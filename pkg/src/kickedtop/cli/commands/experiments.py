"""
Experiment subcommands.

Each command resolves its configuration, delegates to the library, writes
CSV/JSON artifacts plus a provenance sidecar, and renders a short summary.
"""

from collections.abc import Callable
from pathlib import Path
from typing import Any, Optional, TypeVar

import click

from kickedtop.cli.commands.session import RunSession
from kickedtop.cli.ui.components import (
    ProgressIndicator,
    ReportPanel,
    console,
    render_checks,
    render_search,
    render_table_rows,
)
from kickedtop.classical.kicked_map import stroboscopic_map, uniform_initials
from kickedtop.core.config import (
    ClassicalConfig,
    EntropyConfig,
    HusimiConfig,
    PeriodConfig,
    SearchRunConfig,
    StabilityConfig,
    TableConfig,
    VerifyConfig,
)
from kickedtop.core.exceptions import ConfigurationError, VerificationError
from kickedtop.floquet.unitary import FloquetSpec, build_floquet, resolve_kappa
from kickedtop.observables.entropy import entropy_series, min_entropy_by_spin
from kickedtop.observables.husimi import count_peaks, trajectory_husimi
from kickedtop.observables.stability import EntropyLandscape, mean_landscape_vs_spin
from kickedtop.recurrence.period import detect_period
from kickedtop.recurrence.search import SearchConfig, search_rational_kappa
from kickedtop.recurrence.table import reproduce_table, spin_range
from kickedtop.spin.coherent import haar_random_state, resolve_initial_state
from kickedtop.spin.types import CoherentParams, SpinParams, StateVector
from kickedtop.utils.helpers import artifact_stem, format_optional
from kickedtop.verify.identities import CHECKS, run_checks

F = TypeVar("F", bound=Callable[..., Any])


def run_options(fn: F) -> F:
    """Options shared by every subcommand."""
    decorators = [
        click.option(
            "--config",
            "config_file",
            type=click.Path(exists=True, dir_okay=False, path_type=Path),
            help="YAML or key=value config file",
        ),
        click.option("--threads", type=int, help="Worker threads (results do not depend on it)"),
        click.option("--seed", type=int, help="Seed for random initial states"),
        click.option("--out", type=click.Path(file_okay=False, path_type=Path), help="Output directory"),
        click.option("--log-level", help="Console log level"),
    ]
    for decorator in reversed(decorators):
        fn = decorator(fn)
    return fn


def kappa_options(fn: F) -> F:
    """Twist selection: an explicit kappa or a class such as pj/2."""
    decorators = [
        click.option("--kappa", type=float, help="Twist strength"),
        click.option("--kappa-class", help="Twist class: 0, pj/2, pj, 3pj/2, 2pj, 5pj/2, 3pj, 7pj/2, 4pj"),
        click.option("--p", type=float, help="Rotation angle per kick [default: pi/2]"),
    ]
    for decorator in reversed(decorators):
        fn = decorator(fn)
    return fn


def _flags(params: dict[str, Any]) -> tuple[Optional[Path], dict[str, Any]]:
    """Split the config file from the remaining flags; empty tuples count as unset."""
    config_file = params.pop("config_file", None)
    flags = {k: (None if v == () else v) for k, v in params.items()}
    return config_file, flags


def _initial_state(spin: SpinParams, state: Optional[str], theta: float, phi: float, seed: int) -> StateVector:
    if state and state.strip().lower() == "haar":
        return haar_random_state(spin, seed)
    return resolve_initial_state(spin, state, CoherentParams(theta, phi))


@click.command("period")
@click.option("--j", type=float, help="Spin, a multiple of 0.5")
@kappa_options
@click.option("--n-max", type=int, help="Kick horizon [default: 200]")
@click.option("--tol", type=float, help="Identity-error tolerance [default: 1e-10]")
@run_options
def period_command(**params: Any) -> None:
    """Detect the state-independent recurrence period of one Floquet operator."""
    config_file, flags = _flags(params)
    with RunSession("period", PeriodConfig, flags, config_file) as session:
        cfg = session.config
        spin = SpinParams.from_j(cfg.j)
        kappa = resolve_kappa(spin, cfg.kappa, cfg.kappa_class)
        report = detect_period(build_floquet(FloquetSpec(spin=spin, kappa=kappa, p=cfg.p)), cfg.n_max, cfg.tol)

        session.writer.write_json("period.json", report.model_dump(mode="json"))
        session.writer.write_csv("period.csv", ["k", "error"], enumerate(report.error_series, start=1))
        ReportPanel(f"j={spin}, kappa={kappa:.6g}", report).render()
        session.finish("period", {"kappa": kappa, "period": report.period, "phase": report.phase})


@click.command("table")
@click.option("--j-min", type=float, help="Smallest spin [default: 0.5]")
@click.option("--j-max", type=float, help="Largest spin [default: 10]")
@click.option("--n-max", type=int, help="Kick horizon [default: 500]")
@click.option("--tol", type=float, help="Identity-error tolerance [default: 1e-10]")
@run_options
def table_command(**params: Any) -> None:
    """Reproduce the recurrence table over every kappa class and spin."""
    config_file, flags = _flags(params)
    with RunSession("table", TableConfig, flags, config_file) as session:
        cfg = session.config
        rows = reproduce_table(spin_range(cfg.j_min, cfg.j_max), cfg.n_max, cfg.tol, session.pool, strict=False)

        header = ["j", "parity", "kappa_class", "kappa", "period", "expected", "phase", "match"]
        session.writer.write_csv(
            "table.csv",
            header,
            (
                [r.j, r.parity, r.kappa_class, r.kappa, r.period, "|".join(map(format_optional, r.expected)), r.phase, r.match]
                for r in rows
            ),
        )
        session.writer.write_json("table.json", [row.model_dump(mode="json") for row in rows])
        render_table_rows(rows)

        mismatches = [row for row in rows if not row.match]
        session.finish("table", {"cells": len(rows), "mismatches": len(mismatches)})
        if mismatches:
            raise VerificationError(
                f"{len(mismatches)} table cell(s) disagree with the expected periods",
                failures=[row.model_dump(mode="json") for row in mismatches],
            )


@click.command("search")
@click.option("--r-max", type=int, help="Largest numerator [default: 10]")
@click.option("--s-max", type=int, help="Largest denominator [default: 10]")
@click.option("--j-min", type=float, help="Smallest spin [default: 1.5]")
@click.option("--j-max", type=float, help="Largest spin [default: 15.5]")
@click.option("--n-kicks", type=int, help="Kick horizon [default: 500]")
@click.option("--entropy-floor", type=float, help="Candidate threshold [default: 1e-7]")
@click.option("--theta", type=float, help="Initial polar angle [default: 2.25]")
@click.option("--phi", type=float, help="Initial azimuthal angle [default: 2.0]")
@click.option("--tol", type=float, help="Identity-error tolerance [default: 1e-10]")
@run_options
def search_command(**params: Any) -> None:
    """Search kappa = pi j r / s over coprime r, s for recurrences."""
    config_file, flags = _flags(params)
    with RunSession("search", SearchRunConfig, flags, config_file) as session:
        cfg = session.config
        search = SearchConfig(
            r_max=cfg.r_max,
            s_max=cfg.s_max,
            j_values=tuple(spin_range(cfg.j_min, cfg.j_max)),
            n_kicks=cfg.n_kicks,
            entropy_floor=cfg.entropy_floor,
            initial_state=CoherentParams(cfg.theta, cfg.phi),
            tol=cfg.tol,
        )
        with ProgressIndicator("Searching rational twists", total=search.cell_count) as progress:
            results = search_rational_kappa(search, session.pool, on_result=lambda _: progress.advance())

        header = ["r", "s", "j", "kappa", "min_entropy", "min_kick", "candidate", "period", "table_class"]
        session.writer.write_csv(
            "search.csv",
            header,
            ([r.r, r.s, r.j, r.kappa, r.min_entropy, r.min_kick, r.candidate, r.period, r.table_class] for r in results),
        )
        render_search(results)

        outside = [r for r in results if r.period is not None and r.table_class is None]
        for res in outside:
            session.logger.warning(f"Recurrence outside the table classes: r/s={res.r}/{res.s}, j={res.j:g}")
        session.finish(
            "search",
            {
                "cells": len(results),
                "recurrences": sum(r.period is not None for r in results),
                "outside_table": len(outside),
                "min_entropy_outside_table": min(
                    (r.min_entropy for r in results if r.table_class is None), default=None
                ),
            },
        )


@click.command("husimi")
@click.option("--j", type=float, help="Spin, a multiple of 0.5")
@kappa_options
@click.option("--theta", type=float, help="Initial polar angle [default: 2.25]")
@click.option("--phi", type=float, help="Initial azimuthal angle [default: 2.0]")
@click.option("--state", help="Named initial state (+z, -z, +x, -x, +y, -y, haar)")
@click.option("--kicks", type=int, multiple=True, help="Kick to snapshot; repeatable [default: 0]")
@click.option("--theta-count", type=int, help="Polar grid size [default: 140]")
@click.option("--phi-count", type=int, help="Azimuthal grid size [default: 280]")
@run_options
def husimi_command(**params: Any) -> None:
    """Husimi Q functions of a kicked state, one CSV per kick."""
    config_file, flags = _flags(params)
    with RunSession("husimi", HusimiConfig, flags, config_file) as session:
        cfg = session.config
        spin = SpinParams.from_j(cfg.j)
        kappa = resolve_kappa(spin, cfg.kappa, cfg.kappa_class)
        U = build_floquet(FloquetSpec(spin=spin, kappa=kappa, p=cfg.p))
        state = _initial_state(spin, cfg.state, cfg.theta, cfg.phi, cfg.seed)
        fields = trajectory_husimi(U, state, cfg.kicks, cfg.theta_count, cfg.phi_count)

        snapshots = {}
        for kick, field in fields.items():
            session.writer.write_csv(f"husimi_k{kick}.csv", ["theta", "phi", "q"], field.rows())
            snapshots[str(kick)] = {
                "q_max": field.q_max,
                "normalization": field.normalization(),
                "peaks": count_peaks(field),
            }
            console.print(
                f"kick {kick}: q_max={field.q_max:.4f}, norm={field.normalization():.8f}, peaks={count_peaks(field)}"
            )
        session.finish("husimi", {"kappa": kappa, "snapshots": snapshots})


@click.command("entropy")
@click.option("--j", type=float, help="Spin, a multiple of 0.5")
@kappa_options
@click.option("--theta", type=float, help="Initial polar angle [default: 2.25]")
@click.option("--phi", type=float, help="Initial azimuthal angle [default: 2.0]")
@click.option("--state", help="Named initial state (+z, -z, +x, -x, +y, -y, haar)")
@click.option("--kicks", type=int, help="Number of kicks [default: 100]")
@click.option("--kind", type=click.Choice(["vn", "linear"]), help="Entropy kind [default: vn]")
@click.option(
    "--min-scan",
    is_flag=True,
    default=None,
    help="Write the minimum von Neumann entropy per spin of --j-values to min_entropy.csv",
)
@click.option("--j-values", help="Comma-separated spins for --min-scan")
@run_options
def entropy_command(**params: Any) -> None:
    """Single-qubit entropy along a kicked trajectory."""
    config_file, flags = _flags(params)
    with RunSession("entropy", EntropyConfig, flags, config_file) as session:
        cfg = session.config
        if cfg.min_scan:
            _min_entropy_scan(session)
            return
        spin = SpinParams.from_j(cfg.j)
        kappa = resolve_kappa(spin, cfg.kappa, cfg.kappa_class)
        state = _initial_state(spin, cfg.state, cfg.theta, cfg.phi, cfg.seed)
        series = entropy_series(spin, kappa, state, cfg.kicks, cfg.kind, cfg.p)

        session.writer.write_csv("entropy.csv", ["kick", "entropy"], enumerate(series))
        kick = int(series[1:].argmin()) + 1
        console.print(f"min {cfg.kind} entropy over kicks 1..{cfg.kicks}: {series[kick]:.3e} at kick {kick}")
        session.finish("entropy", {"kappa": kappa, "min_entropy": float(series[kick]), "min_kick": kick})


def _min_entropy_scan(session: RunSession) -> None:
    cfg = session.config
    spins = [SpinParams.from_j(j) for j in cfg.j_values]
    with ProgressIndicator(f"Minimum entropy over {cfg.kicks} kicks", total=len(spins)) as progress:
        rows = min_entropy_by_spin(
            spins,
            cfg.kappa_class,
            CoherentParams(cfg.theta, cfg.phi),
            cfg.kicks,
            session.pool,
            p=cfg.p,
            on_row=lambda row: progress.advance(f"j={row.j:g} done"),
        )

    session.writer.write_csv(
        "min_entropy.csv", ["j", "kappa", "min_entropy", "kick"], ([r.j, r.kappa, r.min_entropy, r.kick] for r in rows)
    )
    lowest = min(rows, key=lambda r: r.min_entropy)
    console.print(
        f"lowest minimum over {len(rows)} spin(s): {lowest.min_entropy:.3e} at j={lowest.j:g}, kick {lowest.kick}"
    )
    session.finish(
        "entropy",
        {"kappa_class": cfg.kappa_class, "spins": len(rows), "min_entropy": lowest.min_entropy, "min_j": lowest.j},
    )


@click.command("classical")
@click.option("--kappa", type=float, help="Twist strength [default: 2.5]")
@click.option("--kicks", type=int, help="Number of kicks [default: 150]")
@click.option("--theta-count", type=int, help="Initial points in theta [default: 15]")
@click.option("--phi-count", type=int, help="Initial points in phi [default: 30]")
@run_options
def classical_command(**params: Any) -> None:
    """Stroboscopic trajectories of the classical kicked top."""
    config_file, flags = _flags(params)
    with RunSession("classical", ClassicalConfig, flags, config_file) as session:
        cfg = session.config
        trajectories = stroboscopic_map(uniform_initials(cfg.theta_count, cfg.phi_count), cfg.kappa, cfg.kicks, session.pool)

        rows = (
            [traj_id, kick, theta, phi]
            for traj_id, trajectory in enumerate(trajectories)
            for kick, (theta, phi) in enumerate(trajectory)
        )
        session.writer.write_csv("classical.csv", ["traj_id", "kick", "theta", "phi"], rows)
        console.print(f"{len(trajectories)} trajectories of {cfg.kicks} kicks at kappa={cfg.kappa:g}")
        session.finish("classical", {"trajectories": len(trajectories)})


@click.command("stability")
@click.option("--j-values", help="Comma-separated spins [default: 15.5]")
@click.option("--kappa-class", help="Recurrence class of the base twist [default: pj]")
@click.option("--delta-values", help="Comma-separated perturbations [default: 0.001]")
@click.option("--applications", type=int, help="Orbit applications averaged [default: 10]")
@click.option("--theta-count", type=int, help="Polar grid size [default: 70]")
@click.option("--phi-count", type=int, help="Azimuthal grid size [default: 140]")
@run_options
def stability_command(**params: Any) -> None:
    """Entropy landscapes of perturbed recurrences."""
    config_file, flags = _flags(params)
    with RunSession("stability", StabilityConfig, flags, config_file) as session:
        cfg = session.config

        def export(landscape: EntropyLandscape) -> None:
            stem = artifact_stem("stability", j=landscape.j, d=landscape.delta)
            session.writer.write_csv(f"{stem}.csv", ["theta", "phi", "avg_entropy"], landscape.rows())
            session.writer.write_json(f"{stem}.json", landscape.metadata())
            progress.advance(f"Landscape j={landscape.j:g} delta={landscape.delta:g} done")

        total = len(cfg.j_values) * len(cfg.delta_values)
        with ProgressIndicator("Stability landscapes", total=total) as progress:
            summaries = mean_landscape_vs_spin(
                [SpinParams.from_j(j) for j in cfg.j_values],
                cfg.delta_values,
                cfg.kappa_class,
                cfg.applications,
                cfg.theta_count,
                cfg.phi_count,
                pool=session.pool,
                on_landscape=export,
            )

        for summary in summaries:
            console.print(
                f"j={summary.j:g} delta={summary.delta:g}: mean={summary.mean_entropy:.4e}, s_max={summary.s_max:.4e}"
            )
        session.writer.write_csv(
            "stability_summary.csv",
            ["j", "delta", "mean_entropy", "s_max"],
            ([s.j, s.delta, s.mean_entropy, s.s_max] for s in summaries),
        )
        session.finish("stability", {"landscapes": len(summaries)})


@click.command("verify")
@click.option("--check", help=f"Check name(s), comma-separated, or 'all': {', '.join(CHECKS)}")
@click.option("--j-max", type=float, help="Largest spin swept from 1/2 [default: 10]")
@click.option(
    "--parity", type=click.Choice(["both", "integer", "half-integer"]), help="Spins included in the sweep [default: both]"
)
@click.option("--tol", type=float, help="Deviation tolerance [default: 1e-10]")
@run_options
def verify_command(**params: Any) -> None:
    """Certify the operator identities numerically."""
    config_file, flags = _flags(params)
    with RunSession("verify", VerifyConfig, flags, config_file) as session:
        cfg = session.config
        names = None if cfg.check.strip().lower() == "all" else [n.strip() for n in cfg.check.split(",") if n.strip()]
        unknown = [n for n in names or [] if n not in CHECKS]
        if unknown:
            raise ConfigurationError(f"unknown check(s) {', '.join(unknown)}; choose from {', '.join(CHECKS)}", key="check")

        sweep = [spin.j for spin in spin_range(0.5, cfg.j_max) if cfg.parity in ("both", spin.parity.value)]
        if not sweep:
            raise ConfigurationError(f"no {cfg.parity} spins up to j={cfg.j_max:g}", key="parity")
        checks = run_checks(names, sweep, cfg.tol, session.pool)
        rows = [row for check in checks for row in check.report_rows()]
        session.writer.write_json("verify.json", rows)
        render_checks(checks)

        failed = [check for check in checks if not check.passed]
        worst = max((check.max_deviation for check in checks), default=0.0)
        excluded = {check.name: check.excluded_j for check in checks if check.excluded_j}
        session.finish(
            "verify",
            {"checks": len(checks), "failed": len(failed), "max_deviation": worst, "excluded_j": excluded},
        )
        if failed:
            raise VerificationError(
                f"{len(failed)} identity check(s) failed",
                failures=[row for row in rows if not row["pass"]],
            )


__all__ = [
    "classical_command",
    "entropy_command",
    "husimi_command",
    "period_command",
    "search_command",
    "stability_command",
    "table_command",
    "verify_command",
]

