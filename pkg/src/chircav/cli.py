"""Command-line front end.

Subcommands: solve, sweep, dynamics, invert, molecule.  Fully
deterministic (no RNG anywhere); errors are emitted as structured JSON on
standard error for pipeline consumption, and the exit status is 0 only
when every requested computation converged.
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass

import click

from . import detect, molecule, paramfile, sweep
from .dynamics import integrate_to_steady
from .errors import ChircavError, ConfigError, NoConvergence
from .observables import observables_from_state
from .params import MeanFieldState, link_detunings
from .steady import solve_steady
from .units import TWO_PI


@dataclass(frozen=True)
class RunConfig:
    """One CLI invocation, validated."""

    command: str
    params_file: str | None = None
    axes: tuple[sweep.AxisSpec, ...] = ()
    output_path: str | None = None
    output_format: str = "json"
    method: str = "full_solver"
    threads: int = 1
    tie_detunings: bool = False
    intensity_mhz: float | None = None
    grid_points: int = 201
    t_max: float = 100.0
    settle_tol: float = 1e-8
    preset: str = "propanediol-1,2"

    def __post_init__(self):
        if self.command not in ("solve", "sweep", "dynamics", "invert", "molecule"):
            raise ConfigError(f"unknown command {self.command!r}")
        if self.output_format == "svg" and self.command != "sweep":
            raise ConfigError("svg output is only valid for sweep")
        if self.command == "sweep" and not self.axes:
            raise ConfigError("sweep requires at least one --axis")
        if self.command != "sweep" and self.axes:
            raise ConfigError(f"--axis is not valid for {self.command}")


def _load(config: RunConfig):
    if not config.params_file:
        raise ConfigError(f"{config.command} requires --params")
    params = paramfile.load_params(config.params_file)
    if config.tie_detunings:
        params = link_detunings(params)
    return params


def _json_out(path, doc) -> None:
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def _run_solve(config: RunConfig) -> int:
    params = _load(config)
    if config.method == "analytic":
        from .analytic import first_order_cavity_amplitude, zeroth_order_state
        from dataclasses import replace as dc_replace

        state = dc_replace(zeroth_order_state(params), a=first_order_cavity_amplitude(params))
        obs = observables_from_state(state, params)
        summary = f"I_out/2pi = {obs.i_out_over_2pi_mhz:.4f} MHz (analytic, first order)"
        extra = {"converged": True, "newton_iters": 0, "residual_norm": 0.0}
    else:
        report = solve_steady(params)
        state, obs = report.state, observables_from_state(report.state, params)
        summary = (
            f"I_out/2pi = {obs.i_out_over_2pi_mhz:.4f} MHz, "
            f"converged in {report.newton_iters_total} Newton steps"
        )
        extra = {
            "converged": report.converged,
            "newton_iters": report.newton_iters_total,
            "residual_norm": report.residual_norm,
        }
    if config.output_path:
        _json_out(config.output_path, {**_state_doc(state), "observables": _obs_doc(obs), **extra})
    click.echo(summary)
    return 0


def _state_doc(state: MeanFieldState) -> dict:
    def sp(m):
        return {
            "s12": [m.s12.real, m.s12.imag],
            "s13": [m.s13.real, m.s13.imag],
            "s23": [m.s23.real, m.s23.imag],
            "s11": m.s11,
            "s22": m.s22,
            "s33": m.s33,
        }

    return {"a": [state.a.real, state.a.imag], "left": sp(state.left), "right": sp(state.right)}


def _obs_doc(obs) -> dict:
    return {
        "a_out": [obs.a_out.real, obs.a_out.imag],
        "i_out_rad_per_us": obs.i_out,
        "i_out_over_2pi_mhz": obs.i_out_over_2pi_mhz,
        "p_e_left": obs.p_e_left,
        "p_e_right": obs.p_e_right,
    }


def _run_sweep(config: RunConfig) -> int:
    params = _load(config)
    if not config.output_path:
        raise ConfigError("sweep requires --out")
    table = sweep.run_sweep(
        params,
        config.axes,
        method=config.method,
        tie_detunings=config.tie_detunings,
        threads=config.threads,
    )
    writer = {
        "csv": table.write_csv,
        "json": table.write_json,
        "svg": table.write_svg,
    }[config.output_format]
    writer(config.output_path)
    click.echo(
        f"swept {len(table.rows)} points ({table.n_failed} failed), "
        f"wrote {config.output_path}"
    )
    if table.n_failed:
        _emit_error(
            config.command,
            "NoConvergence",
            f"{table.n_failed} of {len(table.rows)} grid points did not converge",
        )
        return 1
    return 0


def _run_dynamics(config: RunConfig) -> int:
    params = _load(config)
    if config.output_format != "csv":
        raise ConfigError("dynamics output format must be csv")
    init = MeanFieldState.vacuum(params.n_left, params.n_right)
    traj = integrate_to_steady(params, init, t_max=config.t_max, settle_tol=config.settle_tol)
    if config.output_path:
        traj.write_csv(config.output_path)
        wrote = f", wrote {config.output_path}"
    else:
        wrote = ""
    if traj.converged_at is None:
        click.echo(f"not settled within t_max = {config.t_max:g} us{wrote}")
        _emit_error(config.command, "NotSettled", "trajectory did not settle within t_max")
        return 1
    click.echo(f"settled at t = {traj.converged_at:.4g} us{wrote}")
    return 0


def _run_invert(config: RunConfig) -> int:
    params = _load(config)
    if config.intensity_mhz is None:
        raise ConfigError("invert requires --intensity-mhz")
    i_rad = TWO_PI * config.intensity_mhz
    if config.method == "analytic":
        estimate = detect.eta_from_intensity_low(i_rad, params)
    else:
        estimate = detect.eta_from_intensity_full(i_rad, params, config.grid_points)
    doc = {
        "candidates": estimate.candidates,
        "magnitude": estimate.magnitude,
        "sign_resolved": estimate.sign_resolved,
        "method": estimate.method,
    }
    if config.output_path:
        _json_out(config.output_path, doc)
    cands = ", ".join(f"{c:+.6f}" for c in estimate.candidates)
    click.echo(f"eta candidates: {cands} (sign {'resolved' if estimate.sign_resolved else 'ambiguous'})")
    return 0


def _run_molecule(config: RunConfig) -> int:
    try:
        spec = molecule.PRESETS[config.preset]
    except KeyError:
        raise ConfigError(
            f"unknown preset {config.preset!r}; available: {sorted(molecule.PRESETS)}"
        ) from None
    wf = molecule.working_frequencies(spec)
    doc = {
        "preset": config.preset,
        "omega_21_mhz": wf.omega_21.to_mhz(),
        "omega_31_mhz": wf.omega_31.to_mhz(),
        "omega_32_mhz": wf.omega_32.to_mhz(),
    }
    if config.output_path:
        _json_out(config.output_path, doc)
    click.echo(
        f"omega_21/2pi = {wf.omega_21.to_mhz() / 1e6:.6f} THz, "
        f"omega_31/2pi = {wf.omega_31.to_mhz() / 1e6:.6f} THz, "
        f"omega_32/2pi = {wf.omega_32.to_mhz():.3f} MHz"
    )
    return 0


_RUNNERS = {
    "solve": _run_solve,
    "sweep": _run_sweep,
    "dynamics": _run_dynamics,
    "invert": _run_invert,
    "molecule": _run_molecule,
}


def run(config: RunConfig) -> int:
    """Execute one configured command; returns the process exit status."""
    return _RUNNERS[config.command](config)


def _emit_error(command: str, kind: str, message: str) -> None:
    click.echo(json.dumps({"error": kind, "message": message, "command": command}), err=True)


def _execute(config: RunConfig) -> None:
    try:
        code = run(config)
    except ChircavError as exc:
        _emit_error(config.command, type(exc).__name__, str(exc))
        sys.exit(1)
    sys.exit(code)


def _parse_axis(_ctx, _param, specs) -> tuple[sweep.AxisSpec, ...]:
    axes = []
    for text in specs:
        parts = text.split(":")
        if len(parts) != 4:
            raise click.BadParameter(f"expected name:start:stop:points, got {text!r}")
        name, start, stop, points = parts
        try:
            axes.append(
                sweep.AxisSpec(
                    parameter_name=name,
                    start=float(start),
                    stop=float(stop),
                    points=int(points),
                )
            )
        except (ValueError, ConfigError) as exc:
            raise click.BadParameter(str(exc)) from exc
    if len(axes) > 2:
        raise click.BadParameter("at most 2 axes")
    return tuple(axes)


_method_option = click.option(
    "--method",
    type=click.Choice(["analytic", "full"]),
    default="full",
    show_default=True,
    help="Closed-form low-excitation formula or the full nonlinear solver.",
)
_params_option = click.option("--params", "params_file", required=True, type=click.Path())
_out_option = click.option("--out", "output_path", type=click.Path(), default=None)
_tie_option = click.option(
    "--tie-detunings",
    is_flag=True,
    help="Apply the resonance convention delta_31 = 0, delta_a = -delta_32.",
)


def _canon_method(method: str) -> str:
    return "full_solver" if method == "full" else method


@click.group()
def main():
    """Cavity-output simulator for chiral molecular ensembles."""


@main.command()
@_params_option
@_out_option
@_method_option
@_tie_option
def solve(params_file, output_path, method, tie_detunings):
    """Steady state at one parameter point."""
    _execute(
        RunConfig(
            command="solve",
            params_file=params_file,
            output_path=output_path,
            method=_canon_method(method),
            tie_detunings=tie_detunings,
        )
    )


@main.command(name="sweep")
@_params_option
@click.option("--axis", "axes", multiple=True, callback=_parse_axis, help="name:start:stop:points (repeatable, max 2). Frequencies in MHz (/2pi).")
@click.option("--out", "output_path", required=True, type=click.Path())
@click.option("--format", "output_format", type=click.Choice(["csv", "json", "svg"]), default="csv", show_default=True)
@_method_option
@click.option("--threads", type=int, default=os.cpu_count() or 1, show_default="machine parallelism")
@_tie_option
def sweep_cmd(params_file, axes, output_path, output_format, method, threads, tie_detunings):
    """Grid sweep over 1 or 2 parameters."""
    _execute(
        RunConfig(
            command="sweep",
            params_file=params_file,
            axes=axes,
            output_path=output_path,
            output_format=output_format,
            method=_canon_method(method),
            threads=threads,
            tie_detunings=tie_detunings,
        )
    )


@main.command()
@_params_option
@_out_option
@click.option("--t-max", type=float, default=100.0, show_default=True, help="Integration horizon in us.")
@click.option("--settle-tol", type=float, default=1e-8, show_default=True)
@_tie_option
def dynamics(params_file, output_path, t_max, settle_tol, tie_detunings):
    """Integrate from the vacuum state until the motion settles."""
    _execute(
        RunConfig(
            command="dynamics",
            params_file=params_file,
            output_path=output_path,
            output_format="csv",
            t_max=t_max,
            settle_tol=settle_tol,
            tie_detunings=tie_detunings,
        )
    )


@main.command()
@_params_option
@_out_option
@click.option("--intensity-mhz", type=float, required=True, help="Measured I_out/2pi in MHz.")
@_method_option
@click.option("--grid-points", type=int, default=201, show_default=True)
@_tie_option
def invert(params_file, output_path, intensity_mhz, method, grid_points, tie_detunings):
    """Estimate the enantiomeric excess from a measured intensity."""
    _execute(
        RunConfig(
            command="invert",
            params_file=params_file,
            output_path=output_path,
            intensity_mhz=intensity_mhz,
            method=_canon_method(method),
            grid_points=grid_points,
            tie_detunings=tie_detunings,
        )
    )


@main.command(name="molecule")
@click.option("--preset", default="propanediol-1,2", show_default=True)
@_out_option
def molecule_cmd(preset, output_path):
    """Working-state transition frequencies from molecular constants."""
    _execute(RunConfig(command="molecule", preset=preset, output_path=output_path))


if __name__ == "__main__":
    main()
