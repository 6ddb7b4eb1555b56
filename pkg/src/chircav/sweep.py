"""Parameter-grid evaluation.

Sweeps evaluate either the closed-form low-excitation intensity or the
full nonlinear solver over a 1-D or 2-D rectangular grid.  Full-solver
grids are traversed in serpentine order so every point warm-starts from
an adjacent parameter value, which keeps Newton on the vacuum-connected
branch across the collective-coupling resonances.  Grid points can be
distributed over a pool of worker processes; the partition is
deterministic, so repeated runs with the same worker count reproduce the
same table, and rows are always assembled in canonical grid order.

Boundary units: frequency-like axes are given as value/2pi in MHz;
"eta" re-splits the populations at fixed total N; "phi" is in radians;
"n_left"/"n_right" are raw counts.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from .errors import ConfigError, NoConvergence, SweepAborted
from .analytic import first_order_cavity_amplitude, zeroth_order_state
from .observables import Observables, observables_from_state
from .params import MeanFieldState, ModelParams, link_detunings, validate
from .steady import SolveOptions, solve_steady
from .units import AngularFrequency

_FREQUENCY_FIELDS = frozenset(
    {
        "delta_a",
        "delta_31",
        "delta_32",
        "g_a",
        "omega_31",
        "omega_32",
        "kappa_a",
        "gamma_21",
        "gamma_31",
        "gamma_32",
    }
)
_PLAIN_FIELDS = frozenset({"n_left", "n_right", "phi", "eta"})
_FAIL_FRACTION = 0.10


@dataclass(frozen=True, slots=True)
class AxisSpec:
    """One swept parameter: any ModelParams field name or "eta"."""

    parameter_name: str
    start: float
    stop: float
    points: int
    scale: str = "linear"

    def __post_init__(self):
        if self.parameter_name not in _FREQUENCY_FIELDS | _PLAIN_FIELDS:
            raise ConfigError(f"unknown sweep parameter {self.parameter_name!r}")
        if self.points < 2:
            raise ConfigError("axis needs at least 2 points")
        if self.start == self.stop:
            raise ConfigError("axis start and stop must differ")
        if self.scale != "linear":
            raise ConfigError(f"unsupported axis scale {self.scale!r}")

    def values(self) -> list[float]:
        step = (self.stop - self.start) / (self.points - 1)
        return [self.start + k * step for k in range(self.points)]

    @property
    def column_name(self) -> str:
        if self.parameter_name in _FREQUENCY_FIELDS:
            return f"{self.parameter_name}_mhz"
        if self.parameter_name == "phi":
            return "phi_rad"
        return self.parameter_name


@dataclass(frozen=True, slots=True)
class SweepRow:
    """One grid point: axis values (boundary units), observables, solver summary."""

    axis_values: tuple[float, ...]
    re_a: float
    im_a: float
    observables: Observables
    converged: bool
    newton_iters: int
    residual_norm: float


@dataclass(frozen=True, slots=True)
class SweepTable:
    """Rectangular sweep result in canonical (row-major) grid order."""

    axes: tuple[AxisSpec, ...]
    method: str
    rows: list[SweepRow]

    @property
    def n_failed(self) -> int:
        return sum(not r.converged for r in self.rows)

    def _column_names(self) -> list[str]:
        return [ax.column_name for ax in self.axes] + [
            "re_a",
            "im_a",
            "i_out_rad_per_us",
            "i_out_over_2pi_mhz",
            "p_e_left",
            "p_e_right",
            "converged",
            "newton_iters",
            "residual_norm",
        ]

    def _row_record(self, row: SweepRow) -> dict:
        rec = dict(zip((ax.column_name for ax in self.axes), row.axis_values))
        rec.update(
            re_a=row.re_a,
            im_a=row.im_a,
            i_out_rad_per_us=row.observables.i_out,
            i_out_over_2pi_mhz=row.observables.i_out_over_2pi_mhz,
            p_e_left=row.observables.p_e_left,
            p_e_right=row.observables.p_e_right,
            converged=row.converged,
            newton_iters=row.newton_iters,
            residual_norm=row.residual_norm,
        )
        return rec

    def write_csv(self, path) -> None:
        """Documented fixed header; floats with 17 significant digits."""
        names = self._column_names()
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(names)
            for row in self.rows:
                rec = self._row_record(row)
                writer.writerow(_fmt(rec[name]) for name in names)

    def write_json(self, path) -> None:
        doc = {
            "method": self.method,
            "axes": [
                {
                    "parameter_name": ax.parameter_name,
                    "start": ax.start,
                    "stop": ax.stop,
                    "points": ax.points,
                    "scale": ax.scale,
                }
                for ax in self.axes
            ],
            "rows": [self._row_record(row) for row in self.rows],
        }
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")

    def write_svg(self, path) -> None:
        """Line plot (1 axis) or heatmap (2 axes) of the output intensity."""
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        intensity = [r.observables.i_out_over_2pi_mhz for r in self.rows]
        with plt.rc_context({"svg.hashsalt": "chircav"}):
            fig, ax = plt.subplots(figsize=(6.0, 4.0))
            if len(self.axes) == 1:
                ax.plot(self.axes[0].values(), intensity)
                ax.set_xlabel(_axis_label(self.axes[0]))
                ax.set_ylabel("I_out/2pi (MHz)")
            else:
                import numpy as np

                outer, inner = self.axes
                grid = np.reshape(intensity, (outer.points, inner.points))
                mesh = ax.pcolormesh(inner.values(), outer.values(), grid, shading="nearest")
                ax.set_xlabel(_axis_label(inner))
                ax.set_ylabel(_axis_label(outer))
                fig.colorbar(mesh, ax=ax, label="I_out/2pi (MHz)")
            fig.tight_layout()
            fig.savefig(path, format="svg", metadata={"Date": None})
            plt.close(fig)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _axis_label(ax: AxisSpec) -> str:
    if ax.parameter_name in _FREQUENCY_FIELDS:
        return f"{ax.parameter_name}/2pi (MHz)"
    if ax.parameter_name == "phi":
        return "phi (rad)"
    return ax.parameter_name


def apply_axis_value(params: ModelParams, name: str, value: float) -> ModelParams:
    """Set one swept parameter, converting boundary units."""
    if name == "eta":
        return params.with_eta(value)
    if name in _FREQUENCY_FIELDS:
        return replace(params, **{name: AngularFrequency.from_mhz(value)})
    return replace(params, **{name: value})


def _point_params(base, axes, values, tie_detunings):
    p = base
    for ax, v in zip(axes, values):
        p = apply_axis_value(p, ax.parameter_name, v)
    if tie_detunings:
        p = link_detunings(p)
    return p


def _serpentine(n_outer: int, n_inner: int):
    """Row-major with alternating inner direction; adjacent points stay adjacent."""
    for i in range(n_outer):
        cols = range(n_inner) if i % 2 == 0 else range(n_inner - 1, -1, -1)
        for j in cols:
            yield i, j


def _analytic_row(base, axes, values, tie_detunings) -> SweepRow:
    p = _point_params(base, axes, values, tie_detunings)
    a1 = first_order_cavity_amplitude(p)
    state = replace(zeroth_order_state(p), a=a1)
    return SweepRow(
        axis_values=tuple(values),
        re_a=a1.real,
        im_a=a1.imag,
        observables=observables_from_state(state, p),
        converged=True,
        newton_iters=0,
        residual_norm=0.0,
    )


def _solve_chunk(args):
    """Worker: solve a serpentine-ordered chunk with chained warm starts."""
    base, axes, tie_detunings, opts, indexed_values = args
    out = []
    prev_state: MeanFieldState | None = None
    for index, values in indexed_values:
        p = _point_params(base, axes, values, tie_detunings)
        try:
            rep = solve_steady(p, opts, init=prev_state)
        except NoConvergence as exc:
            rep = exc.report
        prev_state = rep.state if rep.converged else None
        out.append(
            (
                index,
                SweepRow(
                    axis_values=tuple(values),
                    re_a=rep.state.a.real,
                    im_a=rep.state.a.imag,
                    observables=observables_from_state(rep.state, p),
                    converged=rep.converged,
                    newton_iters=rep.newton_iters_total,
                    residual_norm=rep.residual_norm,
                ),
            )
        )
    return out


def run_sweep(
    base: ModelParams,
    axes,
    method: str = "analytic",
    *,
    tie_detunings: bool = False,
    threads: int = 1,
    opts: SolveOptions | None = None,
) -> SweepTable:
    """Evaluate a 1-D or 2-D grid around base.

    method is "analytic" (closed-form low-excitation intensity) or
    "full_solver".  tie_detunings re-applies the resonance convention
    (delta_31 = 0, delta_a = -delta_32) at every grid point, after the
    axis values are set.  Full-solver failures are recorded per row; the
    sweep aborts only if more than 10% of all points fail.
    """
    axes = tuple(axes)
    if not 1 <= len(axes) <= 2:
        raise ConfigError("sweeps support exactly 1 or 2 axes")
    if len(axes) == 2 and axes[0].parameter_name == axes[1].parameter_name:
        raise ConfigError("sweep axes must reference distinct parameters")
    if method not in ("analytic", "full_solver"):
        raise ConfigError(f"unknown sweep method {method!r}")
    validate(base)

    outer_vals = axes[0].values()
    inner_vals = axes[1].values() if len(axes) == 2 else [None]
    n_inner = len(inner_vals)

    def values_at(i, j):
        if len(axes) == 1:
            return [outer_vals[i]]
        return [outer_vals[i], inner_vals[j]]

    order = list(_serpentine(len(outer_vals), n_inner))

    if method == "analytic":
        rows_by_index = {
            (i, j): _analytic_row(base, axes, values_at(i, j), tie_detunings) for i, j in order
        }
    else:
        indexed = [((i, j), values_at(i, j)) for i, j in order]
        n_total = len(indexed)
        max_failures = int(_FAIL_FRACTION * n_total)
        workers = max(1, min(int(threads), n_total))
        chunks = _split(indexed, workers)
        if workers == 1:
            results = [_solve_chunk((base, axes, tie_detunings, opts, chunks[0]))]
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(
                    pool.map(
                        _solve_chunk,
                        [(base, axes, tie_detunings, opts, chunk) for chunk in chunks],
                    )
                )
        rows_by_index = {}
        failures = 0
        for chunk_rows in results:
            for index, row in chunk_rows:
                rows_by_index[index] = row
                if not row.converged:
                    failures += 1
                    if failures > max_failures:
                        raise SweepAborted(
                            f"{failures}/{n_total} grid points failed to converge"
                        )

    rows = [rows_by_index[(i, j)] for i in range(len(outer_vals)) for j in range(n_inner)]
    return SweepTable(axes=axes, method=method, rows=rows)


def _split(items, n_chunks):
    """Contiguous near-equal chunks preserving serpentine adjacency."""
    size, extra = divmod(len(items), n_chunks)
    chunks, start = [], 0
    for k in range(n_chunks):
        end = start + size + (1 if k < extra else 0)
        if end > start:
            chunks.append(items[start:end])
        start = end
    return chunks
