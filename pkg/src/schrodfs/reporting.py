"""Report writers: delimited tables, structured series dumps, and figures.

CSV tables carry a header row, 17-significant-digit decimals, UTF-8 text and
LF line endings, so identical inputs produce byte-identical files.  Every row
echoes the full parameter set of the run it came from.  Series dumps are JSON
documents holding metadata plus, per slice, a flat interleaved re/im list in
lexicographic index order.  Each table writer has a figure companion that
renders a PNG next to the delimited file.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Sequence

import numpy as np

from .analysis import NormAuditRow, SweepResult, per_step_growth_allowance
from .errors import ConfigurationError
from .explicit_fs import FundamentalSolutionSeries
from .implicit_fs import DecayReport
from .lattice import ComplexField3D, LatticeSpec


def format_float(x: float) -> str:
    """17 significant digits: enough to round-trip a double."""
    return f"{x:.17g}"


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def _write_rows(path, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_format_cell(v) for v in row])


SWEEP_COLUMNS = (
    "scheme",
    "boundary",
    "h",
    "tau",
    "n_half",
    "k_max",
    "t0",
    "horizon_steps",
    "cfl_ratio",
    "cfl_ratio_squared",
    "constraint_ok",
    "window_volume",
    "total_error_bounded_interval",
    "total_error_tail",
    "closed_form_error_bound",
    "bound_satisfied",
)


def write_sweep_csv(path, sweep: SweepResult) -> None:
    """One row per schedule step, refinement order preserved."""
    rows = [
        (
            r.scheme_tag,
            r.boundary,
            r.h,
            r.tau,
            r.n_half,
            r.k_max,
            r.t0,
            r.horizon_steps,
            r.cfl_ratio,
            r.cfl_ratio_squared,
            r.constraint_ok,
            r.window_volume,
            r.total_error_bounded_interval,
            r.total_error_tail,
            r.closed_form_error_bound,
            r.bound_satisfied,
        )
        for r in sweep
    ]
    _write_rows(path, SWEEP_COLUMNS, rows)


AUDIT_COLUMNS = (
    "scheme",
    "boundary",
    "h",
    "tau",
    "n_half",
    "k_max",
    "t0",
    "cfl_ratio",
    "k",
    "norm",
    "exceeds_unit_bound",
    "growth_allowance",
)


def write_audit_csv(path, fs: FundamentalSolutionSeries, rows: Sequence[NormAuditRow]) -> None:
    """Per-slice norm audit; t0 echoes the last represented time tau*k_max."""
    spec = fs.spec
    allowance = per_step_growth_allowance(spec)
    table = [
        (
            fs.scheme_tag,
            fs.boundary,
            spec.h,
            spec.tau,
            spec.n_half,
            spec.k_max,
            spec.tau * spec.k_max,
            spec.cfl_ratio,
            r.k,
            r.norm,
            r.exceeds_unit_bound,
            allowance,
        )
        for r in rows
    ]
    _write_rows(path, AUDIT_COLUMNS, table)


DECAY_COLUMNS = (
    "scheme",
    "h",
    "tau",
    "n_half",
    "k_max",
    "t0",
    "cfl_ratio",
    "k",
    "rate",
    "boundary_origin_ratio",
    "samples_used",
    "skipped",
)


def write_decay_csv(path, report: DecayReport) -> None:
    spec = report.spec
    table = [
        (
            "implicit",
            spec.h,
            spec.tau,
            spec.n_half,
            spec.k_max,
            spec.tau * spec.k_max,
            spec.cfl_ratio,
            r.k,
            r.rate,
            r.boundary_origin_ratio,
            r.samples_used,
            r.skipped,
        )
        for r in report.per_slice
    ]
    _write_rows(path, DECAY_COLUMNS, table)


def write_series_json(path, fs: FundamentalSolutionSeries) -> None:
    """Metadata plus per-slice interleaved re/im values, C index order."""
    spec = fs.spec
    doc = {
        "format": "fs-series/1",
        "scheme": fs.scheme_tag,
        "boundary": fs.boundary,
        "h": spec.h,
        "tau": spec.tau,
        "n_half": spec.n_half,
        "k_max": spec.k_max,
        "cfl_ratio": spec.cfl_ratio,
        "cfl_ratio_squared": spec.cfl_ratio_squared,
        "shape": list(spec.shape),
        "slices": [
            {
                "k": k,
                "t": k * spec.tau,
                "re_im": _interleave(fs.slices[k].values),
            }
            for k in range(spec.k_max + 1)
        ],
    }
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def _interleave(values: np.ndarray) -> list[float]:
    flat = values.reshape(-1)
    out = np.empty(2 * flat.size, dtype=np.float64)
    out[0::2] = flat.real
    out[1::2] = flat.imag
    return out.tolist()


def load_series_json(path) -> FundamentalSolutionSeries:
    """Inverse of write_series_json; exact double round-trip."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("format") != "fs-series/1":
        raise ConfigurationError(f"unrecognized series document in {path}")
    spec = LatticeSpec(h=doc["h"], tau=doc["tau"], n_half=doc["n_half"], k_max=doc["k_max"])
    slices = []
    for entry in doc["slices"]:
        flat = np.asarray(entry["re_im"], dtype=np.float64)
        vals = (flat[0::2] + 1j * flat[1::2]).reshape(spec.shape)
        slices.append(ComplexField3D(spec, vals))
    return FundamentalSolutionSeries(spec, tuple(slices), doc["scheme"], doc["boundary"])


def figure_path_for(csv_path) -> Path:
    return Path(csv_path).with_suffix(".png")


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_sweep_figure(path, sweep: SweepResult) -> None:
    plt = _pyplot()
    hs = [r.h for r in sweep]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.loglog(hs, sweep.totals, "o-", label="measured total")
    ax.loglog(hs, [r.closed_form_error_bound for r in sweep], "s--", label="closed-form bound")
    ax.invert_xaxis()  # refinement reads left to right
    ax.set_xlabel("h")
    ax.set_ylabel("l1 error over ]0, T0]")
    ax.set_title(f"{sweep[0].scheme_tag} scheme, T0 = {sweep[0].t0:g}")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def render_audit_figure(path, fs: FundamentalSolutionSeries, rows: Sequence[NormAuditRow]) -> None:
    plt = _pyplot()
    ks = [r.k for r in rows]
    norms = [r.norm for r in rows]
    allowance = per_step_growth_allowance(fs.spec)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(ks, norms, "o-", label="l1 norm per slice")
    ax.plot(ks, [allowance ** max(k - 1, 0) for k in ks],
            ":", color="gray", label="growth allowance from k=1")
    ax.axhline(1.0, color="red", linewidth=0.8, label="unit claim")
    ax.set_xlabel("k")
    ax.set_ylabel("l1 norm")
    ax.set_title(f"{fs.scheme_tag} scheme, tau/h^2 = {fs.spec.cfl_ratio:g}")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def render_decay_figure(path, report: DecayReport) -> None:
    plt = _pyplot()
    live = [r for r in report.per_slice if not r.skipped]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.0, 4.0))
    ax1.plot([r.k for r in live], [r.rate for r in live], "o-")
    ax1.set_xlabel("k")
    ax1.set_ylabel("fitted decay rate")
    ax1.grid(True, alpha=0.3)
    ax2.semilogy([r.k for r in live],
                 [max(r.boundary_origin_ratio, 1e-300) for r in live], "o-")
    ax2.set_xlabel("k")
    ax2.set_ylabel("boundary / origin magnitude")
    ax2.grid(True, which="both", alpha=0.3)
    fig.suptitle(
        f"implicit decay, h = {report.spec.h:g}, tau = {report.spec.tau:g}"
    )
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
