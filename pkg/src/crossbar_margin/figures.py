"""Preset studies bundled as reproducible CSV + SVG outputs.

Each study runs from the bundled technology profile alone and writes
deterministic files, so two runs of the same study are byte-identical.
They are exposed through the fig3..fig6 CLI subcommands:

  fig3  joint-effect curves: margin versus column size with each
        non-ideality family isolated, then combined
  fig4  margin versus on-resistance across column sizes, with the
        distributed-network solver overlaid on the closed-form model
  fig5  factor ablation at a fixed column size
  fig6  read-voltage compensation and its margin gain
"""

from __future__ import annotations

from pathlib import Path

from .analysis import (
    COARSE_R_ON_GRID,
    DEFAULT_N_GRID,
    DEFAULT_R_ON_GRID,
    VALIDATION_N_GRID,
    MarginCurve,
    ablation_series,
    compensation_curve,
)
from .model import (
    CellSpec,
    FactorToggles,
    ReadSetup,
    TechnologyProfile,
    read_currents,
)
from .oracle import oracle_margin
from .results import ResultTable, write_csv
from .svg import render_plot

V_READ_DEFAULT = 0.2
RATIO_DEFAULT = 10.0


def _margin_vs_n(
    profile: TechnologyProfile,
    r_on: float,
    ratio_ideal: float,
    toggles: FactorToggles,
    n_grid: tuple[int, ...],
    v_read: float,
) -> MarginCurve:
    cell = CellSpec(r_on=r_on, ratio_ideal=ratio_ideal)
    results = tuple(
        read_currents(profile, cell, ReadSetup.from_toggles(v_read, n, toggles))
        for n in n_grid
    )
    return MarginCurve(
        label=f"R_on={r_on:g}",
        x=tuple(float(n) for n in n_grid),
        y=tuple(r.margin_normalized for r in results),
        results=results,
        meta={"r_on": r_on, "toggles": toggles, "v_read": v_read},
    )


def write_fig3(profile: TechnologyProfile, outdir: str | Path) -> list[Path]:
    """Margin versus column size, per non-ideality family and combined."""
    outdir = Path(outdir)
    panels = [
        ("a", "IR drop only", FactorToggles(True, True, False), (1e4, 1e5)),
        ("b", "leakage only", FactorToggles(False, True, True), (1e4, 1e5)),
        ("c", "all factors", FactorToggles(True, True, True), (1e4, 5e4, 1e5)),
    ]
    rows = []
    written = []
    for key, desc, toggles, r_ons in panels:
        curves = [
            _margin_vs_n(profile, r_on, RATIO_DEFAULT, toggles, DEFAULT_N_GRID, V_READ_DEFAULT)
            for r_on in r_ons
        ]
        for curve in curves:
            for n, res in zip(curve.x, curve.results):
                rows.append(
                    (
                        key,
                        curve.meta["r_on"],
                        int(n),
                        V_READ_DEFAULT,
                        res.i_on,
                        res.i_off,
                        res.ratio_effective,
                        res.margin_normalized,
                    )
                )
        svg_path = outdir / f"fig3{key}.svg"
        render_plot(
            curves,
            svg_path,
            title=f"Sensing margin vs column size ({desc})",
            x_label="cells per column",
            y_label="normalized margin",
            x_log=True,
            y_min=0.0,
            y_max=1.0,
        )
        written.append(svg_path)
    table = ResultTable(
        header=(
            "panel",
            "r_on_ohm",
            "n_cells",
            "v_read_v",
            "i_on_a",
            "i_off_a",
            "ratio_effective",
            "margin_normalized",
        ),
        rows=tuple(rows),
    )
    csv_path = outdir / "fig3.csv"
    write_csv(table, csv_path)
    return [csv_path] + written


def _margin_vs_r(
    profile: TechnologyProfile,
    ratio_ideal: float,
    n: int,
    grid: tuple[float, ...],
    engine: str,
    v_read: float,
) -> MarginCurve:
    setup = ReadSetup(v_read=v_read, n_cells=n)
    evaluate = read_currents if engine == "lumped" else oracle_margin
    results = tuple(
        evaluate(profile, CellSpec(r_on=r, ratio_ideal=ratio_ideal), setup)
        for r in grid
    )
    label = f"n={n}" if engine == "lumped" else f"n={n} (network)"
    return MarginCurve(
        label=label,
        x=grid,
        y=tuple(r.margin_normalized for r in results),
        results=results,
        meta={"n_cells": n, "engine": engine, "ratio_ideal": ratio_ideal},
    )


def write_fig4(profile: TechnologyProfile, outdir: str | Path) -> list[Path]:
    """Margin versus on-resistance; panel (a) overlays the network solver."""
    outdir = Path(outdir)
    written = []

    model_curves = [
        _margin_vs_r(profile, RATIO_DEFAULT, n, DEFAULT_R_ON_GRID, "lumped", V_READ_DEFAULT)
        for n in VALIDATION_N_GRID
    ]
    oracle_curves = [
        _margin_vs_r(profile, RATIO_DEFAULT, n, COARSE_R_ON_GRID, "oracle", V_READ_DEFAULT)
        for n in VALIDATION_N_GRID
    ]
    rows = [
        (curve.meta["engine"], curve.meta["n_cells"], r_on, margin)
        for curve in model_curves + oracle_curves
        for r_on, margin in zip(curve.x, curve.y)
    ]
    csv_a = outdir / "fig4a.csv"
    write_csv(
        ResultTable(header=("engine", "n_cells", "r_on_ohm", "margin_normalized"), rows=tuple(rows)),
        csv_a,
    )
    svg_a = outdir / "fig4a.svg"
    render_plot(
        model_curves + oracle_curves,
        svg_a,
        title="Sensing margin vs R_on (k=10), model lines, network points",
        x_label="R_on (ohm)",
        y_label="normalized margin",
        y_min=0.0,
        y_max=1.0,
        marker_labels=[c.label for c in oracle_curves],
    )
    written += [csv_a, svg_a]

    k100_curves = [
        _margin_vs_r(profile, 100.0, n, DEFAULT_R_ON_GRID, "lumped", V_READ_DEFAULT)
        for n in VALIDATION_N_GRID
    ]
    rows = [
        ("lumped", curve.meta["n_cells"], r_on, margin)
        for curve in k100_curves
        for r_on, margin in zip(curve.x, curve.y)
    ]
    csv_b = outdir / "fig4b.csv"
    write_csv(
        ResultTable(header=("engine", "n_cells", "r_on_ohm", "margin_normalized"), rows=tuple(rows)),
        csv_b,
    )
    svg_b = outdir / "fig4b.svg"
    render_plot(
        k100_curves,
        svg_b,
        title="Sensing margin vs R_on (k=100)",
        x_label="R_on (ohm)",
        y_label="normalized margin",
        y_min=0.0,
        y_max=1.0,
    )
    written += [csv_b, svg_b]
    return written


def write_fig5(profile: TechnologyProfile, outdir: str | Path) -> list[Path]:
    """Factor ablation at n=1024: which non-ideality owns which flank."""
    outdir = Path(outdir)
    setup = ReadSetup(v_read=V_READ_DEFAULT, n_cells=1024)
    series = ablation_series(
        profile, CellSpec(r_on=1e4, ratio_ideal=RATIO_DEFAULT), setup
    )
    rows = [
        (label, r_on, margin)
        for label, curve in series
        for r_on, margin in zip(curve.x, curve.y)
    ]
    csv_path = outdir / "fig5.csv"
    write_csv(
        ResultTable(header=("variant", "r_on_ohm", "margin_normalized"), rows=tuple(rows)),
        csv_path,
    )
    svg_path = outdir / "fig5.svg"
    render_plot(
        [curve for _, curve in series],
        svg_path,
        title="Non-ideality ablation (k=10, n=1024)",
        x_label="R_on (ohm)",
        y_label="normalized margin",
        y_min=0.0,
        y_max=1.0,
    )
    return [csv_path, svg_path]


def write_fig6(profile: TechnologyProfile, outdir: str | Path) -> list[Path]:
    """Read-voltage compensation at n=1024: margins and margin gains."""
    outdir = Path(outdir)
    n = 1024
    margin_curves = []
    for v in (0.2, 0.4, 0.6):
        curve = _margin_vs_r(profile, RATIO_DEFAULT, n, DEFAULT_R_ON_GRID, "lumped", v)
        margin_curves.append(
            MarginCurve(
                label=f"V_read={v:g}V",
                x=curve.x,
                y=curve.y,
                results=curve.results,
                meta={**curve.meta, "v_read": v},
            )
        )
    gain_04 = compensation_curve(profile, RATIO_DEFAULT, n, 0.2, 0.4, DEFAULT_R_ON_GRID)
    gain_06 = compensation_curve(profile, RATIO_DEFAULT, n, 0.2, 0.6, DEFAULT_R_ON_GRID)

    rows = []
    for idx, r_on in enumerate(DEFAULT_R_ON_GRID):
        rows.append(
            (
                r_on,
                margin_curves[0].y[idx],
                margin_curves[1].y[idx],
                margin_curves[2].y[idx],
                gain_04.y[idx],
                gain_06.y[idx],
            )
        )
    csv_path = outdir / "fig6.csv"
    write_csv(
        ResultTable(
            header=(
                "r_on_ohm",
                "margin_0.2v",
                "margin_0.4v",
                "margin_0.6v",
                "gain_0.4v",
                "gain_0.6v",
            ),
            rows=tuple(rows),
        ),
        csv_path,
    )
    svg_margins = outdir / "fig6_margins.svg"
    render_plot(
        margin_curves,
        svg_margins,
        title="Sensing margin vs R_on at three read voltages (n=1024)",
        x_label="R_on (ohm)",
        y_label="normalized margin",
        y_min=0.0,
        y_max=1.0,
        dash_labels=["V_read=0.4V", "V_read=0.6V"],
    )
    svg_gain = outdir / "fig6.svg"
    render_plot(
        [gain_04, gain_06],
        svg_gain,
        title="Margin gain from raising the read voltage (n=1024)",
        x_label="R_on (ohm)",
        y_label="margin gain",
    )
    return [csv_path, svg_margins, svg_gain]


FIGURE_WRITERS = {
    "fig3": write_fig3,
    "fig4": write_fig4,
    "fig5": write_fig5,
    "fig6": write_fig6,
}
