"""Design-space studies built on the column model and the network oracle.

Everything here is orchestration: each sweep point is produced by exactly
one call into the model (or oracle) with the same inputs a direct call
would use, so sweep results are bit-identical to point evaluations.  Grid
points are independent and could be evaluated in parallel; results are
always assembled in grid order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np

from .model import (
    CellSpec,
    FactorToggles,
    ReadSetup,
    SenseResult,
    TechnologyProfile,
    read_currents,
)
from .oracle import oracle_margin

# Default grids mirror the usual presentation of this design space:
# on-resistance swept over four decades, column length in powers of two.
DEFAULT_R_ON_GRID: tuple[float, ...] = tuple(
    float(x) for x in np.logspace(4.0, 8.0, 200)
)
COARSE_R_ON_GRID: tuple[float, ...] = tuple(float(x) for x in np.logspace(4.0, 8.0, 20))
DEFAULT_N_GRID: tuple[int, ...] = (64, 128, 256, 512, 1024, 2048, 4096)
VALIDATION_N_GRID: tuple[int, ...] = (256, 512, 1024, 2048, 4096)

ENGINES = ("lumped", "oracle")


class NonUnimodalError(ValueError):
    """Margin-versus-resistance curve is not quasi-concave."""


def _evaluate(
    profile: TechnologyProfile, cell: CellSpec, setup: ReadSetup, engine: str
) -> SenseResult:
    if engine == "lumped":
        return read_currents(profile, cell, setup)
    if engine == "oracle":
        return oracle_margin(profile, cell, setup)
    raise ValueError(f"engine must be one of {ENGINES}, got {engine!r}")


@dataclass(frozen=True)
class SweepSpec:
    """A margin sweep: resistance grid crossed with sizes, voltages, toggles."""

    r_on_grid: tuple[float, ...]
    n_grid: tuple[int, ...]
    v_read_grid: tuple[float, ...]
    ratio_ideal: float
    toggles: tuple[FactorToggles, ...] = (FactorToggles.all_on(),)
    engine: str = "lumped"

    def __post_init__(self) -> None:
        object.__setattr__(self, "r_on_grid", tuple(float(r) for r in self.r_on_grid))
        object.__setattr__(self, "n_grid", tuple(int(n) for n in self.n_grid))
        object.__setattr__(
            self, "v_read_grid", tuple(float(v) for v in self.v_read_grid)
        )
        for name in ("r_on_grid", "n_grid", "v_read_grid"):
            grid = getattr(self, name)
            if not grid:
                raise ValueError(f"{name} must be non-empty")
            if any(b <= a for a, b in zip(grid, grid[1:])):
                raise ValueError(f"{name} must be sorted strictly ascending")
        if not self.toggles:
            raise ValueError("toggles must contain at least one combination")
        if self.engine not in ENGINES:
            raise ValueError(f"engine must be one of {ENGINES}, got {self.engine!r}")


@dataclass(frozen=True)
class MarginCurve:
    """Ordered (x, y) samples with the full sense result behind each point.

    y_kind is "margin" for normalized-margin curves (values in (0, 1])
    and "delta" for margin-difference curves, which may touch zero.
    """

    label: str
    x: tuple[float, ...]
    y: tuple[float, ...]
    results: tuple[SenseResult, ...]
    meta: dict[str, Any] = field(default_factory=dict)
    y_kind: str = "margin"

    def __post_init__(self) -> None:
        if len(self.x) != len(self.y) or len(self.x) != len(self.results):
            raise ValueError("x, y and results must have equal length")
        if not self.x:
            raise ValueError("curve must contain at least one point")
        if any(b <= a for a, b in zip(self.x, self.x[1:])):
            raise ValueError("x values must be strictly increasing")
        if self.y_kind not in ("margin", "delta"):
            raise ValueError(f'y_kind must be "margin" or "delta", got {self.y_kind!r}')
        if self.y_kind == "margin":
            for v in self.y:
                if not (0.0 < v <= 1.0 + 1e-12):
                    raise ValueError(f"margin values must lie in (0, 1], got {v}")


def sweep_grid(spec: SweepSpec, profile: TechnologyProfile) -> list[MarginCurve]:
    """One margin-versus-r_on curve per (toggles, v_read, n) slice.

    Slices iterate in that nesting order, so the output ordering is
    deterministic for a given spec.  A point failure (for example a read
    voltage outside the leakage table) drops the affected slice; the
    sweep itself fails, re-raising the first error, only when no slice
    survives.
    """
    curves = []
    errors: list[Exception] = []
    for toggles in spec.toggles:
        for v_read in spec.v_read_grid:
            for n in spec.n_grid:
                setup = ReadSetup.from_toggles(v_read, n, toggles)
                results = []
                for r_on in spec.r_on_grid:
                    cell = CellSpec(r_on=r_on, ratio_ideal=spec.ratio_ideal)
                    try:
                        results.append(_evaluate(profile, cell, setup, spec.engine))
                    except Exception as exc:
                        errors.append(exc)
                        results = None
                        break
                if results is None:
                    continue
                curves.append(
                    MarginCurve(
                        label=f"{toggles.describe()}, V={v_read:g}V, n={n}",
                        x=spec.r_on_grid,
                        y=tuple(r.margin_normalized for r in results),
                        results=tuple(results),
                        meta={
                            "n_cells": n,
                            "v_read": v_read,
                            "toggles": toggles,
                            "ratio_ideal": spec.ratio_ideal,
                            "engine": spec.engine,
                        },
                    )
                )
    if not curves and errors:
        raise errors[0]
    return curves


def ablation_series(
    profile: TechnologyProfile,
    cell: CellSpec,
    setup: ReadSetup,
    r_on_grid: tuple[float, ...] = DEFAULT_R_ON_GRID,
) -> list[tuple[str, MarginCurve]]:
    """Baseline margin curve plus one curve per removed non-ideality.

    The setup must have every factor enabled; each variant then switches
    a single factor off, showing which non-ideality owns which flank of
    the margin curve.  The swept resistance replaces cell.r_on point by
    point; cell.ratio_ideal is kept.
    """
    if not (
        setup.include_line_resistance
        and setup.include_transistor_resistance
        and setup.include_leakage
    ):
        raise ValueError("ablation baseline requires all factors enabled")
    variants = [
        ("baseline", setup),
        ("-R_T", replace(setup, include_transistor_resistance=False)),
        ("-r", replace(setup, include_line_resistance=False)),
        ("-I_Tleak", replace(setup, include_leakage=False)),
    ]
    series = []
    for label, variant in variants:
        results = tuple(
            read_currents(profile, replace(cell, r_on=r_on), variant)
            for r_on in r_on_grid
        )
        curve = MarginCurve(
            label=label,
            x=tuple(r_on_grid),
            y=tuple(r.margin_normalized for r in results),
            results=results,
            meta={
                "n_cells": setup.n_cells,
                "v_read": setup.v_read,
                "toggles": variant.toggles,
                "ratio_ideal": cell.ratio_ideal,
                "removed": label if label != "baseline" else "",
            },
        )
        series.append((label, curve))
    return series


def _margin_at(
    profile: TechnologyProfile, r_on: float, ratio_ideal: float, setup: ReadSetup
) -> float:
    cell = CellSpec(r_on=r_on, ratio_ideal=ratio_ideal)
    return read_currents(profile, cell, setup).margin_normalized


def _check_quasi_concave(
    grid: tuple[float, ...], margins: list[float]
) -> None:
    # Classify each step with a small relative tolerance so float noise on
    # a plateau is not mistaken for a second mode.
    tol = 1e-12
    seen_drop = False
    for a, b in zip(margins, margins[1:]):
        if b > a * (1.0 + tol):
            if seen_drop:
                maxima = [
                    grid[i]
                    for i in range(1, len(margins) - 1)
                    if margins[i] > margins[i - 1] and margins[i] >= margins[i + 1]
                ]
                raise NonUnimodalError(
                    "margin vs r_on is not quasi-concave; local maxima near "
                    + ", ".join(f"{r:.4g} ohm" for r in maxima)
                )
        elif b < a * (1.0 - tol):
            seen_drop = True


def find_optimal_range(
    profile: TechnologyProfile,
    ratio_ideal: float,
    n_cells: int,
    v_read: float,
    threshold: float,
    r_on_grid: tuple[float, ...] = DEFAULT_R_ON_GRID,
) -> tuple[float, float] | None:
    """Maximal contiguous r_on interval whose margin stays at or above threshold.

    A dense pre-sweep over r_on_grid verifies the curve is quasi-concave
    (single peak); each flank crossing is then located by bisection in
    log space to 1 % relative resolution.  The returned endpoints lie on
    the inside of their brackets, so the margin at both endpoints is at
    or above the threshold.  Returns None when even the peak falls short.
    An interval clipped by the grid edge is returned as-is.
    """
    if not (0.0 < threshold < 1.0):
        raise ValueError(f"threshold must lie in (0, 1), got {threshold}")
    setup = ReadSetup(v_read=v_read, n_cells=n_cells)
    margins = [_margin_at(profile, r, ratio_ideal, setup) for r in r_on_grid]
    _check_quasi_concave(r_on_grid, margins)
    if max(margins) < threshold:
        return None

    above = [m >= threshold for m in margins]
    first = above.index(True)
    last = len(above) - 1 - above[::-1].index(True)

    def margin(r: float) -> float:
        return _margin_at(profile, r, ratio_ideal, setup)

    def bisect_flank(lo: float, hi: float, rising: bool) -> float:
        # Invariant: the threshold crossing stays inside (lo, hi); on a
        # rising flank hi is above threshold, on a falling flank lo is.
        while hi / lo > 1.01:
            mid = math.sqrt(lo * hi)
            if (margin(mid) >= threshold) == rising:
                hi = mid
            else:
                lo = mid
        return hi if rising else lo

    if first == 0:
        r_low = r_on_grid[0]
    else:
        r_low = bisect_flank(r_on_grid[first - 1], r_on_grid[first], rising=True)
    if last == len(r_on_grid) - 1:
        r_high = r_on_grid[-1]
    else:
        r_high = bisect_flank(r_on_grid[last], r_on_grid[last + 1], rising=False)
    return r_low, r_high


def argmax_resistance(
    profile: TechnologyProfile,
    ratio_ideal: float,
    n_cells: int,
    v_read: float,
    r_on_grid: tuple[float, ...],
) -> float:
    """Grid resistance with the highest margin; ties go to the lower value.

    The tie rule favors read speed and is fixed so results are reproducible.
    """
    if not r_on_grid:
        raise ValueError("r_on_grid must be non-empty")
    setup = ReadSetup(v_read=v_read, n_cells=n_cells)
    best_r = r_on_grid[0]
    best_m = _margin_at(profile, best_r, ratio_ideal, setup)
    for r in r_on_grid[1:]:
        m = _margin_at(profile, r, ratio_ideal, setup)
        if m > best_m:
            best_r, best_m = r, m
    return best_r


def compensation_curve(
    profile: TechnologyProfile,
    ratio_ideal: float,
    n_cells: int,
    v_base: float,
    v_alt: float,
    r_on_grid: tuple[float, ...] = DEFAULT_R_ON_GRID,
    toggles: FactorToggles = FactorToggles.all_on(),
) -> MarginCurve:
    """Margin improvement from raising the read voltage, per r_on point.

    Leakage is re-evaluated at each voltage from the profile table, so the
    gain reflects both the stronger read current and the higher leakage.
    Without the leakage factor the margin is voltage-independent and the
    gain is identically zero.  The attached sense results are those at
    the raised voltage.
    """
    curve_y = []
    results_alt = []
    for r_on in r_on_grid:
        cell = CellSpec(r_on=r_on, ratio_ideal=ratio_ideal)
        base = read_currents(
            profile, cell, ReadSetup.from_toggles(v_base, n_cells, toggles)
        )
        alt = read_currents(
            profile, cell, ReadSetup.from_toggles(v_alt, n_cells, toggles)
        )
        curve_y.append(alt.margin_normalized - base.margin_normalized)
        results_alt.append(alt)
    return MarginCurve(
        label=f"margin gain {v_base:g}V->{v_alt:g}V",
        x=tuple(r_on_grid),
        y=tuple(curve_y),
        results=tuple(results_alt),
        meta={
            "n_cells": n_cells,
            "v_base": v_base,
            "v_alt": v_alt,
            "ratio_ideal": ratio_ideal,
        },
        y_kind="delta",
    )


def read_power_ratio(v_alt: float, v_base: float) -> float:
    """Read-power ratio of two read voltages under an ohmic cell, (v_alt/v_base)^2."""
    if v_alt <= 0 or v_base <= 0:
        raise ValueError("read voltages must be > 0")
    return (v_alt / v_base) ** 2
