"""Closed-form sensing model for one column of a 1T1R crossbar array.

A column of n cells is read one cell at a time: the selected cell's access
transistor is on, contributing its read resistance in series with the
memristor, while the n-1 unselected transistors each leak a small
subthreshold current into the sense path.  The bit/source lines add one
unit of metal resistance per cell along the worst-case drive-to-sense
path.  The sensed on/off current ratio therefore degrades from the
fabricated ratio k = R_off / R_on to an effective ratio

    k' = I_on / I_off,
    I_state = V_read / (R_state + R_T + n*r) + (n-1) * I_Tleak,

and k'/k is the normalized sensing margin (1.0 means no degradation).

The model always evaluates the worst-case cell: the one whose read path
crosses the full n*r line resistance while all other cells leak.  Each
non-ideality (line resistance r, transistor resistance R_T, transistor
leakage I_Tleak) can be switched off individually for ablation studies.

Leakage is a measured function of read voltage, carried as a table on the
technology profile; lookups interpolate linearly between measured points
and refuse to extrapolate.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass


class LeakageRangeError(ValueError):
    """Requested read voltage lies outside the measured leakage table."""


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class TechnologyProfile:
    """Electrical constants of one fabrication node.

    r_unit is the metal line resistance between two adjacent cells (ohm),
    r_transistor the access transistor resistance with its gate on (ohm),
    and leakage_table the measured off-transistor leakage current versus
    read voltage as (volt, ampere) pairs sorted by voltage.
    """

    node_label: str
    r_unit: float
    r_transistor: float
    leakage_table: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        _require_finite("r_unit", self.r_unit)
        _require_finite("r_transistor", self.r_transistor)
        if self.r_unit < 0:
            raise ValueError(f"r_unit must be >= 0, got {self.r_unit}")
        if self.r_transistor < 0:
            raise ValueError(f"r_transistor must be >= 0, got {self.r_transistor}")
        table = tuple((float(v), float(i)) for v, i in self.leakage_table)
        object.__setattr__(self, "leakage_table", table)
        if not table:
            raise ValueError("leakage_table must contain at least one (v, i) point")
        for v, i in table:
            _require_finite("leakage_table voltage", v)
            _require_finite("leakage_table current", i)
            if i < 0:
                raise ValueError(f"leakage current must be >= 0, got {i}")
        voltages = [v for v, _ in table]
        if any(b <= a for a, b in zip(voltages, voltages[1:])):
            raise ValueError("leakage_table voltages must be strictly increasing")
        currents = [i for _, i in table]
        if any(b < a for a, b in zip(currents, currents[1:])):
            raise ValueError("leakage_table currents must be non-decreasing in voltage")

    @property
    def v_read_min(self) -> float:
        return self.leakage_table[0][0]

    @property
    def v_read_max(self) -> float:
        return self.leakage_table[-1][0]


@dataclass(frozen=True)
class CellSpec:
    """One memristor state pair: on-state resistance and fabricated on/off ratio.

    The off-state resistance is derived, r_off = ratio_ideal * r_on; there
    is deliberately no independent r_off input.
    """

    r_on: float
    ratio_ideal: float

    def __post_init__(self) -> None:
        _require_finite("r_on", self.r_on)
        _require_finite("ratio_ideal", self.ratio_ideal)
        if self.r_on <= 0:
            raise ValueError(f"r_on must be > 0, got {self.r_on}")
        if self.ratio_ideal < 1:
            raise ValueError(f"ratio_ideal must be >= 1, got {self.ratio_ideal}")

    @property
    def r_off(self) -> float:
        return self.ratio_ideal * self.r_on


@dataclass(frozen=True)
class FactorToggles:
    """Which non-idealities participate in a margin evaluation."""

    line_resistance: bool = True
    transistor_resistance: bool = True
    leakage: bool = True

    @classmethod
    def all_on(cls) -> "FactorToggles":
        return cls(True, True, True)

    @classmethod
    def all_off(cls) -> "FactorToggles":
        return cls(False, False, False)

    def describe(self) -> str:
        """Short deterministic label, e.g. ``r+R_T+I_Tleak`` or ``ideal``."""
        parts = []
        if self.line_resistance:
            parts.append("r")
        if self.transistor_resistance:
            parts.append("R_T")
        if self.leakage:
            parts.append("I_Tleak")
        return "+".join(parts) if parts else "ideal"


@dataclass(frozen=True)
class ReadSetup:
    """Read condition: voltage, column length, and non-ideality switches."""

    v_read: float
    n_cells: int
    include_line_resistance: bool = True
    include_transistor_resistance: bool = True
    include_leakage: bool = True

    def __post_init__(self) -> None:
        _require_finite("v_read", self.v_read)
        if self.v_read <= 0:
            raise ValueError(f"v_read must be > 0, got {self.v_read}")
        if not isinstance(self.n_cells, int) or isinstance(self.n_cells, bool):
            raise ValueError(f"n_cells must be an integer, got {self.n_cells!r}")
        if self.n_cells < 1:
            raise ValueError(f"n_cells must be >= 1, got {self.n_cells}")

    @classmethod
    def from_toggles(
        cls, v_read: float, n_cells: int, toggles: FactorToggles
    ) -> "ReadSetup":
        return cls(
            v_read=v_read,
            n_cells=n_cells,
            include_line_resistance=toggles.line_resistance,
            include_transistor_resistance=toggles.transistor_resistance,
            include_leakage=toggles.leakage,
        )

    @property
    def toggles(self) -> FactorToggles:
        return FactorToggles(
            line_resistance=self.include_line_resistance,
            transistor_resistance=self.include_transistor_resistance,
            leakage=self.include_leakage,
        )


@dataclass(frozen=True)
class SenseResult:
    """Currents and ratios seen by the sense circuit for one read condition."""

    i_on: float
    i_off: float
    ratio_effective: float
    margin_normalized: float

    def __post_init__(self) -> None:
        if not (self.i_off > 0):
            raise ValueError(f"i_off must be > 0, got {self.i_off}")
        if self.i_on < self.i_off:
            raise ValueError(
                f"i_on must be >= i_off, got i_on={self.i_on}, i_off={self.i_off}"
            )
        if self.ratio_effective < 1.0:
            raise ValueError(
                f"ratio_effective must be >= 1, got {self.ratio_effective}"
            )
        # 1e-9 slack guards against spurious rejections from float rounding;
        # physically the margin never exceeds 1.
        if not (0.0 < self.margin_normalized <= 1.0 + 1e-9):
            raise ValueError(
                f"margin_normalized must lie in (0, 1], got {self.margin_normalized}"
            )


def ideal_ratio(cell: CellSpec) -> float:
    """On/off ratio with every non-ideality absent.

    Because r_off is defined as ratio_ideal * r_on, the quotient
    r_off / r_on is ratio_ideal by construction; returning it directly is
    the exact value, free of division round-off.
    """
    return cell.ratio_ideal


def leakage_at(profile: TechnologyProfile, v_read: float) -> float:
    """Off-transistor leakage current at the given read voltage.

    Exact table value on a measured point, linear interpolation between
    adjacent points otherwise.  Voltages outside the measured interval
    raise LeakageRangeError; extrapolated leakage would not be defensible.
    """
    table = profile.leakage_table
    lo, hi = profile.v_read_min, profile.v_read_max
    if not (lo <= v_read <= hi):
        raise LeakageRangeError(
            f"read voltage {v_read:g} V outside leakage table range "
            f"[{lo:g} V, {hi:g} V] of profile {profile.node_label!r}"
        )
    voltages = [v for v, _ in table]
    pos = bisect_left(voltages, v_read)
    if pos < len(voltages) and voltages[pos] == v_read:
        return table[pos][1]
    v0, i0 = table[pos - 1]
    v1, i1 = table[pos]
    frac = (v_read - v0) / (v1 - v0)
    return i0 + frac * (i1 - i0)


def read_currents(
    profile: TechnologyProfile, cell: CellSpec, setup: ReadSetup
) -> SenseResult:
    """Worst-case sensed currents and effective ratio for one read condition.

    I_on and I_off share the series term R_T + n*r and the accumulated
    leakage (n-1)*I_Tleak; toggled-off factors contribute zero.  When the
    leakage term is zero the on/off ratio reduces algebraically to a
    quotient of series resistances, which is evaluated directly: it is
    better conditioned than the current quotient and makes the
    no-non-ideality case return the ideal ratio exactly.
    """
    r_line = profile.r_unit if setup.include_line_resistance else 0.0
    r_t = profile.r_transistor if setup.include_transistor_resistance else 0.0
    i_leak = leakage_at(profile, setup.v_read) if setup.include_leakage else 0.0

    series = r_t + setup.n_cells * r_line
    leak_total = (setup.n_cells - 1) * i_leak
    i_on = setup.v_read / (cell.r_on + series) + leak_total
    i_off = setup.v_read / (cell.r_off + series) + leak_total

    if leak_total == 0.0:
        if series == 0.0:
            ratio = cell.ratio_ideal
        else:
            ratio = (cell.r_off + series) / (cell.r_on + series)
    else:
        ratio = i_on / i_off
    margin = ratio / cell.ratio_ideal
    return SenseResult(
        i_on=i_on, i_off=i_off, ratio_effective=ratio, margin_normalized=margin
    )


def effective_ratio(
    profile: TechnologyProfile, cell: CellSpec, setup: ReadSetup
) -> float:
    """On/off current ratio actually seen by the sense circuit."""
    return read_currents(profile, cell, setup).ratio_effective
