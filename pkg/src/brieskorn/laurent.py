"""Periodic graded dimensions of the chain complex viewed as a module over
Z2[s, s^-1], and the homology tables that follow when differentials vanish.

The fundamental action window is [0, 1): the constant stratum plus the strata
with 1 <= L <= L_P - 1.  The principal stratum at L = L_P is s times the
constants, so it belongs to the next period.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import ExponentTuple
from .errors import CoverageError, DifferentialUnknownError, ModeError, ValidationError
from .grading import Generator, GeneratorTable, generator_table
from .strata import BettiTable, Stratum, enumerate_strata


class ModuleMode(str, enum.Enum):
    LAURENT_MODULE = "LaurentModule"
    LAURENT_SERIES = "LaurentSeriesVectorSpace"


@dataclass(frozen=True)
class PeriodicGradedDims:
    period_degrees: tuple[int, ...]
    mu_P: int

    def __post_init__(self):
        object.__setattr__(self, "period_degrees", tuple(sorted(self.period_degrees)))

    @property
    def rank(self) -> int:
        return len(self.period_degrees)

    @property
    def mode(self) -> ModuleMode:
        return ModuleMode.LAURENT_SERIES if self.mu_P == 0 else ModuleMode.LAURENT_MODULE

    @property
    def span(self) -> int:
        if not self.period_degrees:
            return 0
        return self.period_degrees[-1] - self.period_degrees[0]

    def residue_counts(self) -> dict[int, int]:
        """Rank per residue class of degree mod |mu_P|."""
        if self.mu_P == 0:
            raise ModeError("residues undefined for mu_P = 0")
        return dict(sorted(Counter(d % abs(self.mu_P) for d in self.period_degrees).items()))

    def as_dict(self) -> dict:
        return {
            "period_degrees": list(self.period_degrees),
            "mu_P": self.mu_P,
            "rank": self.rank,
            "mode": self.mode.value,
        }


def period_module(
    t: ExponentTuple, strata: Sequence[Stratum] | None = None, betti: BettiTable | None = None
) -> PeriodicGradedDims:
    """Degrees of the generators with action in [0, 1)."""
    if strata is None:
        strata = enumerate_strata(t, t.L_P - 1, betti if betti is not None else BettiTable.default())
    period = [s for s in strata if 0 <= s.L < t.L_P]
    if not any(s.L == 0 for s in period):
        raise ValidationError("period module needs the constant stratum L = 0")
    table = generator_table(t, period)
    degrees = []
    for g in table:
        degrees.extend([g.product_degree] * g.multiplicity)
    return PeriodicGradedDims(tuple(degrees), t.mu_P)


def _window(lo: int, hi: int) -> range:
    if lo > hi:
        raise ValidationError(f"empty degree window [{lo}, {hi}]")
    return range(lo, hi + 1)


def _require_finite(m: PeriodicGradedDims) -> None:
    if m.mu_P == 0 and m.period_degrees:
        raise ModeError(
            "mu_P = 0: every period contributes to the same degrees, so per-degree "
            "dimensions are infinite over Z2; the module is a vector space over the "
            "Laurent series field Z2[s][[s^-1]] of rank "
            f"{m.rank}"
        )


def dims_in_window(
    m: PeriodicGradedDims, lo: int, hi: int, generators: Sequence[int] | None = None
) -> dict[int, int]:
    """Z2-dimension in each degree d of [lo, hi] of the free module on ``generators``
    (default: the period degrees), i.e. #{(e, k): e + k mu_P = d}."""
    _require_finite(m)
    gens = m.period_degrees if generators is None else tuple(generators)
    out = {}
    for d in _window(lo, hi):
        out[d] = sum(1 for e in gens if (d - e) % m.mu_P == 0) if m.mu_P else 0
    return out


def _check_generators(m: PeriodicGradedDims, generators: Sequence[int]) -> tuple[int, ...]:
    gens = tuple(generators)
    if m.mu_P == 0:
        return gens
    if Counter(g % m.mu_P for g in gens) != Counter(e % m.mu_P for e in m.period_degrees):
        raise ValidationError(
            "alternative module generators must match the period degrees up to s-shifts"
        )
    return gens


def positive_part(
    m: PeriodicGradedDims, lo: int, hi: int, generators: Sequence[int] | None = None
) -> dict[int, int]:
    """Dimensions of the Z2[s]-span of the module generators: only s^k with k >= 0.

    By default the generators are the period degrees.  ``generators`` lets the
    caller pick other basis representatives (each an s-shift of a period
    degree), which changes the answer.
    """
    _require_finite(m)
    gens = m.period_degrees if generators is None else _check_generators(m, generators)
    out = {}
    for d in _window(lo, hi):
        out[d] = sum(1 for e in gens if (d - e) % m.mu_P == 0 and (d - e) // m.mu_P >= 0)
    return out


class DiffStatus(str, enum.Enum):
    PROVEN = "VanishingProven"
    UNKNOWN = "Unknown"
    OVERRIDE = "VanishingByOverride"


@dataclass(frozen=True)
class DifferentialStatus:
    status: DiffStatus
    witnesses: tuple[tuple[Generator, Generator], ...] = ()
    periods_scanned: int = 0
    provenance: str | None = None

    def as_dict(self) -> dict:
        return {
            "status": self.status.value,
            "periods_scanned": self.periods_scanned,
            "provenance": self.provenance,
            "witness_count": len(self.witnesses),
            "witnesses": [
                {"from": x.as_dict(), "to": y.as_dict()} for x, y in self.witnesses
            ],
        }


def periods_needed(m: PeriodicGradedDims) -> int:
    if m.mu_P == 0:
        return 2
    return math.ceil((m.span + 1) / abs(m.mu_P)) + 1


def detect_vanishing_differential(
    t: ExponentTuple,
    table: GeneratorTable | None = None,
    override: str | None = None,
    *,
    betti: BettiTable | None = None,
) -> DifferentialStatus:
    """Look for generator pairs a differential could connect.

    A differential lowers action strictly and lowers product degree by one.
    By periodicity it suffices to take the lower end y in the first period and
    the upper end x in the next few periods.  No candidate pair means every
    differential vanishes for degree and action reasons.  ``override`` names an
    external computation establishing vanishing anyway.
    """
    if table is None:
        betti = betti if betti is not None else BettiTable.default()
        m = period_module(t, betti=betti)
        B = periods_needed(m)
        table = generator_table(t, enumerate_strata(t, B * t.L_P - 1, betti))
    else:
        if table.degree_window is not None:
            raise CoverageError("detector needs a period-window generator table")
        m = PeriodicGradedDims(
            tuple(
                g.product_degree
                for g in table
                if g.stratum_L < t.L_P
                for _ in range(g.multiplicity)
            ),
            t.mu_P,
        )
        B = periods_needed(m)
        if table.max_L < B * t.L_P - 1:
            raise CoverageError(
                f"generator table reaches L={table.max_L}; detector needs {B} periods "
                f"(L up to {B * t.L_P - 1})"
            )
    limit = B * t.L_P
    pool = [g for g in table if g.stratum_L < limit]
    by_degree: dict[int, list[Generator]] = {}
    for g in pool:
        by_degree.setdefault(g.product_degree, []).append(g)
    witnesses = []
    for y in pool:
        if y.stratum_L >= t.L_P:
            continue
        for x in by_degree.get(y.product_degree + 1, ()):
            if x.action > y.action and x.stratum_L != y.stratum_L:
                witnesses.append((x, y))
    witnesses.sort(key=lambda p: (p[1], p[0]))
    if not witnesses:
        return DifferentialStatus(DiffStatus.PROVEN, (), B, None)
    if override:
        return DifferentialStatus(DiffStatus.OVERRIDE, tuple(witnesses), B, override)
    return DifferentialStatus(DiffStatus.UNKNOWN, tuple(witnesses), B, None)


@dataclass(frozen=True)
class HomologyTable:
    dims: dict[int, int]
    status: DiffStatus
    provenance: str | None = None
    notes: tuple[str, ...] = field(default=())

    def as_dict(self) -> dict:
        return {
            "status": self.status.value,
            "provenance": self.provenance,
            "notes": list(self.notes),
            "dims": {str(d): v for d, v in self.dims.items()},
        }


def homology_table(
    m: PeriodicGradedDims, status: DifferentialStatus, lo: int, hi: int
) -> HomologyTable:
    """Homology dimensions, available only once the differential is known to vanish."""
    if status.status is DiffStatus.UNKNOWN:
        raise DifferentialUnknownError(status.witnesses)
    return HomologyTable(dims_in_window(m, lo, hi), status.status, status.provenance)


def merge_windows(parts: Iterable[dict[int, int]]) -> dict[int, int]:
    merged: dict[int, int] = {}
    for part in parts:
        for d, v in part.items():
            if merged.setdefault(d, v) != v:
                raise ValueError(f"conflicting values at degree {d}")
    return dict(sorted(merged.items()))


def residue_pattern(dims: dict[int, int], period: int) -> dict[int, int]:
    """Collapse a window of dimensions to one value per residue mod ``period``,
    failing if the window is not periodic."""
    out: dict[int, int] = {}
    for d, v in dims.items():
        r = d % period
        if out.setdefault(r, v) != v:
            raise ValueError(f"dimensions not periodic mod {period} at degree {d}")
    return dict(sorted(out.items()))


def degrees_with(dims: dict[int, int], value: int) -> list[int]:
    return sorted(d for d, v in dims.items() if v == value)
