"""Generator degrees in product grading, index-positivity checks and the
dimension arithmetic for broken Floer curves.

Product degree is mu_CZ - n, which makes the pair-of-pants product degree
preserving.  Action is normalized so that one full Reeb period has action 1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import ExponentTuple
from .errors import CoverageError, ValidationError
from .strata import Stratum, stratum_at

MORSE_BOTT_CONVENTION = "Morse-Bott minimum convention"


@dataclass(frozen=True, order=True)
class Generator:
    action: Fraction
    product_degree: int
    stratum_L: int
    morse_index: int
    cz_degree: int = field(compare=False)
    multiplicity: int = field(default=1, compare=False)

    def as_dict(self) -> dict:
        return {
            "stratum_L": self.stratum_L,
            "morse_index": self.morse_index,
            "multiplicity": self.multiplicity,
            "product_degree": self.product_degree,
            "cz_degree": self.cz_degree,
            "action": str(self.action),
        }


@dataclass(frozen=True)
class GeneratorTable:
    t: ExponentTuple
    generators: tuple[Generator, ...]
    degree_window: tuple[int, int] | None
    max_L: int

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def degree_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for g in self.generators:
            counts[g.product_degree] = counts.get(g.product_degree, 0) + g.multiplicity
        return dict(sorted(counts.items()))

    def as_dict(self) -> dict:
        return {
            "exponents": list(self.t.a),
            "degree_window": list(self.degree_window) if self.degree_window else None,
            "max_L": self.max_L,
            "generators": [g.as_dict() for g in self.generators],
        }


def base_degree(t: ExponentTuple, s: Stratum) -> int:
    """Product degree of the Morse index 0 generator on ``s``."""
    if s.L == 0:
        return -(2 * t.n - 1)
    return s.mu_rs - (s.dim - 1) // 2 - t.n


def stratum_generators(t: ExponentTuple, s: Stratum) -> list[Generator]:
    if s.betti is None:
        raise ValidationError(f"stratum at L={s.L} has no Betti data")
    base = base_degree(t, s)
    action = Fraction(s.L, t.L_P)
    return [
        Generator(action, base + ind, s.L, ind, base + ind + t.n, b)
        for ind, b in enumerate(s.betti)
        if b
    ]


def _degree_range(t: ExponentTuple, L: int) -> tuple[int, int] | None:
    s = stratum_at(t, L)
    if s is None:
        return None
    lo = base_degree(t, s)
    return lo, lo + s.dim


def _check_coverage(t: ExponentTuple, max_L: int, lo: int, hi: int) -> None:
    # past max_L the stratum degrees move monotonically by mu_P per period,
    # so the next full period bounds everything left out
    ranges = [r for L in range(max_L + 1, max_L + t.L_P + 1) if (r := _degree_range(t, L))]
    if t.mu_P > 0:
        missing = min(r[0] for r in ranges) <= hi
    else:
        missing = max(r[1] for r in ranges) >= lo
    if missing:
        raise CoverageError(
            f"strata up to L={max_L} do not cover degree window [{lo}, {hi}] "
            f"for {list(t.a)}; enumerate more periods"
        )


def covering_max_L(t: ExponentTuple, lo: int, hi: int) -> int:
    """Smallest whole number of periods (as max L) whose strata cover [lo, hi]."""
    if t.mu_P == 0:
        raise CoverageError("needs-finite-period-window: mu_P = 0")
    periods = 1
    while True:
        max_L = periods * t.L_P - 1
        try:
            _check_coverage(t, max_L, lo, hi)
            return max_L
        except CoverageError:
            periods += 1


def generator_table(
    t: ExponentTuple,
    strata: Sequence[Stratum],
    degree_window: tuple[int, int] | None = None,
    *,
    max_L: int | None = None,
) -> GeneratorTable:
    """Chain generators of the given strata, optionally restricted to a degree window.

    With a degree window the strata must reach far enough (``max_L``, default the
    largest L supplied) that no omitted stratum has a generator in the window.
    For mu_P = 0 every degree recurs in every period, so only period windows
    (``degree_window=None``) make sense.
    """
    if max_L is None:
        max_L = max((s.L for s in strata), default=0)
    if degree_window is not None:
        lo, hi = degree_window
        if lo > hi:
            raise ValidationError(f"empty degree window [{lo}, {hi}]")
        if t.mu_P == 0:
            raise CoverageError(
                "needs-finite-period-window: mu_P = 0, every degree occurs in every "
                "period; request a range of L instead of a degree window"
            )
        _check_coverage(t, max_L, lo, hi)
    gens = []
    for s in strata:
        for g in stratum_generators(t, s):
            if degree_window is None or degree_window[0] <= g.product_degree <= degree_window[1]:
                gens.append(g)
    gens.sort()
    return GeneratorTable(t, tuple(gens), tuple(degree_window) if degree_window else None, max_L)


def s_class(t: ExponentTuple) -> Generator:
    """The principal orbit class s: the maximum on the stratum at L = L_P."""
    s = stratum_at(t, t.L_P)
    top = s.dim
    degree = base_degree(t, s) + top
    return Generator(Fraction(1), degree, t.L_P, top, degree + t.n)


class IndexClass(str, enum.Enum):
    PRODUCT_INDEX_POSITIVE = "ProductIndexPositive"
    INDEX_POSITIVE_STRONG = "IndexPositiveStrong"
    INDEX_POSITIVE_WITH_FILLING = "IndexPositiveWithFilling"
    NOT_INDEX_POSITIVE = "NotIndexPositive"
    FAILS_FOR_LARGE_L = "FailsForLargeL"


class TheoremCase(str, enum.Enum):
    LAURENT = "SummaryTheoremLaurent"
    LAURENT_SERIES = "SummaryTheoremLaurentSeries"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class IndexReport:
    exponents: tuple[int, ...]
    classification: IndexClass
    witness_L: int
    witness_cz: int
    theorem_case: TheoremCase
    filling_assumed: bool
    convention: str = MORSE_BOTT_CONVENTION

    @property
    def index_positive(self) -> bool:
        return self.classification in (
            IndexClass.PRODUCT_INDEX_POSITIVE,
            IndexClass.INDEX_POSITIVE_STRONG,
            IndexClass.INDEX_POSITIVE_WITH_FILLING,
        )

    def as_dict(self) -> dict:
        return {
            "exponents": list(self.exponents),
            "classification": self.classification.value,
            "min_cz_witness": {"L": self.witness_L, "value": self.witness_cz},
            "theorem_case": self.theorem_case.value,
            "filling_assumed": self.filling_assumed,
            "convention": self.convention,
        }


def check_index_positivity(
    t: ExponentTuple, strata: Sequence[Stratum] | None = None, filling_assumed: bool = False
) -> IndexReport:
    """Classify ``t`` by the lowest CZ degree over one Reeb period.

    Strata default to 1 <= L <= L_P.  Since min CZ moves by mu_P per period,
    the one-period minimum is global when mu_P >= 0; for mu_P < 0 it drifts
    to -infinity.  Equality with a threshold counts as failure.
    """
    if strata is None:
        strata = [s for L in range(1, t.L_P + 1) if (s := stratum_at(t, L))]
    period = [s for s in strata if 1 <= s.L <= t.L_P]
    if not period:
        raise ValidationError("no strata with 1 <= L <= L_P supplied")
    witness = min(period, key=lambda s: (s.min_cz, s.L))
    m, n = witness.min_cz, t.n

    if t.mu_P < 0:
        cls = IndexClass.FAILS_FOR_LARGE_L
    elif m > 3:
        cls = IndexClass.PRODUCT_INDEX_POSITIVE
    elif m > 4 - n:
        cls = IndexClass.INDEX_POSITIVE_STRONG
    elif filling_assumed and m > 3 - n:
        cls = IndexClass.INDEX_POSITIVE_WITH_FILLING
    else:
        cls = IndexClass.NOT_INDEX_POSITIVE

    case = TheoremCase.NOT_APPLICABLE
    if t.mu_P > 0:
        if cls is IndexClass.PRODUCT_INDEX_POSITIVE or (filling_assumed and m > 3 - n):
            case = TheoremCase.LAURENT
    elif t.mu_P == 0 and cls is IndexClass.PRODUCT_INDEX_POSITIVE:
        case = TheoremCase.LAURENT_SERIES
    return IndexReport(t.a, cls, witness.L, m, case, filling_assumed)


def virtual_dimension(
    gamma_plus: Sequence[int], gamma_minus: Sequence[int], reeb_cz: Sequence[int], n: int
) -> int:
    """Virtual dimension of Floer curves with Hamiltonian punctures gamma_plus,
    gamma_minus and contractible Reeb asymptotics reeb_cz (all given by CZ index)."""
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    return (
        sum(gamma_plus)
        - sum(gamma_minus)
        + n * (2 - len(gamma_plus) - len(gamma_minus))
        - sum(c + n - 3 for c in reeb_cz)
    )


def breaking_excluded(mu1: int, mu2: int, min_reeb_cz: int) -> bool:
    """Whether the pair-of-pants breaking with a Reeb orbit is ruled out by index."""
    return min_reeb_cz > max(3 - abs(mu1), 3 - abs(mu2))
