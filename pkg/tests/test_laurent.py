import pytest
from hypothesis import given, settings, strategies as st

from brieskorn.core import ExponentTuple
from brieskorn.errors import CoverageError, DifferentialUnknownError, ModeError, ValidationError
from brieskorn.grading import generator_table
from brieskorn.laurent import (
    DiffStatus,
    ModuleMode,
    PeriodicGradedDims,
    detect_vanishing_differential,
    dims_in_window,
    homology_table,
    merge_windows,
    period_module,
    periods_needed,
    positive_part,
    residue_pattern,
)
from brieskorn.strata import BettiTable, enumerate_strata

EXTERNAL = "external: published computation"

modules = st.builds(
    PeriodicGradedDims,
    st.lists(st.integers(-12, 12), max_size=8).map(tuple),
    st.integers(-9, 9).filter(bool),
)


def laurent_product(degrees, mu, lo, hi):
    """Coefficients of (sum q^e) * (sum_k q^{k mu}) in [lo, hi], expanded by brute force."""
    coeff = {d: 0 for d in range(lo, hi + 1)}
    reach = (hi - lo + 30) // abs(mu) + 30
    for e in degrees:
        for k in range(-reach, reach + 1):
            d = e + k * mu
            if lo <= d <= hi:
                coeff[d] += 1
    return coeff


@pytest.mark.parametrize(
    "a, degrees",
    [
        ((2, 2, 2, 2), [-5, -3, -2, 0]),
        ((4, 2, 2, 2), [-5, -3, -2, -1, 0, 0, 1, 2]),
    ],
)
def test_period_module_examples(a, degrees, betti):
    m = period_module(ExponentTuple(a), betti=betti)
    assert list(m.period_degrees) == degrees
    assert m.mode is ModuleMode.LAURENT_MODULE


@pytest.mark.parametrize("ell", [1, 2, 3, 4, 5])
def test_sigma_ell_rank(ell, betti):
    assert period_module(ExponentTuple((2 * ell, 2, 2, 2)), betti=betti).rank == 4 * ell


def test_dims_examples(betti):
    m = period_module(ExponentTuple((2, 2, 2, 2)), betti=betti)
    assert set(dims_in_window(m, -6, 6).values()) == {1}
    m = period_module(ExponentTuple((4, 2, 2, 2)), betti=betti)
    assert list(dims_in_window(m, 0, 5).values()) == [2, 2, 1, 1, 1, 1]
    assert set(dims_in_window(PeriodicGradedDims((), 4), -3, 3).values()) == {0}


def test_positive_part_examples(betti):
    m = period_module(ExponentTuple((2, 2, 2, 2)), betti=betti)
    pos = positive_part(m, -8, 8)
    # degree -4 is missing: -5, -3, -2, 0 plus non-negative multiples of 4
    assert [d for d, v in pos.items() if v == 0] == [-8, -7, -6, -4]
    assert all(pos[d] == 1 for d in range(-3, 9))
    m = period_module(ExponentTuple((4, 2, 2, 2)), betti=betti)
    assert positive_part(m, -7, -7) == {-7: 0}


def test_positive_part_with_chosen_generators():
    m = PeriodicGradedDims((-5, -3, -2, 0), 4)
    pos = positive_part(m, -3, 8, generators=(0, -3, -2 + 4, -5 + 4))
    assert all(pos[d] == 1 for d in pos if d != -2)
    with pytest.raises(ValidationError):
        positive_part(m, 0, 3, generators=(0, 0, 1, 2))


@settings(max_examples=80)
@given(modules, st.integers(-20, 0), st.integers(0, 20))
def test_factorization(m, lo, hi):
    assert dims_in_window(m, lo, hi) == laurent_product(m.period_degrees, m.mu_P, lo, hi)


@settings(max_examples=80)
@given(modules, st.integers(-30, 30))
def test_shift_equivariance(m, d):
    dims = dims_in_window(m, d - abs(m.mu_P), d + abs(m.mu_P))
    assert dims[d] == dims[d + m.mu_P]


@settings(max_examples=80)
@given(modules, st.integers(-20, 20))
def test_positive_part_bounded(m, lo):
    full = dims_in_window(m, lo, lo + 20)
    pos = positive_part(m, lo, lo + 20)
    for d in full:
        assert pos[d] <= full[d]
        if m.mu_P > 0 and m.period_degrees and d >= m.period_degrees[-1]:
            assert pos[d] == full[d]


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(2, 8), min_size=2, max_size=4).map(tuple))
def test_unit_present(a):
    t = ExponentTuple(a)
    if t.mu_P == 0:
        return
    subs = {s.sub_tuple for s in enumerate_strata(t, t.L_P)}
    ones = BettiTable(user={sub: (1,) * (2 * len(sub) - 2) for sub in subs})
    m = period_module(t, betti=ones)
    assert dims_in_window(m, 0, 0)[0] >= 1
    assert positive_part(m, 0, 0)[0] >= 1


def test_zero_shift_mode_error():
    t = ExponentTuple((2, 4, 4))
    m = PeriodicGradedDims((0, -1, 1), t.mu_P)
    assert m.mode is ModuleMode.LAURENT_SERIES
    with pytest.raises(ModeError, match="Laurent series"):
        dims_in_window(m, 0, 3)
    with pytest.raises(ModeError):
        positive_part(m, 0, 3)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_detector_proves_high_dimension(n, betti):
    st_ = detect_vanishing_differential(ExponentTuple((2,) * (n + 1)), betti=betti)
    assert st_.status is DiffStatus.PROVEN and st_.witnesses == ()


def test_detector_unknown_for_n3(betti):
    t = ExponentTuple((2, 2, 2, 2))
    st_ = detect_vanishing_differential(t, betti=betti)
    assert st_.status is DiffStatus.UNKNOWN and st_.witnesses
    for x, y in st_.witnesses:
        assert x.action > y.action and x.product_degree == y.product_degree + 1
        assert x.stratum_L != y.stratum_L
    m = period_module(t, betti=betti)
    with pytest.raises(DifferentialUnknownError):
        homology_table(m, st_, -5, 5)
    forced = detect_vanishing_differential(t, override=EXTERNAL, betti=betti)
    assert forced.status is DiffStatus.OVERRIDE and forced.provenance == EXTERNAL
    hom = homology_table(m, forced, -5, 5)
    assert hom.dims == dims_in_window(m, -5, 5) and hom.provenance == EXTERNAL


def test_detector_toy(betti):
    # (2,3): only the constants and the principal stratum are nonempty
    t = ExponentTuple((2, 3))
    assert [s.L for s in enumerate_strata(t, t.L_P, betti)] == [0, 6]
    st_ = detect_vanishing_differential(t, betti=betti)
    assert st_.status is DiffStatus.PROVEN


def test_override_ignored_when_proven(betti):
    st_ = detect_vanishing_differential(ExponentTuple((2,) * 5), override=EXTERNAL, betti=betti)
    assert st_.status is DiffStatus.PROVEN


def test_detector_with_supplied_table(betti):
    t = ExponentTuple((2,) * 5)
    m = period_module(t, betti=betti)
    B = periods_needed(m)
    short = generator_table(t, enumerate_strata(t, t.L_P, betti))
    with pytest.raises(CoverageError):
        detect_vanishing_differential(t, short)
    top = B * t.L_P - 1
    full = generator_table(t, enumerate_strata(t, top, betti), max_L=top)
    assert detect_vanishing_differential(t, full).status is DiffStatus.PROVEN


def test_homology_bounded_by_chain(betti):
    for a in [(2,) * 5, (2,) * 6]:
        t = ExponentTuple(a)
        m = period_module(t, betti=betti)
        hom = homology_table(m, detect_vanishing_differential(t, betti=betti), -10, 10)
        assert hom.dims == dims_in_window(m, -10, 10)
    empty = PeriodicGradedDims((), 6)
    proven = detect_vanishing_differential(ExponentTuple((2,) * 5), betti=betti)
    assert set(homology_table(empty, proven, -3, 3).dims.values()) == {0}


@settings(max_examples=40)
@given(modules, st.integers(-15, 0), st.integers(1, 25), st.integers(1, 6))
def test_partitioned_windows_agree(m, lo, width, parts):
    hi = lo + width
    cuts = sorted({lo, hi + 1, *[lo + (i * (width + 1)) // parts for i in range(parts)]})
    pieces = [dims_in_window(m, a, b - 1) for a, b in zip(cuts, cuts[1:]) if a < b]
    assert merge_windows(pieces) == dims_in_window(m, lo, hi)


def test_residue_pattern():
    assert residue_pattern({0: 1, 1: 2, 4: 1, 5: 2}, 4) == {0: 1, 1: 2}
    with pytest.raises(ValueError):
        residue_pattern({0: 1, 4: 2}, 4)
