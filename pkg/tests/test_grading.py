from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from brieskorn.core import ExponentTuple
from brieskorn.errors import CoverageError
from brieskorn.grading import (
    IndexClass,
    TheoremCase,
    breaking_excluded,
    check_index_positivity,
    covering_max_L,
    generator_table,
    s_class,
    stratum_generators,
    virtual_dimension,
)
from brieskorn.strata import enumerate_strata, stratum_at

ints = st.integers(-20, 20)


def gens_at(t, L, betti):
    return stratum_generators(t, stratum_at(t, L, betti))


@pytest.mark.parametrize(
    "a, L, ind, degree",
    [((2, 2, 2, 2), 2, 5, 4), ((2, 2, 2, 2), 0, 5, 0), ((2, 2, 2, 2), 0, 0, -5)],
)
def test_generator_degree_examples(a, L, ind, degree, betti):
    g = {g.morse_index: g for g in gens_at(ExponentTuple(a), L, betti)}
    assert g[ind].product_degree == degree


def test_4222_at_L2(betti):
    gens = gens_at(ExponentTuple((4, 2, 2, 2)), 2, betti)
    assert sorted(g.product_degree for g in gens) == [-1, 0, 1, 2]
    assert all(g.action == Fraction(1, 2) for g in gens)


@pytest.mark.parametrize(
    "a, degree", [((2, 2, 2, 2), 4), ((6, 2, 2, 2), 8), ((2, 4, 4), 0), ((5, 2, 2), 4)]
)
def test_s_class(a, degree):
    s = s_class(ExponentTuple(a))
    assert s.product_degree == degree == ExponentTuple(a).mu_P
    assert s.action == 1 and s.morse_index == ExponentTuple(a).dim_sigma


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_all_two_degrees_match_closed_form(n, betti):
    # 1 at k = 2N(n-1) - {0, n-1, n, 2n-1}
    t = ExponentTuple((2,) * (n + 1))
    table = generator_table(t, enumerate_strata(t, 10, betti))
    expected = Counter(
        2 * N * (n - 1) - off for N in range(6) for off in (0, n - 1, n, 2 * n - 1)
    )
    assert Counter(g.product_degree for g in table) == expected


def test_table_sorted_by_action_then_degree(betti):
    t = ExponentTuple((4, 2, 2, 2))
    table = generator_table(t, enumerate_strata(t, 8, betti))
    keys = [(g.action, g.product_degree) for g in table]
    assert keys == sorted(keys)


def test_window_coverage(betti):
    t = ExponentTuple((4, 2, 2, 2))
    with pytest.raises(CoverageError):
        generator_table(t, enumerate_strata(t, 3, betti), (-6, 6))
    max_L = covering_max_L(t, -6, 6)
    table = generator_table(t, enumerate_strata(t, max_L, betti), (-6, 6))
    assert all(-6 <= g.product_degree <= 6 for g in table)
    bigger = generator_table(t, enumerate_strata(t, max_L + 12, betti), (-6, 6))
    assert table.degree_counts() == bigger.degree_counts()


def test_zero_shift_window_refused(betti):
    t = ExponentTuple((2, 4, 4))
    with pytest.raises(CoverageError, match="needs-finite-period-window"):
        generator_table(t, [], (-3, 3))
    with pytest.raises(CoverageError):
        covering_max_L(t, -3, 3)


@settings(max_examples=25, deadline=None)
@given(a=st.sampled_from([(2, 2, 2), (2, 2, 2, 2), (4, 2, 2, 2), (6, 2, 2, 2), (5, 2, 2),
                          (2, 2, 7), (8, 2, 2, 2), (2, 2, 2, 2, 2)]), data=st.data())
def test_degree_shift_identity(a, data, betti):
    t = ExponentTuple(a)
    L = data.draw(st.integers(0, 2 * t.L_P))
    s = stratum_at(t, L, betti)
    if s is None or L == 0:
        return
    here = Counter((g.product_degree, g.multiplicity) for g in stratum_generators(t, s))
    there = Counter(
        (g.product_degree - t.mu_P, g.multiplicity) for g in gens_at(t, L + t.L_P, betti)
    )
    assert here == there


def test_constants_shift_to_principal(betti):
    t = ExponentTuple((4, 2, 2, 2))
    low = sorted(g.product_degree + t.mu_P for g in gens_at(t, 0, betti))
    assert low == sorted(g.product_degree for g in gens_at(t, t.L_P, betti))


def test_cz_is_product_plus_n(betti):
    for a in [(2, 2, 2), (4, 2, 2, 2), (5, 2, 2)]:
        t = ExponentTuple(a)
        for g in generator_table(t, enumerate_strata(t, 2 * t.L_P, betti)):
            assert g.cz_degree == g.product_degree + t.n


def test_virtual_dimension_examples():
    assert virtual_dimension([7], [2], [], 3) == 5
    assert virtual_dimension([3, 4], [1], [], 5) == 3 + 4 - 1 - 5
    assert virtual_dimension([5], [4], [2], 3) == -1


@given(st.lists(ints, max_size=3), st.lists(ints, max_size=3), st.lists(ints, max_size=4),
       st.integers(1, 8))
def test_virtual_dimension_additive(plus, minus, reeb, n):
    full = virtual_dimension(plus, minus, reeb, n)
    assert full == virtual_dimension(plus, minus, [], n) - sum(c + n - 3 for c in reeb)
    if reeb:
        split = virtual_dimension(plus, minus, reeb[:1], n) + virtual_dimension([], [], reeb[1:], n)
        assert full == split - 2 * n


@pytest.mark.parametrize(
    "mu1, mu2, c, expected",
    [(5, -5, -1, True), (0, 0, 3, False), (0, 0, 4, True), (1, 7, 2, False)],
)
def test_breaking_excluded(mu1, mu2, c, expected):
    assert breaking_excluded(mu1, mu2, c) is expected


@given(st.integers(1, 30))
def test_breaking_excluded_units(n):
    assert breaking_excluded(n, n, 4)


@pytest.mark.parametrize("m", [4, 5, 6, 7])
def test_all_two_index_positive(m):
    r = check_index_positivity(ExponentTuple((2,) * m))
    n = m - 1
    assert r.index_positive
    assert (r.witness_L, r.witness_cz) == (2, n - 1)
    assert r.convention == "Morse-Bott minimum convention"


def test_n3_all_two_needs_more_than_strong():
    r = check_index_positivity(ExponentTuple((2, 2, 2, 2)))
    assert r.classification is IndexClass.INDEX_POSITIVE_STRONG
    assert r.theorem_case is TheoremCase.NOT_APPLICABLE
    r = check_index_positivity(ExponentTuple((2, 2, 2, 2)), filling_assumed=True)
    assert r.theorem_case is TheoremCase.LAURENT


@pytest.mark.parametrize("k", [2, 4, 6, 8, 10])
def test_lens_space_not_index_positive(k):
    r = check_index_positivity(ExponentTuple((k + 1, 2, 2)))
    assert r.classification is IndexClass.NOT_INDEX_POSITIVE
    assert (r.witness_L, r.witness_cz) == (2, 1)
    filled = check_index_positivity(ExponentTuple((k + 1, 2, 2)), filling_assumed=True)
    assert not filled.index_positive


def test_negative_shift_fails():
    r = check_index_positivity(ExponentTuple((7, 5, 3)))
    assert r.classification is IndexClass.FAILS_FOR_LARGE_L
    assert r.theorem_case is TheoremCase.NOT_APPLICABLE


def test_large_product_index_positive():
    r = check_index_positivity(ExponentTuple((2,) * 6))
    assert r.classification is IndexClass.PRODUCT_INDEX_POSITIVE
    assert r.theorem_case is TheoremCase.LAURENT


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_zero_shift_equal_exponents(m):
    # at L = a every index is active: mu_RS = 0 and min CZ = -(n - 1)
    r = check_index_positivity(ExponentTuple((m,) * m))
    assert r.classification is IndexClass.NOT_INDEX_POSITIVE
    assert (r.witness_L, r.witness_cz) == (m, -(m - 2))
    assert r.theorem_case is TheoremCase.NOT_APPLICABLE


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(2, 7), min_size=3, max_size=5), st.randoms())
def test_index_check_permutation_invariant(a, rnd):
    shuffled = list(a)
    rnd.shuffle(shuffled)
    r1 = check_index_positivity(ExponentTuple(tuple(a)))
    r2 = check_index_positivity(ExponentTuple(tuple(shuffled)))
    assert (r1.classification, r1.witness_L, r1.witness_cz, r1.theorem_case) == (
        r2.classification, r2.witness_L, r2.witness_cz, r2.theorem_case)
