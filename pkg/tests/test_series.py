from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bsgrowth.grammar import build_conjugacy_grammar, dsv_series
from bsgrowth.languages import necklace_counts
from bsgrowth.oracle import bfs_ball
from bsgrowth.series import (
    PowerSeries,
    RationalFunction,
    abelian_series,
    cycle_construction,
    euler_totient,
    exclusion_period,
    exclusion_series,
    expand,
    full_conjugacy_series,
    nonabelian_half,
    printed_abelian_series,
    poly,
    poly_mul,
    poly_str,
    sequence_series,
    syllable_series,
)


def coeffs(f, n):
    return expand(f, n).integer_coefficients()


def test_printed_k2_series():
    f = printed_abelian_series(2)
    assert f.num == (1, 2, -1, 0, 0, -2, -2, 2, -2)
    assert f.den == (1, 0, -1, 0, 0, -2)
    assert coeffs(f, 5) == [1, 2, 0, 2, 0, 2]


def test_odd_series_at_r1():
    assert coeffs(abelian_series(3), 5) == [1, 2, 2, 0, 2, 4]
    assert abelian_series(3) == printed_abelian_series(3)


def test_expand_basics():
    assert coeffs(RationalFunction((1,), (1, -1)), 4) == [1, 1, 1, 1, 1]
    with pytest.raises(ValueError):
        RationalFunction((1,), (0, 1))
    with pytest.raises(ValueError):
        expand(RationalFunction((1,), (1,)), -1)


# frozen expansions of the corrected abelian series, confirmed by the oracle
ABELIAN = {
    2: [1, 2, 0, 2, 0, 2, 2, 2, 4, 4, 8, 8],
    4: [1, 2, 2, 2, 2, 6, 10, 12, 26, 40, 60, 108],
    6: [1, 2, 2, 2, 6, 6, 14, 26, 42, 72, 130, 228],
    7: [1, 2, 2, 2, 6, 8, 14, 28, 48, 84, 148, 264],
    8: [1, 2, 2, 2, 6, 10, 14, 30, 54, 94, 170, 300],
}
PRINTED = {
    2: [1, 2, 0, 2, 0, 2, 2, 4, 4, 4, 8, 8],
    4: [1, 2, 2, 2, 2, 6, 4, 6, 18, 20, 32, 64],
    6: [1, 2, 2, 2, 2, 2, 6, 6, 8, 18, 34, 52],
}


@pytest.mark.parametrize("k", sorted(ABELIAN))
def test_corrected_abelian_expansions(k):
    assert coeffs(abelian_series(k), 11) == ABELIAN[k]


@pytest.mark.parametrize("k", sorted(PRINTED))
def test_printed_even_series_disagree(k):
    assert coeffs(printed_abelian_series(k), 11) == PRINTED[k]
    assert PRINTED[k] != ABELIAN[k]


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6, 7, 8])
def test_abelian_series_against_oracle(k):
    assert coeffs(abelian_series(k), 11) == bfs_ball(k, 11).split_growth()[0]


@pytest.mark.parametrize("k", [2, 4, 6, 8, 10])
def test_corrected_series_is_grammar_series(k):
    assert dsv_series(build_conjugacy_grammar(k), 20) == expand(abelian_series(k), 20)


def test_even_printed_denominator_has_spurious_factor():
    r = 2
    printed = printed_abelian_series(2 * r)
    assert printed.den == poly_mul(abelian_series(2 * r).den, (-1, 1))


def test_syllable_series():
    assert syllable_series(3).num == (0, 1, 2)
    assert syllable_series(2).num == (0, 1, 0, 2)
    assert syllable_series(4).num == (0, 1, 2, 0, 2, 2)


def test_sequence_series():
    assert sequence_series(3).den == (1, -2, -1, 2)
    assert sequence_series(4).den == (1, -2, -1, 2, -2, 0, 2)
    assert coeffs(sequence_series(3), 3) == [1, 1, 3, 5]
    assert sequence_series(3).num == (1, -1)


def test_cycle_construction_examples():
    assert cycle_construction(PowerSeries([0, 1], 4)).integer_coefficients() == [0, 1, 1, 1, 1]
    S = expand(syllable_series(3), 3)
    assert cycle_construction(S).integer_coefficients() == [0, 1, 3, 3]
    with pytest.raises(ValueError):
        cycle_construction(PowerSeries([1, 1], 3))


def test_exclusions():
    assert exclusion_series(3) == RationalFunction(poly({2: 1}), poly({0: 1, 2: -1}))
    assert exclusion_series(2) == RationalFunction(poly({3: 1}), poly({0: 1, 3: -1}))
    assert exclusion_series(5) == RationalFunction(poly({3: 1}), poly({0: 1, 3: -1}))
    assert [exclusion_period(k) for k in (2, 3, 4, 5, 6)] == [3, 2, 5, 3, 7]


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_nonabelian_half_counts_necklaces(k):
    assert nonabelian_half(k, 10).integer_coefficients() == necklace_counts(k, 10)


def test_full_series_examples():
    assert full_conjugacy_series(3, 2).integer_coefficients() == [1, 4, 6]
    assert full_conjugacy_series(2, 3).integer_coefficients() == [1, 4, 2, 6]
    assert full_conjugacy_series(6, 11).integer_coefficients() == [
        1, 4, 8, 12, 22, 36, 76, 134, 272, 534, 1106, 2258,
    ]
    for k in range(2, 9):
        assert full_conjugacy_series(k, 0).integer_coefficients() == [1]


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_full_series_against_oracle(k):
    assert full_conjugacy_series(k, 11).integer_coefficients() == bfs_ball(k, 11).conjugacy_growth()


def test_printed_even_series_gives_wrong_totals():
    with_printed = full_conjugacy_series(4, 11, abelian=printed_abelian_series(4))
    assert with_printed.integer_coefficients() != bfs_ball(4, 11).conjugacy_growth()


def test_totient():
    assert [euler_totient(j) for j in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
    with pytest.raises(ValueError):
        euler_totient(0)


def test_poly_str():
    assert poly_str((1, -1, 0, 2)) == "1-z+2z^3"
    assert poly_str((0,)) == "0"


small = st.lists(st.integers(-5, 5), min_size=1, max_size=6)


@given(small, small)
def test_series_product_matches_polynomial_product(p, q):
    n = len(p) + len(q)
    prod = PowerSeries(p, n) * PowerSeries(q, n)
    assert prod == PowerSeries(poly_mul(p, q), n)


@given(small.filter(lambda p: p[0] != 0))
def test_reciprocal(p):
    s = PowerSeries(p, 8)
    assert s * s.reciprocal() == PowerSeries([1], 8)


@given(st.lists(st.integers(0, 3), min_size=2, max_size=6))
def test_cycle_construction_is_integral(coefs):
    S = PowerSeries([0] + coefs, 10)
    out = cycle_construction(S)
    assert all(c >= 0 for c in out.integer_coefficients())


def test_neg_log():
    out = PowerSeries([0, 1], 4).neg_log_one_minus()
    assert list(out) == [0, 1, Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)]


def test_integrality_is_checked():
    with pytest.raises(ValueError):
        PowerSeries([Fraction(1, 2)]).integer_coefficients()
