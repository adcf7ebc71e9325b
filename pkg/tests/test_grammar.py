import pytest

from bsgrowth.grammar import (
    Grammar,
    GrammarError,
    build_conjugacy_grammar,
    counts_by_length,
    dsv_series,
    language_up_to,
    printed_grammar,
)
from bsgrowth.languages import LanguageFamily, conjugacy_family
from bsgrowth.series import abelian_series, expand, printed_abelian_series


def members(k, n):
    fam = LanguageFamily(conjugacy_family(k), k)
    return {w for m in range(n + 1) for w in fam.words(m)}


def test_trivial_grammars():
    g = Grammar({"S": [()]})
    assert language_up_to(g, 0) == {(): 1}
    ones = Grammar({"S": [(), (("a", 1), "S")]})
    assert dsv_series(ones, 5).integer_coefficients() == [1] * 6


def test_validation():
    with pytest.raises(GrammarError):
        Grammar({"S": [("T",)]})
    with pytest.raises(GrammarError):
        Grammar({"S": [()], "U": [()]})
    with pytest.raises(GrammarError):
        Grammar({"S": [("S",)]})
    with pytest.raises(GrammarError):
        Grammar({"S": [(), ("U",)], "U": [("S",)]})
    with pytest.raises(GrammarError):
        Grammar({"S": [(("b", 1),)]})


def test_ambiguity_is_counted():
    g = Grammar({"S": [("A", "A")], "A": [(), (("a", 1),)]})
    assert language_up_to(g, 2) == {(): 1, ("a",): 2, ("a", "a"): 1}


def test_text_round_trip():
    for k in (2, 3, 4, 6):
        g = build_conjugacy_grammar(k)
        assert Grammar.loads(g.dumps()) == g


def test_loads():
    g = Grammar.loads("start S\nS -> ε | a S  # comment\n")
    assert dsv_series(g, 3).integer_coefficients() == [1, 1, 1, 1]
    with pytest.raises(GrammarError):
        Grammar.loads("S -> ε")


def test_k2_words_up_to_5():
    derivs = language_up_to(build_conjugacy_grammar(2), 5)
    assert set(derivs) == members(2, 5)
    assert set(derivs.values()) == {1}


def test_k3_words_up_to_4():
    derivs = language_up_to(build_conjugacy_grammar(3), 4)
    assert len(derivs) == 7
    assert counts_by_length(derivs, 4) == [1, 2, 2, 0, 2]
    assert set(derivs.values()) == {1}


def test_dsv_examples():
    assert dsv_series(printed_grammar(2), 8).integer_coefficients()[:6] == [1, 2, 0, 2, 0, 2]
    assert dsv_series(build_conjugacy_grammar(3), 5).integer_coefficients() == [1, 2, 2, 0, 2, 4]


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_printed_grammar_series_equals_printed_formula(k):
    assert dsv_series(printed_grammar(k), 20) == expand(printed_abelian_series(k), 20)


@pytest.mark.parametrize("k", [3, 5, 7])
def test_odd_grammar_unchanged(k):
    assert printed_grammar(k) == build_conjugacy_grammar(k)


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_corrected_grammar_is_unambiguous_and_exact(k):
    n = 10
    derivs = language_up_to(build_conjugacy_grammar(k), n)
    assert set(derivs.values()) == {1}
    assert set(derivs) == members(k, n)
    assert dsv_series(build_conjugacy_grammar(k), n) == expand(abelian_series(k), n)


@pytest.mark.parametrize("k,first_bad", [(2, 5), (4, 6), (6, 4)])
def test_printed_grammar_language_is_wrong(k, first_bad):
    n = 8
    derivs = language_up_to(printed_grammar(k), n)
    assert set(derivs.values()) == {1}
    want = members(k, n)
    bad = [m for m in range(n + 1) if {w for w in derivs if len(w) == m} != {w for w in want if len(w) == m}]
    assert bad and bad[0] == first_bad


def test_bad_k():
    with pytest.raises(ValueError):
        build_conjugacy_grammar(1)
    with pytest.raises(ValueError):
        printed_grammar(0)
